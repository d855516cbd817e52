"""Why the star product needs the transposition sign.

Dropping the sign sum_i |f_i'| sum_{j>i} |f_j| from the product makes
odd elements in different slots commute, which breaks graded commutativity
and the Leibniz rule.
"""

from dgtaylor import Budget, SignMode, VarContext, check_dg_axiom, star_product, taylor

ctx = VarContext(("x", "y", "z", "w"))
fs = [taylor([ctx.parse("x*y"), ctx.parse("y*z")]), taylor([ctx.parse("z*w"), ctx.parse("w*x")])]

for mode in SignMode:
    s = star_product(fs, mode)
    a, b = (s.cx.gen(s.cx.by_name(n)) for n in ("e1*1", "1*e1"))
    print(f"{mode.value}:")
    print("  (e1*1)(1*e1) =", s.cx.format(s.multiply(a, b)))
    print("  (1*e1)(e1*1) =", s.cx.format(s.multiply(b, a)))
    for which in ("graded_comm", "leibniz"):
        res = check_dg_axiom(s, which, Budget())
        print("  " + res.summary())
        for v in res.violations[:2]:
            print(f"    at {v.location}: {v.lhs}  vs  {v.rhs}")
