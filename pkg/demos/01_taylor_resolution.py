"""Build the Taylor resolution of (x^2, xy, y^3) and check that it is a DG Γ-algebra resolution."""

from dgtaylor import Budget, VarContext, check_dg_axioms, check_gamma_axioms, taylor

ctx = VarContext(("x", "y"))
t = taylor([ctx.parse(g) for g in ("x^2", "x*y", "y^3")])
cx = t.cx

print("ranks:", cx.ranks())
for b in cx.basis:
    print(f"  {b.name:5} hdeg {b.hdeg}  mdeg {b.mdeg}   d = {cx.format(cx.diff[b.id])}")

# e13 and e123 share the multidegree x^2*y^3, which is why the resolution is not minimal
e1, e2 = cx.gen(cx.by_name("e1")), cx.gen(cx.by_name("e2"))
print("e1*e2 =", cx.format(t.multiply(e1, e2)))
print("e2*e1 =", cx.format(t.multiply(e2, e1)))

print(cx.check_d_squared().summary())
print(cx.verify_resolution("lattice").summary())
for r in check_dg_axioms(t) + check_gamma_axioms(t, Budget(max_hk=6)):
    print(r.summary())
