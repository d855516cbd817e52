"""The Scarf subcomplex of a Taylor resolution and the squarefree decomposition of multidegrees."""

from dgtaylor import VarContext, scarf_subcomplex, sqf_decompose, taylor
from dgtaylor.scarf import check_scarf_gamma

ctx = VarContext(("x", "y"))
t = taylor([ctx.parse(g) for g in ("x^2", "x*y", "y^3")])
s = scarf_subcomplex(t)
kept = {b.name for b in s.induced.basis}
print("dropped:", [b.name for b in t.cx.basis if b.name not in kept])
print("Scarf ranks:", s.ranks())
print(s.induced.verify_resolution().summary())

res = check_scarf_gamma(t, s)
print(res.summary())
for name, d in res.details["d_sigma"].items():
    print(f"  product of the e_i over {name} = {'+' if d['sign'] > 0 else '-'}{d['d']}*{name}")

ctx3 = VarContext(("x", "y", "z"))
for m in ("x^2*y", "x*z", "x^3*y^2*z", "1"):
    dec = sqf_decompose(ctx3.parse(m))
    print(f"  {m} = {dec.u} * {dec.sqf_part}")
