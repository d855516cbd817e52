"""The star product of resolutions of I1 and I2 resolves R/(I1 + I2)."""

from dgtaylor import VarContext, star_product, taylor, tensor_product

ctx = VarContext(("x", "y"))
f1 = taylor([ctx.parse("x^2"), ctx.parse("x*y")])
f2 = taylor([ctx.parse("y^3")])
s = star_product([f1, f2])

print("factor ranks:", f1.cx.ranks(), f2.cx.ranks())
print("star ranks:  ", s.cx.ranks())
for b in s.cx.basis:
    print(f"  {b.name:8} mdeg {b.mdeg}   d = {s.cx.format(s.cx.diff[b.id])}")
print(s.cx.verify_resolution("lattice").summary())

# the tensor product has the same ranks but multiplies multidegrees instead of taking lcms
t = tensor_product([f1, f2])
print("tensor ranks:", t.cx.ranks())
for b in t.cx.basis:
    if b.mdeg != s.cx.basis[b.id].mdeg:
        print(f"  {b.name}: tensor mdeg {b.mdeg}, star mdeg {s.cx.basis[b.id].mdeg}")
