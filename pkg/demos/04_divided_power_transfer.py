"""Divided powers on the star product, checked through the comparison map phi.

phi sends a tensor f1⊗f2 to (m_f1 m_f2 / lcm) f1*f2.  It is a chain map that
respects products and divided powers, and it becomes invertible once every
monomial is inverted.
"""

from dgtaylor import (Budget, VarContext, check_gamma_axioms, check_map_properties, comparison_map,
                      inclusion_map, star_product, taylor, tensor_product)

ctx = VarContext(("x", "y", "z", "w"))
fs = [taylor([ctx.parse("x*y"), ctx.parse("y*z")]), taylor([ctx.parse("z*w"), ctx.parse("w*x")])]
tens, star = tensor_product(fs), star_product(fs)
phi = comparison_map(tens, star)

for b in tens.cx.basis:
    img = phi.images[b.id]
    if next(iter(img))[1] != ctx.one():
        print(f"  phi({b.name}) = {star.cx.format(img)}")

budget = Budget(samples=200)
# iso is expected to fail: the images above carry non-unit monomials
for r in check_map_properties(phi, ("chain", "multiplicative", "gamma", "loc_invertible", "iso"), budget):
    print(r.summary())
for r in check_gamma_axioms(star, Budget(samples=50)):
    print(r.summary())
for i in range(len(fs)):
    for r in check_map_properties(inclusion_map(star, i), ("multiplicative", "gamma"), budget):
        print(r.summary())

# a nonzero divided power: the cross term of a sum of two even elements
x = star.cx.gen(star.cx.by_name("e12*1")) + star.cx.gen(star.cx.by_name("1*e12"))
print("(e12*1 + 1*e12)^(2) =", star.cx.format(star.divided_power(x, 2)))
