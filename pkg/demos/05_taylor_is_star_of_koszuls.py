"""The Taylor resolution is the star product of the Koszul resolutions of its generators."""

from dgtaylor import (VarContext, check_map_properties, identity_map, koszul_principal, star_product,
                      taylor, taylor_iso)

ctx = VarContext(("x", "y", "z"))
for gens in (("x^2", "x*y", "y^3"), ("x*y", "y*z", "z*x")):
    gs = [ctx.parse(g) for g in gens]
    t = taylor(gs)
    s = star_product([koszul_principal(g) for g in gs])
    Phi = taylor_iso(t, s)
    print(f"gens {', '.join(gens)}: ranks {t.cx.ranks()} vs {s.cx.ranks()}")
    for b in t.cx.basis:
        print(f"  Phi({b.name}) = {s.cx.format(Phi.images[b.id])}")
    for r in check_map_properties(Phi, ("chain", "multiplicative", "gamma", "iso")):
        print("  " + r.summary())
    print("  Phi^-1 ∘ Phi is the identity:", Phi.inverse().compose(Phi).images == identity_map(t).images)
