import pytest

from dgtaylor import (Budget, Element, SignMode, check_dg_axiom, check_dg_axioms,
                      check_gamma_axioms, extract_structure_constants, koszul_principal,
                      star_product, taylor, tensor_product)
from dgtaylor.complex import MultigradingError
from dgtaylor.constructions import component_ids, factors_from_ideals, slot_formula


def P(ctx, *texts):
    return [ctx.parse(t) for t in texts]


def convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_koszul(ctx):
    k = koszul_principal(ctx.parse("x^2"))
    cx = k.cx
    f = cx.gen(cx.by_name("f"))
    assert cx.ranks() == [1, 1]
    assert cx.diff[cx.by_name("f")] == cx.gen(cx.unit, 1, ctx.parse("x^2"))
    assert k.multiply(f, f) == Element.zero()
    assert k.gamma == {}
    assert cx.augmentation == [ctx.parse("x^2")]
    with pytest.raises(ValueError):
        koszul_principal(ctx.one())


def test_taylor_basics(ctx):
    t = taylor(P(ctx, "x^2", "x*y", "y^3"))
    assert [b.name for b in t.cx.basis] == ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]
    assert t.cx.basis[t.cx.by_name("e13")].mdeg == ctx.parse("x^2*y^3")
    e12 = t.cx.gen(t.cx.by_name("e12"))
    assert t.divided_power(e12, 2) == Element.zero()
    with pytest.raises(ValueError):
        taylor([])
    with pytest.raises(ValueError):
        taylor([ctx.one(), ctx.parse("x")])


def test_tensor_examples(ctx):
    k1, k2 = koszul_principal(ctx.parse("x^2")), koszul_principal(ctx.parse("y^3"))
    t = tensor_product([k1, k2])
    cx = t.cx
    g = {b.name: cx.gen(b.id) for b in cx.basis}
    ff = cx.by_name("f⊗f")
    assert cx.diff[ff] == g["1⊗f"].scale(1, ctx.parse("x^2")) - g["f⊗1"].scale(1, ctx.parse("y^3"))
    assert cx.basis[ff].mdeg == ctx.parse("x^2*y^3")
    # (1⊗f)(f⊗1): the Koszul sign (-1)^{|f||f|} appears
    assert t.multiply(g["1⊗f"], g["f⊗1"]) == -g["f⊗f"]
    assert t.multiply(g["f⊗1"], g["1⊗f"]) == g["f⊗f"]
    with pytest.raises(ValueError):
        tensor_product([k1])


def test_tensor_divided_power_with_taylor_factor(ctx):
    f1 = taylor(P(ctx, "x", "y"))
    f2 = koszul_principal(ctx.parse("z"))
    t = tensor_product([f1, f2])
    e = t.cx.gen(t.cx.by_name("e12⊗1"))
    assert t.divided_power(e, 2) == Element.zero()


def test_tensor_multidegree_is_product(ctx):
    f1, f2 = taylor(P(ctx, "x*y", "y*z")), taylor(P(ctx, "z*w", "w*x"))
    t = tensor_product([f1, f2])
    for b in t.cx.basis:
        i, j = component_ids(t, b.id)
        assert b.mdeg == f1.cx.basis[i].mdeg * f2.cx.basis[j].mdeg


def test_structure_constants(ctx):
    t = taylor(P(ctx, "x*y", "y*z"))
    sc = extract_structure_constants(t)
    e1, e2, e12 = (t.cx.by_name(n) for n in ("e1", "e2", "e12"))
    assert sc.products[(e1, e2)] == [(e12, 1)]
    assert sc.products[(e1, e1)] == []
    assert sc.products[(t.unit, e2)] == [(e2, 1)]
    for f in (t, taylor(P(ctx, "x^2", "x*y", "y^3", "z*w")), koszul_principal(ctx.parse("w")),
              star_product([t, koszul_principal(ctx.parse("w"))])):
        assert extract_structure_constants(f).rebuild(f) == f.mul


def test_structure_constants_reject_bad_coefficient(ctx):
    t = taylor(P(ctx, "x*y", "y*z"))
    e1, e2, e12 = (t.cx.by_name(n) for n in ("e1", "e2", "e12"))
    # bypass table validation to simulate a multigrading bug
    t.mul[(e1, e2)] = Element({(e12, ctx.parse("y")): 1, (e12, ctx.parse("x")): 1})
    with pytest.raises(MultigradingError):
        extract_structure_constants(t)


def test_star_koszul_examples(ctx):
    s = star_product([koszul_principal(ctx.parse("x^2")), koszul_principal(ctx.parse("y^3"))])
    g = {b.name: s.cx.gen(b.id) for b in s.cx.basis}
    ff = s.cx.by_name("f*f")
    assert s.cx.diff[ff] == g["1*f"].scale(1, ctx.parse("x^2")) - g["f*1"].scale(1, ctx.parse("y^3"))

    s = star_product([koszul_principal(ctx.parse("x*y")), koszul_principal(ctx.parse("y*z"))])
    g = {b.name: s.cx.gen(b.id) for b in s.cx.basis}
    y = ctx.parse("y")
    assert s.cx.basis[s.cx.by_name("f*f")].mdeg == ctx.parse("x*y*z")
    assert s.multiply(g["f*1"], g["1*f"]) == g["f*f"].scale(1, y)
    assert s.multiply(g["1*f"], g["f*1"]) == g["f*f"].scale(-1, y)


def test_star_gamma_formula(ctx):
    f1, f2 = taylor(P(ctx, "x", "y")), taylor(P(ctx, "z", "w"))
    s = star_product([f1, f2])
    for e in s.even_positive():
        t = component_ids(s, e)
        hs = [f.cx.basis[c].hdeg for f, c in zip((f1, f2), t)]
        if any(h % 2 for h in hs):
            assert s.gamma[(e, 2)] == Element.zero()
        else:
            j = next(i for i, h in enumerate(hs) if h > 0)
            assert s.gamma[(e, 2)] == slot_formula(s, e, j, 2)


def test_slot_independence(ctx):
    f1, f2, f3 = taylor(P(ctx, "x", "y")), taylor(P(ctx, "y", "z")), taylor(P(ctx, "z*w", "x*w"))
    s = star_product([f1, f2, f3])
    cases = 0
    for e in s.even_positive():
        t = component_ids(s, e)
        hs = [f.cx.basis[c].hdeg for f, c in zip(s.factors, t)]
        slots = [i for i, h in enumerate(hs) if h > 0]
        if any(h % 2 for h in hs) or len(slots) < 2:
            continue
        for k in (2, 3):
            vals = [slot_formula(s, e, j, k) for j in slots]
            assert all(v == vals[0] for v in vals)
            cases += 1
    assert cases


def test_ranks_convolve(ctx):
    f1, f2 = taylor(P(ctx, "x^2", "x*y")), taylor(P(ctx, "y^3", "z", "w"))
    for build in (star_product, tensor_product):
        assert build([f1, f2]).cx.ranks() == convolve(f1.cx.ranks(), f2.cx.ranks())


def test_star_of_one_factor_is_identity(ctx):
    t = taylor(P(ctx, "x", "y"))
    assert star_product([t]) is t


@pytest.mark.parametrize("ideals", [
    (("x*y", "y*z"), ("z*w", "w*x")),
    (("x",), ("x*y",)),
    (("x^2", "y"), ("y^2",), ("x*z",)),
])
def test_sign_modes(ctx, ideals):
    fs = [taylor(P(ctx, *i)) for i in ideals]
    budget = Budget(samples=10)
    good = star_product(fs, SignMode.CORRECTED)
    assert all(r.passed for r in check_dg_axioms(good, budget))
    bad = star_product(fs, "unsigned")
    assert not all(check_dg_axiom(bad, w, budget).passed for w in ("graded_comm", "leibniz"))
    # the differential does not depend on the sign mode
    assert bad.cx.diff == good.cx.diff


@pytest.mark.parametrize("kind", ["taylor", "star", "tensor"])
def test_every_construction_is_a_dg_gamma_resolution(ctx, kind):
    f1, f2 = taylor(P(ctx, "x^2", "x*y")), taylor(P(ctx, "y^2", "z*w"))
    a = {"taylor": lambda: taylor(P(ctx, "x^2", "x*y", "y^2", "z*w")),
         "star": lambda: star_product([f1, f2]),
         "tensor": lambda: tensor_product([f1, f2])}[kind]()
    budget = Budget(samples=10, max_hk=4)
    assert a.cx.check_d_squared().passed
    if kind != "tensor":
        # the tensor product resolves R/(I1 + I2) only when the ideals are Tor-independent
        assert a.cx.verify_resolution().passed
    results = check_dg_axioms(a, budget) + check_gamma_axioms(a, budget)
    assert [r.name for r in results if not r.passed] == []


def test_factors_from_ideals(ctx):
    fs = factors_from_ideals([P(ctx, "x"), P(ctx, "y", "z")], "taylor")
    assert [f.kind for f in fs] == ["taylor", "taylor"]
    fs = factors_from_ideals([P(ctx, "x"), P(ctx, "y")], "koszul")
    assert [f.kind for f in fs] == ["koszul", "koszul"]
    with pytest.raises(ValueError, match="principal"):
        factors_from_ideals([P(ctx, "x", "y")], "koszul")
    with pytest.raises(ValueError):
        factors_from_ideals([P(ctx, "x")], "minimal")


def test_context_mismatch(ctx):
    from dgtaylor import VarContext
    other = VarContext(("x", "y"))
    with pytest.raises(ValueError):
        star_product([taylor(P(ctx, "x")), taylor(P(other, "y"))])
