import itertools

import pytest

from dgtaylor import VarContext, scarf_subcomplex, sqf_decompose, star_product, taylor
from dgtaylor.scarf import check_scarf_gamma, sqf_decompose_element


def P(ctx, *texts):
    return [ctx.parse(t) for t in texts]


def test_scarf_example(xy):
    t = taylor(P(xy, "x^2", "x*y", "y^3"))
    s = scarf_subcomplex(t)
    assert [b.name for b in s.induced.basis] == ["1", "e1", "e2", "e3", "e12", "e23"]
    assert s.ranks() == [1, 3, 2]
    assert s.induced.check_d_squared().passed
    assert s.induced.verify_resolution().passed
    res = check_scarf_gamma(t, s)
    assert res.passed
    assert res.details["d_sigma"] == {"e12": {"sign": 1, "d": "x"}, "e23": {"sign": 1, "d": "y"}}


def test_scarf_of_coprime_is_full(xy):
    t = taylor(P(xy, "x", "y"))
    s = scarf_subcomplex(t)
    assert s.ranks() == [1, 2, 1]
    assert check_scarf_gamma(t, s).details["d_sigma"] == {"e12": {"sign": 1, "d": "1"}}


def test_scarf_of_repeated_generator(xy):
    s = scarf_subcomplex(taylor(P(xy, "x*y", "x*y")))
    assert s.ranks() == [1]


@pytest.mark.parametrize("texts", [("x*y", "y*z", "z*w", "w*x"), ("x^2", "x*y", "y*z", "z^2"),
                                   ("x*y*z", "x*w", "y*w", "z*w")])
def test_scarf_invariants(ctx, texts):
    gens = P(ctx, *texts)
    t = taylor(gens)
    s = scarf_subcomplex(t)
    mdegs = [b.mdeg for b in s.induced.basis]
    assert len(set(mdegs)) == len(mdegs)
    top = t.cx.basis[-1].mdeg
    assert all(m.divides(top) for m in mdegs)
    assert s.induced.check_d_squared().passed
    assert check_scarf_gamma(t, s).passed
    x = s.induced.gen(len(mdegs) - 1)
    assert s.to_parent(x) == t.cx.gen(s.basis_ids[-1])


def test_scarf_needs_taylor(ctx):
    s = star_product([taylor(P(ctx, "x")), taylor(P(ctx, "y"))])
    with pytest.raises(ValueError):
        scarf_subcomplex(s)


def test_sqf_examples():
    ctx = VarContext(("x", "y", "z"))
    d = sqf_decompose(ctx.parse("x^2*y"))
    assert (d.u, d.sqf_part) == (ctx.parse("x"), ctx.parse("x*y"))
    d = sqf_decompose(ctx.parse("x*z"))
    assert (d.u, d.sqf_part) == (ctx.one(), ctx.parse("x*z"))
    d = sqf_decompose(ctx.one())
    assert d.u.is_one() and d.sqf_part.is_one()


def test_sqf_grid():
    ctx = VarContext(("x", "y", "z"))
    for exps in itertools.product(range(4), repeat=3):
        m = ctx.monomial(exps)
        d = sqf_decompose(m)
        assert d.u * d.sqf_part == m and d.sqf_part.is_squarefree()


def test_sqf_elements(ctx):
    t = taylor(P(ctx, "x*y", "y*z", "z*w"))
    cx = t.cx
    e1 = cx.by_name("e1")
    f = cx.gen(e1, 2, ctx.parse("x*y^2"))
    d = sqf_decompose_element(cx, f)
    # multidegree x^2 y^3 = (x y^2) * (x y)
    assert d.u == ctx.parse("x*y^2")
    assert d.sqf_part == cx.gen(e1, 2)
    with pytest.raises(ValueError):
        sqf_decompose_element(cx, cx.gen(e1) + cx.gen(cx.by_name("e2")))
    with pytest.raises(ValueError):
        sqf_decompose_element(taylor(P(ctx, "x^2")).cx, cx.gen(e1))
