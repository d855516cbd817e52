import pytest

from dgtaylor import Budget, DGGammaAlgebra, check_dg_axiom, check_gamma_axiom, taylor
from dgtaylor.axioms import (DG_AXIOMS, GAMMA_AXIOMS, bidegree, hk_pairs, random_bihomogeneous,
                             random_elements, required_bound)
from dgtaylor.report import Report


def P(ctx, *texts):
    return [ctx.parse(t) for t in texts]


@pytest.fixture
def t3(xy):
    return taylor(P(xy, "x^2", "x*y", "y^3"))


@pytest.mark.parametrize("which", DG_AXIOMS)
def test_taylor_dg_axioms(t3, which):
    res = check_dg_axiom(t3, which)
    assert res.passed and res.checked > 0


@pytest.mark.parametrize("which", GAMMA_AXIOMS)
def test_taylor_gamma_axioms(t3, which):
    assert check_gamma_axiom(t3, which).passed


def test_gamma_axiom_2_on_e12(t3):
    # e12 * e12 = 2 e12^(2) = 0 on both sides
    e = t3.cx.gen(t3.cx.by_name("e12"))
    assert not t3.multiply(e, e)
    assert not t3.divided_power(e, 2)


def test_gamma_axiom_6_on_e12(t3):
    e = t3.cx.gen(t3.cx.by_name("e12"))
    assert not t3.cx.apply_diff(t3.divided_power(e, 2))
    assert not t3.multiply(e, t3.cx.apply_diff(e))


def _with_entry(a, key, value):
    mul = dict(a.mul)
    mul[key] = value
    return DGGammaAlgebra(a.cx, mul, dict(a.gamma), a.bound)


def test_flipped_product_sign_is_caught(t3):
    cx = t3.cx
    e1, e2 = cx.by_name("e1"), cx.by_name("e2")
    bad = _with_entry(t3, (e1, e2), -t3.mul[(e1, e2)])
    res = check_dg_axiom(bad, "graded_comm")
    assert not res.passed
    assert res.violations[0].location in ("(e1, e2)", "(e2, e1)")
    assert not check_dg_axiom(bad, "leibniz").passed


def test_nonzero_odd_square_is_caught(xy):
    t = taylor(P(xy, "x", "y"))
    cx = t.cx
    e1, e2, e12 = cx.by_name("e1"), cx.by_name("e2"), cx.by_name("e12")
    # e2 e1 = +e12 makes e1, e2 commute, so (e1 + e2)^2 = 2 e12
    bad = _with_entry(t, (e2, e1), cx.gen(e12))
    assert not check_dg_axiom(bad, "odd_square").passed


def test_bad_gamma_table_is_caught(xy):
    from test_dg_gamma import gamma_line
    a = gamma_line(xy)
    gamma = dict(a.gamma)
    gamma[(1, 2)] = a.cx.gen(2, 3)
    bad = DGGammaAlgebra(a.cx, dict(a.mul), gamma, a.bound)
    res = check_gamma_axiom(bad, 2, Budget(samples=5))
    assert not res.passed
    assert "h=1, k=1" in res.violations[0].location


def test_random_elements_are_bihomogeneous(t3):
    rng = Budget().rng("x")
    for d in range(4):
        for _ in range(10):
            x = random_bihomogeneous(t3.cx, rng, d)
            if x:
                assert bidegree(t3.cx, x)[0] == d
    xs = list(random_elements(t3.cx, rng, 20, 0))
    assert all(bidegree(t3.cx, x)[0] % 2 == 0 for x in xs if x)


def test_seeded_reports_are_reproducible(xy):
    t = taylor(P(xy, "x*y", "y^2", "x^3"))
    runs = []
    for _ in range(2):
        r = Report("test", 7)
        r.extend([check_gamma_axiom(t, 3, Budget(seed=7, samples=20)),
                  check_dg_axiom(t, "leibniz", Budget(seed=7, samples=20))])
        runs.append(r.to_json())
    assert runs[0] == runs[1]


def test_hk_bounds():
    assert (2, 3) in hk_pairs(6) and (3, 3) not in hk_pairs(6)
    assert required_bound(2, Budget()) == 7
    assert required_bound(5, Budget()) == 6


def test_unknown_axiom(t3):
    with pytest.raises(ValueError):
        check_dg_axiom(t3, "jacobi")
    with pytest.raises(ValueError):
        check_gamma_axiom(t3, 7)
