"""Checkers for the DG algebra and divided-power axioms.

Each checker returns a :class:`~dgtaylor.report.CheckResult` whose
violations carry both evaluated sides.  Basis elements are covered
exhaustively; random bihomogeneous elements come from a seeded generator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator

from .complex import Element, FreeComplex
from .dg_gamma import DGGammaAlgebra, koszul_sign
from .monomial import Monomial
from .report import CheckResult

DG_AXIOMS = ("leibniz", "assoc", "graded_comm", "unit", "odd_square")
GAMMA_AXIOMS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class Budget:
    max_hk: int = 6
    samples: int = 50
    seed: int = 42
    assoc_cap: int = 20_000
    # extra random triples once the exhaustive associativity cap is hit
    assoc_samples: int = 2_000

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


# -- random elements ----------------------------------------------------


def random_bihomogeneous(cx: FreeComplex, rng: random.Random, hdeg: int,
                         mdeg: Monomial | None = None, coeff_range: int = 3) -> Element:
    """A random element of the given homological degree and one multidegree.

    With ``mdeg`` omitted, the multidegree is the lcm of one or two random basis
    multidegrees in that degree times a random squarefree monomial.
    """
    ids = cx.ids_in_degree(hdeg)
    if not ids:
        return Element.zero()
    if mdeg is None:
        picks = rng.sample(ids, min(len(ids), rng.choice((1, 2))))
        mdeg = cx.ctx.one()
        for e in picks:
            mdeg = mdeg.lcm(cx.basis[e].mdeg)
        bump = Monomial(cx.ctx, [rng.choice((0, 0, 1)) for _ in range(cx.ctx.n)])
        mdeg = mdeg * bump
    live = [e for e in ids if cx.basis[e].mdeg.divides(mdeg)]
    terms = {}
    for e in live:
        if rng.random() < 0.75:
            c = 0
            while c == 0:
                c = rng.randint(-coeff_range, coeff_range)
            terms[(e, mdeg.quotient(cx.basis[e].mdeg))] = c
    if not terms and live:
        e = rng.choice(live)
        terms[(e, mdeg.quotient(cx.basis[e].mdeg))] = 1
    return Element(terms)


def bidegree(cx: FreeComplex, x: Element) -> tuple[int, Monomial] | None:
    h = cx.hdeg_of(x)
    if h is None:
        return None
    return h, cx.multidegree_of(x)


def _degrees(cx: FreeComplex, parity: int, positive: bool = True) -> list[int]:
    return [d for d in range(cx.max_hdeg + 1)
            if d % 2 == parity and (d > 0 or not positive) and cx.ids_in_degree(d)]


def random_elements(cx: FreeComplex, rng: random.Random, count: int, parity: int,
                    positive: bool = True) -> Iterator[Element]:
    degrees = _degrees(cx, parity, positive)
    if not degrees:
        return
    for _ in range(count):
        x = random_bihomogeneous(cx, rng, rng.choice(degrees))
        if x:
            yield x


# -- DG axioms ----------------------------------------------------------


def check_dg_axiom(a: DGGammaAlgebra, which: str, budget: Budget = Budget()) -> CheckResult:
    if which not in DG_AXIOMS:
        raise ValueError(f"unknown DG axiom {which!r}")
    res = CheckResult(which)
    with res.timed():
        globals()[f"_dg_{which}"](a, res, budget)
    return res


def check_dg_axioms(a: DGGammaAlgebra, budget: Budget = Budget()) -> list[CheckResult]:
    return [check_dg_axiom(a, w, budget) for w in DG_AXIOMS]


def _show(a, x):
    return a.cx.format(x)


def _dg_leibniz(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    for b1, b2 in itertools.product(cx.basis, repeat=2):
        x, y = cx.gen(b1.id), cx.gen(b2.id)
        lhs = cx.apply_diff(a.multiply(x, y))
        rhs = (a.multiply(cx.apply_diff(x), y)
               + a.multiply(x, cx.apply_diff(y)).scale(koszul_sign(b1.hdeg)))
        res.checked += 1
        if lhs != rhs:
            res.add(f"({b1}, {b2})", _show(a, lhs), _show(a, rhs))


def _dg_assoc(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    n = len(cx.basis)

    def check(i, j, k):
        x, y, z = cx.gen(i), cx.gen(j), cx.gen(k)
        lhs = a.multiply(a.multiply(x, y), z)
        rhs = a.multiply(x, a.multiply(y, z))
        res.checked += 1
        if lhs != rhs:
            res.add(f"({cx.basis[i]}, {cx.basis[j]}, {cx.basis[k]})", _show(a, lhs), _show(a, rhs))

    if n ** 3 <= budget.assoc_cap:
        for i, j, k in itertools.product(range(n), repeat=3):
            check(i, j, k)
        return
    triples = itertools.islice(itertools.product(range(n), repeat=3), budget.assoc_cap)
    for i, j, k in triples:
        check(i, j, k)
    rng = budget.rng("assoc")
    for _ in range(budget.assoc_samples):
        check(rng.randrange(n), rng.randrange(n), rng.randrange(n))


def _dg_graded_comm(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    for b1, b2 in itertools.product(cx.basis, repeat=2):
        x, y = cx.gen(b1.id), cx.gen(b2.id)
        lhs = a.multiply(x, y)
        rhs = a.multiply(y, x).scale(koszul_sign(b1.hdeg * b2.hdeg))
        res.checked += 1
        if lhs != rhs:
            res.add(f"({b1}, {b2})", _show(a, lhs), _show(a, rhs))


def _dg_unit(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    one = a.one()
    for b in cx.basis:
        x = cx.gen(b.id)
        for side, prod in (("left", a.multiply(one, x)), ("right", a.multiply(x, one))):
            res.checked += 1
            if prod != x:
                res.add(f"{side} unit at {b}", _show(a, prod), _show(a, x))


def _dg_odd_square(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    odd = [cx.gen(b.id) for b in cx.basis if b.hdeg % 2]
    odd += list(random_elements(cx, budget.rng("odd_square"), budget.samples, 1))
    for x in odd:
        sq = a.multiply(x, x)
        res.checked += 1
        if sq:
            res.add(f"({_show(a, x)})^2", _show(a, sq), "0")


# -- divided-power axioms -------------------------------------------------


def axiom5_coefficient(h: int, k: int) -> int:
    """(hk)! / (k! (h!)^k), always an integer."""
    num = factorial(h * k)
    den = factorial(k) * factorial(h) ** k
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"non-integral coefficient for h={h}, k={k}")
    return q


def hk_pairs(max_hk: int) -> list[tuple[int, int]]:
    return [(h, k) for h in range(1, max_hk + 1) for k in range(1, max_hk + 1) if h * k <= max_hk]


def required_bound(which: int, budget: Budget) -> int:
    """Largest divided power a gamma-axiom check touches under ``budget``."""
    pairs = hk_pairs(budget.max_hk)
    if which == 2:
        return max(h + k for h, k in pairs)
    if which == 5:
        return max(h * k for h, k in pairs)
    return budget.max_hk


def check_gamma_axiom(a: DGGammaAlgebra, which: int, budget: Budget = Budget()) -> CheckResult:
    if which not in GAMMA_AXIOMS:
        raise ValueError(f"unknown divided-power axiom {which!r}")
    res = CheckResult(f"gamma_axiom_{which}")
    with res.timed():
        alg = a.with_bound(required_bound(which, budget))
        globals()[f"_gamma_{which}"](alg, res, budget)
    return res


def check_gamma_axioms(a: DGGammaAlgebra, budget: Budget = Budget()) -> list[CheckResult]:
    return [check_gamma_axiom(a, w, budget) for w in GAMMA_AXIOMS]


def _even_samples(a: DGGammaAlgebra, budget: Budget, salt: str) -> list[Element]:
    """Every even-positive basis element followed by seeded random ones."""
    cx = a.cx
    out = [cx.gen(e) for e in a.even_positive()]
    out += list(random_elements(cx, budget.rng(salt), budget.samples, 0))
    return out


def _gamma_1(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    for x in _even_samples(a, budget, "gamma1"):
        d, mu = bidegree(cx, x)
        loc = _show(a, x)
        res.checked += 1
        if a.divided_power(x, 0) != a.one():
            res.add(f"({loc})^(0)", _show(a, a.divided_power(x, 0)), "1")
        if a.divided_power(x, 1) != x:
            res.add(f"({loc})^(1)", _show(a, a.divided_power(x, 1)), loc)
        for k in range(2, budget.max_hk + 1):
            y = a.divided_power(x, k)
            if not y:
                continue
            try:
                cx.check_homogeneous(y, k * d, mu ** k)
            except ValueError as err:
                res.add(f"({loc})^({k})", str(err), f"bidegree ({k * d}, {mu ** k})")


def _gamma_2(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    for x in _even_samples(a, budget, "gamma2"):
        powers = {}

        def dp(k):
            if k not in powers:
                powers[k] = a.divided_power(x, k)
            return powers[k]

        for h, k in hk_pairs(budget.max_hk):
            lhs = a.multiply(dp(h), dp(k))
            rhs = dp(h + k).scale(comb(h + k, h))
            res.checked += 1
            if lhs != rhs:
                res.add(f"x={_show(a, x)}, h={h}, k={k}", _show(a, lhs), _show(a, rhs))


def _gamma_3(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    rng = budget.rng("gamma3")
    xs = _even_samples(a, budget, "gamma3x")
    for x in xs:
        d, mu = bidegree(cx, x)
        y = random_bihomogeneous(cx, rng, d, mu)
        s = x + y
        for k in range(1, budget.max_hk + 1):
            lhs = a.divided_power(s, k)
            rhs = Element.zero()
            for i in range(k + 1):
                rhs = rhs + a.multiply(a.divided_power(x, i), a.divided_power(y, k - i))
            res.checked += 1
            if lhs != rhs:
                res.add(f"x={_show(a, x)}, y={_show(a, y)}, k={k}", _show(a, lhs), _show(a, rhs))


def _gamma_4(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    rng = budget.rng("gamma4")
    top = budget.max_hk
    # odd * odd branch
    odd_basis = [cx.gen(b.id) for b in cx.basis if b.hdeg % 2]
    odd = odd_basis + list(random_elements(cx, rng, budget.samples, 1))
    pairs = list(itertools.product(odd_basis, repeat=2))
    pairs += [(x, rng.choice(odd)) for x in odd[len(odd_basis):]]
    for x, y in pairs:
        xy = a.multiply(x, y)
        for k in range(2, top + 1):
            lhs = a.divided_power(xy, k)
            res.checked += 1
            if lhs:
                res.add(f"odd x={_show(a, x)}, y={_show(a, y)}, k={k}", _show(a, lhs), "0")
    # even * even-positive branch; x may sit in degree 0
    even_basis = [cx.gen(b.id) for b in cx.basis if b.hdeg % 2 == 0]
    evens = even_basis + list(random_elements(cx, rng, budget.samples, 0, positive=False))
    ys = _even_samples(a, budget, "gamma4y")
    pairs = [(x, y) for x in even_basis for y in ys[:len(a.even_positive())]]
    pairs += [(rng.choice(evens), y) for y in ys]
    for x, y in pairs:
        xy = a.multiply(x, y)
        for k in range(2, top + 1):
            lhs = a.divided_power(xy, k)
            rhs = a.multiply(a.power(x, k), a.divided_power(y, k))
            res.checked += 1
            if lhs != rhs:
                res.add(f"even x={_show(a, x)}, y={_show(a, y)}, k={k}", _show(a, lhs), _show(a, rhs))


def _gamma_5(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    for x in _even_samples(a, budget, "gamma5"):
        for h, k in hk_pairs(budget.max_hk):
            lhs = a.divided_power(a.divided_power(x, h), k)
            rhs = a.divided_power(x, h * k).scale(axiom5_coefficient(h, k))
            res.checked += 1
            if lhs != rhs:
                res.add(f"x={_show(a, x)}, h={h}, k={k}", _show(a, lhs), _show(a, rhs))


def _gamma_6(a: DGGammaAlgebra, res: CheckResult, budget: Budget) -> None:
    cx = a.cx
    for x in _even_samples(a, budget, "gamma6"):
        dx = cx.apply_diff(x)
        for k in range(1, budget.max_hk + 1):
            lhs = cx.apply_diff(a.divided_power(x, k))
            rhs = a.multiply(a.divided_power(x, k - 1), dx)
            res.checked += 1
            if lhs != rhs:
                res.add(f"x={_show(a, x)}, k={k}", _show(a, lhs), _show(a, rhs))
