"""Builders for the Koszul, Taylor, tensor and generalized Taylor (star) algebras."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complex import BasisElement, Element, FreeComplex, Label, MultigradingError, UNIT
from .dg_gamma import DEFAULT_BOUND, DGGammaAlgebra, koszul_sign
from .monomial import ContextMismatch, Monomial, NotDivisible, lcm_all


class SignMode(str, enum.Enum):
    CORRECTED = "corrected"
    UNSIGNED = "unsigned"


@dataclass(frozen=True)
class StructureConstants:
    """Scalars alpha with e*e' = sum alpha * (m_e m_e' / m_a) * a, per basis pair."""

    products: dict[tuple[int, int], list[tuple[int, Fraction]]]
    differential: dict[int, list[tuple[int, Fraction]]]

    def rebuild(self, f: DGGammaAlgebra) -> dict[tuple[int, int], Element]:
        basis = f.cx.basis
        table = {}
        for (i, j), terms in self.products.items():
            mm = basis[i].mdeg * basis[j].mdeg
            table[(i, j)] = Element({(a, mm.quotient(basis[a].mdeg)): alpha for a, alpha in terms})
        return table


def _subset_name(F: Sequence[int]) -> str:
    if not F:
        return "1"
    sep = "," if any(i >= 9 for i in F) else ""
    return "e" + sep.join(str(i + 1) for i in F)


def _zero_rule(e: int, k: int) -> Element:
    return Element.zero()


def koszul_principal(u: Monomial, bound: int = DEFAULT_BOUND) -> DGGammaAlgebra:
    """Koszul resolution 0 -> R f -> R -> R/(u) -> 0 with f*f = 0."""
    if u.is_one():
        raise ValueError("the Koszul resolution of R/(1) is not supported; use a nonunit generator")
    ctx, one = u.ctx, u.ctx.one()
    basis = [BasisElement(0, 0, one, UNIT, "1"),
             BasisElement(1, 1, u, Label("subset", (0,)), "f")]
    diff = {1: Element({(0, u): 1})}
    cx = FreeComplex(ctx, basis, diff, [u],
                     {"construction": {"kind": "koszul", "generators": [u.to_json()]}})
    mul = {(0, 0): cx.gen(0), (0, 1): cx.gen(1), (1, 0): cx.gen(1)}
    return DGGammaAlgebra(cx, mul, {}, bound, _zero_rule)


def taylor(gens: Sequence[Monomial], allow_unit: bool = False,
           bound: int = DEFAULT_BOUND) -> DGGammaAlgebra:
    """Taylor resolution with Gemeda's product and vanishing higher divided powers."""
    gens = list(gens)
    if not gens:
        raise ValueError("taylor needs at least one generator")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatch("generators live in different contexts")
        if g.is_one() and not allow_unit:
            raise ValueError("generator 1 given; pass allow_unit=True for the degenerate ideal (1)")
    r = len(gens)
    subsets = [F for size in range(r + 1) for F in itertools.combinations(range(r), size)]
    index = {F: i for i, F in enumerate(subsets)}
    mdeg = {F: lcm_all((gens[i] for i in F), ctx) for F in subsets}
    basis = [BasisElement(index[F], len(F), mdeg[F],
                          Label("subset", F) if F else UNIT, _subset_name(F))
             for F in subsets]

    diff = {}
    for F in subsets:
        terms = {}
        for pos, i in enumerate(F):
            G = F[:pos] + F[pos + 1:]
            # pos == #{j in F : j < i}
            terms[(index[G], mdeg[F].quotient(mdeg[G]))] = koszul_sign(pos)
        diff[index[F]] = Element(terms)

    cx = FreeComplex(ctx, basis, diff, gens,
                     {"construction": {"kind": "taylor", "generators": [g.to_json() for g in gens]}})
    mul = {}
    for V in subsets:
        for W in subsets:
            if set(V) & set(W):
                continue
            U = tuple(sorted(V + W))
            inversions = sum(1 for i in V for j in W if j < i)
            coeff = (mdeg[V] * mdeg[W]).quotient(mdeg[U])
            mul[(index[V], index[W])] = Element({(index[U], coeff): koszul_sign(inversions)})
    return DGGammaAlgebra(cx, mul, {}, bound, _zero_rule)


# -- products of factors ------------------------------------------------


def _check_factors(fs: Sequence[DGGammaAlgebra], minimum: int) -> None:
    if len(fs) < minimum:
        raise ValueError(f"need at least {minimum} factors, got {len(fs)}")
    ctx = fs[0].ctx
    for f in fs[1:]:
        if f.ctx != ctx:
            raise ContextMismatch("factors live in different contexts")


def _tuples(fs: Sequence[DGGammaAlgebra]) -> list[tuple[int, ...]]:
    tuples = itertools.product(*(range(len(f.cx.basis)) for f in fs))
    return sorted(tuples, key=lambda t: (sum(f.cx.basis[c].hdeg for f, c in zip(fs, t)), t))


def _tuple_name(fs, t, sep) -> str:
    return sep.join(str(f.cx.basis[c]) for f, c in zip(fs, t))


def _hdegs(fs, t) -> list[int]:
    return [f.cx.basis[c].hdeg for f, c in zip(fs, t)]


def _product_sign(fs, t, t2) -> int:
    """Exponent sum_i |t2_i| * sum_{j>i} |t_j| for moving t2-components past t-components."""
    h, h2 = _hdegs(fs, t), _hdegs(fs, t2)
    return sum(h2[i] * sum(h[i + 1:]) for i in range(len(fs)))


def _expand(components: Sequence[Element], index: dict, scale=1) -> Element:
    """Pure multilinear expansion of a tuple of factor elements into tuple-basis terms."""
    out: dict = {}
    for choice in itertools.product(*(list(x) for x in components)):
        c = Fraction(scale)
        m = None
        ids = []
        for bid, mm, cc in choice:
            c *= cc
            m = mm if m is None else m * mm
            ids.append(bid)
        key = (index[tuple(ids)], m)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Element._trusted(out)


def _gamma_rule(fs, tuples, index):
    """Divided powers of a tuple: zero with an odd slot, else the first positive slot takes k."""
    def rule(e: int, k: int) -> Element:
        t = tuples[e]
        h = _hdegs(fs, t)
        if any(d % 2 for d in h):
            return Element.zero()
        j = next(i for i, d in enumerate(h) if d > 0)
        return _expand(slot_powers(fs, t, j, k), index)
    return rule


def slot_powers(fs: Sequence[DGGammaAlgebra], t: Sequence[int], j: int, k: int) -> list[Element]:
    """Components f_1^k, ..., f_j^(k), ..., f_r^k of the tuple divided-power formula."""
    comps = []
    for i, (f, c) in enumerate(zip(fs, t)):
        if i == j:
            comps.append(f.with_bound(k).basis_divided_power(c, k))
        else:
            comps.append(f.power(f.cx.gen(c), k))
    return comps


def _product_basis(fs, sep, mdeg_of):
    tuples = _tuples(fs)
    index = {t: i for i, t in enumerate(tuples)}
    basis = []
    for i, t in enumerate(tuples):
        h = sum(_hdegs(fs, t))
        label = UNIT if h == 0 else Label("tuple", t)
        basis.append(BasisElement(i, h, mdeg_of(t), label, _tuple_name(fs, t, sep)))
    return tuples, index, basis


def _factor_meta(fs):
    return [f.cx.metadata.get("construction", {}) for f in fs]


def tensor_product(fs: Sequence[DGGammaAlgebra], bound: int = DEFAULT_BOUND) -> DGGammaAlgebra:
    """Tensor product over R with the Koszul sign rule and the slot divided powers."""
    fs = list(fs)
    _check_factors(fs, 2)
    ctx = fs[0].ctx
    one = ctx.one()

    def mdeg_of(t):
        m = one
        for f, c in zip(fs, t):
            m = m * f.cx.basis[c].mdeg
        return m

    tuples, index, basis = _product_basis(fs, "⊗", mdeg_of)
    diff = {}
    for n, t in enumerate(tuples):
        h = _hdegs(fs, t)
        terms: dict = {}
        for i, f in enumerate(fs):
            sign = koszul_sign(sum(h[:i]))
            for a, m, c in f.cx.diff[t[i]]:
                key = (index[t[:i] + (a,) + t[i + 1:]], m)
                terms[key] = terms.get(key, 0) + sign * c
        diff[n] = Element(terms)

    aug = [g for f in fs for g in f.cx.augmentation]
    meta = {"construction": {"kind": "tensor", "factors": _factor_meta(fs)}}
    cx = FreeComplex(ctx, basis, diff, aug, meta)
    mul = {}
    for n, t in enumerate(tuples):
        for n2, t2 in enumerate(tuples):
            comps = [f.mul[(a, b)] for f, a, b in zip(fs, t, t2)]
            if any(not c for c in comps):
                continue
            mul[(n, n2)] = _expand(comps, index, koszul_sign(_product_sign(fs, t, t2)))
    return DGGammaAlgebra(cx, mul, {}, bound, _gamma_rule(fs, tuples, index), tuple(fs))


def extract_structure_constants(f: DGGammaAlgebra) -> StructureConstants:
    """Recover the scalar parts of every product and differential in ``f``."""
    basis = f.cx.basis
    products: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (i, j), entry in sorted(f.mul.items()):
        mm = basis[i].mdeg * basis[j].mdeg
        terms = []
        for a, m, c in entry:
            try:
                forced = mm.quotient(basis[a].mdeg)
            except NotDivisible:
                raise MultigradingError(f"m_{basis[a]} does not divide m_{basis[i]} m_{basis[j]}") from None
            if m != forced:
                raise MultigradingError(
                    f"{basis[i]}*{basis[j]}: coefficient {m} on {basis[a]} should be {forced}")
            terms.append((a, c))
        products[(i, j)] = sorted(terms)
    differential = {}
    for e in basis:
        terms = []
        for a, m, c in f.cx.diff[e.id]:
            if m != e.mdeg.quotient(basis[a].mdeg):
                raise MultigradingError(f"d({e}): coefficient {m} is not forced by multidegrees")
            terms.append((a, c))
        differential[e.id] = sorted(terms)
    sc = StructureConstants(products, differential)
    if sc.rebuild(f) != {k: v for k, v in f.mul.items()}:
        raise MultigradingError("structure constants do not reproduce the multiplication table")
    return sc


def star_product(fs: Sequence[DGGammaAlgebra], sign: SignMode | str = SignMode.CORRECTED,
                 bound: int = DEFAULT_BOUND) -> DGGammaAlgebra:
    """Generalized Taylor resolution F_1 * ... * F_r of R/(I_1 + ... + I_r).

    Products come from the factors' structure constants; ``sign="unsigned"``
    drops the transposition sign from the product (and only the product).
    """
    fs = list(fs)
    _check_factors(fs, 1)
    if len(fs) == 1:
        return fs[0]
    sign = SignMode(sign)
    ctx = fs[0].ctx

    def mdeg_of(t):
        return lcm_all((f.cx.basis[c].mdeg for f, c in zip(fs, t)), ctx)

    tuples, index, basis = _product_basis(fs, "*", mdeg_of)
    consts = [extract_structure_constants(f) for f in fs]

    diff = {}
    for n, t in enumerate(tuples):
        h = _hdegs(fs, t)
        top = basis[n].mdeg
        terms: dict = {}
        for i in range(len(fs)):
            s = koszul_sign(sum(h[:i]))
            for a, alpha in consts[i].differential[t[i]]:
                t2 = t[:i] + (a,) + t[i + 1:]
                n2 = index[t2]
                try:
                    coeff = top.quotient(basis[n2].mdeg)
                except NotDivisible:
                    raise MultigradingError(f"lcm quotient is not a monomial at {basis[n]}") from None
                key = (n2, coeff)
                terms[key] = terms.get(key, 0) + s * alpha
        diff[n] = Element(terms)

    aug = [g for f in fs for g in f.cx.augmentation]
    meta = {"construction": {"kind": "star", "sign_mode": sign.value, "factors": _factor_meta(fs)}}
    cx = FreeComplex(ctx, basis, diff, aug, meta)

    mul = {}
    for n, t in enumerate(tuples):
        for n2, t2 in enumerate(tuples):
            choices = [consts[i].products[(t[i], t2[i])] for i in range(len(fs))]
            if any(not c for c in choices):
                continue
            s = 1 if sign is SignMode.UNSIGNED else koszul_sign(_product_sign(fs, t, t2))
            top = basis[n].mdeg * basis[n2].mdeg
            terms = {}
            for pick in itertools.product(*choices):
                alpha = Fraction(s)
                for _, al in pick:
                    alpha *= al
                target = index[tuple(a for a, _ in pick)]
                try:
                    coeff = top.quotient(basis[target].mdeg)
                except NotDivisible:
                    raise MultigradingError(f"lcm quotient is not a monomial at {basis[n]}*{basis[n2]}") from None
                key = (target, coeff)
                terms[key] = terms.get(key, 0) + alpha
            mul[(n, n2)] = Element(terms)
    return DGGammaAlgebra(cx, mul, {}, bound, _gamma_rule(fs, tuples, index), tuple(fs))


def slot_formula(star: DGGammaAlgebra, e: int, j: int, k: int) -> Element:
    """Evaluate the tuple divided-power formula with slot ``j`` taking the divided power."""
    fs = star.factors
    t = component_ids(star, e)
    tuples = _tuples(fs)
    return _expand(slot_powers(fs, t, j, k), {tt: i for i, tt in enumerate(tuples)})


def component_ids(a: DGGammaAlgebra, e: int) -> tuple[int, ...]:
    """Factor basis ids of a tuple basis element (all units for the unit)."""
    label = a.cx.basis[e].label
    if label.kind == "tuple":
        return label.value
    if label.kind == "unit" and a.factors:
        return tuple(f.unit for f in a.factors)
    raise ValueError(f"{a.cx.basis[e]} is not a tuple basis element")


def factors_from_ideals(ideals: Iterable[Sequence[Monomial]], resolution: str = "taylor",
                        bound: int = DEFAULT_BOUND) -> list[DGGammaAlgebra]:
    """One factor resolution per ideal: ``taylor`` or ``koszul`` (principal ideals only)."""
    out = []
    for gens in ideals:
        gens = list(gens)
        if resolution == "koszul":
            if len(gens) != 1:
                raise ValueError(f"koszul factor needs a principal ideal, got {len(gens)} generators")
            out.append(koszul_principal(gens[0], bound))
        elif resolution == "taylor":
            out.append(taylor(gens, bound=bound))
        else:
            raise ValueError(f"unknown factor resolution {resolution!r}")
    return out
