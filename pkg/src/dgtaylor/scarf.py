"""Scarf subcomplexes of Taylor algebras and squarefree decompositions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .complex import BasisElement, Element, FreeComplex
from .dg_gamma import DGGammaAlgebra
from .monomial import Monomial
from .report import CheckResult


class ScarfClosureError(RuntimeError):
    """The differential of a Scarf element left the Scarf span."""


@dataclass
class ScarfComplex:
    parent: DGGammaAlgebra
    basis_ids: list[int]
    induced: FreeComplex

    def to_parent(self, x: Element) -> Element:
        return Element({(self.basis_ids[b], m): c for b, m, c in x})

    def ranks(self) -> list[int]:
        return self.induced.ranks()


@dataclass(frozen=True)
class SqfDecomposition:
    u: Monomial
    sqf_part: Monomial | Element


def scarf_subcomplex(t: DGGammaAlgebra) -> ScarfComplex:
    """Span of the Taylor basis elements whose multidegree no other element shares."""
    if t.kind != "taylor":
        raise ValueError("Scarf complexes are only extracted from Taylor algebras")
    cx = t.cx
    counts = Counter(b.mdeg for b in cx.basis)
    keep = [b.id for b in cx.basis if b.id == cx.unit or counts[b.mdeg] == 1]
    new_id = {old: new for new, old in enumerate(keep)}
    basis = [BasisElement(new_id[b], cx.basis[b].hdeg, cx.basis[b].mdeg,
                          cx.basis[b].label, cx.basis[b].name) for b in keep]
    diff = {}
    for old in keep:
        terms = {}
        for b, m, c in cx.diff[old]:
            if b not in new_id:
                raise ScarfClosureError(f"d({cx.basis[old]}) involves {cx.basis[b]}, outside the Scarf complex")
            terms[(new_id[b], m)] = c
        diff[new_id[old]] = Element(terms)
    meta = {"scarf_of": cx.metadata.get("construction", {})}
    induced = FreeComplex(cx.ctx, basis, diff, list(cx.augmentation), meta)
    return ScarfComplex(t, keep, induced)


def sqf_decompose(m: Monomial) -> SqfDecomposition:
    """m = u * sqf with sqf = gcd(m, x_1 ... x_n)."""
    sqf = Monomial(m.ctx, [min(e, 1) for e in m.exps])
    return SqfDecomposition(m.quotient(sqf), sqf)


def sqf_decompose_element(cx: FreeComplex, f: Element) -> SqfDecomposition:
    """f = u_f |f|_sqf for a multihomogeneous element over squarefree generators."""
    for b in cx.basis:
        if not b.mdeg.is_squarefree():
            raise ValueError(f"generator {b} has non-squarefree multidegree {b.mdeg}")
    if not f:
        raise ValueError("the zero element has no multidegree")
    mu = cx.multidegree_of(f)
    if mu is None:
        raise ValueError("element is not multihomogeneous")
    dec = sqf_decompose(mu)
    part = Element({(b, m.quotient(dec.u)): c for b, m, c in f})
    return SqfDecomposition(dec.u, part)


def check_scarf_gamma(t: DGGammaAlgebra, s: ScarfComplex, bound: int = 3) -> CheckResult:
    """Products of degree-one generators and vanishing divided powers on Scarf elements.

    For every Scarf e_sigma with |sigma| >= 2 the ordered product of the e_i,
    i in sigma, must be a signed monomial multiple of e_sigma; the monomial is
    recorded in ``details["d_sigma"]``.  Even Scarf elements must have
    e_sigma^(m) = 0 for 2 <= m <= bound.
    """
    res = CheckResult("scarf_gamma")
    cx = t.cx
    alg = t.with_bound(bound)
    singles = {b.label.value[0]: b.id for b in cx.basis if b.hdeg == 1}
    d_sigma = {}
    with res.timed():
        for pid in s.basis_ids:
            b = cx.basis[pid]
            if b.hdeg < 2:
                continue
            res.checked += 1
            prod = alg.one()
            for i in b.label.value:
                prod = alg.multiply(prod, cx.gen(singles[i]))
            terms = list(prod)
            if len(terms) != 1 or terms[0][0] != pid or terms[0][2] not in (1, -1):
                res.add(f"prod e_i over {b}", cx.format(prod), f"±d*{b}")
            else:
                _, mono, c = terms[0]
                d_sigma[b.name] = {"sign": int(c), "d": str(mono)}
            if b.hdeg % 2 == 0:
                for k in range(2, bound + 1):
                    p = alg.divided_power(cx.gen(pid), k)
                    if p:
                        res.add(f"{b}^({k})", cx.format(p), "0")
    res.details["d_sigma"] = d_sigma
    return res
