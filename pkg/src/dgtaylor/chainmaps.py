"""Chain maps between the constructions and checks of the properties they need."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .axioms import Budget, random_elements
from .complex import (Element, FreeComplex, MultigradingError, element_from_json,
                      element_to_json)
from .constructions import component_ids
from .dg_gamma import DGGammaAlgebra
from .report import CheckResult

MAP_PROPERTIES = ("chain", "multiplicative", "gamma", "loc_invertible", "iso")


class PropertyNotApplicable(ValueError):
    pass


def _cx(obj) -> FreeComplex:
    return obj.cx if isinstance(obj, DGGammaAlgebra) else obj


@dataclass
class ChainMap:
    source: DGGammaAlgebra | FreeComplex
    target: DGGammaAlgebra | FreeComplex
    images: dict[int, Element]
    name: str = "map"
    properties_checked: list[str] = field(default_factory=list)

    def __post_init__(self):
        src, tgt = _cx(self.source), _cx(self.target)
        if src.ctx != tgt.ctx:
            raise MultigradingError("source and target live in different contexts")
        for b in src.basis:
            img = self.images.setdefault(b.id, Element.zero())
            tgt.check_homogeneous(img, b.hdeg, b.mdeg, where=f"{self.name}({b})")

    def __call__(self, x: Element) -> Element:
        out = Element.zero()
        for bid, m, c in x:
            out = out + self.images[bid].scale(c, m)
        return out

    apply = __call__

    def compose(self, first: ChainMap) -> ChainMap:
        """``self ∘ first``."""
        return ChainMap(first.source, self.target,
                        {b: self(img) for b, img in first.images.items()},
                        f"{self.name}∘{first.name}")

    def diagonal(self) -> dict[int, tuple[int, Element]] | None:
        """Source id -> (target id, image) when every image is a single term."""
        out = {}
        for b, img in self.images.items():
            if len(img) != 1:
                return None
            out[b] = (next(iter(img))[0], img)
        return out

    def inverse(self) -> ChainMap:
        """Inverse of a basis bijection with unit coefficients (an isomorphism over R)."""
        diag = self.diagonal()
        tgt = _cx(self.target)
        if diag is None or len({t for t, _ in diag.values()}) != len(tgt.basis) \
                or len(diag) != len(tgt.basis):
            raise ValueError(f"{self.name} is not a basis bijection")
        images = {}
        for b, (t, img) in diag.items():
            _, m, c = next(iter(img))
            if not m.is_one() or c not in (1, -1):
                raise ValueError(f"{self.name} has a non-unit coefficient at {_cx(self.source).basis[b]}")
            images[t] = _cx(self.source).gen(b, 1 / c)
        return ChainMap(self.target, self.source, images, f"{self.name}^-1")

    def to_json(self, source_ref: str = "source", target_ref: str = "target") -> dict:
        return {
            "source_ref": source_ref,
            "target_ref": target_ref,
            "images": [{"from": b, "terms": element_to_json(img)} for b, img in sorted(self.images.items())],
            "properties_checked": list(self.properties_checked),
        }


def identity_map(a: DGGammaAlgebra | FreeComplex) -> ChainMap:
    cx = _cx(a)
    return ChainMap(a, a, {b.id: cx.gen(b.id) for b in cx.basis}, "id")


def _same_factors(fs1, fs2) -> bool:
    if len(fs1) != len(fs2):
        return False
    return all(f is g or (f.cx.to_json() == g.cx.to_json() and f.mul == g.mul) for f, g in zip(fs1, fs2))


def comparison_map(tensor: DGGammaAlgebra, star: DGGammaAlgebra) -> ChainMap:
    """phi: f_1 ⊗ ... ⊗ f_r -> (m_f1 ... m_fr / lcm(m_f1, ..., m_fr)) f_1 * ... * f_r.

    For two factors the scalar is gcd(m_f1, m_f2).  With more factors the
    gcd of all components would break multidegrees, so the product-over-lcm
    form is the one that generalizes.
    """
    if tensor.kind != "tensor" or star.kind != "star":
        raise ValueError("comparison_map needs a tensor product and a star product")
    if not _same_factors(tensor.factors, star.factors):
        raise ValueError("tensor and star were built from different factor lists")
    fs = star.factors
    star_index = {component_ids(star, b.id): b.id for b in star.cx.basis}
    images = {}
    for b in tensor.cx.basis:
        t = component_ids(tensor, b.id)
        target = star_index[t]
        scale = b.mdeg.quotient(star.cx.basis[target].mdeg)
        images[b.id] = star.cx.gen(target, 1, scale)
    return ChainMap(tensor, star, images, "phi")


def taylor_iso(t: DGGammaAlgebra, s: DGGammaAlgebra) -> ChainMap:
    """Phi: e_sigma -> the tuple with f_i in the slots of sigma and 1 elsewhere."""
    if t.kind != "taylor" or s.kind != "star":
        raise ValueError("taylor_iso needs a Taylor algebra and a star product")
    gens = t.cx.augmentation
    if len(s.factors) != len(gens) or any(
            f.kind != "koszul" or f.cx.augmentation != [g] for f, g in zip(s.factors, gens)):
        raise ValueError("star factors are not the Koszul resolutions of the Taylor generators")
    star_index = {component_ids(s, b.id): b.id for b in s.cx.basis}
    images = {}
    for b in t.cx.basis:
        sigma = set(b.label.value)
        tup = tuple(1 if i in sigma else 0 for i in range(len(gens)))
        images[b.id] = s.cx.gen(star_index[tup])
    return ChainMap(t, s, images, "Phi")


def inclusion_map(star: DGGammaAlgebra, i: int) -> ChainMap:
    """iota_i: F_i -> F_1 * ... * F_r, f -> 1 * ... * f * ... * 1."""
    fs = star.factors
    if not fs:
        raise ValueError("inclusion_map needs a product algebra")
    f = fs[i]
    star_index = {component_ids(star, b.id): b.id for b in star.cx.basis}
    images = {}
    for b in f.cx.basis:
        tup = tuple(b.id if l == i else g.unit for l, g in enumerate(fs))
        images[b.id] = star.cx.gen(star_index[tup])
    return ChainMap(f, star, images, f"iota_{i + 1}")


# -- property checks ----------------------------------------------------


def check_map_property(m: ChainMap, which: str, budget: Budget = Budget(),
                       max_k: int = 3) -> CheckResult:
    if which not in MAP_PROPERTIES:
        raise ValueError(f"unknown map property {which!r}")
    if which in ("multiplicative", "gamma"):
        if not (isinstance(m.source, DGGammaAlgebra) and isinstance(m.target, DGGammaAlgebra)):
            raise PropertyNotApplicable(f"{which} needs algebras on both sides")
    res = CheckResult(f"{m.name}:{which}")
    with res.timed():
        globals()[f"_map_{which}"](m, res, budget, max_k)
    if which not in m.properties_checked:
        m.properties_checked.append(which)
    return res


def _map_chain(m: ChainMap, res: CheckResult, budget: Budget, max_k: int) -> None:
    src, tgt = _cx(m.source), _cx(m.target)
    for b in src.basis:
        lhs = tgt.apply_diff(m.images[b.id])
        rhs = m(src.diff[b.id])
        res.checked += 1
        if lhs != rhs:
            res.add(f"d({m.name}({b}))", tgt.format(lhs), tgt.format(rhs))


def _map_multiplicative(m: ChainMap, res: CheckResult, budget: Budget, max_k: int) -> None:
    src, tgt = m.source, m.target
    for b1, b2 in itertools.product(src.cx.basis, repeat=2):
        lhs = m(src.mul[(b1.id, b2.id)])
        rhs = tgt.multiply(m.images[b1.id], m.images[b2.id])
        res.checked += 1
        if lhs != rhs:
            res.add(f"{m.name}({b1}*{b2})", tgt.cx.format(lhs), tgt.cx.format(rhs))


def _map_gamma(m: ChainMap, res: CheckResult, budget: Budget, max_k: int) -> None:
    src, tgt = m.source.with_bound(max_k), m.target.with_bound(max_k)
    xs = [src.cx.gen(e) for e in src.even_positive()]
    xs += list(random_elements(src.cx, budget.rng(f"{m.name}:gamma"), budget.samples, 0))
    for x in xs:
        for k in range(2, max_k + 1):
            lhs = m(src.divided_power(x, k))
            rhs = tgt.divided_power(m(x), k)
            res.checked += 1
            if lhs != rhs:
                res.add(f"{m.name}(({src.cx.format(x)})^({k}))", tgt.cx.format(lhs), tgt.cx.format(rhs))


def _diag_common(m: ChainMap, res: CheckResult, unit_only: bool) -> None:
    src, tgt = _cx(m.source), _cx(m.target)
    hit = {}
    for b in src.basis:
        img = m.images[b.id]
        res.checked += 1
        if len(img) != 1:
            res.add(f"{m.name}({b})", tgt.format(img), "a single basis term")
            continue
        t, mono, c = next(iter(img))
        if t in hit:
            res.add(f"{m.name}({b})", tgt.format(img), f"target basis already hit by {src.basis[hit[t]]}")
        hit[t] = b.id
        if unit_only and (not mono.is_one() or c not in (1, -1)):
            res.add(f"{m.name}({b})", tgt.format(img), f"±{tgt.basis[t]}")
    for b in tgt.basis:
        if b.id not in hit:
            res.add(f"target {b}", "not in the image", "hit exactly once")


def _map_loc_invertible(m: ChainMap, res: CheckResult, budget: Budget, max_k: int) -> None:
    # a diagonal matrix of nonzero monomials is invertible once monomials are inverted
    _diag_common(m, res, unit_only=False)


def _map_iso(m: ChainMap, res: CheckResult, budget: Budget, max_k: int) -> None:
    _diag_common(m, res, unit_only=True)


def check_map_properties(m: ChainMap, which=MAP_PROPERTIES, budget: Budget = Budget(),
                         max_k: int = 3) -> list[CheckResult]:
    return [check_map_property(m, w, budget, max_k) for w in which]


def map_from_json(d: Mapping, source, target) -> ChainMap:
    images = {t["from"]: element_from_json(t["terms"], _cx(source).ctx) for t in d["images"]}
    m = ChainMap(source, target, images, d.get("name", "map"))
    m.properties_checked = list(d.get("properties_checked", []))
    return m
