"""DG algebras with divided powers, given by tables on a basis.

The multiplication table holds ``e * e'`` for every pair of basis elements
(signs included), and the divided-power table holds ``e^(k)`` for even
positive basis elements and ``2 <= k <= bound``.  Everything else is linear
extension plus the expansion rule

    (sum_t c_t m_t e_t)^(k) = sum_{k_1+...+k_s=k} prod_t (c_t m_t)^{k_t} e_t^(k_t)

which follows from the sum and scalar axioms for divided powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .complex import (Element, FreeComplex, MultigradingError, element_from_json,
                      element_to_json)
from .monomial import VarContext

DEFAULT_BOUND = 3

GammaRule = Callable[[int, int], Element]


class DividedPowerError(ValueError):
    pass


@dataclass
class DGGammaAlgebra:
    cx: FreeComplex
    mul: dict[tuple[int, int], Element]
    gamma: dict[tuple[int, int], Element] = field(default_factory=dict)
    bound: int = DEFAULT_BOUND
    # recomputes e^(k) from the construction; lets checkers raise the bound
    gamma_rule: GammaRule | None = field(default=None, repr=False, compare=False)
    factors: tuple[DGGammaAlgebra, ...] = field(default=(), repr=False, compare=False)
    _raised: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        cx = self.cx
        n = len(cx.basis)
        unit = cx.unit
        for i in range(n):
            for j in range(n):
                entry = self.mul.get((i, j))
                if entry is None:
                    self.mul[(i, j)] = entry = Element.zero()
                bi, bj = cx.basis[i], cx.basis[j]
                cx.check_homogeneous(entry, bi.hdeg + bj.hdeg, bi.mdeg * bj.mdeg,
                                     where=f"{bi}*{bj}")
            e = cx.gen(i)
            if self.mul[(unit, i)] != e or self.mul[(i, unit)] != e:
                raise ValueError(f"table violates the unit law at {cx.basis[i]}")
        if self.gamma_rule is not None:
            for e in self.even_positive():
                for k in range(2, self.bound + 1):
                    if (e, k) not in self.gamma:
                        self.gamma[(e, k)] = self.gamma_rule(e, k)
        for (e, k), entry in self.gamma.items():
            b = cx.basis[e]
            if b.hdeg <= 0 or b.hdeg % 2 or k < 2:
                raise DividedPowerError(f"divided power stored for {b} at k={k}")
            if k > self.bound:
                raise DividedPowerError(f"stored power k={k} exceeds bound {self.bound}")
            cx.check_homogeneous(entry, k * b.hdeg, b.mdeg ** k, where=f"{b}^({k})")
        for e in self.even_positive():
            for k in range(2, self.bound + 1):
                if (e, k) not in self.gamma:
                    raise DividedPowerError(f"missing divided power {cx.basis[e]}^({k})")

    # -- basics ---------------------------------------------------------

    @property
    def ctx(self) -> VarContext:
        return self.cx.ctx

    @property
    def unit(self) -> int:
        return self.cx.unit

    @property
    def kind(self) -> str:
        return self.cx.metadata.get("construction", {}).get("kind", "")

    def one(self) -> Element:
        return self.cx.unit_element()

    def even_positive(self) -> list[int]:
        return [b.id for b in self.cx.basis if b.hdeg > 0 and b.hdeg % 2 == 0]

    def with_bound(self, bound: int) -> DGGammaAlgebra:
        """Same algebra with divided powers tabulated up to ``bound``."""
        if bound <= self.bound:
            return self
        if self.gamma_rule is None:
            raise DividedPowerError(
                f"bound {self.bound} cannot be raised to {bound}: no rule for this algebra")
        if bound not in self._raised:
            self._raised[bound] = DGGammaAlgebra(self.cx, self.mul, dict(self.gamma), bound,
                                                 self.gamma_rule, self.factors)
        return self._raised[bound]

    # -- products -------------------------------------------------------

    def multiply(self, x: Element, y: Element) -> Element:
        """Bilinear extension of the table; signs live in the table entries."""
        n = len(self.cx.basis)
        out: dict = {}
        for (i, m), c in x.terms.items():
            if not 0 <= i < n:
                raise KeyError(f"unknown basis id {i}")
            for (j, m2), c2 in y.terms.items():
                if not 0 <= j < n:
                    raise KeyError(f"unknown basis id {j}")
                entry = self.mul[(i, j)]
                if not entry.terms:
                    continue
                mm = m * m2
                cc = c * c2
                for (k, m3), c3 in entry.terms.items():
                    key = (k, m3 * mm)
                    v = out.get(key, 0) + cc * c3
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return Element._trusted(out)

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            raise ValueError("negative power")
        self.cx.hdeg_of(x)
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def basis_divided_power(self, e: int, k: int) -> Element:
        if k == 0:
            return self.one()
        if k == 1:
            return self.cx.gen(e)
        if k > self.bound:
            raise DividedPowerError(f"k={k} exceeds the divided-power bound {self.bound}")
        try:
            return self.gamma[(e, k)]
        except KeyError:
            raise DividedPowerError(f"{self.cx.basis[e]} has no divided powers") from None

    def divided_power(self, x: Element, k: int) -> Element:
        if k < 0:
            raise ValueError("negative divided power")
        d = self.cx.hdeg_of(x)
        if d is not None and (d <= 0 or d % 2):
            raise DividedPowerError(f"divided powers need even positive degree, got {d}")
        if k > self.bound:
            raise DividedPowerError(f"k={k} exceeds the divided-power bound {self.bound}")
        if k == 0:
            return self.one()
        terms = list(x)
        if not terms:
            return Element.zero()
        total = Element.zero()
        last = len(terms) - 1

        def expand(idx: int, rem: int, acc: Element) -> None:
            nonlocal total
            e, m, c = terms[idx]
            for kt in (range(rem + 1) if idx < last else (rem,)):
                g = self.basis_divided_power(e, kt)
                if not g:
                    continue
                nxt = self.multiply(acc, g.scale(c ** kt, m ** kt)) if kt else acc
                if not nxt:
                    continue
                if idx == last:
                    total = total + nxt
                else:
                    expand(idx + 1, rem - kt, nxt)

        expand(0, k, self.one())
        return total

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        out = self.cx.to_json()
        out["unit"] = self.unit
        out["max_divided_power"] = self.bound
        out["mul"] = [{"left": i, "right": j, "terms": element_to_json(v)}
                      for (i, j), v in sorted(self.mul.items()) if v]
        out["gamma"] = [{"id": e, "k": k, "terms": element_to_json(v)}
                        for (e, k), v in sorted(self.gamma.items())]
        return out

    @classmethod
    def from_json(cls, d: Mapping[str, Any]) -> DGGammaAlgebra:
        cx = FreeComplex.from_json(d)
        mul = {(t["left"], t["right"]): element_from_json(t["terms"], cx.ctx) for t in d.get("mul", [])}
        gamma = {(t["id"], t["k"]): element_from_json(t["terms"], cx.ctx) for t in d.get("gamma", [])}
        alg = cls(cx, mul, gamma, d.get("max_divided_power", DEFAULT_BOUND))
        if "unit" in d and d["unit"] != alg.unit:
            raise MultigradingError("unit id in JSON does not match the basis")
        return alg


def multiply(a: DGGammaAlgebra, x: Element, y: Element) -> Element:
    return a.multiply(x, y)


def power(a: DGGammaAlgebra, x: Element, k: int) -> Element:
    return a.power(x, k)


def divided_power(a: DGGammaAlgebra, x: Element, k: int) -> Element:
    return a.divided_power(x, k)


def ordered_product(a: DGGammaAlgebra, xs: Sequence[Element]) -> Element:
    out = a.one()
    for x in xs:
        out = a.multiply(out, x)
    return out


def koszul_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1
