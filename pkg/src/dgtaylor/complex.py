"""Finite multigraded complexes of free modules over k[x_1, ..., x_n].

A :class:`FreeComplex` stores a basis (each element carrying a homological
degree and a multidegree) and a sparse differential.  Elements of the
underlying module are :class:`Element` objects: finite sums of
``coefficient * monomial * basis``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping

from .linalg import DenseMatrix, rank
from .monomial import Monomial, VarContext, ContextMismatch, lcm_closure
from .report import CheckResult

DEFAULT_CELL_CAP = 20_000


class MultigradingError(ValueError):
    """A coefficient does not match the multidegrees of its basis elements."""


@dataclass(frozen=True)
class Label:
    """Structured tag on a basis element: unit, subset, slot or tuple."""

    kind: str
    value: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": list(self.value)}

    @classmethod
    def from_json(cls, d: Mapping) -> Label:
        return cls(d["kind"], tuple(d["value"]))


UNIT = Label("unit")


@dataclass(frozen=True)
class BasisElement:
    id: int
    hdeg: int
    mdeg: Monomial
    label: Label = UNIT
    name: str = ""

    def __str__(self) -> str:
        return self.name or f"b{self.id}"


class Poly:
    """A polynomial: mapping Monomial -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> Poly:
        return cls({m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for m2, c2 in other.terms.items():
                k = m * m2
                out[k] = out.get(k, 0) + c * c2
        return Poly(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return _format_sum((c, str(m) if not m.is_one() else "") for m, c in sorted(self.terms.items()))

    __repr__ = __str__


def _format_coeff_term(c: Fraction, body: str) -> str:
    mag = abs(c)
    if body:
        head = "" if mag == 1 else f"{mag}*"
        return head + body
    return str(mag)


def _format_sum(pairs: Iterable[tuple[Fraction, str]]) -> str:
    out = []
    for c, body in pairs:
        piece = _format_coeff_term(c, body)
        if not out:
            out.append(("-" if c < 0 else "") + piece)
        else:
            out.append((" - " if c < 0 else " + ") + piece)
    return "".join(out) if out else "0"


class Element:
    """Finite sum of ``c * m * e`` stored as {(basis id, monomial): c}.

    Terms keep insertion order; equality ignores it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, Monomial], Any] | None = None):
        self.terms: dict[tuple[int, Monomial], Fraction] = {}
        for key, c in (terms or {}).items():
            if c:
                self.terms[key] = c if isinstance(c, Fraction) else Fraction(c)

    @classmethod
    def _trusted(cls, terms: dict) -> Element:
        x = object.__new__(cls)
        x.terms = terms
        return x

    @classmethod
    def basis(cls, bid: int, ctx_or_one, c=1) -> Element:
        one = ctx_or_one.one() if isinstance(ctx_or_one, VarContext) else ctx_or_one
        return cls({(bid, one): c})

    @classmethod
    def zero(cls) -> Element:
        return cls._trusted({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[int, Monomial, Fraction]]:
        for (bid, m), c in self.terms.items():
            yield bid, m, c

    def __len__(self) -> int:
        return len(self.terms)

    def ids(self) -> set[int]:
        return {bid for bid, _ in self.terms}

    def coefficient(self, bid: int) -> Poly:
        return Poly({m: c for (b, m), c in self.terms.items() if b == bid})

    def __add__(self, other: Element) -> Element:
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Element._trusted(out)

    def __neg__(self) -> Element:
        return Element._trusted({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, c=1, m: Monomial | None = None) -> Element:
        """Multiply by the scalar ``c`` and (optionally) the monomial ``m``."""
        c = Fraction(c)
        if not c:
            return Element.zero()
        if m is None or m.is_one():
            return Element._trusted({k: v * c for k, v in self.terms.items()})
        return Element._trusted({(b, mm * m): v * c for (b, mm), v in self.terms.items()})

    def __rmul__(self, c) -> Element:
        if isinstance(c, Poly):
            out = Element.zero()
            for m, v in c.terms.items():
                out = out + self.scale(v, m)
            return out
        if isinstance(c, Monomial):
            return self.scale(1, c)
        return self.scale(c)

    def __repr__(self) -> str:
        return f"Element({self.terms!r})"


@dataclass
class FreeComplex:
    """A finite multigraded complex of free modules with a sparse differential.

    ``basis[i].id == i`` always; ids are assigned in homological order.
    """

    ctx: VarContext
    basis: list[BasisElement]
    diff: dict[int, Element]
    augmentation: list[Monomial]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for i, b in enumerate(self.basis):
            if b.id != i:
                raise ValueError("basis ids must be 0..N-1 in order")
            if b.mdeg.ctx != self.ctx:
                raise ContextMismatch(f"basis element {b} is in a foreign context")
        hdegs = [b.hdeg for b in self.basis]
        if hdegs != sorted(hdegs):
            raise ValueError("basis must be grouped by homological degree")
        units = [b for b in self.basis if b.hdeg == 0]
        if len(units) != 1 or not units[0].mdeg.is_one():
            raise ValueError("degree 0 must be a single free generator of multidegree 1")
        for m in self.augmentation:
            if m.ctx != self.ctx:
                raise ContextMismatch("augmentation generator in a foreign context")
        for b in self.basis:
            img = self.diff.get(b.id)
            if img is None:
                self.diff[b.id] = Element.zero()
                continue
            self.check_homogeneous(img, b.hdeg - 1, b.mdeg, where=f"d({b})")
            if b.hdeg == 0 and img:
                raise MultigradingError("the unit must be a cycle")
        self._by_hdeg: dict[int, list[int]] = {}
        for b in self.basis:
            self._by_hdeg.setdefault(b.hdeg, []).append(b.id)

    # -- structure ------------------------------------------------------

    @property
    def unit(self) -> int:
        return self._by_hdeg[0][0]

    @property
    def max_hdeg(self) -> int:
        return self.basis[-1].hdeg

    def ids_in_degree(self, d: int) -> list[int]:
        return self._by_hdeg.get(d, [])

    def ranks(self) -> list[int]:
        return [len(self.ids_in_degree(d)) for d in range(self.max_hdeg + 1)]

    def one(self) -> Monomial:
        return self.ctx.one()

    def gen(self, bid: int, c=1, m: Monomial | None = None) -> Element:
        self._known(bid)
        return Element({(bid, m or self.ctx.one()): c})

    def unit_element(self) -> Element:
        return self.gen(self.unit)

    def _known(self, bid: int) -> None:
        if not 0 <= bid < len(self.basis):
            raise KeyError(f"unknown basis id {bid}")

    def by_name(self, name: str) -> int:
        for b in self.basis:
            if b.name == name:
                return b.id
        raise KeyError(name)

    def check_homogeneous(self, x: Element, hdeg: int, mdeg: Monomial, where: str = "") -> None:
        for bid, m, _ in x:
            self._known(bid)
            b = self.basis[bid]
            if b.hdeg != hdeg:
                raise MultigradingError(f"{where}: term on {b} has hdeg {b.hdeg}, expected {hdeg}")
            if m * b.mdeg != mdeg:
                raise MultigradingError(f"{where}: coefficient {m} on {b} is not {mdeg}/{b.mdeg}")

    def hdeg_of(self, x: Element) -> int | None:
        """Common homological degree of ``x``; None for zero; raises if mixed."""
        degs = {self.basis[bid].hdeg for bid, _, _ in x}
        if len(degs) > 1:
            raise ValueError(f"element of mixed homological degree {sorted(degs)}")
        return degs.pop() if degs else None

    def multidegree_of(self, x: Element) -> Monomial | None:
        degs = {m * self.basis[bid].mdeg for bid, m, _ in x}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else self.ctx.one()

    # -- differential ---------------------------------------------------

    def apply_diff(self, x: Element) -> Element:
        """R-linear extension of the basis differential."""
        self.hdeg_of(x)
        out: dict = {}
        for bid, m, c in x:
            for (b2, m2), c2 in self.diff[bid].terms.items():
                key = (b2, m2 * m)
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return Element._trusted(out)

    def check_d_squared(self) -> CheckResult:
        res = CheckResult("d_squared")
        with res.timed():
            for b in self.basis:
                dd = self.apply_diff(self.diff[b.id])
                res.checked += 1
                if dd:
                    res.add(str(b), self.format(dd), "0")
        return res

    # -- strands --------------------------------------------------------

    def strand(self, b: Monomial) -> list[DenseMatrix]:
        """Matrices of the degree-``b`` strand; entry ``i-1`` is d_i."""
        if b.ctx != self.ctx:
            raise ContextMismatch("strand degree in a foreign context")
        live = {d: [e for e in self.ids_in_degree(d) if self.basis[e].mdeg.divides(b)]
                for d in range(self.max_hdeg + 1)}
        mats = []
        for i in range(1, self.max_hdeg + 1):
            rows, cols = live[i - 1], live[i]
            pos = {e: k for k, e in enumerate(rows)}
            grid = [[Fraction(0)] * len(cols) for _ in rows]
            for j, e in enumerate(cols):
                for e2, _, c in self.diff[e]:
                    # multigrading forces m_e2 | m_e | b, so e2 is live
                    grid[pos[e2]][j] += c
            mats.append(DenseMatrix.from_rows(grid, len(cols)))
        return mats

    def strand_dims(self, b: Monomial) -> list[int]:
        return [sum(1 for e in self.ids_in_degree(d) if self.basis[e].mdeg.divides(b))
                for d in range(self.max_hdeg + 1)]

    def lattice_degrees(self) -> list[Monomial]:
        pts = lcm_closure([e.mdeg for e in self.basis])
        pts.add(self.ctx.one())
        pts.update(self.augmentation)
        return sorted(pts)

    def box_degrees(self, bound: int | Monomial, cell_cap: int = DEFAULT_CELL_CAP) -> list[Monomial]:
        if isinstance(bound, Monomial):
            bounds = bound.exps
        else:
            bounds = (bound,) * self.ctx.n
        cells = 1
        for e in bounds:
            cells *= e + 1
        if cells > cell_cap:
            raise ValueError(f"box has {cells} cells, above the cap of {cell_cap}")
        return [Monomial(self.ctx, e) for e in itertools.product(*(range(k + 1) for k in bounds))]

    def verify_resolution(self, mode: str = "lattice", bound: int | Monomial | None = None,
                          cell_cap: int = DEFAULT_CELL_CAP) -> CheckResult:
        """Strand-by-strand exactness of the augmented complex onto R/I."""
        if not self.augmentation:
            raise ValueError("complex has no augmentation")
        if mode == "lattice":
            degrees = self.lattice_degrees()
        elif mode == "box":
            if bound is None:
                raise ValueError("box mode needs a bound")
            degrees = self.box_degrees(bound, cell_cap)
        else:
            raise ValueError(f"unknown strand mode {mode!r}")
        res = CheckResult(f"resolution[{mode}]")
        with res.timed():
            for b in degrees:
                res.checked += 1
                for i, h, expected in self._strand_defects(b):
                    res.add(f"b={b}, hdeg={i}", f"homology dim {h}", f"expected {expected}")
        res.details["strands"] = len(degrees)
        return res

    def _strand_defects(self, b: Monomial):
        dims = self.strand_dims(b)
        ranks = [rank(m) for m in self.strand(b)] + [0]
        # hdeg 0: H_0 of the strand must be (R/I)_b
        in_ideal = any(g.divides(b) for g in self.augmentation)
        h0 = dims[0] - ranks[0]
        want0 = 0 if in_ideal else 1
        if h0 != want0:
            yield 0, h0, want0
        for i in range(1, len(dims)):
            h = dims[i] - ranks[i - 1] - ranks[i]
            if h:
                yield i, h, 0

    # -- display and serialization -------------------------------------

    def format(self, x: Element) -> str:
        if not x:
            return "0"
        items = sorted(x.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        pairs = []
        for (bid, m), c in items:
            name = str(self.basis[bid])
            body = name if m.is_one() else f"{m}*{name}"
            pairs.append((c, body))
        return _format_sum(pairs)

    def to_json(self) -> dict:
        diff = []
        for b in self.basis:
            for (to, m), c in sorted(self.diff[b.id].terms.items(), key=lambda kv: (kv[0][0], kv[0][1].exps)):
                diff.append({"from": b.id, "to": to,
                             "coeff": {"num": c.numerator, "den": c.denominator, "mono": list(m.exps)}})
        return {
            "variables": list(self.ctx.names),
            "basis": [{"id": b.id, "hdeg": b.hdeg, "mdeg": list(b.mdeg.exps),
                       "label": b.label.to_json(), "name": b.name} for b in self.basis],
            "diff": diff,
            "augmentation": [list(m.exps) for m in self.augmentation],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, d: Mapping, ctx: VarContext | None = None) -> FreeComplex:
        ctx = ctx or VarContext(tuple(d["variables"]))
        basis = [BasisElement(e["id"], e["hdeg"], Monomial(ctx, e["mdeg"]),
                              Label.from_json(e["label"]), e.get("name", ""))
                 for e in d["basis"]]
        raw: dict[int, dict] = {b.id: {} for b in basis}
        for t in d["diff"]:
            co = t["coeff"]
            raw[t["from"]][(t["to"], Monomial(ctx, co["mono"]))] = Fraction(co["num"], co["den"])
        return cls(ctx, basis, {k: Element(v) for k, v in raw.items()},
                   [Monomial(ctx, m) for m in d["augmentation"]], dict(d.get("metadata", {})))


def element_to_json(x: Element) -> list[dict]:
    return [{"to": bid, "coeff": {"num": c.numerator, "den": c.denominator, "mono": list(m.exps)}}
            for (bid, m), c in sorted(x.terms.items(), key=lambda kv: (kv[0][0], kv[0][1].exps))]


def element_from_json(terms: list[Mapping], ctx: VarContext) -> Element:
    return Element({(t["to"], Monomial(ctx, t["coeff"]["mono"])): Fraction(t["coeff"]["num"], t["coeff"]["den"])
                    for t in terms})


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
