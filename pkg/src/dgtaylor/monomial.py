"""Monomials in k[x_1, ..., x_n] stored as exponent vectors."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

# Exponents are checked against a 32-bit ceiling; anything larger is a bug at desk scale.
MAX_EXPONENT = 2**31 - 1

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(.*))?$")


class ContextMismatch(ValueError):
    pass


class NotDivisible(ValueError):
    def __init__(self, index: int, name: str):
        super().__init__(f"monomial is not divisible: exponent too small at {name}")
        self.index = index
        self.name = name


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not _FACTOR.match(name) or "^" in name:
                raise ValueError(f"bad variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")

    @property
    def n(self) -> int:
        return len(self.names)

    def one(self) -> Monomial:
        return Monomial(self, (0,) * self.n)

    def var(self, name: str) -> Monomial:
        exps = [0] * self.n
        exps[self.index(name)] = 1
        return Monomial(self, tuple(exps))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name}") from None

    def monomial(self, exps: Iterable[int]) -> Monomial:
        return Monomial(self, tuple(exps))

    def parse(self, text: str) -> Monomial:
        return parse(text, self)


def _check_exp(e: int) -> int:
    if e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return e


class Monomial:
    """An exponent vector tied to a :class:`VarContext`.

    Instances are immutable and hash on the exponent tuple only, so they can
    be used directly as dictionary keys.
    """

    __slots__ = ("ctx", "exps", "_hash")

    def __init__(self, ctx: VarContext, exps: Sequence[int]):
        exps = tuple(int(e) for e in exps)
        if len(exps) != ctx.n:
            raise ValueError(f"expected {ctx.n} exponents, got {len(exps)}")
        for e in exps:
            if e < 0:
                raise ValueError("exponents must be nonnegative")
            _check_exp(e)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "_hash", hash(exps))

    @classmethod
    def _raw(cls, ctx: VarContext, exps: tuple[int, ...]) -> Monomial:
        # trusted fast path: exps already validated
        m = object.__new__(cls)
        object.__setattr__(m, "ctx", ctx)
        object.__setattr__(m, "exps", exps)
        object.__setattr__(m, "_hash", hash(exps))
        return m

    def __setattr__(self, key, value):
        raise AttributeError("Monomial is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps and (self.ctx is other.ctx or self.ctx == other.ctx)

    def __lt__(self, other: Monomial) -> bool:
        # only used for deterministic sorting
        return (sum(self.exps), self.exps) < (sum(other.exps), other.exps)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        parts = []
        for name, e in zip(self.ctx.names, self.exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def _same(self, other: Monomial) -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatch("monomials live in different variable contexts")

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def is_one(self) -> bool:
        return not any(self.exps)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def lcm(self, other: Monomial) -> Monomial:
        self._same(other)
        return Monomial._raw(self.ctx, tuple(map(max, self.exps, other.exps)))

    def gcd(self, other: Monomial) -> Monomial:
        self._same(other)
        return Monomial._raw(self.ctx, tuple(map(min, self.exps, other.exps)))

    def divides(self, other: Monomial) -> bool:
        self._same(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: Monomial) -> Monomial:
        self._same(other)
        return Monomial._raw(
            self.ctx, tuple(_check_exp(a + b) for a, b in zip(self.exps, other.exps))
        )

    def __pow__(self, k: int) -> Monomial:
        if k < 0:
            raise ValueError("negative power of a monomial")
        return Monomial._raw(self.ctx, tuple(_check_exp(a * k) for a in self.exps))

    def quotient(self, other: Monomial) -> Monomial:
        """Return ``self / other``; raises :class:`NotDivisible` naming the first bad variable."""
        self._same(other)
        out = []
        for i, (a, b) in enumerate(zip(self.exps, other.exps)):
            if b > a:
                raise NotDivisible(i, self.ctx.names[i])
            out.append(a - b)
        return Monomial._raw(self.ctx, tuple(out))

    __truediv__ = quotient

    def to_json(self) -> list[int]:
        return list(self.exps)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return a.gcd(b)


def quotient(a: Monomial, b: Monomial) -> Monomial:
    return a.quotient(b)


def lcm_all(ms: Iterable[Monomial], ctx: VarContext) -> Monomial:
    out = ctx.one()
    for m in ms:
        out = out.lcm(m)
    return out


def gcd_all(ms: Iterable[Monomial]) -> Monomial:
    ms = list(ms)
    if not ms:
        raise ValueError("gcd of an empty family")
    out = ms[0]
    for m in ms[1:]:
        out = out.gcd(m)
    return out


def parse(text: str, ctx: VarContext) -> Monomial:
    """Parse ``1`` or a product like ``x^2*y`` into a monomial of ``ctx``."""
    text = text.strip()
    if text == "1":
        return ctx.one()
    if not text:
        raise ValueError("empty monomial string")
    exps = [0] * ctx.n
    for factor in text.split("*"):
        factor = factor.strip()
        match = _FACTOR.match(factor)
        if not match:
            raise ValueError(f"malformed factor {factor!r}")
        name, power = match.groups()
        i = ctx.index(name)
        if power is None:
            e = 1
        else:
            power = power.strip()
            if not re.fullmatch(r"-?\d+", power):
                raise ValueError(f"malformed exponent {power!r} on {name}")
            e = int(power)
            if e < 0:
                raise ValueError(f"negative exponent {e} on {name}")
            if e == 0:
                raise ValueError(f"exponent must be at least 1, got 0 on {name}")
        exps[i] = _check_exp(exps[i] + e)
    return Monomial(ctx, exps)


def lcm_closure(ms: Iterable[Monomial]) -> set[Monomial]:
    """Smallest set containing ``ms`` and closed under pairwise lcm."""
    closed = set(ms)
    if not closed:
        raise ValueError("lcm_closure of an empty set")
    frontier = set(closed)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in closed:
                c = a.lcm(b)
                if c not in closed:
                    fresh.add(c)
        closed |= fresh
        frontier = fresh
    return closed
