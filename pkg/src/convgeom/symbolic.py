"""Exact model of a non-algebraic convex geometry on the naturals plus one point.

The ground set is ``N ∪ {x}``.  A set is closed when it is finite and avoids
``x``; every other set (cofinite, or containing ``x``) closes to the whole
space.  Sets are described finitely: a finite set by its natural members, a
cofinite set by the naturals it omits, and in both cases a flag for ``x``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Literal, Union

from .errors import ConsistencyError

#: the special point outside the naturals
POINT = "x"

Element = Union[int, str]


@dataclass(frozen=True)
class SymbolicSet:
    kind: Literal["finite", "cofinite"]
    support: frozenset[int]
    has_x: bool

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "cofinite"):
            raise ValueError(f"unknown kind {self.kind!r}")
        support = frozenset(self.support)
        if any(not isinstance(i, int) or isinstance(i, bool) or i < 0 for i in support):
            raise ValueError("support must hold natural numbers")
        object.__setattr__(self, "support", support)

    @classmethod
    def finite(cls, naturals: Iterable[int] = (), has_x: bool = False) -> SymbolicSet:
        return cls("finite", frozenset(naturals), has_x)

    @classmethod
    def cofinite(cls, omitted: Iterable[int] = (), has_x: bool = True) -> SymbolicSet:
        """All naturals except ``omitted``, plus ``x`` when ``has_x``."""
        return cls("cofinite", frozenset(omitted), has_x)

    @classmethod
    def of(cls, elements: Iterable[Element]) -> SymbolicSet:
        items = set(elements)
        has_x = POINT in items
        items.discard(POINT)
        return cls.finite(items, has_x)

    @property
    def is_cofinite(self) -> bool:
        return self.kind == "cofinite"

    def __contains__(self, e: Element) -> bool:
        if e == POINT:
            return self.has_x
        if self.is_cofinite:
            return e not in self.support
        return e in self.support

    def add(self, e: Element) -> SymbolicSet:
        if e == POINT:
            return SymbolicSet(self.kind, self.support, True)
        if self.is_cofinite:
            return SymbolicSet(self.kind, self.support - {e}, self.has_x)
        return SymbolicSet(self.kind, self.support | {e}, self.has_x)

    def remove(self, e: Element) -> SymbolicSet:
        if e == POINT:
            return SymbolicSet(self.kind, self.support, False)
        if self.is_cofinite:
            return SymbolicSet(self.kind, self.support | {e}, self.has_x)
        return SymbolicSet(self.kind, self.support - {e}, self.has_x)

    def issubset(self, other: SymbolicSet) -> bool:
        if self.has_x and not other.has_x:
            return False
        if not self.is_cofinite and not other.is_cofinite:
            return self.support <= other.support
        if not self.is_cofinite:
            return not self.support & other.support
        if not other.is_cofinite:
            return False
        return other.support <= self.support

    def __str__(self) -> str:
        x = ",x" if self.has_x else ""
        nats = ",".join(str(i) for i in sorted(self.support))
        if self.is_cofinite:
            base = "X" if self.has_x else "N"
            return base + (f"\\{{{nats}}}" if nats else "")
        return "{" + (nats + x).lstrip(",") + "}"


#: the naturals without the special point
NATURALS = SymbolicSet.cofinite((), has_x=False)
#: the whole space
WHOLE = SymbolicSet.cofinite((), has_x=True)


def sym_closure(s: SymbolicSet) -> SymbolicSet:
    """Whole space for cofinite sets or sets containing ``x``; otherwise ``s``."""
    if s.is_cofinite or s.has_x:
        return WHOLE
    return s


def is_closed(s: SymbolicSet) -> bool:
    return sym_closure(s) == s


@dataclass(frozen=True)
class AepReport:
    trials: int
    violations: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def __str__(self) -> str:
        return f"aep trials={self.trials} violations={self.violations} seed={self.seed}"


def aep_holds(a: SymbolicSet, y: Element, z: Element) -> bool:
    """The anti-exchange implication at closed ``a`` for outside points ``y != z``."""
    if y in sym_closure(a.add(z)):
        return z not in sym_closure(a.add(y))
    return True


def sym_check_aep(trials: int = 10_000, seed: int = 0) -> AepReport:
    """Sample closed sets and outside point pairs and test anti-exchange.

    A violation raises :class:`ConsistencyError`.
    """
    rng = random.Random(seed)
    for t in range(trials):
        size = rng.randrange(0, 8)
        a = SymbolicSet.finite(rng.sample(range(40), size))
        pool: list[Element] = [i for i in range(48) if i not in a.support] + [POINT]
        if rng.random() < 0.25:
            # bias towards pairs involving the special point
            other = rng.choice(pool[:-1])
            y, z = (POINT, other) if rng.random() < 0.5 else (other, POINT)
        else:
            y, z = rng.sample(pool, 2)
        if not aep_holds(a, y, z):
            raise ConsistencyError(f"anti-exchange fails at A={a}, y={y}, z={z} (trial {t})")
    return AepReport(trials, 0, seed)


@dataclass(frozen=True)
class StandardnessWitness:
    point_closure: SymbolicSet
    punctured: SymbolicSet
    punctured_closure: SymbolicSet

    @property
    def fails(self) -> bool:
        return self.punctured_closure != self.punctured


def sym_standardness_witness() -> StandardnessWitness:
    """``φ({x}) = X`` but ``φ({x}) ∖ {x} = N`` is not closed."""
    point_closure = sym_closure(SymbolicSet.of([POINT]))
    punctured = point_closure.remove(POINT)
    return StandardnessWitness(point_closure, punctured, sym_closure(punctured))


@dataclass(frozen=True)
class FinitaryWitness:
    subset: SymbolicSet
    closure: SymbolicSet
    finite_union: SymbolicSet

    @property
    def fails(self) -> bool:
        return self.closure != self.finite_union

    @property
    def gap(self) -> tuple[Element, ...]:
        """Points of the closure missed by the union of finite closures."""
        out: list[Element] = []
        if self.closure.has_x and not self.finite_union.has_x:
            out.append(POINT)
        if self.closure.is_cofinite and self.finite_union.is_cofinite:
            out.extend(sorted(self.finite_union.support - self.closure.support))
        return tuple(out)


def finite_union_of_closures(a: SymbolicSet) -> SymbolicSet:
    """Union of ``φ(B)`` over the finite subsets ``B`` of ``a``.

    A finite ``B`` without ``x`` is closed, so these contribute exactly the
    naturals of ``a``; the single subset ``{x}`` contributes the whole space.
    """
    if a.has_x:
        return WHOLE
    return a


def sym_nonalgebraic_witness(a: SymbolicSet = NATURALS) -> FinitaryWitness:
    """Compare ``φ(a)`` with the union of closures of its finite subsets."""
    return FinitaryWitness(a, sym_closure(a), finite_union_of_closures(a))
