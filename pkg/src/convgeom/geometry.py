"""Recognition of convex geometries and their structural checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    ClosureSystem,
    Subset,
    Verdict,
    join_irreducible_masks,
    join_systems,
)
from .errors import ConsistencyError, NotAGeometry, NotZeroClosed


@dataclass(frozen=True)
class AepWitness:
    """A closed set ``a`` and two outside points that exchange with each other."""

    a: Subset
    x: int
    y: int

    def __str__(self) -> str:
        labels = self.a.ground.labels
        return f"({self.a},{labels[self.x]},{labels[self.y]})"


def _require_zero(system: ClosureSystem) -> None:
    if not system.zero_closed:
        raise NotZeroClosed("the empty set is not closed in this system")


def check_aep(system: ClosureSystem) -> Verdict:
    """Anti-exchange test over closed ``A`` and distinct ``x, y`` outside it."""
    _require_zero(system)
    cl = system.closure_mask
    n = system.n
    for a in system.masks:
        outside = [i for i in range(n) if not a >> i & 1]
        with_point = {i: cl(a | 1 << i) for i in outside}
        for x in outside:
            for y in outside:
                if x != y and with_point[y] >> x & 1 and with_point[x] >> y & 1:
                    w = AepWitness(Subset(system.ground, a), x, y)
                    return Verdict(False, "anti-exchange violated", w)
    return Verdict(True, "anti-exchange holds")


def check_accessibility(system: ClosureSystem) -> Verdict:
    """Every proper closed set grows to a closed set by adding one point."""
    _require_zero(system)
    full = system.ground.full
    closed = system.family.mask_set
    for y in system.masks:
        if y == full:
            continue
        if not any(not y >> i & 1 and (y | 1 << i) in closed for i in range(system.n)):
            return Verdict(False, "closed set cannot be extended by one point", Subset(system.ground, y))
    return Verdict(True, "accessible")


def check_cover_cardinality(system: ClosureSystem) -> Verdict:
    """Every covering pair of closed sets differs in exactly one point."""
    _require_zero(system)
    ground = system.ground
    for a in system.masks:
        for b in system.upper_cover_map[a]:
            if (b & ~a).bit_count() != 1:
                return Verdict(False, "cover adds more than one point", (Subset(ground, a), Subset(ground, b)))
    return Verdict(True, "every cover adds one point")


@dataclass(frozen=True)
class ConvexGeometry:
    """A zero-closed closure system with the anti-exchange property."""

    system: ClosureSystem

    def __post_init__(self) -> None:
        if not self.system.zero_closed:
            raise NotAGeometry("the empty set is not closed")
        verdict = check_aep(self.system)
        if not verdict:
            raise NotAGeometry(f"{verdict.reason}: {verdict.witness}")

    @property
    def ground(self):
        return self.system.ground

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def masks(self) -> tuple[int, ...]:
        return self.system.masks

    def __str__(self) -> str:
        return str(self.system)


@dataclass(frozen=True)
class Recognition:
    ok: bool
    aep: Verdict
    accessibility: Verdict
    cover: Verdict
    geometry: ConvexGeometry | None = None

    @property
    def witness(self):
        return self.aep.witness

    def __bool__(self) -> bool:
        return self.ok


def recognize(system: ClosureSystem) -> Recognition:
    """Run all three characterizations; they must agree.

    Raises :class:`NotZeroClosed` when the empty set is not closed and
    :class:`ConsistencyError` when the characterizations disagree.
    """
    aep = check_aep(system)
    acc = check_accessibility(system)
    cov = check_cover_cardinality(system)
    if not (aep.ok == acc.ok == cov.ok):
        raise ConsistencyError(
            f"characterizations disagree on {system}: aep={aep.ok} accessibility={acc.ok} cover={cov.ok}"
        )
    geometry = ConvexGeometry(system) if aep.ok else None
    return Recognition(aep.ok, aep, acc, cov, geometry)


def as_geometry(system: ClosureSystem) -> ConvexGeometry:
    result = recognize(system)
    if result.geometry is None:
        raise NotAGeometry(f"{result.aep.reason}: {result.aep.witness}")
    return result.geometry


def check_standard(g: ConvexGeometry) -> Verdict:
    """``φ({x}) ∖ {x}`` is closed for every point ``x``.

    Finite geometries are always standard, so a failure raises.
    """
    system = g.system
    for x in range(system.n):
        punctured = system.closure_mask(1 << x) & ~(1 << x)
        if not system.is_closed_mask(punctured):
            raise ConsistencyError(
                f"geometry not standard at {g.ground.labels[x]}: {Subset(g.ground, punctured)} not closed"
            )
    return Verdict(True, "standard")


def check_spatial(system: ClosureSystem) -> Verdict:
    """Every closed set is the closure of the join-irreducibles below it."""
    jirr = join_irreducible_masks(system)
    for c in system.masks:
        union = 0
        for j in jirr:
            if j & ~c == 0:
                union |= j
        if system.closure_mask(union) != c:
            return Verdict(False, "closed set is not a join of join-irreducibles", Subset(system.ground, c))
    return Verdict(True, "spatial")


def check_jirr_singletons(g: ConvexGeometry) -> Verdict:
    """The closure of each point is join-irreducible."""
    system = g.system
    lower = system.lower_cover_map
    for x in range(system.n):
        c = system.closure_mask(1 << x)
        if len(lower[c]) != 1:
            return Verdict(False, "point closure is join-reducible", Subset(g.ground, c))
    return Verdict(True, "point closures are join-irreducible")


def join_geometries(geometries: Sequence[ConvexGeometry]) -> ConvexGeometry:
    """Join of convex geometries, which is again a convex geometry."""
    joined = join_systems([g.system for g in geometries])
    result = recognize(joined)
    if result.geometry is None:
        raise ConsistencyError(f"join of convex geometries is not a geometry: {result.witness}")
    return result.geometry
