"""Finite ground sets, subsets, set families and closure systems.

Subsets are stored as integer bitmasks (bit ``i`` set iff the element with
index ``i`` is a member).  Every public value is immutable; the bitmask
level helpers prefixed with ``mask`` are what the enumeration kernels in the
other modules use directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Any, Iterable, Iterator, Sequence

from .errors import ConsistencyError, GroundSetMismatch, InvalidClosureSystem, TooLarge

#: exhaustive enumeration of the power set is refused above this size
MAX_ENUM_N = 20
#: closure is answered from a precomputed table up to this size
TABLE_N = 12


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key: cardinality first, then the ascending index tuple."""
    return (mask.bit_count(), mask_indices(mask))


def canonical_masks(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=mask_key))


def is_submask(a: int, b: int) -> bool:
    return a & ~b == 0


def intersection_closure(masks: Iterable[int], full: int) -> frozenset[int]:
    """Smallest intersection-stable family containing ``masks`` and ``full``."""
    result = set(masks)
    result.add(full)
    frontier = list(result)
    while frontier:
        fresh = []
        current = list(result)
        for a in frontier:
            for b in current:
                c = a & b
                if c not in result:
                    result.add(c)
                    fresh.append(c)
        frontier = fresh
    return frozenset(result)


@dataclass(frozen=True)
class GroundSet:
    """A finite, non-empty set of labelled elements with a fixed index order."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise ValueError("a ground set needs at least one element")
        if len(set(labels)) != len(labels):
            dupes = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise ValueError(f"duplicate labels in ground set: {dupes}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        """Ground set labelled ``1..n``."""
        return cls(tuple(str(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable[Any] = ()) -> Subset:
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return Subset(self, bits)

    def from_mask(self, mask: int) -> Subset:
        return Subset(self, mask)

    def empty(self) -> Subset:
        return Subset(self, 0)

    def whole(self) -> Subset:
        return Subset(self, self.full)

    def check_same(self, other: GroundSet) -> None:
        if self != other:
            raise GroundSetMismatch(f"ground sets differ: {self.labels} vs {other.labels}")

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)})"


@dataclass(frozen=True)
class Subset:
    """One subset of a ground set, as a membership bitmask."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits & ~self.ground.full:
            raise ValueError(f"bitmask {self.bits:#b} out of range for n={self.ground.n}")

    def _bits_of(self, other: Subset) -> int:
        self.ground.check_same(other.ground)
        return other.bits

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits & self._bits_of(other))

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits | self._bits_of(other))

    def __sub__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits & ~self._bits_of(other))

    def issubset(self, other: Subset) -> bool:
        return is_submask(self.bits, self._bits_of(other))

    def issuperset(self, other: Subset) -> bool:
        return is_submask(self._bits_of(other), self.bits)

    def with_element(self, index: int) -> Subset:
        return Subset(self.ground, self.bits | (1 << index))

    def without_element(self, index: int) -> Subset:
        return Subset(self.ground, self.bits & ~(1 << index))

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(mask_indices(self.bits))

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return mask_key(self.bits)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.labels[i] for i in self)

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"

    def __repr__(self) -> str:
        return f"Subset({self})"


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets kept in canonical order."""

    ground: GroundSet
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        full = self.ground.full
        for m in self.masks:
            if m < 0 or m & ~full:
                raise ValueError(f"bitmask {m:#b} out of range for n={self.ground.n}")
        object.__setattr__(self, "masks", canonical_masks(self.masks))

    @classmethod
    def of(cls, ground: GroundSet, members: Iterable[Subset]) -> SetFamily:
        masks = []
        for s in members:
            ground.check_same(s.ground)
            masks.append(s.bits)
        return cls(ground, tuple(masks))

    @classmethod
    def from_labels(cls, ground: GroundSet, sets: Iterable[Iterable[Any]]) -> SetFamily:
        return cls.of(ground, (ground.subset(s) for s in sets))

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, item: Subset) -> bool:
        return item.ground == self.ground and item.bits in self.mask_set

    def issubset(self, other: SetFamily) -> bool:
        self.ground.check_same(other.ground)
        return self.mask_set <= other.mask_set

    def __str__(self) -> str:
        return "[" + ", ".join(str(s) for s in self) + "]"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``witness`` explains a rejection."""

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def validate_closure_system(family: SetFamily, require_zero: bool = False) -> Verdict:
    """Check that ``family`` contains X, is intersection-stable, and (optionally) holds the empty set."""
    ground = family.ground
    present = family.mask_set
    if ground.full not in present:
        return Verdict(False, "full set missing", ground.whole())
    if require_zero and 0 not in present:
        return Verdict(False, "empty set missing", ground.empty())
    masks = family.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b not in present:
                return Verdict(
                    False,
                    "not stable under intersection",
                    (Subset(ground, a), Subset(ground, b)),
                )
    return Verdict(True, "closure system")


@dataclass(frozen=True)
class ClosureSystem:
    """The closed sets of a closure operator on a finite ground set."""

    family: SetFamily

    def __post_init__(self) -> None:
        verdict = validate_closure_system(self.family)
        if not verdict:
            raise InvalidClosureSystem(f"{verdict.reason}: {_describe(verdict.witness)}")

    @classmethod
    def from_masks(cls, ground: GroundSet, masks: Iterable[int]) -> ClosureSystem:
        return cls(SetFamily(ground, tuple(masks)))

    @classmethod
    def from_labels(cls, ground: GroundSet, sets: Iterable[Iterable[Any]]) -> ClosureSystem:
        return cls(SetFamily.from_labels(ground, sets))

    @classmethod
    def generated_by(cls, ground: GroundSet, masks: Iterable[int]) -> ClosureSystem:
        """Closure system generated by ``masks`` (closed under intersection, plus X)."""
        return cls.from_masks(ground, intersection_closure(masks, ground.full))

    @classmethod
    def powerset(cls, ground: GroundSet) -> ClosureSystem:
        if ground.n > MAX_ENUM_N:
            raise TooLarge(f"power set of {ground.n} elements refused (limit {MAX_ENUM_N})")
        return cls.from_masks(ground, range(ground.full + 1))

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def n(self) -> int:
        return self.family.ground.n

    @property
    def masks(self) -> tuple[int, ...]:
        return self.family.masks

    @property
    def zero_closed(self) -> bool:
        return 0 in self.family.mask_set

    def __len__(self) -> int:
        return len(self.family)

    def is_closed_mask(self, mask: int) -> bool:
        return mask in self.family.mask_set

    def is_closed(self, a: Subset) -> bool:
        self.ground.check_same(a.ground)
        return a.bits in self.family.mask_set

    @cached_property
    def _table(self) -> list[int] | None:
        n = self.n
        if n > TABLE_N:
            return None
        table = [self.ground.full] * (1 << n)
        for c in self.masks:
            s = c
            while True:
                table[s] &= c
                if s == 0:
                    break
                s = (s - 1) & c
        return table

    def closure_mask(self, mask: int) -> int:
        table = self._table
        if table is not None:
            return table[mask]
        out = self.ground.full
        for c in self.masks:
            if mask & ~c == 0:
                out &= c
        return out

    def closure(self, a: Subset) -> Subset:
        self.ground.check_same(a.ground)
        return Subset(self.ground, self.closure_mask(a.bits))

    @cached_property
    def upper_cover_map(self) -> dict[int, tuple[int, ...]]:
        """Upper covers of every closed set, each list in canonical order."""
        full = self.ground.full
        n = self.n
        covers: dict[int, tuple[int, ...]] = {}
        for a in self.masks:
            cands = set()
            for x in range(n):
                if not a >> x & 1:
                    cands.add(self.closure_mask(a | 1 << x))
            minimal = [c for c in cands if not any(d != c and d & ~c == 0 for d in cands)]
            covers[a] = canonical_masks(minimal)
            assert a != full or not minimal
        return covers

    @cached_property
    def lower_cover_map(self) -> dict[int, tuple[int, ...]]:
        lower: dict[int, list[int]] = {a: [] for a in self.masks}
        for a, ups in self.upper_cover_map.items():
            for b in ups:
                lower[b].append(a)
        return {b: canonical_masks(v) for b, v in lower.items()}

    def upper_covers(self, a: Subset) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.upper_cover_map[a.bits])

    def lower_covers(self, a: Subset) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.lower_cover_map[a.bits])

    def __str__(self) -> str:
        return str(self.family)


def _describe(witness: Any) -> str:
    if isinstance(witness, tuple):
        return ", ".join(str(w) for w in witness)
    return str(witness)


def _require_enumerable(n: int) -> None:
    if n > MAX_ENUM_N:
        raise TooLarge(f"enumerating all subsets of {n} elements refused (limit {MAX_ENUM_N})")


def closure(system: ClosureSystem, a: Subset) -> Subset:
    """Smallest closed set containing ``a``."""
    return system.closure(a)


@dataclass(frozen=True)
class AxiomReport:
    extensive: Verdict
    monotone: Verdict
    idempotent: Verdict
    finitary: Verdict

    @property
    def ok(self) -> bool:
        return all((self.extensive, self.monotone, self.idempotent, self.finitary))


def operator_axiom_report(system: ClosureSystem) -> AxiomReport:
    """Check the closure-operator axioms of the induced operator over every subset.

    Monotonicity is checked on single-element extensions ``A ⊆ A ∪ {x}``, which
    implies it for all pairs by transitivity.  The finitary axiom holds
    automatically on a finite ground set and is reported as such.
    """
    n = system.n
    _require_enumerable(n)
    ground = system.ground
    cl = system.closure_mask
    extensive = monotone = idempotent = None
    for a in range(ground.full + 1):
        ca = cl(a)
        if extensive is None and a & ~ca:
            extensive = Verdict(False, "A not contained in its closure", Subset(ground, a))
        if idempotent is None and cl(ca) != ca:
            idempotent = Verdict(False, "closure not idempotent", Subset(ground, a))
        if monotone is None:
            for x in range(n):
                b = a | 1 << x
                if b != a and ca & ~cl(b):
                    monotone = Verdict(
                        False,
                        "closure not monotone",
                        (Subset(ground, a), Subset(ground, b)),
                    )
                    break
    return AxiomReport(
        extensive=extensive or Verdict(True, "extensive"),
        monotone=monotone or Verdict(True, "monotone"),
        idempotent=idempotent or Verdict(True, "idempotent"),
        finitary=Verdict(True, "holds automatically on a finite ground set"),
    )


def meet_systems(a: ClosureSystem, b: ClosureSystem) -> ClosureSystem:
    """Family intersection of two closure systems."""
    a.ground.check_same(b.ground)
    return ClosureSystem.from_masks(a.ground, a.family.mask_set & b.family.mask_set)


def join_systems(systems: Sequence[ClosureSystem]) -> ClosureSystem:
    """Smallest closure system containing every input family.

    Each input is already intersection-stable and contains X, so the join is
    the set of all intersections taking one member from every input.
    """
    if not systems:
        raise ValueError("join of an empty list of closure systems")
    ground = systems[0].ground
    for s in systems[1:]:
        ground.check_same(s.ground)
    acc = systems[0].family.mask_set
    for s in systems[1:]:
        other = s.family.mask_set
        acc = frozenset(a & b for a in acc for b in other)
    return ClosureSystem.from_masks(ground, acc)


def covering_pairs(system: ClosureSystem) -> list[tuple[Subset, Subset]]:
    """All covering pairs ``(A, B)`` of the closed-set lattice, canonical order."""
    ground = system.ground
    pairs = [(a, b) for a in system.masks for b in system.upper_cover_map[a]]
    pairs.sort(key=lambda p: (mask_key(p[0]), mask_key(p[1])))
    return [(Subset(ground, a), Subset(ground, b)) for a, b in pairs]


def join_irreducible_masks(system: ClosureSystem) -> tuple[int, ...]:
    lower = system.lower_cover_map
    return tuple(m for m in system.masks if len(lower[m]) == 1)


def meet_irreducible_masks(system: ClosureSystem) -> tuple[int, ...]:
    upper = system.upper_cover_map
    return tuple(m for m in system.masks if len(upper[m]) == 1)


def irreducibles(system: ClosureSystem) -> tuple[SetFamily, SetFamily]:
    """Join-irreducible and meet-irreducible closed sets."""
    g = system.ground
    return (
        SetFamily(g, join_irreducible_masks(system)),
        SetFamily(g, meet_irreducible_masks(system)),
    )


def operator_leq(a: ClosureSystem, b: ClosureSystem) -> bool:
    """Whether the closure operator of ``a`` lies below that of ``b``.

    Computed twice, pointwise over all subsets and as reversed family
    containment; disagreement raises :class:`ConsistencyError`.
    """
    a.ground.check_same(b.ground)
    _require_enumerable(a.n)
    pointwise = all(
        is_submask(a.closure_mask(y), b.closure_mask(y)) for y in range(a.ground.full + 1)
    )
    by_family = b.family.mask_set <= a.family.mask_set
    if pointwise != by_family:
        raise ConsistencyError(
            f"operator order disagrees with reversed family containment ({pointwise} vs {by_family})"
        )
    return pointwise


@dataclass(frozen=True, order=True)
class TotalOrder:
    """A total order on a ground set, listed earliest element first."""

    ground: GroundSet = field(compare=False)
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(self.ground.n)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.ground.n - 1}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Iterable[Any]) -> TotalOrder:
        return cls(ground, tuple(ground.index(lab) for lab in labels))

    def prefix_masks(self) -> tuple[int, ...]:
        out = [0]
        acc = 0
        for i in self.perm:
            acc |= 1 << i
            out.append(acc)
        return tuple(out)

    def rank(self, index: int) -> int:
        return self.perm.index(index)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.labels[i] for i in self.perm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TotalOrder):
            return NotImplemented
        return self.ground == other.ground and self.perm == other.perm

    def __hash__(self) -> int:
        return hash((self.ground, self.perm))

    def __str__(self) -> str:
        return "(" + ",".join(self.labels()) + ")"
