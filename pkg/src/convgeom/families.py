"""Standard closure systems and generators of whole classes of them."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .core import ClosureSystem, GroundSet, canonical_masks, intersection_closure
from .errors import TooLarge

#: exhaustive enumeration of closure systems refuses larger ground sets
MAX_FAMILY_N = 4


def interval_masks(n: int) -> list[int]:
    """Empty set plus every interval ``[i, j]`` of the chain ``0 < 1 < ... < n-1``."""
    out = [0]
    for i in range(n):
        for j in range(i, n):
            out.append(((1 << (j + 1)) - 1) & ~((1 << i) - 1))
    return out


def interval_system(ground: GroundSet) -> ClosureSystem:
    """Convex subsets of the ground set read as a chain in index order."""
    return ClosureSystem.from_masks(ground, interval_masks(ground.n))


def closure_systems(n: int, require_zero: bool = True) -> Iterator[ClosureSystem]:
    """Every closure system on ``1..n`` (containing the empty set when asked).

    Candidates are all families of proper non-empty subsets; those stable
    under intersection are kept.  Only feasible for ``n <= 4``.
    """
    if n > MAX_FAMILY_N:
        raise TooLarge(f"enumerating closure systems on {n} elements refused (limit {MAX_FAMILY_N})")
    ground = GroundSet.of_size(n)
    full = ground.full
    middle = canonical_masks(range(1, full))
    base = (0, full) if require_zero else (full,)
    optional = middle if require_zero else (0,) + middle
    for bits in range(1 << len(optional)):
        chosen = [m for i, m in enumerate(optional) if bits >> i & 1]
        present = set(chosen)
        present.update(base)
        if all(a & b in present for a, b in combinations(chosen, 2)):
            yield ClosureSystem.from_masks(ground, present)


def random_closure_system(n: int, rng: random.Random, density: float | None = None) -> ClosureSystem:
    """Zero-closed system generated by a random family of subsets."""
    ground = GroundSet.of_size(n)
    full = ground.full
    p = rng.random() if density is None else density
    gens = [m for m in range(1, full) if rng.random() < p]
    gens.append(0)
    return ClosureSystem.from_masks(ground, intersection_closure(gens, full))
