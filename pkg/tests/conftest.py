from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import strategies as st

from convgeom.core import ClosureSystem, GroundSet, intersection_closure


def ground(n: int) -> GroundSet:
    return GroundSet.of_size(n)


def system(n: int, *sets) -> ClosureSystem:
    """Closure system on 1..n from label collections like ``(), (1,), (1, 2)``."""
    g = ground(n)
    return ClosureSystem.from_labels(g, [[str(x) for x in s] for s in sets])


def as_sets(family_masks, n: int) -> set[frozenset[int]]:
    return {frozenset(i + 1 for i in range(n) if m >> i & 1) for m in family_masks}


# -- independent oracles, written against plain Python sets ------------------


def brute_closure(closed: set[frozenset], full: frozenset, a: frozenset) -> frozenset:
    out = full
    for c in closed:
        if a <= c:
            out = out & c
    return out


def brute_intersection_closure(sets: set[frozenset], full: frozenset) -> set[frozenset]:
    out = set(sets) | {full}
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in list(out):
                if a & b not in out:
                    out.add(a & b)
                    changed = True
    return out


def brute_maximal_chains(closed: set[frozenset], full: frozenset) -> set[tuple[frozenset, ...]]:
    """Strictly increasing sequences from the empty set to ``full`` that admit no insertion."""
    found = set()

    def grow(path):
        last = path[-1]
        if last == full:
            found.add(tuple(path))
            return
        for c in closed:
            if last < c:
                grow(path + [c])

    grow([frozenset()])

    def maximal(chain):
        for a, b in zip(chain, chain[1:]):
            if any(a < c < b for c in closed):
                return False
        return True

    return {c for c in found if maximal(c)}


def brute_compatible(closed: set[frozenset], n: int) -> list[tuple[int, ...]]:
    """Permutations (1-based labels) whose every prefix is closed."""
    out = []
    for perm in permutations(range(1, n + 1)):
        if all(frozenset(perm[:k]) in closed for k in range(n + 1)):
            out.append(perm)
    return out


# -- hypothesis strategies --------------------------------------------------


@st.composite
def closure_systems(draw, min_n: int = 1, max_n: int = 5, zero: bool = True):
    n = draw(st.integers(min_n, max_n))
    g = ground(n)
    gens = draw(st.sets(st.integers(0, g.full), max_size=12))
    if zero:
        gens = set(gens) | {0}
    return ClosureSystem.from_masks(g, intersection_closure(gens, g.full))


@st.composite
def order_lists(draw, min_n: int = 1, max_n: int = 6, max_k: int = 5):
    from convgeom.core import TotalOrder

    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    g = ground(n)
    return [TotalOrder(g, tuple(draw(st.permutations(range(n))))) for _ in range(k)]


@pytest.fixture
def pair_g_f():
    return system(2, (), (1,), (1, 2)), system(2, (), (2,), (1, 2))
