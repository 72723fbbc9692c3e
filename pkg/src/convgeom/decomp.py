"""Decomposition of convex geometries into compatible orders and back."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Sequence

from .chains import Chain, compatible_orders, ideal_geometry, is_compatible, order_from_chain
from .core import GroundSet, TotalOrder, meet_irreducible_masks
from .errors import ConsistencyError, TooLarge
from .geometry import ConvexGeometry, join_geometries

#: exact minimal cover search refuses geometries with more compatible orders
MAX_EXACT_ORDERS = 64


@dataclass(frozen=True)
class Decomposition:
    """Compatible orders whose ideal geometries join back to ``source``."""

    orders: tuple[TotalOrder, ...]
    source: ConvexGeometry
    verified: bool = False

    def __len__(self) -> int:
        return len(self.orders)


def reconstruct(d: Decomposition | Sequence[TotalOrder]) -> ConvexGeometry:
    """Join of the ideal geometries of the given orders."""
    orders = d.orders if isinstance(d, Decomposition) else tuple(d)
    if not orders:
        raise ValueError("cannot reconstruct from an empty list of orders")
    return join_geometries([ideal_geometry(o) for o in orders])


def _verified(orders: Sequence[TotalOrder], g: ConvexGeometry) -> Decomposition:
    for o in orders:
        if not is_compatible(o, g.system):
            raise ConsistencyError(f"order {o} is not compatible with the geometry")
    rebuilt = reconstruct(orders)
    if rebuilt.system.family != g.system.family:
        raise ConsistencyError(f"orders {[str(o) for o in orders]} do not reconstruct the geometry")
    return Decomposition(tuple(orders), g, verified=True)


def _canonical_chain_through(g: ConvexGeometry, y: int) -> Chain:
    system = g.system
    full = g.ground.full
    down = [y]
    while down[-1] != 0:
        down.append(system.lower_cover_map[down[-1]][0])
    up = [y]
    while up[-1] != full:
        up.append(system.upper_cover_map[up[-1]][0])
    return Chain(g.ground, tuple(reversed(down)) + tuple(up[1:]))


def ej_decompose(
    g: ConvexGeometry, mode: Literal["all", "witness-per-set"] = "all"
) -> Decomposition:
    """Represent ``g`` as a join of ideal geometries of compatible orders.

    ``all`` takes every compatible order.  ``witness-per-set`` takes, for
    each closed set, one maximal chain through it (descending and ascending
    along canonical covers) and keeps the distinct orders those chains
    induce.
    """
    if mode == "all":
        orders = compatible_orders(g)
    elif mode == "witness-per-set":
        found = {order_from_chain(_canonical_chain_through(g, y), g) for y in g.masks}
        orders = sorted(found)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _verified(orders, g)


def _chain_masks(orders: Sequence[TotalOrder]) -> list[frozenset[int]]:
    return [frozenset(o.prefix_masks()) for o in orders]


def min_order_cover(
    g: ConvexGeometry,
    mode: Literal["exact", "greedy"] = "exact",
    max_orders: int = MAX_EXACT_ORDERS,
) -> Decomposition:
    """Few compatible orders whose ideal geometries still join to ``g``.

    A subfamily generates ``g`` under intersection exactly when it contains
    every meet-irreducible closed set, so both modes work on that target.
    ``exact`` tries subsets of compatible orders by increasing size in
    canonical order and returns the first hit.  ``greedy`` repeatedly takes
    the order covering the most uncovered meet-irreducibles and is only an
    upper bound.
    """
    orders = compatible_orders(g)
    targets = frozenset(meet_irreducible_masks(g.system))
    chains = _chain_masks(orders)
    if mode == "exact":
        if len(orders) > max_orders:
            raise TooLarge(f"{len(orders)} compatible orders exceed the exact-search limit {max_orders}")
        for k in range(1, len(orders) + 1):
            for combo in combinations(range(len(orders)), k):
                covered = frozenset().union(*(chains[i] for i in combo))
                if targets <= covered:
                    return _verified([orders[i] for i in combo], g)
        raise ConsistencyError("all compatible orders together do not cover the meet-irreducibles")
    if mode == "greedy":
        chosen: list[int] = []
        uncovered = set(targets)
        while uncovered or not chosen:
            best = max(range(len(orders)), key=lambda i: (len(uncovered & chains[i]), -i))
            if chosen and not uncovered & chains[best]:
                raise ConsistencyError("greedy cover stalled before covering the meet-irreducibles")
            chosen.append(best)
            uncovered -= chains[best]
        return _verified([orders[i] for i in sorted(chosen)], g)
    raise ValueError(f"unknown mode {mode!r}")


def random_orders(n: int, k: int, seed: int) -> list[TotalOrder]:
    """``k`` uniformly random orders on ``1..n``, reproducible from ``seed``."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    rng = random.Random(seed)
    ground = GroundSet.of_size(n)
    out = []
    for _ in range(k):
        perm = list(range(n))
        rng.shuffle(perm)
        out.append(TotalOrder(ground, tuple(perm)))
    return out


def random_geometry(n: int, k: int, seed: int) -> ConvexGeometry:
    """Join of the ideal geometries of ``k`` seeded random orders."""
    return reconstruct(random_orders(n, k, seed))
