from __future__ import annotations

from itertools import combinations

import pytest

from conftest import as_sets, brute_intersection_closure, ground, system
from convgeom.chains import compatible_orders, ideal_geometry, is_compatible
from convgeom.core import ClosureSystem, TotalOrder
from convgeom.decomp import (
    Decomposition,
    ej_decompose,
    min_order_cover,
    random_geometry,
    random_orders,
    reconstruct,
)
from convgeom.errors import TooLarge
from convgeom.families import closure_systems, interval_system
from convgeom.geometry import ConvexGeometry, as_geometry, recognize


def brute_min_cover(g: ConvexGeometry) -> int:
    """Smallest number of compatible orders whose prefix sets generate g under intersection."""
    n = g.n
    target = as_sets(g.masks, n)
    full = frozenset(range(1, n + 1))
    orders = compatible_orders(g)
    prefixes = [as_sets(o.prefix_masks(), n) for o in orders]
    for k in range(1, len(orders) + 1):
        for combo in combinations(prefixes, k):
            if brute_intersection_closure(set().union(*combo), full) == target:
                return k
    raise AssertionError("no cover found")


def order_strs(d: Decomposition) -> list[str]:
    return [str(o) for o in d.orders]


def test_ej_decompose_examples():
    pw = as_geometry(ClosureSystem.powerset(ground(2)))
    d = ej_decompose(pw)
    assert order_strs(d) == ["(1,2)", "(2,1)"] and d.verified
    assert reconstruct(d).system == pw.system
    chain = ideal_geometry(TotalOrder(ground(3), (0, 1, 2)))
    assert order_strs(ej_decompose(chain)) == ["(1,2,3)"]
    assert order_strs(ej_decompose(chain, "witness-per-set")) == ["(1,2,3)"]
    iv = as_geometry(interval_system(ground(3)))
    for mode in ("all", "witness-per-set"):
        d = ej_decompose(iv, mode)
        assert {"(1,2,3)", "(3,2,1)"} <= set(order_strs(ej_decompose(iv)))
        assert reconstruct(d).system == iv.system
        assert all(is_compatible(o, iv.system) for o in d.orders)


def test_ej_decompose_rejects_unknown_mode():
    with pytest.raises(ValueError):
        ej_decompose(as_geometry(ClosureSystem.powerset(ground(2))), "some")


def test_reconstruct_examples():
    g = ground(2)
    assert reconstruct([TotalOrder(g, (0, 1)), TotalOrder(g, (1, 0))]).system == ClosureSystem.powerset(g)
    single = TotalOrder(ground(3), (2, 0, 1))
    assert reconstruct([single]) == ideal_geometry(single)
    g3 = ground(3)
    both = reconstruct([TotalOrder.from_labels(g3, "123"), TotalOrder.from_labels(g3, "321")])
    assert both.system == interval_system(g3)
    with pytest.raises(ValueError):
        reconstruct([])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ej_round_trip_for_every_small_geometry(n):
    for s in closure_systems(n):
        r = recognize(s)
        if r.geometry is None:
            continue
        for mode in ("all", "witness-per-set"):
            assert reconstruct(ej_decompose(r.geometry, mode)).system.family == s.family


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_interval_geometry_needs_two_orders(n):
    g = as_geometry(interval_system(ground(n)))
    d = min_order_cover(g, "exact")
    assert len(d) == 2
    if n <= 4:
        assert brute_min_cover(g) == 2


def test_power_set_covers():
    pw2 = as_geometry(ClosureSystem.powerset(ground(2)))
    assert len(min_order_cover(pw2)) == brute_min_cover(pw2) == 2
    pw3 = as_geometry(ClosureSystem.powerset(ground(3)))
    d = min_order_cover(pw3)
    assert brute_min_cover(pw3) == 3
    assert order_strs(d) == ["(1,2,3)", "(1,3,2)", "(2,3,1)"]
    assert reconstruct(d).system == pw3.system


@pytest.mark.parametrize("seed", range(25))
def test_exact_matches_brute_force_and_greedy_bounds_it(seed):
    g = random_geometry(3 + seed % 3, 2 + seed % 2, seed)
    exact = min_order_cover(g, "exact")
    greedy = min_order_cover(g, "greedy")
    assert len(exact) == brute_min_cover(g)
    assert len(greedy) >= len(exact)
    assert reconstruct(exact).system == g.system == reconstruct(greedy).system


def test_exact_cover_guard():
    g = as_geometry(ClosureSystem.powerset(ground(4)))
    with pytest.raises(TooLarge):
        min_order_cover(g, "exact", max_orders=20)
    assert len(min_order_cover(g, "greedy")) >= 3


def test_random_geometry_examples():
    chain = random_geometry(5, 1, 7)
    assert len(chain.system) == 6
    assert random_geometry(6, 3, 11) == random_geometry(6, 3, 11)
    seed = next(s for s in range(100) if len(set(random_orders(2, 2, s))) == 2)
    assert random_geometry(2, 2, seed).system == ClosureSystem.powerset(ground(2))
    with pytest.raises(ValueError):
        random_geometry(0, 1, 0)


def test_random_geometries_are_geometries():
    for seed in range(1000):
        g = random_geometry(1 + seed % 6, 1 + seed % 5, seed)
        assert recognize(g.system)
