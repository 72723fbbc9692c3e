"""Theorem-verification battery run by ``convgeom verify`` and the acceptance tests.

Each criterion returns a :class:`CriterionResult`; the report lines never
contain timings or anything else that varies between runs with one seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chains import (
    chain_of_order,
    compatible_orders,
    h_map,
    is_compatible,
    is_maximal_chain,
    maximal_chains,
    order_from_chain,
)
from .core import ClosureSystem, GroundSet, meet_systems
from .decomp import ej_decompose, min_order_cover, random_orders, reconstruct
from .errors import ConsistencyError
from .families import closure_systems, interval_system, random_closure_system
from .geometry import (
    ConvexGeometry,
    check_jirr_singletons,
    check_spatial,
    check_standard,
    join_geometries,
    recognize,
)
from .chains import ideal_geometry
from .symbolic import (
    NATURALS,
    POINT,
    WHOLE,
    sym_check_aep,
    sym_nonalgebraic_witness,
    sym_standardness_witness,
)


@dataclass(frozen=True)
class BatteryConfig:
    max_n: int = 6
    seed: int = 0
    samples: int = 10_000
    joins: int = 1_000
    max_k: int = 5
    sym_trials: int = 10_000


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:>2} {self.name}: {self.detail}"


@dataclass
class Corpus:
    """Geometries collected by criteria 1 and 3, deduplicated, in discovery order."""

    geometries: list[ConvexGeometry] = field(default_factory=list)
    _seen: set = field(default_factory=set)

    def add(self, g: ConvexGeometry) -> None:
        key = (g.ground.labels, g.masks)
        if key not in self._seen:
            self._seen.add(key)
            self.geometries.append(g)


def _rng(cfg: BatteryConfig, tag: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{tag}")


def characterization_equivalence(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    disagreements = 0
    systems = 0
    geometries = 0

    def run(system: ClosureSystem) -> None:
        nonlocal disagreements, systems, geometries
        systems += 1
        try:
            result = recognize(system)
        except ConsistencyError:
            disagreements += 1
            return
        if result.geometry is not None:
            geometries += 1
            corpus.add(result.geometry)

    sizes = [n for n in (1, 2, 3, 4) if n <= cfg.max_n]
    for n in sizes:
        for system in closure_systems(n):
            run(system)
    sampled = 0
    if cfg.max_n >= 4:
        rng = _rng(cfg, "c1")
        for _ in range(cfg.samples):
            run(random_closure_system(4, rng))
            sampled += 1
    detail = (
        f"exhaustive n={','.join(map(str, sizes))}, random n=4 samples={sampled}, "
        f"systems={systems}, geometries={geometries}, disagreements={disagreements}"
    )
    return CriterionResult(1, "characterization equivalence", disagreements == 0, detail)


def meet_counterexample(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    ground = GroundSet.of_size(2)
    g = ClosureSystem.from_labels(ground, [[], ["1"], ["1", "2"]])
    f = ClosureSystem.from_labels(ground, [[], ["2"], ["1", "2"]])
    meet = meet_systems(g, f)
    expected = ClosureSystem.from_labels(ground, [[], ["1", "2"]])
    result = recognize(meet)
    w = result.aep.witness
    ok = (
        meet == expected
        and not result.aep.ok
        and not result.accessibility.ok
        and not result.cover.ok
        and w is not None
        and (w.a.bits, w.x, w.y) == (0, 0, 1)
    )
    detail = f"meet={meet}, aep={result.aep.ok}, accessibility={result.accessibility.ok}, cover={result.cover.ok}, witness={w}"
    return CriterionResult(2, "meet counterexample", ok, detail)


def join_preservation(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    rng = _rng(cfg, "c3")
    failures = 0
    top_n = min(6, cfg.max_n)
    for _ in range(cfg.joins):
        n = rng.randint(1, top_n)
        k = rng.randint(1, cfg.max_k)
        orders = random_orders(n, k, rng.randrange(2**32))
        try:
            g = join_geometries([ideal_geometry(o) for o in orders])
        except ConsistencyError:
            failures += 1
            continue
        corpus.add(g)
    detail = f"lists={cfg.joins}, n<={top_n}, k<={cfg.max_k}, failures={failures}"
    return CriterionResult(3, "join preservation", failures == 0, detail)


def _each_chain(corpus: Corpus, check: Callable[[ConvexGeometry, object], bool]) -> tuple[int, int]:
    chains = bad = 0
    for g in corpus.geometries:
        for c in maximal_chains(g.system):
            chains += 1
            try:
                if not check(g, c):
                    bad += 1
            except ConsistencyError:
                bad += 1
    return chains, bad


def chain_length(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    def check(g, c) -> bool:
        steps = zip(c.masks, c.masks[1:])
        return c.length == g.n and all((b & ~a).bit_count() == 1 for a, b in steps)

    chains, bad = _each_chain(corpus, check)
    detail = f"geometries={len(corpus.geometries)}, chains={chains}, bad={bad}"
    return CriterionResult(4, "maximal chain length", bad == 0, detail)


def h_bijection(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    def check(g, c) -> bool:
        images = h_map(c, g).assignment
        if sorted(images, key=int.bit_count) != list(c.masks[1:]):
            return False
        pos = {m: i for i, m in enumerate(c.masks)}
        return all(h == c.masks[pos[h] - 1] | 1 << x for x, h in enumerate(images))

    chains, bad = _each_chain(corpus, check)
    detail = f"chains={chains}, bad={bad}"
    return CriterionResult(5, "element map bijection", bad == 0, detail)


def ej_roundtrip(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    limit = min(5, cfg.max_n)
    checked = bad = 0
    for g in corpus.geometries:
        if g.n > limit:
            continue
        for mode in ("all", "witness-per-set"):
            checked += 1
            try:
                d = ej_decompose(g, mode)
                if reconstruct(d).system.family != g.system.family:
                    bad += 1
            except ConsistencyError:
                bad += 1
    detail = f"n<={limit}, decompositions={checked}, bad={bad}"
    return CriterionResult(6, "decomposition round trip", bad == 0, detail)


def compatibility_lemmas(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    orders_checked = chains_checked = bad = 0
    for g in corpus.geometries:
        orders = compatible_orders(g)
        chains = maximal_chains(g.system)
        try:
            for o in orders:
                orders_checked += 1
                c = chain_of_order(o)
                if not is_maximal_chain(c, g.system) or order_from_chain(c, g) != o:
                    bad += 1
            for c in chains:
                chains_checked += 1
                o = order_from_chain(c, g)
                if not is_compatible(o, g.system) or chain_of_order(o) != c:
                    bad += 1
            if sorted(order_from_chain(c, g) for c in chains) != orders:
                bad += 1
        except ConsistencyError:
            bad += 1
    detail = f"orders={orders_checked}, chains={chains_checked}, bad={bad}"
    return CriterionResult(7, "compatibility lemmas", bad == 0, detail)


def minimal_covers(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    cases = [(f"intervals n={n}", interval_system(GroundSet.of_size(n)), 2) for n in range(2, 7)]
    cases.append(("Pow n=2", ClosureSystem.powerset(GroundSet.of_size(2)), 2))
    cases.append(("Pow n=3", ClosureSystem.powerset(GroundSet.of_size(3)), 3))
    parts = []
    ok = True
    for name, system, expected in cases:
        g = recognize(system).geometry
        size = len(min_order_cover(g, "exact")) if g is not None else -1
        ok &= size == expected
        parts.append(f"{name}={size}")
    return CriterionResult(8, "minimal order covers", ok, ", ".join(parts))


def structure(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    bad = 0
    for g in corpus.geometries:
        try:
            if not (check_standard(g) and check_spatial(g.system) and check_jirr_singletons(g)):
                bad += 1
        except ConsistencyError:
            bad += 1
    detail = f"geometries={len(corpus.geometries)}, bad={bad}"
    return CriterionResult(9, "standard, spatial, join-irreducible points", bad == 0, detail)


def symbolic_counterexample(cfg: BatteryConfig, corpus: Corpus) -> CriterionResult:
    std = sym_standardness_witness()
    fin = sym_nonalgebraic_witness()
    std_ok = std.point_closure == WHOLE and std.punctured == NATURALS and std.punctured_closure == WHOLE
    fin_ok = fin.subset == NATURALS and fin.closure == WHOLE and fin.finite_union == NATURALS and fin.gap == (POINT,)
    try:
        report = sym_check_aep(cfg.sym_trials, cfg.seed)
        violations = report.violations
    except ConsistencyError:
        violations = 1
    detail = (
        f"standardness phi(x)={std.point_closure} minus x={std.punctured} -> {std.punctured_closure}; "
        f"finitary phi(N)={fin.closure} vs union={fin.finite_union}; "
        f"aep trials={cfg.sym_trials} violations={violations}"
    )
    return CriterionResult(10, "symbolic counterexample", std_ok and fin_ok and violations == 0, detail)


CRITERIA: tuple[Callable[[BatteryConfig, Corpus], CriterionResult], ...] = (
    characterization_equivalence,
    meet_counterexample,
    join_preservation,
    chain_length,
    h_bijection,
    ej_roundtrip,
    compatibility_lemmas,
    minimal_covers,
    structure,
    symbolic_counterexample,
)


def run_battery(cfg: BatteryConfig = BatteryConfig()) -> list[CriterionResult]:
    corpus = Corpus()
    return [criterion(cfg, corpus) for criterion in CRITERIA]


def render(cfg: BatteryConfig, results: list[CriterionResult]) -> str:
    head = f"verify max_n={cfg.max_n} seed={cfg.seed}"
    passed = sum(r.ok for r in results)
    tail = f"{passed}/{len(results)} criteria passed"
    return "\n".join([head, *(r.line() for r in results), tail]) + "\n"
