"""Acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.  Criteria 4-7 and 9 share the corpus gathered by 1 and 3.
"""

from __future__ import annotations

import io

import pytest

from convgeom import cli, verify
from convgeom.verify import BatteryConfig, Corpus

CFG = BatteryConfig(max_n=6, seed=0, samples=10_000, joins=1_000, max_k=5, sym_trials=10_000)


@pytest.fixture(scope="module")
def corpus() -> Corpus:
    c = Corpus()
    # populate exactly as the battery does; the results are asserted in their own tests
    verify.characterization_equivalence(CFG, c)
    verify.join_preservation(CFG, c)
    return c


def report(result: verify.CriterionResult) -> None:
    print(result.line())
    assert result.ok, result.line()


def test_01_characterization_equivalence():
    r = verify.characterization_equivalence(CFG, Corpus())
    report(r)
    assert "samples=10000" in r.detail and "disagreements=0" in r.detail


def test_02_meet_counterexample():
    report(verify.meet_counterexample(CFG, Corpus()))


def test_03_join_preservation():
    r = verify.join_preservation(CFG, Corpus())
    report(r)
    assert "lists=1000" in r.detail and "failures=0" in r.detail


def test_04_chain_length(corpus):
    report(verify.chain_length(CFG, corpus))


def test_05_h_bijection(corpus):
    report(verify.h_bijection(CFG, corpus))


def test_06_ej_roundtrip(corpus):
    report(verify.ej_roundtrip(CFG, corpus))


def test_07_compatibility_lemmas(corpus):
    report(verify.compatibility_lemmas(CFG, corpus))


def test_08_minimal_covers(corpus):
    r = verify.minimal_covers(CFG, corpus)
    report(r)
    assert r.detail == (
        "intervals n=2=2, intervals n=3=2, intervals n=4=2, intervals n=5=2, "
        "intervals n=6=2, Pow n=2=2, Pow n=3=3"
    )


def test_09_structure(corpus):
    report(verify.structure(CFG, corpus))


def test_10_symbolic_counterexample():
    r = verify.symbolic_counterexample(CFG, Corpus())
    report(r)
    assert "trials=10000 violations=0" in r.detail


def _verify_output(*extra: str) -> tuple[int, str]:
    out = io.StringIO()
    code = cli.run(["verify", "--seed", "0", *extra], stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def test_11_determinism():
    first, second = _verify_output(), _verify_output()
    ok = first == second and first[0] == 0
    print(f"[{'PASS' if ok else 'FAIL'}] 11 determinism: two verify runs byte-identical={first == second}")
    assert ok
    assert first[1].rstrip().endswith("10/10 criteria passed")


def test_verify_small_exits_zero():
    code, text = _verify_output("--max-n", "4")
    assert code == 0 and text.startswith("verify max_n=4 seed=0\n")
