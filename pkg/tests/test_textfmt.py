from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import closure_systems, ground, order_lists, system
from convgeom import textfmt
from convgeom.chains import maximal_chains
from convgeom.core import ClosureSystem, GroundSet
from convgeom.decomp import ej_decompose, random_geometry
from convgeom.geometry import recognize
from convgeom.textfmt import ParseError, dumps, loads


def test_system_document_layout():
    s = system(2, (), (1,), (1, 2))
    assert dumps(s) == "ground: [1, 2]\nclosed: [[], [1], [1, 2]]\n"


def test_parse_ignores_comments_and_spacing():
    text = "# a system\n\nground:[a,b]\n  closed: [ [ ], [a] ,[a,b]]  \n"
    s = loads(text)
    assert s == ClosureSystem.from_labels(GroundSet(("a", "b")), [[], ["a"], ["a", "b"]])


@settings(max_examples=60)
@given(closure_systems(max_n=5, zero=False))
def test_system_round_trip_is_byte_identical(s):
    text = dumps(s)
    assert loads(text) == s
    assert dumps(loads(text)) == text
    assert loads(dumps(s, "json-like")) == s


@given(order_lists(max_n=5, max_k=1))
def test_order_round_trip(orders):
    o = orders[0]
    text = dumps(o)
    assert loads(text) == o
    assert dumps(loads(text)) == text


def test_order_without_ground_uses_its_own_labels():
    o = loads("order: [b, a, c]")
    assert o.ground.labels == ("b", "a", "c") and o.labels() == ("b", "a", "c")


def test_chain_decomposition_report_round_trips():
    g = random_geometry(4, 3, 5)
    chains = maximal_chains(g.system)
    assert loads(dumps(chains)) == chains
    assert loads(dumps(chains[0])) == chains[0]
    d = ej_decompose(g)
    back = loads(dumps(d))
    assert back.orders == d.orders and back.verified and back.source.system == g.system
    assert loads(dumps(list(d.orders))) == list(d.orders)
    r = recognize(system(2, (), (1, 2)))
    report = loads(dumps(r))
    assert report == textfmt.report_of(r)
    assert report.witness == [[], "1", "2"]
    assert loads(dumps(r, "json-like")) == report
    subset = g.ground.subset(["1", "3"])
    assert loads(dumps(subset)) == subset


@pytest.mark.parametrize(
    "text, line, token",
    [
        ("ground: [1, 2]\nclosed: [[], [3], [1, 2]]\n", 2, "3"),
        ("ground: [1, 1]\nclosed: [[1]]\n", 1, "1"),
        ("ground: [1, 2]\nclosed: [[], [1, 1], [1, 2]]\n", 2, "1"),
        ("ground: [1, 2]\nground: [1, 2]\n", 2, "ground"),
        ("ground: [1, 2]\nclosed: [[], [1] [1, 2]]\n", 2, "["),
        ("ground: [1, 2]\nclosed: [[], [1], [1, 2]] extra\n", 2, "extra"),
        ("ground: [1, 2]\nclosed: [[], [1], [1, 2]]\nmystery: [1]\n", 3, "mystery"),
        ("ground: [1, 2]\nclosed: [[], [1], [1], [1, 2]]\n", 2, "{1}"),
        ("ground: [1, 2]\nclosed: [[], [1$], [1, 2]]\n", 2, "$"),
        ("ground: [1, 2]\norder: [1, 3]\n", 2, "3"),
    ],
)
def test_parse_errors_name_line_and_token(text, line, token):
    with pytest.raises(ParseError) as info:
        loads(text)
    assert info.value.line == line
    assert info.value.token == token


def test_semantic_errors():
    with pytest.raises(ParseError, match="full set missing"):
        loads("ground: [1, 2]\nclosed: [[], [1]]\n")
    with pytest.raises(ParseError, match="every label"):
        loads("ground: [1, 2]\norder: [1]\n")
    with pytest.raises(ParseError, match="missing key"):
        loads("closed: [[]]\n")


def test_unwritable_label():
    s = ClosureSystem.powerset(GroundSet(("a b",)))
    with pytest.raises(ValueError):
        dumps(s)
