"""Line-oriented textual exchange format.

One object per document.  Grammar::

    document := { line }
    line     := blank | '#' comment | key ':' value
    value    := atom | '[' [ value { ',' value } ] ']'
                     | '{' [ key ':' value { ',' key ':' value } ] '}'
    key      := [a-z_]+
    atom     := [A-Za-z0-9_.+-]+

Keys may not repeat.  Which object a document holds is decided by its keys:

    ground + closed            closure system
    ground + order             total order (``ground`` optional)
    ground + chain             chain of subsets
    ground + chains            list of chains
    ground + orders            list of total orders
    ground + set               one subset
    ground + closed + orders   decomposition (``verified`` flag)
    ok [+ witness] [+ characterizations]   verdict report

A document whose first non-blank character is ``{`` is read as JSON with the
same keys, which is what ``--format json-like`` emits.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from .chains import Chain
from .core import ClosureSystem, GroundSet, SetFamily, Subset, TotalOrder
from .decomp import Decomposition
from .errors import ConvGeomError
from .geometry import AepWitness, ConvexGeometry, Recognition, recognize

ATOM = re.compile(r"[A-Za-z0-9_.+\-]+")
KEY = re.compile(r"[a-z_]+")
_TOKEN = re.compile(r"\s*(?:(?P<atom>[A-Za-z0-9_.+\-]+)|(?P<punct>[\[\]{},:])|(?P<bad>\S))")


class ParseError(ConvGeomError, ValueError):
    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        self.line = line
        self.token = token
        where = f"line {line}: " if line is not None else ""
        at = f" at token {token!r}" if token is not None else ""
        super().__init__(f"{where}{message}{at}")


@dataclass(frozen=True)
class Report:
    """A verdict as exchanged on the wire."""

    ok: bool
    witness: Any = None
    characterizations: dict[str, bool] = field(default_factory=dict)


# ---------------------------------------------------------------- lexing --


def _tokens(text: str, lineno: int) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise ParseError("unexpected character", lineno, m.group("bad"))
        out.append(m.group("atom") or m.group("punct"))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[str], lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.lineno)
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}", self.lineno, got)

    def value(self) -> Any:
        tok = self.take()
        if tok == "[":
            items: list[Any] = []
            if self.peek() == "]":
                self.take()
                return items
            while True:
                items.append(self.value())
                sep = self.take()
                if sep == "]":
                    return items
                if sep != ",":
                    raise ParseError("expected ',' or ']'", self.lineno, sep)
        if tok == "{":
            entries: dict[str, Any] = {}
            if self.peek() == "}":
                self.take()
                return entries
            while True:
                key = self.take()
                if not KEY.fullmatch(key):
                    raise ParseError("bad key", self.lineno, key)
                if key in entries:
                    raise ParseError("duplicate key", self.lineno, key)
                self.expect(":")
                entries[key] = self.value()
                sep = self.take()
                if sep == "}":
                    return entries
                if sep != ",":
                    raise ParseError("expected ',' or '}'", self.lineno, sep)
        if ATOM.fullmatch(tok):
            return tok
        raise ParseError("unexpected token", self.lineno, tok)


class Document(dict):
    """Parsed key → value mapping that remembers the line of each key."""

    def __init__(self, *args: Any, **kwargs: Any):
        super().__init__(*args, **kwargs)
        self.lines: dict[str, int] = {}


def parse_document(text: str) -> Document:
    """Parse text into a key → value mapping of atoms, lists and maps."""
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from None
        if not isinstance(raw, dict):
            raise ParseError("JSON document must be an object", 1)
        doc = Document(raw)
        doc.lines = {k: 1 for k in raw}
        return doc
    doc = Document()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cur = _Cursor(_tokens(line, lineno), lineno)
        key = cur.take()
        if not KEY.fullmatch(key):
            raise ParseError("bad key", lineno, key)
        if key in doc:
            raise ParseError("duplicate key", lineno, key)
        cur.expect(":")
        doc[key] = cur.value()
        doc.lines[key] = lineno
        if cur.peek() is not None:
            raise ParseError("trailing input", lineno, cur.peek())
    return doc


# --------------------------------------------------------------- writing --


def _atom(label: str) -> str:
    if not ATOM.fullmatch(label):
        raise ValueError(f"label {label!r} cannot be written in the text format")
    return label


def render_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return _atom(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {render_value(v)}" for k, v in value.items()) + "}"
    return "[" + ", ".join(render_value(v) for v in value) + "]"


def render_document(doc: dict[str, Any], fmt: str = "text") -> str:
    if fmt == "json-like":
        return json.dumps(_jsonable(doc), indent=None) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return "".join(f"{k}: {render_value(v)}\n" for k, v in doc.items())


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _subset_doc(s: Subset) -> list[str]:
    return list(s.labels())


def _witness_doc(w: Any) -> Any:
    if w is None:
        return None
    if isinstance(w, AepWitness):
        labels = w.a.ground.labels
        return [_subset_doc(w.a), labels[w.x], labels[w.y]]
    if isinstance(w, Subset):
        return _subset_doc(w)
    if isinstance(w, tuple):
        return [_witness_doc(v) for v in w]
    return str(w)


def report_of(result: Recognition) -> Report:
    witness = None
    if not result.ok:
        witness = _witness_doc(result.aep.witness)
    return Report(
        ok=result.ok,
        witness=witness,
        characterizations={
            "aep": result.aep.ok,
            "accessibility": result.accessibility.ok,
            "cover": result.cover.ok,
        },
    )


def to_document(obj: Any) -> dict[str, Any]:
    if isinstance(obj, ConvexGeometry):
        obj = obj.system
    if isinstance(obj, ClosureSystem):
        return {
            "ground": list(obj.ground.labels),
            "closed": [_subset_doc(s) for s in obj.family],
        }
    if isinstance(obj, TotalOrder):
        return {"ground": list(obj.ground.labels), "order": list(obj.labels())}
    if isinstance(obj, Subset):
        return {"ground": list(obj.ground.labels), "set": _subset_doc(obj)}
    if isinstance(obj, Chain):
        return {"ground": list(obj.ground.labels), "chain": [_subset_doc(s) for s in obj.sets]}
    if isinstance(obj, list) and obj and all(isinstance(c, Chain) for c in obj):
        return {
            "ground": list(obj[0].ground.labels),
            "chains": [[_subset_doc(s) for s in c.sets] for c in obj],
        }
    if isinstance(obj, list) and obj and all(isinstance(o, TotalOrder) for o in obj):
        return {"ground": list(obj[0].ground.labels), "orders": [list(o.labels()) for o in obj]}
    if isinstance(obj, Decomposition):
        doc = to_document(obj.source.system)
        doc["orders"] = [list(o.labels()) for o in obj.orders]
        doc["verified"] = obj.verified
        return doc
    if isinstance(obj, Recognition):
        obj = report_of(obj)
    if isinstance(obj, Report):
        doc = {"ok": obj.ok}
        if obj.witness is not None:
            doc["witness"] = obj.witness
        if obj.characterizations:
            doc["characterizations"] = dict(obj.characterizations)
        return doc
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, fmt: str = "text") -> str:
    return render_document(to_document(obj), fmt)


# --------------------------------------------------------------- reading --


class _Reader:
    """Turns a parsed document into an object, citing the offending line."""

    def __init__(self, doc: dict[str, Any]):
        self.doc = doc
        self.lines = getattr(doc, "lines", {})

    def fail(self, key: str, message: str, token: Any = None) -> ParseError:
        return ParseError(message, self.lines.get(key), None if token is None else str(token))

    def labels(self, key: str, value: Any) -> list[str]:
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise self.fail(key, f"{key} must be a list of labels", value)
        return value

    def ground(self) -> GroundSet:
        labels = self.labels("ground", self.doc["ground"])
        seen = set()
        for lab in labels:
            if lab in seen:
                raise self.fail("ground", "duplicate label", lab)
            seen.add(lab)
        if not labels:
            raise self.fail("ground", "ground set is empty")
        return GroundSet(tuple(labels))

    def subset(self, key: str, ground: GroundSet, value: Any) -> Subset:
        labels = self.labels(key, value)
        seen = set()
        for lab in labels:
            if lab not in ground.labels:
                raise self.fail(key, "unknown label", lab)
            if lab in seen:
                raise self.fail(key, "duplicate label", lab)
            seen.add(lab)
        return ground.subset(labels)

    def sets(self, key: str, ground: GroundSet, value: Any) -> list[Subset]:
        if not isinstance(value, list):
            raise self.fail(key, f"{key} must be a list of sets", value)
        return [self.subset(key, ground, v) for v in value]

    def order(self, key: str, ground: GroundSet, value: Any) -> TotalOrder:
        labels = self.labels(key, value)
        seen = set()
        for lab in labels:
            if lab not in ground.labels:
                raise self.fail(key, "unknown label", lab)
            if lab in seen:
                raise self.fail(key, "duplicate label", lab)
            seen.add(lab)
        if len(labels) != ground.n:
            raise self.fail(key, "order must list every label exactly once", value)
        return TotalOrder.from_labels(ground, labels)

    def flag(self, key: str, value: Any) -> bool:
        if value in ("true", True):
            return True
        if value in ("false", False):
            return False
        raise self.fail(key, f"{key} must be true or false", value)

    def system(self, ground: GroundSet) -> ClosureSystem:
        sets = self.sets("closed", ground, self.doc["closed"])
        seen = set()
        for s in sets:
            if s.bits in seen:
                raise self.fail("closed", "duplicate set", s)
            seen.add(s.bits)
        try:
            return ClosureSystem(SetFamily.of(ground, sets))
        except ValueError as exc:
            raise self.fail("closed", str(exc)) from None

    def chain(self, key: str, ground: GroundSet, value: Any) -> Chain:
        sets = self.sets(key, ground, value)
        try:
            return Chain(ground, tuple(s.bits for s in sets))
        except ValueError as exc:
            raise self.fail(key, str(exc)) from None


_SHAPES = (
    ({"ground", "closed", "orders", "verified"}, "decomposition"),
    ({"ground", "closed"}, "system"),
    ({"ground", "order"}, "order"),
    ({"ground", "chain"}, "chain"),
    ({"ground", "chains"}, "chains"),
    ({"ground", "orders"}, "orders"),
    ({"ground", "set"}, "set"),
)


def from_document(doc: dict[str, Any]) -> Any:
    r = _Reader(doc)
    keys = set(doc)
    if "ok" in keys:
        unknown = keys - {"ok", "witness", "characterizations"}
        if unknown:
            key = sorted(unknown)[0]
            raise r.fail(key, "unknown key", key)
        chars = doc.get("characterizations", {})
        if not isinstance(chars, dict):
            raise r.fail("characterizations", "characterizations must be a map", chars)
        return Report(
            ok=r.flag("ok", doc["ok"]),
            witness=doc.get("witness"),
            characterizations={k: r.flag("characterizations", v) for k, v in chars.items()},
        )
    if "order" in keys and "ground" not in keys:
        r.doc = {"ground": doc["order"], **doc}
        r.lines.setdefault("ground", r.lines.get("order"))
        keys.add("ground")
    if "ground" not in keys:
        raise ParseError("missing key 'ground'")
    for shape, kind in _SHAPES:
        if keys == shape:
            break
    else:
        extra = sorted(keys - set().union(*(s for s, _ in _SHAPES)))
        if extra:
            raise r.fail(extra[0], "unknown key", extra[0])
        raise ParseError(f"unrecognized combination of keys {sorted(keys)}")
    ground = r.ground()
    doc = r.doc
    if kind == "system":
        return r.system(ground)
    if kind == "order":
        return r.order("order", ground, doc["order"])
    if kind == "chain":
        return r.chain("chain", ground, doc["chain"])
    if kind == "chains":
        if not isinstance(doc["chains"], list):
            raise r.fail("chains", "chains must be a list", doc["chains"])
        return [r.chain("chains", ground, c) for c in doc["chains"]]
    if kind == "set":
        return r.subset("set", ground, doc["set"])
    if not isinstance(doc["orders"], list):
        raise r.fail("orders", "orders must be a list", doc["orders"])
    if kind == "orders":
        return [r.order("orders", ground, o) for o in doc["orders"]]
    system = r.system(ground)
    orders = tuple(r.order("orders", ground, o) for o in doc["orders"])
    geometry = recognize(system).geometry if system.zero_closed else None
    if geometry is None:
        raise r.fail("closed", "decomposition source is not a convex geometry")
    return Decomposition(orders, geometry, verified=r.flag("verified", doc["verified"]))


def loads(text: str) -> Any:
    return from_document(parse_document(text))


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
