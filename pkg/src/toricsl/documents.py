"""JSON documents exchanged by the command line tools.

Rationals are written as ``"p/q"`` (or ``"p"``) strings; floats are
rejected.  Parse failures raise :class:`DocumentError` carrying the JSON
path and, where it can be found, the line and column of the offending
value.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional

from .condstar import WeightCollection
from .gale import PointConfig, VectorConfig
from .lattice import FgAbelianGroup, canonical_group

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_decoder = json.JSONDecoder()


class DocumentError(ValueError):
    def __init__(self, message: str, path: tuple = (), line: Optional[int] = None,
                 column: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        return {
            "error": "parse",
            "message": self.message,
            "path": _path_str(self.path),
            "line": self.line,
            "column": self.column,
        }

    def __str__(self):
        where = ""
        if self.line is not None:
            where = " (line %d, column %d)" % (self.line, self.column)
        return "%s: %s%s" % (_path_str(self.path) or "document", self.message, where)


def _path_str(path) -> str:
    out = ""
    for p in path:
        out += "[%d]" % p if isinstance(p, int) else ("." if out else "") + str(p)
    return out


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def locate(text: str, path) -> Optional[tuple]:
    """Line and column (1-based) where the value at ``path`` starts."""
    i = _skip_ws(text, 0)
    try:
        for key in path:
            if text[i] == "[" and isinstance(key, int):
                i = _skip_ws(text, i + 1)
                for _ in range(key):
                    _, i = _decoder.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    if text[i] != ",":
                        return None
                    i = _skip_ws(text, i + 1)
            elif text[i] == "{" and isinstance(key, str):
                i = _skip_ws(text, i + 1)
                while True:
                    k, i = _decoder.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    i = _skip_ws(text, i + 1)  # ':'
                    if k == key:
                        break
                    _, i = _decoder.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    if text[i] != ",":
                        return None
                    i = _skip_ws(text, i + 1)
            else:
                return None
    except (IndexError, ValueError):
        return None
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, text: str):
        self.text = text
        try:
            self.doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError("invalid JSON: %s" % exc.msg, (), exc.lineno, exc.colno) from None

    def fail(self, message: str, path) -> DocumentError:
        loc = locate(self.text, path) or (None, None)
        return DocumentError(message, path, *loc)

    def get(self, obj: Any, key: str, path: tuple, required: bool = True):
        if not isinstance(obj, dict):
            raise self.fail("expected an object", path)
        if key not in obj:
            if required:
                raise self.fail("missing key %r" % key, path)
            return None
        return obj[key]

    def int_(self, value: Any, path: tuple, minimum: Optional[int] = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail("expected an integer, got %r" % (value,), path)
        if minimum is not None and value < minimum:
            raise self.fail("expected an integer >= %d, got %d" % (minimum, value), path)
        return value

    def list_(self, value: Any, path: tuple) -> list:
        if not isinstance(value, list):
            raise self.fail("expected a list", path)
        return value

    def rational(self, value: Any, path: tuple) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            raise self.fail("floating point numbers are not allowed; write \"p/q\"", path)
        if isinstance(value, int):
            return Fraction(value)
        if not isinstance(value, str) or not _RATIONAL.match(value.strip()):
            raise self.fail("expected a rational \"p/q\", got %r" % (value,), path)
        num, _, den = value.strip().partition("/")
        if den and int(den) == 0:
            raise self.fail("zero denominator in %r" % value, path)
        return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _format(obj, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ["%s%s: %s" % (inner, json.dumps(k), _format(v, indent + 2)) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _format(x, indent + 2) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    """Deterministic JSON: two-space indent, scalar lists kept on one line."""
    return _format(obj, 0) + "\n"


# ---------------------------------------------------------------------------
# point / vector configurations


def parse_config(text: str):
    r = _Reader(text)
    doc = r.doc
    kind = r.get(doc, "kind", ())
    if kind not in ("points", "vectors"):
        raise r.fail("kind must be \"points\" or \"vectors\"", ("kind",))
    dim = r.int_(r.get(doc, "dim", ()), ("dim",), 0)
    rows = r.list_(r.get(doc, "rows", ()), ("rows",))
    out = []
    for i, row in enumerate(rows):
        row = r.list_(row, ("rows", i))
        if len(row) != dim:
            raise r.fail("expected %d coordinates, got %d" % (dim, len(row)), ("rows", i))
        out.append(tuple(r.rational(x, ("rows", i, j)) for j, x in enumerate(row)))
    return PointConfig(out, dim) if kind == "points" else VectorConfig(out, dim)


def config_to_dict(cfg) -> dict:
    kind = "points" if isinstance(cfg, PointConfig) else "vectors"
    return {
        "kind": kind,
        "dim": cfg.dim,
        "rows": [[format_rational(x) for x in v] for v in cfg],
    }


def serialize_config(cfg) -> str:
    return dumps(config_to_dict(cfg))


# ---------------------------------------------------------------------------
# weight systems


def element_to_dict(e) -> dict:
    return {"free": list(e.free), "torsion": list(e.torsion)}


def weight_system_to_dict(coll: WeightCollection, module: Optional[dict] = None) -> dict:
    doc = {
        "group": {"free_rank": coll.group.free_rank, "torsion": list(coll.group.torsion)},
        "weights": [dict(element_to_dict(e), mult=m) for e, m in coll.weights],
    }
    if module is not None:
        doc["module"] = module
    return doc


def serialize_weight_system(coll: WeightCollection, module: Optional[dict] = None) -> str:
    return dumps(weight_system_to_dict(coll, module))


def parse_weight_system(text: str) -> tuple:
    """Return ``(WeightCollection, module)``; torsion lists that are not an
    invariant-factor chain are canonicalized and the residues mapped along."""
    r = _Reader(text)
    doc = r.doc
    g = r.get(doc, "group", ())
    d = r.int_(r.get(g, "free_rank", ("group",)), ("group", "free_rank"), 0)
    tors = r.list_(r.get(g, "torsion", ("group",), required=False) or [], ("group", "torsion"))
    tors = [r.int_(q, ("group", "torsion", i), 1) for i, q in enumerate(tors)]
    group, convert = canonical_group(d, tors)
    weights = []
    for i, w in enumerate(r.list_(r.get(doc, "weights", ()), ("weights",))):
        p = ("weights", i)
        free = r.list_(r.get(w, "free", p), p + ("free",))
        torsion = r.list_(r.get(w, "torsion", p, required=False) or [], p + ("torsion",))
        mult = r.get(w, "mult", p, required=False)
        mult = 1 if mult is None else r.int_(mult, p + ("mult",), 1)
        if len(free) != d:
            raise r.fail("expected %d free coordinates, got %d" % (d, len(free)), p + ("free",))
        if len(torsion) != len(tors):
            raise r.fail("expected %d torsion residues, got %d" % (len(tors), len(torsion)), p + ("torsion",))
        free = [r.int_(x, p + ("free", j)) for j, x in enumerate(free)]
        torsion = [r.int_(x, p + ("torsion", j)) for j, x in enumerate(torsion)]
        weights.append((convert(free, torsion), mult))
    module = r.get(doc, "module", (), required=False)
    if module is not None:
        _check_module(r, module)
    return WeightCollection(group, weights), module


def _check_module(r: _Reader, module) -> None:
    if not isinstance(module, dict):
        raise r.fail("module must be an object", ("module",))
    if "case" in module:
        if not isinstance(module["case"], str):
            raise r.fail("case must be a string label", ("module", "case"))
        return
    r.int_(r.get(module, "n", ("module",)), ("module", "n"), 2)
    tags = r.list_(r.get(module, "summands", ("module",)), ("module", "summands"))
    for i, t in enumerate(tags):
        if t not in ("trivial", "standard", "dual"):
            raise r.fail("unknown summand tag %r" % (t,), ("module", "summands", i))


# ---------------------------------------------------------------------------
# integer matrices


def parse_int_matrix(text: str) -> tuple:
    """Return ``(rows, ncols)``."""
    r = _Reader(text)
    doc = r.doc
    rows = r.list_(r.get(doc, "rows", ()), ("rows",))
    ncols = r.get(doc, "cols", (), required=False)
    if ncols is not None:
        ncols = r.int_(ncols, ("cols",), 0)
    elif rows:
        ncols = len(r.list_(rows[0], ("rows", 0)))
    else:
        ncols = 0
    out = []
    for i, row in enumerate(rows):
        row = r.list_(row, ("rows", i))
        if len(row) != ncols:
            raise r.fail("expected %d entries, got %d" % (ncols, len(row)), ("rows", i))
        out.append([r.int_(x, ("rows", i, j)) for j, x in enumerate(row)])
    return out, ncols
