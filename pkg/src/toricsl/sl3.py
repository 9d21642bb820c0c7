"""SL_3 x Q modules with an open orbit, and verification of their weight table.

A module is a direct sum of trivial summands (dimension 1) and copies of
the standard representation K^n or its dual, each carrying a character of
the quasitorus Q.  The shipped table (``data/sl3_table.json``) lists one
choice of weights for every module shape in the n = 3 classification;
:func:`verify_all_cases` checks each of them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .condstar import (
    WeightCollection,
    check_condition_star,
    free_configuration,
    has_open_quasitorus_orbit,
)
from .lattice import FgAbelianGroup, GroupElement
from .linalg import rank

TRIVIAL, STANDARD, DUAL = "trivial", "standard", "dual"
TAGS = (TRIVIAL, STANDARD, DUAL)


class UnsupportedCase(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    tag: str
    weight: GroupElement

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError("unknown summand tag %r" % self.tag)


@dataclass(frozen=True)
class Shape:
    case: int  # 1, 2, 3 as in the n = 3 list; 2 also covers n standard copies for n != 3
    l: int
    r: int
    conjugate: bool = False


def classify(n: int, summands: Sequence[Summand]) -> Shape:
    s = sum(1 for x in summands if x.tag == STANDARD)
    du = sum(1 for x in summands if x.tag == DUAL)
    r = sum(1 for x in summands if x.tag == TRIVIAL)
    if n == 3:
        if du == 0 and s <= 2:
            return Shape(1, s, r)
        if s == 0 and du <= 2:
            return Shape(1, du, r, True)
        if du == 0 and s == 3:
            return Shape(2, 3, r)
        if s == 0 and du == 3:
            return Shape(2, 3, r, True)
        if du == 1 and s in (1, 2):
            return Shape(3, s + 1, r)
        if s == 1 and du == 2:
            return Shape(3, 3, r, True)
    elif n >= 2:
        if du == 0 and s == n:
            return Shape(2, n, r)
        if s == 0 and du == n:
            return Shape(2, n, r, True)
    raise UnsupportedCase(
        "no supported module shape for n=%d with %d standard, %d dual, %d trivial summands"
        % (n, s, du, r)
    )


@dataclass(frozen=True)
class ModuleSpec:
    n: int
    group: FgAbelianGroup
    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        for x in self.summands:
            self.group.check(x.weight)
        classify(self.n, self.summands)

    @property
    def shape(self) -> Shape:
        return classify(self.n, self.summands)

    @property
    def dimension(self) -> int:
        return sum(1 if x.tag == TRIVIAL else self.n for x in self.summands)


def coordinate_weights(spec: ModuleSpec) -> WeightCollection:
    return WeightCollection(
        spec.group,
        [(x.weight, 1 if x.tag == TRIVIAL else spec.n) for x in spec.summands],
    )


def theta_weights(spec: ModuleSpec, pairing: str = "difference") -> list:
    """Weights of the generating invariants that Q must move with an open orbit.

    Case 1: the trivial summands.  Case 2: the determinant, whose weight is
    the sum of the standard-summand weights, then the trivial summands.
    Case 3: the trivial summands, then one pairing per standard copy.  With
    ``pairing="difference"`` the pairing of ``v_i`` with the dual summand of
    weight ``v*`` has weight ``v_i - v*`` (Q acting on the dual summand by the
    inverse character); ``pairing="sum"`` uses ``v_i + v*``.
    """
    if pairing not in ("difference", "sum"):
        raise ValueError("pairing must be 'difference' or 'sum'")
    g = spec.group
    shape = spec.shape
    trivial = [x.weight for x in spec.summands if x.tag == TRIVIAL]
    if shape.case == 1:
        return trivial
    main, other = (DUAL, STANDARD) if shape.conjugate else (STANDARD, DUAL)
    copies = [x.weight for x in spec.summands if x.tag == main]
    if shape.case == 2:
        return [g.add(*copies)] + trivial
    star = next(x.weight for x in spec.summands if x.tag == other)
    if pairing == "difference":
        pairs = [g.add(v, g.neg(star)) for v in copies]
    else:
        pairs = [g.add(v, star) for v in copies]
    return trivial + pairs


# ---------------------------------------------------------------------------
# The weight table


@dataclass(frozen=True)
class TableRow:
    label: str
    case: int
    dim_q: int
    r_values: tuple
    v: tuple
    v_tags: tuple
    w: tuple

    def spec(self, r: int) -> ModuleSpec:
        if r not in self.r_values:
            raise UnsupportedCase("row %s has no variant r=%d" % (self.label, r))
        if r > len(self.w):
            raise ValueError("row %s lists fewer than %d trivial weights" % (self.label, r))
        rank_ = len(self.v[0]) if self.v else len(self.w[0]) if self.w else self.dim_q
        group = FgAbelianGroup.free(rank_)
        summands = [Summand(t, group.element(x)) for t, x in zip(self.v_tags, self.v)]
        summands += [Summand(TRIVIAL, group.element(x)) for x in self.w[:r]]
        return ModuleSpec(3, group, summands)


def _row_from_json(obj: dict) -> TableRow:
    try:
        row = TableRow(
            label=str(obj["label"]),
            case=int(obj["case"]),
            dim_q=int(obj["dim_q"]),
            r_values=tuple(int(r) for r in obj["r_values"]),
            v=tuple(tuple(int(c) for c in x) for x in obj["v"]),
            v_tags=tuple(obj["v_tags"]),
            w=tuple(tuple(int(c) for c in x) for x in obj["w"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("malformed table row %r: %s" % (obj.get("label"), exc)) from exc
    if len(row.v) != len(row.v_tags):
        raise ValueError("row %s: v and v_tags differ in length" % row.label)
    return row


def load_table(path: Optional[str | Path] = None) -> list:
    if path is None:
        text = resources.files("toricsl").joinpath("data/sl3_table.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    doc = json.loads(text)
    return [_row_from_json(r) for r in doc["rows"]]


_LABEL = re.compile(r"^\s*(\d)\s*(?:([a-e])|,?\s*l\s*=?\s*([23]))?\s*(?:,\s*r\s*=\s*(\d+))?\s*$")


def parse_case_label(label: str) -> tuple:
    """``"2b,r=1"`` -> ``("2b", 1)``; ``"3,l=2"`` -> ``("3l2", None)``."""
    m = _LABEL.match(label)
    if not m:
        raise ValueError("bad case label %r" % label)
    num, letter, l, r = m.groups()
    row = num + (letter or ("l" + l if l else ""))
    return row, (int(r) if r is not None else None)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CaseReport:
    label: str
    r: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


@dataclass(frozen=True)
class RowReport:
    label: str
    variants: tuple

    @property
    def passed(self) -> bool:
        return bool(self.variants) and all(v.passed for v in self.variants)


@dataclass(frozen=True)
class TableReport:
    rows: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def npassed(self) -> int:
        return sum(r.passed for r in self.rows)


def classification_constraints(case: int, l: int, r: int, d: int) -> list:
    """Inequalities every module in the list satisfies, as (text, holds) pairs."""
    out = []
    if case == 1:
        out.append(("r <= d", r <= d))
    elif case == 2:
        out.append(("d >= r+1", d >= r + 1))
    else:
        out.append(("d >= r+(l-1)", d >= r + l - 1))
    if d >= 1 and l >= d:
        out.append(("l + r/2 >= d+1", 2 * l + r >= 2 * d + 2))
    return out


def verify_spec(spec: ModuleSpec, dim_q: int, label: str = "", r: Optional[int] = None,
                pairing: str = "difference") -> CaseReport:
    shape = spec.shape
    r = shape.r if r is None else r
    coll = coordinate_weights(spec)
    star = check_condition_star(coll)
    theta = theta_weights(spec, pairing)
    orbit = has_open_quasitorus_orbit(spec.group, theta)
    cfg = free_configuration(coll)
    span = rank(cfg.matrix()) if len(cfg) else 0
    d = spec.group.free_rank
    rank_ok = d == dim_q and span == dim_q
    cons = classification_constraints(shape.case, shape.l, r, d)
    checks = (
        Check("condition_star", star.holds, star.reason or "holds"),
        Check("open_orbit", orbit, "theta weights " + " ".join(str(t) for t in theta) if theta else "theta empty"),
        Check("dim_q", rank_ok, "free rank %d, weight span %d, expected %d" % (d, span, dim_q)),
        Check("constraints", all(ok for _, ok in cons), ", ".join(t + (" ok" if ok else " FAILS") for t, ok in cons)),
    )
    return CaseReport(label, r, checks)


def verify_case(label: str, table: Optional[Sequence[TableRow]] = None,
                pairing: str = "difference") -> CaseReport:
    """Verify one variant, e.g. ``"2c"`` or ``"2b,r=1"``.

    A row with several ``r`` values needs the ``r`` spelled out; use
    :func:`verify_row` to check all of them.
    """
    name, r = parse_case_label(label)
    row = _find_row(name, table)
    if r is None:
        if len(row.r_values) != 1:
            raise UnsupportedCase("row %s needs r in %s" % (name, list(row.r_values)))
        r = row.r_values[0]
    return verify_spec(row.spec(r), row.dim_q, _variant_label(row, r), r, pairing)


def verify_row(row: TableRow, pairing: str = "difference") -> RowReport:
    return RowReport(
        row.label,
        tuple(verify_spec(row.spec(r), row.dim_q, _variant_label(row, r), r, pairing) for r in row.r_values),
    )


def verify_all_cases(table: Optional[Sequence[TableRow]] = None, pairing: str = "difference") -> TableReport:
    table = load_table() if table is None else table
    return TableReport(tuple(verify_row(row, pairing) for row in table))


def _variant_label(row: TableRow, r: int) -> str:
    return row.label if len(row.r_values) == 1 else "%s,r=%d" % (row.label, r)


def _find_row(name: str, table) -> TableRow:
    table = load_table() if table is None else table
    for row in table:
        if row.label == name:
            return row
    raise UnsupportedCase("no table row %r" % name)
