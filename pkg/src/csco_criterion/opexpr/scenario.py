"""Subsystem layouts, full-space evaluation, and the scenario JSON format."""

import json
from dataclasses import dataclass, field, fields
from functools import reduce

import numpy as np

from ..errors import ContractError, DimensionError, InputError, ParseError
from ..numerics import DEFAULT_MAX_DIM, DEFAULT_TOL, TolerancePolicy, kron
from .parser import BinOp, Gen, Identity, ImagUnit, Neg, Num, Pow, parse_operator_expr
from .spin import ladder_operators, spin_generators, two_s_of


@dataclass(frozen=True)
class Subsystem:
    two_s: int
    kind: str = "spin"

    @property
    def s(self):
        return self.two_s / 2

    @property
    def dim(self):
        return self.two_s + 1


@dataclass(frozen=True)
class SubsystemLayout:
    subsystems: tuple
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if not self.subsystems:
            raise InputError("layout needs at least one subsystem")
        if self.total_dim < 2:
            raise InputError(f"total dimension {self.total_dim} is below 2")
        if self.total_dim > self.max_dim:
            raise DimensionError(f"total dimension {self.total_dim} exceeds max dim {self.max_dim}")

    @classmethod
    def of_spins(cls, *spins, max_dim=DEFAULT_MAX_DIM):
        return cls(tuple(Subsystem(two_s_of(s)) for s in spins), max_dim)

    @property
    def dims(self):
        return tuple(sub.dim for sub in self.subsystems)

    @property
    def total_dim(self):
        return int(np.prod(self.dims))


def _local_generator(name, two_s):
    s = two_s / 2
    if name in ("Sp", "Sm"):
        sp, sm = ladder_operators(s)
        return sp if name == "Sp" else sm
    sx, sy, sz = spin_generators(s)
    g = {"x": sx, "y": sy, "z": sz}[name[-1].lower()]
    return 2 * g if len(name) == 1 else g


def embed(local, index, layout):
    """I x ... x local x ... x I with ``local`` on 1-based subsystem ``index``."""
    factors = [np.eye(d, dtype=complex) for d in layout.dims]
    factors[index - 1] = local
    return reduce(lambda a, b: kron(a, b, layout.max_dim), factors)


def evaluate_expr(node, layout):
    """Evaluate an expression AST to a dense total_dim x total_dim matrix."""
    n = layout.total_dim
    if n > layout.max_dim:
        raise DimensionError(f"total dimension {n} exceeds max dim {layout.max_dim}")
    eye = np.eye(n, dtype=complex)
    cache = {}

    def ev(node):
        if isinstance(node, Num):
            return node.value * eye
        if isinstance(node, ImagUnit):
            return 1j * eye
        if isinstance(node, Identity):
            return eye.copy()
        if isinstance(node, Gen):
            key = (node.name, node.index)
            if key not in cache:
                sub = layout.subsystems[node.index - 1]
                if node.name in ("X", "Y", "Z") and sub.dim != 2:
                    raise InputError(f"Pauli alias {node.name} on subsystem {node.index} of dim {sub.dim}")
                cache[key] = embed(_local_generator(node.name, sub.two_s), node.index, layout)
            return cache[key]
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return np.linalg.matrix_power(ev(node.base), node.exponent)
        if isinstance(node, BinOp):
            left, right = ev(node.left), ev(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left @ right
        raise TypeError(f"not an expression node: {node!r}")

    return ev(node)


@dataclass(frozen=True)
class NamedExpr:
    name: str
    text: str
    expr: object


@dataclass(frozen=True)
class Scenario:
    name: str
    layout: SubsystemLayout
    a_set: tuple
    b_set: tuple
    expected_c: tuple = None
    bipartition: tuple = None
    tolerances: TolerancePolicy = field(default=DEFAULT_TOL)
    description: str = ""

    def a_operators(self):
        return [evaluate_expr(e.expr, self.layout) for e in self.a_set]

    def b_operators(self):
        return [evaluate_expr(e.expr, self.layout) for e in self.b_set]

    def to_dict(self):
        doc = {
            "name": self.name,
            "subsystems": [{"kind": sub.kind, "s": sub.s} for sub in self.layout.subsystems],
            "A": [{"name": e.name, "expr": e.text} for e in self.a_set],
            "B": [{"name": e.name, "expr": e.text} for e in self.b_set],
        }
        if self.expected_c is not None:
            doc["expected_C"] = [[text for text, _ in row] for row in self.expected_c]
        if self.bipartition is not None:
            doc["bipartition"] = [list(part) for part in self.bipartition]
        overrides = {
            f.name: getattr(self.tolerances, f.name)
            for f in fields(TolerancePolicy)
            if getattr(self.tolerances, f.name) != getattr(DEFAULT_TOL, f.name)
        }
        if overrides:
            doc["tolerances"] = overrides
        return doc


def _fail(where, message):
    return ParseError(message, where=where)


def _require(doc, key, kind, where):
    if key not in doc:
        raise _fail(where, f"missing required field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise _fail(f"{where}.{key}", f"expected {kind.__name__ if isinstance(kind, type) else 'a number'}")
    return value


def _parse_expr(text, layout, where):
    if not isinstance(text, str):
        raise _fail(where, "expression must be a string")
    try:
        return parse_operator_expr(text, layout)
    except ParseError as exc:
        raise exc.located(where) from None


def _observables(doc, key, layout):
    items = _require(doc, key, list, "$")
    if not items:
        raise _fail(f"$.{key}", "empty observable set")
    seen = set()
    out = []
    for k, item in enumerate(items):
        where = f"$.{key}[{k}]"
        if not isinstance(item, dict):
            raise _fail(where, "expected an object with 'name' and 'expr'")
        name = _require(item, "name", str, where)
        if name in seen:
            raise _fail(f"{where}.name", f"duplicate observable name {name!r}")
        seen.add(name)
        text = _require(item, "expr", str, where)
        out.append(NamedExpr(name, text, _parse_expr(text, layout, f"{where}.expr")))
    return tuple(out)


def _layout(doc, max_dim):
    subs = _require(doc, "subsystems", list, "$")
    if not subs:
        raise _fail("$.subsystems", "no subsystems declared")
    parsed = []
    for k, sub in enumerate(subs):
        where = f"$.subsystems[{k}]"
        if not isinstance(sub, dict):
            raise _fail(where, "expected an object")
        kind = sub.get("kind", "spin")
        if kind != "spin":
            raise _fail(f"{where}.kind", f"unsupported subsystem kind {kind!r}")
        s = _require(sub, "s", (int, float), where)
        try:
            parsed.append(Subsystem(two_s_of(s)))
        except InputError as exc:
            raise _fail(f"{where}.s", str(exc)) from None
    try:
        return SubsystemLayout(tuple(parsed), max_dim)
    except (InputError, DimensionError) as exc:
        raise _fail("$.subsystems", str(exc)) from None


def _bipartition(value, n):
    where = "$.bipartition"
    if not isinstance(value, list) or len(value) != 2:
        raise _fail(where, "expected two subsystem-index arrays")
    parts = []
    for k, part in enumerate(value):
        if not isinstance(part, list) or not part:
            raise _fail(f"{where}[{k}]", "expected a non-empty array of subsystem indices")
        for idx in part:
            if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= n:
                raise _fail(f"{where}[{k}]", f"subsystem index {idx!r} out of range 1..{n}")
        parts.append(tuple(part))
    flat = parts[0] + parts[1]
    if sorted(flat) != list(range(1, n + 1)):
        raise _fail(where, f"parts must be disjoint and cover subsystems 1..{n}")
    return tuple(parts)


def _tolerances(value, base):
    if not isinstance(value, dict):
        raise _fail("$.tolerances", "expected an object")
    try:
        return base.with_overrides(**value)
    except ContractError as exc:
        raise _fail("$.tolerances", str(exc)) from None


def scenario_from_dict(doc, max_dim=DEFAULT_MAX_DIM, description=""):
    if not isinstance(doc, dict):
        raise _fail("$", "scenario document must be a JSON object")
    name = _require(doc, "name", str, "$")
    layout = _layout(doc, max_dim)
    a_set = _observables(doc, "A", layout)
    b_set = _observables(doc, "B", layout)

    expected = None
    if doc.get("expected_C") is not None:
        grid = doc["expected_C"]
        if not isinstance(grid, list) or len(grid) != len(b_set):
            raise _fail("$.expected_C", f"expected {len(b_set)} rows (one per B observable)")
        rows = []
        for i, row in enumerate(grid):
            if not isinstance(row, list) or len(row) != len(a_set):
                raise _fail(f"$.expected_C[{i}]", f"expected {len(a_set)} entries (one per A observable)")
            rows.append(tuple(
                (text, _parse_expr(text, layout, f"$.expected_C[{i}][{j}]"))
                for j, text in enumerate(row)
            ))
        expected = tuple(rows)

    bipartition = None
    if doc.get("bipartition") is not None:
        bipartition = _bipartition(doc["bipartition"], len(layout.subsystems))

    tolerances = DEFAULT_TOL
    if doc.get("tolerances") is not None:
        tolerances = _tolerances(doc["tolerances"], DEFAULT_TOL)

    return Scenario(name, layout, a_set, b_set, expected, bipartition, tolerances, description)


def parse_scenario(text, max_dim=DEFAULT_MAX_DIM):
    """Parse a scenario JSON document into a validated Scenario."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return scenario_from_dict(doc, max_dim)


def load_scenario(path, max_dim=DEFAULT_MAX_DIM):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read scenario file {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"scenario file {path} is not valid UTF-8") from None
    try:
        return parse_scenario(text, max_dim)
    except ParseError as exc:
        raise exc.located(str(path)) from None
