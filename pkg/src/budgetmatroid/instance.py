"""Instance model plus the JSON file format.

All money-like quantities (budget, costs, profits) are exact rationals and
are encoded as strings in the file format; raw JSON numbers are rejected so
no value ever passes through floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ValidationError
from .families import KINDS, FamilySpec, construct, validate_spec
from .matroid import Matroid, restrict


def parse_rational(value, path: str) -> Fraction:
    if not isinstance(value, str):
        raise ValidationError(
            "rationals must be strings like \"1/3\" or \"0.25\" (JSON numbers are forbidden)",
            path,
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational literal: {value!r} ({exc})", path) from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class BmiInstance:
    """A budgeted matroid independent-set instance.

    ``active`` is the set of element ids whose singleton is independent;
    elements outside it can never appear in a solution and are excluded from
    all computation.  ``dropped`` records them for reporting.
    """

    budget: Fraction
    costs: tuple[Fraction, ...]
    profits: tuple[Fraction, ...]
    matroid_spec: FamilySpec
    matroid: Matroid = field(repr=False)
    active: frozenset = field(repr=False)
    dropped: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return len(self.costs)

    def active_matroid(self) -> Matroid:
        if self.active == self.matroid.ground:
            return self.matroid
        return restrict(self.matroid, self.active)

    def cost(self, elements: Iterable[int]) -> Fraction:
        return sum((self.costs[e] for e in elements), Fraction(0))

    def profit(self, elements: Iterable[int]) -> Fraction:
        return sum((self.profits[e] for e in elements), Fraction(0))


def make_instance(
    budget: Fraction,
    costs: Iterable[Fraction],
    profits: Iterable[Fraction],
    spec: FamilySpec,
) -> BmiInstance:
    costs = tuple(Fraction(c) for c in costs)
    profits = tuple(Fraction(p) for p in profits)
    n = len(costs)
    if len(profits) != n:
        raise ValidationError("costs and profits must have equal length", "elements")
    if budget <= 0:
        raise ValidationError("budget must be a positive rational", "budget")
    for i, c in enumerate(costs):
        if c < 0:
            raise ValidationError("cost must be >= 0", f"elements[{i}].cost")
        if c > budget:
            raise ValidationError(
                f"cost {c} of element {i} exceeds budget {budget}", f"elements[{i}].cost"
            )
    for i, p in enumerate(profits):
        if p < 0:
            raise ValidationError("profit must be >= 0", f"elements[{i}].profit")
    matroid = construct(spec, n)
    active = frozenset(e for e in range(n) if matroid.indep_fn(frozenset({e})))
    dropped = tuple(e for e in range(n) if e not in active)
    return BmiInstance(budget, costs, profits, spec, matroid, active, dropped)


def _spec_from_json(obj, path="matroid") -> FamilySpec:
    if not isinstance(obj, dict):
        raise ValidationError("matroid stanza must be an object", path)
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"unknown matroid kind {kind!r}", f"{path}.kind")
    try:
        if kind == "uniform":
            return FamilySpec(kind, rank=int(obj["rank"]))
        if kind == "partition":
            return FamilySpec(
                kind,
                blocks=tuple(tuple(int(e) for e in b) for b in obj["blocks"]),
                capacities=tuple(int(c) for c in obj["capacities"]),
            )
        if kind == "graphic":
            edges = tuple((int(u), int(v)) for u, v in obj["edges"])
            return FamilySpec(kind, num_vertices=int(obj["num_vertices"]), edges=edges)
        if kind == "linear":
            cols = tuple(
                tuple(parse_rational(x, f"{path}.columns[{i}][{j}]") for j, x in enumerate(col))
                for i, col in enumerate(obj["columns"])
            )
            return FamilySpec(kind, columns=cols)
        return FamilySpec(
            kind, maximal_sets=tuple(tuple(int(e) for e in s) for s in obj["maximal_sets"])
        )
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}", path) from exc
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matroid payload ({exc})", path) from exc


def _spec_to_json(spec: FamilySpec) -> dict:
    if spec.kind == "uniform":
        return {"kind": "uniform", "rank": spec.rank}
    if spec.kind == "partition":
        return {
            "kind": "partition",
            "blocks": [list(b) for b in spec.blocks],
            "capacities": list(spec.capacities),
        }
    if spec.kind == "graphic":
        return {
            "kind": "graphic",
            "num_vertices": spec.num_vertices,
            "edges": [list(e) for e in spec.edges],
        }
    if spec.kind == "linear":
        return {
            "kind": "linear",
            "columns": [[format_rational(x) for x in col] for col in spec.columns],
        }
    return {"kind": "explicit", "maximal_sets": [sorted(s) for s in spec.maximal_sets]}


def parse_instance(text: str) -> BmiInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}", "$") from exc
    if not isinstance(obj, dict):
        raise ValidationError("instance must be a JSON object", "$")
    for key in ("budget", "elements", "matroid"):
        if key not in obj:
            raise ValidationError(f"missing field {key!r}", "$")
    budget = parse_rational(obj["budget"], "budget")
    elements = obj["elements"]
    if not isinstance(elements, list):
        raise ValidationError("elements must be an array", "elements")
    costs, profits = [], []
    for i, el in enumerate(elements):
        if not isinstance(el, dict):
            raise ValidationError("element must be an object", f"elements[{i}]")
        costs.append(parse_rational(el.get("cost"), f"elements[{i}].cost"))
        profits.append(parse_rational(el.get("profit"), f"elements[{i}].profit"))
    spec = _spec_from_json(obj["matroid"])
    validate_spec(spec, len(costs))
    return make_instance(budget, costs, profits, spec)


def serialize_instance(inst: BmiInstance) -> str:
    obj = {
        "budget": format_rational(inst.budget),
        "elements": [
            {"cost": format_rational(c), "profit": format_rational(p)}
            for c, p in zip(inst.costs, inst.profits)
        ],
        "matroid": _spec_to_json(inst.matroid_spec),
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
