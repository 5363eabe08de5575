"""Detection of misleading communication: withholding and half truths.

A scenario fixes four things: what the speaker actually communicated (one
formula, K), the hearer's background beliefs (one formula, H), the actual
world (a model), and the disclosure expectations (formulas the hearer
expects to be told whenever they are true).  Belief and communication
operators are deliberately flattened into these explicit parts rather than
interpreted over possible worlds; the two detectors below then check their
defining conditions directly.

Withholding a fact q:    q is expected, q is true in the world, and K does
                         not entail q.
Half truth (p, r):       K entails p but not r, the hearer believes p -> r,
                         and the world makes p true but r false.  The hearer
                         is led from a truth to a falsehood.

"Communicated" always means entailed by K, not literally uttered; otherwise
any rephrasing would defeat detection.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from .entail import DEFAULT_ASSIGNMENT_LIMIT, ResourceLimit, entails, satisfiable
from .mr import (
    CatAtom,
    Formula,
    Implies,
    Key,
    Model,
    MrError,
    NumAtom,
    Schema,
    SourceError,
    categorical_keys,
    evaluate,
    iter_atoms,
    numeric_keys,
    parse_formula,
    parse_schema,
    print_formula,
    validate_model,
)

# bool result is enough; the default wraps the engine with a limit baked in.
EntailsFn = Callable[[Formula, Formula], object]


class ScenarioError(MrError):
    """The scenario file or its parts fail validation."""


class FindingKind(Enum):
    WITHHOLDING = "withholding"
    HALF_TRUTH = "half-truth"


@dataclass(frozen=True)
class MisleadingFinding:
    """One detected act of misleading.

    For withholding, ``subject`` is the withheld fact q.  For a half truth,
    ``subject`` is the communicated truth p and ``inferred`` the false
    conclusion r the hearer draws from it.
    """

    kind: FindingKind
    subject: Formula
    inferred: Optional[Formula] = None

    def __post_init__(self) -> None:
        if (self.inferred is None) != (self.kind is FindingKind.WITHHOLDING):
            raise ValueError("inferred is required exactly for half truths")

    def render(self) -> str:
        if self.kind is FindingKind.WITHHOLDING:
            return f"withholding: {print_formula(self.subject)}"
        return (
            f"half-truth: {print_formula(self.subject)}"
            f" => {print_formula(self.inferred)}"
        )


@dataclass(frozen=True)
class Scenario:
    """A communication act against a known world.

    ``expectation_norms`` lists the formulas the hearer expects to be
    communicated whenever they are true.  The world must cover every key
    the formulas mention, and the hearer's beliefs must be satisfiable
    (a hearer who believes everything can be led to anything, which would
    make every pair a finding).
    """

    schema: Schema
    communicated: Formula
    hearer_beliefs: Formula
    world: Model
    expectation_norms: tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "expectation_norms", tuple(self.expectation_norms))
        validate_model(self.schema, self.world)
        for f in (self.communicated, self.hearer_beliefs, *self.expectation_norms):
            _require_world_keys(self.world, f)
        if not satisfiable(self.schema, self.hearer_beliefs):
            raise ScenarioError("hearer_beliefs is unsatisfiable")


def _require_world_keys(world: Model, f: Formula) -> None:
    for key in sorted(categorical_keys(f) - frozenset(world.categorical)):
        raise ScenarioError(f"world assigns no value to {key[0]}({key[1]})")
    for key in sorted(numeric_keys(f) - frozenset(world.numeric)):
        raise ScenarioError(f"world assigns no value to {key[0]}({key[1]})")


def _engine_fn(scenario: Scenario, limit: int) -> EntailsFn:
    def fn(a: Formula, b: Formula) -> object:
        return entails(scenario.schema, a, b, limit=limit)

    return fn


def detect_withholding(
    scenario: Scenario,
    q: Formula,
    *,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
    entails_fn: EntailsFn | None = None,
) -> bool:
    """True iff q is expected, true in the world, and not communicated."""
    if q not in scenario.expectation_norms:
        return False
    if not evaluate(scenario.world, q):
        return False
    fn = entails_fn or _engine_fn(scenario, limit)
    return not fn(scenario.communicated, q)


def detect_half_truth(
    scenario: Scenario,
    p: Formula,
    r: Formula,
    *,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
    entails_fn: EntailsFn | None = None,
) -> bool:
    """True iff communicating p leads the hearer to the false conclusion r.

    Checked conditions, exactly these five: K entails p; K does not entail
    r; the hearer believes p -> r; p is true in the world; r is false in
    the world.
    """
    if not evaluate(scenario.world, p) or evaluate(scenario.world, r):
        return False
    fn = entails_fn or _engine_fn(scenario, limit)
    return (
        bool(fn(scenario.communicated, p))
        and not fn(scenario.communicated, r)
        and bool(fn(scenario.hearer_beliefs, Implies(p, r)))
    )


DEFAULT_PAIR_LIMIT = 10**4

_NUM_OPS = ("<", "<=", "=", ">=", ">")


def default_candidates(scenario: Scenario) -> list[Formula]:
    """All atoms over the keys the scenario's world covers.

    Categorical keys contribute one atom per domain value.  Numeric keys
    contribute one atom per comparison operator and constant, where the
    constants are those the scenario's formulas mention for that key plus
    the world's own value (so a withheld numeric fact is expressible even
    when no formula names a constant).
    """
    candidates: list[Formula] = []
    for attr, entity in sorted(scenario.world.categorical):
        for value in scenario.schema.domain(attr):
            candidates.append(CatAtom(attr, entity, value))
    constants: dict[Key, set[Fraction]] = {
        key: {value} for key, value in scenario.world.numeric.items()
    }
    for f in (
        scenario.communicated,
        scenario.hearer_beliefs,
        *scenario.expectation_norms,
    ):
        for atom in iter_atoms(f):
            if isinstance(atom, NumAtom):
                constants[atom.attr, atom.entity].add(atom.constant)
    for attr, entity in sorted(scenario.world.numeric):
        for constant in sorted(constants[attr, entity]):
            for op in _NUM_OPS:
                candidates.append(NumAtom(attr, entity, op, constant))
    return candidates


def scan_misleading(
    scenario: Scenario,
    candidates: Sequence[Formula] | None = None,
    *,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
    entails_fn: EntailsFn | None = None,
) -> list[MisleadingFinding]:
    """Apply both detectors over a candidate set, exhaustively.

    Withholding is checked per candidate, half truths per ordered candidate
    pair.  An empty candidate set defaults to ``default_candidates``.
    Returns deduplicated findings ordered by their rendered form.
    """
    if not candidates:
        pool = default_candidates(scenario)
    else:
        pool = list(dict.fromkeys(candidates))
    if len(pool) ** 2 > pair_limit:
        raise ResourceLimit(len(pool) ** 2, pair_limit)
    fn = entails_fn or _engine_fn(scenario, limit)
    findings = []
    for q in pool:
        if detect_withholding(scenario, q, entails_fn=fn):
            findings.append(MisleadingFinding(FindingKind.WITHHOLDING, q))
    for p in pool:
        for r in pool:
            if detect_half_truth(scenario, p, r, entails_fn=fn):
                findings.append(MisleadingFinding(FindingKind.HALF_TRUTH, p, r))
    findings.sort(key=MisleadingFinding.render)
    return findings


# ---------------------------------------------------------------------------
# Scenario files

_WORLD_KEY_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\(([A-Za-z_][A-Za-z0-9_]*)\)\Z")


def load_scenario(path: str | Path) -> tuple[Scenario, Optional[list[Formula]]]:
    """Read a scenario file; returns the scenario and its candidate list.

    The file is a JSON object with fields ``schema`` (path, relative to the
    file), ``communicated``, ``hearer_beliefs`` (formula strings), ``world``
    (map from ``Attr(entity)`` to value), ``norms`` (list of formula
    strings), and optional ``candidates``.  Candidates are None when the
    field is absent, which makes scans fall back to ``default_candidates``.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"), parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: expected a JSON object")

    def field(name: str, kind: type) -> object:
        if name not in doc:
            raise ScenarioError(f"{path}: missing field {name!r}")
        value = doc[name]
        if not isinstance(value, kind):
            raise ScenarioError(f"{path}: field {name!r} must be a {kind.__name__}")
        return value

    schema_text = (path.parent / str(field("schema", str))).read_text(encoding="utf-8")
    schema = parse_schema(schema_text)

    def formula(name: str, text: str) -> Formula:
        try:
            return parse_formula(text, schema)
        except SourceError as exc:
            raise ScenarioError(f"{path}: in {name}: {exc}") from exc

    communicated = formula("communicated", str(field("communicated", str)))
    hearer_beliefs = formula("hearer_beliefs", str(field("hearer_beliefs", str)))

    world_cat: dict[Key, str] = {}
    world_num: dict[Key, Fraction] = {}
    for raw_key, value in field("world", dict).items():
        m = _WORLD_KEY_RE.match(str(raw_key))
        if m is None:
            raise ScenarioError(f"{path}: bad world key {raw_key!r}, want Attr(entity)")
        attr, entity = m.group(1), m.group(2)
        if schema.is_categorical(attr):
            if not isinstance(value, str):
                raise ScenarioError(
                    f"{path}: world value for {raw_key} must be a value name"
                )
            world_cat[attr, entity] = value
        elif schema.is_numeric(attr):
            if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
                raise ScenarioError(
                    f"{path}: world value for {raw_key} must be a number"
                )
            try:
                world_num[attr, entity] = Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ScenarioError(
                    f"{path}: world value for {raw_key}: {exc}"
                ) from exc
        else:
            raise ScenarioError(f"{path}: unknown attribute {attr!r} in world")
    world = Model(world_cat, world_num)

    norms = [formula("norms", str(t)) for t in field("norms", list)]
    candidates: Optional[list[Formula]] = None
    if "candidates" in doc:
        candidates = [formula("candidates", str(t)) for t in field("candidates", list)]

    scenario = Scenario(schema, communicated, hearer_beliefs, world, tuple(norms))
    for c in candidates or ():
        _require_world_keys(world, c)
    return scenario, candidates
