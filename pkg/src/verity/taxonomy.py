"""Eight-way classification of (input, output) MR pairs and legacy labels.

The verdict is decided purely by entailment facts.  With f = input |= output
and b = output |= input:

    f and b          0-well-matched
    f and not b      1b-tautologous when the output is a tautology, else 1a-too-weak
    not f and b      2b-self-contradictory when the output is a contradiction, else 2a-too-strong
    not f and not b  3b-conflicting when input |= !(output), else 3a-independent

An unsatisfiable input gets its own verdict instead of a forced category:
every entailment from it holds vacuously, so the seven categories above are
only meaningful for consistent inputs.  One consequence worth spelling out:
a tautologous input paired with a tautologous output is 0, not 1b, because
1b additionally requires that the output not entail the input.

``legacy_labels`` restates a verdict in two older vocabularies: hallucination
(output not entailed by input) and omission (input not entailed by output)
as one pair of booleans, and intrinsic (source contradicts output) versus
extrinsic (source neither supports nor contradicts output) hallucination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .entail import DEFAULT_ASSIGNMENT_LIMIT, entails, is_contradiction, is_tautology, satisfiable
from .mr import Formula, MrError, Not, Schema


class Verdict(Enum):
    """Classification of an output MR against its input MR.

    The values are the stable serialization names used in reports; their
    ascending sort order matches declaration order.
    """

    WELL_MATCHED = "0-well-matched"
    TOO_WEAK = "1a-too-weak"
    TAUTOLOGOUS = "1b-tautologous"
    TOO_STRONG = "2a-too-strong"
    SELF_CONTRADICTORY = "2b-self-contradictory"
    INDEPENDENT = "3a-independent"
    CONFLICTING = "3b-conflicting"
    INCONSISTENT_INPUT = "inconsistent-input"


class JiLabel(Enum):
    INTRINSIC = "intrinsic"
    EXTRINSIC = "extrinsic"


@dataclass(frozen=True)
class LegacyLabels:
    """The same verdict in two earlier vocabularies.

    ``ji`` is None where the intrinsic/extrinsic split does not apply
    (nothing was hallucinated).
    """

    dusek_hallucination: bool
    dusek_omission: bool
    ji: Optional[JiLabel]


class UnmappableVerdict(MrError):
    """The verdict has no legacy-label counterpart."""


def classify(
    schema: Schema,
    input_mr: Formula,
    output_mr: Formula,
    *,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
) -> Verdict:
    """Assign the unique verdict for this (input, output) pair."""
    if not satisfiable(schema, input_mr, limit=limit):
        return Verdict.INCONSISTENT_INPUT
    forward = entails(schema, input_mr, output_mr, limit=limit)
    backward = entails(schema, output_mr, input_mr, limit=limit)
    if forward and backward:
        return Verdict.WELL_MATCHED
    if forward:
        if is_tautology(schema, output_mr, limit=limit):
            return Verdict.TAUTOLOGOUS
        return Verdict.TOO_WEAK
    if backward:
        if is_contradiction(schema, output_mr, limit=limit):
            return Verdict.SELF_CONTRADICTORY
        return Verdict.TOO_STRONG
    if entails(schema, input_mr, Not(output_mr), limit=limit):
        return Verdict.CONFLICTING
    return Verdict.INDEPENDENT


# Each row is a theorem of the legacy definitions given the verdict's
# defining entailment facts, so no solver call is needed here.
_LEGACY = {
    Verdict.WELL_MATCHED: LegacyLabels(False, False, None),
    Verdict.TOO_WEAK: LegacyLabels(False, True, None),
    Verdict.TAUTOLOGOUS: LegacyLabels(False, True, None),
    Verdict.TOO_STRONG: LegacyLabels(True, False, JiLabel.EXTRINSIC),
    Verdict.SELF_CONTRADICTORY: LegacyLabels(True, False, JiLabel.INTRINSIC),
    Verdict.INDEPENDENT: LegacyLabels(True, True, JiLabel.EXTRINSIC),
    Verdict.CONFLICTING: LegacyLabels(True, True, JiLabel.INTRINSIC),
}


def legacy_labels(verdict: Verdict) -> LegacyLabels:
    """Map a verdict to hallucination/omission flags and the Ji split."""
    try:
        return _LEGACY[verdict]
    except KeyError:
        raise UnmappableVerdict(
            f"no legacy labels for {verdict.value}: the older schemes assume a consistent input"
        ) from None
