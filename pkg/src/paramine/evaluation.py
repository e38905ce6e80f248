"""Evaluation against human judgment files.

Judgments are TSV rows ``v1<TAB>v2<TAB>{+,-}<TAB>judge``; pairs are
normalized to canonical verb order before matching. Ranked pairs without
a judgment are excluded from the curve (the judged set is a sample of the
output, not its entirety), as are pairs with conflicting verdicts; both
exclusions are counted and reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import NormalDist
from typing import IO, Mapping, Sequence

from .scoring import TypePair

CORRECT = "correct"
INCORRECT = "incorrect"


@dataclass(frozen=True)
class Judgment:
    pair: TypePair
    verdict: str  # CORRECT | INCORRECT
    judge: str


@dataclass(frozen=True)
class PrPoint:
    rank_cutoff: int
    precision: float
    recall: float | None  # None when the judged set has no correct pairs


def read_judgments(fh: IO[str]) -> list[Judgment]:
    judgments = []
    seen = set()
    for lineno, line in enumerate(fh, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ValueError(f"judgment line {lineno}: expected 4 columns, got {len(cols)}")
        v1, v2, mark, judge = cols
        if mark not in ("+", "-"):
            raise ValueError(f"judgment line {lineno}: verdict must be + or -, got {mark!r}")
        pair = TypePair(*sorted((v1, v2)))
        if (pair, judge) in seen:
            raise ValueError(f"judgment line {lineno}: duplicate verdict for {pair} by {judge!r}")
        seen.add((pair, judge))
        judgments.append(
            Judgment(pair=pair, verdict=CORRECT if mark == "+" else INCORRECT, judge=judge)
        )
    return judgments


def verdict_map(judgments: Sequence[Judgment]) -> tuple[dict[TypePair, str], int]:
    """Collapse judgments to one verdict per pair.

    Pairs whose judges disagree are dropped; the count of dropped pairs is
    returned alongside.
    """
    verdicts: dict[TypePair, str] = {}
    conflicted = set()
    for judgment in judgments:
        existing = verdicts.get(judgment.pair)
        if existing is not None and existing != judgment.verdict:
            conflicted.add(judgment.pair)
        else:
            verdicts[judgment.pair] = judgment.verdict
    for pair in conflicted:
        del verdicts[pair]
    return verdicts, len(conflicted)


def precision_recall_curve(
    ranked: Sequence[TypePair], judgments: Mapping[TypePair, str]
) -> tuple[list[PrPoint], int]:
    """One point per judged rank cutoff; returns (curve, unjudged count)."""
    judged = [pair for pair in ranked if pair in judgments]
    unjudged = len(ranked) - len(judged)
    total_correct = sum(1 for pair in judged if judgments[pair] == CORRECT)

    points = []
    correct_so_far = 0
    for cutoff, pair in enumerate(judged, start=1):
        if judgments[pair] == CORRECT:
            correct_so_far += 1
        points.append(
            PrPoint(
                rank_cutoff=cutoff,
                precision=correct_so_far / cutoff,
                recall=correct_so_far / total_correct if total_correct else None,
            )
        )
    return points, unjudged


def precision_with_ci(
    judged: Sequence[bool], alpha: float = 0.05
) -> tuple[float, tuple[float, float]]:
    """Precision with a Wald normal-approximation interval, clipped to [0,1]."""
    n = len(judged)
    if n == 0:
        raise ValueError("no judged pairs")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    p = sum(judged) / n
    z = NormalDist().inv_cdf(1.0 - alpha / 2.0)
    half_width = z * (p * (1.0 - p) / n) ** 0.5
    return p, (max(0.0, p - half_width), min(1.0, p + half_width))


def cohen_kappa(a: Mapping[TypePair, str], b: Mapping[TypePair, str]) -> float:
    """Chance-corrected agreement between two judges over the same pairs."""
    if set(a) != set(b):
        only_a = sorted(f"<{p.v1}, {p.v2}>" for p in set(a) - set(b))[:5]
        only_b = sorted(f"<{p.v1}, {p.v2}>" for p in set(b) - set(a))[:5]
        raise ValueError(
            f"judges cover different pairs (only first judge: {only_a}; "
            f"only second judge: {only_b})"
        )
    if not a:
        raise ValueError("no pairs to compare")

    n = len(a)
    observed = sum(1 for pair in a if a[pair] == b[pair]) / n
    p_correct_a = sum(1 for v in a.values() if v == CORRECT) / n
    p_correct_b = sum(1 for v in b.values() if v == CORRECT) / n
    expected = p_correct_a * p_correct_b + (1 - p_correct_a) * (1 - p_correct_b)

    if expected == 1.0:
        if observed == 1.0:
            return 1.0
        raise ValueError("degenerate marginals: chance agreement is 1 but observed is not")
    return (observed - expected) / (1.0 - expected)


def contingency_table(a: Mapping[TypePair, str], b: Mapping[TypePair, str]) -> list[list[int]]:
    """2x2 table [[++, +-], [-+, --]] with first judge on rows."""
    table = [[0, 0], [0, 0]]
    for pair in a:
        row = 0 if a[pair] == CORRECT else 1
        col = 0 if b[pair] == CORRECT else 1
        table[row][col] += 1
    return table
