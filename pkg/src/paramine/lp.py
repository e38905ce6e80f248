"""Per-slot distributional similarity baseline.

Each verb gets one co-occurrence vector per argument slot (subject,
object). Features are weighted by pointwise mutual information within the
slot; features with non-positive PMI carry no weight. Slot similarity is
the Lin measure (shared positive weight over total positive weight) and
the verb-pair score is the geometric mean of the two slot similarities.

Unlike the instance pipeline, this baseline applies no pronoun, overlap
or contradiction filtering: it sees the raw filler distributions.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .config import OBJECT, SUBJECT
from .extraction import VerbInstance
from .scoring import TypePair

SLOTS = (SUBJECT, OBJECT)


@dataclass(frozen=True)
class SlotVector:
    verb: str
    slot: str
    counts: dict[str, int]


@dataclass(frozen=True)
class LpScore:
    pair: TypePair
    subject_sim: float
    object_sim: float
    score: float


def build_slot_vectors(
    instances: Iterable[VerbInstance], min_freq: int = 1
) -> dict[tuple[str, str], SlotVector]:
    """Aggregate per-verb, per-slot filler counts over all instances.

    min_freq > 1 drops rare fillers after aggregation (default keeps
    everything, including pronouns).
    """
    counts: dict[tuple[str, str], Counter[str]] = {}
    for instance in instances:
        for slot in SLOTS:
            for filler in instance.components.get(slot, ()):
                counts.setdefault((instance.verb, slot), Counter())[filler] += 1

    vectors = {}
    for (verb, slot), filler_counts in counts.items():
        kept = {f: c for f, c in filler_counts.items() if c >= min_freq}
        if kept:
            vectors[(verb, slot)] = SlotVector(verb=verb, slot=slot, counts=kept)
    return vectors


class SlotTable:
    """Slot vectors plus the marginals needed for PMI, with positive-PMI
    vectors cached in sparse form for the pair loop."""

    def __init__(self, vectors: Mapping[tuple[str, str], SlotVector]):
        self.vectors = dict(vectors)
        self._verb_totals: dict[tuple[str, str], int] = {}
        self._filler_totals: dict[tuple[str, str], int] = {}
        self._slot_totals: dict[str, int] = {}
        for (verb, slot), vector in self.vectors.items():
            total = sum(vector.counts.values())
            self._verb_totals[(verb, slot)] = total
            self._slot_totals[slot] = self._slot_totals.get(slot, 0) + total
            for filler, count in vector.counts.items():
                key = (slot, filler)
                self._filler_totals[key] = self._filler_totals.get(key, 0) + count

        self._filler_ids = {
            slot: {
                filler: i
                for i, filler in enumerate(
                    sorted(f for s, f in self._filler_totals if s == slot)
                )
            }
            for slot in self._slot_totals
        }
        self._positive: dict[tuple[str, str], tuple[np.ndarray, np.ndarray, float]] = {}

    def verbs(self) -> list[str]:
        return sorted({verb for verb, _ in self.vectors})

    def pmi(self, verb: str, slot: str, filler: str) -> float:
        """ln of observed-over-expected co-occurrence within the slot."""
        vector = self.vectors.get((verb, slot))
        count = vector.counts.get(filler, 0) if vector else 0
        if count <= 0:
            raise KeyError(f"no observation of {filler!r} in {slot} slot of {verb!r}")
        return math.log(
            count
            * self._slot_totals[slot]
            / (self._verb_totals[(verb, slot)] * self._filler_totals[(slot, filler)])
        )

    def positive_vector(self, verb: str, slot: str):
        """(feature ids, PMI weights, total weight) for positive-PMI features."""
        key = (verb, slot)
        cached = self._positive.get(key)
        if cached is not None:
            return cached
        vector = self.vectors.get(key)
        entries = []
        if vector is not None:
            ids = self._filler_ids[slot]
            for filler in vector.counts:
                weight = self.pmi(verb, slot, filler)
                if weight > 0.0:
                    entries.append((ids[filler], weight))
        entries.sort()
        result = (
            np.fromiter((e[0] for e in entries), dtype=np.int32),
            np.fromiter((e[1] for e in entries), dtype=np.float64),
            float(sum(e[1] for e in entries)),
        )
        self._positive[key] = result
        return result


def lin_slot_similarity(a: SlotVector, b: SlotVector, table: SlotTable) -> float:
    """Shared positive PMI weight over total positive PMI weight, in [0,1]."""
    if a.slot != b.slot:
        raise ValueError(f"slot mismatch: {a.slot} vs {b.slot}")
    ids_a, wts_a, total_a = table.positive_vector(a.verb, a.slot)
    ids_b, wts_b, total_b = table.positive_vector(b.verb, b.slot)
    denominator = total_a + total_b
    if denominator <= 0.0:
        return 0.0
    return kernels.common_sum(ids_a, wts_a, ids_b, wts_b) / denominator


def lp_similarity(v1: str, v2: str, table: SlotTable) -> LpScore:
    """Geometric mean of subject and object slot similarities."""
    sims = {}
    for slot in SLOTS:
        a = table.vectors.get((v1, slot))
        b = table.vectors.get((v2, slot))
        sims[slot] = lin_slot_similarity(a, b, table) if a and b else 0.0
    pair = TypePair(*sorted((v1, v2)))
    return LpScore(
        pair=pair,
        subject_sim=sims[SUBJECT],
        object_sim=sims[OBJECT],
        score=math.sqrt(sims[SUBJECT] * sims[OBJECT]),
    )


def rank_lp_scores(table: SlotTable) -> list[LpScore]:
    """All verb pairs with nonzero similarity, best first.

    Candidate pairs come from an inverted filler index: a pair with no
    shared positive-PMI feature in either slot scores 0 and is skipped.
    """
    by_feature: dict[tuple[str, int], set[str]] = {}
    for verb in table.verbs():
        for slot in SLOTS:
            ids, _, _ = table.positive_vector(verb, slot)
            for feature in ids.tolist():
                by_feature.setdefault((slot, feature), set()).add(verb)

    candidates: set[tuple[str, str]] = set()
    for verbs in by_feature.values():
        for v1, v2 in ((a, b) for a in verbs for b in verbs if a < b):
            candidates.add((v1, v2))

    scores = []
    for v1, v2 in sorted(candidates):
        score = lp_similarity(v1, v2, table)
        if score.score > 0.0:
            scores.append(score)
    scores.sort(key=lambda s: (-s.score, s.pair))
    return scores


@dataclass
class SampleResult:
    pairs: list[TypePair] = field(default_factory=list)
    rows: list[tuple[str, str, int, str]] = field(default_factory=list)  # pivot, partner, rank, note
    notes: list[str] = field(default_factory=list)


def rank_matched_sample(
    our_rankings: Mapping[str, Sequence[str]],
    lp_rankings: Mapping[str, Sequence[str]],
    sample: Sequence[TypePair],
    seed: int,
) -> SampleResult:
    """Map each sampled pair to the equally-ranked baseline candidate.

    For a sampled pair, one verb is picked as pivot (seeded RNG); the
    partner's rank k in the pivot's candidate list under our scorer is
    looked up, and the k-th entry of the pivot's baseline list is emitted.
    A baseline list shorter than k yields its last entry plus a truncation
    note; a pivot missing from either ranking is skipped with a note.
    """
    rng = random.Random(seed)
    result = SampleResult()
    for pair in sample:
        pivot = rng.choice((pair.v1, pair.v2))
        partner = pair.v2 if pivot == pair.v1 else pair.v1

        ours = our_rankings.get(pivot)
        theirs = lp_rankings.get(pivot)
        if ours is None or partner not in ours:
            result.notes.append(f"skip <{pair.v1}, {pair.v2}>: no rank for {partner!r} under pivot {pivot!r}")
            continue
        if theirs is None or not theirs:
            result.notes.append(f"skip <{pair.v1}, {pair.v2}>: pivot {pivot!r} absent from baseline ranking")
            continue

        k = list(ours).index(partner) + 1
        note = ""
        if k > len(theirs):
            note = f"truncated to rank {len(theirs)}"
        matched = theirs[min(k, len(theirs)) - 1]
        if matched == pivot:
            result.notes.append(f"skip <{pair.v1}, {pair.v2}>: baseline rank {k} of {pivot!r} is the pivot itself")
            continue
        result.rows.append((pivot, matched, k, note))
        result.pairs.append(TypePair(*sorted((pivot, matched))))
    return result
