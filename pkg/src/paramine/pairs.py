"""Candidate instance pairs: keying, overlap thresholding, contradiction
filtering.

Two verb instances become a candidate only when they share a non-pronoun
extended subject and object. Candidates from the same sentence are
excluded by default (coordination, not restatement), pairs below the
sentence-overlap threshold are dropped, and pairs whose instances assert
a common relation with disjoint fillers are dropped as contradictions.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .config import OBJECT, SUBJECT
from .extraction import VerbInstance
from .overlap import SentenceMatrix


@dataclass(frozen=True, order=True)
class PairKey:
    subject: str
    object: str


@dataclass(frozen=True)
class InstanceRef:
    sentence_id: str
    verb: str
    token_index: int


@dataclass(frozen=True)
class InstancePair:
    key: PairKey
    left: InstanceRef          # left.verb < right.verb
    right: InstanceRef
    overlap_score: float
    shared_components: tuple[tuple[str, str], ...]  # sorted (relation, filler)

    def to_dict(self) -> dict:
        return {
            "key": {"subject": self.key.subject, "object": self.key.object},
            "left": vars(self.left).copy(),
            "right": vars(self.right).copy(),
            "overlap_score": self.overlap_score,
            "shared_components": [list(c) for c in self.shared_components],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "InstancePair":
        return cls(
            key=PairKey(payload["key"]["subject"], payload["key"]["object"]),
            left=InstanceRef(**payload["left"]),
            right=InstanceRef(**payload["right"]),
            overlap_score=payload["overlap_score"],
            shared_components=tuple(
                (rel, filler) for rel, filler in payload["shared_components"]
            ),
        )


@dataclass
class FilterCounts:
    candidate_pairs: int = 0
    after_overlap: int = 0
    after_contradiction: int = 0


def index_instances(instances: Iterable[VerbInstance]) -> dict[PairKey, list[VerbInstance]]:
    """Group instances by every non-pronoun (subject, object) combination."""
    index: dict[PairKey, list[VerbInstance]] = {}
    for instance in instances:
        subjects = instance.components.get(SUBJECT)
        objects = instance.components.get(OBJECT)
        if not subjects or not objects:
            continue
        for subj in subjects:
            if subj in instance.pronoun_fillers:
                continue
            for obj in objects:
                if obj in instance.pronoun_fillers:
                    continue
                index.setdefault(PairKey(subj, obj), []).append(instance)
    return index


def has_contradiction(a: VerbInstance, b: VerbInstance) -> bool:
    """True when some relation present in both instances has disjoint fillers.

    A relation present on only one side is complementary detail, not a
    contradiction; partially overlapping filler sets count as shared.
    """
    small, large = (a, b) if len(a.components) <= len(b.components) else (b, a)
    for relation, fillers in small.components.items():
        other = large.components.get(relation)
        if other is not None and fillers.isdisjoint(other):
            return True
    return False


def shared_components(a: VerbInstance, b: VerbInstance) -> tuple[tuple[str, str], ...]:
    """All (relation, filler) entries present in both instances, sorted."""
    shared = []
    for relation, fillers in a.components.items():
        other = b.components.get(relation)
        if other:
            shared.extend((relation, filler) for filler in fillers & other)
    shared.sort()
    return tuple(shared)


def _pairs_for_key(
    key: PairKey,
    members: Sequence[VerbInstance],
    matrix: SentenceMatrix,
    threshold: float,
    keep_contradictions: bool,
    same_sentence: bool,
) -> tuple[list[InstancePair], FilterCounts]:
    counts = FilterCounts()
    members = sorted(members, key=lambda i: (i.sentence_id, i.token_index))
    candidates = []
    for a, b in itertools.combinations(members, 2):
        if a.verb == b.verb:
            continue
        if a.sentence_id == b.sentence_id and not same_sentence:
            continue
        candidates.append((a, b))
    counts.candidate_pairs = len(candidates)
    if not candidates:
        return [], counts

    lefts = np.fromiter(
        (matrix.row(a.sentence_id) for a, _ in candidates), dtype=np.intp
    )
    rights = np.fromiter(
        (matrix.row(b.sentence_id) for _, b in candidates), dtype=np.intp
    )
    overlaps = matrix.overlap_rows(lefts, rights)

    out = []
    for (a, b), overlap in zip(candidates, overlaps):
        if overlap < threshold:
            continue
        counts.after_overlap += 1
        if not keep_contradictions and has_contradiction(a, b):
            continue
        counts.after_contradiction += 1
        if b.verb < a.verb:
            a, b = b, a
        out.append(
            InstancePair(
                key=key,
                left=InstanceRef(a.sentence_id, a.verb, a.token_index),
                right=InstanceRef(b.sentence_id, b.verb, b.token_index),
                overlap_score=float(overlap),
                shared_components=shared_components(a, b),
            )
        )
    return out, counts


def _sort_key(pair: InstancePair):
    return (
        -pair.overlap_score,
        pair.key,
        pair.left.sentence_id,
        pair.right.sentence_id,
        pair.left.verb,
        pair.right.verb,
        pair.left.token_index,
        pair.right.token_index,
    )


def generate_filtered_pairs(
    index: dict[PairKey, list[VerbInstance]],
    matrix: SentenceMatrix,
    threshold: float,
    keep_contradictions: bool = False,
    same_sentence: bool = False,
    jobs: int = 1,
) -> tuple[list[InstancePair], FilterCounts]:
    """All surviving instance pairs, in a deterministic total order.

    Keys are processed independently (worker count does not affect the
    result); the output is sorted by overlap descending, then key, then
    sentence ids.
    """
    keys = sorted(index)

    def work(key: PairKey) -> tuple[list[InstancePair], FilterCounts]:
        return _pairs_for_key(
            key, index[key], matrix, threshold, keep_contradictions, same_sentence
        )

    results: list[tuple[list[InstancePair], FilterCounts]]
    if jobs > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, keys))
    else:
        results = [work(key) for key in keys]

    pairs: list[InstancePair] = []
    totals = FilterCounts()
    for key_pairs, counts in results:
        pairs.extend(key_pairs)
        totals.candidate_pairs += counts.candidate_pairs
        totals.after_overlap += counts.after_overlap
        totals.after_contradiction += counts.after_contradiction

    pairs.sort(key=_sort_key)
    return pairs, totals


def write_pairs(pairs: Iterable[InstancePair], fh: IO[str]) -> None:
    for pair in pairs:
        fh.write(json.dumps(pair.to_dict(), sort_keys=True))
        fh.write("\n")


def read_pairs(fh: IO[str]) -> list[InstancePair]:
    return [InstancePair.from_dict(json.loads(line)) for line in fh if line.strip()]
