"""Paraphrase scoring.

An instance pair's probability is the chance that two independently drawn
verb instances would show this verb pair with all of the observed shared
components:

    P(pair) = P(v1) * P(v2) * prod_i P(component_i)^2

with every factor a maximum-likelihood estimate over the extracted
instance set. Low probability means the overlap is unlikely to be
coincidence, i.e. strong paraphrase evidence.

Per verb type pair, only the best (lowest-probability) instance pair is
kept for each subject-object key, the kept probabilities are multiplied,
and the type-pair score is the negative natural log of that product. All
arithmetic stays in log space; products are never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .config import MLE_PER_INSTANCE, MLE_PER_RELATION
from .errors import ConsistencyError
from .pairs import InstancePair, PairKey
from .stats import CorpusStats


@dataclass(frozen=True, order=True)
class TypePair:
    v1: str
    v2: str

    def __post_init__(self):
        if not self.v1 < self.v2:
            raise ValueError(f"type pair not in canonical order: {self.v1!r}, {self.v2!r}")


@dataclass(frozen=True)
class BestInstanceSet:
    pair: TypePair
    members: dict[PairKey, InstancePair]


@dataclass(frozen=True)
class TypePairScore:
    pair: TypePair
    score: float
    support: int
    evidence: tuple[tuple[str, str], ...]  # (left sid, right sid) per member


def _factor_log_prob(count: int, denominator: int, what: str) -> float:
    if count <= 0 or denominator <= 0:
        raise ConsistencyError(
            f"zero frequency for {what}; statistics do not cover this pair"
        )
    return math.log(count) - math.log(denominator)


def instance_pair_log_probability(
    pair: InstancePair, stats: CorpusStats, mle_mode: str = MLE_PER_INSTANCE
) -> float:
    """ln P of the pair; components are consumed in sorted order so the
    floating-point sum is reproducible."""
    n = stats.verb_instance_count
    log_p = _factor_log_prob(stats.verb_freq.get(pair.left.verb, 0), n, pair.left.verb)
    log_p += _factor_log_prob(stats.verb_freq.get(pair.right.verb, 0), n, pair.right.verb)
    for relation, filler in pair.shared_components:
        if mle_mode == MLE_PER_RELATION:
            denominator = stats.relation_totals.get(relation, 0)
        else:
            denominator = n
        count = stats.component_freq.get((relation, filler), 0)
        log_p += 2.0 * _factor_log_prob(count, denominator, f"{relation}={filler!r}")
    return log_p


def instance_pair_probability(
    pair: InstancePair, stats: CorpusStats, mle_mode: str = MLE_PER_INSTANCE
) -> float:
    return math.exp(instance_pair_log_probability(pair, stats, mle_mode))


def select_best_per_key(
    pairs: Iterable[InstancePair], stats: CorpusStats, mle_mode: str = MLE_PER_INSTANCE
) -> dict[TypePair, BestInstanceSet]:
    """Group pairs by verb type pair, keeping per key only the
    lowest-probability pair (ties: lexicographically smaller evidence)."""
    best: dict[TypePair, dict[PairKey, tuple[float, InstancePair]]] = {}
    for pair in pairs:
        type_pair = TypePair(pair.left.verb, pair.right.verb)
        log_p = instance_pair_log_probability(pair, stats, mle_mode)
        per_key = best.setdefault(type_pair, {})
        incumbent = per_key.get(pair.key)
        if incumbent is None:
            per_key[pair.key] = (log_p, pair)
            continue
        inc_log_p, inc_pair = incumbent
        challenger = (log_p, pair.left.sentence_id, pair.right.sentence_id)
        holder = (inc_log_p, inc_pair.left.sentence_id, inc_pair.right.sentence_id)
        if challenger < holder:
            per_key[pair.key] = (log_p, pair)

    return {
        type_pair: BestInstanceSet(
            pair=type_pair,
            members={key: pair for key, (_, pair) in sorted(per_key.items())},
        )
        for type_pair, per_key in best.items()
    }


def type_pair_score(
    best: BestInstanceSet, stats: CorpusStats, mle_mode: str = MLE_PER_INSTANCE
) -> TypePairScore:
    """Negative log of the product of member probabilities."""
    score = 0.0
    evidence = []
    for key in sorted(best.members):
        member = best.members[key]
        score -= instance_pair_log_probability(member, stats, mle_mode)
        evidence.append((member.left.sentence_id, member.right.sentence_id))
    return TypePairScore(
        pair=best.pair, score=score, support=len(best.members), evidence=tuple(evidence)
    )


def rank_type_pairs(scores: Iterable[TypePairScore]) -> list[TypePairScore]:
    """Descending score; ties broken by verb pair, stable across runs."""
    return sorted(scores, key=lambda s: (-s.score, s.pair))


def score_pairs(
    pairs: Iterable[InstancePair], stats: CorpusStats, mle_mode: str = MLE_PER_INSTANCE
) -> list[TypePairScore]:
    best_sets = select_best_per_key(pairs, stats, mle_mode)
    return rank_type_pairs(
        type_pair_score(best, stats, mle_mode) for best in best_sets.values()
    )
