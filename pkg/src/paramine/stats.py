"""Corpus frequency statistics backing idf weights and all probability
estimates. Built once after extraction, then treated as read-only."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable

from .conllu import Corpus


@dataclass(frozen=True)
class CorpusStats:
    N: int                                      # total corpus token count
    token_freq: dict[str, int]                  # lemma -> corpus frequency
    verb_instance_count: int                    # number of extracted verb instances
    verb_freq: dict[str, int]                   # verb lemma -> instance count
    component_freq: dict[tuple[str, str], int]  # (relation, filler) -> instances containing it
    skip_punct: bool = False
    relation_totals: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        totals: Counter[str] = Counter()
        for (relation, _), count in self.component_freq.items():
            totals[relation] += count
        object.__setattr__(self, "relation_totals", dict(totals))


def build_stats(corpus: Corpus, instances: Iterable, skip_punct: bool = False) -> CorpusStats:
    """Count token, verb and component frequencies.

    Token counts come from raw sentence lemmas; verb and component counts
    from the extracted instances, a component counted once per instance
    even if it fills the same relation several times.
    """
    token_freq: Counter[str] = Counter()
    n_tokens = 0
    for sentence in corpus.sentences:
        for token in sentence.tokens:
            if skip_punct and token.pos == "PUNCT":
                continue
            token_freq[token.lemma] += 1
            n_tokens += 1

    verb_freq: Counter[str] = Counter()
    component_freq: Counter[tuple[str, str]] = Counter()
    n_instances = 0
    for instance in instances:
        n_instances += 1
        verb_freq[instance.verb] += 1
        for relation, fillers in instance.components.items():
            for filler in fillers:
                component_freq[(relation, filler)] += 1

    return CorpusStats(
        N=n_tokens,
        token_freq=dict(token_freq),
        verb_instance_count=n_instances,
        verb_freq=dict(verb_freq),
        component_freq=dict(component_freq),
        skip_punct=skip_punct,
    )


def idf(lemma: str, stats: CorpusStats) -> float:
    """Natural-log inverse document frequency: ln(N / corpus freq).

    Unseen lemmas weigh 0 so that fillers normalized away during
    extraction cannot blow up overlap scoring.
    """
    freq = stats.token_freq.get(lemma, 0)
    if freq <= 0:
        return 0.0
    return math.log(stats.N / freq)


def write_stats(stats: CorpusStats, fh: IO[str]) -> None:
    payload = {
        "N": stats.N,
        "token_freq": stats.token_freq,
        "verb_instance_count": stats.verb_instance_count,
        "verb_freq": stats.verb_freq,
        "component_freq": [
            [relation, filler, count]
            for (relation, filler), count in sorted(stats.component_freq.items())
        ],
        "skip_punct": stats.skip_punct,
        "log_base": "natural",
    }
    json.dump(payload, fh, sort_keys=True)
    fh.write("\n")


def read_stats(fh: IO[str]) -> CorpusStats:
    payload = json.load(fh)
    return CorpusStats(
        N=payload["N"],
        token_freq=payload["token_freq"],
        verb_instance_count=payload["verb_instance_count"],
        verb_freq=payload["verb_freq"],
        component_freq={
            (relation, filler): count
            for relation, filler, count in payload["component_freq"]
        },
        skip_punct=payload.get("skip_punct", False),
    )
