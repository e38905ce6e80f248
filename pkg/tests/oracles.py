"""Independent brute-force reference implementations.

These deliberately avoid the library's computational paths: frequencies
are recounted with plain Counters, sentence overlap is a dictionary dot
product, pair generation enumerates every instance pair quadratically,
and probabilities are direct floating-point products (no log-space
accumulation). Tests hold the pipeline to these results.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter


def oracle_counts(corpus, instances, skip_punct=False):
    token_freq = Counter()
    n_tokens = 0
    for sentence in corpus.sentences:
        for token in sentence.tokens:
            if skip_punct and token.pos == "PUNCT":
                continue
            token_freq[token.lemma] += 1
            n_tokens += 1
    verb_freq = Counter(inst.verb for inst in instances)
    comp_freq = Counter()
    for inst in instances:
        for relation, fillers in inst.components.items():
            for filler in fillers:
                comp_freq[(relation, filler)] += 1
    return n_tokens, token_freq, len(instances), verb_freq, comp_freq


def oracle_overlap(s1, s2, n_tokens, token_freq):
    tf1 = Counter(t.lemma for t in s1.tokens)
    tf2 = Counter(t.lemma for t in s2.tokens)
    total = 0.0
    for lemma in sorted(set(tf1) & set(tf2)):
        freq = token_freq.get(lemma, 0)
        if freq:
            weight = math.log(n_tokens / freq)
            total += tf1[lemma] * tf2[lemma] * weight * weight
    return total


def _valid_keys(a, b):
    """Shared non-pronoun (subject, object) combinations of two instances."""
    subj_a = a.components.get("subject", frozenset()) - a.pronoun_fillers
    subj_b = b.components.get("subject", frozenset()) - b.pronoun_fillers
    obj_a = a.components.get("object", frozenset()) - a.pronoun_fillers
    obj_b = b.components.get("object", frozenset()) - b.pronoun_fillers
    return [
        (subj, obj)
        for subj in sorted(subj_a & subj_b)
        for obj in sorted(obj_a & obj_b)
    ]


def oracle_ranking(
    corpus,
    instances,
    threshold,
    keep_contradictions=False,
    same_sentence=False,
    per_relation=False,
):
    """Ranked (v1, v2, score, support, evidence) rows by direct enumeration."""
    instances = list(instances)
    n_tokens, token_freq, n_instances, verb_freq, comp_freq = oracle_counts(
        corpus, instances
    )
    relation_totals = Counter()
    for (relation, _), count in comp_freq.items():
        relation_totals[relation] += count
    sentences = {s.id: s for s in corpus.sentences}

    best = {}  # (v1, v2) -> {(subj, obj): (prob, evidence)}
    for a, b in itertools.combinations(instances, 2):
        if a.verb == b.verb:
            continue
        if a.sentence_id == b.sentence_id and not same_sentence:
            continue
        keys = _valid_keys(a, b)
        if not keys:
            continue
        overlap = oracle_overlap(
            sentences[a.sentence_id], sentences[b.sentence_id], n_tokens, token_freq
        )
        if overlap < threshold:
            continue
        if not keep_contradictions:
            contradiction = any(
                relation in b.components and not (fillers & b.components[relation])
                for relation, fillers in a.components.items()
            )
            if contradiction:
                continue

        left, right = (a, b) if a.verb < b.verb else (b, a)
        shared = sorted(
            (relation, filler)
            for relation, fillers in a.components.items()
            if relation in b.components
            for filler in fillers & b.components[relation]
        )
        prob = (verb_freq[left.verb] / n_instances) * (verb_freq[right.verb] / n_instances)
        for relation, filler in shared:
            denom = relation_totals[relation] if per_relation else n_instances
            p = comp_freq[(relation, filler)] / denom
            prob *= p * p

        evidence = (left.sentence_id, right.sentence_id)
        per_key = best.setdefault((left.verb, right.verb), {})
        for key in keys:
            incumbent = per_key.get(key)
            if incumbent is None or (prob, evidence) < incumbent:
                per_key[key] = (prob, evidence)

    rows = []
    for (v1, v2), per_key in best.items():
        product = 1.0
        evidence = []
        for key in sorted(per_key):
            prob, ev = per_key[key]
            product *= prob
            evidence.append(ev)
        rows.append(
            {
                "v1": v1,
                "v2": v2,
                "score": -math.log(product),
                "support": len(per_key),
                "evidence": evidence,
            }
        )
    rows.sort(key=lambda r: (-r["score"], r["v1"], r["v2"]))
    return rows


def oracle_lin_similarity(a_counts, b_counts, slot_counts):
    """Lin similarity of two filler-count dicts over a whole-slot table.

    slot_counts maps verb -> {filler: count} for one slot.
    """
    slot_total = sum(sum(c.values()) for c in slot_counts.values())
    filler_totals = Counter()
    for counts in slot_counts.values():
        filler_totals.update(counts)

    def pmi_weights(counts):
        verb_total = sum(counts.values())
        weights = {}
        for filler, count in counts.items():
            value = math.log(count * slot_total / (verb_total * filler_totals[filler]))
            if value > 0.0:
                weights[filler] = value
        return weights

    wa = pmi_weights(a_counts)
    wb = pmi_weights(b_counts)
    denominator = sum(wa.values()) + sum(wb.values())
    if denominator <= 0.0:
        return 0.0
    numerator = sum(wa[f] + wb[f] for f in set(wa) & set(wb))
    return numerator / denominator
