"""tf-idf sentence overlap.

Overlap between two sentences is the plain dot product of their tf*idf
vectors, with no length normalization: longer sentences may carry extra,
non-matching material without being penalized, and the absolute degree
of overlap is what gets thresholded.

`sentence_overlap` is the direct dictionary implementation; SentenceMatrix
precomputes all sentence vectors in CSR form and scores pairs through the
compiled kernels (or their fallback), which is what the pair generator
uses. The two must agree, and tests hold them to that.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from . import kernels
from .conllu import Corpus, Sentence
from .stats import CorpusStats, idf


def sentence_overlap(s1: Sentence, s2: Sentence, stats: CorpusStats) -> float:
    """Sum over shared lemmas of tf1*idf * tf2*idf."""
    tf1 = Counter(t.lemma for t in s1.tokens)
    tf2 = Counter(t.lemma for t in s2.tokens)
    if len(tf2) < len(tf1):
        tf1, tf2 = tf2, tf1
    total = 0.0
    for lemma, count in tf1.items():
        other = tf2.get(lemma)
        if other:
            weight = idf(lemma, stats)
            total += count * other * weight * weight
    return total


class SentenceMatrix:
    """CSR matrix of tf*idf sentence vectors keyed by sentence id."""

    def __init__(self, corpus: Corpus, stats: CorpusStats):
        vocab = {lemma: i for i, lemma in enumerate(sorted(stats.token_freq))}
        self._row_of: dict[str, int] = {}

        ids_parts: list[np.ndarray] = []
        wts_parts: list[np.ndarray] = []
        indptr = [0]
        for row, sentence in enumerate(corpus.sentences):
            self._row_of[sentence.id] = row
            counts = Counter(t.lemma for t in sentence.tokens)
            entries = []
            for lemma, count in counts.items():
                lemma_id = vocab.get(lemma)
                if lemma_id is None:
                    continue
                weight = idf(lemma, stats)
                if weight > 0.0:
                    entries.append((lemma_id, count * weight))
            entries.sort()
            ids_parts.append(np.fromiter((e[0] for e in entries), dtype=np.int32))
            wts_parts.append(np.fromiter((e[1] for e in entries), dtype=np.float64))
            indptr.append(indptr[-1] + len(entries))

        self._ids = (
            np.concatenate(ids_parts) if ids_parts else np.empty(0, dtype=np.int32)
        )
        self._wts = (
            np.concatenate(wts_parts) if wts_parts else np.empty(0, dtype=np.float64)
        )
        self._indptr = np.asarray(indptr, dtype=np.intp)

    def row(self, sentence_id: str) -> int:
        return self._row_of[sentence_id]

    def overlap(self, sid1: str, sid2: str) -> float:
        r1, r2 = self._row_of[sid1], self._row_of[sid2]
        a, b = self._indptr[r1], self._indptr[r1 + 1]
        c, d = self._indptr[r2], self._indptr[r2 + 1]
        return float(
            kernels.sparse_dot(self._ids[a:b], self._wts[a:b], self._ids[c:d], self._wts[c:d])
        )

    def overlap_rows(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Batch overlap for row-index arrays (np.intp)."""
        out = np.empty(left.shape[0], dtype=np.float64)
        kernels.batch_dot(self._ids, self._wts, self._indptr, left, right, out)
        return out
