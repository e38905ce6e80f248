"""Pure-Python (numpy) fallback for the sparse-vector kernels.

Same contracts as the compiled _ckernels module: id arrays are int32,
strictly ascending within a row; weights are float64.
"""

from __future__ import annotations

import numpy as np


def sparse_dot(ids_a, wts_a, ids_b, wts_b) -> float:
    common, idx_a, idx_b = np.intersect1d(
        ids_a, ids_b, assume_unique=True, return_indices=True
    )
    if common.size == 0:
        return 0.0
    return float(np.dot(wts_a[idx_a], wts_b[idx_b]))


def batch_dot(ids, wts, indptr, left, right, out) -> None:
    for k in range(left.shape[0]):
        la, lb = indptr[left[k]], indptr[left[k] + 1]
        ra, rb = indptr[right[k]], indptr[right[k] + 1]
        out[k] = sparse_dot(ids[la:lb], wts[la:lb], ids[ra:rb], wts[ra:rb])


def common_sum(ids_a, wts_a, ids_b, wts_b) -> float:
    common, idx_a, idx_b = np.intersect1d(
        ids_a, ids_b, assume_unique=True, return_indices=True
    )
    if common.size == 0:
        return 0.0
    return float(np.sum(wts_a[idx_a]) + np.sum(wts_b[idx_b]))
