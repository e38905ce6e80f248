# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse-vector kernels: sorted-merge dot products and common
weight sums over CSR-stored rows. The batch loop releases the GIL so
worker threads overlap for real."""


cdef inline double _dot(const int[:] ia, const double[:] wa,
                        const int[:] ib, const double[:] wb) noexcept nogil:
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = ia.shape[0], nb = ib.shape[0]
    cdef double acc = 0.0
    while i < na and j < nb:
        if ia[i] == ib[j]:
            acc += wa[i] * wb[j]
            i += 1
            j += 1
        elif ia[i] < ib[j]:
            i += 1
        else:
            j += 1
    return acc


def sparse_dot(const int[:] ids_a, const double[:] wts_a,
               const int[:] ids_b, const double[:] wts_b):
    return _dot(ids_a, wts_a, ids_b, wts_b)


def batch_dot(const int[:] ids, const double[:] wts, const Py_ssize_t[:] indptr,
              const Py_ssize_t[:] left, const Py_ssize_t[:] right, double[:] out):
    cdef Py_ssize_t k, la, lb, ra, rb
    cdef Py_ssize_t n = left.shape[0]
    with nogil:
        for k in range(n):
            la = indptr[left[k]]
            lb = indptr[left[k] + 1]
            ra = indptr[right[k]]
            rb = indptr[right[k] + 1]
            out[k] = _dot(ids[la:lb], wts[la:lb], ids[ra:rb], wts[ra:rb])


def common_sum(const int[:] ids_a, const double[:] wts_a,
               const int[:] ids_b, const double[:] wts_b):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = ids_a.shape[0], nb = ids_b.shape[0]
    cdef double acc = 0.0
    with nogil:
        while i < na and j < nb:
            if ids_a[i] == ids_b[j]:
                acc += wts_a[i] + wts_b[j]
                i += 1
                j += 1
            elif ids_a[i] < ids_b[j]:
                i += 1
            else:
                j += 1
    return acc
