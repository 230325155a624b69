# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
# cython: language_level=3
"""Compiled kernels for the hot inner loops: Hamiltonian entry generation and
two-site RDM extraction over bit-packed Fock states.

Contracts mirror ``_fallback`` exactly; ``tests/test_rdm.py`` asserts bit-for-bit
agreement between the two backends.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline Py_ssize_t _find(const cnp.uint64_t[::1] states, cnp.uint64_t x) nogil:
    cdef Py_ssize_t lo = 0, hi = states.shape[0] - 1, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if states[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def hop_entries(cnp.uint64_t[::1] states, int L, double[::1] amps):
    """Hop entries on the (down x up) product basis built by enumerate_sector.

    Adjacent same-spin modes make every Jordan-Wigner sign +1; targets are
    resolved on the per-spin pattern arrays, not the full basis.
    """
    cdef Py_ssize_t n = states.shape[0]
    cdef cnp.uint64_t one = 1
    cdef cnp.uint64_t up_mask = (one << L) - 1
    cdef Py_ssize_t n_up = 1
    while n_up < n and (states[n_up] >> L) == (states[0] >> L):
        n_up += 1
    up_arr = np.empty(n_up, dtype=np.uint64)
    cdef cnp.uint64_t[::1] up_patterns = up_arr
    cdef Py_ssize_t n_down = n // n_up
    down_arr = np.empty(n_down, dtype=np.uint64)
    cdef cnp.uint64_t[::1] down_patterns = down_arr
    cdef Py_ssize_t t
    for t in range(n_up):
        up_patterns[t] = states[t] & up_mask
    for t in range(n_down):
        down_patterns[t] = states[t * n_up] >> L

    cdef Py_ssize_t cap = 0
    cdef int b
    for b in range(L - 1):
        if amps[b] != 0.0:
            cap += 2 * n
    rows_arr = np.empty(cap, dtype=np.int64)
    cols_arr = np.empty(cap, dtype=np.int64)
    vals_arr = np.empty(cap, dtype=np.float64)
    cdef cnp.int64_t[::1] rows = rows_arr
    cdef cnp.int64_t[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr

    cdef Py_ssize_t k = 0, a, d, base
    cdef cnp.uint64_t mask, pat
    cdef int p
    cdef double amp
    with nogil:
        for b in range(L - 1):
            amp = amps[b]
            if amp == 0.0:
                continue
            p = b
            mask = (one << p) | (one << (p + 1))
            # up-spin hops: same down block, up pattern remapped
            for a in range(n_up):
                pat = up_patterns[a]
                if (((pat >> p) ^ (pat >> (p + 1))) & one) != 0:
                    t = _find(up_patterns, pat ^ mask)
                    for d in range(n_down):
                        base = d * n_up
                        rows[k] = base + t
                        cols[k] = base + a
                        vals[k] = -amp
                        k += 1
            # down-spin hops: same up index, down block remapped
            for d in range(n_down):
                pat = down_patterns[d]
                if (((pat >> p) ^ (pat >> (p + 1))) & one) != 0:
                    t = _find(down_patterns, pat ^ mask)
                    for a in range(n_up):
                        rows[k] = t * n_up + a
                        cols[k] = d * n_up + a
                        vals[k] = -amp
                        k += 1
    return rows_arr[:k], cols_arr[:k], vals_arr[:k]


def double_occupancy(cnp.uint64_t[::1] states, int L):
    cdef Py_ssize_t n = states.shape[0], a
    out_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef cnp.uint64_t up_mask = (<cnp.uint64_t> 1 << L) - 1
    with nogil:
        for a in range(n):
            out[a] = __builtin_popcountll(states[a] & (states[a] >> L) & up_mask)
    return out_arr


def rdm_extract(cnp.uint64_t[::1] states, int L, int i, int j):
    cdef Py_ssize_t n = states.shape[0], a
    env_arr = np.empty(n, dtype=np.uint64)
    cfg_arr = np.empty(n, dtype=np.uint8)
    sign_arr = np.empty(n, dtype=np.float64)
    cdef cnp.uint64_t[::1] env = env_arr
    cdef cnp.uint8_t[::1] cfg = cfg_arr
    cdef double[::1] sign = sign_arr

    cdef int ui = i - 1, uj = j - 1, di = L + i - 1, dj = L + j - 1
    cdef cnp.uint64_t one = 1
    cdef cnp.uint64_t local_mask = (one << ui) | (one << uj) | (one << di) | (one << dj)
    cdef cnp.uint64_t s, e
    cdef int o_ui, o_uj, o_di, o_dj, crossings
    with nogil:
        for a in range(n):
            s = states[a]
            o_ui = <int> ((s >> ui) & one)
            o_uj = <int> ((s >> uj) & one)
            o_di = <int> ((s >> di) & one)
            o_dj = <int> ((s >> dj) & one)
            e = s & ~local_mask
            env[a] = e
            cfg[a] = <cnp.uint8_t> (4 * (o_ui + 2 * o_di) + (o_uj + 2 * o_dj))
            crossings = o_uj * o_di
            if o_ui:
                crossings += __builtin_popcountll(e & ((one << ui) - 1))
            if o_uj:
                crossings += __builtin_popcountll(e & ((one << uj) - 1))
            if o_di:
                crossings += __builtin_popcountll(e & ((one << di) - 1))
            if o_dj:
                crossings += __builtin_popcountll(e & ((one << dj) - 1))
            sign[a] = 1.0 if (crossings & 1) == 0 else -1.0
    return env_arr, cfg_arr, sign_arr
