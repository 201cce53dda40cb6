# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled simulation kernel. Same contract as ``_pykernel.run``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport malloc, realloc, free, calloc
from libc.string cimport memcmp, memcpy

cnp.import_array()


cdef inline uint64_t _mix(uint64_t h, uint64_t x) nogil:
    h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)
    h *= 0xBF58476D1CE4E5B9ULL
    h ^= h >> 31
    return h


cdef inline uint64_t _hash_row(const int64_t* row, Py_ssize_t width) nogil:
    cdef uint64_t h = 0x84222325CBF29CE4ULL
    cdef Py_ssize_t i
    for i in range(width):
        h = _mix(h, <uint64_t>row[i])
    return h


def run(const int64_t[::1] indptr, const int64_t[::1] indices,
        const int64_t[::1] chips0, const int64_t[::1] motor_vertex,
        const int64_t[::1] motor_trans_len, const int64_t[::1] motor_cyc_len,
        const int64_t[::1] motor_off, const uint8_t[::1] motor_bits,
        long long max_steps):
    cdef Py_ssize_t n = chips0.shape[0]
    cdef Py_ssize_t k = motor_vertex.shape[0]
    cdef Py_ssize_t width = n + k
    cdef Py_ssize_t cap = 64
    cdef Py_ssize_t tcap = 64          # hash table slots, power of two
    cdef Py_ssize_t t = 0, s = -1, i, j, v, slot
    cdef long long tl, cl
    cdef uint64_t h
    cdef int64_t* rows = <int64_t*>malloc(cap * width * sizeof(int64_t))
    cdef uint8_t* fire = <uint8_t*>malloc(cap * n * sizeof(uint8_t))
    cdef int64_t* table = <int64_t*>calloc(tcap, sizeof(int64_t))  # stores t + 1
    cdef uint64_t* hashes = <uint64_t*>malloc(cap * sizeof(uint64_t))
    cdef int64_t* cur
    cdef int64_t* nxt
    cdef uint8_t* f
    cdef int64_t* newtable
    cdef Py_ssize_t newcap
    if rows == NULL or fire == NULL or table == NULL or hashes == NULL:
        free(rows); free(fire); free(table); free(hashes)
        raise MemoryError()
    for v in range(n):
        rows[v] = chips0[v]
    try:
        while t <= max_steps:
            cur = rows + t * width
            for j in range(k):
                tl = motor_trans_len[j]
                cl = motor_cyc_len[j]
                cur[n + j] = t if t < tl else tl + (t - tl) % cl
            h = _hash_row(cur, width)
            slot = <Py_ssize_t>(h & (tcap - 1))
            while table[slot] != 0:
                i = table[slot] - 1
                if hashes[i] == h and memcmp(rows + i * width, cur, width * sizeof(int64_t)) == 0:
                    s = i
                    break
                slot = (slot + 1) & (tcap - 1)
            if s >= 0:
                break
            table[slot] = t + 1
            hashes[t] = h
            # grow table at load 1/2
            if 2 * (t + 1) > tcap:
                newcap = tcap * 2
                newtable = <int64_t*>calloc(newcap, sizeof(int64_t))
                if newtable == NULL:
                    raise MemoryError()
                for i in range(t + 1):
                    slot = <Py_ssize_t>(hashes[i] & (newcap - 1))
                    while newtable[slot] != 0:
                        slot = (slot + 1) & (newcap - 1)
                    newtable[slot] = i + 1
                free(table)
                table = newtable
                tcap = newcap
            if t + 1 >= cap:
                cap *= 2
                rows = <int64_t*>realloc(rows, cap * width * sizeof(int64_t))
                fire = <uint8_t*>realloc(fire, cap * n * sizeof(uint8_t))
                hashes = <uint64_t*>realloc(hashes, cap * sizeof(uint64_t))
                if rows == NULL or fire == NULL or hashes == NULL:
                    raise MemoryError()
                cur = rows + t * width
            f = fire + t * n
            for v in range(n):
                f[v] = 1 if cur[v] >= indptr[v + 1] - indptr[v] else 0
            for j in range(k):
                f[motor_vertex[j]] = motor_bits[motor_off[j] + cur[n + j]]
            nxt = cur + width
            memcpy(nxt, cur, n * sizeof(int64_t))
            for v in range(n):
                if f[v]:
                    nxt[v] -= indptr[v + 1] - indptr[v]
                    for i in range(indptr[v], indptr[v + 1]):
                        nxt[indices[i]] += 1
            t += 1
        if s < 0:
            return -1, 0, None, None
        positions = np.empty((t, n), dtype=np.int64)
        firing = np.empty((t, n), dtype=np.uint8)
        _copy_out(rows, fire, t, n, width, positions, firing)
        return s, t - s, positions, firing
    finally:
        free(rows); free(fire); free(table); free(hashes)


cdef void _copy_out(const int64_t* rows, const uint8_t* fire, Py_ssize_t t,
                    Py_ssize_t n, Py_ssize_t width,
                    int64_t[:, ::1] positions, uint8_t[:, ::1] firing) noexcept:
    cdef Py_ssize_t i, v
    for i in range(t):
        for v in range(n):
            positions[i, v] = rows[i * width + v]
            firing[i, v] = fire[i * n + v]
