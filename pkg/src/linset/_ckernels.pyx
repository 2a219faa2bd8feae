# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see _kernels_py for the reference semantics."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.uint8_t u8


cdef inline i64 _index(i64* v, int n, i64 N, const i32[:, ::1] mul,
                       const i32[::1] inv, const i64[::1] offsets) nogil:
    cdef int j = 0, i
    cdef i64 c, acc = 0, scale = 1
    while j < n and v[j] == 0:
        j += 1
    if j == n:
        return -1
    c = inv[v[j]]
    for i in range(j + 1, n):
        acc += mul[c, v[i]] * scale
        scale *= N
    return offsets[j] + acc


def _offsets(int n, i64 N):
    out = np.zeros(n, dtype=np.int64)
    cdef i64 run = 0
    for j in range(n):
        out[j] = run
        run += N ** (n - 1 - j)
    return out


def combination_keys(basis, scalars, add, mul, inv, N):
    cdef const i64[:, ::1] B = np.ascontiguousarray(basis, dtype=np.int64)
    cdef const i64[::1] S = np.ascontiguousarray(scalars, dtype=np.int64)
    cdef const i32[:, ::1] ADD = add
    cdef const i32[:, ::1] MUL = mul
    cdef const i32[::1] INV = inv
    cdef int k = B.shape[0], n = B.shape[1], q = S.shape[0]
    cdef i64 NN = N
    cdef const i64[::1] offs = _offsets(n, NN)
    cdef i64 total = 1
    for _ in range(k):
        total *= q
    out = np.empty(total - 1, dtype=np.int64)
    cdef i64[::1] O = out
    cdef i64[::1] v = np.zeros(n, dtype=np.int64)
    cdef i64 c, rem
    cdef int j, i, d
    with nogil:
        for c in range(1, total):
            for i in range(n):
                v[i] = 0
            rem = c
            for j in range(k):
                d = rem % q
                rem = rem // q
                if d:
                    for i in range(n):
                        v[i] = ADD[v[i], MUL[S[d], B[j, i]]]
            O[c - 1] = _index(&v[0], n, NN, MUL, INV, offs)
    return out


def lines_through(points, add, mul, inv, neg, N):
    cdef const i64[:, ::1] P = np.ascontiguousarray(points, dtype=np.int64)
    cdef const i32[:, ::1] ADD = add
    cdef const i32[:, ::1] MUL = mul
    cdef const i32[::1] INV = inv
    cdef const i32[::1] NEG = neg
    cdef i64 NN = N
    cdef int m = P.shape[0]
    cdef const i64[::1] offs = _offsets(3, NN)
    out = np.empty((m, NN + 1), dtype=np.int64)
    cdef i64[:, ::1] O = out
    cdef i64 a[3]
    cdef i64 b[3]
    cdef i64 w[3]
    cdef int r, piv, f0, f1, i
    cdef i64 lam
    with nogil:
        for r in range(m):
            piv = 0
            while P[r, piv] == 0:
                piv += 1
            if piv == 0:
                f0 = 1
                f1 = 2
            elif piv == 1:
                f0 = 0
                f1 = 2
            else:
                f0 = 0
                f1 = 1
            for i in range(3):
                a[i] = 0
                b[i] = 0
            a[f0] = 1
            a[piv] = NEG[P[r, f0]]
            b[f1] = 1
            b[piv] = NEG[P[r, f1]]
            O[r, 0] = _index(a, 3, NN, MUL, INV, offs)
            for lam in range(NN):
                for i in range(3):
                    w[i] = ADD[b[i], MUL[lam, a[i]]]
                O[r, lam + 1] = _index(w, 3, NN, MUL, INV, offs)
    return out


cdef i64 _count(int depth, int r, const i64[::1] sizes, const i32[:, ::1] G,
                const u8[::1] monic, i64 g, int status) nogil:
    cdef i64 f, total = 0
    cdef int ns
    if depth == r:
        return 1 if (status == 1 and g == 1) else 0
    for f in range(sizes[depth]):
        if status == 0:
            if f == 0:
                ns = 0
            elif monic[f]:
                ns = 1
            else:
                continue
        else:
            ns = status
        total += _count(depth + 1, r, sizes, G, monic, G[g, f], ns)
    return total


def count_reduced(sizes, gcd, monic):
    cdef const i64[::1] S = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef const i32[:, ::1] G = gcd
    cdef const u8[::1] M = monic
    cdef i64 res
    with nogil:
        res = _count(0, S.shape[0], S, G, M, 0, 0)
    return int(res)
