"""NumPy implementations of the enumeration kernels.

Used when the compiled ``_ckernels`` extension is unavailable or when
``LINSET_PURE_PYTHON=1``. Semantics and output order match the extension
exactly.
"""

from __future__ import annotations

import numpy as np


def _offsets(n: int, N: int) -> np.ndarray:
    sizes = np.array([N ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    return np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64)


def normalized_index(V: np.ndarray, mul: np.ndarray, inv: np.ndarray, N: int) -> np.ndarray:
    """Compact index of <v> for each row v of V (see projective.point_index); -1 for zero rows."""
    V = np.asarray(V, dtype=np.int64)
    m, n = V.shape
    piv = (V != 0).argmax(axis=1)
    lead = V[np.arange(m), piv]
    W = mul[inv[lead][:, None], V].astype(np.int64)
    exps = np.arange(n)[None, :] - piv[:, None] - 1
    powers = np.where(exps >= 0, N ** np.clip(exps, 0, None), 0).astype(np.int64)
    out = _offsets(n, N)[piv] + (W * powers).sum(axis=1)
    out[~V.any(axis=1)] = -1
    return out


def combination_keys(basis, scalars, add, mul, inv, N):
    """Indices of the points <sum_j c_j b_j> for every nonzero c in F_q^k.

    Combination number c = sum(d_j q^j) with c_j = scalars[d_j]; entry c-1 of
    the result belongs to combination c.
    """
    basis = np.asarray(basis, dtype=np.int64)
    scalars = np.asarray(scalars, dtype=np.int64)
    k, n = basis.shape
    V = np.zeros((1, n), dtype=np.int64)
    for j in range(k):
        S = mul[scalars[:, None], basis[j][None, :]].astype(np.int64)
        V = add[S[:, None, :], V[None, :, :]].reshape(-1, n).astype(np.int64)
    return normalized_index(V[1:], mul, inv, N)


def lines_through(points, add, mul, inv, neg, N):
    """For normalized points of PG(2, N), the indices of the N+1 lines through each.

    Column 0 is <a>, column 1 + x is <b + x a>, where a, b span the dual
    complement of the point.
    """
    P = np.asarray(points, dtype=np.int64)
    m = P.shape[0]
    piv = (P != 0).argmax(axis=1)
    free = np.array([[1, 2], [0, 2], [0, 1]])[piv]
    rows = np.arange(m)
    A = np.zeros((m, 3), dtype=np.int64)
    B = np.zeros((m, 3), dtype=np.int64)
    A[rows, free[:, 0]] = 1
    A[rows, piv] = neg[P[rows, free[:, 0]]]
    B[rows, free[:, 1]] = 1
    B[rows, piv] = neg[P[rows, free[:, 1]]]
    lam = np.arange(N, dtype=np.int64)
    L = add[B[:, None, :], mul[lam[None, :, None], A[:, None, :]]].astype(np.int64)
    allv = np.concatenate((A[:, None, :], L), axis=1).reshape(-1, 3)
    return normalized_index(allv, mul, inv, N).reshape(m, N + 1)


def count_reduced(sizes, gcd, monic):
    """Number of index tuples (f_1..f_r), f_i < sizes[i], in reduced form."""
    sizes = [int(s) for s in sizes]
    total = 0
    for f0 in range(sizes[0]):
        if f0 and not monic[f0]:
            continue
        g = np.array([f0], dtype=np.int64)
        status = np.array([1 if f0 else 0], dtype=np.int8)
        for s in sizes[1:]:
            f = np.arange(s)
            g2 = gcd[g[:, None], f[None, :]].ravel()
            fresh = np.where(f == 0, 0, np.where(monic[f] == 1, 1, 2)).astype(np.int8)
            st = np.where(status[:, None] == 0, fresh[None, :], status[:, None]).ravel()
            keep = st != 2
            g, status = g2[keep], st[keep]
        total += int(np.count_nonzero((status == 1) & (g == 1)))
    return total
