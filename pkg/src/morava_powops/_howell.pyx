# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Howell form over Z/p^N for moduli below 2**31."""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _modinv(i64 a, i64 q):
    cdef i64 t = 0, new_t = 1, r = q, new_r = a, quot, tmp
    while new_r != 0:
        quot = r // new_r
        tmp = t - quot * new_t
        t = new_t
        new_t = tmp
        tmp = r - quot * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += q
    return t


def howell_form(rows, i64 p, int N, Py_ssize_t ncols):
    cdef i64 q = 1
    cdef int t
    for t in range(N):
        q *= p
    cdef Py_ssize_t m = len(rows)
    buf = np.zeros((m + ncols, ncols), dtype=np.int64)
    cdef i64[:, ::1] A = buf
    cdef Py_ssize_t i, j, c, best, nrows = 0
    for i in range(m):
        row = rows[i]
        for j in range(ncols):
            A[nrows, j] = row[j] % q
        nrows += 1

    alive_arr = np.ones(m + ncols, dtype=np.int8)
    cdef cnp.int8_t[::1] alive = alive_arr
    piv_rows = []
    piv_cols = []
    piv_exps = []
    cdef int v, bv
    cdef i64 e, f, pv, uinv, x, scale
    for c in range(ncols):
        best = -1
        bv = N
        for i in range(nrows):
            if alive[i] and A[i, c] != 0:
                e = A[i, c]
                v = 0
                while e % p == 0:
                    e //= p
                    v += 1
                if v < bv:
                    bv = v
                    best = i
                    if v == 0:
                        break
        if best < 0:
            continue
        alive[best] = 0
        pv = 1
        for t in range(bv):
            pv *= p
        uinv = _modinv((A[best, c] // pv) % q, q)
        for j in range(c, ncols):
            A[best, j] = (A[best, j] * uinv) % q
        for i in range(nrows):
            if alive[i]:
                e = A[i, c]
                if e != 0:
                    f = e // pv
                    for j in range(c, ncols):
                        A[i, j] = (A[i, j] + (q - f) * A[best, j]) % q
        if bv > 0:
            scale = q // pv
            x = 0
            for j in range(c, ncols):
                A[nrows, j] = (A[best, j] * scale) % q
                x |= A[nrows, j]
            if x != 0:
                alive[nrows] = 1
                nrows += 1
            else:
                for j in range(c, ncols):
                    A[nrows, j] = 0
        piv_rows.append(best)
        piv_cols.append(c)
        piv_exps.append(bv)

    cdef Py_ssize_t k, jj, r_k, r_j, npiv = len(piv_rows)
    for k in range(npiv):
        r_k = piv_rows[k]
        c = piv_cols[k]
        pv = 1
        for t in range(piv_exps[k]):
            pv *= p
        for jj in range(k):
            r_j = piv_rows[jj]
            e = A[r_j, c]
            if e >= pv:
                f = e // pv
                for j in range(c, ncols):
                    A[r_j, j] = (A[r_j, j] + (q - f) * A[r_k, j]) % q

    return [(piv_cols[k], piv_exps[k], buf[piv_rows[k]].tolist()) for k in range(npiv)]
