# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled F_p kernels.  Signatures mirror ``_kernels_py`` exactly.

Arithmetic is Montgomery form with R = 2**64; products are accumulated in
128-bit registers and reduced once per dot product, which needs p < 2**32.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

_P_LIMIT = 2**32


cdef inline uint64_t redc(u128 T, uint64_t p, uint64_t pinv) noexcept nogil:
    # requires T < p * 2**64; result in [0, p)
    cdef uint64_t m = (<uint64_t>T) * pinv
    cdef uint64_t t = <uint64_t>((T + (<u128>m) * p) >> 64)
    if t >= p:
        t -= p
    return t


cdef inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p, uint64_t pinv) noexcept nogil:
    return redc((<u128>a) * b, p, pinv)


cdef inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) noexcept nogil:
    cdef uint64_t s = a + b
    if s >= p:
        s -= p
    return s


cdef inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) noexcept nogil:
    return a - b if a >= b else a + p - b


def _mont_constants(p):
    if p >= _P_LIMIT or p % 2 == 0:
        raise ValueError("compiled kernels need an odd prime below 2**32")
    R = 1 << 64
    pinv = (-pow(p, -1, R)) % R
    return pinv, R % p, (R * R) % p


cdef inline uint64_t to_mont(uint64_t a, uint64_t r2, uint64_t p, uint64_t pinv) noexcept nogil:
    return mulm(a % p, r2, p, pinv)


def hodge_accumulate(const int64_t[:, ::1] exps, const int64_t[::1] mults, int kmax,
                     uint64_t p, const uint64_t[::1] wpow):
    """Residues mod p of sum_g mult_g * [x^k y^j] det(I + y g) / det(I - x g).

    ``exps[g, i]`` indexes ``wpow`` (powers of a root of unity mod p).
    Returns a (kmax + 1, n + 1) uint64 array; no division by the group order.
    """
    cdef Py_ssize_t N = exps.shape[0]
    cdef Py_ssize_t n = exps.shape[1]
    cdef Py_ssize_t Q = wpow.shape[0]
    cdef Py_ssize_t g, i, j, k, l, lmax
    pinv_, one_, r2_ = _mont_constants(p)
    cdef uint64_t pinv = pinv_, one = one_, r2 = r2_
    cdef uint64_t lam, mm, s
    cdef u128 T

    out = np.zeros((kmax + 1, n + 1), dtype=np.uint64)
    cdef uint64_t[:, ::1] res = out
    cdef u128* acc = <u128*> malloc((kmax + 1) * (n + 1) * sizeof(u128))
    cdef uint64_t* wm = <uint64_t*> malloc(Q * sizeof(uint64_t))
    cdef uint64_t* b = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* e = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* me = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* c = <uint64_t*> malloc((kmax + 1) * sizeof(uint64_t))
    if acc == NULL or wm == NULL or b == NULL or e == NULL or me == NULL or c == NULL:
        free(acc); free(wm); free(b); free(e); free(me); free(c)
        raise MemoryError()
    try:
        with nogil:
            for i in range((kmax + 1) * (n + 1)):
                acc[i] = 0
            for i in range(Q):
                wm[i] = to_mont(wpow[i], r2, p, pinv)
            for g in range(N):
                b[0] = one
                e[0] = one
                for j in range(1, n + 1):
                    b[j] = 0
                    e[j] = 0
                for i in range(n):
                    lam = wm[exps[g, i]]
                    for j in range(i + 1, 0, -1):
                        s = mulm(lam, b[j - 1], p, pinv)
                        b[j] = subm(b[j], s, p)
                        s = mulm(lam, e[j - 1], p, pinv)
                        e[j] = addm(e[j], s, p)
                mm = to_mont(<uint64_t>mults[g], r2, p, pinv)
                for j in range(n + 1):
                    me[j] = mulm(mm, e[j], p, pinv)
                c[0] = one
                for j in range(n + 1):
                    acc[j] += (<u128>one) * me[j]
                for k in range(1, kmax + 1):
                    T = 0
                    lmax = k if k < n else n
                    for l in range(1, lmax + 1):
                        T += (<u128>b[l]) * c[k - l]
                    s = redc(T, p, pinv)
                    c[k] = 0 if s == 0 else p - s
                    for j in range(n + 1):
                        acc[k * (n + 1) + j] += (<u128>c[k]) * me[j]
            for k in range(kmax + 1):
                for j in range(n + 1):
                    s = redc(acc[k * (n + 1) + j] % ((<u128>p) << 64), p, pinv)
                    res[k, j] = redc(<u128>s, p, pinv)
    finally:
        free(acc); free(wm); free(b); free(e); free(me); free(c)
    return out


def rational_sums(const int64_t[:, ::1] exps, const uint64_t[::1] xs, const uint64_t[::1] ys,
                  uint64_t p, const uint64_t[::1] wpow):
    """For each point, sum over rows of prod_i (y - w^e_i) / (x - w^e_i), as a fraction.

    Returns ``(num, den)`` uint64 arrays; ``den == 0`` marks a pole.
    """
    cdef Py_ssize_t K = exps.shape[0]
    cdef Py_ssize_t n = exps.shape[1]
    cdef Py_ssize_t P = xs.shape[0]
    cdef Py_ssize_t Q = wpow.shape[0]
    cdef Py_ssize_t r, i, pt
    pinv_, one_, r2_ = _mont_constants(p)
    cdef uint64_t pinv = pinv_, one = one_, r2 = r2_
    cdef uint64_t x, y, lam, Nk, Dk, num, den

    num_out = np.zeros(P, dtype=np.uint64)
    den_out = np.zeros(P, dtype=np.uint64)
    cdef uint64_t[::1] nv = num_out
    cdef uint64_t[::1] dv = den_out
    cdef uint64_t* wm = <uint64_t*> malloc(Q * sizeof(uint64_t))
    if wm == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(Q):
                wm[i] = to_mont(wpow[i], r2, p, pinv)
            for pt in range(P):
                x = to_mont(xs[pt], r2, p, pinv)
                y = to_mont(ys[pt], r2, p, pinv)
                num = 0
                den = one
                for r in range(K):
                    Nk = one
                    Dk = one
                    for i in range(n):
                        lam = wm[exps[r, i]]
                        Nk = mulm(Nk, subm(y, lam, p), p, pinv)
                        Dk = mulm(Dk, subm(x, lam, p), p, pinv)
                    num = addm(mulm(num, Dk, p, pinv), mulm(Nk, den, p, pinv), p)
                    den = mulm(den, Dk, p, pinv)
                nv[pt] = redc(<u128>num, p, pinv)
                dv[pt] = redc(<u128>den, p, pinv)
    finally:
        free(wm)
    return num_out, den_out
