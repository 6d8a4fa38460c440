"""Hodge series of finite diagonalizable groups.

A group is given spectrally: every element is a vector of eigenvalue
exponents over a common modulus ``Q`` (eigenvalue ``omega_Q ** e``).  The
Hodge series is the average over the group of det(I + y g) / det(I - x g);
its coefficient P[k][p] is the dimension of invariant p-forms with degree-k
polynomial coefficients.

Two engines compute the table of coefficients exactly:

``modular``
    the default; works in several prime fields containing Q-th roots of
    unity and reconstructs the integers by CRT against a hard upper bound.
``cyclotomic``
    exact arithmetic in Z[omega_Q]; slow, kept as an independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .cyclotomic import CycloElem, ring, to_integer
from .errors import InternalInconsistency, PoleAtSample, PrecisionError
from .modroots import RootContext, contexts_for_bound, crt_reconstruct, make_context
from .ztheory import lcm, unit_group


@dataclass(frozen=True)
class SpectralGroup:
    """A finite group presented by the eigenvalue exponents of its elements."""

    Q: int
    n: int
    elements: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.Q < 1:
            raise ValueError("Q must be positive")
        elems = []
        for exps, mult in self.elements:
            exps = tuple(int(e) % self.Q for e in exps)
            if len(exps) != self.n:
                raise ValueError(f"element {exps} does not have {self.n} eigenvalues")
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            elems.append((exps, int(mult)))
        if not elems:
            raise ValueError("a group has at least one element")
        if not any(all(e == 0 for e in exps) for exps, _ in elems):
            raise ValueError("the identity element is missing")
        object.__setattr__(self, "elements", tuple(elems))

    @property
    def order(self) -> int:
        return sum(m for _, m in self.elements)

    def rescaled(self, Q: int) -> "SpectralGroup":
        """The same group with exponents over a multiple ``Q`` of the current modulus."""
        if Q % self.Q:
            raise ValueError(f"{Q} is not a multiple of {self.Q}")
        f = Q // self.Q
        return SpectralGroup(Q, self.n, tuple((tuple(e * f for e in ex), m) for ex, m in self.elements))

    def condensed(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent rows with identical eigenvalue multisets merged, and their weights."""
        exps = np.array([ex for ex, _ in self.elements], dtype=np.int64).reshape(-1, self.n)
        mults = np.array([m for _, m in self.elements], dtype=np.int64)
        exps = np.sort(exps, axis=1)
        uniq, inverse = np.unique(exps, axis=0, return_inverse=True)
        weights = np.bincount(inverse.ravel(), weights=mults, minlength=len(uniq)).astype(np.int64)
        return np.ascontiguousarray(uniq, dtype=np.int64), weights


@dataclass(frozen=True)
class HodgeTable:
    n: int
    Q: int
    kmax: int
    P: tuple

    def __getitem__(self, kp):
        k, p = kp
        if p > self.n or p < 0:
            return 0
        return self.P[k][p]

    def rows(self) -> Iterable[tuple[int, int, int]]:
        for k, row in enumerate(self.P):
            for p, v in enumerate(row):
                yield k, p, v

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.P]


@dataclass(frozen=True)
class HodgeNumerator:
    """Numerator of the Hodge series over (1 - x**Q)**n, as N[k][p] / denominator."""

    n: int
    Q: int
    N: tuple
    denominator: int = 1

    @property
    def x_degree(self) -> int:
        return self.n * (self.Q - 1)

    def expand(self, kmax: int) -> list[list[int]]:
        """Series coefficients up to x**kmax (requires an integral numerator)."""
        if self.denominator != 1:
            raise ValueError("expansion needs an integral numerator")
        # 1/(1 - x^Q)^n = sum_j C(j + n - 1, n - 1) x^(jQ)
        out = [[0] * (self.n + 1) for _ in range(kmax + 1)]
        for k in range(kmax + 1):
            for j in range(k // self.Q + 1):
                src = k - j * self.Q
                if src < len(self.N):
                    w = comb(j + self.n - 1, self.n - 1) if self.n else (1 if j == 0 else 0)
                    if w:
                        for p in range(self.n + 1):
                            out[k][p] += w * self.N[src][p]
        return out


def ambient_bound(n: int, kmax: int) -> int:
    """max_{k<=kmax, p} C(n, p) * C(k + n - 1, n - 1): dimension of all p-forms of degree k."""
    if n == 0:
        return 1
    return comb(n, n // 2) * comb(kmax + n - 1, n - 1)


def _wpow_array(ctx: RootContext) -> np.ndarray:
    return np.array(ctx.powers(), dtype=np.uint64)


def _contexts(Q: int, bound: int, avoid: int) -> list[RootContext]:
    """Contexts whose primes multiply past ``2 * bound`` and none of which divides ``avoid``."""
    out, prod, i = [], 1, 0
    while prod <= 2 * bound:
        ctx = make_context(Q, i)
        i += 1
        if avoid % ctx.p == 0:
            continue
        out.append(ctx)
        prod *= ctx.p
    return out


def _modular_sums(G: SpectralGroup, kmax: int, ctx: RootContext) -> np.ndarray:
    exps, weights = G.condensed()
    return kernels.hodge_accumulate(exps, weights, kmax, ctx.p, _wpow_array(ctx))


def _table_modular(G: SpectralGroup, kmax: int) -> list[list[int]]:
    order = G.order
    B = ambient_bound(G.n, kmax)
    ctxs = _contexts(G.Q, order * B, order)
    residues = [_modular_sums(G, kmax, ctx).tolist() for ctx in ctxs]
    primes = [c.p for c in ctxs]
    out = []
    for k in range(kmax + 1):
        row = []
        for p in range(G.n + 1):
            try:
                S = crt_reconstruct(((r[k][p], pr) for r, pr in zip(residues, primes)), order * B)
            except PrecisionError as exc:
                raise InternalInconsistency(f"coefficient ({k},{p}) is out of range: {exc}") from None
            val, rem = divmod(S, order)
            if rem or val < 0:
                raise InternalInconsistency(
                    f"group average at ({k},{p}) is {S}/{order}; input is not a group")
            row.append(val)
        out.append(row)
    return out


def _table_cyclotomic(G: SpectralGroup, kmax: int) -> list[list[int]]:
    """Each element's product of (1 + lam y)/(1 - lam x) expanded exactly in Z[omega_Q]."""
    Q, n = G.Q, G.n
    R = ring(Q)
    phi = R.phi
    zero = [0] * phi
    total = [[[0] * phi for _ in range(n + 1)] for _ in range(kmax + 1)]
    for exps, mult in G.elements:
        # y-part: elementary symmetric functions of the eigenvalues
        col = [[1] + [0] * (phi - 1)] + [list(zero) for _ in range(n)]
        for i, e in enumerate(exps):
            for p in range(i + 1, 0, -1):
                shifted = R.mul_root(col[p - 1], e)
                col[p] = [a + b for a, b in zip(col[p], shifted)]
        # x-part: divide each column by (1 - lam x) one eigenvalue at a time
        A = [col] + [[list(zero) for _ in range(n + 1)] for _ in range(kmax)]
        for e in exps:
            for k in range(1, kmax + 1):
                prev, cur = A[k - 1], A[k]
                for p in range(n + 1):
                    if any(prev[p]):
                        shifted = R.mul_root(prev[p], e)
                        cur[p] = [a + b for a, b in zip(cur[p], shifted)]
        for k in range(kmax + 1):
            for p in range(n + 1):
                src = A[k][p]
                dst = total[k][p]
                for i in range(phi):
                    dst[i] += mult * src[i]
    order = G.order
    out = []
    for k in range(kmax + 1):
        row = []
        for p in range(n + 1):
            S = to_integer(CycloElem(Q, total[k][p]))
            val, rem = divmod(S, order)
            if rem:
                raise InternalInconsistency(
                    f"group average at ({k},{p}) is {S}/{order}; input is not a group")
            row.append(val)
        out.append(row)
    return out


def hodge_table(G: SpectralGroup, kmax: int, engine: str = "modular") -> HodgeTable:
    """Exact coefficients P[k][p] of the Hodge series for k <= kmax."""
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    if engine == "modular":
        P = _table_modular(G, kmax)
    elif engine == "cyclotomic":
        P = _table_cyclotomic(G, kmax)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return HodgeTable(G.n, G.Q, kmax, tuple(tuple(r) for r in P))


def _numerator_residues(G: SpectralGroup, ctx: RootContext) -> list[list[int]]:
    """sum_g mult * prod_i (1 + lam_i x + ... + (lam_i x)^(Q-1)) (1 + lam_i y), mod p."""
    p, Q, n = ctx.p, G.Q, G.n
    deg = n * (Q - 1)
    w = ctx.powers()
    acc = [[0] * (n + 1) for _ in range(deg + 1)]
    for exps, mult in zip(*G.condensed()):
        X = [1] + [0] * deg
        E = [1] + [0] * n
        top = 0
        for i, e in enumerate(exps):
            lam = w[e]
            for j in range(i + 1, 0, -1):
                E[j] = (E[j] + lam * E[j - 1]) % p
            # multiply by the geometric sum: divide by (1 - lam x), then times (1 - x^Q)
            top += Q - 1
            for k in range(1, top + 1):
                X[k] = (X[k] + lam * X[k - 1]) % p
            for k in range(top, Q - 1, -1):
                X[k] = (X[k] - X[k - Q]) % p
        me = [int(mult) * v % p for v in E]
        for k in range(deg + 1):
            xk = X[k]
            if xk:
                row = acc[k]
                for j in range(n + 1):
                    row[j] += xk * me[j]
    return [[v % p for v in r] for r in acc]


def hodge_numerator(G: SpectralGroup) -> HodgeNumerator:
    """Exact numerator of the Hodge series over the denominator (1 - x**Q)**n."""
    order, n, Q = G.order, G.n, G.Q
    deg = n * (Q - 1)
    bound = order * (2 ** n) * ambient_bound(n, deg)
    ctxs = _contexts(Q, bound, order)
    res = [_numerator_residues(G, c) for c in ctxs]
    primes = [c.p for c in ctxs]
    S = [[crt_reconstruct(((r[k][j], pr) for r, pr in zip(res, primes)), bound)
          for j in range(n + 1)] for k in range(deg + 1)]
    g = order
    for row in S:
        for v in row:
            g = gcd(g, v)
    return HodgeNumerator(n, Q, tuple(tuple(v // g for v in row) for row in S), order // g)


def _common(G: SpectralGroup, H: SpectralGroup) -> tuple[SpectralGroup, SpectralGroup]:
    Q = lcm(G.Q, H.Q)
    return G.rescaled(Q), H.rescaled(Q)


def hodge_equal(G: SpectralGroup, H: SpectralGroup) -> bool:
    """Whether the two Hodge series coincide as formal power series.

    Both series are (numerator)/(1 - x^Q)^n with x-degree at most n(Q - 1), so
    agreement of the tables up to that degree decides equality.  Tables are
    compared prime by prime; the primes multiply past the largest possible
    coefficient, so per-prime agreement is exact agreement.
    """
    if G.n != H.n:
        return False
    G, H = _common(G, H)
    kmax = G.n * (G.Q - 1)
    B = ambient_bound(G.n, kmax)
    for ctx in _contexts(G.Q, B, G.order * H.order):
        sg = _modular_sums(G, kmax, ctx)
        sh = _modular_sums(H, kmax, ctx)
        p = ctx.p
        # P_G = S_G/|G|, P_H = S_H/|H|: compare S_G |H| with S_H |G| mod p
        lhs = (sg.astype(object) * (H.order % p)) % p
        rhs = (sh.astype(object) * (G.order % p)) % p
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _rows_for(q: int, s: Sequence[int], ks: Sequence[int], ctx: RootContext) -> np.ndarray:
    if ctx.q % q:
        raise ValueError(f"context order {ctx.q} is not divisible by {q}")
    scale = ctx.q // q
    k = np.asarray(ks, dtype=np.int64).reshape(-1, 1)
    sv = np.asarray([int(v) for v in s], dtype=np.int64).reshape(1, -1)
    return np.ascontiguousarray(((k * sv) % q) * scale, dtype=np.int64)


def _finish(num, den, p) -> list[int]:
    out = []
    for a, b in zip(num.tolist(), den.tolist()):
        if b == 0:
            raise PoleAtSample("x hits an eigenvalue at a sample point")
        out.append(a * pow(b, -1, p) % p)
    return out


def h_eval_many(q: int, s: Sequence[int], points, ctx: RootContext) -> list[int]:
    """H_{q,s}(x, y) = sum_{k in Z_q} prod_i (y - w^{k s_i})/(x - w^{k s_i}) at several points."""
    rows = _rows_for(q, s, range(q), ctx)
    xs = np.array([pt[0] % ctx.p for pt in points], dtype=np.uint64)
    ys = np.array([pt[1] % ctx.p for pt in points], dtype=np.uint64)
    num, den = kernels.rational_sums(rows, xs, ys, ctx.p, _wpow_array(ctx))
    return _finish(num, den, ctx.p)


def h_eval(q: int, s: Sequence[int], x: int, y: int, ctx: RootContext) -> int:
    return h_eval_many(q, s, [(x, y)], ctx)[0]


def hstar_eval_many(d: int, s: Sequence[int], points, ctx: RootContext) -> list[int]:
    """The part of H with k restricted to the units mod d, using a root of order d."""
    rows = _rows_for(d, s, unit_group(d), ctx)
    xs = np.array([pt[0] % ctx.p for pt in points], dtype=np.uint64)
    ys = np.array([pt[1] % ctx.p for pt in points], dtype=np.uint64)
    num, den = kernels.rational_sums(rows, xs, ys, ctx.p, _wpow_array(ctx))
    return _finish(num, den, ctx.p)


def hstar_eval(d: int, s: Sequence[int], x: int, y: int, ctx: RootContext) -> int:
    return hstar_eval_many(d, s, [(x, y)], ctx)[0]
