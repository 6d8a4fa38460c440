"""Exact verification of the rational-function identities behind the LMR theorem.

Symbolic checks clear denominators and compare sparse integer polynomials;
randomized checks evaluate the original rational expressions at random
points of a prime field.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import NotUnivalent
from .hodge import hstar_eval
from .lens import dub
from .lmr import AVector, eqmd
from .modroots import RootContext
from .ztheory import divisors, mod_quot, reduce_dprime, unit_group

FIELD_PRIME = 2**61 - 1
DEFAULT_TRIALS = 10


class MultiPoly:
    """Sparse polynomial with integer coefficients over named variables.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms=None):
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, names, c: int) -> "MultiPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name: str) -> "MultiPoly":
        names = tuple(names)
        e = [0] * len(names)
        e[names.index(name)] = 1
        return cls(names, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, int):
            return MultiPoly.const(self.names, other)
        if other.names != self.names:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.names, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def degree_in(self, name: str) -> int:
        i = self.names.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def leading_in(self, name: str) -> "MultiPoly":
        """Coefficient of the top power of ``name``, as a polynomial in the same ring."""
        i = self.names.index(name)
        top = self.degree_in(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == top:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly(self.names, out)

    def evaluate_mod(self, point: dict, p: int) -> int:
        vals = [point[n] % p for n in self.names]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * pow(v, k, p) % p
            acc += t
        return acc % p

    def __repr__(self):
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.names, e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class RationalFn:
    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def equals(self, other: "RationalFn") -> bool:
        return self.num * other.den == other.num * self.den


def _prod(polys, names):
    out = MultiPoly.const(names, 1)
    for f in polys:
        out = out * f
    return out


def _ring_xuv(m: int):
    names = tuple(f"x{i + 1}" for i in range(m)) + ("u", "v")
    X = [MultiPoly.var(names, f"x{i + 1}") for i in range(m)]
    return names, X, MultiPoly.var(names, "u"), MultiPoly.var(names, "v")


def _main_parts(m: int):
    """Common denominator V*W and the cleared numerators of F and G.

    V = prod_{a<b} (x_a - x_b), W = prod_{a != b} (x_b - x_a v).  Every term
    of F and G has a denominator dividing V*W up to sign.
    """
    names, X, u, v = _ring_xuv(m)
    pairs = [(a, b) for a in range(m) for b in range(m) if a != b]
    lin_V = {(a, b): X[a] - X[b] for a in range(m) for b in range(a + 1, m)}
    lin_W = {(a, b): X[b] - X[a] * v for a, b in pairs}
    D = _prod(lin_V.values(), names) * _prod(lin_W.values(), names)
    F = MultiPoly.const(names, 0)
    G = MultiPoly.const(names, 0)
    for i in range(m):
        others = [j for j in range(m) if j != i]
        rest_V = _prod([f for (a, b), f in lin_V.items() if i not in (a, b)], names)
        # F_i: denominators (x_i - x_j)(x_j - x_i v)
        top = _prod([(X[i] * u - X[j]) * (X[j] * u - X[i] * v) for j in others], names)
        rest_W = _prod([f for (a, b), f in lin_W.items() if a != i], names)
        F = F + top * rest_V * rest_W * (-1) ** i
        # G_i: denominators (x_j - x_i)(x_i - x_j v)
        top = _prod([(X[j] * u - X[i]) * (X[i] * u - X[j] * v) for j in others], names)
        rest_W = _prod([f for (a, b), f in lin_W.items() if b != i], names)
        G = G + top * rest_V * rest_W * (-1) ** (i + m - 1)
    return names, D, F, G


def build_F(m: int) -> RationalFn:
    if m < 1:
        raise ValueError("m must be positive")
    _, D, F, _ = _main_parts(m)
    return RationalFn(F, D)


def build_G(m: int) -> RationalFn:
    if m < 1:
        raise ValueError("m must be positive")
    _, D, _, G = _main_parts(m)
    return RationalFn(G, D)


def _rng(seed):
    return random.Random(seed)


def eval_F(xs, u, v, p=FIELD_PRIME) -> int:
    """F((x_1..x_m), u, v) straight from its definition; ZeroDivisionError at a pole."""
    m = len(xs)
    total = 0
    for i in range(m):
        num = den = 1
        for j in range(m):
            if j != i:
                num = num * (xs[i] * u - xs[j]) % p * (xs[j] * u - xs[i] * v) % p
                den = den * (xs[i] - xs[j]) % p * (xs[j] - xs[i] * v) % p
        if den == 0:
            raise ZeroDivisionError("pole of F")
        total += num * pow(den, -1, p)
    return total % p


def eval_G(xs, u, v, p=FIELD_PRIME) -> int:
    """F at the reciprocals of the x's."""
    if any(x % p == 0 for x in xs):
        raise ZeroDivisionError("x = 0")
    return eval_F([pow(x, -1, p) for x in xs], u, v, p)


def verify_main_identity(m: int, mode: str = "symbolic", trials: int = DEFAULT_TRIALS,
                         seed: int = 0) -> bool:
    """F = G: symbolically over the shared denominator, or at random field points."""
    if m < 1:
        raise ValueError("m must be positive")
    if mode == "symbolic":
        _, _, F, G = _main_parts(m)
        return F == G
    if mode == "randomized":
        rng = _rng(seed)
        p = FIELD_PRIME
        done = 0
        while done < trials:
            xs = [rng.randrange(1, p) for _ in range(m)]
            u, v = rng.randrange(p), rng.randrange(p)
            try:
                lhs, rhs = eval_F(xs, u, v), eval_G(xs, u, v)
            except ZeroDivisionError:
                continue
            if lhs != rhs:
                return False
            done += 1
        return True
    raise ValueError(f"unknown mode {mode!r}")


def main_identity_limit_holds(m: int) -> bool:
    """Top v-coefficient of F's cleared numerator equals (1 + u + ... + u^{m-1}) times D's."""
    names, D, F, _ = _main_parts(m)
    u = MultiPoly.var(names, "u")
    geo = _prod([], names) * 0
    for k in range(m):
        geo = geo + u ** k
    if F.degree_in("v") != D.degree_in("v"):
        return False
    return F.leading_in("v") == geo * D.leading_in("v")


def _subsidiary_parts(m: int):
    names = tuple(f"x{i + 1}" for i in range(m)) + ("u",)
    X = [MultiPoly.var(names, f"x{i + 1}") for i in range(m)]
    u = MultiPoly.var(names, "u")
    lin_V = {(a, b): X[a] - X[b] for a in range(m) for b in range(a + 1, m)}
    V = _prod(lin_V.values(), names)
    f = MultiPoly.const(names, 0)
    for i in range(m):
        top = _prod([X[i] * u - X[j] for j in range(m) if j != i], names)
        rest = _prod([g for (a, b), g in lin_V.items() if i not in (a, b)], names)
        f = f + top * rest * (-1) ** i
    geo = MultiPoly.const(names, 0)
    for k in range(m):
        geo = geo + u ** k
    return f, geo, V


def subsidiary_residual(m: int) -> MultiPoly:
    """Cleared numerator of f minus (1 + ... + u^{m-1}) times the Vandermonde product."""
    f, geo, V = _subsidiary_parts(m)
    return f - geo * V


def verify_subsidiary(m: int, mode: str = "symbolic", trials: int = DEFAULT_TRIALS,
                      seed: int = 0) -> bool:
    """sum_i prod_{j != i} (x_i u - x_j)/(x_i - x_j) = 1 + u + ... + u^{m-1}."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if mode == "symbolic":
        return subsidiary_residual(m).is_zero()
    if mode == "randomized":
        rng = _rng(seed)
        p = FIELD_PRIME
        done = 0
        while done < trials:
            xs = [rng.randrange(p) for _ in range(m)]
            u = rng.randrange(p)
            if len(set(xs)) < m:
                continue
            total = 0
            for i in range(m):
                num = den = 1
                for j in range(m):
                    if j != i:
                        num = num * (xs[i] * u - xs[j]) % p
                        den = den * (xs[i] - xs[j]) % p
                total += num * pow(den, -1, p)
            if total % p != sum(pow(u, k, p) for k in range(m)) % p:
                return False
            done += 1
        return True
    raise ValueError(f"unknown mode {mode!r}")


def verify_partial_fraction(n: int, mode: str = "symbolic", trials: int = DEFAULT_TRIALS,
                            seed: int = 0) -> bool:
    """prod_i 1/(x - l_i) = sum_i 1/(x - l_i) prod_{j != i} 1/(l_i - l_j)."""
    if n < 1:
        raise ValueError("n must be positive")
    if mode == "symbolic":
        names = ("x",) + tuple(f"l{i + 1}" for i in range(n))
        x = MultiPoly.var(names, "x")
        L = [MultiPoly.var(names, f"l{i + 1}") for i in range(n)]
        diffs = {(a, b): L[a] - L[b] for a in range(n) for b in range(n) if a != b}
        # common denominator prod_i (x - l_i) * prod_{a != b} (l_a - l_b)
        lhs = _prod(diffs.values(), names)
        rhs = MultiPoly.const(names, 0)
        for i in range(n):
            others = _prod([x - L[k] for k in range(n) if k != i], names)
            rest = _prod([f for (a, b), f in diffs.items() if a != i], names)
            rhs = rhs + others * rest
        return lhs == rhs
    if mode == "randomized":
        rng = _rng(seed)
        p = FIELD_PRIME
        done = 0
        while done < trials:
            x = rng.randrange(p)
            lam = [rng.randrange(p) for _ in range(n)]
            if len(set(lam)) < n or x in lam:
                continue
            lhs = 1
            for l in lam:
                lhs = lhs * pow(x - l, -1, p) % p
            rhs = 0
            for i in range(n):
                t = pow(x - lam[i], -1, p)
                for j in range(n):
                    if j != i:
                        t = t * pow(lam[i] - lam[j], -1, p) % p
                rhs += t
            if lhs != rhs % p:
                return False
            done += 1
        return True
    raise ValueError(f"unknown mode {mode!r}")


# -- links between H*, the regrouped sums Y, and F -------------------------

def _lmr_vectors(v: AVector):
    q, rt = v.q, v.r * v.t
    s = [(rt * ai + 1) % q for ai in v.a]
    s_neg = [(-rt * ai + 1) % q for ai in v.a]
    return q, rt, s, s_neg


def is_univalent_mod(s_full: Sequence[int], d: int) -> bool:
    """Entries pairwise distinct and invertible mod d."""
    from math import gcd
    red = [x % d for x in s_full]
    return len(set(red)) == len(red) and all(gcd(x, d) == 1 for x in red)


def y_sum(d: int, s_full: Sequence[int], x: int, y: int, w: int, p: int) -> int:
    """(y - w)/(x - w) * sum_i prod_{j != i} (y - w^{s_j/s_i})/(w - w^{s_j/s_i}), quotients mod d."""
    total = 0
    for i, si in enumerate(s_full):
        num = den = 1
        for j, sj in enumerate(s_full):
            if j == i:
                continue
            wq = pow(w, mod_quot(sj, si, d), p)
            num = num * (y - wq) % p
            den = den * (w - wq) % p
        total += num * pow(den, -1, p)
    return (y - w) * pow(x - w, -1, p) * total % p


def y_prefactor(x: int, y: int, w: int, p: int) -> int:
    """2 (y - w)(y - 1/w) / ((x - w)(w - 1/w)): the factor multiplying F in Y_{d, s~}."""
    wi = pow(w, -1, p)
    return 2 * (y - w) * (y - wi) % p * pow((x - w) * (w - wi) % p, -1, p) % p


def _random_point(rng, d: int, p: int):
    while True:
        x, y = rng.randrange(2, p), rng.randrange(p)
        if pow(x, d, p) != 1:
            return x, y


def verify_magic_substitution(v: AVector, d: int, ctx: RootContext,
                              trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """Check the quotient congruence and the chain H* = sum_l Y(omega^l) = sum_l pref * F.

    Requires the doubled vector dub(rta + 1) to be univalent mod d.
    """
    q, rt, s, s_neg = _lmr_vectors(v)
    if q % d:
        raise ValueError(f"{d} does not divide {q}")
    full, full_neg = dub(s, q), dub(s_neg, q)
    if not is_univalent_mod(full, d):
        raise NotUnivalent(f"dub(rta+1) is not univalent mod {d}")
    # quotient congruence s_j / s_i == rt (a_j - a_i) + 1 mod d
    for i, si in enumerate(s):
        for j, sj in enumerate(s):
            if mod_quot(sj, si, d) != (rt * (v.a[j] - v.a[i]) + 1) % d:
                return False
    p = ctx.p
    wd = ctx.sub_root(d)
    rng = _rng(seed)
    for _ in range(trials):
        x, y = _random_point(rng, d, p)
        total = 0
        for l in unit_group(d):
            w = pow(wd, l, p)
            xs = [pow(w, (rt * ai) % d, p) for ai in v.a]
            u, vv = y * pow(w, -1, p) % p, pow(w, -2, p)
            Y = y_sum(d, full, x, y, w, p)
            pref = y_prefactor(x, y, w, p)
            if Y != pref * eval_F(xs, u, vv, p) % p:
                return False
            if y_sum(d, full_neg, x, y, w, p) != pref * eval_G(xs, u, vv, p) % p:
                return False
            total += Y
        hstar = hstar_eval(d, full, x, y, ctx)
        if hstar != total % p:
            return False
        if hstar != hstar_eval(d, full_neg, x, y, ctx):
            return False
    return True


def verify_nonunivalent_branch(v: AVector, d: int, ctx: RootContext,
                               trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """For d where dub(rta + 1) collides mod d: a reverses mod d' = d/gcd(d, rt), the unit
    rtc + 1 carries dub(rta + 1) onto dub(-rta + 1) mod d, and the H* sums agree."""
    q, rt, s, s_neg = _lmr_vectors(v)
    if q % d:
        raise ValueError(f"{d} does not divide {q}")
    full, full_neg = dub(s, q), dub(s_neg, q)
    dp = reduce_dprime(d, rt)
    c = eqmd(v.a, [-ai for ai in v.a], dp)
    if c is None:
        return False
    unit = rt * c + 1
    if sorted(unit * x % d for x in full) != sorted(x % d for x in full_neg):
        return False
    rng = _rng(seed)
    for _ in range(trials):
        x, y = _random_point(rng, d, ctx.p)
        if hstar_eval(d, full, x, y, ctx) != hstar_eval(d, full_neg, x, y, ctx):
            return False
    return True


def verify_divisor_branches(v: AVector, ctx: RootContext, trials: int = DEFAULT_TRIALS,
                            seed: int = 0) -> dict[int, tuple[str, bool]]:
    """Per divisor d of r^2 t: which branch of the argument applies, and whether it checks out."""
    q, _, s, _ = _lmr_vectors(v)
    out = {}
    for d in divisors(q):
        if is_univalent_mod(dub(s, q), d):
            out[d] = ("univalent", verify_magic_substitution(v, d, ctx, trials, seed))
        else:
            out[d] = ("collision", verify_nonunivalent_branch(v, d, ctx, trials, seed))
    return out
