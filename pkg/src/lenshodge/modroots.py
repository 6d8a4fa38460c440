"""Roots of unity in prime fields and deterministic CRT reconstruction.

A :class:`RootContext` is a prime ``p`` with ``q | p - 1`` and an element
``w`` of exact multiplicative order ``q``.  Sending ``omega_q -> w`` is a ring
map Z[omega_q] -> F_p, so exact integer quantities computed in Z[omega_q] can
be recovered from their images in enough such fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

from .errors import ContextExhausted, PrecisionError
from .ztheory import _check_modulus, prime_factors

DEFAULT_FLOOR = 2**31
MAX_PRIME = 2**62
_MAX_STEPS = 10**7


@dataclass(frozen=True)
class RootContext:
    p: int
    q: int
    w: int

    def __post_init__(self):
        if not has_exact_order(self.w, self.q, self.p):
            raise ValueError(f"{self.w} does not have order {self.q} mod {self.p}")

    def root(self, e: int) -> int:
        """w ** e in F_p."""
        return pow(self.w, e % self.q, self.p)

    def sub_root(self, d: int) -> int:
        """An element of exact order ``d`` (requires ``d | q``)."""
        if self.q % d:
            raise ValueError(f"{d} does not divide context order {self.q}")
        return pow(self.w, self.q // d, self.p)

    def powers(self) -> list[int]:
        out = [1] * self.q
        for i in range(1, self.q):
            out[i] = out[i - 1] * self.w % self.p
        return out


def has_exact_order(w: int, q: int, p: int) -> bool:
    if pow(w, q, p) != 1:
        return False
    return all(pow(w, q // ell, p) != 1 for ell in prime_factors(q)) if q > 1 else True


@lru_cache(maxsize=4096)
def make_context(q: int, index: int = 0, floor: int = DEFAULT_FLOOR) -> RootContext:
    """The ``index``-th smallest prime ``p > floor`` with ``p == 1 (mod q)``, with its root.

    ``w = g**((p-1)/q)`` for the smallest ``g >= 2`` giving exact order ``q``.
    """
    _check_modulus(q)
    if index < 0:
        raise ValueError("index must be non-negative")
    p = floor + 1
    p += (1 - p) % q
    if q % 2 == 1 and p % 2 == 0:
        p += q
    step = q if q % 2 == 0 else 2 * q
    seen = -1
    for _ in range(_MAX_STEPS):
        if p > MAX_PRIME:
            break
        if isprime(p):
            seen += 1
            if seen == index:
                return RootContext(p, q, _root_of_order(q, p))
        p += step
    raise ContextExhausted(f"no prime found for q={q}, index={index}")


def _root_of_order(q: int, p: int) -> int:
    e = (p - 1) // q
    for g in range(2, p):
        w = pow(g, e, p)
        if has_exact_order(w, q, p):
            return w
    if q == 1:
        return 1
    raise ContextExhausted(f"no element of order {q} mod {p}")


def contexts_for_bound(q: int, bound: int, floor: int = DEFAULT_FLOOR) -> list[RootContext]:
    """Fewest consecutive contexts whose prime product exceeds ``2 * bound``."""
    out, prod, i = [], 1, 0
    while prod <= 2 * bound:
        ctx = make_context(q, i, floor)
        out.append(ctx)
        prod *= ctx.p
        i += 1
    return out


def crt_reconstruct(residues, bound: int) -> int:
    """The unique ``x`` with ``|x| <= bound`` and ``x == r (mod p)`` for each ``(r, p)``."""
    residues = list(residues)
    M = 1
    for _, p in residues:
        M *= p
    if M <= 2 * bound:
        raise PrecisionError(f"modulus product {M} does not exceed 2*{bound}")
    x = 0
    for r, p in residues:
        Mi = M // p
        x += r * Mi * pow(Mi, -1, p)
    x %= M
    if x > M // 2:
        x -= M
    if abs(x) > bound:
        raise PrecisionError(f"reconstructed {x} exceeds bound {bound}")
    return x
