"""Cyclic diagonal groups L(q, s) and their real forms L+-(q, s)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import gcd
from typing import Iterator, Optional, Union

from .errors import NonFaithfulPresentation, NotALensGroup
from .hodge import SpectralGroup
from .ztheory import _check_modulus, inverse_mod, unit_group


def dub(s, q: int) -> tuple[int, ...]:
    """(s1, -s1, ..., sm, -sm) reduced mod q."""
    out = []
    for v in s:
        out += [v % q, -v % q]
    return tuple(out)


def fold(v: int, q: int) -> int:
    v %= q
    return min(v, q - v) if v else 0


@dataclass(frozen=True)
class LensGroup:
    """L(q, s): generated by diag(omega_q ** s).  ``s`` is a multiset, stored sorted."""

    q: int
    s: tuple

    def __post_init__(self):
        _check_modulus(self.q)
        object.__setattr__(self, "s", tuple(sorted(int(v) % self.q for v in self.s)))

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def content(self) -> int:
        """gcd(q, s_1, ..., s_n); the group has order q exactly when this is 1."""
        g = self.q
        for v in self.s:
            g = gcd(g, v)
        return g

    def __str__(self):
        return f"L:{self.q}:{','.join(map(str, self.s))}"


@dataclass(frozen=True)
class PlusMinusLens:
    """L+-(q, s) = L(q, (s1, -s1, ..., sm, -sm))."""

    q: int
    s: tuple

    def __post_init__(self):
        _check_modulus(self.q)
        object.__setattr__(self, "s", tuple(sorted(int(v) % self.q for v in self.s)))

    @property
    def m(self) -> int:
        return len(self.s)

    def expanded(self) -> LensGroup:
        return LensGroup(self.q, dub(self.s, self.q))

    def __str__(self):
        return f"Lpm:{self.q}:{','.join(map(str, self.s))}"


AnyLens = Union[LensGroup, PlusMinusLens]


def as_lens(L: AnyLens) -> LensGroup:
    return L.expanded() if isinstance(L, PlusMinusLens) else L


def to_spectral(L: AnyLens) -> SpectralGroup:
    """The q elements diag(omega_q ** (k s)), k in Z_q."""
    L = as_lens(L)
    if L.content != 1:
        raise NonFaithfulPresentation(
            f"gcd(q, s) = {L.content} for {L}; divide it out of q and s first")
    q = L.q
    return SpectralGroup(q, L.n, tuple((tuple(k * v % q for v in L.s), 1) for k in range(q)))


def conjugacy_witness(L1: AnyLens, L2: AnyLens) -> Optional[int]:
    """Smallest unit u with u * s1 == s2 as multisets mod q, or None."""
    L1, L2 = as_lens(L1), as_lens(L2)
    if L1.q != L2.q or L1.n != L2.n:
        return None
    q = L1.q
    target = L2.s
    for u in unit_group(q):
        if tuple(sorted(u * v % q for v in L1.s)) == target:
            return u
    return None


def conjugate(L1: AnyLens, L2: AnyLens) -> bool:
    return conjugacy_witness(L1, L2) is not None


def _folded(s, u: int, q: int) -> tuple[int, ...]:
    return tuple(sorted(fold(u * v, q) for v in s))


def canonical_form(L: PlusMinusLens) -> tuple[int, ...]:
    """Lexicographically least sorted folded tuple over all unit multiples of s."""
    q, s = L.q, L.s
    if q > 1 and any(gcd(v, q) != 1 for v in s):
        raise NotALensGroup(f"{L} has an entry that is not a unit mod {q}")
    if q <= 2:
        return min(_folded(s, u, q) for u in unit_group(q))
    # the least tuple starts with 1, so u must send some entry to +-1
    return min(_folded(s, inverse_mod(v, q), q) for v in s)


def canonical_lens(L: LensGroup) -> tuple[int, ...]:
    """Lexicographically least sorted tuple over unit multiples (no folding)."""
    q = L.q
    return min(tuple(sorted(u * v % q for v in L.s)) for u in unit_group(q))


def fixed_point_free(L: AnyLens) -> bool:
    """No non-identity element has eigenvalue 1."""
    L = as_lens(L)
    q = L.q
    if q == 1:
        return True
    return all(gcd(v, q) == 1 for v in L.s)


def folded_units(q: int) -> list[int]:
    return sorted({fold(u, q) for u in unit_group(q)})


def _is_canonical(t: tuple[int, ...], q: int) -> bool:
    for v in t:
        if _folded(t, inverse_mod(v, q), q) < t:
            return False
    return True


def enumerate_pm(q: int, m: int, distinct: bool = True) -> Iterator[tuple[int, ...]]:
    """One canonical tuple per conjugacy class of L+-(q, s) with unit entries, in lex order."""
    _check_modulus(q)
    if m < 1:
        raise ValueError("m must be positive")
    F = folded_units(q)
    if q <= 2:
        # F is [0] or [1]; a single class if it fits
        if m == 1 or not distinct:
            yield (F[0],) * m
        return
    rest = F[1:] if distinct else F
    choose = combinations if distinct else combinations_with_replacement
    for tail in choose(rest, m - 1):
        t = (1,) + tail
        if _is_canonical(t, q):
            yield t
