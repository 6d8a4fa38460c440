"""Residues, unit groups and divisor utilities."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidModulus, NotInvertible


@dataclass(frozen=True, order=True)
class Residue:
    """An integer class mod ``modulus``, normalized to ``[0, modulus)``."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidModulus(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self):
        return self.value


def _check_modulus(q: int) -> None:
    if q < 1:
        raise InvalidModulus(f"modulus must be positive, got {q}")


def unit_group(q: int) -> list[int]:
    """Residues coprime to ``q`` in ascending order; ``[0]`` for ``q == 1``."""
    _check_modulus(q)
    if q == 1:
        return [0]
    return [k for k in range(1, q) if gcd(k, q) == 1]


def units(q: int) -> list[Residue]:
    return [Residue(k, q) for k in unit_group(q)]


def inverse_mod(b: int, q: int) -> int:
    _check_modulus(q)
    if q == 1:
        return 0
    if gcd(b, q) != 1:
        raise NotInvertible(f"{b} is not invertible mod {q}")
    return pow(b, -1, q)


def mod_quot(a: int, b: int, q: int) -> int:
    """The residue ``c`` with ``c * b == a (mod q)``; ``b`` must be a unit."""
    a, b = int(a), int(b)
    return (a * inverse_mod(b % q, q)) % q


def divisors(q: int) -> list[int]:
    _check_modulus(q)
    small, large = [], []
    d = 1
    while d * d <= q:
        if q % d == 0:
            small.append(d)
            if d * d != q:
                large.append(q // d)
        d += 1
    return small + large[::-1]


def prime_factors(q: int) -> list[int]:
    """Distinct prime factors by trial division."""
    _check_modulus(q)
    out = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            out.append(d)
            while q % d == 0:
                q //= d
        d += 1
    if q > 1:
        out.append(q)
    return out


def euler_phi(q: int) -> int:
    result = q
    for ell in prime_factors(q):
        result -= result // ell
    return result


def reduce_dprime(d: int, beta: int) -> int:
    """``d / gcd(d, beta)``: for every gamma, ``d | beta*gamma`` iff the result divides gamma."""
    _check_modulus(d)
    return d // gcd(d, beta)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
