"""Exact arithmetic in Z[omega_q], represented as Z[t] / Phi_q(t).

Elements are canonical coefficient vectors of length phi(q), so equality is
coefficient equality.  This is the slow, trusted engine used to cross-check
the modular one.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import ModulusMismatch, NotAnInteger
from .ztheory import _check_modulus, divisors


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact_monic(num, den):
    """Quotient of ``num`` by the monic ``den``; raises if the remainder is nonzero."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_poly(q: int) -> tuple[int, ...]:
    num = [-1] + [0] * (q - 1) + [1]
    den = [1]
    for d in divisors(q)[:-1]:
        den = _poly_mul(den, _cyclotomic_poly(d))
    return tuple(_poly_divexact_monic(num, den))


def cyclotomic_poly(q: int) -> list[int]:
    """Coefficients of Phi_q, ascending degree."""
    _check_modulus(q)
    return list(_cyclotomic_poly(q))


class _Ring:
    """Per-modulus data: Phi_q and the reduced forms of t^j for 0 <= j < max(q, 2 phi - 1)."""

    def __init__(self, q: int):
        self.q = q
        self.poly = _cyclotomic_poly(q)
        self.phi = phi = len(self.poly) - 1
        top = max(q, 2 * phi - 1)
        table = []
        for j in range(top):
            if j < phi:
                row = [0] * phi
                row[j] = 1
                table.append(tuple(row))
                continue
            # t * previous row, then eliminate t^phi
            prev = table[-1]
            lead = prev[-1]
            row = [0] + list(prev[:-1])
            if lead:
                for i in range(phi):
                    row[i] -= lead * self.poly[i]
            table.append(tuple(row))
        self.table = table

    def reduce(self, vec):
        """Reduce a coefficient list of any length (< len(table)) modulo Phi_q."""
        phi = self.phi
        out = list(vec[:phi]) + [0] * max(0, phi - len(vec))
        table = self.table
        for j in range(phi, len(vec)):
            c = vec[j]
            if c:
                row = table[j]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    def mul(self, a, b):
        return self.reduce(_poly_mul(a, b))

    def mul_root(self, a, e):
        """``a * t^e`` for 0 <= e < q, on raw coefficient lists."""
        if e == 0:
            return list(a)
        q, phi, table = self.q, self.phi, self.table
        out = [0] * phi
        for i, c in enumerate(a):
            if c:
                j = i + e
                if j >= q:
                    j -= q
                if j < phi:
                    out[j] += c
                else:
                    row = table[j]
                    for k in range(phi):
                        if row[k]:
                            out[k] += c * row[k]
        return out


@lru_cache(maxsize=None)
def ring(q: int) -> _Ring:
    _check_modulus(q)
    return _Ring(q)


class CycloElem:
    """An immutable element of Z[omega_q]."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs):
        R = ring(q)
        coeffs = list(coeffs)
        if len(coeffs) != R.phi:
            coeffs = R.reduce(coeffs)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    @classmethod
    def from_int(cls, q: int, n: int) -> "CycloElem":
        return cls(q, [n] + [0] * (ring(q).phi - 1))

    def _check(self, other):
        if isinstance(other, int):
            return CycloElem.from_int(self.q, other)
        if other.q != self.q:
            raise ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycloElem(self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CycloElem(self.q, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CycloElem(self.q, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.q, [a * other for a in self.coeffs])
        other = self._check(other)
        return CycloElem(self.q, ring(self.q).mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def mul_root(self, e: int) -> "CycloElem":
        return CycloElem(self.q, ring(self.q).mul_root(self.coeffs, e % self.q))

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloElem.from_int(self.q, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        return f"CycloElem({self.q}, {list(self.coeffs)})"

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def evaluate_mod(self, w: int, p: int) -> int:
        """Image under t -> w in F_p (a ring map when w has order q)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * w + c) % p
        return acc


def root_power(q: int, e: int) -> CycloElem:
    """omega_q ** e."""
    R = ring(q)
    vec = [0] * q
    vec[e % q] = 1
    return CycloElem(q, R.reduce(vec))


def cyclo_add(a: CycloElem, b: CycloElem) -> CycloElem:
    return a + b


def cyclo_sub(a: CycloElem, b: CycloElem) -> CycloElem:
    return a - b


def cyclo_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    return a * b


def to_integer(a: CycloElem) -> int:
    if not a.is_integer():
        raise NotAnInteger(f"{a!r} is not a rational integer")
    return a.coeffs[0]
