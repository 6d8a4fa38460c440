"""Independent reference computations used by the tests.

Nothing here imports the package under test.  Each routine takes the
slowest obvious route to its answer.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np
import sympy as sp


def monomials(n, k):
    """Exponent vectors of the degree-k monomials in n variables."""
    for c in itertools.combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield e


def diagonal_table(q, s, kmax):
    """P[k][p] for the cyclic diagonal group L(q, s) by counting invariant forms.

    x^alpha dx_I is invariant exactly when sum_i (alpha_i + [i in I]) s_i == 0 mod q.
    """
    n = len(s)
    P = [[0] * (n + 1) for _ in range(kmax + 1)]
    for k in range(kmax + 1):
        for alpha in monomials(n, k):
            w = sum(a * v for a, v in zip(alpha, s))
            for p in range(n + 1):
                for I in itertools.combinations(range(n), p):
                    if (w + sum(s[i] for i in I)) % q == 0:
                        P[k][p] += 1
    return P


def series_table(expr, x, y, kmax, n):
    """Coefficients of a rational function in x, y up to x^kmax, y^n."""
    ser = sp.series(expr, x, 0, kmax + 1).removeO()
    poly = sp.Poly(sp.expand(ser), x, y)
    P = [[0] * (n + 1) for _ in range(kmax + 1)]
    for (i, j), c in poly.terms():
        if i <= kmax and j <= n:
            P[i][j] = int(c)
    return P


def plus_minus_identity_table(n, kmax):
    """{+-I_n}: average of (1+y)^n/(1-x)^n and (1-y)^n/(1+x)^n, as exact series."""
    P = [[0] * (n + 1) for _ in range(kmax + 1)]
    for k in range(kmax + 1):
        # coefficient of x^k in 1/(1-x)^n is C(k+n-1, n-1); in 1/(1+x)^n it carries (-1)^k
        c = sp.binomial(k + n - 1, n - 1)
        for p in range(n + 1):
            b = sp.binomial(n, p)
            P[k][p] = int(Fraction(int(c * b + c * b * (-1) ** (k + p)), 2))
    return P


def matrix_group_table(mats, kmax, n):
    """Hodge table of a real matrix group via characteristic polynomials in sympy."""
    x, y = sp.symbols("x y")
    total = 0
    for M in mats:
        A = sp.Matrix(M)
        I = sp.eye(n)
        total += (I + y * A).det() / (I - x * A).det()
    return series_table(sp.together(total / len(mats)), x, y, kmax, n)


def orbit_conjugate(q, s1, s2):
    """Two cyclic diagonal groups are conjugate iff they have the same element sets,
    each element seen as a multiset of eigenvalue exponents."""
    if len(s1) != len(s2):
        return False
    els = lambda s: {tuple(sorted(k * v % q for v in s)) for k in range(q)}
    return els(s1) == els(s2)


def pm_canonical(q, s):
    """Least sorted folded tuple over all units u."""
    fold = lambda v: min(v % q, -v % q)
    return min(tuple(sorted(fold(u * v) for v in s)) for u in range(1, q + 1) if gcd(u, q) == 1)


def pm_classes(q, m):
    """Canonical forms of all L+-(q, s) with m distinct folded unit entries."""
    fold = lambda v: min(v % q, -v % q)
    folded = sorted({fold(u) for u in range(1, q) if gcd(u, q) == 1}) if q > 2 else [1 % q]
    return sorted({pm_canonical(q, t) for t in itertools.combinations(folded, m)})


def icosahedral_rotations():
    """The 60 rotations of the icosahedron, generated by closure from two symmetries."""
    phi = (1 + 5 ** 0.5) / 2
    verts = []
    for a, b in itertools.product((1, -1), repeat=2):
        verts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    verts = np.array(verts)

    def rot(axis, angle):
        axis = np.asarray(axis, float) / np.linalg.norm(axis)
        K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
        return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K

    # a face: three vertices at mutual distance 2 (the edge length)
    adj = lambda i, j: abs(np.linalg.norm(verts[i] - verts[j]) - 2) < 1e-9
    j, k = next((j, k) for j, k in itertools.combinations(range(1, 12), 2)
                if adj(0, j) and adj(0, k) and adj(j, k))
    gens = [rot(verts[0], 2 * np.pi / 5), rot(verts[0] + verts[j] + verts[k], 2 * np.pi / 3)]
    # both generators must permute the vertices
    for g in gens:
        moved = verts @ g.T
        assert all(np.min(np.linalg.norm(verts - v, axis=1)) < 1e-9 for v in moved)
    group = [np.eye(3)]
    frontier = [np.eye(3)]
    key = lambda M: tuple(np.round(M, 6).ravel())
    seen = {key(np.eye(3))}
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = g @ A
                if key(B) not in seen:
                    seen.add(key(B))
                    group.append(B)
                    nxt.append(B)
        frontier = nxt
    return group


def rotation_class_data(mats, Q=30):
    """Eigenvalue exponents (over Q) of 3x3 orthogonal matrices, as a multiset."""
    out = {}
    for M in mats:
        det = round(np.linalg.det(M))
        R = M * det  # proper part
        c = (np.trace(R) - 1) / 2
        theta = np.arccos(np.clip(c, -1, 1))
        e = round(theta * Q / (2 * np.pi))
        assert abs(e * 2 * np.pi / Q - theta) < 1e-6
        exps = [0, e % Q, -e % Q]
        if det < 0:
            exps = [(v + Q // 2) % Q for v in exps]
        key = tuple(sorted(exps))
        out[key] = out.get(key, 0) + 1
    return out


def diagonal_closure(Q, gens):
    """All elements of the abelian group generated by diagonal exponent vectors over Q."""
    n = len(gens[0])
    elems = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple((a + b) % Q for a, b in zip(e, g))
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(elems)
