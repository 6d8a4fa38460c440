import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from lenshodge.errors import InternalInconsistency, LensHodgeError, PoleAtSample
from lenshodge.hodge import (SpectralGroup, h_eval, h_eval_many, hodge_equal, hodge_numerator, hodge_table,
                             hstar_eval)
from lenshodge.lens import LensGroup, PlusMinusLens, dub, to_spectral
from lenshodge.modroots import make_context
from lenshodge.ztheory import divisors, unit_group

from oracles import diagonal_closure, diagonal_table, monomials

x, y = sp.symbols("x y")


def lens(q, s):
    return to_spectral(LensGroup(q, s))


def test_trivial_group_n1():
    T = hodge_table(SpectralGroup(1, 1, (((0,), 1),)), 3)
    assert T.as_lists() == [[1, 1]] * 4


def test_minus_identity_n1():
    T = hodge_table(lens(2, (1,)), 3)
    assert T.as_lists() == [[1, 0], [0, 1], [1, 0], [0, 1]]


def test_getitem_and_rows():
    T = hodge_table(lens(2, (1,)), 2)
    assert T[1, 1] == 1 and T[1, 5] == 0
    assert list(T.rows())[:3] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_identity_must_be_present():
    with pytest.raises(ValueError):
        SpectralGroup(3, 1, (((1,), 1),))


def test_non_group_input_detected():
    # {1, w} inside Z/3 is not closed: the averages are not integers
    G = SpectralGroup(3, 1, (((0,), 1), ((1,), 1)))
    with pytest.raises(LensHodgeError):
        hodge_table(G, 4)
    with pytest.raises(LensHodgeError):
        hodge_table(G, 4, engine="cyclotomic")


def test_unknown_engine():
    with pytest.raises(ValueError):
        hodge_table(lens(2, (1,)), 2, engine="abacus")


def _random_lens(rng, qmax=12, nmax=3):
    q = rng.randint(1, qmax)
    n = rng.randint(1, nmax)
    while True:
        s = [rng.randrange(q) for _ in range(n)]
        if LensGroup(q, s).content == 1:
            return q, s


def test_tables_match_invariant_counting():
    rng = random.Random(7)
    for _ in range(40):
        q, s = _random_lens(rng)
        assert hodge_table(lens(q, s), 10).as_lists() == diagonal_table(q, s, 10)


def test_first_and_last_columns_by_monomial_count():
    for q in range(2, 13):
        s = (1, 3 % q or 1, 5 % q or 1)
        T = hodge_table(lens(q, s), 10)
        for k in range(11):
            weights = [sum(a * v for a, v in zip(al, s)) for al in monomials(3, k)]
            assert T[k, 0] == sum(1 for w in weights if w % q == 0)
            assert T[k, 3] == sum(1 for w in weights if (w + sum(s)) % q == 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.lists(st.integers(0, 29), min_size=1, max_size=4), st.data())
def test_table_invariances(q, s, data):
    s = [v % q for v in s]
    if LensGroup(q, s).content != 1:
        return
    base = hodge_table(lens(q, s), 12).as_lists()
    u = data.draw(st.sampled_from(unit_group(q)))
    perm = data.draw(st.permutations(s))
    assert hodge_table(lens(q, perm), 12).as_lists() == base
    assert hodge_table(lens(q, [u * v for v in s]), 12).as_lists() == base
    assert hodge_table(lens(q, [-v for v in s]), 12).as_lists() == base


def test_element_order_does_not_matter():
    G = lens(49, dub((1, 6, 15), 49))
    shuffled = list(G.elements)
    random.Random(3).shuffle(shuffled)
    H = SpectralGroup(G.Q, G.n, tuple(shuffled))
    assert hodge_table(G, 60).as_lists() == hodge_table(H, 60).as_lists()


def _random_group(rng):
    Q = rng.randint(1, 30)
    n = rng.randint(1, 4)
    gens = [tuple(rng.randrange(Q) for _ in range(n)) for _ in range(rng.randint(1, 2))]
    return SpectralGroup(Q, n, tuple((e, 1) for e in diagonal_closure(Q, gens)))


def test_engines_agree_on_random_groups():
    rng = random.Random(2024)
    for _ in range(50):
        G = _random_group(rng)
        kmax = rng.randint(0, 40)
        assert hodge_table(G, kmax).as_lists() == hodge_table(G, kmax, engine="cyclotomic").as_lists()


def test_numerator_expands_to_table():
    rng = random.Random(99)
    for _ in range(15):
        G = _random_group(rng)
        N = hodge_numerator(G)
        kmax = G.n * G.Q + 5
        assert N.expand(kmax) == hodge_table(G, kmax).as_lists()


def _numerator_poly(N):
    return sum(c * x**k * y**p for k, row in enumerate(N.N) for p, c in enumerate(row))


def test_numerator_plus_minus_identity():
    N = hodge_numerator(lens(2, (1, 1)))
    assert (N.Q, N.n, N.denominator) == (2, 2, 1)
    # numerator of the average of (1+y)^2/(1-x)^2 and (1-y)^2/(1+x)^2 over (1-x^2)^2
    ref = sp.expand(((1 + y) ** 2 * (1 + x) ** 2 + (1 - y) ** 2 * (1 - x) ** 2) / 2)
    assert sp.expand(_numerator_poly(N) - ref) == 0
    assert sp.expand(ref - (1 + x**2 * y**2)) != 0


def test_numerator_trivial_group():
    N = hodge_numerator(SpectralGroup(1, 2, (((0, 0), 1),)))
    assert sp.expand(_numerator_poly(N) - (1 + y) ** 2) == 0
    assert N.x_degree == 0


def test_hodge_equal_examples():
    A = to_spectral(PlusMinusLens(49, (1, 6, 15)))
    B = to_spectral(PlusMinusLens(49, (1, 6, 20)))
    assert hodge_equal(A, B)
    assert hodge_equal(A, A)
    assert not hodge_equal(lens(5, (1, 1)), lens(5, (1, 2)))
    assert diagonal_table(5, (1, 1), 6) != diagonal_table(5, (1, 2), 6)


def test_hodge_equal_across_moduli_and_dimensions():
    assert hodge_equal(lens(2, (1, 1)), SpectralGroup(6, 2, (((0, 0), 1), ((3, 3), 1))))
    assert not hodge_equal(lens(2, (1,)), lens(2, (1, 1)))


def test_hodge_equal_matches_table_comparison():
    rng = random.Random(1)
    for _ in range(40):
        q = rng.randint(2, 12)
        s1, s2 = [rng.randrange(1, q) for _ in range(2)], [rng.randrange(1, q) for _ in range(2)]
        if LensGroup(q, s1).content != 1 or LensGroup(q, s2).content != 1:
            continue
        kmax = 2 * (q - 1)
        same = diagonal_table(q, s1, kmax) == diagonal_table(q, s2, kmax)
        assert hodge_equal(lens(q, s1), lens(q, s2)) == same


def test_h_eval_small_cases():
    ctx = make_context(1)
    p = ctx.p
    X, Y = 12345, 678
    assert h_eval(1, (0, 0, 0), X, Y, ctx) == pow(Y - 1, 3, p) * pow(pow(X - 1, 3, p), -1, p) % p
    assert hstar_eval(1, (0, 0), X, Y, ctx) == pow(Y - 1, 2, p) * pow(pow(X - 1, 2, p), -1, p) % p
    ctx = make_context(2)
    p = ctx.p
    ref = ((Y - 1) * pow(X - 1, -1, p) + (Y + 1) * pow(X + 1, -1, p)) % p
    assert h_eval(2, (1,), X, Y, ctx) == ref


def test_h_eval_pole():
    ctx = make_context(3)
    with pytest.raises(PoleAtSample):
        h_eval(3, (1,), ctx.w, 5, ctx)


def test_h_splits_over_divisors():
    rng = random.Random(17)
    cases = [(4, (1, 3))] + [(q, tuple(rng.randrange(q) for _ in range(rng.randint(1, 4))))
                             for q in (rng.randint(2, 60) for _ in range(20))]
    for q, s in cases:
        ctx = make_context(q)
        for _ in range(10):
            X, Y = rng.randrange(2, ctx.p), rng.randrange(ctx.p)
            if pow(X, q, ctx.p) == 1:
                continue
            total = sum(hstar_eval(d, s, X, Y, ctx) for d in divisors(q)) % ctx.p
            assert h_eval(q, s, X, Y, ctx) == total


def test_h_eval_49_pair_and_hstar_of_negated():
    ctx = make_context(49)
    rng = random.Random(4)
    pts = [(rng.randrange(2, ctx.p), rng.randrange(ctx.p)) for _ in range(20)]
    a = h_eval_many(49, dub((1, 6, 15), 49), pts, ctx)
    b = h_eval_many(49, dub((1, 6, 20), 49), pts, ctx)
    assert a == b
    s_pos = dub([7 * v + 1 for v in (0, 1, 3)], 49)
    s_neg = dub([-7 * v + 1 for v in (0, 1, 3)], 49)
    for X, Y in pts[:5]:
        assert hstar_eval(7, s_pos, X, Y, ctx) == hstar_eval(7, s_neg, X, Y, ctx)


def test_h_eval_context_must_contain_roots():
    with pytest.raises(ValueError):
        h_eval(7, (1,), 3, 4, make_context(5))


def test_inconsistent_bound_is_reported():
    # a group of order 3 presented with one element listed twice is not a group
    G = SpectralGroup(3, 1, (((0,), 1), ((1,), 2), ((2,), 1)))
    with pytest.raises(InternalInconsistency):
        hodge_table(G, 3)
