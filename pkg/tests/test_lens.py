import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from lenshodge.errors import NonFaithfulPresentation, NotALensGroup
from lenshodge.hodge import hodge_equal
from lenshodge.lens import (LensGroup, PlusMinusLens, canonical_form, canonical_lens, conjugacy_witness, conjugate,
                            dub, enumerate_pm, fixed_point_free, fold, to_spectral)
from lenshodge.ztheory import unit_group

from oracles import orbit_conjugate, pm_canonical, pm_classes


def test_to_spectral_examples():
    G = to_spectral(LensGroup(2, (1,)))
    assert sorted(e for e, _ in G.elements) == [(0,), (1,)] and G.Q == 2
    T = to_spectral(LensGroup(1, (0,)))
    assert T.order == 1
    L = LensGroup(49, (1, 48, 8, 41, 22, 27))
    G = to_spectral(L)
    assert G.order == 49
    assert {tuple(sorted(e)) for e, _ in G.elements} == {tuple(sorted(k * v % 49 for v in L.s)) for k in range(49)}


def test_to_spectral_requires_faithful():
    with pytest.raises(NonFaithfulPresentation):
        to_spectral(LensGroup(6, (2, 4)))
    assert to_spectral(LensGroup(6, (2, 3))).order == 6


def test_order_is_q_under_gcd_condition():
    rng = random.Random(8)
    for _ in range(50):
        q = rng.randint(1, 40)
        s = [rng.randrange(q) for _ in range(rng.randint(1, 3))]
        L = LensGroup(q, s)
        if L.content == 1:
            G = to_spectral(L)
            assert G.order == q == len({e for e, _ in G.elements})


def test_dub_and_fold():
    assert dub((1, 8, 22), 49) == (1, 48, 8, 41, 22, 27)
    assert fold(48, 49) == 1 and fold(0, 7) == 0 and fold(3, 6) == 3
    assert PlusMinusLens(49, (1, 8, 22)).expanded() == LensGroup(49, (1, -1, 8, -8, 22, -22))
    assert str(PlusMinusLens(49, (22, 1, 8))) == "Lpm:49:1,8,22"


def test_conjugate_examples():
    A = LensGroup(49, (1, -1, 8, -8, 22, -22))
    B = LensGroup(49, (-6, 6, 1, -1, 15, -15))
    u = conjugacy_witness(A, B)
    # -6 = 43 works, and so does 6 since every entry comes with its negative
    assert u == 6
    assert sorted(43 * v % 49 for v in A.s) == list(B.s)
    assert not conjugate(PlusMinusLens(49, (1, 6, 15)), PlusMinusLens(49, (1, 6, 20)))
    assert conjugacy_witness(A, A) == 1
    assert not conjugate(LensGroup(5, (1,)), LensGroup(7, (1,)))


def test_canonical_form_examples():
    assert canonical_form(PlusMinusLens(49, (1, 8, 22))) == (1, 6, 15)
    assert canonical_form(PlusMinusLens(49, (1, -6, -20))) == (1, 6, 20)
    assert canonical_form(PlusMinusLens(2, (1,))) == (1,)
    with pytest.raises(NotALensGroup):
        canonical_form(PlusMinusLens(49, (1, 7)))


def test_canonical_form_matches_full_unit_scan():
    for q in range(3, 41):
        for t in itertools.combinations(range(1, q // 2 + 1), 2):
            if all(gcd(v, q) == 1 for v in t):
                assert canonical_form(PlusMinusLens(q, t)) == pm_canonical(q, t)


def test_canonical_form_decides_conjugacy():
    rng = random.Random(30)
    for q in range(1, 31):
        us = unit_group(q) if q > 1 else [0]
        for m in (1, 2):
            tuples = list(itertools.combinations_with_replacement(us, m))
            # same partition of the tuples from the canonical form and from element sets
            canon = {t: canonical_form(PlusMinusLens(q, t)) for t in tuples}
            orbit = {t: frozenset(tuple(sorted(k * v % q for v in dub(t, q))) for k in range(q)) for t in tuples}
            pairs = {}
            for t in tuples:
                pairs.setdefault(canon[t], set()).add(orbit[t])
            assert all(len(v) == 1 for v in pairs.values())
            assert len({next(iter(v)) for v in pairs.values()}) == len(pairs)
            for _ in range(30):
                t1, t2 = rng.choice(tuples), rng.choice(tuples)
                A, B = PlusMinusLens(q, t1), PlusMinusLens(q, t2)
                assert conjugate(A, B) == (canon[t1] == canon[t2]) == orbit_conjugate(q, dub(t1, q), dub(t2, q))


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 60), st.data())
def test_canonical_form_idempotent(q, data):
    us = unit_group(q)
    s = data.draw(st.lists(st.sampled_from(us), min_size=1, max_size=4))
    c = canonical_form(PlusMinusLens(q, s))
    assert canonical_form(PlusMinusLens(q, c)) == c
    u = data.draw(st.sampled_from(us))
    assert canonical_form(PlusMinusLens(q, [u * v for v in s])) == c


def test_conjugate_implies_hodge_equal():
    rng = random.Random(21)
    for _ in range(40):
        q = rng.randint(2, 20)
        s = [rng.randrange(q) for _ in range(rng.randint(1, 3))]
        L = LensGroup(q, s)
        if L.content != 1:
            continue
        u = rng.choice(unit_group(q))
        M = LensGroup(q, [u * v for v in reversed(s)])
        assert conjugate(L, M)
        assert hodge_equal(to_spectral(L), to_spectral(M))


def test_canonical_lens():
    assert canonical_lens(LensGroup(5, (2, 4))) == (1, 2)


def test_fixed_point_free():
    assert fixed_point_free(PlusMinusLens(49, (1, 6, 15)))
    assert not fixed_point_free(LensGroup(4, (1, 2)))
    assert fixed_point_free(LensGroup(1, (0,)))


def test_enumerate_examples():
    assert list(enumerate_pm(5, 1)) == [(1,)]
    assert list(enumerate_pm(8, 1)) == [(1,)]
    classes = list(enumerate_pm(49, 3))
    assert (1, 6, 15) in classes and (1, 6, 20) in classes
    assert classes == sorted(classes)


def test_enumerate_matches_orbits():
    for q in range(1, 21):
        for m in (1, 2):
            assert list(enumerate_pm(q, m)) == pm_classes(q, m)


def test_enumerate_larger_cross_check():
    for q in (49, 64):
        assert list(enumerate_pm(q, 3)) == pm_classes(q, 3)


def test_enumerate_with_repeats():
    got = list(enumerate_pm(7, 2, distinct=False))
    assert got == sorted({pm_canonical(7, t) for t in itertools.combinations_with_replacement((1, 2, 3), 2)})
