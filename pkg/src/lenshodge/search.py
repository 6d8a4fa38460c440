"""Search for Hodge-equivalent, non-conjugate pairs of real lens groups.

Every conjugacy class of L+-(q, s) is fingerprinted by evaluating H_{q, s~}
at a few fixed points of a prime field; only classes whose fingerprints
collide are compared exactly.  Equal Hodge series give equal fingerprints,
so the filter never drops a true pair.
"""
from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import gcd
from typing import Optional

from .errors import InternalInconsistency, PoleAtSample
from .hodge import h_eval_many, hodge_equal
from .lens import PlusMinusLens, _folded, canonical_form, conjugate, dub, enumerate_pm, to_spectral
from .lmr import AVector, lmr_pair
from .modroots import RootContext, make_context
from .ztheory import unit_group

DEFAULT_SEED = 20240601
N_SAMPLES = 8


@dataclass
class PairRecord:
    q: int
    m: int
    first: tuple
    second: tuple
    fingerprint_collided: bool = True
    exactly_equal: bool = True
    non_conjugate: bool = True
    lmr_witness: Optional[AVector] = None
    family_size: int = 2

    @property
    def order(self) -> int:
        return self.q


@dataclass
class SearchResult:
    m: int
    qmax: int
    seed: int
    records: list = field(default_factory=list)
    families: list = field(default_factory=list)
    samples: dict = field(default_factory=dict)
    class_counts: dict = field(default_factory=dict)
    engines: dict = field(default_factory=lambda: {
        "fingerprint": "modular H evaluation (8 points)",
        "confirmation": "modular Hodge table, full degree, exact",
    })

    def to_json(self) -> dict:
        def rec(r: PairRecord) -> dict:
            out = {
                "q": r.q,
                "m": r.m,
                "pair": [list(r.first), list(r.second)],
                "order": r.order,
                "family_size": r.family_size,
                "samples": self.samples[r.q],
                "engines": self.engines,
            }
            if r.lmr_witness is not None:
                w = r.lmr_witness
                out["lmr_witness"] = {"r": w.r, "t": w.t, "a": list(w.a)}
            return out

        return {
            "m": self.m,
            "qmax": self.qmax,
            "seed": self.seed,
            "pair_count": len(self.records),
            "family_sizes": [len(f["classes"]) for f in self.families],
            "families": self.families,
            "records": [rec(r) for r in self.records],
        }


def sample_points(q: int, ctx: RootContext, seed: int = DEFAULT_SEED, count: int = N_SAMPLES):
    """Seed-derived points (x, y) of F_p with x^q != 1, so x is never an eigenvalue."""
    rng = random.Random(f"{seed}:{q}:{ctx.p}")
    pts = []
    while len(pts) < count:
        x = rng.randrange(2, ctx.p)
        if pow(x, q, ctx.p) == 1:
            continue
        pts.append((x, rng.randrange(0, ctx.p)))
    return pts


def fingerprint(L: PlusMinusLens, ctx: RootContext, points) -> str:
    """Hash of H_{q, s~} at the given points (a pole moves x up until it clears)."""
    s = dub(L.s, L.q)
    values = []
    for x, y in points:
        offset = 0
        while True:
            try:
                values.append(h_eval_many(L.q, s, [(x + offset, y)], ctx)[0])
                break
            except PoleAtSample:
                offset += 1
        if offset:
            values.append(-offset)
    return _digest(values)


def _digest(values) -> str:
    return hashlib.sha256(",".join(map(str, values)).encode()).hexdigest()[:32]


def _fingerprints(q: int, classes, ctx: RootContext, points) -> list[str]:
    # sample points avoid every q-th root of unity, so no pole handling is needed here
    return [_digest(h_eval_many(q, dub(t, q), points, ctx)) for t in classes]


def _general_classes(q: int, m: int, distinct: bool):
    """Classes of faithful L+-(q, s) with arbitrary entries (eigenvalue 1 allowed)."""
    values = range(0, q // 2 + 1)
    choose = combinations if distinct else combinations_with_replacement
    seen = set()
    units = unit_group(q)
    for t in choose(values, m):
        g = q
        for v in t:
            g = gcd(g, v)
        if g != 1:
            continue
        canon = min(_folded(t, u, q) for u in units)
        if canon == t and canon not in seen:
            seen.add(canon)
            yield t


def _classes(q: int, m: int, fixed_point_free: bool, distinct: bool) -> list[tuple]:
    if fixed_point_free:
        return list(enumerate_pm(q, m, distinct))
    return list(_general_classes(q, m, distinct))


def _search_q(q: int, m: int, fixed_point_free: bool, distinct: bool, seed: int):
    classes = _classes(q, m, fixed_point_free, distinct)
    ctx = make_context(q, 0)
    points = sample_points(q, ctx, seed)
    buckets: dict[str, list[tuple]] = {}
    for t, fp in zip(classes, _fingerprints(q, classes, ctx, points)):
        buckets.setdefault(fp, []).append(t)
    families = []
    for members in buckets.values():
        if len(members) < 2:
            continue
        # exact confirmation inside the bucket; group into true equivalence classes
        groups: list[list[tuple]] = []
        for t in members:
            G = to_spectral(PlusMinusLens(q, t))
            for grp in groups:
                if hodge_equal(G, to_spectral(PlusMinusLens(q, grp[0]))):
                    grp.append(t)
                    break
            else:
                groups.append([t])
        families += [sorted(g) for g in groups if len(g) > 1]
    meta = {"prime": ctx.p, "points": [list(pt) for pt in points]}
    return q, len(classes), sorted(families), meta


def search_pairs(m: int, qmax: int, fixed_point_free: bool = True, distinct: bool = True,
                 seed: int = DEFAULT_SEED, threads: Optional[int] = 1,
                 qmin: int = 1, match: bool = True) -> SearchResult:
    """All unordered Hodge-equivalent non-conjugate pairs with q <= qmax."""
    if m < 1 or qmax < 1:
        raise ValueError("m and qmax must be positive")
    result = SearchResult(m=m, qmax=qmax, seed=seed)
    qs = range(max(1, qmin), qmax + 1)
    job = lambda q: _search_q(q, m, fixed_point_free, distinct, seed)
    if threads == 1:
        outcomes = [job(q) for q in qs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(job, qs))
    for q, count, families, meta in sorted(outcomes, key=lambda o: o[0]):
        result.class_counts[q] = count
        result.samples[q] = meta
        for fam in families:
            result.families.append({"q": q, "classes": [list(t) for t in fam]})
            for a, b in combinations(fam, 2):
                A, B = PlusMinusLens(q, a), PlusMinusLens(q, b)
                if conjugate(A, B):
                    raise InternalInconsistency(f"canonical classes {a} and {b} are conjugate")
                rec = PairRecord(q, m, a, b, family_size=len(fam))
                if match:
                    rec.lmr_witness = match_lmr(rec)
                result.records.append(rec)
    return result


def match_lmr(record: PairRecord) -> Optional[AVector]:
    """An (r, t, a) whose LMR pair has the record's canonical forms, or None.

    Candidates run over r > 2 with r^2 | q in decreasing r (so increasing t),
    then a = (0, a_2 <= ... <= a_m) in lexicographic order.
    """
    q, m = record.q, record.m
    target = {tuple(record.first), tuple(record.second)}
    rs = [r for r in range(3, q + 1) if r * r <= q and q % (r * r) == 0]
    for r in sorted(rs, reverse=True):
        t = q // (r * r)
        for tail in combinations_with_replacement(range(r), m - 1):
            v = AVector(r, t, (0,) + tail)
            A, B = lmr_pair(v)
            if {canonical_form(A), canonical_form(B)} == target:
                return v
    return None
