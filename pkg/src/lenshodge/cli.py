"""Command-line interface: ``lenshodge <command> ...``.

Group literals:

    L:<q>:<s1,s2,...>      the cyclic group generated by diag(w^s1, w^s2, ...), w = e^(2 pi i/q)
    Lpm:<q>:<s1,...,sm>    the same with (s1, -s1, ..., sm, -sm)
    <path>                 a JSON file {"Q": .., "n": .., "elements": [{"exps": [..], "mult": ..}, ..]}

Exit status: 0 for a true answer, 3 for a false one, 2 for bad input,
1 for an internal failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence, Union

from . import identities, kernels
from .errors import (ContextExhausted, InternalInconsistency, LensHodgeError, NonFaithfulPresentation,
                     NotALensGroup, ParseError, PrecisionError, TheoremCounterexample)
from .hodge import SpectralGroup, hodge_equal, hodge_numerator, hodge_table
from .lens import LensGroup, PlusMinusLens, canonical_form, conjugacy_witness, to_spectral
from .lmr import AVector, classify, enumerate_lmr, lmr_pair, theorem_check
from .modroots import make_context
from .search import DEFAULT_SEED, search_pairs

EXIT_TRUE, EXIT_FAILURE, EXIT_USAGE, EXIT_FALSE = 0, 1, 2, 3

Group = Union[SpectralGroup, LensGroup, PlusMinusLens]


def _parse_ints(text: str, offset: int) -> tuple[int, ...]:
    out = []
    pos = offset
    for piece in text.split(","):
        try:
            out.append(int(piece.strip()))
        except ValueError:
            raise ParseError(f"expected an integer, got {piece!r}", pos) from None
        pos += len(piece) + 1
    return tuple(out)


def _parse_literal(text: str) -> Group:
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ParseError("expected '<kind>:<q>:<s>'", len(text))
    qtext, sep, stext = rest.partition(":")
    if not sep:
        raise ParseError("missing ':' before the exponent list", len(text))
    qpos = len(kind) + 1
    try:
        q = int(qtext)
    except ValueError:
        raise ParseError(f"bad modulus {qtext!r}", qpos) from None
    if q < 1:
        raise ParseError("modulus must be positive", qpos)
    if not stext:
        raise ParseError("empty exponent list", qpos + len(qtext) + 1)
    s = _parse_ints(stext, qpos + len(qtext) + 1)
    L = LensGroup(q, s) if kind == "L" else PlusMinusLens(q, s)
    if (L.content if kind == "L" else L.expanded().content) != 1:
        raise NonFaithfulPresentation(f"gcd(q, s) != 1 in {text!r}")
    return L


def _parse_file(path: Path) -> SpectralGroup:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.pos) from None
    try:
        elements = tuple((tuple(el["exps"]), int(el.get("mult", 1))) for el in doc["elements"])
        return SpectralGroup(int(doc["Q"]), int(doc["n"]), elements)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: missing or malformed field {exc}") from None
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def parse_group(text: str) -> Group:
    """A LensGroup, PlusMinusLens or SpectralGroup from a literal or a file path."""
    if text.startswith(("L:", "Lpm:")):
        return _parse_literal(text)
    path = Path(text)
    if path.is_file():
        return _parse_file(path)
    raise ParseError(f"not a group literal or readable file: {text!r}", 0)


def format_group(G: Group) -> str:
    return str(G) if not isinstance(G, SpectralGroup) else f"<spectral Q={G.Q} n={G.n} order={G.order}>"


def _spectral(G: Group) -> SpectralGroup:
    return G if isinstance(G, SpectralGroup) else to_spectral(G)


def _int_tuple(text: str) -> tuple[int, ...]:
    return _parse_ints(text, 0)


def _lens_only(G: Group, what: str):
    if isinstance(G, SpectralGroup):
        raise ParseError(f"{what} needs a lens literal, not a spectral file")
    return G


# -- commands --------------------------------------------------------------

def cmd_series(args, out) -> int:
    G = _spectral(parse_group(args.group))
    table = hodge_table(G, args.kmax, engine=args.engine)
    if args.format == "json":
        json.dump({"n": table.n, "Q": table.Q, "kmax": table.kmax, "P": table.as_lists(),
                   "rows": [list(r) for r in table.rows()]}, out)
        out.write("\n")
    else:
        out.write("k\tp\tP\n")
        for k, p, v in table.rows():
            out.write(f"{k}\t{p}\t{v}\n")
    return EXIT_TRUE


def cmd_numerator(args, out) -> int:
    G = _spectral(parse_group(args.group))
    N = hodge_numerator(G)
    terms = []
    for k, row in enumerate(N.N):
        for p, c in enumerate(row):
            if c:
                mono = "*".join(m for m in (f"x^{k}" if k > 1 else "x" if k else "",
                                            f"y^{p}" if p > 1 else "y" if p else "") if m)
                terms.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
    head = " + ".join(terms) or "0"
    if N.denominator != 1:
        head = f"({head}) / {N.denominator}"
    out.write(f"{head}\n  over (1 - x^{N.Q})^{N.n}\n")
    return EXIT_TRUE


def cmd_equal(args, out) -> int:
    g1, g2 = parse_group(args.g1), parse_group(args.g2)
    eq = hodge_equal(_spectral(g1), _spectral(g2))
    out.write(f"{'equal' if eq else 'different'}\n")
    return EXIT_TRUE if eq else EXIT_FALSE


def cmd_conjugate(args, out) -> int:
    g1 = _lens_only(parse_group(args.g1), "conjugate")
    g2 = _lens_only(parse_group(args.g2), "conjugate")
    u = conjugacy_witness(g1, g2)
    if u is None:
        out.write("not conjugate\n")
        return EXIT_FALSE
    out.write(f"conjugate via u={u}\n")
    return EXIT_TRUE


def cmd_canon(args, out) -> int:
    G = parse_group(args.group)
    if not isinstance(G, PlusMinusLens):
        raise ParseError("canon expects an Lpm:<q>:<s> literal")
    out.write(f"{','.join(map(str, canonical_form(G)))}\n")
    return EXIT_TRUE


def cmd_lmr_build(args, out) -> int:
    v = AVector(args.r, args.t, _int_tuple(args.a))
    A, B = lmr_pair(v)
    out.write(f"{A}\n{B}\n")
    return EXIT_TRUE


def cmd_lmr_classify(args, out) -> int:
    c = classify(_int_tuple(args.a), args.r)
    for key in ("univalent", "reversible", "good", "hereditarily_good", "useful"):
        out.write(f"{key}={str(getattr(c, key)).lower()}\n")
    if c.reversing_constant is not None:
        out.write(f"reversing_constant={c.reversing_constant}\n")
    if c.failing_divisor is not None:
        out.write(f"failing_divisor={c.failing_divisor}\n")
    return EXIT_TRUE


def cmd_lmr_enumerate(args, out) -> int:
    for v in enumerate_lmr(_int_tuple(args.a), args.qmax):
        A, B = lmr_pair(v)
        out.write(f"q={v.q}\tr={v.r}\tt={v.t}\t{','.join(map(str, canonical_form(A)))}"
                  f"\t{','.join(map(str, canonical_form(B)))}\n")
    return EXIT_TRUE


def cmd_lmr_check(args, out) -> int:
    rec = theorem_check(AVector(args.r, args.t, _int_tuple(args.a)))
    out.write(f"hereditarily_good={str(rec.hereditarily_good).lower()}\n"
              f"hodge_equal={str(rec.hodge_equal).lower()}\n"
              f"conjugate={str(rec.conjugate).lower()}\n")
    return EXIT_TRUE if rec.hodge_equal and not rec.conjugate else EXIT_FALSE


def cmd_search(args, out) -> int:
    t0 = time.perf_counter()
    res = search_pairs(args.m, args.qmax, seed=args.seed, threads=args.threads, qmin=args.qmin)
    elapsed = time.perf_counter() - t0
    for r in res.records:
        w = r.lmr_witness
        wtxt = f"LMR(r={w.r}, t={w.t}, a={','.join(map(str, w.a))})" if w else "-"
        out.write(f"{r.q}\t{','.join(map(str, r.first))}\t{','.join(map(str, r.second))}"
                  f"\tfamily={r.family_size}\t{wtxt}\n")
    out.write(f"# {len(res.records)} pairs, {len(res.families)} families, {elapsed:.1f}s\n")
    if args.out:
        Path(args.out).write_text(json.dumps(res.to_json(), indent=1) + "\n", encoding="utf-8")
    return EXIT_TRUE


def cmd_verify_identities(args, out) -> int:
    checks = []
    for m in range(1, args.main_max_m + 1):
        checks.append((f"main identity m={m} symbolic", lambda m=m: identities.verify_main_identity(m)))
    for m in range(0, args.subsidiary_max_m + 1):
        checks.append((f"subsidiary m={m} symbolic", lambda m=m: identities.verify_subsidiary(m)))
    for n in range(1, args.partial_fraction_max_n + 1):
        checks.append((f"partial fractions n={n} symbolic",
                       lambda n=n: identities.verify_partial_fraction(n)))
    for m in range(1, args.random_max_m + 1):
        kw = {"mode": "randomized", "trials": args.trials, "seed": args.seed}
        checks.append((f"main identity m={m} randomized",
                       lambda m=m: identities.verify_main_identity(m, **kw)))
        checks.append((f"subsidiary m={m} randomized", lambda m=m: identities.verify_subsidiary(m, **kw)))
        checks.append((f"partial fractions n={m} randomized",
                       lambda m=m: identities.verify_partial_fraction(m, **kw)))
    ok = True
    for label, fn in checks:
        res = fn()
        ok &= res
        out.write(f"{'ok  ' if res else 'FAIL'} {label}\n")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_verify_divisors(args, out) -> int:
    v = AVector(args.r, args.t, _int_tuple(args.a))
    ctx = make_context(v.q, 0)
    ok = True
    for d, (branch, res) in identities.verify_divisor_branches(v, ctx, args.trials, args.seed).items():
        ok &= res
        out.write(f"d={d}\t{branch}\t{'ok' if res else 'FAIL'}\n")
    return EXIT_TRUE if ok else EXIT_FALSE


# -- wiring ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lenshodge", description="Hodge series of lens groups.")
    ap.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="kernel implementation")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="table of P_k^p up to x^K")
    p.add_argument("group")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--engine", choices=("modular", "cyclotomic"), default="modular")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("numerator", help="numerator over (1 - x^Q)^n")
    p.add_argument("group")
    p.set_defaults(func=cmd_numerator)

    for name, fn, text in (("equal", cmd_equal, "exit 0 if the Hodge series agree, 3 if not"),
                           ("conjugate", cmd_conjugate, "exit 0 if conjugate, 3 if not")):
        p = sub.add_parser(name, help=text)
        p.add_argument("g1")
        p.add_argument("g2")
        p.set_defaults(func=fn)

    p = sub.add_parser("canon", help="canonical tuple of an Lpm group")
    p.add_argument("group")
    p.set_defaults(func=cmd_canon)

    lmr = sub.add_parser("lmr", help="the L+-(r^2 t, r t a + 1) construction")
    lsub = lmr.add_subparsers(dest="lmr_command", required=True)
    for name, fn in (("build", cmd_lmr_build), ("check", cmd_lmr_check)):
        p = lsub.add_parser(name)
        p.add_argument("r", type=int)
        p.add_argument("t", type=int)
        p.add_argument("a")
        p.set_defaults(func=fn)
    p = lsub.add_parser("classify")
    p.add_argument("a")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_lmr_classify)
    p = lsub.add_parser("enumerate")
    p.add_argument("--a", required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(func=cmd_lmr_enumerate)

    p = sub.add_parser("search", help="Hodge-equal, non-conjugate Lpm pairs")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_search)

    ver = sub.add_parser("verify", help="identity checks")
    vsub = ver.add_subparsers(dest="verify_command", required=True)
    p = vsub.add_parser("identities")
    p.add_argument("--main-max-m", type=int, default=4)
    p.add_argument("--subsidiary-max-m", type=int, default=6)
    p.add_argument("--partial-fraction-max-n", type=int, default=4)
    p.add_argument("--random-max-m", type=int, default=8)
    p.add_argument("--trials", type=int, default=identities.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_identities)
    p = vsub.add_parser("divisors", help="per-divisor checks for an LMR vector")
    p.add_argument("r", type=int)
    p.add_argument("t", type=int)
    p.add_argument("a")
    p.add_argument("--trials", type=int, default=identities.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_divisors)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    previous = kernels.BACKEND
    if args.backend:
        kernels.BACKEND = args.backend
    try:
        return args.func(args, out)
    except (ParseError, NonFaithfulPresentation, NotALensGroup, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InternalInconsistency, TheoremCounterexample, PrecisionError, ContextExhausted,
            LensHodgeError) as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_FAILURE
    finally:
        kernels.BACKEND = previous


def main() -> None:
    sys.exit(run())
