"""Command-line driver: generate prefixes, verify identities, estimate exponents.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
3 insufficient precision to decide.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

from .access import mismatch, symbol_at
from .approximants import check_error_bounds_auto, bound_constants_hold, growth_law_holds
from .errors import IndecisiveEnclosureError, InsufficientPrecisionError
from .exponent import closed_form_exponent, empirical_exponent, exponent_sandwich
from .numeration import (
    DigitVector,
    from_digits,
    get_basis,
    normalize,
    to_digits,
    uniqueness_oracle,
)
from .transforms import (
    block_determinism,
    default_pair_coding,
    difference,
    rotation_sum_relation,
    shift_product,
    value_affine_relation,
)
from .words import fixed_point_prefix, word_identities

LEMMAS = (
    "lemma1",      # defining word identities
    "lemma2",      # logarithmic random access vs. generated prefix
    "lemma3",      # numeration round-trip, uniqueness, normalization
    "lemma4",      # shift-mismatch law vs. direct comparison
    "formula3",    # two-sided approximant error bounds
    "growth",      # next-error growth law
    "constants",   # error sandwiched between c1/q^(1+theta) and c2/q^(1+theta)
    "affine",      # coded-pair value identity
    "blocks",      # difference-operator block determinism
    "sba",         # golden rotation power-sum affine probe
)

_N_DEFAULTS = {
    "lemma1": "2..10",
    "lemma4": "0..12",
    "formula3": "2..12",
    "growth": "2..10",
    "constants": "2..10",
    "blocks": "1..8",
}

TSV_COLUMNS = ("lemma", "k", "b", "n", "status", "detail")

Row = dict[str, str]
Task = tuple[tuple, Callable[[], Row]]


class UsageError(ValueError):
    """Bad flag values detected after argparse; mapped to exit code 2."""


def parse_range(text: str) -> list[int]:
    """Accept "A..B" (inclusive), "A,B,C", or a single "A"."""
    text = text.strip()
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        if "," in text:
            return [int(part) for part in text.split(",")]
        return [int(text)]
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"cannot parse range {text!r}") from None


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _row(lemma: str, k, b, n, ok: bool, detail: str) -> Row:
    return {
        "lemma": lemma,
        "k": "-" if k is None else str(k),
        "b": "-" if b is None else str(b),
        "n": "-" if n is None else str(n),
        "status": "PASS" if ok else "FAIL",
        "detail": detail,
    }


def _key(lemma: str, k, b, n) -> tuple:
    return (lemma, k if k is not None else -1, b if b is not None else -1,
            n if n is not None else -1)


# ---------------------------------------------------------------------------
# Per-lemma check bodies.  Each returns one table row.

def _check_lemma1(k: int, n: int) -> Row:
    id1, id2 = word_identities(k, n)
    detail = f"concat_swap={id1};expansion={id2}"
    return _row("lemma1", k, None, n, id1 and id2, detail)


def _check_lemma2(k: int, imax: int) -> Row:
    prefix = fixed_point_prefix(k, imax)
    bad = sum(1 for i in range(imax) if symbol_at(k, i) != prefix[i])
    return _row("lemma2", k, None, None, bad == 0, f"checked={imax};disagreements={bad}")


def _check_lemma3(k: int, imax: int, seed: int, cases: int) -> Row:
    problems: list[str] = []
    for n in range(imax):
        d = to_digits(k, n)
        if not d.is_regular(k) or from_digits(k, d) != n:
            problems.append(f"roundtrip@{n}")
            break
    if not uniqueness_oracle(k, imax):
        problems.append("uniqueness")
    rng = random.Random((seed * 1000003) ^ k)
    for _ in range(cases):
        raw = [rng.randint(0, k) for _ in range(rng.randint(0, 20))]
        nd = normalize(k, raw)
        if from_digits(k, nd) != from_digits(k, raw):
            problems.append("normalize-value")
            break
        if not nd.is_regular(k):
            problems.append("normalize-regular")
            break
        if normalize(k, list(nd.digits)) != nd:
            problems.append("normalize-idempotent")
            break
        violations = [
            i for i in range(len(raw) - 1) if raw[i + 1] == k and raw[i] != 0
        ]
        if violations:
            vmin = min(violations)
            if any(nd.digit(i) != raw[i] for i in range(vmin)):
                problems.append("normalize-low-index")
                break
        elif nd != DigitVector(raw):
            problems.append("normalize-identity")
            break
    detail = f"roundtrip<{imax};uniqueness<{imax};cases={cases}"
    if problems:
        detail += ";failed=" + ",".join(problems)
    return _row("lemma3", k, None, None, not problems, detail)


def _check_lemma4(k: int, n: int, imax: int) -> Row:
    fn = get_basis(k).value(n)
    fn1 = get_basis(k).value(n + 1)
    prefix = fixed_point_prefix(k, imax + fn)
    bad = 0
    first_scanned = None
    for i in range(imax):
        direct = prefix[i + fn] - prefix[i]
        verdict = mismatch(k, i, n)
        if verdict.differs != (direct != 0) or verdict.sign != direct:
            bad += 1
        if direct != 0 and first_scanned is None:
            first_scanned = i
    # Window cleanliness: the first mismatch must sit at f_{n+1}-2, just past
    # the window 0..f_{n+1}-3.  When the window extends beyond the scan, the
    # congruence form guarantees no verdict can fire below f_{n+1}-2.
    edge = fn1 - 2
    window_ok = mismatch(k, edge, n).differs
    if first_scanned is not None:
        window_ok = window_ok and first_scanned >= min(edge, imax)
    detail = f"scanned={imax};verdict_errors={bad};first_mismatch_at={edge}"
    return _row("lemma4", k, None, n, bad == 0 and window_ok, detail)


def _check_formula3(k: int, b: int, n: int) -> Row:
    chk = check_error_bounds_auto(k, n, b)
    detail = f"route={chk.route};lower_ok={chk.lower_ok};upper_ok={chk.upper_ok}"
    if chk.lower is not None:
        detail += f";lower={_fmt(chk.lower)};upper={_fmt(chk.upper)}"
    if chk.delta_lo is not None:
        detail += f";delta_lo={_fmt(chk.delta_lo)};delta_hi={_fmt(chk.delta_hi)}"
    return _row("formula3", k, b, n, chk.holds, detail)


def _check_growth(k: int, b: int, n: int) -> Row:
    ok = growth_law_holds(k, b, n)
    return _row("growth", k, b, n, ok, "next_error*b^2*q_n^theta<1=" + str(ok))


def _check_constants(k: int, b: int, n: int) -> Row:
    ok = bound_constants_hold(k, b, n)
    return _row("constants", k, b, n, ok, f"c1=(b-1)/b^2;c2=b^2;holds={ok}")


def _check_affine(k: int, b: int, depth: int) -> Row:
    u = fixed_point_prefix(k, depth + 1)
    rep = value_affine_relation(u, default_pair_coding(), b, depth)
    detail = (
        f"a0={_fmt(rep.a0)};a1={_fmt(rep.a1)};a2={_fmt(rep.a2)}"
        f";gap_bound={_fmt(rep.gap_bound)}"
    )
    return _row("affine", k, b, None, rep.consistent, detail)


def _check_blocks(k: int, order: int, imax: int) -> Row:
    prefix = fixed_point_prefix(k, imax)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        count, _table = block_determinism(prefix, order)
    ok = count == order + 2
    return _row("blocks", k, None, order, ok, f"blocks={count};expected={order + 2}")


def _check_sba(b: int, depth: int) -> Row:
    rep = rotation_sum_relation(b, depth)
    c1, c2 = rep.shifted_pair if rep.matching == "index_shifted" else rep.direct_pair
    detail = (
        f"matching={rep.matching};c1={_fmt(c1)};c2={_fmt(c2)}"
        f";residual<={_fmt(rep.residual_bound)}"
    )
    return _row("sba", None, b, None, True, detail)


def _plan(entry: dict) -> list[Task]:
    """Expand one sweep definition into sorted-key row tasks."""
    lemma = entry.get("lemma")
    if lemma not in LEMMAS:
        raise UsageError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    ks = parse_range(str(entry.get("k", "1")))
    bs = parse_range(str(entry.get("b", "2")))
    ns = parse_range(str(entry.get("n", _N_DEFAULTS.get(lemma, "2..10"))))
    imax = int(entry.get("imax", 10000))
    depth = int(entry.get("depth", 400 if lemma == "sba" else 200))
    seed = int(entry.get("seed", 0))
    cases = int(entry.get("cases", 1000))
    if imax < 1 or depth < 1 or cases < 1:
        raise UsageError("imax, depth, and cases must be >= 1")
    tasks: list[Task] = []
    if lemma == "lemma1":
        for k in ks:
            for n in ns:
                tasks.append((_key(lemma, k, None, n),
                              lambda k=k, n=n: _check_lemma1(k, n)))
    elif lemma == "lemma2":
        for k in ks:
            tasks.append((_key(lemma, k, None, None),
                          lambda k=k: _check_lemma2(k, imax)))
    elif lemma == "lemma3":
        for k in ks:
            tasks.append((_key(lemma, k, None, None),
                          lambda k=k: _check_lemma3(k, imax, seed, cases)))
    elif lemma == "lemma4":
        for k in ks:
            for n in ns:
                tasks.append((_key(lemma, k, None, n),
                              lambda k=k, n=n: _check_lemma4(k, n, imax)))
    elif lemma in ("formula3", "growth", "constants"):
        fn = {"formula3": _check_formula3, "growth": _check_growth,
              "constants": _check_constants}[lemma]
        for k in ks:
            for b in bs:
                for n in ns:
                    tasks.append((_key(lemma, k, b, n),
                                  lambda fn=fn, k=k, b=b, n=n: fn(k, b, n)))
    elif lemma == "affine":
        for k in ks:
            for b in bs:
                tasks.append((_key(lemma, k, b, None),
                              lambda k=k, b=b: _check_affine(k, b, depth)))
    elif lemma == "blocks":
        for k in ks:
            for order in ns:
                tasks.append((_key(lemma, k, None, order),
                              lambda k=k, order=order: _check_blocks(k, order, imax)))
    elif lemma == "sba":
        for b in bs:
            tasks.append((_key(lemma, None, b, None),
                          lambda b=b: _check_sba(b, depth)))
    return tasks


def _emit_table(rows: list[Row], fmt: str, out) -> None:
    if fmt == "json":
        all_pass = all(r["status"] == "PASS" for r in rows)
        doc = {"schema": 1, "command": "verify", "rows": rows, "all_pass": all_pass}
        print(json.dumps(doc, indent=2), file=out)
    else:
        print("\t".join(TSV_COLUMNS), file=out)
        for r in rows:
            print("\t".join(r[c] for c in TSV_COLUMNS), file=out)


def cmd_generate(args) -> int:
    w = fixed_point_prefix(args.k, args.length)
    if args.transform:
        spec_text = args.transform
        if spec_text.startswith("diff:"):
            w = difference(w, int(spec_text.split(":", 1)[1]))
        elif spec_text == "diff":
            w = difference(w, 1)
        elif spec_text == "pairs":
            w = shift_product(w, default_pair_coding())
        else:
            raise UsageError(
                f"unknown transform {spec_text!r}; use diff, diff:N, or pairs"
            )
    print(w.to_string())
    return 0


def cmd_verify(args) -> int:
    entries: list[dict]
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, list):
            raise UsageError("--json config must hold a list of sweep objects")
        entries = loaded
    else:
        if not args.lemma:
            raise UsageError("either --lemma or --json is required")
        entry = {"lemma": args.lemma}
        for field in ("k", "b", "n", "imax", "depth", "seed", "cases"):
            value = getattr(args, field)
            if value is not None:
                entry[field] = value
        entries = [entry]
    tasks: list[Task] = []
    for entry in entries:
        tasks.extend(_plan(entry))
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        futures = [(key, pool.submit(fn)) for key, fn in tasks]
        keyed_rows = [(key, fut.result()) for key, fut in futures]
    keyed_rows.sort(key=lambda kr: kr[0])
    rows = [r for _, r in keyed_rows]
    _emit_table(rows, args.format, sys.stdout)
    return 0 if all(r["status"] == "PASS" for r in rows) else 1


def cmd_exponent(args) -> int:
    n_values = parse_range(args.n)
    if len(n_values) < 2:
        raise UsageError("--n must span at least two indices, e.g. 30..40")
    target = closed_form_exponent(args.k)
    est = exponent_sandwich(args.k, n_values[0], n_values[-1])
    cf = None
    if args.digits is not None:
        cf = empirical_exponent(args.k, args.b, args.digits)
    agrees = est.lower <= target <= est.upper and (
        cf is None or abs(cf - target) <= args.tol
    )
    doc = {
        "schema": 1,
        "k": str(args.k),
        "b": str(args.b),
        "target": target,
        "lower": est.lower,
        "upper": est.upper,
        "cf_empirical": cf,
        "n_range": args.n,
        "digits": None if args.digits is None else str(args.digits),
        "tol": args.tol,
        "agrees": agrees,
    }
    if args.format == "tsv":
        for field_name in ("schema", "k", "b", "target", "lower", "upper",
                           "cf_empirical", "n_range", "digits", "tol", "agrees"):
            print(f"{field_name}\t{doc[field_name]}")
    else:
        print(json.dumps(doc, indent=2))
    return 0 if agrees else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sturmlab",
        description="Generate substitution fixed points and verify their "
        "Diophantine approximation identities with exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="print a prefix of the fixed point")
    g.add_argument("--k", type=int, default=1, help="substitution parameter (>= 1)")
    g.add_argument("--len", dest="length", type=int, required=True,
                   help="number of symbols to emit")
    g.add_argument("--transform", default=None,
                   help="optional post-transform: diff, diff:N, or pairs")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser(
        "verify",
        help="run a verification sweep and print a PASS/FAIL table",
        epilog="TSV columns: lemma, k, b, n, status, detail.  Inapplicable "
        "columns hold '-'.  detail packs exact bound values as "
        "semicolon-joined key=value pairs with rationals as num/den.",
    )
    v.add_argument("--lemma", choices=LEMMAS, help="which check family to run")
    v.add_argument("--k", help="k values: A, A..B, or A,B,C (default 1)")
    v.add_argument("--b", help="base values: A, A..B, or A,B,C (default 2)")
    v.add_argument("--n", help="index range: A, A..B, or A,B,C")
    v.add_argument("--imax", type=int, help="scan bound for indexed sweeps")
    v.add_argument("--depth", type=int, help="series depth for value identities")
    v.add_argument("--seed", type=int, help="seed for randomized sweeps")
    v.add_argument("--cases", type=int, help="randomized case count")
    v.add_argument("--jobs", type=int, default=4, help="parallel workers")
    v.add_argument("--format", choices=("tsv", "json"), default="tsv")
    v.add_argument("--json", dest="config", metavar="FILE",
                   help="JSON file with a list of sweep definitions")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exponent", help="sandwich and empirical exponent estimates")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--b", type=int, default=2)
    e.add_argument("--digits", type=int, default=None,
                   help="series digits for the continued-fraction estimate")
    e.add_argument("--n", default="30..40", help="ratio index range for the sandwich")
    e.add_argument("--tol", type=float, default=0.05,
                   help="allowed |empirical - target| disagreement")
    e.add_argument("--format", choices=("tsv", "json"), default="json")
    e.set_defaults(func=cmd_exponent)
    return parser


def main(argv: list[str] | None = None) -> int:
    # Rows carry exact values; arbitrarily long decimal strings are the point.
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InsufficientPrecisionError, IndecisiveEnclosureError) as exc:
        print(f"insufficient precision: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
