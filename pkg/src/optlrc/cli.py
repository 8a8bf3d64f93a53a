"""Command-line front end: ``lrc construct|verify|bounds|sweep|repair``.

Exit codes: 0 verified optimal (or success), 1 suboptimal or stuck,
2 input error, 3 verification budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from ._search import DEFAULT_BUDGET, BudgetExceeded
from .bounds import bound_report
from .codes import (
    LinearCode,
    LocalityUndefined,
    Optimality,
    UndefinedDistance,
    auto_strategy,
    classify_optimality,
    locality,
    min_distance,
)
from .construct import (
    CandidateOrder,
    CheckMode,
    ConstructionConfig,
    ConstructionError,
    construct_greedy,
    construct_vandermonde,
)
from .field import make_field
from .io import MatrixParseError, dumps, read_matrix
from .recovery import LocalityViolation, RepairError, greedy_cover, repair

EXIT_OK, EXIT_SUBOPTIMAL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
OPTIMAL = (Optimality.OPTIMAL_EQ1, Optimality.OPTIMAL_DEFECT1)


class InputError(ValueError):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- construct ---------------------------------------------------------------------


def cmd_construct(args) -> int:
    f = make_field(args.q)
    if args.method == "vandermonde":
        code = construct_vandermonde(f, args.n, args.d, args.r)
        _emit(dumps(code.H), args.output)
        return EXIT_OK
    cfg = ConstructionConfig(
        f, args.n, args.d, args.r,
        candidate_order=args.order, rng_seed=args.seed, check_mode=args.check_mode,
        enforce_regime=not args.any_d,
    )
    code, trace = construct_greedy(cfg)
    _emit(dumps(code.H), args.output)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(trace.to_text())
    if trace.stuck_at is not None:
        i, j = trace.stuck_at
        print(
            f"stuck: no feasible column at block {i} slot {j} "
            f"after {trace.columns} of {args.n} columns",
            file=sys.stderr,
        )
        return EXIT_SUBOPTIMAL
    return EXIT_OK


# --- verify ----------------------------------------------------------------------------


def cmd_verify(args) -> int:
    code = LinearCode(read_matrix(args.matrix))
    strategy = args.strategy
    d = min_distance(code, strategy=strategy, budget=args.budget)
    used = auto_strategy(code) if strategy == "auto" else strategy
    r = locality(code, budget=args.budget)
    prof = classify_optimality(code, d=d, budget=args.budget)
    out = [
        f"n = {code.n}",
        f"k = {code.k}",
        f"d = {d} ({used})",
        f"locality = {r}",
        f"optimality = {prof.optimality}, defect {prof.defect}",
        f"reason = {prof.reason}",
    ]
    code_ok = True
    if args.r is not None and args.r != r:
        out.append(f"expected locality {args.r} but found {r}")
        code_ok = False
    sys.stdout.write("\n".join(out) + "\n")
    sys.stdout.write(bound_report(code.field.q, d, r, code.n, code.k).to_text())
    return EXIT_OK if code_ok and prof.optimality in OPTIMAL else EXIT_SUBOPTIMAL


# --- bounds ------------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    for name in ("q", "d", "r", "n", "k"):
        v = getattr(args, name)
        if v is not None and v < 1:
            raise InputError(f"--{name} must be a positive integer")
    if args.k is not None and args.n is None:
        raise InputError("--k needs --n")
    sys.stdout.write(bound_report(args.q, args.d, args.r, args.n, args.k).to_text())
    return EXIT_OK


# --- sweep -------------------------------------------------------------------------------------


@dataclass
class SweepRecord:
    q: int
    d: int
    r: int
    n_attempted: int
    status: str
    k: int | str
    d_verified: int | str
    r_verified: int | str
    optimality: str
    wall_time: str


SWEEP_HEADER = [fl.name for fl in fields(SweepRecord)]


def sweep_q(q: int, d: int, r: int, n_step: int, budget: int, verify: bool = True,
            order: str = "lexicographic", seed: int = 0) -> list[SweepRecord]:
    """Greedy attempts at n = n_step, 2 n_step, ... for one q until stuck or out of attempts."""
    f = make_field(q)
    records = []
    for attempt in range(1, budget + 1):
        n = attempt * n_step
        t0 = time.perf_counter()
        code, trace = construct_greedy(ConstructionConfig(
            f, n, d, r, candidate_order=order, rng_seed=seed, enforce_regime=False,
        ))
        if trace.stuck_at is not None:
            records.append(SweepRecord(q, d, r, n, "stuck", "", "", "", "",
                                       f"{time.perf_counter() - t0:.4f}"))
            break
        dv = rv = opt = ""
        if verify and code.k == 0:
            opt = "ZERO_CODE"
        elif verify:
            dv = min_distance(code, strategy="column-subsets")
            rv = locality(code)
            opt = str(classify_optimality(code, d=dv).optimality)
        records.append(SweepRecord(q, d, r, n, "ok", code.k, dv, rv, opt,
                                   f"{time.perf_counter() - t0:.4f}"))
    return records


def _sweep_task(task):
    return sweep_q(*task)


def sweep(qs, d: int, r: int, n_step: int | None, budget: int, verify: bool = True,
          jobs: int = 1, order: str = "lexicographic", seed: int = 0) -> list[SweepRecord]:
    if d > r + 2:
        raise InputError(f"sweep needs d <= r+2, got d={d} r={r}")
    step = r + 1 if n_step is None else n_step
    if step < 1 or step % (r + 1):
        raise InputError(f"--n-step must be a positive multiple of r+1 = {r + 1}")
    for q in qs:
        make_field(q)
    tasks = [(q, d, r, step, budget, verify, order, seed) for q in qs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    else:
        results = [_sweep_task(t) for t in tasks]
    rows = [rec for recs in results for rec in recs]
    rows.sort(key=lambda rec: (rec.q, rec.n_attempted))
    return rows


def sweep_csv(rows: list[SweepRecord]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for rec in rows:
        w.writerow(astuple(rec))
    return buf.getvalue()


def frontier(rows: list[SweepRecord]) -> dict[int, int]:
    """Largest successfully constructed n per q (0 if none)."""
    out: dict[int, int] = {}
    for rec in rows:
        out.setdefault(rec.q, 0)
        if rec.status == "ok":
            out[rec.q] = max(out[rec.q], rec.n_attempted)
    return out


def cmd_sweep(args) -> int:
    if args.budget < 0:
        raise InputError("--budget must be >= 0")
    rows = sweep(args.q, args.d, args.r, args.n_step, args.budget, verify=not args.no_verify,
                 jobs=args.jobs, order=args.order, seed=args.seed)
    _emit(sweep_csv(rows), args.output)
    return EXIT_OK


# --- repair ----------------------------------------------------------------------------------


def parse_word(text: str, n: int, q: int) -> tuple[list[int | None], int]:
    toks = text.replace(",", " ").split()
    if len(toks) != n:
        raise InputError(f"word has {len(toks)} symbols, code length is {n}")
    erased = [i for i, t in enumerate(toks) if t == "?"]
    if len(erased) != 1:
        raise InputError("exactly one erasure supported")
    word: list[int | None] = []
    for t in toks:
        if t == "?":
            word.append(None)
            continue
        try:
            x = int(t)
        except ValueError:
            raise InputError(f"bad symbol {t!r}") from None
        if not 0 <= x < q:
            raise InputError(f"symbol {x} is not an element of GF({q})")
        word.append(x)
    return word, erased[0]


def cmd_repair(args) -> int:
    code = LinearCode(read_matrix(args.matrix))
    word, i = parse_word(args.word, code.n, code.field.q)
    plan = greedy_cover(code, locality(code))
    rs = plan.set_for(i)
    value = repair(code, word, i, rs.witness)
    full = list(word)
    full[i] = value
    if not code.contains(np.array(full, dtype=np.int64)):
        raise InputError("integrity error: the word is not a codeword off the erased position")
    print(value)
    print(f"read {int(np.count_nonzero(rs.witness)) - 1}")
    return EXIT_OK


# --- entry point -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrc", description="Optimal locally repairable codes toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a parity-check matrix")
    c.add_argument("--method", choices=["vandermonde", "greedy"], required=True)
    for name in ("q", "n", "d", "r"):
        c.add_argument(f"--{name}", type=int, required=True)
    c.add_argument("--order", choices=[o.value for o in CandidateOrder], default="lexicographic")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--check-mode", choices=[m.value for m in CheckMode], default="structured")
    c.add_argument("--any-d", action="store_true", help="allow d > r+2 for greedy")
    c.add_argument("--trace", help="write the greedy trace to this file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="profile a code from a matrix file")
    v.add_argument("matrix")
    v.add_argument("--r", type=int)
    v.add_argument("--strategy", choices=["auto", "codeword-enum", "column-subsets", "verify"],
                   default="auto")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum enumerated combinations per search")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="evaluate every bound at a parameter tuple")
    for name in ("q", "d", "r"):
        b.add_argument(f"--{name}", type=int, required=True)
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", help="empirical greedy length frontier as CSV")
    s.add_argument("--q", type=int, nargs="+", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n-step", type=int)
    s.add_argument("--budget", type=int, default=50, help="maximum attempts per q")
    s.add_argument("--no-verify", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--order", choices=[o.value for o in CandidateOrder], default="lexicographic")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sweep)

    rp = sub.add_parser("repair", help="repair one erased symbol ('?') locally")
    rp.add_argument("matrix")
    rp.add_argument("word", help='symbols separated by spaces, erasure as "?"')
    rp.set_defaults(func=cmd_repair)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (MatrixParseError, ConstructionError, InputError, RepairError, LocalityViolation,
            LocalityUndefined, UndefinedDistance, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
