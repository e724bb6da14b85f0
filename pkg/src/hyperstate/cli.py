"""Command-line interface.

Exit codes: 0 success, 1 a verification/cross-check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import anf, entanglement, grover, hypergraph, verify
from .errors import HyperstateError, ValidationError
from .optimize import DEFAULT_SEED
from .state import (
    SolutionSet,
    apply_oracle,
    canonical_m1_solutions,
    canonical_m2_solutions,
    hamming_distance,
    read_state_file,
    uniform_superposition,
)

SEED_ENV = "HYPERSTATE_SEED"
CURVE_N_MAX = 16
CROSSCHECK_N_MAX = 5
CROSSCHECK_TOL = 1e-6
NORM_TOL = 1e-9
CURVE_HEADER = ["n", "m", "d", "E", "overlap", "alpha", "beta", "gamma", "delta"]


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _round(x: float) -> float:
    return float(fmt(x))


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def resolve_seed(cli_seed: int | None) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{SEED_ENV}: {exc}")
    return DEFAULT_SEED


def _solutions(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"solutions must be comma-separated integers, got {text!r}")


def _distance(text: str):
    if text == "all":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--d takes an integer or 'all', got {text!r}")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------- curve


def curve_rows(m: int, n_max: int, d, seed: int) -> list[dict]:
    rows = []
    if m == 1:
        for n in range(2, n_max + 1):
            r = entanglement.geometric_measure_m1(n)
            rows.append({"n": n, "d": None, "result": r})
        return rows
    for n in range(2, n_max + 1):
        ds = range(1, n + 1) if d == "all" else ([d] if d <= n else [])
        for dd in ds:
            rows.append({"n": n, "d": dd, "result": entanglement.geometric_measure_m2(n, dd, seed=seed)})
    return rows


def curve_csv(m: int, rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for row in rows:
        r = row["result"]
        angles = [fmt(a) for a in r.optimal.angles()]
        angles += [""] * (4 - len(angles))
        d = "" if row["d"] is None else row["d"]
        writer.writerow([row["n"], m, d, fmt(r.value), fmt(r.max_overlap_sq), *angles])
    return buf.getvalue()


def cmd_curve(args) -> int:
    if args.m not in (1, 2):
        raise UsageError("--m must be 1 or 2")
    if not 2 <= args.n_max <= CURVE_N_MAX:
        raise UsageError(f"--n-max must be in [2, {CURVE_N_MAX}]")
    d = args.d
    if args.m == 1 and d is not None:
        raise UsageError("--d only applies to --m 2")
    if args.m == 2:
        d = "all" if d is None else d
        if d != "all" and not 1 <= d <= args.n_max:
            raise UsageError(f"--d must be in [1, {args.n_max}] or 'all'")
    seed = resolve_seed(args.seed)
    rows = curve_rows(args.m, args.n_max, d, seed)
    _emit(curve_csv(args.m, rows), args.output)
    _report_decay(args.m, rows)

    if not args.verify:
        return 0
    failed = False
    for row in rows:
        n = row["n"]
        if n > CROSSCHECK_N_MAX:
            continue
        sols = canonical_m1_solutions(n) if args.m == 1 else canonical_m2_solutions(n, row["d"])
        psi = apply_oracle(uniform_superposition(n), sols)
        brute = entanglement.geometric_measure_bruteforce(psi, seed=seed)
        diff = abs(brute.value - row["result"].value)
        ok = diff <= CROSSCHECK_TOL
        failed |= not ok
        print(f"[{'PASS' if ok else 'FAIL'}] cross-check n={n} d={row['d']}: |dE|={diff:.3e}", file=sys.stderr)
    return 1 if failed else 0


def _report_decay(m: int, rows: list[dict]) -> None:
    series: dict = {}
    for row in rows:
        if row["result"].value > 1e-12:
            series.setdefault(row["d"], []).append((row["n"], row["result"].value))
    for d, pts in series.items():
        if len(pts) >= 3:
            rate, _ = entanglement.fit_decay_rate(*zip(*pts))
            label = f"M={m}" + ("" if d is None else f" d={d}")
            print(f"# {label}: fitted E ~ exp(-{rate:.4f} n)", file=sys.stderr)


# ------------------------------------------------------------------ hypergraph


def cmd_hypergraph(args) -> int:
    if args.m == 1:
        if args.d is not None:
            raise UsageError("--d only applies to --m 2")
        h = hypergraph.grover_m1_hypergraph(args.n)
    elif args.m == 2:
        if args.d is None or args.d == "all":
            raise UsageError("--m 2 requires an integer --d")
        h = hypergraph.grover_m2_hypergraph(args.n, args.d)
    else:
        raise UsageError("--m must be 1 or 2")
    text = hypergraph.serialize(h, args.format)
    _emit(text if text.endswith("\n") else text + "\n", args.output)
    return 0


# --------------------------------------------------------------------- measure


def _restricted(n: int, sols: tuple[int, ...], seed: int):
    if n < 2:
        raise UsageError("restricted method needs n >= 2")
    if len(sols) == 1:
        return entanglement.geometric_measure_m1(n)
    if len(sols) == 2:
        return entanglement.geometric_measure_m2(n, hamming_distance(*sols), seed=seed)
    raise UsageError("restricted method supports one or two solutions; use --method bruteforce")


def cmd_measure(args) -> int:
    seed = resolve_seed(args.seed)
    if (args.solutions is None) == (args.state_file is None):
        raise UsageError("give exactly one of --solutions or --state-file")
    if args.solutions is not None:
        if args.n is None:
            raise UsageError("--solutions requires --n")
        sols = SolutionSet(args.n, tuple(args.solutions))
        if len(sols.solutions) != len(args.solutions):
            raise UsageError("duplicate solution indices")
        state = apply_oracle(uniform_superposition(args.n), sols)
        marked = sols.solutions
    else:
        with open(args.state_file, encoding="utf-8") as fh:
            state = read_state_file(fh.read())
        if args.n is not None and args.n != state.n:
            raise UsageError(f"--n {args.n} disagrees with the state file (n={state.n})")
        if abs(state.norm_sq() - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized: |psi|^2 = {state.norm_sq():.12g}")
        marked = None

    method = args.method or ("restricted" if args.solutions is not None else "bruteforce")
    if method == "bruteforce":
        result = entanglement.geometric_measure_bruteforce(state, seed=seed)
    else:
        if marked is None:
            marked = _marked_from_state(state)
        result = _restricted(state.n, marked, seed)

    doc = {
        "n": state.n,
        "method": method,
        "value": _round(result.value),
        "overlap": _round(result.max_overlap_sq),
        "angles": [
            {"size": b.size, "alpha": _round(b.alpha), "beta": _round(b.beta)} for b in result.optimal.blocks
        ],
        "seed": seed,
        "converged": bool(result.converged),
        "starts_used": result.starts_used,
    }
    _emit(json.dumps(doc) + "\n", args.output)
    return 0


def _marked_from_state(state) -> tuple[int, ...]:
    try:
        f = anf.function_from_rew(state)
    except HyperstateError:
        raise UsageError("restricted method needs a real equally weighted state; use --method bruteforce")
    marked = f.support()
    if len(marked) > state.dim // 2:
        # overall sign -1: the unmarked entries carry the minus signs
        marked = tuple(x for x in range(state.dim) if x not in set(marked))
    return marked


# ---------------------------------------------------------------------- grover


def cmd_grover(args) -> int:
    if args.solutions is None:
        raise UsageError("grover requires --solutions")
    sols = SolutionSet(args.n, tuple(args.solutions))
    trace = grover.run_grover(args.n, sols, args.iterations)
    _emit(trace.to_csv(), args.output)
    return 0


# ---------------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    t0 = time.perf_counter()
    checks = verify.run_checks(args.verify_level, seed=seed)
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(
        f"{len(checks) - failed}/{len(checks)} checks passed "
        f"(level={args.verify_level}, seed={seed}, {time.perf_counter() - t0:.1f}s)"
    )
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


# ---------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperstate",
        description="Grover oracle states, hypergraph states and their geometric entanglement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if seed:
            p.add_argument("--seed", type=_seed, help=f"PRNG seed (default ${SEED_ENV} or {DEFAULT_SEED:#x})")

    p = sub.add_parser("curve", help="E_n as a function of n (CSV)")
    p.add_argument("--m", type=int, required=True, choices=(1, 2))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--d", type=_distance, help="Hamming distance or 'all' (M=2 only)")
    p.add_argument("--verify", action="store_true", help=f"cross-check rows with n<={CROSSCHECK_N_MAX} by brute force")
    common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("hypergraph", help="hypergraph of a canonical Grover state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, choices=(1, 2))
    p.add_argument("--d", type=_distance)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    common(p, seed=False)
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("measure", help="geometric measure of a single state (JSON)")
    p.add_argument("--n", type=int)
    p.add_argument("--solutions", type=_solutions)
    p.add_argument("--state-file")
    p.add_argument("--method", choices=("restricted", "bruteforce"))
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("grover", help="success-probability trace (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--solutions", type=_solutions, required=True)
    p.add_argument("--iterations", type=int, required=True)
    common(p, seed=False)
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("verify", help="run the built-in invariant suites")
    p.add_argument("--verify-level", choices=tuple(verify.LEVELS), default="quick")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, HyperstateError, OSError) as exc:
        print(f"hyperstate {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
