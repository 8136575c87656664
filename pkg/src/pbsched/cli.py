"""Command line: ``pbsched {generate,solve,validate,oracle,bench}``.

Exit status 0 on success, 1 on domain errors (bad instance, failed
validation, oracle size cap), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import bench, oracle
from .instance import Instance, ParseError, generate_uniform, parse, serialize, stats
from .schedule import ScheduleValidationError, cost, format_schedule, parse_schedule, validate
from .schedulers import ALGORITHMS, DEFAULT_THRESHOLD, hsa, solve

SEED_ENV = "PBS_SCHED_SEED"


class DomainError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise DomainError(f"{SEED_ENV}={env!r} is not an integer") from None


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, data: bytes):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _load_instance(args) -> Instance:
    inst = parse(_read(args.inp))
    if args.d is not None:
        inst = inst.with_setup(args.d)
    return inst


def cmd_generate(args):
    inst = generate_uniform(args.n, args.m, args.wmax, args.density, args.d or 0, _seed(args))
    _write(args.out, serialize(inst))


def cmd_solve(args):
    inst = _load_instance(args)
    if args.algo == "hsa":
        rep = hsa(inst, mode=args.mode, threshold=args.t)
    else:
        rep = solve(inst, args.algo)
    v = validate(rep.schedule, inst)
    if v is not None:
        raise ScheduleValidationError(v, f"{rep.algorithm}: ")
    _write(args.out, (rep.summary() + "\n").encode())
    if args.emit_schedule:
        _write(args.emit_schedule, format_schedule(rep.schedule))


def cmd_validate(args):
    inst = _load_instance(args)
    sched = parse_schedule(_read(args.schedule))
    v = validate(sched, inst)
    if v is not None:
        raise DomainError(f"invalid schedule: {v}")
    lb = stats(inst).lower_bound
    _write(args.out, f"ok cost={cost(sched, inst.setup)} rounds={sched.n_rounds} lower_bound={lb}\n".encode())


def cmd_oracle(args):
    inst = _load_instance(args)
    res = oracle.optimal_cost(inst, cap=args.cap)
    opt = res.optimal_cost
    lb = stats(inst).lower_bound
    line = (f"optimal_cost={opt.numerator}/{opt.denominator} ({float(opt):.6f}) "
            f"rounds={res.witness.n_rounds} lower_bound={lb} matchings_considered={res.matchings_considered}\n")
    _write(args.out, line.encode())
    if args.emit_schedule:
        _write(args.emit_schedule, format_schedule(res.witness))


def cmd_bench(args):
    d_values = None
    if args.d_from is not None or args.d_to is not None or args.d_step is not None:
        base = bench.PRESETS[args.preset].d_values if args.preset else bench.SweepConfig().d_values
        lo = base[0] if args.d_from is None else args.d_from
        hi = base[-1] if args.d_to is None else args.d_to
        step = 1 if args.d_step is None else args.d_step
        if step < 1 or hi < lo:
            raise DomainError("need --d-step >= 1 and --d-to >= --d-from")
        d_values = tuple(range(lo, hi + 1, step))
    seed = args.seed
    if seed is None and os.environ.get(SEED_ENV) is not None:
        seed = _seed(args)
    cfg = bench.config_from(
        args.preset, n=args.n, m=args.m, w_max=args.wmax, density=args.density, d_values=d_values,
        instances_per_d=args.reps, seed=seed,
        algorithms=bench.sweep_algorithms(args.algos.split(",")) if args.algos else None,
        reuse_instances=True if args.reuse_instances else None)
    rep = bench.run_sweep(cfg, jobs=args.jobs)
    _write(args.out, rep.to_csv())
    algs = rep.algorithms()
    if {"posa", "os01pt"} <= algs:
        print(f"crossover(posa->os01pt) d={bench.crossover(rep)}", file=sys.stderr)
    if {"hsa", "sga"} <= algs:
        c = bench.compare(rep, "hsa", "sga")
        print(f"hsa vs sga: max relative gap {float(c.max_gap):.6f} at d={c.argmax_d}, "
              f"min {float(min(g for _, g in c.gaps)):.6f}", file=sys.stderr)
    if "hsa" in algs:
        worst = max(r.worst_ratio for r in rep.rows if r.algorithm == "hsa")
        print(f"hsa worst ratio {float(worst):.6f}", file=sys.stderr)


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _density(text):
    v = float(text)
    if not 0.0 < v <= 1.0:
        raise argparse.ArgumentTypeError(f"density must lie in (0, 1], got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pbsched", description="Preemptive bipartite scheduling with setup costs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def shared(sp, needs_in=True):
        if needs_in:
            sp.add_argument("--in", dest="inp", required=True, help="instance file ('-' for stdin)")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--seed", type=int, help=f"random seed (fallback ${SEED_ENV}, then 0)")
        sp.add_argument("--d", type=_nonneg, help="setup cost (overrides the instance's)")

    g = sub.add_parser("generate", help="write a random uniform instance")
    shared(g, needs_in=False)
    g.add_argument("--n", type=_pos, required=True)
    g.add_argument("--m", type=_pos, required=True)
    g.add_argument("--wmax", type=_pos, default=120)
    g.add_argument("--density", type=_density, default=1.0)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="schedule an instance")
    shared(s)
    s.add_argument("--algo", choices=sorted(ALGORITHMS), default="hsa")
    s.add_argument("--mode", choices=["hybrid", "threshold"], default="hybrid")
    s.add_argument("--t", type=_nonneg, default=DEFAULT_THRESHOLD, help="threshold for --mode threshold")
    s.add_argument("--emit-schedule", help="write the schedule to this file ('-' for stdout)")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("validate", help="check a schedule against an instance")
    shared(v)
    v.add_argument("--schedule", required=True)
    v.set_defaults(func=cmd_validate)

    o = sub.add_parser("oracle", help="exact optimum of a tiny instance")
    shared(o)
    o.add_argument("--cap", type=_pos, default=oracle.DEFAULT_EDGE_CAP, help="maximum number of edges")
    o.add_argument("--emit-schedule", help="write the optimal witness schedule")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="setup-cost sweep, CSV out")
    b.add_argument("--out", help="CSV file (default stdout)")
    b.add_argument("--seed", type=int)
    b.add_argument("--preset", choices=sorted(bench.PRESETS))
    b.add_argument("--n", type=_pos)
    b.add_argument("--m", type=_pos)
    b.add_argument("--wmax", type=_pos)
    b.add_argument("--density", type=_density)
    b.add_argument("--d-from", type=_nonneg)
    b.add_argument("--d-to", type=_nonneg)
    b.add_argument("--d-step", type=_pos)
    b.add_argument("--reps", type=_pos, help="instances per d")
    b.add_argument("--algos", help="comma-separated subset of " + ",".join(bench.ALGORITHM_NAMES))
    b.add_argument("--reuse-instances", action="store_true", help="same instance set for every d")
    b.add_argument("--jobs", type=_pos, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (DomainError, ParseError, ScheduleValidationError, oracle.InstanceTooLarge, ValueError, KeyError) as e:
        print(f"pbsched {args.command}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
