"""Command-line front end: `simulate` runs the study protocol, `census`
samples exhaustive landscape analyses, `walk` traces a single walk."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .experiment import (FIXED_PER_RUN, PER_SIMULATION, ExperimentConfig, derive_stream,
                         resolve_weights, run_experiment, weights_label)
from .landscape import Landscape, PATTERNS, as_genotype, random_genotype
from .oracle import sample_census_stats
from .rng import Stream
from .search import FIRST_IMPROVEMENT, LONG_JUMP, STEEPEST_ASCENT, SearchStrategy, adaptive_walk

CSV_FIELDS = ("k", "mean_fitness", "stddev", "stderr", "mean_moves", "simulations",
              "seed", "n", "weights", "pattern", "landscape_mode", "strategy")
CSV_HEADER = ",".join(CSV_FIELDS)

STRATEGY_FLAGS = {"first": FIRST_IMPROVEMENT, "steepest": STEEPEST_ASCENT,
                  "longjump": LONG_JUMP}
MODE_FLAGS = {"per-sim": PER_SIMULATION, "fixed-per-run": FIXED_PER_RUN}

DEFAULT_SEED = 42


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def output_records(summaries, config: ExperimentConfig) -> list[dict]:
    """KSummary rows plus the config echo, keyed like the CSV columns."""
    echo = {
        "seed": config.master_seed,
        "n": config.n,
        "weights": weights_label(config.weights),
        "pattern": config.pattern,
        "landscape_mode": config.landscape_mode,
        "strategy": config.strategy.kind,
    }
    return [{"k": s.k, "mean_fitness": s.mean_fitness, "stddev": s.stddev,
             "stderr": s.stderr, "mean_moves": s.mean_moves,
             "simulations": s.simulations, **echo} for s in summaries]


def _config_echo(config: ExperimentConfig) -> dict:
    return {
        "n": config.n,
        "k_values": list(config.k_values),
        "runs": config.runs,
        "sims_per_run": config.sims_per_run,
        "weights": weights_label(config.weights),
        "pattern": config.pattern,
        "landscape_mode": config.landscape_mode,
        "strategy": config.strategy.kind,
        "jump_width": config.strategy.jump_width,
        "max_evaluations": config.strategy.max_evaluations,
        "master_seed": config.master_seed,
        "version": __version__,
    }


def write_results(summaries, config: ExperimentConfig, fmt: str, path=None) -> None:
    """Write summaries as CSV (pinned header, 17-significant-digit floats)
    or JSON (same fields plus a config object)."""
    if not summaries:
        raise ValueError("no summaries to write")
    records = output_records(summaries, config)
    if fmt == "csv":
        lines = [CSV_HEADER]
        lines += [",".join(_fmt(rec[f]) for f in CSV_FIELDS) for rec in records]
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps({"config": _config_echo(config), "results": records},
                          indent=2) + "\n"
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def emit_plot(summaries, path) -> None:
    """Line/marker chart (x = K, y = mean fitness, +/-1 stderr bars) plus a
    headerless `k<TAB>mean<TAB>stderr` sidecar at `<path>.dat`."""
    if not summaries:
        raise ValueError("no summaries to plot")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [s.k for s in summaries]
    means = [s.mean_fitness for s in summaries]
    errs = [s.stderr for s in summaries]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.errorbar(ks, means, yerr=errs, marker="o", capsize=3)
    ax.set_xlabel("K")
    ax.set_ylabel("mean endpoint fitness")
    ax.set_xticks(ks)
    fig.tight_layout()
    fig.savefig(str(path))
    plt.close(fig)
    with open(f"{path}.dat", "w", newline="") as fh:
        for s in summaries:
            fh.write(f"{s.k}\t{s.mean_fitness:.17g}\t{s.stderr:.17g}\n")


def _parse_k_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--k expects comma-separated integers, got {text!r}") from None


def _parse_weights(text: str):
    if text in ("equal", "itdc"):
        return text
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValueError(
            f"--weights expects 'equal', 'itdc', or comma-separated betas, got {text!r}"
        ) from None


def _strategy_from_args(args, n: int) -> SearchStrategy:
    kind = STRATEGY_FLAGS[args.strategy]
    width = args.jump_width
    if kind == LONG_JUMP and width == 0:
        width = n  # default long jump: maximally distant proposals
    return SearchStrategy(kind=kind, jump_width=width)


def _cmd_simulate(args) -> int:
    config = ExperimentConfig(
        n=args.n,
        k_values=_parse_k_list(args.k),
        runs=args.runs,
        sims_per_run=args.sims,
        weights=_parse_weights(args.weights),
        pattern=args.pattern,
        landscape_mode=MODE_FLAGS[args.landscape_mode],
        strategy=_strategy_from_args(args, args.n),
        master_seed=args.seed,
    )
    summaries = run_experiment(config, threads=args.threads)
    write_results(summaries, config, args.format, args.out)
    if args.plot:
        emit_plot(summaries, args.plot)
    return 0


def _cmd_census(args) -> int:
    phi = resolve_weights(_parse_weights(args.weights), args.n)
    stats = sample_census_stats(args.n, args.k, phi, args.pattern, args.samples,
                                Stream(args.seed))
    payload = {
        "n": args.n,
        "k": args.k,
        "pattern": args.pattern,
        "weights": weights_label(_parse_weights(args.weights)),
        "seed": args.seed,
        "version": __version__,
        **stats,
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_walk(args) -> int:
    phi = resolve_weights(_parse_weights(args.weights), args.n)
    land = Landscape.generate(args.n, args.k, phi, args.pattern,
                              derive_stream(args.seed, args.k, 0, 0, "landscape"))
    if args.start is not None:
        start = as_genotype([int(c) for c in args.start], args.n)
    else:
        start = random_genotype(args.n, derive_stream(args.seed, args.k, 0, 0, "start"))
    strategy = _strategy_from_args(args, args.n)
    trace = adaptive_walk(land, start, strategy, derive_stream(args.seed, args.k, 0, 0, "walk"))
    if args.format == "json":
        payload = {
            "steps": [{"genotype": "".join(str(b) for b in g), "fitness": float(f)}
                      for g, f in zip(trace.genotypes, trace.fitnesses)],
            "moves": trace.moves,
            "evaluations_used": trace.evaluations_used,
            "terminated_at_local_optimum": trace.terminated_at_local_optimum,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"{i}\t{''.join(str(b) for b in g)}\t{f:.17g}"
                 for i, (g, f) in enumerate(zip(trace.genotypes, trace.fitnesses))]
        lines.append(f"# moves={trace.moves} evaluations={trace.evaluations_used} "
                     f"terminated={'true' if trace.terminated_at_local_optimum else 'false'}")
        text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def _add_common(sub, *, weights_default="itdc"):
    sub.add_argument("--n", type=int, default=5, help="number of loci")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED, help="64-bit master seed")
    sub.add_argument("--weights", default=weights_default,
                     help="'equal', 'itdc', or comma-separated betas")
    sub.add_argument("--pattern", choices=PATTERNS, default="random",
                     help="epistatic partner assignment")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_strategy(sub):
    sub.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS), default="first",
                     help="walk strategy")
    sub.add_argument("--jump-width", type=int, default=0, dest="jump_width",
                     help="long-jump width (default: n)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nksim",
        description="Seeded weighted-NK landscape simulator: adaptive-walk studies, "
                    "exhaustive censuses, and single traced walks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="run the walk study over a list of K values")
    _add_common(sim)
    sim.add_argument("--k", default="0,1,2,3,4", help="comma-separated K values")
    sim.add_argument("--runs", type=int, default=5, help="runs per K")
    sim.add_argument("--sims", type=int, default=10_000, help="simulations per run")
    sim.add_argument("--landscape-mode", choices=sorted(MODE_FLAGS), default="per-sim",
                     dest="landscape_mode", help="fresh landscape per simulation or per run")
    _add_strategy(sim)
    sim.add_argument("--format", choices=("csv", "json"), default="csv")
    sim.add_argument("--plot", default=None, help="also write a vector chart here")
    sim.add_argument("--threads", type=int, default=0,
                     help="worker threads (0 = all cores)")
    sim.set_defaults(func=_cmd_simulate)

    # census works at any n, so its weights default cannot be the 5-locus preset
    cen = subs.add_parser("census", help="sampled exhaustive analysis of small landscapes")
    _add_common(cen, weights_default="equal")
    cen.add_argument("--k", type=int, default=2, help="epistasis degree")
    cen.add_argument("--samples", type=int, default=1000, help="landscapes to census")
    cen.set_defaults(func=_cmd_census)

    wlk = subs.add_parser("walk", help="trace one walk on a seeded landscape")
    _add_common(wlk)
    wlk.add_argument("--k", type=int, default=2, help="epistasis degree")
    wlk.add_argument("--start", default=None, help="start bits, e.g. 01101 (default: random)")
    _add_strategy(wlk)
    wlk.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="csv = tab-separated step lines")
    wlk.set_defaults(func=_cmd_walk)
    return parser


def main(argv=None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # CLI contract: diagnostics, never tracebacks
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
