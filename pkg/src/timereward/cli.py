"""Batch command-line interface.

Subcommands: rewards, check, shapley, gen, realize, experiment-friedman.
Exit codes: 0 = success, 1 = I/O or validation error, 2 = a check failed
(an incentive, axiom, or experiment trend), so CI can assert that the
naive baseline fails and the time-aware schemes pass.

Environment: TIMEREWARD_SEED supplies the default seed; TIMEREWARD_THREADS
caps BLAS thread counts (applied before numeric imports).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2

REWARD_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["scheme", "param", "times", "rewards", "scaled_rewards", "rho", "incentive_report"],
    "properties": {
        "scheme": {"enum": ["cumulation", "timeval", "naive", "shapley"]},
        "param": {"type": ["number", "null"]},
        "times": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "rewards": {"type": "array", "items": {"type": "number"}},
        "scaled_rewards": {"type": "array", "items": {"type": "number"}},
        "rho": {"type": ["number", "null"]},
        "degenerate": {"type": "boolean"},
        "n": {"type": "integer", "minimum": 1},
        "grand_value": {"type": "number"},
        "tol": {"type": "number"},
        "seed": {"type": ["integer", "null"]},
        "incentive_report": {
            "type": "object",
            "patternProperties": {
                "^F[1-8]$": {
                    "type": "object",
                    "required": ["status", "instances"],
                    "properties": {
                        "status": {"enum": ["pass", "fail", "not_applicable"]},
                        "instances": {"type": "integer", "minimum": 0},
                        "witnesses": {"type": "array"},
                        "skipped": {"type": "array"},
                    },
                }
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

REALIZATION_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["method", "parties"],
    "properties": {
        "method": {"enum": ["temper", "subset"]},
        "seed": {"type": ["integer", "null"]},
        "parties": {
            "type": "object",
            "patternProperties": {
                "^[0-9]+$": {
                    "type": "object",
                    "required": ["achieved", "target"],
                    "properties": {
                        "kappa": {"type": "number"},
                        "selected": {"type": "array", "items": {"type": "integer"}},
                        "achieved": {"type": "number"},
                        "target": {"type": "number"},
                        "flags": {"type": "array", "items": {"type": "string"}},
                    },
                }
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _apply_thread_env():
    threads = os.environ.get("TIMEREWARD_THREADS")
    if threads and threads.isdigit():
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


def _default_seed() -> int:
    raw = os.environ.get("TIMEREWARD_SEED", "")
    return int(raw) if raw.lstrip("-").isdigit() else 0


def _write_json_atomic(doc: dict, path: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(doc: dict, out: str | None):
    if out:
        _write_json_atomic(doc, out)
    else:
        json.dump(doc, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip() != ""]


def _float_list(raw: str) -> list[float]:
    return [float(tok) for tok in raw.split(",") if tok.strip() != ""]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timereward",
        description="Time-aware reward values for collaborative data sharing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rewards", help="compute rewards and check incentives")
    p.add_argument("--game", required=True, help="game JSON file")
    p.add_argument("--times", help="comma-separated joining times (overrides the file)")
    p.add_argument("--scheme", required=True, choices=["cumulation", "timeval", "naive", "shapley"])
    p.add_argument("--beta", type=float, help="cumulation weight base (scheme=cumulation only)")
    p.add_argument("--gamma", type=float, help="ability decay rate (scheme=timeval only)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", help="report JSON path (stdout when omitted)")

    p = sub.add_parser("check", help="run the axiom checks on a game file")
    p.add_argument("--game", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")

    p = sub.add_parser("shapley", help="exact or Monte-Carlo Shapley values")
    p.add_argument("--game", required=True)
    p.add_argument("--permutations", type=int, help="use Monte-Carlo estimation")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("gen", help="generate a synthetic dataset CSV")
    p.add_argument("dataset", choices=["friedman"])
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--noise-std", type=float, default=1.0)
    p.add_argument("--seed", type=int)
    p.add_argument("--sizes", help="comma-separated per-party sizes to partition")
    p.add_argument("--out", required=True, help="CSV path")

    p = sub.add_parser("realize", help="realize a target reward value")
    p.add_argument("--method", required=True, choices=["temper", "subset"])
    p.add_argument("--game", help="table game JSON (subset method)")
    p.add_argument("--data", help="dataset CSV (GP-backed methods)")
    p.add_argument("--gp-config", help="GP config JSON")
    p.add_argument("--party", type=int, required=True)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out")

    p = sub.add_parser("experiment-friedman", help="end-to-end Friedman sweep")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--sizes", default="300,300,200")
    p.add_argument("--t1-grid", default="0,1,2,3,4")
    p.add_argument("--betas", default="0.5,1,2,1000")
    p.add_argument("--gammas", default="0,0.5,1")
    p.add_argument("--mnlp", action="store_true", help="also realize rewards and report MNLP")
    p.add_argument("--out-csv", required=True, help="tidy sweep CSV path")
    p.add_argument("--out", help="summary JSON path")

    return parser


def _load_game_and_times(args):
    from .games import TimeVector, load_game_json

    game, times = load_game_json(args.game)
    if getattr(args, "times", None):
        times = TimeVector.of(_int_list(args.times)).normalize()
    return game, times


def _cmd_rewards(args) -> int:
    from .games import TimeVector
    from .incentives import (
        cumulation_scheme,
        full_incentive_report,
        naive_scheme,
        shapley_scheme,
        time_valuation_scheme,
    )
    from .rewards import scale_rewards

    if args.beta is not None and args.scheme != "cumulation":
        raise ValueError("--beta is only valid with --scheme cumulation")
    if args.gamma is not None and args.scheme != "timeval":
        raise ValueError("--gamma is only valid with --scheme timeval")

    game, times = _load_game_and_times(args)
    if times is None:
        times = TimeVector.of([0] * game.n)
    if args.scheme == "cumulation":
        scheme = cumulation_scheme(1.0 if args.beta is None else args.beta)
    elif args.scheme == "timeval":
        scheme = time_valuation_scheme(1.0 if args.gamma is None else args.gamma)
    elif args.scheme == "naive":
        scheme = naive_scheme()
    else:
        scheme = shapley_scheme()

    rewards, report = full_incentive_report(game, times, scheme, args.tol)
    scaled = scale_rewards(game, rewards)
    doc = {
        "scheme": scheme.name,
        "param": scheme.param,
        "times": list(times.times),
        "rewards": [float(x) for x in scaled.rewards],
        "scaled_rewards": [float(x) for x in scaled.scaled],
        "rho": scaled.rho,
        "degenerate": scaled.degenerate,
        "n": game.n,
        "grand_value": game.grand_value(),
        "tol": args.tol,
        "incentive_report": report.to_dict(),
    }
    _emit(doc, args.out)
    return EXIT_OK if report.all_pass else EXIT_CHECK_FAILED


def _cmd_check(args) -> int:
    from .games import check_axioms, load_game_json

    game, _ = load_game_json(args.game)
    report = check_axioms(game, args.tol)
    _emit(report.to_dict(), args.out)
    return EXIT_OK if report.all_ok else EXIT_CHECK_FAILED


def _cmd_shapley(args) -> int:
    from .games import load_game_json
    from .shapley import shapley_exact, shapley_mc

    game, _ = load_game_json(args.game)
    if args.permutations:
        seed = args.seed if args.seed is not None else _default_seed()
        result = shapley_mc(game, args.permutations, seed)
    else:
        result = shapley_exact(game)
    doc = {
        "method": result.method,
        "values": [float(x) for x in result.values],
        "permutations_used": result.permutations_used,
        "std_error": None
        if result.std_error is None
        else [float(x) for x in result.std_error],
    }
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_gen(args) -> int:
    from .synthdata import gen_friedman, partition, save_dataset_csv

    seed = args.seed if args.seed is not None else _default_seed()
    data = gen_friedman(args.count, args.noise_std, seed)
    if args.sizes:
        data = partition(data, _int_list(args.sizes), seed + 1)
    save_dataset_csv(data, args.out)
    return EXIT_OK


def _cmd_realize(args) -> int:
    from .realization import select_subset, temper
    from .synthdata import load_dataset_csv
    from .valuation import load_gp_config, make_gp_model

    seed = args.seed if args.seed is not None else _default_seed()

    def gp_source():
        if not args.data:
            raise ValueError("--data CSV is required for GP-backed realization")
        dataset = load_dataset_csv(args.data)
        config = load_gp_config(args.gp_config) if args.gp_config else {}
        return make_gp_model(dataset, **config)

    if args.method == "temper":
        result = temper(gp_source(), args.party, args.target, args.tol)
        record = {
            "kappa": result.kappa,
            "achieved": result.achieved_value,
            "target": result.target_value,
            "flags": [],
        }
    else:
        source = None
        if args.game:
            from .games import load_game_json

            source, _ = load_game_json(args.game)
        else:
            source = gp_source()
        result = select_subset(source, args.party, args.target, seed)
        record = {
            "selected": [int(k) for k in result.selected],
            "achieved": result.achieved_value,
            "target": result.target_value,
            "flags": ["saturated"] if result.saturated else [],
        }
    doc = {"method": args.method, "seed": seed, "parties": {str(args.party): record}}
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    from .experiment import FriedmanConfig, run_friedman_experiment, write_rows_csv

    seed = args.seed if args.seed is not None else _default_seed()
    config = FriedmanConfig(
        count=args.count,
        sizes=tuple(_int_list(args.sizes)),
        seed=seed,
        t1_grid=tuple(_int_list(args.t1_grid)),
        betas=tuple(_float_list(args.betas)),
        gammas=tuple(_float_list(args.gammas)),
        with_mnlp=args.mnlp,
    )
    result = run_friedman_experiment(config)
    write_rows_csv(result.rows, args.out_csv)
    doc = {
        "seed": seed,
        "checks": result.checks,
        "witnesses": {k: [list(map(str, w)) for w in v] for k, v in result.witnesses.items()},
        "own_values": [float(x) for x in result.own_values],
        "shapley_values": [float(x) for x in result.shapley_values],
        "grand_value": result.grand_value,
        "rows_csv": args.out_csv,
    }
    _emit(doc, args.out)
    return EXIT_OK if result.all_pass else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    _apply_thread_env()
    args = _build_parser().parse_args(argv)
    handlers = {
        "rewards": _cmd_rewards,
        "check": _cmd_check,
        "shapley": _cmd_shapley,
        "gen": _cmd_gen,
        "realize": _cmd_realize,
        "experiment-friedman": _cmd_experiment,
    }
    from .errors import TimeRewardError

    try:
        return handlers[args.command](args)
    except (TimeRewardError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
