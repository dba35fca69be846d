"""
dre-bot command line.

    dre-bot sweep     gamma x lambda grid of learning games
    dre-bot baseline  random-action games
    dre-bot play      one game with full logs and Q-table dumps
    dre-bot report    tables, correlations and charts from results CSVs
    dre-bot selftest  embedded invariant checks
    dre-bot serve     experiment HTTP service

Exit codes: 0 success, 1 usage or input error, 2 some games did not complete.
"""

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from .config import ConfigError, get_output_dir, get_settings
from .dre.actions import ACTION_NAMES
from .dre.perception import STATE_NAMES
from .harness import (
    ResultsError,
    read_results_csv,
    run_baseline_outcomes,
    run_game,
    run_sweep_outcomes,
    write_events_jsonl,
    write_lives_jsonl,
    write_qtable_dumps,
    write_results_csv,
)
from .learning.qtable_io import describe_policy
from .learning.sarsa import QTable
from .models.enums import Policy
from .models.request import ExperimentConfig
from .models.response import RunRecord
from .utils.helpers import parse_float_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARTIAL = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the input-error code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value experiment config file")
    parser.add_argument("--out", help="Output directory (default: DRE_OUTPUT_DIR or ./results)")
    parser.add_argument("--seed", type=int, help="Base seed (default: config, then DRE_SEED, then 0)")
    parser.add_argument("--deaths", type=int, help="DRE-Bot deaths per game")
    parser.add_argument("--parallel", type=int, help="Worker processes (default: one per game, capped at cores)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dre-bot", description="DRE-Bot Sarsa(lambda) arena experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Run the gamma x lambda learning sweep")
    _common(sweep)
    sweep.add_argument("--gammas", help="Comma-separated discount values")
    sweep.add_argument("--lambdas", help="Comma-separated trace-decay values")
    sweep.add_argument("--runs", type=int, help="Repetitions of the whole grid")
    sweep.set_defaults(func=cmd_sweep)

    baseline = sub.add_parser("baseline", help="Play random-action games")
    _common(baseline)
    baseline.add_argument("--games", type=int, help="Number of games (default 5)")
    baseline.set_defaults(func=cmd_baseline)

    play = sub.add_parser("play", help="Play one game and keep every log")
    _common(play)
    play.add_argument("--gamma", type=float, default=0.9)
    play.add_argument("--lambda", dest="lam", type=float, default=0.0)
    play.add_argument("--random", action="store_true", help="Random legal actions, no learning")
    play.set_defaults(func=cmd_play)

    report = sub.add_parser("report", help="Build report tables and charts from results CSVs")
    report.add_argument("--results", help="Learning sweep results CSV")
    report.add_argument("--baseline", help="Random-action results CSV")
    report.add_argument("--out", help="Output directory")
    report.add_argument("-v", "--verbose", action="store_true")
    report.set_defaults(func=cmd_report)

    selftest = sub.add_parser("selftest", help="Run the embedded invariant checks")
    selftest.add_argument("-v", "--verbose", action="store_true")
    selftest.set_defaults(func=cmd_selftest)

    serve = sub.add_parser("serve", help="Start the experiment HTTP service")
    serve.add_argument("--host", help="Bind address (default: DRE_HOST)")
    serve.add_argument("--port", type=int, help="Port (default: DRE_PORT)")
    serve.add_argument("-v", "--verbose", action="store_true")
    serve.set_defaults(func=cmd_serve)
    return parser


def load_experiment(args: argparse.Namespace) -> ExperimentConfig:
    """Config file values, then command-line overrides; the seed is pinned here."""
    cfg = ExperimentConfig.from_file(args.config) if getattr(args, "config", None) else ExperimentConfig()
    overrides: dict[str, object] = {}
    try:
        for flag, field in (("gammas", "gammas"), ("lambdas", "lambdas")):
            value = getattr(args, flag, None)
            if value is not None:
                overrides[field] = parse_float_list(value)
    except ValueError as e:
        raise ConfigError(f"bad parameter list: {e}", error_code="config.bad_value")
    for flag, field in (("gamma", "gammas"), ("lam", "lambdas")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = [value]
    for flag, field in (("runs", "runs"), ("deaths", "deaths_per_game"), ("games", "baseline_games")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    overrides["base_seed"] = args.seed if getattr(args, "seed", None) is not None else cfg.seed

    try:
        return ExperimentConfig.model_validate({**cfg.model_dump(), **overrides})
    except ValidationError as e:
        raise ConfigError(f"invalid options: {e}", error_code="config.bad_value")


def _parallel(args: argparse.Namespace) -> int | None:
    return args.parallel or get_settings().parallel or None


def _exit_code(records: list[RunRecord]) -> int:
    return EXIT_OK if all(r.completed for r in records) else EXIT_PARTIAL


def cmd_sweep(args: argparse.Namespace) -> int:
    from .harness.report import build_report, write_heatmaps

    cfg = load_experiment(args)
    out = get_output_dir(args.out)
    outcomes = run_sweep_outcomes(cfg, _parallel(args))
    records = [o.record for o in outcomes]

    write_results_csv(out / "results.csv", records)
    write_lives_jsonl(out / "lives.jsonl", records)
    for outcome in outcomes:
        if outcome.record.completed and outcome.q_tables:
            write_qtable_dumps(out / "qtables", outcome.record.key, outcome.q_tables)
    text = build_report(learning=records)
    (out / "report.txt").write_text(text, encoding="utf-8")
    write_heatmaps(out, records)
    print(text)
    return _exit_code(records)


def cmd_baseline(args: argparse.Namespace) -> int:
    from .harness.report import build_report

    cfg = load_experiment(args)
    out = get_output_dir(args.out)
    outcomes = run_baseline_outcomes(cfg, cfg.baseline_games, _parallel(args))
    records = [o.record for o in outcomes]

    write_results_csv(out / "baseline.csv", records)
    write_lives_jsonl(out / "baseline_lives.jsonl", records)
    text = build_report(baseline=records)
    (out / "baseline_report.txt").write_text(text, encoding="utf-8")
    print(text)
    return _exit_code(records)


def cmd_play(args: argparse.Namespace) -> int:
    cfg = load_experiment(args)
    out = get_output_dir(args.out)
    policy = Policy.RANDOM if args.random else Policy.LEARNING
    gamma, lam = (None, None) if args.random else (cfg.gammas[0], cfg.lambdas[0])
    outcome = run_game(cfg, gamma, lam, cfg.seed, policy, record_events=True)
    record = outcome.record

    write_results_csv(out / "play.csv", [record])
    write_lives_jsonl(out / "play_lives.jsonl", [record])
    if outcome.events is not None:
        write_events_jsonl(out / "play_events.jsonl", outcome.events)
    if policy == Policy.LEARNING and outcome.q_tables:
        write_qtable_dumps(out / "qtables", record.key, outcome.q_tables)
        lines = []
        for mode, values in outcome.q_tables.items():
            lines.append(f"[{mode.value}]")
            lines.extend(describe_policy(QTable.from_array(values), STATE_NAMES[mode], ACTION_NAMES[mode]))
        (out / "play_policy.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    print(
        f"{record.key}: total reward {record.total_reward:.2f}, kills {record.kills}, "
        f"deaths {record.deaths}, K-D {record.kd_difference}, avg {record.avg_reward:.4f}, "
        f"ticks {record.ticks}"
    )
    if record.error:
        print(f"incomplete: {record.error}", file=sys.stderr)
    return _exit_code([record])


def cmd_report(args: argparse.Namespace) -> int:
    from .harness.report import build_report, write_heatmaps

    if not args.results and not args.baseline:
        print("report needs --results and/or --baseline", file=sys.stderr)
        return EXIT_INPUT
    learning: list[RunRecord] = []
    baseline: list[RunRecord] = []
    if args.results:
        for r in read_results_csv(Path(args.results)):
            (baseline if r.policy == Policy.RANDOM else learning).append(r)
    if args.baseline:
        baseline.extend(read_results_csv(Path(args.baseline)))

    out = get_output_dir(args.out)
    text = build_report(learning=learning or None, baseline=baseline or None)
    (out / "report.txt").write_text(text, encoding="utf-8")
    if learning:
        write_heatmaps(out, learning)
    print(text)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    from .selftest import run_selftest

    results = run_selftest()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<22} {r.detail} [{r.seconds:.2f}s]")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_INPUT


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    settings = get_settings()
    uvicorn.run(
        "app.main:app",
        host=args.host or settings.host,
        port=args.port or settings.port,
        reload=settings.debug,
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose or get_settings().debug else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, ResultsError) as e:
        logger.error(f"{e.error_code or 'error'}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
