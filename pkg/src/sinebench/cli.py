"""Command-line front end.

Subcommands: ``generate`` (dataset CSVs + manifests), ``run`` (score the
roster, write results CSV + run manifest), ``report`` (tables and figures
from a results CSV), ``all`` (the three in sequence).

Exit codes: 0 success, 1 usage error, 2 I/O failure, 3 an external
forecaster broke the wire protocol (partial results are still written).
"""

import argparse
import json
import os
import sys

from . import __version__
from .dataset import (
    DRAWS_PER_CELL,
    N_VALUES,
    SAMPLING_RATIOS,
    SNR_DB_VALUES,
    write_dataset_csv,
)
from .fft_forecaster import DEFAULT_THRESHOLD
from .harness import (
    ModelSpec,
    RunConfig,
    run_benchmark,
    run_manifest,
    write_results_csv,
    write_run_manifest,
)
from .reporting import write_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PROTOCOL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this harness reserves 2 for
    # I/O failures, so route usage problems to exit code 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _parse_models(text: str) -> tuple[ModelSpec, ...]:
    """'fft,ar' or 'mymodel=node adapter.js' (comma-separated entries)."""
    specs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            model_id, command = chunk.split("=", 1)
            specs.append(ModelSpec(model_id.strip(), command.strip()))
        else:
            specs.append(ModelSpec(chunk))
    if not specs:
        raise ValueError("model roster is empty")
    return tuple(specs)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sinebench",
        description="Benchmark forecasters on noisy periodic series.",
    )
    parser.add_argument("--version", action="version", version=f"sinebench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output-dir", default="bench_out", help="artifact directory")
        p.add_argument("--seed", type=int, default=0, help="master seed")
        p.add_argument("--sets", default="A,B", help="comma list from {A,B}")
        p.add_argument("--n-values", type=_int_list, default=N_VALUES)
        p.add_argument("--draws", type=int, default=DRAWS_PER_CELL)
        p.add_argument("--snr-values", type=_float_list, default=SNR_DB_VALUES)
        p.add_argument("--ratio-values", type=_float_list, default=SAMPLING_RATIOS)
        p.add_argument("--context-length", type=int, default=512)
        p.add_argument("--horizon", type=int, default=64)

    def add_run_options(p):
        p.add_argument(
            "--models",
            type=_parse_models,
            default=(ModelSpec("fft"), ModelSpec("ar")),
            help="comma list of built-ins (fft, ar, naive) and/or id=command adapters",
        )
        p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
        p.add_argument("--max-order", type=int, default=128)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--bridge-timeout", type=float, default=60.0)

    p_gen = sub.add_parser("generate", help="write dataset CSVs and manifests")
    add_common(p_gen)

    p_run = sub.add_parser("run", help="run the forecaster roster, write results")
    add_common(p_run)
    add_run_options(p_run)

    p_rep = sub.add_parser("report", help="tables and figures from a results CSV")
    p_rep.add_argument("--results", required=True, help="path to results.csv")
    p_rep.add_argument("--output-dir", default=None, help="default: <results dir>/report")
    p_rep.add_argument("--run-manifest", default=None)

    p_all = sub.add_parser("all", help="generate, run, report")
    add_common(p_all)
    add_run_options(p_all)

    return parser


def _config_from(args) -> RunConfig:
    sets = tuple(s.strip() for s in args.sets.split(",") if s.strip())
    for s in sets:
        if s not in ("A", "B"):
            raise _UsageError(f"sinebench: error: unknown set {s!r}")
    return RunConfig(
        master_seed=args.seed,
        sets=sets,
        n_values=tuple(args.n_values),
        draws_per_cell=args.draws,
        snr_values=tuple(args.snr_values),
        ratio_values=tuple(args.ratio_values),
        context_length=args.context_length,
        horizon=args.horizon,
        models=tuple(getattr(args, "models", (ModelSpec("fft"), ModelSpec("ar")))),
        threshold_fraction=getattr(args, "threshold", DEFAULT_THRESHOLD),
        max_order=getattr(args, "max_order", 128),
        jobs=getattr(args, "jobs", 1),
        bridge_timeout=getattr(args, "bridge_timeout", 60.0),
    )


def _cmd_generate(args, config) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    for set_label in config.sets:
        path = os.path.join(args.output_dir, f"dataset_{set_label}.csv")
        manifest = write_dataset_csv(
            path, set_label, config.master_seed, **config.grid_kwargs()
        )
        print(
            f"wrote {path}: {manifest['series_count']} series, "
            f"sha256 {manifest['sha256'][:12]}..."
        )
    return EXIT_OK


def _cmd_run(args, config) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    result = run_benchmark(config, log=lambda line: print(line, flush=True))
    results_path = os.path.join(args.output_dir, "results.csv")
    sha = write_results_csv(results_path, result.records)
    manifest = run_manifest(config, result, sha)
    manifest_path = os.path.join(args.output_dir, "run_manifest.json")
    write_run_manifest(manifest_path, manifest)
    n_err = manifest["error_count"]
    print(
        f"wrote {results_path}: {len(result.records)} records "
        f"({n_err} errors) in {result.elapsed_seconds:.1f} s"
    )
    if result.failures:
        for model_id, reason in result.failures:
            print(f"protocol failure [{model_id}]: {reason}", file=sys.stderr)
        return EXIT_PROTOCOL
    return EXIT_OK


def _cmd_report(results_path, out_dir, manifest_path) -> int:
    if not os.path.exists(results_path):
        raise FileNotFoundError(f"results file not found: {results_path}")
    if out_dir is None:
        out_dir = os.path.join(os.path.dirname(os.path.abspath(results_path)), "report")
    written = write_report(results_path, out_dir, manifest_path)
    print(f"wrote {len(written)} report files under {out_dir}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "generate":
            return _cmd_generate(args, _config_from(args))
        if args.command == "run":
            return _cmd_run(args, _config_from(args))
        if args.command == "report":
            return _cmd_report(args.results, args.output_dir, args.run_manifest)
        if args.command == "all":
            config = _config_from(args)
            code = _cmd_generate(args, config)
            if code != EXIT_OK:
                return code
            code = _cmd_run(args, config)
            if code not in (EXIT_OK, EXIT_PROTOCOL):
                return code
            report_code = _cmd_report(
                os.path.join(args.output_dir, "results.csv"),
                os.path.join(args.output_dir, "report"),
                None,
            )
            return code if code != EXIT_OK else report_code
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"sinebench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sinebench: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"sinebench: i/o error: bad manifest: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
