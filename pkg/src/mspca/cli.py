"""Command-line surface.

Subcommands wire the full pipeline: ``score`` emits per-sample scores,
``eval`` scores and evaluates a directory of labeled series, ``bench``
sweeps window sizes and reports op counts and wall time, ``synth``
materializes a synthetic series file.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .datasets import (
    generate_synthetic,
    load_nab_labels,
    load_series_dir,
    load_synth_spec,
    load_yahoo_csv,
    save_yahoo_csv,
)
from .errors import ConfigError, DataError, MspcaError, NumericError, UndefinedAUCError
from .pipeline import RunConfig, evaluate_records, grid_reports, score_values

_FLOAT_FMT = "{:.17g}"  # enough digits for exact float round-trips


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise ConfigError(message)


_CONFIG_FIELD_TYPES = {
    "mode": str,
    "basis": str,
    "scales": int,
    "fixed_p": int,
    "components": int,
    "epsilon": float,
    "agg": str,
    "mincorr_mode": str,
    "seed": int,
    "instrument": bool,
}


def _coerce(field: str, value):
    kind = _CONFIG_FIELD_TYPES[field]
    if kind is bool and isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"config field {field}: expected a boolean, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config field {field}: bad value {value!r}") from exc


def _load_config_file(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON config: {exc}") from exc
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
    unknown = set(raw) - set(_CONFIG_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"{path}: unknown config fields {sorted(unknown)}")
    return {k: _coerce(k, v) for k, v in raw.items()}


def _add_pipeline_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="config file (JSON or key=value); flags override it")
    parser.add_argument("--mode", choices=("fixed", "multiscale", "hierarchical"))
    parser.add_argument("--basis", choices=("identity", "haar"))
    parser.add_argument("--scales", type=int, metavar="J", help="number of dyadic scales")
    parser.add_argument("--fixed-p", dest="fixed_p", type=int, metavar="N", help="window size for fixed mode")
    parser.add_argument("--components", type=int, choices=(1, 2))
    parser.add_argument("--agg", choices=("norm", "pca2", "mincorr"))
    parser.add_argument("--mincorr-mode", dest="mincorr_mode", choices=("streaming", "offline"))
    parser.add_argument("--epsilon", type=float, metavar="F")
    parser.add_argument("--seed", type=int, metavar="N")
    parser.add_argument("--instrument", action="store_true", default=None,
                        help="report op counts alongside the main output")


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    settings = _load_config_file(args.config) if args.config else {}
    for field in _CONFIG_FIELD_TYPES:
        flag_value = getattr(args, field, None)
        if flag_value is not None:
            settings[field] = flag_value
    return RunConfig(**settings)


def _atomic_write_text(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _load_input_values(args: argparse.Namespace) -> np.ndarray:
    if bool(args.input) == bool(args.synth):
        raise ConfigError("provide exactly one of --input or --synth")
    if args.input:
        if not Path(args.input).is_file():
            raise DataError(f"input file not found: {args.input}")
        return load_yahoo_csv(args.input, allow_missing_labels=True).values
    return generate_synthetic(load_synth_spec(args.synth)).values


def _cmd_score(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    values = _load_input_values(args)
    result = score_values(values, config)
    n_scales = result.alphas.shape[1]
    lines = ["t," + ",".join(f"alpha_{j + 1}" for j in range(n_scales)) + ",final_score"]
    for t in range(len(values)):
        cells = [str(t)]
        cells += [_FLOAT_FMT.format(v) for v in result.alphas[t]]
        cells.append(_FLOAT_FMT.format(result.finals[t]))
        lines.append(",".join(cells))
    _atomic_write_text(args.out, "\n".join(lines) + "\n")
    if config.instrument:
        print(f"ops={result.ops} state_size={result.state_size}", file=sys.stderr)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    nab_labels = load_nab_labels(args.nab_labels) if args.nab_labels else None
    records, n_failed = load_series_dir(args.input, nab_labels=nab_labels)
    benchmark = Path(args.input).name
    if args.grid:
        payload = grid_reports(
            records, config, benchmark=benchmark,
            label_dilation=args.label_dilation, n_failed_files=n_failed,
        )
    else:
        payload = evaluate_records(
            records, config, benchmark=benchmark,
            label_dilation=args.label_dilation, n_failed_files=n_failed,
        )
    _atomic_write_text(args.report, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    if not (args.p_max >= 8 and (args.p_max & (args.p_max - 1)) == 0):
        raise ConfigError(f"--p-max must be a power of two >= 8, got {args.p_max}")
    rng = np.random.default_rng(config.seed)
    values = rng.normal(0.0, 1.0, args.length)
    rows = []
    p = 8
    while p <= args.p_max:
        scales = p.bit_length() - 1
        for mode in ("multiscale", "hierarchical"):
            run_config = replace(config, mode=mode, scales=scales)
            start = time.perf_counter()
            result = score_values(values, run_config)
            elapsed = time.perf_counter() - start
            rows.append({"P": p, "mode": mode, "ops": result.ops, "seconds": elapsed})
        p *= 2
    payload = {"length": args.length, "basis": config.basis,
               "components": config.components, "rows": rows}
    _atomic_write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    record = generate_synthetic(load_synth_spec(args.spec))
    _ensure_parent(args.out)
    save_yahoo_csv(record, args.out)
    return 0


def _ensure_parent(path) -> None:
    parent = Path(path).parent
    if not parent.is_dir():
        raise DataError(f"output directory does not exist: {parent}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mspca", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_score = sub.add_parser("score", help="score one series to CSV")
    _add_pipeline_flags(p_score)
    p_score.add_argument("--input", metavar="PATH", help="CSV with a 'value' column")
    p_score.add_argument("--synth", metavar="SPEC", help="synthetic spec file instead of --input")
    p_score.add_argument("--out", metavar="PATH", required=True)
    p_score.set_defaults(handler=_cmd_score)

    p_eval = sub.add_parser("eval", help="evaluate a directory of labeled series")
    _add_pipeline_flags(p_eval)
    p_eval.add_argument("--input", metavar="DIR", required=True)
    p_eval.add_argument("--report", metavar="PATH", required=True)
    p_eval.add_argument("--nab-labels", dest="nab_labels", metavar="JSON",
                        help="combined-labels JSON; treat --input as timestamp,value CSVs")
    p_eval.add_argument("--grid", action="store_true",
                        help="one report per (mode, basis, aggregation, components)")
    p_eval.add_argument("--label-dilation", dest="label_dilation", type=int, default=0,
                        metavar="R", help="sensitivity-study label dilation radius")
    p_eval.set_defaults(handler=_cmd_eval)

    p_bench = sub.add_parser("bench", help="op-count and timing sweep over window sizes")
    _add_pipeline_flags(p_bench)
    p_bench.add_argument("--length", type=int, default=4096, metavar="T")
    p_bench.add_argument("--p-max", dest="p_max", type=int, default=1024, metavar="P")
    p_bench.add_argument("--out", metavar="PATH", required=True)
    p_bench.set_defaults(handler=_cmd_bench)

    p_synth = sub.add_parser("synth", help="generate a synthetic series CSV")
    p_synth.add_argument("--spec", metavar="PATH", required=True)
    p_synth.add_argument("--out", metavar="PATH", required=True)
    p_synth.set_defaults(handler=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, UndefinedAUCError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except MspcaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
