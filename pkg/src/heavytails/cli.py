"""Command-line interface: stats, fit, compare, diagnose, simulate.

Every command is deterministic given (inputs, flags, seed); ``--seed`` is
mandatory where randomness is involved, with the HEAVYTAIL_SEED environment
variable as fallback.  Exit codes: 0 success, 2 data error, 3 estimation
failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from datetime import datetime
from pathlib import Path

import numpy as np

from .analysis import (
    RESIDUE_VARIANTS,
    ablate_mixture,
    compare_models,
    descriptive_stats,
    posterior_probabilities,
    residue_analysis,
)
from .distributions import FAMILY_ORDER, distribution_from_dict
from .errors import DataError, DomainError, EstimationError
from .estimation import FitConfig, fit
from .gof import chi_square_test, gof_report
from .ingestion import ColumnSchema, ReturnSeries, load_csv, log_returns, window

STATS_COLUMNS = ["label", "n", "mean", "sd", "skewness", "kurtosis", "min", "max"]
RETURNS_COLUMN = "draw"

# parameters re-estimated in each residue variant: full mixture, minus the
# nu=4 component, minus the nu=4 and nu=12 components
_VARIANT_PARAM_COUNTS = {"3St": 8, "3Stm4": 5, "3Stm4m12": 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "NA"
        return repr(value)
    return str(value)


def _jsonable(obj):
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(float(v)) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonable(obj.item())
    return obj


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _write_text(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def write_returns_csv(path, values) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([RETURNS_COLUMN])
        for v in values:
            writer.writerow([repr(float(v))])


def read_returns_csv(path, label=None) -> ReturnSeries:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or RETURNS_COLUMN not in reader.fieldnames:
            raise DataError(f"{path}: expected a '{RETURNS_COLUMN}' column")
        values = []
        for record in reader:
            raw = record[RETURNS_COLUMN]
            try:
                values.append(float(raw))
            except (TypeError, ValueError) as exc:
                raise DataError(
                    f"{path}: line {reader.line_num}: bad value {raw!r}"
                ) from exc
    if not values:
        raise DataError(f"{path}: no data rows")
    return ReturnSeries(
        returns=np.asarray(values, dtype=float),
        label=label if label is not None else path.stem,
    )


def _parse_ts(raw: str):
    try:
        return datetime.fromisoformat(raw)
    except ValueError as exc:
        raise DomainError(f"bad timestamp {raw!r}") from exc


def _load_series(args) -> list:
    schema = ColumnSchema.parse(args.schema) if args.schema else ColumnSchema()
    series = []
    for path in args.input:
        if getattr(args, "returns", False):
            series.append(read_returns_csv(path))
            continue
        prices = load_csv(path, schema=schema, frequency=args.frequency)
        if args.from_ts or args.to_ts:
            start = _parse_ts(args.from_ts) if args.from_ts else prices.timestamps[0]
            end = _parse_ts(args.to_ts) if args.to_ts else prices.timestamps[-1]
            prices = window(prices, start, end)
        if len(prices) < 2:
            raise DataError(f"series {prices.label!r}: too few observations")
        rs = log_returns(prices, drop_zeros=True,
                         intraday_only=getattr(args, "intraday_only", False))
        if len(rs) == 0:
            raise DataError(f"series {rs.label!r}: no nonzero returns")
        series.append(rs)
    return series


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HEAVYTAIL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"HEAVYTAIL_SEED must be an integer, got {env!r}") from exc
    raise DomainError("a seed is required: pass --seed or set HEAVYTAIL_SEED")


def _fit_config(args) -> FitConfig:
    return FitConfig(
        max_iterations=getattr(args, "max_iterations", None),
        restarts=getattr(args, "restarts", None) or 5,
        seed=_resolve_seed(args),
    )


def _load_params_file(path):
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read params file {path}: {exc}") from exc
    return distribution_from_dict(payload)


# ---------------------------------------------------------------------------
# commands

def _cmd_stats(args) -> int:
    series = _load_series(args)
    rows = []
    for rs in series:
        stats = descriptive_stats(rs.returns)
        rows.append([rs.label] + stats.to_row())
    if args.format == "json":
        payload = [dict(zip(STATS_COLUMNS, row)) for row in rows]
        _write_text(args.out, dumps(payload))
    else:
        lines = [",".join(STATS_COLUMNS)]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_fit(args) -> int:
    series = _load_series(args)[0]
    config = _fit_config(args)
    try:
        result = fit(args.family, series.returns, config)
    except EstimationError as exc:
        _write_text(args.out, dumps({
            "error": {"type": "estimation", "message": str(exc)},
            "family": args.family,
            "label": series.label,
        }))
        return 3
    report = gof_report(series.returns, result)
    payload = result.to_dict()
    payload.update(
        label=series.label,
        seed=config.seed,
        gof={"ks": report.ks, "ad": report.ad, "aic": report.aic,
             "bic": report.bic},
    )
    _write_text(args.out, dumps(payload))
    return 0


def _matrix_lines(table, crit) -> list:
    header = ["label"] + table.families + ["winner"]
    lines = [",".join(header)]
    for label, row, winners in zip(table.labels, table.rows, table.winners):
        cells = [label]
        for fam in table.families:
            cell = row[fam]
            cells.append(_fmt(getattr(cell.report, crit)) if cell.ok else "ERROR")
        cells.append(winners.get(crit, ""))
        lines.append(",".join(cells))
    return lines


def _cmd_compare(args) -> int:
    series = _load_series(args)
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in FAMILY_ORDER]
    if unknown:
        raise DomainError(f"unknown families: {unknown}")
    config = _fit_config(args)
    table = compare_models(series, families, config, jobs=args.jobs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        payload = {
            "families": table.families,
            "labels": table.labels,
            "criteria": {},
            "tally": table.tally,
        }
        for crit in ("ks", "ad", "aic", "bic"):
            rows = []
            for label, row, winners in zip(table.labels, table.rows, table.winners):
                cells = {}
                for fam in table.families:
                    cell = row[fam]
                    cells[fam] = (
                        getattr(cell.report, crit) if cell.ok
                        else {"error": cell.error}
                    )
                rows.append({"label": label, "values": cells,
                             "winner": winners.get(crit)})
            payload["criteria"][crit] = rows
        (out_dir / "compare.json").write_text(dumps(payload), encoding="utf-8")
    else:
        for crit in ("ks", "ad", "aic", "bic"):
            text = "\n".join(_matrix_lines(table, crit)) + "\n"
            (out_dir / f"{crit}.csv").write_text(text, encoding="utf-8")
        lines = [",".join(["criterion"] + table.families)]
        for crit in ("ks", "ad", "aic", "bic"):
            lines.append(",".join(
                [crit] + [str(table.tally[crit][f]) for f in table.families]
            ))
        (out_dir / "tally.csv").write_text("\n".join(lines) + "\n",
                                           encoding="utf-8")
    tally_payload = {"families": table.families, "tally": table.tally,
                     "n_series": len(table.labels)}
    (out_dir / "tally.json").write_text(dumps(tally_payload), encoding="utf-8")
    return 0


def _cmd_diagnose(args) -> int:
    series = _load_series(args)[0]
    dist = _load_params_file(args.params)
    if dist.family != "3St":
        raise DomainError(
            "params file must describe a 3-component mixture with dofs (4, 12, 39)"
        )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    trace = posterior_probabilities(dist, series.returns)
    lines = ["x,tau1,tau2,tau3"]
    for xi, taus in zip(trace.x, trace.tau):
        lines.append(",".join([_fmt(float(xi))] + [_fmt(float(t)) for t in taus]))
    (out_dir / "posterior.csv").write_text("\n".join(lines) + "\n",
                                           encoding="utf-8")

    analysis = residue_analysis(series.returns, dist, bins=args.bins)
    header = ["bin_left", "bin_right", "empirical_freq"]
    for name in RESIDUE_VARIANTS:
        header += [f"model_freq_{name}", f"res_{name}", f"rescaled_{name}"]
    lines = [",".join(header)]
    for i in range(len(analysis.empirical_freq)):
        row = [
            _fmt(float(analysis.bin_edges[i])),
            _fmt(float(analysis.bin_edges[i + 1])),
            _fmt(float(analysis.empirical_freq[i])),
        ]
        for name in RESIDUE_VARIANTS:
            row += [
                _fmt(float(analysis.model_freq[name][i])),
                _fmt(float(analysis.res[name][i])),
                _fmt(float(analysis.rescaled[name][i])),
            ]
        lines.append(",".join(row))
    (out_dir / "residues.csv").write_text("\n".join(lines) + "\n",
                                          encoding="utf-8")

    variants = {
        "3St": dist,
        "3Stm4": ablate_mixture(dist, {4}),
        "3Stm4m12": ablate_mixture(dist, {4, 12}),
    }
    results = {}
    for name in RESIDUE_VARIANTS:
        results[name] = chi_square_test(
            series.returns, variants[name], bins=args.bins,
            estimated_params=_VARIANT_PARAM_COUNTS[name],
        ).to_dict()
    payload = {
        "order": list(RESIDUE_VARIANTS),
        "results": results,
        "rescale_a": analysis.a,
        "bins": args.bins,
        "label": series.label,
    }
    (out_dir / "chi_square.json").write_text(dumps(payload), encoding="utf-8")
    return 0


def _cmd_simulate(args) -> int:
    dist = _load_params_file(args.params)
    if dist.family != args.family:
        raise DomainError(
            f"params file family {dist.family!r} does not match --family {args.family!r}"
        )
    seed = _resolve_seed(args)
    draws = dist.rvs(args.n, seed)
    write_returns_csv(args.out, draws)
    return 0


# ---------------------------------------------------------------------------
# parser

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_input_flags(p, multiple: bool):
    p.add_argument("--input", action="append", required=True,
                   help="input CSV (repeatable)" if multiple else "input CSV")
    p.add_argument("--schema", default=None,
                   help="column names as 'timestamp,price'")
    p.add_argument("--returns", action="store_true",
                   help="treat inputs as single-column returns files")
    p.add_argument("--from", dest="from_ts", default=None,
                   help="window start (ISO-8601)")
    p.add_argument("--to", dest="to_ts", default=None,
                   help="window end (ISO-8601, inclusive)")
    p.add_argument("--frequency", choices=["daily", "hourly"], default="daily")
    p.add_argument("--intraday-only", action="store_true",
                   help="drop returns spanning more than twice the modal gap")


def _build_parser() -> _Parser:
    parser = _Parser(prog="heavytail",
                     description="Heavy-tailed distribution fitting for log-returns")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("stats", help="descriptive statistics per series")
    _add_input_flags(p, multiple=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("fit", help="fit one family to one series")
    _add_input_flags(p, multiple=False)
    p.add_argument("--family", required=True, choices=FAMILY_ORDER)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=_positive_int, default=None)
    p.add_argument("--max-iterations", dest="max_iterations",
                   type=_positive_int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("compare", help="fit many families to many series")
    _add_input_flags(p, multiple=True)
    p.add_argument("--families", required=True,
                   help="comma-separated family tags")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=_positive_int, default=None)
    p.add_argument("--max-iterations", dest="max_iterations",
                   type=_positive_int, default=None)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("diagnose",
                       help="posterior, residue and chi-square diagnostics")
    _add_input_flags(p, multiple=False)
    p.add_argument("--params", required=True,
                   help="JSON file with the fitted 3St parameters")
    p.add_argument("--bins", type=_positive_int, default=500)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("simulate", help="draw a sample from a model")
    p.add_argument("--family", required=True, choices=FAMILY_ORDER)
    p.add_argument("--params", required=True,
                   help="JSON file with natural-scale parameters")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 64
    try:
        return args.func(args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except EstimationError as exc:
        print(f"estimation error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
