"""Price-series ingestion: CSV loading, log-returns, windowing.

Input is plain CSV with a header row, ISO-8601 timestamps and decimal-point
prices; column names are configurable through :class:`ColumnSchema`.  Rows
may arrive unsorted (they are sorted on load) but duplicate timestamps are
rejected.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DataError

__all__ = [
    "ColumnSchema",
    "PriceSeries",
    "ReturnSeries",
    "load_csv",
    "write_csv",
    "log_returns",
    "window",
]


@dataclass(frozen=True)
class ColumnSchema:
    timestamp: str = "timestamp"
    price: str = "price"

    @classmethod
    def parse(cls, text: str) -> "ColumnSchema":
        """Parse a 'timestamp_col,price_col' flag value."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2 or not all(parts):
            raise DataError(
                f"schema must name two columns 'timestamp,price', got {text!r}"
            )
        return cls(timestamp=parts[0], price=parts[1])


@dataclass(frozen=True)
class PriceSeries:
    """Time-ordered positive closing prices."""

    timestamps: tuple
    prices: np.ndarray
    frequency: str = "daily"
    label: str = ""

    def __post_init__(self):
        if len(self.timestamps) != len(self.prices):
            raise DataError("timestamps and prices must align")
        for a, b in zip(self.timestamps, self.timestamps[1:]):
            if not a < b:
                raise DataError(f"timestamps not strictly increasing at {b}")
        if np.any(~(np.asarray(self.prices) > 0.0)):
            raise DataError("prices must be positive")

    def __len__(self) -> int:
        return len(self.prices)


@dataclass(frozen=True)
class ReturnSeries:
    """Log-returns with provenance."""

    returns: np.ndarray
    frequency: str = "daily"
    label: str = ""
    first_timestamp: Optional[datetime] = None
    last_timestamp: Optional[datetime] = None

    def __len__(self) -> int:
        return len(self.returns)


def _parse_timestamp(raw: str, line_num: int):
    try:
        return datetime.fromisoformat(raw.strip())
    except ValueError as exc:
        raise DataError(f"line {line_num}: bad timestamp {raw!r}") from exc


def _parse_price(raw: str, line_num: int) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise DataError(f"line {line_num}: bad price {raw!r}") from exc
    if not np.isfinite(value) or value <= 0.0:
        raise DataError(f"line {line_num}: price must be positive, got {raw!r}")
    return value


def load_csv(path, schema: Optional[ColumnSchema] = None,
             frequency: str = "daily", label: Optional[str] = None) -> PriceSeries:
    """Load a PriceSeries from CSV, sorting rows and rejecting duplicates."""
    schema = schema or ColumnSchema()
    path = Path(path)
    rows = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file")
        for col in (schema.timestamp, schema.price):
            if col not in reader.fieldnames:
                raise DataError(f"{path}: missing column {col!r}")
        for record in reader:
            line = reader.line_num
            ts = _parse_timestamp(record[schema.timestamp] or "", line)
            price = _parse_price(record[schema.price], line)
            rows.append((ts, price))
    if not rows:
        raise DataError(f"{path}: no data rows")
    rows.sort(key=lambda r: r[0])
    for (t0, _), (t1, _) in zip(rows, rows[1:]):
        if t0 == t1:
            raise DataError(f"{path}: duplicate timestamp {t0.isoformat()}")
    return PriceSeries(
        timestamps=tuple(t for t, _ in rows),
        prices=np.array([p for _, p in rows], dtype=float),
        frequency=frequency,
        label=label if label is not None else path.stem,
    )


def write_csv(series: PriceSeries, path,
              schema: Optional[ColumnSchema] = None) -> None:
    """Canonical re-serialization of a PriceSeries (round-trips load_csv)."""
    schema = schema or ColumnSchema()
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([schema.timestamp, schema.price])
        for ts, price in zip(series.timestamps, series.prices):
            writer.writerow([ts.isoformat(), repr(float(price))])


def log_returns(prices: PriceSeries, drop_zeros: bool = True,
                intraday_only: bool = False) -> ReturnSeries:
    """Consecutive log-returns ln(P_{i+1}/P_i).

    ``drop_zeros`` removes exactly-zero returns (the nonzero-return
    convention of the summary tables).  ``intraday_only`` additionally
    drops returns spanning more than twice the modal observation spacing,
    e.g. overnight gaps in hourly data.
    """
    if len(prices) < 2:
        raise DataError("need at least two observations to form returns")
    values = np.log(prices.prices[1:] / prices.prices[:-1])
    keep = np.ones(len(values), dtype=bool)
    if intraday_only:
        gaps = [
            b - a for a, b in zip(prices.timestamps, prices.timestamps[1:])
        ]
        modal_gap, _ = Counter(gaps).most_common(1)[0]
        keep &= np.array([g <= 2 * modal_gap for g in gaps])
    if drop_zeros:
        keep &= values != 0.0
    return ReturnSeries(
        returns=values[keep],
        frequency=prices.frequency,
        label=prices.label,
        first_timestamp=prices.timestamps[0],
        last_timestamp=prices.timestamps[-1],
    )


def window(series: PriceSeries, start, end) -> PriceSeries:
    """Inclusive sub-series with start <= t <= end; may be empty."""
    if not start < end:
        raise DataError("window requires start < end")
    keep = [i for i, t in enumerate(series.timestamps) if start <= t <= end]
    return PriceSeries(
        timestamps=tuple(series.timestamps[i] for i in keep),
        prices=series.prices[keep] if keep else np.empty(0),
        frequency=series.frequency,
        label=series.label,
    )
