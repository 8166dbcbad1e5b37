"""Sliding-window correlation indicator engine.

For each evaluated period t a lagged window of the signal (rows at t-1..t-k)
is formed, reduced to a p x p matrix, and each channel's indicator is the row
sum of absolute entries.  Two matrix modes ship:

  raw           (1/(k-1)) * W^T W, the literal inner-product average;
  standardized  the same applied to within-window z-scores, i.e. Pearson
                correlation; zero-variance channels get an all-zero row and
                column, diagonal included.

The grand total is the double sum of all per-channel indicators over all
evaluated periods.  An incremental O(p^2)-per-step path is provided alongside
the naive per-window computation and must agree with it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateWindow,
    DimensionMismatch,
    IndexOutOfRange,
    InsufficientHistory,
)
from .model import CompetencySignal, _frozen

MODES = ("raw", "standardized")
STARTUPS = ("skip", "grow")


@dataclass(frozen=True)
class WindowSpec:
    k: int
    mode: str = "standardized"
    startup: str = "skip"

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"window length k must be >= 2, got {self.k}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.startup not in STARTUPS:
            raise ValueError(f"startup must be one of {STARTUPS}, got {self.startup!r}")


@dataclass(frozen=True)
class WindowMatrix:
    """k x p lagged rows; row r holds the signal at time anchor - 1 - r."""

    rows: np.ndarray
    anchor: int

    @property
    def k(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class CorrelationMatrix:
    entries: np.ndarray   # p x p
    anchor: int
    mode: str

    @property
    def p(self) -> int:
        return self.entries.shape[0]


def window_slice(signal: CompetencySignal, t: int, spec: WindowSpec) -> WindowMatrix:
    """Extract the lagged window for anchor t: rows at t-1, t-2, ..., t-k.

    With startup="grow", fewer than k lags are allowed as long as at least
    2 exist (the matrix divisor needs >= 2 rows).
    """
    first_t = int(signal.periods[0])
    available = t - first_t  # lags t-1 down to first_t
    if spec.startup == "skip":
        if available < spec.k:
            raise InsufficientHistory(
                f"anchor t={t} has only {available} lagged periods, window needs {spec.k}"
            )
        depth = spec.k
    else:
        if available < 2:
            raise InsufficientHistory(f"anchor t={t} has {available} lagged periods, need >= 2")
        depth = min(spec.k, available)
    # row index of time t' in the value grid is t' - first_t
    idx = [t - lag - first_t for lag in range(1, depth + 1)]
    return WindowMatrix(rows=_frozen(signal.values[idx, :]), anchor=t)


def correlation_matrix(window: WindowMatrix, mode: str = "standardized") -> CorrelationMatrix:
    """Reduce a k x p window to a p x p matrix.

    raw: (1/(k-1)) W^T W.  standardized: z-score each column (mean removed,
    sample std with divisor k-1) then the same product; constant columns yield
    an all-zero row/column.
    """
    w = np.asarray(window.rows, dtype=float)
    k = w.shape[0]
    if k < 2:
        raise DegenerateWindow(f"window has {k} rows, need >= 2")
    if mode == "raw":
        r = (w.T @ w) / (k - 1)
    elif mode == "standardized":
        # constancy is decided exactly (max == min): the sample std of a
        # constant column can compute to a tiny nonzero value in fp; a column
        # whose variance underflows to 0 is likewise treated as dead
        mean = w.mean(axis=0)
        sd = w.std(axis=0, ddof=1)
        live = (w.max(axis=0) != w.min(axis=0)) & (sd > 0.0)
        z = np.zeros_like(w)
        z[:, live] = (w[:, live] - mean[live]) / sd[live]
        r = (z.T @ z) / (k - 1)
        # dead channels carry no co-movement signal: zero the whole row/column
        r[~live, :] = 0.0
        r[:, ~live] = 0.0
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CorrelationMatrix(entries=_frozen(r), anchor=window.anchor, mode=mode)


def channel_indicator(corr: CorrelationMatrix, i: int) -> float:
    """Indicator of channel i: sum_j |r_ij|, diagonal included."""
    if not 0 <= i < corr.p:
        raise IndexOutOfRange(f"channel {i} out of range for p={corr.p}")
    return float(np.abs(corr.entries[i, :]).sum())


@dataclass(frozen=True)
class IndicatorSeries:
    """Per-period per-channel indicator values plus the grand total."""

    times: np.ndarray            # evaluated anchors, ascending
    values: np.ndarray           # shape (len(times), p)
    channel_names: tuple[str, ...]
    spec: WindowSpec

    @property
    def period_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)

    @property
    def grand_total(self) -> float:
        return float(self.values.sum())

    def __len__(self) -> int:
        return len(self.times)


def indicator_series(signal: CompetencySignal, spec: WindowSpec) -> IndicatorSeries:
    """Evaluate every admissible anchor in ascending order.

    skip mode starts at t = first + k; grow mode at the first t with >= 2 lags.
    """
    first_t = int(signal.periods[0])
    last_t = int(signal.periods[-1])
    start = first_t + spec.k if spec.startup == "skip" else first_t + 2
    if start > last_t:
        raise InsufficientHistory(
            f"series of {signal.t_max} periods admits no window (k={spec.k}, {spec.startup})"
        )
    anchors = range(start, last_t + 1)
    out = np.empty((len(anchors), signal.p))
    for row, t in enumerate(anchors):
        corr = correlation_matrix(window_slice(signal, t, spec), spec.mode)
        out[row, :] = np.abs(corr.entries).sum(axis=1)
    return IndicatorSeries(
        times=_frozen(np.arange(start, last_t + 1)),
        values=_frozen(out),
        channel_names=signal.channel_names,
        spec=spec,
    )


def total_indicator(series: IndicatorSeries | None) -> float:
    """Grand total: double sum over evaluated periods and channels."""
    if series is None or len(series) == 0:
        return 0.0
    return series.grand_total


class IncrementalWindow:
    """Rolling accumulators for the sliding window: O(p^2) per advance.

    Maintains the last k rows, their column sums, and the running sum of outer
    products; each advance adds the new row's outer product and subtracts the
    expired one, so the emitted matrix equals full recomputation (the expired
    contribution is removed exactly as it was added).
    """

    def __init__(self, spec: WindowSpec, p: int):
        self.spec = spec
        self.p = p
        self._rows: deque[np.ndarray] = deque()
        self._col_sum = np.zeros(p)
        self._outer_sum = np.zeros((p, p))
        self._t = 0  # count of rows consumed; next anchor is _t + 1 (time origin 1)

    def advance(self, new_row) -> CorrelationMatrix | None:
        """Consume the signal row for the next period; emit the matrix for the
        anchor just past the filled window, or None while history is short."""
        row = np.asarray(new_row, dtype=float)
        if row.shape != (self.p,):
            raise DimensionMismatch(f"expected row of {self.p} entries, got shape {row.shape}")
        self._rows.append(row)
        self._col_sum += row
        self._outer_sum += np.outer(row, row)
        if len(self._rows) > self.spec.k:
            old = self._rows.popleft()
            self._col_sum -= old
            self._outer_sum -= np.outer(old, old)
        self._t += 1

        depth = len(self._rows)
        min_depth = self.spec.k if self.spec.startup == "skip" else 2
        if depth < min_depth:
            return None
        anchor = self._t + 1
        k = depth
        if self.spec.mode == "raw":
            r = self._outer_sum / (k - 1)
        else:
            buf = np.array(self._rows)
            # same exact constancy rule as the naive path
            live = buf.max(axis=0) != buf.min(axis=0)
            mean = self._col_sum / k
            cov = (self._outer_sum - k * np.outer(mean, mean)) / (k - 1)
            var = np.diag(cov).copy()
            var[var <= 0] = 1.0  # dead or cancelled columns are zeroed below
            sd = np.sqrt(var)
            live &= np.diag(cov) > 0
            r = np.zeros((self.p, self.p))
            denom = np.outer(sd[live], sd[live])
            r[np.ix_(live, live)] = cov[np.ix_(live, live)] / denom
        return CorrelationMatrix(entries=_frozen(r), anchor=anchor, mode=self.spec.mode)


def incremental_advance(state: IncrementalWindow, new_row) -> tuple[IncrementalWindow, CorrelationMatrix | None]:
    """Functional wrapper over IncrementalWindow.advance (state mutates in place
    and is returned for call-site symmetry with the naive path)."""
    return state, state.advance(new_row)
