"""Cost curves: two-class performance across unknown costs and class ratios.

A classifier with false-positive rate `fpr` and false-negative rate `fnr`
has normalized expected cost NE(x) = fnr*x + fpr*(1-x), a straight line
over the aggregate operating condition x in [0, 1]. x collapses the class
prior and both misclassification costs into one number:

    x = p_pos * cost_fn / (p_pos * cost_fn + (1 - p_pos) * cost_fp)

Confidence bands are percentile bootstrap: n-out-of-n resamples of the
(truth, prediction) pairs, the operating point recomputed per resample,
and pointwise empirical quantiles of NE over the resamples (linear
interpolation between order statistics). Difference bands share resample
indexes between the two classifiers (paired bootstrap).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .evaluation import ConfusionCounts
from .rng import substream

A_BETTER = "A-better"
B_BETTER = "B-better"
NOT_SIGNIFICANT = "not-significant"

DEFAULT_GRID_SIZE = 101
DEFAULT_RESAMPLES = 1000
DEFAULT_LEVEL = 0.95
_RETRY_CAP = 10  # redraws allowed per resample before giving up


@dataclass(frozen=True)
class OperatingPoint:
    """(false-positive rate, false-negative rate); fixes one cost line."""

    fpr: float
    fnr: float

    def __post_init__(self):
        if not 0.0 <= self.fpr <= 1.0 or not 0.0 <= self.fnr <= 1.0:
            raise ValueError("rates must lie in [0, 1]")


ALWAYS_NEGATIVE = OperatingPoint(fpr=0.0, fnr=1.0)
ALWAYS_POSITIVE = OperatingPoint(fpr=1.0, fnr=0.0)


def operating_point(c: ConfusionCounts, positive_class: str) -> OperatingPoint:
    """Operating point of a two-class confusion matrix."""
    if len(c.classes) != 2:
        raise ValueError(f"need exactly 2 classes, got {len(c.classes)}")
    if positive_class not in c.classes:
        raise ValueError(f"positive class {positive_class!r} not present")
    p = c.classes.index(positive_class)
    q = 1 - p
    tp, fn = c.counts[p][p], c.counts[p][q]
    fp, tn = c.counts[q][p], c.counts[q][q]
    if tp + fn == 0 or fp + tn == 0:
        raise ValueError("a class has no true instances; rates undefined")
    return OperatingPoint(fpr=fp / (fp + tn), fnr=fn / (fn + tp))


def pc_plus(p_pos: float, cost_fn: float, cost_fp: float) -> float:
    """Aggregate operating condition from class prior and the two costs."""
    if not 0.0 < p_pos < 1.0:
        raise ValueError("prior must be strictly inside (0, 1)")
    if cost_fn <= 0 or cost_fp <= 0:
        raise ValueError("costs must be strictly positive")
    weighted = p_pos * cost_fn
    return weighted / (weighted + (1.0 - p_pos) * cost_fp)


def ne_at(point: OperatingPoint, x: float) -> float:
    """Normalized expected cost of `point` at operating condition `x`."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("operating condition must lie in [0, 1]")
    return point.fnr * x + point.fpr * (1.0 - x)


Crossover = Union[float, Literal["identical"], None]


def crossover(a: OperatingPoint, b: OperatingPoint) -> Crossover:
    """Where the two cost lines meet.

    Returns the meeting point if it lies in [0, 1], the string
    ``"identical"`` for coinciding lines, and None for parallel distinct
    lines or meetings outside [0, 1].
    """
    slope_a = a.fnr - a.fpr
    slope_b = b.fnr - b.fpr
    if slope_a == slope_b:
        return "identical" if a.fpr == b.fpr else None
    x = (b.fpr - a.fpr) / (slope_a - slope_b)
    return x if 0.0 <= x <= 1.0 else None


def default_grid(size: int = DEFAULT_GRID_SIZE) -> tuple[float, ...]:
    """`size` uniform samples spanning [0, 1]."""
    if size < 2:
        raise ValueError("grid needs at least 2 samples")
    return tuple(i / (size - 1) for i in range(size))


def _check_grid(grid: Sequence[float]) -> np.ndarray:
    xs = np.asarray(grid, dtype=np.float64)
    if xs.ndim != 1 or len(xs) == 0:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if np.any(xs < 0) or np.any(xs > 1) or np.any(np.diff(xs) <= 0):
        raise ValueError("grid must ascend within [0, 1]")
    return xs


@dataclass(frozen=True)
class Envelope:
    """Pointwise minimum over several cost lines."""

    values: tuple[float, ...]
    argmin: tuple[int, ...]


def lower_envelope(points: Sequence[OperatingPoint], grid: Sequence[float]) -> Envelope:
    """Minimum NE across all lines at each grid sample; ties keep the lowest index."""
    if not points:
        raise ValueError("need at least one operating point")
    xs = _check_grid(grid)
    fnr = np.array([p.fnr for p in points])
    fpr = np.array([p.fpr for p in points])
    ne = fnr[:, None] * xs[None, :] + fpr[:, None] * (1.0 - xs[None, :])
    best = np.argmin(ne, axis=0)  # first minimum wins
    values = ne[best, np.arange(len(xs))]
    return Envelope(tuple(float(v) for v in values), tuple(int(i) for i in best))


@dataclass(frozen=True)
class ConfidenceBand:
    """Pointwise percentile band of NE (or NE difference) over a grid."""

    grid: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    level: float
    resamples: int
    seed: int

    def __post_init__(self):
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("band lower bound exceeds upper bound")


@dataclass(frozen=True)
class DominanceRegions:
    """Ordered intervals partitioning [0, 1], labeled by who wins where."""

    intervals: tuple[tuple[float, float, str], ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("empty region list")
        if self.intervals[0][0] != 0.0 or self.intervals[-1][1] != 1.0:
            raise ValueError("regions must cover [0, 1]")
        for (_, hi, label), (lo, _, nxt) in zip(self.intervals, self.intervals[1:]):
            if lo != hi:
                raise ValueError("regions must be contiguous")
            if label == nxt:
                raise ValueError("adjacent regions share a label")

    def label_at(self, x: float) -> str:
        for lo, hi, label in self.intervals:
            if lo <= x <= hi:
                return label
        raise ValueError(f"{x} outside [0, 1]")


def _pair_arrays(
    truths: Sequence[str], predictions: Sequence[str], positive_class: str
) -> tuple[np.ndarray, np.ndarray]:
    labels = set(truths)
    if len(labels) != 2:
        raise ValueError(f"need exactly 2 classes in the sample, got {sorted(labels)}")
    if positive_class not in labels:
        raise ValueError(f"positive class {positive_class!r} absent from the sample")
    if len(truths) != len(predictions):
        raise ValueError("truths and predictions differ in length")
    is_pos = np.fromiter((t == positive_class for t in truths), dtype=bool, count=len(truths))
    err = np.fromiter((t != p for t, p in zip(truths, predictions)), dtype=bool, count=len(truths))
    return is_pos, err


def _resample_rates(
    is_pos: np.ndarray, errs: list[np.ndarray], n: int, seed: int, index: int
) -> Optional[list[tuple[float, float]]]:
    """One bootstrap resample; returns per-classifier (fpr, fnr) or None.

    Uses substream `index` of `seed` and redraws (within the substream) when
    a resample lacks one of the true classes, up to the retry cap.
    """
    rng = substream(seed, index)
    for _ in range(_RETRY_CAP):
        idx = np.fromiter(rng.indices(n, n), dtype=np.int64, count=n)
        pos = is_pos[idx]
        n_pos = int(pos.sum())
        n_neg = n - n_pos
        if n_pos == 0 or n_neg == 0:
            continue
        rates = []
        for err in errs:
            e = err[idx]
            fn = int((e & pos).sum())
            fp = int((e & ~pos).sum())
            rates.append((fp / n_neg, fn / n_pos))
        return rates
    return None


def _bootstrap_rates(
    is_pos: np.ndarray, errs: list[np.ndarray], resamples: int, seed: int
) -> list[np.ndarray]:
    n = len(is_pos)
    out = [np.empty((resamples, 2)) for _ in errs]
    for i in range(resamples):
        rates = _resample_rates(is_pos, errs, n, seed, i)
        if rates is None:
            raise ValueError(
                f"resample {i} kept producing single-class draws "
                f"({_RETRY_CAP} redraws exhausted)"
            )
        for arr, rate in zip(out, rates):
            arr[i] = rate
    return out


def _quantile_band(ne: np.ndarray, xs: np.ndarray, level: float, resamples: int, seed: int) -> ConfidenceBand:
    alpha = (1.0 - level) / 2.0
    lower, upper = np.quantile(ne, [alpha, 1.0 - alpha], axis=0)
    return ConfidenceBand(
        grid=tuple(float(x) for x in xs),
        lower=tuple(float(v) for v in lower),
        upper=tuple(float(v) for v in upper),
        level=level,
        resamples=resamples,
        seed=seed,
    )


def _validate_band_args(level: float, resamples: int) -> None:
    if not 0.0 < level < 1.0:
        raise ValueError("confidence level must lie in (0, 1)")
    if resamples < 100:
        raise ValueError("need at least 100 resamples")


def bootstrap_band(
    truths: Sequence[str],
    predictions: Sequence[str],
    positive_class: str,
    level: float = DEFAULT_LEVEL,
    resamples: int = DEFAULT_RESAMPLES,
    grid: Optional[Sequence[float]] = None,
    seed: int = 0,
) -> ConfidenceBand:
    """Percentile bootstrap band around one classifier's cost line."""
    _validate_band_args(level, resamples)
    xs = _check_grid(grid if grid is not None else default_grid())
    is_pos, err = _pair_arrays(truths, predictions, positive_class)
    (rates,) = _bootstrap_rates(is_pos, [err], resamples, seed)
    fpr, fnr = rates[:, 0], rates[:, 1]
    ne = fnr[:, None] * xs[None, :] + fpr[:, None] * (1.0 - xs[None, :])
    return _quantile_band(ne, xs, level, resamples, seed)


def _regions_from_bounds(
    xs: np.ndarray, lower: Sequence[float], upper: Sequence[float]
) -> DominanceRegions:
    labels = []
    for lo, hi in zip(lower, upper):
        if hi < 0.0:
            labels.append(A_BETTER)
        elif lo > 0.0:
            labels.append(B_BETTER)
        else:
            labels.append(NOT_SIGNIFICANT)
    intervals = []
    start = 0.0
    for i in range(1, len(labels)):
        if labels[i] != labels[i - 1]:
            boundary = float((xs[i - 1] + xs[i]) / 2.0)
            intervals.append((start, boundary, labels[i - 1]))
            start = boundary
    intervals.append((start, 1.0, labels[-1]))
    return DominanceRegions(tuple(intervals))


def difference_regions(
    truths: Sequence[str],
    preds_a: Sequence[str],
    preds_b: Sequence[str],
    positive_class: str,
    level: float = DEFAULT_LEVEL,
    resamples: int = DEFAULT_RESAMPLES,
    grid: Optional[Sequence[float]] = None,
    seed: int = 0,
) -> tuple[ConfidenceBand, DominanceRegions]:
    """Paired bootstrap band on NE_a - NE_b plus significance regions.

    Each resample draws one index vector and applies it to both
    classifiers, so shared sampling noise cancels. A grid point is labeled
    A-better when the whole band sits below zero there, B-better when it
    sits above, and not-significant otherwise; equal-label runs merge into
    intervals split at grid midpoints.
    """
    if len(preds_a) != len(preds_b) or len(preds_a) != len(truths):
        raise ValueError("prediction lists must align with the truths")
    _validate_band_args(level, resamples)
    xs = _check_grid(grid if grid is not None else default_grid())
    is_pos, err_a = _pair_arrays(truths, preds_a, positive_class)
    _, err_b = _pair_arrays(truths, preds_b, positive_class)
    rates_a, rates_b = _bootstrap_rates(is_pos, [err_a, err_b], resamples, seed)
    dfpr = rates_a[:, 0] - rates_b[:, 0]
    dfnr = rates_a[:, 1] - rates_b[:, 1]
    diff = dfnr[:, None] * xs[None, :] + dfpr[:, None] * (1.0 - xs[None, :])
    band = _quantile_band(diff, xs, level, resamples, seed)
    return band, _regions_from_bounds(xs, band.lower, band.upper)


def samples_to_csv(
    grid: Sequence[float],
    curves: Sequence[tuple[str, Sequence[float]]],
    band: Optional[ConfidenceBand] = None,
    regions: Optional[DominanceRegions] = None,
) -> str:
    """Grid samples as CSV: x, one NE column per classifier, band, region label."""
    names = [name for name, _ in curves]
    header = ["x"] + [f"ne_{name}" for name in names] + ["band_lower", "band_upper", "region_label"]
    if band is not None and tuple(band.grid) != tuple(grid):
        raise ValueError("band grid differs from the sample grid")
    lines = [",".join(header)]
    for i, x in enumerate(grid):
        cells = [repr(float(x))]
        for _, values in curves:
            cells.append(repr(float(values[i])))
        if band is not None:
            cells.append(repr(band.lower[i]))
            cells.append(repr(band.upper[i]))
        else:
            cells.extend(["", ""])
        cells.append(regions.label_at(float(x)) if regions is not None else "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
