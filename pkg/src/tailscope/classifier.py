"""Entropic plots and the tail-type classifier built on them.

Plot I is ``T_v`` against ``v``; Plots II, III and IV put ``ln T_v`` against
``ln v``, ``ln ln v`` and ``ln ln ln v``. A thick tail whose profile is linear
on Plot II, III or IV is classified as power, sub-exponential or
near-exponential respectively. A profile that does not grow is classified as
exponential or thinner.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _backend
from .errors import (
    DegenerateSeries,
    InvalidParameter,
    InvalidRange,
    NonpositiveSlope,
    TooFewPoints,
)
from .estimator import TailProfile


class PlotTransform(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    @property
    def min_v(self) -> int:
        # ln ln ln 2 is not real; ln ln 1 is not real
        return {"I": 1, "II": 1, "III": 2, "IV": 3}[self.value]

    @property
    def x_label(self) -> str:
        return {"I": "v", "II": "ln v", "III": "ln ln v", "IV": "ln ln ln v"}[self.value]

    @property
    def y_label(self) -> str:
        return "T_v" if self is PlotTransform.I else "ln T_v"


class TailFamily(str, enum.Enum):
    POWER = "Power"
    SUBEXPONENTIAL = "SubExponential"
    NEAREXPONENTIAL = "NearExponential"
    EXPONENTIAL_OR_THINNER = "ExponentialOrThinner"

    @property
    def short(self) -> str:
        return _SHORT[self]


_SHORT = {
    TailFamily.POWER: "power",
    TailFamily.SUBEXPONENTIAL: "subexp",
    TailFamily.NEAREXPONENTIAL: "nearexp",
    TailFamily.EXPONENTIAL_OR_THINNER: "expthin",
}

# Order doubles as the tie-break: earlier wins on exactly equal r.
_LOG_PLOTS = (
    (PlotTransform.II, TailFamily.POWER),
    (PlotTransform.III, TailFamily.SUBEXPONENTIAL),
    (PlotTransform.IV, TailFamily.NEAREXPONENTIAL),
)


@dataclass(frozen=True)
class PlotSeries:
    transform: PlotTransform
    x: np.ndarray
    y: np.ndarray
    dropped: int = 0

    def __len__(self):
        return self.x.size

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


@dataclass(frozen=True)
class ClassifierConfig:
    """Classifier settings.

    Attributes
    ----------
    v1, v2 : int or None
        Profile range to classify on. ``None`` means the whole profile given.
    flat_threshold : float
        Kendall trend of ``T_v`` on ``v`` below which the profile is flat.
    min_growth : float
        Plot II least-squares slope below which the profile is flat. A
        bounded profile has slope near zero even when it rises
        monotonically, which the rank trend alone cannot see.
    fit_start : int
        Correlations and slopes use ``v >= max(v1, fit_start)``; the very
        start of the profile is dominated by the head of the distribution.
    min_points : int
        Minimum surviving points per plot.
    """

    v1: int | None = None
    v2: int | None = None
    flat_threshold: float = 0.3
    min_growth: float = 0.15
    fit_start: int = 10
    min_points: int = 10

    def __post_init__(self):
        if not 0.0 <= self.flat_threshold <= 1.0:
            raise InvalidParameter("flat_threshold must lie in [0, 1]")
        if self.min_points < 3:
            raise InvalidParameter("min_points must be at least 3")
        if self.v1 is not None and self.v1 < 3:
            raise InvalidParameter("v1 must be >= 3 so that Plot IV is defined")
        if self.v1 is not None and self.v2 is not None and self.v1 >= self.v2:
            raise InvalidRange(f"v1 must be < v2, got v1={self.v1}, v2={self.v2}")

    def with_range(self, v1: int, v2: int) -> "ClassifierConfig":
        return ClassifierConfig(v1, v2, self.flat_threshold, self.min_growth,
                                self.fit_start, self.min_points)


@dataclass
class TailClassification:
    family: TailFamily
    r_II: float | None
    r_III: float | None
    r_IV: float | None
    trend: float
    slope: float | None
    parameter_estimate: float | None
    v1: int
    v2: int
    dropped_points: int = 0
    growth: float | None = None
    correlations: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("correlations")
        d["family"] = self.family.value
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def default_range(n: int) -> tuple[int, int]:
    """``v1 = 6``; ``v2 = min(500, max(99, n // 20))`` capped at ``n - 1``."""
    v2 = min(500, max(99, n // 20), n - 1)
    if v2 <= 6:
        raise InvalidRange(f"sample size n={n} too small for the default profile range")
    return 6, v2


def plot_series(profile: TailProfile, transform: PlotTransform | str,
                min_points: int = 10) -> PlotSeries:
    transform = PlotTransform(transform)
    v = profile.v.astype(np.float64)
    t = profile.t
    keep = profile.v >= transform.min_v
    if transform is not PlotTransform.I:
        keep &= t > 0
    dropped = int(keep.size - keep.sum())
    v, t = v[keep], t[keep]
    if transform is PlotTransform.I:
        x, y = v, t.copy()
    else:
        y = np.log(t)
        x = np.log(v)
        if transform in (PlotTransform.III, PlotTransform.IV):
            x = np.log(x)
        if transform is PlotTransform.IV:
            x = np.log(x)
    if x.size < min_points:
        raise TooFewPoints(
            f"plot {transform.value}: {x.size} points survive, need {min_points}"
        )
    return PlotSeries(transform, x, y, dropped)


def pearson_r(series: PlotSeries) -> float:
    x, y = series.x, series.y
    if x.size < 3:
        raise TooFewPoints("pearson_r needs at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    # relative test: log of a constant profile is constant only up to rounding
    if sxx <= 1e-24 * max(1.0, float(x @ x)) or syy <= 1e-24 * max(1.0, float(y @ y)):
        raise DegenerateSeries(f"plot {series.transform.value}: x or y is constant")
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def least_squares_slope(series: PlotSeries) -> float:
    dx = series.x - series.x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateSeries("slope undefined for constant x")
    return float(dx @ (series.y - series.y.mean())) / sxx


def trend_statistic(profile: TailProfile) -> float:
    """Kendall rank correlation between ``v`` and ``T_v`` (tau-a, ties count 0)."""
    if len(profile) < 3:
        raise TooFewPoints("trend needs at least 3 profile entries")
    return float(_backend.kendall_trend(
        np.ascontiguousarray(profile.v, dtype=np.float64),
        np.ascontiguousarray(profile.t, dtype=np.float64),
    ))


def estimate_parameter(family: TailFamily | str, slope: float) -> float:
    """Invert the log-log slope of the winning plot into the shape parameter.

    Power: ``tau_v ~ v^(1/lambda)`` so lambda = 1/slope. Sub-exponential:
    ``tau_v ~ (ln v)^(1/alpha - 1)`` so alpha = 1/(slope + 1).
    Near-exponential: ``tau_v ~ (ln ln v)^beta`` so beta = slope.
    """
    family = TailFamily(family)
    if family is TailFamily.POWER:
        if slope <= 0:
            raise NonpositiveSlope(f"power tail needs a positive slope, got {slope}")
        return 1.0 / slope
    if family is TailFamily.SUBEXPONENTIAL:
        if slope <= 0:
            raise NonpositiveSlope(f"sub-exponential tail needs a positive slope, got {slope}")
        return 1.0 / (slope + 1.0)
    if family is TailFamily.NEAREXPONENTIAL:
        return float(slope)
    raise InvalidParameter("no shape parameter for exponential-or-thinner tails")


def classify(profile: TailProfile, config: ClassifierConfig | None = None) -> TailClassification:
    config = config or ClassifierConfig()
    v1 = profile.v_min if config.v1 is None else config.v1
    v2 = profile.v_max if config.v2 is None else config.v2
    if v1 < profile.v_min or v2 > profile.v_max:
        raise InvalidRange(
            f"profile covers [{profile.v_min}, {profile.v_max}] but config asks for [{v1}, {v2}]"
        )
    prof = profile.restrict(v1, v2)
    trend = trend_statistic(prof)

    fit_lo = max(v1, config.fit_start)
    if v2 - fit_lo + 1 < config.min_points:
        raise TooFewPoints(
            f"fit window [{fit_lo}, {v2}] holds fewer than {config.min_points} points"
        )
    window = prof.restrict(fit_lo, v2)

    series, corr = {}, {}
    dropped = 0
    for transform, family in _LOG_PLOTS:
        corr[family] = None
        try:
            s = plot_series(window, transform, config.min_points)
        except TooFewPoints:
            # T_v = 0 from some v on: the sample has no tail left to fit
            dropped = max(dropped, len(window.v))
            continue
        dropped = max(dropped, s.dropped)
        series[family] = s
        try:
            corr[family] = pearson_r(s)
        except DegenerateSeries:
            pass

    result = TailClassification(
        family=TailFamily.EXPONENTIAL_OR_THINNER,
        r_II=corr[TailFamily.POWER],
        r_III=corr[TailFamily.SUBEXPONENTIAL],
        r_IV=corr[TailFamily.NEAREXPONENTIAL],
        trend=trend,
        slope=None,
        parameter_estimate=None,
        v1=v1,
        v2=v2,
        dropped_points=dropped,
        correlations={f.value: r for f, r in corr.items()},
    )
    valid = [f for _, f in _LOG_PLOTS if corr[f] is not None]
    if not valid:
        return result

    winner = valid[0]
    for f in valid[1:]:
        if corr[f] > corr[winner]:
            winner = f
    result.slope = least_squares_slope(series[winner])
    result.growth = least_squares_slope(series[TailFamily.POWER])

    if trend < config.flat_threshold or result.growth < config.min_growth:
        return result

    result.family = winner
    try:
        result.parameter_estimate = estimate_parameter(winner, result.slope)
    except NonpositiveSlope:
        result.parameter_estimate = None
    return result
