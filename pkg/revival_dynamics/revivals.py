"""Extrema of J_nc and |A|^2 time series and their labeling as fractions of T_rev."""
import enum
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd
from scipy.signal import find_peaks

from revival_dynamics.errors import (
    InvalidRangeError,
    LengthMismatchError,
    MisalignedSeriesError,
    TooFewPointsError,
)

# Classical-period events lie within this fraction of T_cl of k T_cl.
CLASSICAL_OFFSET_TOL = 0.1


class ExtremumKind(enum.Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"


@dataclass(frozen=True, eq=False)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise LengthMismatchError("times and values must be 1-d and of equal length")
        if np.any(np.diff(times) <= 0):
            raise InvalidRangeError("series times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.times.size

    def window(self, t_start, t_end):
        kept = (self.times >= t_start) & (self.times <= t_end)
        return TimeSeries(self.times[kept], self.values[kept])

    def finite(self):
        kept = np.isfinite(self.values)
        return TimeSeries(self.times[kept], self.values[kept])

    def value_range(self):
        values = self.values[np.isfinite(self.values)]
        return float(values.max() - values.min()) if values.size else 0.0


@dataclass(frozen=True)
class ExtremumEvent:
    t: float
    value: float
    kind: ExtremumKind
    prominence: float
    observable: str = ""


@dataclass(frozen=True)
class RevivalLabel:
    """
    Event at t ~ (cycle + p / q) T_rev.

    Args:
        event (ExtremumEvent): The labeled extremum.
        p (int): Numerator, 0 < p <= q, coprime with q.
        q (int): Denominator, at most q_max.
        deviation (float): |t / T_rev - (cycle + p / q)|.
        cycle (int): Completed revival periods before the fraction.
    """

    event: ExtremumEvent
    p: int
    q: int
    deviation: float
    cycle: int = 0

    @property
    def fraction(self):
        return self.cycle + self.p / self.q


def detect_extrema(series, kind, prominence_threshold, include_endpoints=False):
    """
    Strict interior extrema of `series` with prominence >= prominence_threshold.

    Times and values are refined by a parabola through the extremum and its two
    neighbours. With `include_endpoints` the first and last samples are candidates
    too; their prominence is measured on the inward side only and they are not refined.

    Args:
        series (TimeSeries): At least 3 samples.
        kind (ExtremumKind): Minima or maxima.
        prominence_threshold (float): Absolute prominence, in units of the values.
        include_endpoints (bool): Also report extrema at the first and last sample.

    :rtype:
        events (list): ExtremumEvent in ascending time.
    """
    if len(series) < 3:
        raise TooFewPointsError("extremum detection needs at least 3 samples")
    sign = 1.0 if kind is ExtremumKind.MAXIMUM else -1.0
    signal = sign * series.values
    peaks, properties = find_peaks(signal, prominence=max(prominence_threshold, 0.0))

    events = []
    for index, prominence in zip(peaks, properties["prominences"]):
        t, value = _parabolic_vertex(series.times, series.values, index)
        events.append(ExtremumEvent(t, value, kind, float(prominence)))

    if include_endpoints:
        threshold = max(prominence_threshold, 0.0)
        for index, inward in ((0, signal), (len(series) - 1, signal[::-1])):
            prominence = _edge_prominence(inward)
            if prominence is not None and prominence >= threshold:
                events.append(
                    ExtremumEvent(
                        float(series.times[index]), float(series.values[index]), kind, prominence
                    )
                )
        events.sort(key=lambda e: e.t)
    return events


def _edge_prominence(signal):
    """Prominence of signal[0] as a strict peak, or None when signal[1] is as high."""
    if not signal[0] > signal[1]:
        return None
    higher = np.flatnonzero(signal > signal[0])
    stop = higher[0] if higher.size else signal.size
    return float(signal[0] - signal[:stop].min())


def _parabolic_vertex(times, values, i):
    y0, y1, y2 = values[i - 1:i + 2]
    curvature = y0 - 2 * y1 + y2
    if curvature == 0:
        return float(times[i]), float(y1)
    offset = 0.5 * (y0 - y2) / curvature
    step = 0.5 * (times[i + 1] - times[i - 1])
    return float(times[i] + offset * step), float(y1 - 0.25 * (y0 - y2) * offset)


def nearest_fraction(x, q_max):
    """Closest p/q to x in [0, 1] with q <= q_max, the smaller q on ties."""
    best = Fraction(x).limit_denominator(q_max)
    distance = abs(float(best) - x)
    for q in range(1, best.denominator):
        candidate = Fraction(round(x * q), q)
        if abs(float(candidate) - x) <= distance:
            return candidate
    return best


def label_fractional(events, t_rev, q_max=8, tolerance=0.005):
    """
    Nearest rational p/q (q <= q_max) of each event's time in units of T_rev.

    Events beyond T_rev are labeled within their revival cycle; events within
    `tolerance` of t = 0 carry no label.

    :rtype:
        labels (list): RevivalLabel for the events within tolerance, in input order.
    """
    if not t_rev > 0:
        raise InvalidRangeError("revival time must be positive")
    if q_max < 2:
        raise InvalidRangeError("q_max must be at least 2")

    labels = []
    for event in events:
        ratio = event.t / t_rev
        cycle = math.floor(ratio)
        fraction = nearest_fraction(ratio - cycle, q_max)
        if fraction.numerator == 0:
            if cycle == 0:
                continue
            fraction, cycle = Fraction(1), cycle - 1
        deviation = abs(ratio - (cycle + float(fraction)))
        if deviation <= tolerance:
            labels.append(
                RevivalLabel(event, fraction.numerator, fraction.denominator, deviation, cycle)
            )
    return labels


def lower_envelope(series, window):
    """Centered rolling minimum over `window` time units."""
    step = float(np.median(np.diff(series.times)))
    samples = max(1, int(round(window / step)))
    envelope = pd.Series(series.values).rolling(samples, center=True, min_periods=1).min()
    return TimeSeries(series.times, envelope.to_numpy())


@dataclass
class RevivalReport:
    t_classical: float
    t_revival: float
    n_bar: int
    labels: list = field(default_factory=list)
    full_revivals: list = field(default_factory=list)
    classical_period_events: list = field(default_factory=list)
    global_extrema: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "timescales": {
                "t_classical": self.t_classical,
                "t_revival": self.t_revival,
                "n_bar": self.n_bar,
            },
            "labels": [_label_dict(label) for label in self.labels],
            "full_revivals": [_label_dict(label) for label in self.full_revivals],
            "classical_period_events": self.classical_period_events,
            "global_extrema": self.global_extrema,
        }


def _event_dict(event):
    record = asdict(event)
    record["kind"] = event.kind.value
    return record


def _label_dict(label):
    record = _event_dict(label.event)
    record.update(p=label.p, q=label.q, cycle=label.cycle, deviation=label.deviation)
    return record


def _global_extrema(series):
    finite = series.finite()
    if not len(finite):
        return {}
    low, high = np.argmin(finite.values), np.argmax(finite.values)
    return {
        "min": {"t": float(finite.times[low]), "value": float(finite.values[low])},
        "max": {"t": float(finite.times[high]), "value": float(finite.values[high])},
    }


def _observable_events(series, kind, prominence, observable, log_values=False, endpoints=False):
    finite = series.finite()
    if log_values:
        positive = finite.values[finite.values > 0]
        if not positive.size:
            return []
        finite = TimeSeries(finite.times, np.log(np.maximum(finite.values, positive.min())))
    if len(finite) < 3:
        return []
    threshold = prominence * finite.value_range()
    return [
        ExtremumEvent(
            e.t, math.exp(e.value) if log_values else e.value, e.kind, e.prominence, observable
        )
        for e in detect_extrema(finite, kind, threshold, include_endpoints=endpoints)
    ]


def revival_report(
    jnc_series,
    autocorr_series,
    timescales,
    q_max=8,
    tolerance=0.005,
    prominence=0.05,
    early_periods=5,
):
    """
    Labeled J_nc minima and |A|^2 maxima, full revivals and the early classical-period events.

    Args:
        jnc_series (TimeSeries): J_nc over the sweep.
        autocorr_series (TimeSeries): |A|^2 on the same times.
        timescales (TimeScales): T_cl, T_rev and n_bar used for labeling.
        q_max (int): Largest denominator.
        tolerance (float): Largest accepted deviation, a fraction of T_rev.
        prominence (float): Prominence threshold as a fraction of each series' range.
            J_nc is searched on its logarithm, so its prominences are log ratios.
        early_periods (int): Classical periods inspected for classical-period events.

    :rtype:
        RevivalReport
    """
    if not np.array_equal(jnc_series.times, autocorr_series.times):
        raise MisalignedSeriesError("J_nc and |A|^2 must share their time grid")

    t_cl, t_rev = timescales.t_classical, timescales.t_revival
    events = _observable_events(
        jnc_series, ExtremumKind.MINIMUM, prominence, "j_nc", log_values=True, endpoints=True
    )
    events += _observable_events(
        autocorr_series, ExtremumKind.MAXIMUM, prominence, "abs_A2", endpoints=True
    )
    span = jnc_series.times[-1] - jnc_series.times[0]
    if span >= 10 * t_cl:
        envelope = lower_envelope(jnc_series.finite(), t_cl)
        events += _observable_events(
            envelope, ExtremumKind.MINIMUM, prominence, "j_nc_envelope", log_values=True
        )
    events.sort(key=lambda e: (e.t, e.observable))

    labels = label_fractional(events, t_rev, q_max, tolerance)
    report = RevivalReport(t_cl, t_rev, timescales.n_bar, labels)
    report.full_revivals = [label for label in labels if label.p == label.q]

    early_end = jnc_series.times[0] + early_periods * t_cl
    early = [
        (jnc_series.window(jnc_series.times[0], early_end), ExtremumKind.MINIMUM, "j_nc", True),
        (autocorr_series.window(autocorr_series.times[0], early_end), ExtremumKind.MAXIMUM, "abs_A2", False),
    ]
    for series, kind, observable, log_values in early:
        for event in _observable_events(series, kind, prominence, observable, log_values):
            period = int(round(event.t / t_cl))
            if period >= 1 and abs(event.t - period * t_cl) <= CLASSICAL_OFFSET_TOL * t_cl:
                record = _event_dict(event)
                record.update(period=period, offset=event.t - period * t_cl)
                report.classical_period_events.append(record)

    report.global_extrema = {
        "j_nc": _global_extrema(jnc_series),
        "abs_A2": _global_extrema(autocorr_series),
    }
    return report
