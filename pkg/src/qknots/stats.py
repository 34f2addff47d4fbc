"""Comparison statistics over a table of invariant values.

Rows are cumulative: the row for ``n`` covers every knot with at most ``n``
crossings.  Printed decimals are truncated (floored), never rounded.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .laurent import BiLaurentPoly, LaurentPoly, coeff_stats

__all__ = [
    "ClassPartition",
    "distinct_percentage",
    "pair_expectation_exact",
    "pair_expectation_sampled",
    "PairEstimate",
    "aggregates",
    "cumulative_rows",
    "successive_quotients",
    "truncate",
    "format_truncated",
    "value_key",
    "AGGREGATE_KEYS",
    "PAIR_PROTOCOLS",
]

AGGREGATE_KEYS = ("ev", "coeff", "ev_av", "coeff_av", "span", "span_av")
PAIR_PROTOCOLS = ("distinct", "replacement")

# floats closer than this to the next grid point are treated as on it, so
# that e.g. |z| = 0.99999999997 for a root of unity prints as 1.0000
_FLOAT_GUARD = 1e-9


def truncate(x, digits: int):
    """Floor ``x`` to ``digits`` decimals; exact for ints and Fractions."""
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return x
        scale = 10**digits
        return math.floor(x * scale + _FLOAT_GUARD * max(1.0, abs(x) * scale)) / scale
    x = Fraction(x)
    scale = 10**digits
    return Fraction(math.floor(x * scale), scale)


def format_truncated(x, digits: int) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    t = Fraction(truncate(x, digits)) if not isinstance(x, float) else Fraction(truncate(x, digits)).limit_denominator(10**digits)
    scale = 10**digits
    whole = math.floor(t * scale)
    sign = "-" if whole < 0 else ""
    whole = abs(whole)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole // scale}.{whole % scale:0{digits}d}"


def value_key(v) -> Hashable:
    """Canonical hashable form of an invariant value (or tuple of values)."""
    if isinstance(v, tuple):
        return tuple(value_key(x) for x in v)
    if isinstance(v, (LaurentPoly, BiLaurentPoly)):
        return v.to_text()
    return v


@dataclass(frozen=True)
class ClassPartition:
    """Sizes of the classes of knots sharing one invariant value."""

    classes: tuple[int, ...]

    @classmethod
    def from_values(cls, values: Iterable) -> "ClassPartition":
        counts = Counter(value_key(v) for v in values)
        return cls(tuple(sorted(counts.values(), reverse=True)))

    @property
    def N(self) -> int:
        return sum(self.classes)

    @property
    def m(self) -> int:
        return len(self.classes)

    def labels(self) -> np.ndarray:
        """One class label per point, classes in order."""
        return np.repeat(np.arange(self.m), self.classes)


def distinct_percentage(p: ClassPartition) -> Fraction:
    """Exact ``100 m / N``; use :func:`truncate` for the printed value."""
    if p.N < 1:
        raise ValueError("empty partition")
    return Fraction(100 * p.m, p.N)


def _check_protocol(protocol: str) -> None:
    if protocol not in PAIR_PROTOCOLS:
        raise ValueError(f"unknown pair protocol {protocol!r}; choose from {PAIR_PROTOCOLS}")


def pair_expectation_exact(p: ClassPartition, protocol: str = "distinct"):
    """Exact expectation of the pair-collision experiment.

    ``"distinct"``: the number of uniform ordered pairs ``K != L`` drawn
    until the two members share a value, ``1/rho`` with ``rho`` the
    colliding-pair fraction; ``math.inf`` when every class is a singleton.

    ``"replacement"``: ``K`` and ``L`` drawn independently (``K = L``
    allowed) and the failed draws before the first agreement counted,
    ``N^2 / sum c^2 - 1``.  Always finite.
    """
    _check_protocol(protocol)
    n = p.N
    if n < 2:
        raise ValueError("need at least two knots")
    if protocol == "replacement":
        return Fraction(n * n, sum(c * c for c in p.classes)) - 1
    hits = sum(c * (c - 1) for c in p.classes)
    if hits == 0:
        return math.inf
    return Fraction(n * (n - 1), hits)


@dataclass(frozen=True)
class PairEstimate:
    mean: float
    stderr: float
    cap_rate: float
    trials: int
    cap: int
    seed: int


def pair_expectation_sampled(data, trials: int = 100_000, cap: int = 10_000_000,
                             seed: int = 0, chunk: int = 1 << 22,
                             protocol: str = "distinct") -> PairEstimate:
    """Monte Carlo version of :func:`pair_expectation_exact`.

    Each trial draws ordered pairs ``(K, L)`` uniformly until their values
    agree (at most ``cap`` draws).  With ``"distinct"`` the pairs have
    ``K != L`` and the number of draws is recorded; with ``"replacement"``
    ``K = L`` is allowed and the number of failed draws is recorded.
    ``data`` is a :class:`ClassPartition` or a sequence of values.
    """
    _check_protocol(protocol)
    if trials < 1:
        raise ValueError("trials must be positive")
    part = data if isinstance(data, ClassPartition) else ClassPartition.from_values(data)
    labels = part.labels()
    n = len(labels)
    if n < 2:
        raise ValueError("need at least two knots")
    replace = protocol == "replacement"
    if not replace and max(part.classes) < 2:
        # no pair can ever agree: every trial runs into the cap
        return PairEstimate(math.inf, 0.0, 1.0, trials, cap, seed)
    rng = np.random.default_rng(seed)
    counts = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    while active.size:
        width = max(1, min(chunk // active.size, cap))
        k = rng.integers(0, n, size=(active.size, width))
        if replace:
            l = rng.integers(0, n, size=(active.size, width))
        else:
            l = rng.integers(0, n - 1, size=(active.size, width))
            l += l >= k  # uniform over the other n - 1 knots
        hit = labels[k] == labels[l]
        first = np.where(hit.any(axis=1), hit.argmax(axis=1) + 1, width)
        got = hit.any(axis=1)
        room = cap - counts[active]
        step = np.minimum(first, room)
        counts[active] += step
        finished = (got & (first <= room)) | (counts[active] >= cap)
        active = active[~finished]
    capped = counts >= cap
    if replace:
        counts -= 1  # failures before the agreeing draw
    mean = float(counts.mean())
    se = float(counts.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return PairEstimate(mean, se, float(capped.mean()), trials, cap, seed)


def aggregates(polys: Sequence, want_span: bool = True) -> dict:
    """Maxima and averages of coefficient statistics over a set of knots.

    ``ev``: max abs-sum; ``coeff``: max |coefficient|; ``ev_av``: mean
    abs-sum; ``coeff_av``: max over knots of abs-sum/span; ``span``: max
    span; ``span_av``: mean span.  The span-based entries are only available
    for one-variable polynomials.
    """
    if not polys:
        raise ValueError("no polynomials")
    stats = [coeff_stats(p, want_span=want_span) for p in polys]
    k = len(stats)
    out = {
        "ev": max(s.abs_sum for s in stats),
        "coeff": max(s.max_abs for s in stats),
        "ev_av": Fraction(sum(s.abs_sum for s in stats), k),
    }
    if want_span:
        out["coeff_av"] = max(Fraction(s.abs_sum, s.span) for s in stats)
        out["span"] = max(s.span for s in stats)
        out["span_av"] = Fraction(sum(s.span for s in stats), k)
    return out


def cumulative_rows(crossings: Sequence[int], values: Sequence, func: Callable,
                    rows: Iterable[int] | None = None) -> dict[int, object]:
    """Apply ``func`` to the values of all knots with at most ``n`` crossings, per ``n``."""
    ns = np.asarray(crossings)
    if rows is None:
        rows = sorted(set(int(n) for n in ns))
    out = {}
    for n in rows:
        sel = [v for v, c in zip(values, crossings) if c <= n]
        if sel:
            out[n] = func(sel)
    return out


def successive_quotients(series: Sequence) -> list:
    """``f(n+1)/f(n)``; exact for integer input."""
    out = []
    for a, b in zip(series, series[1:]):
        if a == 0:
            raise ZeroDivisionError("series has a zero term")
        if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
            out.append(Fraction(b, 1) / a)
        else:
            out.append(b / a)
    return out
