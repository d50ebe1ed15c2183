"""A concrete metric on the shift space, with exact cylinder geometry.

The distance between two sequences is the weighted count of mismatched
positions,

    d(s, t) = sum_j  [s(j) != t(j)] * w(j),
    w(j) = r**j        for j >= 1,
    w(j) = r**(|j|+1)  for j <= 0,

with 0 < r < 1, so both tails are geometric and the total weight 2r/(1-r)
is finite (= 2 at r = 1/2).  Under this metric:

* a cylinder's diameter is exactly the total weight of its free positions,
  attained by a pair of members differing everywhere off the window;
* the distance between two cylinders is exactly the weight of the jointly
  fixed positions where their words disagree;
* cylinders shrink geometrically as the window grows (the diameter
  condition) and depth-n future cylinders admit a uniform positive
  separation eps0 = r, witnessed by flipping the first fixed symbol.

Distances are exact (error 0) whenever both sequences have periodic tails
on each side; otherwise the sum is truncated with a certified two-sided
error bound below the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .cylinders import CylinderSet, all_words, future_cylinder
from .sequences import Alphabet, BiSequence

# Exact summation is abandoned beyond this many explicitly compared
# positions per side (huge shifts of universal members); the certified
# truncated path takes over.
_EXACT_SPAN_CAP = 20_000


@dataclass(frozen=True)
class MetricParams:
    """Geometric weight base r in (0, 1); 1/2 gives total diameter 2."""

    r: float = 0.5

    def __post_init__(self) -> None:
        if not (0 < self.r < 1):
            raise ValueError(f"weight base must lie in (0, 1), got {self.r}")


@dataclass(frozen=True)
class DistanceBound:
    """A distance value with a certified truncation error (0 when exact)."""

    value: float
    error: float

    def __post_init__(self) -> None:
        if self.error < 0:
            raise ValueError("error bound cannot be negative")


def weight(j: int, r: float) -> float:
    """Weight of position j: r**j for j >= 1, r**(|j|+1) for j <= 0."""
    return r ** j if j >= 1 else r ** (1 - j)


def weight_above(j0: int, r: float) -> float:
    """Total weight of all positions >= j0."""
    if j0 >= 1:
        return r ** j0 / (1 - r)
    past = (r - r ** (2 - j0)) / (1 - r)  # positions j0..0
    return past + r / (1 - r)


def weight_below(j0: int, r: float) -> float:
    """Total weight of all positions <= j0."""
    if j0 <= 0:
        return r ** (1 - j0) / (1 - r)
    future = (r - r ** (j0 + 1)) / (1 - r)  # positions 1..j0
    return future + r / (1 - r)


def space_diameter(p: MetricParams) -> float:
    return weight_above(1, p.r) + weight_below(0, p.r)


def _truncation_depth(r: float, half_tol: float) -> int:
    k = 1
    tail = r * r / (1 - r)
    while tail > half_tol:
        k += 1
        tail *= r
    return k


def _right_sum(s: BiSequence, t: BiSequence, r: float, tol: float) -> tuple[float, float]:
    ts, tt = s.right_tail(), t.right_tail()
    if ts is not None and tt is not None:
        start = max(ts[0], tt[0], 1)
        period = math.lcm(ts[1], tt[1])
        if start - 1 + period <= _EXACT_SPAN_CAP:
            hi = start + period - 1
            sw, tw = s.window(1, hi), t.window(1, hi)
            total = 0.0
            for j in range(1, start):
                if sw[j - 1] != tw[j - 1]:
                    total += r ** j
            geo = 1.0 - r ** period
            for c in range(period):
                j = start + c
                if sw[j - 1] != tw[j - 1]:
                    total += (r ** j) / geo
            return total, 0.0
    k = _truncation_depth(r, tol / 2)
    sw, tw = s.window(1, k), t.window(1, k)
    total = 0.0
    for j in range(1, k + 1):
        if sw[j - 1] != tw[j - 1]:
            total += r ** j
    return total, r ** (k + 1) / (1 - r)


def _left_sum(s: BiSequence, t: BiSequence, r: float, tol: float) -> tuple[float, float]:
    ts, tt = s.left_tail(), t.left_tail()
    if ts is not None and tt is not None:
        start = min(ts[0], tt[0], 0)
        period = math.lcm(ts[1], tt[1])
        if -start + period <= _EXACT_SPAN_CAP:
            lo = start - period + 1
            sw, tw = s.window(lo, 0), t.window(lo, 0)
            total = 0.0
            for j in range(start + 1, 1):
                if sw[j - lo] != tw[j - lo]:
                    total += r ** (1 - j)
            geo = 1.0 - r ** period
            for c in range(period):
                j = start - c
                if sw[j - lo] != tw[j - lo]:
                    total += (r ** (1 - j)) / geo
            return total, 0.0
    k = _truncation_depth(r, tol / 2)
    lo = 1 - k  # positions lo..0 explicit; dropped tail is j <= -k
    sw, tw = s.window(lo, 0), t.window(lo, 0)
    total = 0.0
    for j in range(lo, 1):
        if sw[j - lo] != tw[j - lo]:
            total += r ** (1 - j)
    return total, r ** (k + 1) / (1 - r)


def distance(
    s: BiSequence, t: BiSequence, p: MetricParams, tol: float = 1e-12
) -> DistanceBound:
    """Evaluate the weighted mismatch metric with a certified error bound.

    The error is 0 whenever both sides of both sequences are eventually
    periodic (every pair of periodic / window-padded / spliced sequences);
    universal futures fall back to truncation at depth chosen from `tol`.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if s == t:
        return DistanceBound(0.0, 0.0)
    vr, er = _right_sum(s, t, p.r, tol)
    vl, el = _left_sum(s, t, p.r, tol)
    return DistanceBound(vr + vl, er + el)


def cylinder_diameter(c: CylinderSet, p: MetricParams) -> float:
    """sup of pairwise distances inside the cylinder: the total weight of its
    free positions (attained by members differing everywhere off-window)."""
    if c.is_whole:
        return space_diameter(p)
    return weight_below(c.start - 1, p.r) + weight_above(c.end + 1, p.r)


def set_distance(c1: CylinderSet, c2: CylinderSet, p: MetricParams) -> float:
    """inf of distances across two cylinders: the weight of positions fixed
    in both windows whose fixed symbols differ."""
    if c1.is_whole or c2.is_whole:
        return 0.0
    lo = max(c1.start, c2.start)
    hi = min(c1.end, c2.end)
    total = 0.0
    for j in range(lo, hi + 1):
        if c1.fixed[j - c1.start] != c2.fixed[j - c2.start]:
            total += weight(j, p.r)
    return total


# ---------------------------------------------------------------------------
# Condition checkers.  The table builders are generic over the geometry so
# the horseshoe module can run the identical checks against its Euclidean
# rectangle geometry.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiameterRow:
    k: int
    n: int
    diameter: float
    predicted: float


@dataclass(frozen=True)
class DiameterReport:
    rows: tuple[DiameterRow, ...]
    strictly_decreasing: bool
    matches_prediction: bool

    @property
    def passed(self) -> bool:
        return self.strictly_decreasing and self.matches_prediction


def diameter_table(
    diam_fn: Callable[[int, int], float],
    predict_fn: Callable[[int, int], float],
    max_depth: int,
) -> DiameterReport:
    """Tabulate window diameters along k = n = 1..max_depth and check strict
    decrease plus agreement with the closed-form prediction."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    rows = tuple(
        DiameterRow(d, d, diam_fn(d, d), predict_fn(d, d)) for d in range(1, max_depth + 1)
    )
    decreasing = all(a.diameter > b.diameter for a, b in zip(rows, rows[1:]))
    matches = all(
        math.isclose(row.diameter, row.predicted, rel_tol=1e-12, abs_tol=0.0)
        for row in rows
    )
    return DiameterReport(rows, decreasing, matches)


def check_diameter_condition(
    alphabet: Alphabet, p: MetricParams, max_depth: int
) -> DiameterReport:
    """Diameters of two-sided windows [-k, n], k = n = 1..max_depth, checked
    against the geometric prediction (r/(1-r)) * (r**n + r**(k+1))."""

    def diam(k: int, n: int) -> float:
        word = (1,) * (k + 1 + n)
        return cylinder_diameter(CylinderSet(word, -k), p)

    def predict(k: int, n: int) -> float:
        return (p.r / (1 - p.r)) * (p.r ** n + p.r ** (k + 1))

    return diameter_table(diam, predict, max_depth)


class SeparationResult(NamedTuple):
    eps0: float
    witness: tuple[CylinderSet, CylinderSet]
    degree: int


def flip_first(word: tuple[int, ...], m: int) -> tuple[int, ...]:
    """The witness family: increment the first symbol mod m."""
    return (word[0] % m + 1,) + word[1:]


def check_separation(alphabet: Alphabet, p: MetricParams, n: int) -> SeparationResult:
    """Uniform separation of depth-n future cylinders.

    For every word i_1..i_n, flipping the first symbol yields a cylinder at
    distance exactly w(1) = r, so eps0 = r holds at every degree n (and it
    is the best n-independent constant: at n = 1 no pair does better).
    """
    if n < 1:
        raise ValueError("separation degree must be >= 1")
    eps0 = weight(1, p.r)
    base = (1,) * n
    partner = flip_first(base, alphabet.m)
    witness = (future_cylinder(base), future_cylinder(partner))
    achieved = set_distance(witness[0], witness[1], p)
    if not achieved >= eps0:
        raise AssertionError("separation witness fell below the certified bound")
    return SeparationResult(eps0, witness, n)


def separation_exhaustive_min(alphabet: Alphabet, p: MetricParams, n: int) -> float:
    """Oracle: min over all depth-n words of the best achievable distance,
    restricted to the flip-first witness family."""
    best = None
    for w in all_words(alphabet, n):
        d = set_distance(
            future_cylinder(w), future_cylinder(flip_first(w, alphabet.m)), p
        )
        best = d if best is None else min(best, d)
    return best


def separation_holds_everywhere(
    alphabet: Alphabet, p: MetricParams, n: int, eps0: float
) -> bool:
    """Oracle: for every depth-n word some word achieves distance >= eps0,
    by exhaustive enumeration of all pairs."""
    words = list(all_words(alphabet, n))
    cyls = [future_cylinder(w) for w in words]
    for c1 in cyls:
        if not any(set_distance(c1, c2, p) >= eps0 for c2 in cyls):
            return False
    return True
