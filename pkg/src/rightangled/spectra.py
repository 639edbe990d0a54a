"""Normalized-volume spectra: table rows, discreteness bounds, density
schedules, and region classification.

The spectrum of a family is the set of normalized volumes omega = vol/ver.
Connected sums make omega-tilde (vol divided by the reduced vertex count)
behave as a weighted average, which drives both the discreteness bound and
the integer gluing schedules used to approximate targets in the dense
range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import BadParameter
from .lobachevsky import v_oct
from .volumes import landmark_constants


class MissingVolumes(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class Unreachable(ValueError):
    pass


class TermBudget(RuntimeError):
    pass


_OFFSET = {"ideal": 3, "compact": 10}


@dataclass(frozen=True)
class SpectrumPoint:
    code: str
    ver: int
    vol: Optional[float]
    omega: Optional[float]
    omega_tilde: Optional[float]

    def sort_key(self):
        return (self.omega if self.omega is not None else math.inf,
                self.code)


@dataclass(frozen=True)
class SpectrumRow:
    kind: str
    ver: int
    count: int
    distinct: int
    min_omega: Optional[float]
    max_omega: Optional[float]
    partial: bool


@dataclass(frozen=True)
class GluingSchedule:
    p1: tuple  # (ver_tilde, omega_tilde)
    p2: tuple
    target: float
    pairs: tuple  # coprime (k, m) convergents, best last
    predicted: float


def _offset(kind: str) -> int:
    off = _OFFSET.get(kind)
    if off is None:
        raise BadParameter(f"kind must be ideal or compact, got {kind}")
    return off


def spectrum_points(kind: str, members) -> list[SpectrumPoint]:
    """Build sorted points from census members (anything with .code, .ver,
    .volume attributes or (code, ver, vol) triples)."""
    off = _offset(kind)
    pts = []
    for m in members:
        code, ver, vol = ((m.code, m.ver, m.volume)
                          if hasattr(m, "code") else tuple(m))
        omega = None if vol is None else vol / ver
        tilde = None if vol is None or ver <= off else vol / (ver - off)
        pts.append(SpectrumPoint(code, ver, vol, omega, tilde))
    return sorted(pts, key=SpectrumPoint.sort_key)


def distinct_count(values: Sequence[float], tol: float = 1e-6) -> int:
    """Group by consecutive gaps below tol."""
    vals = sorted(values)
    if not vals:
        return 0
    return 1 + sum(1 for a, b in zip(vals, vals[1:]) if b - a >= tol)


def spectrum_table(kind: str, n: int, volumes: dict) -> SpectrumRow:
    """One table row for vertex count n from {code: volume-or-None}.

    Ideal rows require every volume (MissingVolumes otherwise); compact rows
    tolerate gaps and are flagged partial, with min/max taken over the
    constructible members only.
    """
    _offset(kind)
    count = len(volumes)
    known = sorted(v for v in volumes.values() if v is not None)
    missing = count - len(known)
    if kind == "ideal" and missing:
        raise MissingVolumes(f"{missing} member(s) without volume at n={n}")
    if not known:
        return SpectrumRow(kind, n, count, 0, None, None, missing > 0)
    omegas = [v / n for v in known]
    return SpectrumRow(kind, n, count, distinct_count(omegas),
                       min(omegas), max(omegas), missing > 0)


def weighted_average_check(p1: tuple, p2: tuple) -> float:
    """omega-tilde of a connected sum is the ver-tilde-weighted average of
    the summands' omega-tilde values."""
    v1, a = p1
    v2, b = p2
    if not (math.isfinite(a) and math.isfinite(b)):
        raise BadParameter("omega_tilde values must be finite")
    return (v1 * a + v2 * b) / (v1 + v2)


def discreteness_bound(C: float, kind: str) -> int:
    """Max vertex count of a polyhedron of the given kind with omega <= C.

    Valid for C in [v_oct/6, v_oct/4) (ideal) or [5 v_oct/192, v_oct/32)
    (compact); the bound diverges at the right endpoint.
    """
    vo = v_oct()
    if kind == "ideal":
        lo, denom = vo / 6, vo - 4 * C
        if not lo <= C or denom <= 0:
            raise OutOfRange(f"C must lie in [v_oct/6, v_oct/4), got {C}")
        return math.floor(2 * vo / denom)
    if kind == "compact":
        lo, denom = 5 * vo / 192, vo - 32 * C
        if not lo <= C or denom <= 0:
            raise OutOfRange(f"C must lie in [5v_oct/192, v_oct/32), "
                             f"got {C}")
        return math.floor(8 * vo / denom)
    raise BadParameter(f"kind must be ideal or compact, got {kind}")


def _convergents(x: Fraction, max_terms: int):
    """Continued-fraction convergents of x >= 0 (coprime by construction)."""
    h0, k0, h1, k1 = 0, 1, 1, 0
    for _ in range(max_terms):
        a = x.numerator // x.denominator
        h0, k0, h1, k1 = h1, k1, a * h1 + h0, a * k1 + k0
        yield h1, k1
        frac = x - a
        if frac == 0:
            return
        x = 1 / frac


def approximation_schedule(t: float, p1: tuple, p2: tuple,
                           eps: float = 1e-4,
                           max_terms: int = 40) -> GluingSchedule:
    """Coprime (k, m) gluing multiplicities whose weighted average hits the
    target: k copies of P1 and m of P2 give predicted omega-tilde within eps
    of t.  Pairs are continued-fraction convergents of the exact ratio."""
    v1, a = p1
    v2, b = p2
    if eps <= 0:
        raise BadParameter("eps must be positive")
    if t == a:
        return GluingSchedule(p1, p2, t, ((1, 0),), a)
    if t == b:
        return GluingSchedule(p1, p2, t, ((0, 1),), b)
    if not min(a, b) < t < max(a, b):
        raise Unreachable(f"target {t} outside [{min(a, b)}, {max(a, b)}]")

    def predicted(k, m):
        return (k * v1 * a + m * v2 * b) / (k * v1 + m * v2)

    # k/m = v2 (b - t) / (v1 (t - a)), exact in the float inputs
    ratio = (Fraction(v2) * (Fraction(b) - Fraction(t))) / \
            (Fraction(v1) * (Fraction(t) - Fraction(a)))
    pairs = []
    for k, m in _convergents(ratio, max_terms):
        if k <= 0 or m <= 0:
            continue
        pairs.append((k, m))
        p = predicted(k, m)
        if abs(p - t) <= eps:
            return GluingSchedule(p1, p2, t, tuple(pairs), p)
    raise TermBudget(f"no convergent within {eps} after {max_terms} terms")


def repeated_sum_convergence(p: tuple, m_max: int, kind: str) -> list:
    """omega of the m-fold repeated connected sum of P with itself:
    omega(#_m P) = omega_tilde * (m ver_tilde)/(m ver_tilde + offset),
    strictly increasing to omega_tilde."""
    if m_max < 1:
        raise BadParameter("m_max must be >= 1")
    off = _offset(kind)
    vt, ot = p
    return [ot * (m * vt) / (m * vt + off) for m in range(1, m_max + 1)]


def classify(omega: float, kind: str, tol: float = 1e-6) -> str:
    """Region of the spectrum an omega value falls in.

    Left-closed region boundaries admit a one-ulp-of-6-d.p. tolerance so
    that values quoted truncated to 6 decimals land in their region."""
    if omega < 0:
        raise BadParameter("omega must be nonnegative")
    lm = landmark_constants()
    if kind == "ideal":
        d, f, k = lm["d"], lm["f"], lm["k"]
        if omega < d - tol:
            return "below"
        if omega < f - tol:
            return "discrete"
        if omega <= k + tol:
            return "dense"
        return "above"
    if kind == "compact":
        a, b, c, e = lm["a"], lm["b"], lm["c"], lm["e"]
        if omega < a - tol:
            return "below"
        if omega < b - tol:
            return "discrete"
        if omega < c - tol:
            return "unknown_gap"
        if omega <= e + tol:
            return "dense"
        return "above"
    raise BadParameter(f"kind must be ideal or compact, got {kind}")
