"""Closed-form volumes, normalized volumes, sandwich bounds, landmarks.

Closed forms exist for antiprisms, Löbell polyhedra and towers; everything
else in the ideal class goes through the realization engine, and compact
volumes beyond additive combinations of these are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import mpmath as mp

from .core import BadParameter
from .lobachevsky import (PrecisionSpec, _digits, lobachevsky, v_oct, v_tet)


@dataclass(frozen=True)
class VolumeValue:
    value: float  # float or mpf depending on precision
    method: str   # closed_form | additive | realized
    digits: int = 15


@dataclass(frozen=True)
class NormalizedVolume:
    omega: float
    omega_tilde: Optional[float]
    ver: int
    kind: str


def _pi(d: int):
    return math.pi if d <= 15 else mp.pi


def antiprism_volume(n: int, prec=None) -> VolumeValue:
    """vol A(n) = 2n [Lambda(pi/4 + pi/2n) + Lambda(pi/4 - pi/2n)]."""
    if n < 3:
        raise BadParameter("antiprism needs n >= 3")
    d = _digits(prec)
    with mp.workdps(d + 10):
        pi = _pi(d)
        val = 2 * n * (lobachevsky(pi / 4 + pi / (2 * n), d) +
                       lobachevsky(pi / 4 - pi / (2 * n), d))
    return VolumeValue(val, "closed_form", d)


def lobell_theta(n: int, d: int = 15):
    """theta_n = pi/2 - arccos(1/(2 cos(pi/n))); lies in (0, pi/2)."""
    if d <= 15:
        th = math.pi / 2 - math.acos(1.0 / (2.0 * math.cos(math.pi / n)))
    else:
        th = mp.pi / 2 - mp.acos(1 / (2 * mp.cos(mp.pi / n)))
    assert 0 < th < float(math.pi / 2) + 1e-12
    return th


def lobell_volume(n: int, prec=None) -> VolumeValue:
    """vol L(n) per the Löbell closed form."""
    if n < 5:
        raise BadParameter("lobell needs n >= 5")
    d = _digits(prec)
    with mp.workdps(d + 10):
        pi = _pi(d)
        th = lobell_theta(n, d)
        val = (n * (
            2 * lobachevsky(th, d) +
            lobachevsky(th + pi / n, d) +
            lobachevsky(th - pi / n, d) -
            lobachevsky(2 * th - pi / 2, d))) / 2
    return VolumeValue(val, "closed_form", d)


def tower_volume(n: int, k: int, prec=None) -> VolumeValue:
    """Towers are glued along isometric bases, so volume is additive."""
    if n < 5 or k < 1:
        raise BadParameter("tower needs n >= 5, k >= 1")
    base = lobell_volume(n, prec)
    return VolumeValue(k * base.value, "additive", base.digits)


def normalized(vol: Union[VolumeValue, float], ver: int,
               kind: str) -> NormalizedVolume:
    """omega = vol/ver; omega_tilde divides by ver-3 (ideal) or ver-10
    (compact)."""
    value = vol.value if isinstance(vol, VolumeValue) else float(vol)
    if ver <= 0:
        raise BadParameter("ver must be positive")
    offset = {"ideal": 3, "compact": 10}.get(kind)
    if offset is None:
        raise BadParameter(f"kind must be ideal or compact, got {kind}")
    tilde = value / (ver - offset) if ver > offset else None
    return NormalizedVolume(value / ver, tilde, ver, kind)


def atkinson_bounds(ver: int, kind: str) -> tuple[float, float]:
    """Volume sandwich for a given vertex count.

    ideal: v_oct (ver-2)/4 <= vol <= v_oct (ver-4)/2, equalities only at
    ver = 6; compact: v_oct (ver-8)/32 <= vol < 5 v_tet (ver-10)/8.
    """
    vo = v_oct()
    if kind == "ideal":
        if ver < 6:
            raise BadParameter("ideal polyhedra have at least 6 vertices")
        return (vo * (ver - 2) / 4, vo * (ver - 4) / 2)
    if kind == "compact":
        if ver < 20:
            raise BadParameter("compact polyhedra have at least 20 vertices")
        return (vo * (ver - 8) / 32, 5 * v_tet() * (ver - 10) / 8)
    raise BadParameter(f"kind must be ideal or compact, got {kind}")


def vd_from_omega(omega: float) -> float:
    """Volume density of the associated augmented link: 6 omega."""
    if omega < 0:
        raise BadParameter("omega must be nonnegative")
    return 6.0 * omega


def landmark_constants(prec=None) -> dict:
    """The spectrum landmarks a..k (in increasing order).

    a = 5 v_oct/192, b = v_oct/32, c = 5 v_tet/16, d = v_oct/6,
    e = 5 v_tet/8, f = v_oct/4, g = v_oct/3, h = 5 v_tet/3, k = v_oct/2.
    """
    d_ = _digits(prec)
    with mp.workdps(d_ + 10):
        vo = v_oct(d_)
        vt = v_tet(d_)
        return {
            "a": 5 * vo / 192,
            "b": vo / 32,
            "c": 5 * vt / 16,
            "d": vo / 6,
            "e": 5 * vt / 8,
            "f": vo / 4,
            "g": vo / 3,
            "h": 5 * vt / 3,
            "k": vo / 2,
        }
