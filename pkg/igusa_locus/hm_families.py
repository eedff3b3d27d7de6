"""
Genus-2 Families with Quaternionic Multiplication.

Two one-parameter families of genus-2 curves Y^2 = f(X) over base curves of
genus 1, for discriminants 6 and 10. Parameters are exact values in Q or in a
single quadratic extension of Q.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

import sympy

from .arith import QuadExtVal, rational_sqrt
from .errors import DomainError

logger = logging.getLogger(__name__)

FAMILIES = (6, 10)

Value = Union[int, Fraction, str, QuadExtVal]


@dataclass(frozen=True)
class HMParams:
    family: int
    t: QuadExtVal
    s: QuadExtVal


@dataclass(frozen=True)
class HMCoeffs:
    P: QuadExtVal
    Q: QuadExtVal
    R: QuadExtVal


@dataclass(frozen=True)
class Degenerate:
    reason: str


@dataclass(frozen=True)
class HMCurve:
    """Model Y^2 = c5 X^5 + ... + c1 X + c0; degenerate carries the reason when it is not genus 2."""
    family: int
    params: HMParams
    f_coeffs: Tuple[QuadExtVal, ...]
    degenerate: Optional[str] = None


class HMPoint(NamedTuple):
    t: Fraction
    s: Fraction
    degenerate: bool


def _value(x: Value) -> QuadExtVal:
    if isinstance(x, str):
        return QuadExtVal.parse(x)
    return QuadExtVal.coerce(x)


def _check_family(family: int) -> int:
    if family not in FAMILIES:
        raise DomainError(f"Unknown family {family}; expected one of {FAMILIES}")
    return family


def base_polynomial(family: int, t: Value, s: Value) -> QuadExtVal:
    """g(t, s): 4s^2t^2 - s^2 + t^2 + 2 for family 6, s^2 - t(t-2)(2t+1) for family 10."""
    family = _check_family(family)
    t, s = _value(t), _value(s)
    if family == 6:
        return 4 * s * s * t * t - s * s + t * t + 2
    return s * s - t * (t - 2) * (2 * t + 1)


def on_base_curve(family: int, t: Value, s: Value) -> bool:
    return base_polynomial(family, t, s).is_zero()


def coeffs(family: int, t: Value, s: Value) -> Union[HMCoeffs, Degenerate]:
    """P, Q, R of the family at (t, s), or Degenerate when a denominator or P vanishes."""
    t, s = _value(t), _value(s)
    if not on_base_curve(family, t, s):
        raise DomainError(f"({t}, {s}) is not on the base curve of family {family}")

    if family == 6:
        den = 3 * (1 - t * t) * (1 - 4 * t * t)
        if den.is_zero():
            return Degenerate("3(1-t^2)(1-4t^2) vanishes")
        P = 2 * s + 2 * t
        Q = (1 + 2 * t * t) * (11 - 28 * t ** 2 + 8 * t ** 4) / den
        R = 2 * s - 2 * t
        return HMCoeffs(P, Q, R)

    for den, label in (
        ((t - 1) ** 2, "(t-1)^2"),
        (t * (t - 1) ** 2 * (t + 1) ** 2, "t(t-1)^2(t+1)^2"),
        (t * (t + 1) * (2 * t + 1), "t(t+1)(2t+1)"),
    ):
        if den.is_zero():
            return Degenerate(f"{label} vanishes")
    P = 4 * (2 * t + 1) * (t * t - t - 1) / (t - 1) ** 2
    if P.is_zero():
        return Degenerate("P = 0")
    Q = (t * t + 1) * (t ** 4 + 8 * t ** 3 - 10 * t * t - 8 * t + 1) / (t * (t - 1) ** 2 * (t + 1) ** 2)
    R = (t - 1) * s / (t * (t + 1) * (2 * t + 1))
    return HMCoeffs(P, Q, R)


def _discriminant_vanishes(f_coeffs: Tuple[QuadExtVal, ...]) -> bool:
    radicands = {c.radicand for c in f_coeffs if not c.is_rational}
    radicand = radicands.pop() if radicands else 1
    x, w = sympy.symbols("x w")
    poly = sum(c.to_sympy(w) * x ** (len(f_coeffs) - 1 - k) for k, c in enumerate(f_coeffs))
    disc = sympy.expand(sympy.discriminant(poly, x))
    if radicand != 1:
        disc = sympy.rem(disc, w ** 2 - radicand, w)
    return sympy.Poly(disc, w).is_zero


def curve(family: int, t: Value, s: Value) -> HMCurve:
    """The genus-2 model at (t, s), flagged degenerate when it is not a smooth quintic model."""
    family = _check_family(family)
    t, s = _value(t), _value(s)
    params = HMParams(family, t, s)
    c = coeffs(family, t, s)
    if isinstance(c, Degenerate):
        return HMCurve(family, params, (), c.reason)

    P, Q, R = c.P, c.Q, c.R
    if family == 6:
        f = (QuadExtVal(1), P, Q, R, QuadExtVal(1), QuadExtVal(0))
    else:
        f = (P * P, P * P * (1 + R), P * Q, P * (1 - R), QuadExtVal(1), QuadExtVal(0))

    if f[0].is_zero():
        return HMCurve(family, params, f, "leading coefficient vanishes")
    if _discriminant_vanishes(f):
        return HMCurve(family, params, f, "discriminant of f vanishes")
    return HMCurve(family, params, f, None)


def _rationals(height_bound: int) -> List[Fraction]:
    values = {
        Fraction(p, q)
        for q in range(1, height_bound + 1)
        for p in range(-height_bound, height_bound + 1)
        if math.gcd(p, q) == 1
    }
    return sorted(values)


def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def rational_points(family: int, height_bound: int) -> List[HMPoint]:
    """Rational points of the base curve with t and s of height <= height_bound.

    Args:
        family: 6 or 10
        height_bound: Bound on |numerator| and denominator of t and s

    Returns:
        HMPoint list ordered by (t, s)
    """
    family = _check_family(family)
    if height_bound < 1:
        raise DomainError(f"height_bound must be >= 1, got {height_bound}")

    points = []
    for t in _rationals(height_bound):
        if family == 6:
            if 4 * t * t == 1:
                continue
            square = -(t * t + 2) / (4 * t * t - 1)
        else:
            square = t * (t - 2) * (2 * t + 1)
        if square < 0:
            continue
        root = rational_sqrt(square)
        if root is None or _height(root) > height_bound:
            continue
        for s in sorted({-root, root}):
            degenerate = curve(family, t, s).degenerate is not None
            points.append(HMPoint(t, s, degenerate))
    logger.debug("Family %d: %d point(s) of height <= %d", family, len(points), height_bound)
    return points
