"""Riemann-Liouville fractional integrals in one and two variables.

The one-sided operator of order ``alpha > 0`` weights the function by the
kernel ``|x - t|^(alpha - 1) / Gamma(alpha)``; the four two-variable corner
operators are tensor products of one-sided operators on each axis.  The
weakly singular kernel is removed exactly by the substitution behind
:func:`hhfrac.quadrature.power_weighted_rule`:

    int_a^x (x - t)^(alpha-1) f(t) dt  =  (x - a)^alpha *
        int_0^1 s^(alpha-1) f(x - (x - a) s) ds

after which standard Gauss-Legendre converges spectrally for smooth ``f``.
Every public value is the finer of two refinement levels (``n`` and ``2n``
nodes per axis); their disagreement is the reported error estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError
from .quadrature import check_two_level, power_weighted_rule
from .special import gamma

__all__ = [
    "Side",
    "Corner",
    "Interval",
    "Rectangle",
    "FracOrder",
    "QuadratureScheme",
    "QuadratureSpec",
    "frac_integral_1d",
    "frac_integral_1d_with_estimate",
    "frac_integral_2d",
    "frac_integral_2d_with_estimate",
]


class Side(enum.Enum):
    """Side of a one-variable fractional integral."""

    LEFT = "left"  # anchored at the lower endpoint, evaluated to its right
    RIGHT = "right"  # anchored at the upper endpoint, evaluated to its left


class Corner(enum.Enum):
    """Anchor corner of a two-variable fractional integral."""

    LOWER_LOWER = "a+c+"
    LOWER_UPPER = "a+d-"
    UPPER_LOWER = "b-c+"
    UPPER_UPPER = "b-d-"

    @property
    def x_side(self) -> Side:
        return Side.LEFT if self in (Corner.LOWER_LOWER, Corner.LOWER_UPPER) else Side.RIGHT

    @property
    def y_side(self) -> Side:
        return Side.LEFT if self in (Corner.LOWER_LOWER, Corner.UPPER_LOWER) else Side.RIGHT


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DomainError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Rectangle:
    """The domain [a, b] x [c, d]."""

    x: Interval
    y: Interval

    @classmethod
    def from_bounds(cls, a: float, b: float, c: float, d: float) -> "Rectangle":
        return cls(Interval(a, b), Interval(c, d))

    @property
    def a(self) -> float:
        return self.x.lo

    @property
    def b(self) -> float:
        return self.x.hi

    @property
    def c(self) -> float:
        return self.y.lo

    @property
    def d(self) -> float:
        return self.y.hi

    @property
    def midpoint(self) -> tuple[float, float]:
        return (0.5 * (self.a + self.b), 0.5 * (self.c + self.d))

    def corners(self) -> tuple[tuple[float, float], ...]:
        """Corner points in the fixed order (a,c), (a,d), (b,c), (b,d)."""
        return ((self.a, self.c), (self.a, self.d), (self.b, self.c), (self.b, self.d))

    def require_nonneg_origin(self) -> None:
        """The inequality theorems assume 0 <= a and 0 <= c."""
        if self.a < 0.0 or self.c < 0.0:
            raise DomainError(
                f"theorem evaluation requires 0 <= a and 0 <= c, got a={self.a}, c={self.c}"
            )


@dataclass(frozen=True)
class FracOrder:
    alpha: float
    beta: float

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"fractional order {name} must be positive, got {v}")


class QuadratureScheme(enum.Enum):
    GAUSS_LEGENDRE_DESINGULARIZED = "gauss-legendre-desingularized"
    GRADED_COMPOSITE = "graded-composite"

    @property
    def rule_name(self) -> str:
        return "gauss" if self is QuadratureScheme.GAUSS_LEGENDRE_DESINGULARIZED else "simpson"


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_per_axis: int = 64
    scheme: QuadratureScheme = QuadratureScheme.GAUSS_LEGENDRE_DESINGULARIZED
    target_rel_tol: float = 1e-9

    def __post_init__(self):
        if self.nodes_per_axis < 2:
            raise DomainError(f"nodes_per_axis must be >= 2, got {self.nodes_per_axis}")
        if not self.target_rel_tol > 0.0:
            raise DomainError(f"target_rel_tol must be positive, got {self.target_rel_tol}")


_DEFAULT_SPEC = QuadratureSpec()


def _as_evaluator(f) -> Callable:
    """Accept either a plain callable or an object with an ``evaluator``."""
    return getattr(f, "evaluator", f)


def _sample_1d(f: Callable, ts: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(ts), dtype=float)
        if vals.shape != ts.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(f(float(t))) for t in ts])
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(f"function value not finite at t={ts[i]!r}")
    return vals


def _sample_2d(f: Callable, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(xs[:, None], ys[None, :]), dtype=float)
        if vals.shape != (xs.size, ys.size):
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([[float(f(float(x), float(y))) for y in ys] for x in xs])
    bad = ~np.isfinite(vals)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise EvaluationError(
            f"function value not finite at (x={xs[i]!r}, y={ys[j]!r})"
        )
    return vals


def _axis_samples(order: float, side: Side, interval: Interval, at: float, n: int,
                  scheme: str) -> tuple[np.ndarray, np.ndarray, float]:
    """Sample points, weights and the kernel scale for one axis.

    Returns ``(points, weights, scale)`` with the axis contribution equal to
    ``scale * sum(weights * f(points))`` and ``scale = span^order / Gamma(order)``.
    """
    u, w = power_weighted_rule(order, n, scheme)
    if side is Side.LEFT:
        span = at - interval.lo
        pts = at - span * u
    else:
        span = interval.hi - at
        pts = at + span * u
    return pts, w, span**order / gamma(order)


def _check_at_1d(side: Side, interval: Interval, at: float) -> None:
    if side is Side.LEFT:
        if not (interval.lo < at <= interval.hi):
            raise DomainError(
                f"left-sided integral needs at in ({interval.lo}, {interval.hi}], got {at}"
            )
    else:
        if not (interval.lo <= at < interval.hi):
            raise DomainError(
                f"right-sided integral needs at in [{interval.lo}, {interval.hi}), got {at}"
            )


def frac_integral_1d_with_estimate(
    f: Callable[[float], float],
    order: float,
    side: Side,
    interval: Interval,
    at: float,
    spec: QuadratureSpec = _DEFAULT_SPEC,
) -> tuple[float, float]:
    """One-sided fractional integral of ``f`` with its error estimate."""
    if not (math.isfinite(order) and order > 0.0):
        raise DomainError(f"order must be positive, got {order}")
    _check_at_1d(side, interval, at)
    ev = _as_evaluator(f)
    results = []
    for n in (spec.nodes_per_axis, 2 * spec.nodes_per_axis):
        pts, w, scale = _axis_samples(order, side, interval, at, n, spec.scheme.rule_name)
        results.append(scale * float(np.dot(w, _sample_1d(ev, pts))))
    est = check_two_level(results[0], results[1], spec.target_rel_tol,
                          "1d fractional integral")
    return results[1], est


def frac_integral_1d(
    f: Callable[[float], float],
    order: float,
    side: Side,
    interval: Interval,
    at: float,
    spec: QuadratureSpec = _DEFAULT_SPEC,
) -> float:
    value, _ = frac_integral_1d_with_estimate(f, order, side, interval, at, spec)
    return value


def _check_at_2d(corner: Corner, rect: Rectangle, at: tuple[float, float]) -> None:
    x, y = at
    _check_at_1d(corner.x_side, rect.x, x)
    _check_at_1d(corner.y_side, rect.y, y)


def frac_integral_2d_with_estimate(
    f,
    order: FracOrder,
    corner: Corner,
    rect: Rectangle,
    at: tuple[float, float],
    spec: QuadratureSpec = _DEFAULT_SPEC,
) -> tuple[float, float]:
    """Two-variable corner fractional integral of ``f`` with error estimate.

    The kernel is separable, so the rule is the tensor product of the
    one-axis substitutions; ``f`` is sampled on the resulting grid.
    """
    _check_at_2d(corner, rect, at)
    ev = _as_evaluator(f)
    results = []
    for n in (spec.nodes_per_axis, 2 * spec.nodes_per_axis):
        xs, wx, sx = _axis_samples(order.alpha, corner.x_side, rect.x, at[0], n,
                                   spec.scheme.rule_name)
        ys, wy, sy = _axis_samples(order.beta, corner.y_side, rect.y, at[1], n,
                                   spec.scheme.rule_name)
        vals = _sample_2d(ev, xs, ys)
        results.append(sx * sy * float(wx @ vals @ wy))
    est = check_two_level(results[0], results[1], spec.target_rel_tol,
                          "2d fractional integral")
    return results[1], est


def frac_integral_2d(
    f,
    order: FracOrder,
    corner: Corner,
    rect: Rectangle,
    at: tuple[float, float],
    spec: QuadratureSpec = _DEFAULT_SPEC,
) -> float:
    value, _ = frac_integral_2d_with_estimate(f, order, corner, rect, at, spec)
    return value
