"""Shared quadrature engines.

Three rules cover every integral in the package:

* Gauss-Legendre on [0, 1] (cached nodes).
* Power-weighted rules for integrals of the form
  ``int_0^1 s^(order-1) g(s) ds`` with ``order > 0``.  The substitution
  ``s = v^p`` with ``p = ceil(max(order, 1)) / order`` turns the kernel into
  the polynomial ``v^(p*order - 1)``, so Gauss-Legendre in ``v`` converges
  spectrally for smooth ``g`` even when the kernel is weakly singular
  (``order < 1``) or has a fractional-power kink (non-integer ``order > 1``).
* Tanh-sinh (double-exponential) quadrature on (0, 1) for integrands with
  algebraic singularities at either endpoint, used for the h-moment
  integrals whose weight functions are only known pointwise.

Error estimates are two-level refinement disagreements with a floor at the
round-off scale of the result, so a reported estimate is never smaller than
what double precision can resolve.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureNonConvergenceError

_EPS = float(np.finfo(np.float64).eps)

#: Disagreement beyond ``NONCONVERGENCE_FACTOR * target_rel_tol`` (relative to
#: the finer value, with an absolute floor of one) raises.
NONCONVERGENCE_FACTOR = 100.0


def error_floor(value: float) -> float:
    """Smallest honest error estimate for a float64 result of this size."""
    return 8.0 * _EPS * (1.0 + abs(value))


@lru_cache(maxsize=None)
def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    x, w = np.polynomial.legendre.leggauss(int(n))
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def grading_exponent(order: float) -> float:
    """Minimal substitution exponent ``p`` with ``p * order`` a positive integer.

    For ``order <= 1`` this is ``1/order`` (the weight becomes constant);
    for larger orders the milder ``ceil(order)/order`` keeps the composed
    integrand smooth while the weight stays polynomial.
    """
    if order <= 0.0:
        raise ValueError(f"order must be positive, got {order}")
    return math.ceil(max(order, 1.0)) / order


#: Extra integer factor on the kernel-end grading.  Besides turning the
#: weight into a polynomial, the boost absorbs algebraic kinks the function
#: itself may have at the kernel endpoint (e.g. t^s sections with s < 1):
#: the residual fractional power is raised high enough that Gauss-Legendre
#: reaches round-off at the default node counts.
_KERNEL_GRADING_BOOST = 4

#: Grading exponent toward the opposite endpoint, absorbing algebraic kinks
#: of the function at the far end of the integration interval.
_FAR_END_GRADING = 4


@lru_cache(maxsize=None)
def _simpson_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Simpson nodes/weights on [0, 1] with at least n+1 points."""
    m = max(2, 2 * ((n + 1) // 2))  # even number of cells
    v = np.linspace(0.0, 1.0, m + 1)
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= 1.0 / (3.0 * m)
    v.setflags(write=False)
    w.setflags(write=False)
    return v, w


@lru_cache(maxsize=None)
def power_weighted_rule(
    order: float, n: int, scheme: str = "gauss"
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights (u, w) with ``sum w*g(u) ~ int_0^1 s^(order-1) g(s) ds``.

    The rule composes two gradings: ``v = 1 - (1 - r)^m`` clusters nodes at
    the far endpoint and ``u = v^p`` (with ``p * order`` an integer) removes
    the kernel singularity exactly.  ``scheme`` is ``"gauss"`` (Gauss-Legendre
    in the graded variable, the default) or ``"simpson"`` (composite Simpson
    on the same grading, kept as an independent cross-check path).
    """
    p = _KERNEL_GRADING_BOOST * grading_exponent(order)
    m = float(_FAR_END_GRADING)
    if scheme == "gauss":
        r, gw = gauss_legendre_01(n)
    elif scheme == "simpson":
        r, gw = _simpson_01(n)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    omr = 1.0 - r
    v = 1.0 - omr**m
    u = v**p
    # p * order - 1 >= 3 by construction, so the weight vanishes at v = 0.
    w = gw * m * omr ** (m - 1.0) * p * v ** (p * order - 1.0)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def check_two_level(coarse: float, fine: float, target_rel_tol: float, what: str) -> float:
    """Return the two-level error estimate, raising on gross disagreement."""
    est = abs(coarse - fine) + error_floor(fine)
    scale = max(1.0, abs(fine))
    if abs(coarse - fine) > NONCONVERGENCE_FACTOR * target_rel_tol * scale:
        raise QuadratureNonConvergenceError(
            f"{what}: refinement levels disagree by {abs(coarse - fine):.3e} "
            f"(limit {NONCONVERGENCE_FACTOR * target_rel_tol * scale:.3e})"
        )
    return est


# ---------------------------------------------------------------------------
# tanh-sinh on (0, 1)
# ---------------------------------------------------------------------------

_TS_BASE_LEVEL = 3
_TS_UMAX = 6.5  # beyond this the node distance to the endpoint underflows


@lru_cache(maxsize=None)
def _tanh_sinh_level(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """New nodes at refinement ``level``: (t, 1-t, w).

    Level 0 is the full coarse grid with step ``2^-3``; each higher level
    contributes only the odd multiples of its step so partial sums can be
    accumulated.  ``t`` and ``1-t`` are both computed from the stable
    exponential form, so either endpoint distance is accurate to round-off.
    """
    h = 2.0 ** (-(level + _TS_BASE_LEVEL))
    kmax = int(_TS_UMAX / h)
    if level == 0:
        ks = np.arange(-kmax, kmax + 1)
    else:
        ks = np.arange(-kmax, kmax + 1)
        ks = ks[ks % 2 != 0]
    u = ks * h
    z = 0.5 * math.pi * np.sinh(u)
    ez = np.exp(-2.0 * np.abs(z))
    near = ez / (1.0 + ez)  # distance to the nearer endpoint
    t = np.where(z >= 0, 1.0 - near, near)
    omt = np.where(z >= 0, near, 1.0 - near)
    # dt/du = (pi/4) cosh(u) sech^2(z) with sech^2(z) = 4 ez / (1 + ez)^2
    w = math.pi * np.cosh(u) * ez / (1.0 + ez) ** 2
    keep = (near > 0.0) & np.isfinite(w) & (w > 0.0)
    out = (t[keep], omt[keep], w[keep])
    for a in out:
        a.setflags(write=False)
    return out


def tanh_sinh_01(
    integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
    rel_tol: float = 1e-13,
    max_level: int = 9,
) -> tuple[float, float]:
    """Integrate ``integrand(t, 1 - t)`` over (0, 1).

    The integrand receives both ``t`` and ``1 - t`` so that algebraic
    behaviour at either endpoint can be evaluated without cancellation.
    Returns ``(value, error_estimate)``; the estimate is the disagreement of
    the two finest levels plus the round-off floor.
    """
    h = 2.0 ** (-_TS_BASE_LEVEL)
    t, omt, w = _tanh_sinh_level(0)
    acc = float(np.dot(w, integrand(t, omt)))
    prev = acc * h
    if not math.isfinite(prev):
        raise QuadratureNonConvergenceError(
            "tanh-sinh samples produced non-finite values; integrand likely divergent"
        )
    result = prev
    err = abs(prev)
    for level in range(1, max_level + 1):
        t, omt, w = _tanh_sinh_level(level)
        acc += float(np.dot(w, integrand(t, omt)))
        h *= 0.5
        result = acc * h
        if not math.isfinite(result):
            raise QuadratureNonConvergenceError(
                "tanh-sinh samples produced non-finite values; integrand likely divergent"
            )
        err = abs(result - prev)
        if err <= rel_tol * max(1.0, abs(result)):
            break
        prev = result
    return result, err + error_floor(result)
