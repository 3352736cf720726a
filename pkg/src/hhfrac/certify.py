"""Evaluate both sides of the Hadamard-type chains, the trapezoid and
Hölder bounds, and the two-sided identity they all rest on.

Shorthand used throughout (rectangle [a, b] x [c, d], orders alpha, beta):

* ``middle_fractional_term``: the four corner fractional integrals summed and
  scaled by Gamma(alpha+1) Gamma(beta+1) / (4 (b-a)^alpha (d-c)^beta).
* ``a_term``: the correction A built from eight one-variable fractional
  integrals of the boundary sections f(a, .), f(b, .), f(., c), f(., d).
* h-moments: M(h, g)  = int_0^1 t^(g-1) (h(t) + h(1-t)) dt,
             K1(h, g) = int_0^1 (t^g + (1-t)^g) h(t) dt   (and its mirror),
             U(h)     = int_0^1 h(t) dt                   (and its mirror).
  All are computed by tanh-sinh quadrature for any weight; the corollary
  functions provide the Beta-function closed forms for the power family, and
  the two routes are cross-checked in the test suite.

Every report carries a propagated quadrature-error estimate, and pass/fail
is decided against ``tol = max(abs_tol, 10 * quadrature_error)``: the
inequalities are exact in the limit, tolerance exists only for numerics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergentMomentError, DomainError
from .fracquad import (
    Corner,
    FracOrder,
    QuadratureSpec,
    Rectangle,
    Side,
    frac_integral_1d_with_estimate,
    frac_integral_2d_with_estimate,
)
from .funcspace import BivariateFunction, FDSpec, mixed_partial
from .hweights import HWeight, h_eval
from .quadrature import check_two_level, power_weighted_rule, tanh_sinh_01
from .special import beta as beta_fn
from .special import gamma

__all__ = [
    "ChainReport",
    "BoundReport",
    "LemmaReport",
    "HolderExponents",
    "DEFAULT_ABS_TOL",
    "MOMENT_WEIGHT_NOTE",
    "KINK_NOTE",
    "middle_fractional_term",
    "middle_fractional_term_with_estimate",
    "a_term",
    "a_term_with_estimate",
    "h_moment_m",
    "h_moment_k1",
    "h_moment_unit",
    "corollary_moment_c1",
    "corollary_moment_c2",
    "corollary_moment_c3",
    "theorem1_chain",
    "theorem4_chain",
    "theorem5_bound",
    "theorem6_bound",
    "lemma1_residual",
]

DEFAULT_ABS_TOL = 1e-8

#: The upper chain member is integrated against t^(alpha-1) k^(beta-1); the
#: orders are paired with their own axes, matching the Beta-moment closed
#: forms for power weights.
MOMENT_WEIGHT_NOTE = "moment weights pair each axis with its own order: t^(alpha-1) k^(beta-1)"

#: Attached when f contains abs(): the mixed partial is unreliable near the
#: kink, so derivative-based bounds are reported, not asserted.
KINK_NOTE = "f has a kink (abs); mixed-partial values near it are unreliable"

_DEFAULT_SPEC = QuadratureSpec()
_DEFAULT_FD = FDSpec()


@dataclass(frozen=True)
class ChainReport:
    """Computed members of a three-part inequality chain.

    ``passed`` holds exactly when both gaps are >= -tol with
    ``tol = max(abs_tol, 10 * quadrature_error)``.
    """

    left: float
    middle: float
    right: float
    gap_lm: float
    gap_mr: float
    passed: bool
    quadrature_error: float
    tol: float
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundReport:
    """An absolute-value bound |lhs| <= rhs with its slack."""

    lhs_abs: float
    rhs: float
    slack: float
    passed: bool
    a_term: float
    quadrature_error: float
    tol: float
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class LemmaReport:
    """Both sides of the two-sided identity and their residual."""

    lhs: float
    rhs: float
    residual: float
    quadrature_error: float
    passed: bool


@dataclass(frozen=True)
class HolderExponents:
    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 1.0 and self.q > 1.0):
            raise DomainError(f"need p, q > 1, got p={self.p}, q={self.q}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
            raise DomainError(
                f"1/p + 1/q must equal 1 (got {1.0 / self.p + 1.0 / self.q})"
            )

    @classmethod
    def from_p(cls, p: float) -> "HolderExponents":
        if not p > 1.0:
            raise DomainError(f"need p > 1, got {p}")
        return cls(p=float(p), q=p / (p - 1.0))


def _as_bivariate(f) -> BivariateFunction:
    if isinstance(f, BivariateFunction):
        return f
    return BivariateFunction(evaluator=f)


def _corner_values(f: BivariateFunction, rect: Rectangle) -> tuple[float, ...]:
    return tuple(float(f(px, py)) for px, py in rect.corners())


# ---------------------------------------------------------------------------
# the fractional building blocks
# ---------------------------------------------------------------------------

def middle_fractional_term_with_estimate(
    f, order: FracOrder, rect: Rectangle, spec: QuadratureSpec = _DEFAULT_SPEC
) -> tuple[float, float]:
    """Scaled four-corner sum of two-variable fractional integrals.

    Each corner operator is anchored at one corner of the rectangle and
    evaluated at the opposite corner.
    """
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    pieces = (
        (Corner.LOWER_LOWER, (rect.b, rect.d)),
        (Corner.LOWER_UPPER, (rect.b, rect.c)),
        (Corner.UPPER_LOWER, (rect.a, rect.d)),
        (Corner.UPPER_UPPER, (rect.a, rect.c)),
    )
    total = 0.0
    err = 0.0
    for corner, at in pieces:
        v, e = frac_integral_2d_with_estimate(fv, order, corner, rect, at, spec)
        total += v
        err += e
    scale = (gamma(order.alpha + 1.0) * gamma(order.beta + 1.0)
             / (4.0 * rect.x.width**order.alpha * rect.y.width**order.beta))
    return scale * total, scale * err


def middle_fractional_term(f, order: FracOrder, rect: Rectangle,
                           spec: QuadratureSpec = _DEFAULT_SPEC) -> float:
    return middle_fractional_term_with_estimate(f, order, rect, spec)[0]


def a_term_with_estimate(
    f, order: FracOrder, rect: Rectangle, spec: QuadratureSpec = _DEFAULT_SPEC
) -> tuple[float, float]:
    """The correction A from the eight boundary-section fractional integrals."""
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    a, b, c, d = rect.a, rect.b, rect.c, rect.d

    def section_x(x0):
        return lambda s: fv(x0, s)

    def section_y(y0):
        return lambda t: fv(t, y0)

    y_pieces = (
        (section_x(a), Side.LEFT, d), (section_x(b), Side.LEFT, d),
        (section_x(a), Side.RIGHT, c), (section_x(b), Side.RIGHT, c),
    )
    x_pieces = (
        (section_y(c), Side.LEFT, b), (section_y(d), Side.LEFT, b),
        (section_y(c), Side.RIGHT, a), (section_y(d), Side.RIGHT, a),
    )
    sum_y = err_y = 0.0
    for sec, side, at in y_pieces:
        v, e = frac_integral_1d_with_estimate(sec, order.beta, side, rect.y, at, spec)
        sum_y += v
        err_y += e
    sum_x = err_x = 0.0
    for sec, side, at in x_pieces:
        v, e = frac_integral_1d_with_estimate(sec, order.alpha, side, rect.x, at, spec)
        sum_x += v
        err_x += e
    scale_y = gamma(order.beta + 1.0) / (4.0 * rect.y.width**order.beta)
    scale_x = gamma(order.alpha + 1.0) / (4.0 * rect.x.width**order.alpha)
    return scale_y * sum_y + scale_x * sum_x, scale_y * err_y + scale_x * err_x


def a_term(f, order: FracOrder, rect: Rectangle,
           spec: QuadratureSpec = _DEFAULT_SPEC) -> float:
    return a_term_with_estimate(f, order, rect, spec)[0]


# ---------------------------------------------------------------------------
# h-moment integrals (quadrature for arbitrary weights)
# ---------------------------------------------------------------------------

def _require_convergent_moments(h: HWeight, what: str) -> None:
    if h.moments_diverge:
        raise DivergentMomentError(
            f"{what} diverges for the {h.label} weight (1/t is not integrable at 0)"
        )


def h_moment_m(h: HWeight, order: float) -> tuple[float, float]:
    """M(h, g) = int_0^1 t^(g-1) (h(t) + h(1-t)) dt, with error estimate."""
    if not order > 0.0:
        raise DomainError(f"moment order must be positive, got {order}")
    _require_convergent_moments(h, f"M(h, {order})")
    return tanh_sinh_01(
        lambda t, omt: t ** (order - 1.0) * (h_eval(h, t) + h_eval(h, omt))
    )


def h_moment_k1(h: HWeight, order: float, mirror: bool = False) -> tuple[float, float]:
    """K1(h, g) = int_0^1 (t^g + (1-t)^g) h(t) dt; ``mirror`` uses h(1-t).

    The two agree mathematically (substitute t -> 1-t); both are computed so
    the symmetric factorization of the bound kernels stays verifiable.
    """
    if not order > 0.0:
        raise DomainError(f"moment order must be positive, got {order}")
    _require_convergent_moments(h, f"K1(h, {order})")
    if mirror:
        return tanh_sinh_01(lambda t, omt: (t**order + omt**order) * h_eval(h, omt))
    return tanh_sinh_01(lambda t, omt: (t**order + omt**order) * h_eval(h, t))


def h_moment_unit(h: HWeight, mirror: bool = False) -> tuple[float, float]:
    """U(h) = int_0^1 h(t) dt (or the mirrored int_0^1 h(1-t) dt)."""
    _require_convergent_moments(h, "the unit moment of h")
    if mirror:
        return tanh_sinh_01(lambda t, omt: h_eval(h, omt) + 0.0 * t)
    return tanh_sinh_01(lambda t, omt: h_eval(h, t) + 0.0 * t)


def corollary_moment_c1(order: float, s: float) -> float:
    """Closed form of M(power(s), order): 1/(order+s) + B(order, s+1)."""
    if not order > 0.0:
        raise DomainError(f"order must be positive, got {order}")
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    return 1.0 / (order + s) + beta_fn(order, s + 1.0)


def corollary_moment_c2(order: float, s: float) -> float:
    """Closed form of K1(power(s), order): 1/(order+s+1) + B(s+1, order+1)."""
    if not order > 0.0:
        raise DomainError(f"order must be positive, got {order}")
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    return 1.0 / (order + s + 1.0) + beta_fn(s + 1.0, order + 1.0)


def corollary_moment_c3(s: float) -> float:
    """Closed form of U(power(s))^2: 1/(s+1)^2."""
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    return 1.0 / (s + 1.0) ** 2


# ---------------------------------------------------------------------------
# chains and bounds
# ---------------------------------------------------------------------------

def theorem4_chain(
    f,
    h: HWeight,
    order: FracOrder,
    rect: Rectangle,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> ChainReport:
    """Hadamard chain for a coordinate h-convex f (caller-asserted).

    left   = f at the rectangle midpoint,
    middle = 4 h(1/2)^2 * middle_fractional_term,
    right  = h(1/2)^2 * alpha * beta * (corner sum) * M(h, alpha) * M(h, beta).
    """
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    left = float(fv(*rect.midpoint))
    mft, e_mft = middle_fractional_term_with_estimate(fv, order, rect, spec)
    h2 = h_eval(h, 0.5) ** 2
    middle = 4.0 * h2 * mft
    m_alpha, e_ma = h_moment_m(h, order.alpha)
    m_beta, e_mb = h_moment_m(h, order.beta)
    corner_sum = sum(_corner_values(fv, rect))
    ab = order.alpha * order.beta
    right = h2 * ab * corner_sum * m_alpha * m_beta
    qerr = (4.0 * h2 * e_mft
            + h2 * ab * abs(corner_sum)
            * (e_ma * abs(m_beta) + abs(m_alpha) * e_mb + e_ma * e_mb))
    tol = max(abs_tol, 10.0 * qerr)
    gap_lm = middle - left
    gap_mr = right - middle
    notes = [MOMENT_WEIGHT_NOTE]
    if fv.kinked:
        notes.append(KINK_NOTE)
    return ChainReport(
        left=left, middle=middle, right=right, gap_lm=gap_lm, gap_mr=gap_mr,
        passed=(gap_lm >= -tol and gap_mr >= -tol),
        quadrature_error=qerr, tol=tol, notes=tuple(notes),
    )


def theorem1_chain(
    f,
    order: FracOrder,
    rect: Rectangle,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> ChainReport:
    """Hadamard chain for a coordinate convex f: the identity-weight case.

    With h(t) = t the moments collapse (M = 1/order), the middle loses its
    4 h(1/2)^2 factor, and the right member becomes the plain corner average.
    """
    report = theorem4_chain(f, HWeight.identity(), order, rect, spec, abs_tol)
    notes = tuple(n for n in report.notes if n != MOMENT_WEIGHT_NOTE)
    return ChainReport(
        left=report.left, middle=report.middle, right=report.right,
        gap_lm=report.gap_lm, gap_mr=report.gap_mr, passed=report.passed,
        quadrature_error=report.quadrature_error, tol=report.tol, notes=notes,
    )


def _corner_derivatives(f: BivariateFunction, rect: Rectangle,
                        fd: FDSpec) -> tuple[float, float, float, float]:
    """|d^2 f / dx dy| at (a,c), (a,d), (b,c), (b,d)."""
    return tuple(
        abs(float(mixed_partial(f, px, py, fd, rect))) for px, py in rect.corners()
    )


def _lhs_block_with_estimate(fv, order, rect, spec):
    corner_avg = sum(_corner_values(fv, rect)) / 4.0
    mft, e1 = middle_fractional_term_with_estimate(fv, order, rect, spec)
    a_val, e2 = a_term_with_estimate(fv, order, rect, spec)
    return corner_avg + mft - a_val, a_val, e1 + e2


def theorem5_bound(
    f,
    h: HWeight,
    order: FracOrder,
    rect: Rectangle,
    fd: FDSpec = _DEFAULT_FD,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> BoundReport:
    """Trapezoid-type bound for |d^2 f/dxdy| coordinate h-convex (asserted).

    The bound kernel factorizes per axis into K1 moments; the corner
    orientations pair h(t)/h(1-t) with the a/b side and h(k)/h(1-k) with the
    c/d side.
    """
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    lhs, a_val, e_lhs = _lhs_block_with_estimate(fv, order, rect, spec)
    k1a, e_k1a = h_moment_k1(h, order.alpha)
    k1am, e_k1am = h_moment_k1(h, order.alpha, mirror=True)
    k1b, e_k1b = h_moment_k1(h, order.beta)
    k1bm, e_k1bm = h_moment_k1(h, order.beta, mirror=True)
    d_ac, d_ad, d_bc, d_bd = _corner_derivatives(fv, rect, fd)
    scale = rect.x.width * rect.y.width / 4.0
    rhs = scale * (d_ac * k1a * k1b + d_bc * k1am * k1b
                   + d_ad * k1a * k1bm + d_bd * k1am * k1bm)
    e_rhs = scale * (
        d_ac * (e_k1a * k1b + k1a * e_k1b)
        + d_bc * (e_k1am * k1b + k1am * e_k1b)
        + d_ad * (e_k1a * k1bm + k1a * e_k1bm)
        + d_bd * (e_k1am * k1bm + k1am * e_k1bm)
    )
    qerr = e_lhs + e_rhs
    tol = max(abs_tol, 10.0 * qerr)
    slack = rhs - abs(lhs)
    notes = (KINK_NOTE,) if fv.kinked else ()
    return BoundReport(
        lhs_abs=abs(lhs), rhs=rhs, slack=slack, passed=(slack >= -tol),
        a_term=a_val, quadrature_error=qerr, tol=tol, notes=notes,
    )


def theorem6_bound(
    f,
    h: HWeight,
    order: FracOrder,
    rect: Rectangle,
    pq: HolderExponents,
    fd: FDSpec = _DEFAULT_FD,
    spec: QuadratureSpec = _DEFAULT_SPEC,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> BoundReport:
    """Hölder-type bound for |d^2 f/dxdy|^q coordinate h-convex (asserted).

    rhs = (b-a)(d-c) / ((alpha p + 1)(beta p + 1))^(1/p)
          * (sum over corners |D|^q * U-moment product)^(1/q).
    """
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    lhs, a_val, e_lhs = _lhs_block_with_estimate(fv, order, rect, spec)
    u, e_u = h_moment_unit(h)
    um, e_um = h_moment_unit(h, mirror=True)
    d_ac, d_ad, d_bc, d_bd = _corner_derivatives(fv, rect, fd)
    p, q = pq.p, pq.q
    prefactor = (rect.x.width * rect.y.width
                 / ((order.alpha * p + 1.0) * (order.beta * p + 1.0)) ** (1.0 / p))
    s_sum = (d_ac**q * u * u + d_ad**q * u * um
             + d_bc**q * um * u + d_bd**q * um * um)
    e_sum = ((d_ac**q + d_ad**q + d_bc**q + d_bd**q)
             * (e_u * max(u, um) + max(u, um) * e_um + e_u * e_um))
    rhs = prefactor * s_sum ** (1.0 / q)
    e_rhs = 0.0
    if s_sum > 0.0:
        e_rhs = prefactor * (1.0 / q) * s_sum ** (1.0 / q - 1.0) * e_sum
    qerr = e_lhs + e_rhs
    tol = max(abs_tol, 10.0 * qerr)
    slack = rhs - abs(lhs)
    notes = (KINK_NOTE,) if fv.kinked else ()
    return BoundReport(
        lhs_abs=abs(lhs), rhs=rhs, slack=slack, passed=(slack >= -tol),
        a_term=a_val, quadrature_error=qerr, tol=tol, notes=notes,
    )


# ---------------------------------------------------------------------------
# the two-sided identity
# ---------------------------------------------------------------------------

def _folded_derivative_integral(
    fv: BivariateFunction, order: FracOrder, rect: Rectangle,
    fd: FDSpec, spec: QuadratureSpec,
) -> tuple[float, float]:
    """((b-a)(d-c)/4) * int int (t^a - (1-t)^a)(k^b - (1-k)^b) D(x(t), y(k)).

    The antisymmetric kernel folds exactly onto the single-endpoint weights
    t^alpha k^beta:

        int_0^1 (t^a - (1-t)^a) g(t) dt = int_0^1 t^a (g(t) - g(1-t)) dt,

    applied per axis, after which the power-weighted rule with orders
    alpha + 1 and beta + 1 integrates it spectrally for smooth D.
    """
    a, b, c, d = rect.a, rect.b, rect.c, rect.d

    def dsamp(xs, ys):
        return np.asarray(
            mixed_partial(fv, xs[:, None], ys[None, :], fd, rect), dtype=float
        )

    results = []
    for n in (spec.nodes_per_axis, 2 * spec.nodes_per_axis):
        ut, wt = power_weighted_rule(order.alpha + 1.0, n, spec.scheme.rule_name)
        uk, wk = power_weighted_rule(order.beta + 1.0, n, spec.scheme.rule_name)
        xt = ut * a + (1.0 - ut) * b
        xmt = (1.0 - ut) * a + ut * b
        yk = uk * c + (1.0 - uk) * d
        ymk = (1.0 - uk) * c + uk * d
        g = dsamp(xt, yk) - dsamp(xmt, yk) - dsamp(xt, ymk) + dsamp(xmt, ymk)
        results.append(0.25 * rect.x.width * rect.y.width * float(wt @ g @ wk))
    est = check_two_level(results[0], results[1], spec.target_rel_tol,
                          "derivative-kernel integral")
    return results[1], est


def lemma1_residual(
    f,
    order: FracOrder,
    rect: Rectangle,
    fd: FDSpec = _DEFAULT_FD,
    spec: QuadratureSpec = _DEFAULT_SPEC,
) -> LemmaReport:
    """Verify the two-sided identity behind the derivative bounds.

    lhs = corner average + middle_fractional_term - A; rhs is the double
    integral of the product kernel (t^alpha - (1-t)^alpha)(k^beta - (1-k)^beta)
    against the mixed partial along the affine parametrization of the
    rectangle.  The report passes when |lhs - rhs| <= 10 * quadrature_error.
    """
    rect.require_nonneg_origin()
    fv = _as_bivariate(f)
    lhs, _, e_lhs = _lhs_block_with_estimate(fv, order, rect, spec)
    rhs, e_rhs = _folded_derivative_integral(fv, order, rect, fd, spec)
    residual = abs(lhs - rhs)
    qerr = e_lhs + e_rhs
    return LemmaReport(
        lhs=lhs, rhs=rhs, residual=residual, quadrature_error=qerr,
        passed=(residual <= 10.0 * qerr),
    )
