"""Closed-form h-calculus and q-calculus operators.

The h-calculus works on the real line with the shift x -> x + h; the
q-calculus works on the positive half-line with the scaling x -> q x.
Both are specializations of the generic two-bijection calculus (the
second map is the identity, the tension is the coordinate difference),
and `bridge_h` / `bridge_q` build the matching generic contexts so the
closed forms below can be cross-checked against the generic orbit sums.

Everything is pure and immutable; all finite sums are recomputed per
evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .errors import DomainError, Divergent, NotCommensurate
from .numeric import nearest_int, snap_floor
from .partition import PartitionScheme
from .qcore import QCtx, RealFn
from .tension import Bijection, TensionSpace

JACKSON_TOL = 1e-12
JACKSON_MAX_TERMS = 10000
_JACKSON_QUIET_TERMS = 8

_H_SAMPLES = (-6.4, -3.1, -1.0, -0.2, 0.0, 0.35, 1.0, 2.6, 5.8)
_Q_SAMPLES = (0.05, 0.21, 0.5, 0.93, 1.0, 1.7, 3.3, 7.9, 22.0)


@dataclass(frozen=True)
class HConfig:
    """Step h (nonzero) and base point s of the zero cell [s, s+|h|)."""

    h: float
    s: float = 0.0

    def __post_init__(self):
        if self.h == 0.0:
            raise ValueError("step h must be nonzero")


@dataclass(frozen=True)
class QConfig:
    """Ratio q in (0,1) or (1,inf) and positive base point s.

    All q-operators act on functions over the positive half-line.
    """

    q: float
    s: float = 1.0

    def __post_init__(self):
        if not (self.q > 0.0 and self.q != 1.0):
            raise ValueError("ratio q must lie in (0, 1) or (1, inf)")
        if not self.s > 0.0:
            raise ValueError("base point s must be positive")


def identity_map() -> Bijection:
    return Bijection(lambda x: x, lambda x: x)


def shift_map(h: float) -> Bijection:
    return Bijection(lambda x: x + h, lambda x: x - h)


def scale_map(q: float) -> Bijection:
    return Bijection(lambda x: q * x, lambda x: x / q)


def difference_space(samples) -> TensionSpace:
    """Coordinate-difference tension x - y with the given sampler."""
    return TensionSpace(lambda p, q: p - q, tuple(samples))


def log_difference_space(samples) -> TensionSpace:
    """Logarithmic tension ln x - ln y on the positive half-line."""
    return TensionSpace(lambda p, q: math.log(p) - math.log(q), tuple(samples))


def _require_positive(x: float) -> None:
    if not x > 0.0:
        raise DomainError(f"q-calculus operators are defined on (0, inf); got {x!r}")


def _log_ratio(q: float, num: float, den: float) -> float:
    return math.log(num / den) / math.log(q)


# --- h-calculus ---------------------------------------------------------


def h_differential(cfg: HConfig, f: RealFn) -> RealFn:
    """x -> f(x + h) - f(x)."""
    h = cfg.h
    return lambda x: f(x + h) - f(x)


def h_derivative(cfg: HConfig, f: RealFn) -> RealFn:
    """x -> (f(x + h) - f(x)) / h."""
    h = cfg.h
    return lambda x: (f(x + h) - f(x)) / h


def h_right_inverse(cfg: HConfig, f: RealFn) -> RealFn:
    """Finite-sum antiderivative of the h-derivative, vanishing on the
    zero cell [s, s + |h|).

    With k = floor((x - s) / |h|) the value is, for h > 0,

        k <= -1:  -h * sum of f(x + m h) for m in [0, -k-1]
        k == 0:   0
        k >= 1:    h * sum of f(x - m h) for m in [1, k]

    and for h < 0 the two sum branches trade places (the lattice is
    walked toward s from the other side):

        k <= -1:   h * sum of f(x - m h) for m in [1, -k]
        k == 0:   0
        k >= 1:   -h * sum of f(x + m h) for m in [0, k-1]
    """
    h, s = cfg.h, cfg.s
    width = abs(h)

    def primitive(x: float) -> float:
        k = snap_floor((x - s) / width)
        if k == 0:
            return 0.0
        if h > 0.0:
            if k >= 1:
                return h * sum(f(x - m * h) for m in range(1, k + 1))
            return -h * sum(f(x + m * h) for m in range(-k))
        if k <= -1:
            return h * sum(f(x - m * h) for m in range(1, -k + 1))
        return -h * sum(f(x + m * h) for m in range(k))

    return primitive


def h_initial_operator(cfg: HConfig, f: RealFn) -> RealFn:
    """Project onto h-periodic functions by evaluating at the zero-cell
    representative: x -> f(x - floor((x - s)/|h|) * |h|)."""
    s, width = cfg.s, abs(cfg.h)

    def project(x: float) -> float:
        return f(x - snap_floor((x - s) / width) * width)

    return project


def h_definite_integral(cfg: HConfig, a: float, b: float, f: RealFn) -> float:
    """Lattice sum between commensurate limits.

    With n = (b - a)/h (which must be an integer) the direct value is

        n == 0:  0
        n > 0:   h * (f(a) + f(a + h) + ... + f(b - h))
        n < 0:  -h * (f(b) + f(b + h) + ... + f(a - h))

    The same number is recomputed as the initial-operator difference
    (F_b - F_a) applied to a finite-sum antiderivative, evaluated at a,
    and the two paths are asserted to agree.
    """
    h = cfg.h
    n = nearest_int((b - a) / h)
    if n is None:
        raise NotCommensurate(
            f"limits {a!r} and {b!r} do not differ by an integer multiple of {h!r}"
        )
    if n == 0:
        direct = 0.0
    elif n > 0:
        direct = h * sum(f(a + j * h) for j in range(n))
    else:
        direct = -h * sum(f(b + j * h) for j in range(-n))

    primitive = h_right_inverse(cfg, f)
    upper = h_initial_operator(replace(cfg, s=b), primitive)
    lower = h_initial_operator(replace(cfg, s=a), primitive)
    algebraic = upper(a) - lower(a)
    assert abs(algebraic - direct) <= 1e-12 * max(1.0, abs(direct)), (
        "initial-operator path and lattice sum disagree: "
        f"{algebraic!r} vs {direct!r}"
    )
    return direct


def h_scheme(
    cfg: HConfig,
    tau: Optional[Bijection] = None,
    sigma: Optional[Bijection] = None,
) -> PartitionScheme:
    """Partition whose zero cell is [s, s + |h|), matching the closed
    forms above for either sign of h."""
    tau = shift_map(cfg.h) if tau is None else tau
    sigma = identity_map() if sigma is None else sigma
    s, width = cfg.s, abs(cfg.h)
    if cfg.h > 0.0:
        level = lambda x: snap_floor((x - s) / width)
    else:
        level = lambda x: -snap_floor((x - s) / width)
    return PartitionScheme(level, tau, sigma)


def bridge_h(cfg: HConfig, samples=_H_SAMPLES) -> QCtx:
    """Generic context whose operators agree pointwise with the
    h-calculus closed forms for this configuration."""
    tau = shift_map(cfg.h)
    sigma = identity_map()
    return QCtx(
        tau=tau,
        sigma=sigma,
        theta=difference_space(samples),
        scheme=h_scheme(cfg, tau=tau, sigma=sigma),
    )


# --- q-calculus ---------------------------------------------------------


def q_differential(cfg: QConfig, f: RealFn) -> RealFn:
    """x -> f(q x) - f(x) on the positive half-line."""
    q = cfg.q

    def diff(x: float) -> float:
        _require_positive(x)
        return f(q * x) - f(x)

    return diff


def q_derivative(cfg: QConfig, f: RealFn) -> RealFn:
    """x -> (f(q x) - f(x)) / ((q - 1) x); undefined at and below 0."""
    q = cfg.q

    def deriv(x: float) -> float:
        _require_positive(x)
        return (f(q * x) - f(x)) / ((q - 1.0) * x)

    return deriv


def q_multiplier(cfg: QConfig, f: RealFn) -> RealFn:
    """Pointwise multiplication by the step gap (q - 1) x."""
    q = cfg.q
    return lambda x: (q - 1.0) * x * f(x)


def q_differential_right_inverse(cfg: QConfig, f: RealFn) -> RealFn:
    """Finite-sum antiderivative of the q-differential, vanishing on the
    zero cell anchored at s.

    For q in (0, 1), with k = floor(log_q(s / x)),

        x in (0, s)        (k <= -1):   sum of f(x q^-m) for m in [1, -k]
        x in [s, s/q)      (k == 0):    0
        x in [s/q, inf)    (k >= 1):   -sum of f(x q^m) for m in [0, k-1]

    and for q in (1, inf), with k = floor(log_q(x / s)),

        x in (0, s)        (k <= -1):  -sum of f(x q^m) for m in [0, -k-1]
        x in [s, s q)      (k == 0):    0
        x in [s q, inf)    (k >= 1):    sum of f(x q^-m) for m in [1, k]
    """
    q, s = cfg.q, cfg.s

    def primitive(x: float) -> float:
        _require_positive(x)
        if q < 1.0:
            k = snap_floor(_log_ratio(q, s, x))
            if k == 0:
                return 0.0
            if k <= -1:
                return sum(f(x * q ** (-m)) for m in range(1, -k + 1))
            return -sum(f(x * q ** m) for m in range(k))
        k = snap_floor(_log_ratio(q, x, s))
        if k == 0:
            return 0.0
        if k <= -1:
            return -sum(f(x * q ** m) for m in range(-k))
        return sum(f(x * q ** (-m)) for m in range(1, k + 1))

    return primitive


def q_derivative_right_inverse(cfg: QConfig, f: RealFn) -> RealFn:
    """Right inverse of the q-derivative: the q-differential inverse
    composed with multiplication by (q - 1) x."""
    return q_differential_right_inverse(cfg, q_multiplier(cfg, f))


def q_initial_operator(cfg: QConfig, a: float, f: RealFn) -> RealFn:
    """Project onto q-periodic functions by evaluating at the
    representative in a's own cell: x -> f(x * q^(-floor(log_q(x/a))))."""
    if not a > 0.0:
        raise DomainError(f"anchor must be positive; got {a!r}")
    q = cfg.q

    def project(x: float) -> float:
        _require_positive(x)
        return f(x * q ** (-snap_floor(_log_ratio(q, x, a))))

    return project


def q_scheme(
    cfg: QConfig,
    tau: Optional[Bijection] = None,
    sigma: Optional[Bijection] = None,
) -> PartitionScheme:
    """Partition matching the finite-sum q-antiderivatives above.

    The zero cell is [s, s/q) for q < 1 and [s, s q) for q > 1; in both
    cases it is the cell on which the right inverses vanish.
    """
    tau = scale_map(cfg.q) if tau is None else tau
    sigma = identity_map() if sigma is None else sigma
    q, s = cfg.q, cfg.s
    if q < 1.0:
        level = lambda x: -snap_floor(_log_ratio(q, s, x))
    else:
        level = lambda x: snap_floor(_log_ratio(q, x, s))
    return PartitionScheme(level, tau, sigma)


def q_initial_scheme(
    cfg: QConfig,
    a: float,
    tau: Optional[Bijection] = None,
    sigma: Optional[Bijection] = None,
) -> PartitionScheme:
    """Partition whose projection is exactly q_initial_operator(cfg, a).

    Its index is floor(log_q(x / a)) for either q range.  For q > 1 it
    coincides with q_scheme anchored at a; for q < 1 the two differ off
    the lattice (their zero cells sit on opposite sides of a).
    """
    if not a > 0.0:
        raise DomainError(f"anchor must be positive; got {a!r}")
    tau = scale_map(cfg.q) if tau is None else tau
    sigma = identity_map() if sigma is None else sigma
    q = cfg.q
    return PartitionScheme(
        lambda x: snap_floor(_log_ratio(q, x, a)), tau, sigma
    )


def bridge_q(cfg: QConfig, samples=_Q_SAMPLES) -> QCtx:
    """Generic context whose operators agree pointwise with the
    q-calculus closed forms for this configuration."""
    tau = scale_map(cfg.q)
    sigma = identity_map()
    return QCtx(
        tau=tau,
        sigma=sigma,
        theta=difference_space(samples),
        scheme=q_scheme(cfg, tau=tau, sigma=sigma),
    )


def jackson_integral(
    cfg: QConfig,
    f: RealFn,
    x: float,
    tol: float = JACKSON_TOL,
    max_terms: int = JACKSON_MAX_TERMS,
) -> float:
    """Series antiderivative (1 - q) x * sum of q^m f(x q^m), q in (0,1).

    Partial sums accumulate until the term magnitude stays below tol for
    8 consecutive terms; hitting max_terms first raises Divergent.
    Divergence only disqualifies this particular antiderivative, never
    the definite integral, which the finite-sum operators still supply.
    """
    if not 0.0 < cfg.q < 1.0:
        raise DomainError("the series antiderivative needs q in (0, 1)")
    _require_positive(x)
    if not tol > 0.0:
        raise ValueError("tolerance must be positive")
    q = cfg.q
    scale = (1.0 - q) * x
    power = 1.0
    total = 0.0
    quiet = 0
    for _ in range(max_terms):
        term = scale * power * f(x * power)
        total += term
        quiet = quiet + 1 if abs(term) < tol else 0
        if quiet >= _JACKSON_QUIET_TERMS:
            return total
        power *= q
    raise Divergent(
        f"series terms did not decay below {tol!r} within {max_terms} terms"
    )


def q_definite_integral(cfg: QConfig, a: float, b: float, f: RealFn) -> float:
    """Definite q-integral between limits on a common q-orbit.

    Computed as the initial-operator difference (G_b - G_a) applied to a
    finite-sum antiderivative, evaluated at a; the result is independent
    of the base point s used by that antiderivative.  For limits with
    b = a q^k this telescopes to the usual lattice sum, and it agrees
    with differences of the series antiderivative whenever that series
    converges.
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError("integration limits must be positive")
    if nearest_int(_log_ratio(cfg.q, b, a)) is None:
        raise NotCommensurate(
            f"limits {a!r} and {b!r} do not lie on a common q-orbit"
        )
    primitive = q_derivative_right_inverse(cfg, f)
    upper = q_initial_operator(cfg, b, primitive)
    lower = q_initial_operator(cfg, a, primitive)
    return upper(a) - lower(a)
