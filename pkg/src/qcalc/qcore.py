"""Generic divided-difference calculus driven by two commuting bijections.

Given commuting bijections tau and sigma on a tension space, the
differential of a function f is

    d f(p) = f(tau(p)) - f(sigma(p))

and the derivative divides it by the step tension theta(tau(p), sigma(p)).
Both are right invertible: a partition scheme turns the inversion into
finite orbit sums anchored at cell 0, and the associated initial
operator projects onto the kernel of the derivative (the functions
invariant under tau o sigma^-1).  Definite integrals are differences of
two initial operators applied to any right inverse; the choice of right
inverse drops out.

Every operator returns a lazily evaluated function and recomputes its
finite sum per evaluation; there is no caching and no shared mutable
state, so results may be evaluated concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import NotRightInverse, ZeroDenominator
from .numeric import ABS_FLOOR, close, is_zero
from .partition import PartitionScheme
from .tension import (
    Bijection,
    Directedness,
    Point,
    RealFn,
    TensionSpace,
    check_directed,
    step_map,
)

LinearMap = Callable[[RealFn], RealFn]


@dataclass(frozen=True)
class QCtx:
    """Bundle of maps, tension and partition every operator derives from.

    Construction validates, on the tension sampler, that tau and sigma
    commute, that the step tension theta(tau(p), sigma(p)) never
    vanishes, and that the scheme was built for exactly these maps.
    The sign of the step tension is recorded in `direction` rather than
    normalised; both orientations behave identically.
    """

    tau: Bijection
    sigma: Bijection
    theta: TensionSpace
    scheme: PartitionScheme
    direction: Directedness = field(init=False)

    def __post_init__(self):
        pts = tuple(self.theta.samples)
        if not pts:
            raise ValueError("context needs a nonempty tension sampler")
        for p in pts:
            a = self.tau(self.sigma(p))
            b = self.sigma(self.tau(p))
            if not (a == b or is_zero(self.theta.value(a, b))):
                raise ValueError(f"tau and sigma do not commute at {p!r}")
            if is_zero(self.theta.value(self.tau(p), self.sigma(p))):
                raise ValueError(
                    f"step tension vanishes at sampled point {p!r}"
                )
        if self.scheme.tau is not self.tau or self.scheme.sigma is not self.sigma:
            raise ValueError("partition scheme was built for different maps")
        object.__setattr__(
            self,
            "direction",
            check_directed(self.theta, step_map(self.tau, self.sigma), pts),
        )

    def step(self) -> Bijection:
        return step_map(self.tau, self.sigma)


def step_tension(ctx: QCtx, p: Point) -> float:
    """Divided-difference denominator theta(tau(p), sigma(p)) at p."""
    return ctx.theta.value(ctx.tau(p), ctx.sigma(p))


def differential(ctx: QCtx, f: RealFn) -> RealFn:
    """Two-point difference p -> f(tau(p)) - f(sigma(p))."""
    tau, sigma = ctx.tau, ctx.sigma
    return lambda p: f(tau(p)) - f(sigma(p))


def derivative(ctx: QCtx, f: RealFn) -> RealFn:
    """Divided difference p -> (f(tau(p)) - f(sigma(p))) / step tension."""
    tau, sigma = ctx.tau, ctx.sigma

    def deriv(p: Point) -> float:
        den = step_tension(ctx, p)
        if abs(den) <= ABS_FLOOR:
            raise ZeroDenominator(f"step tension vanishes at {p!r}")
        return (f(tau(p)) - f(sigma(p))) / den

    return deriv


def multiplier(ctx: QCtx, f: RealFn) -> RealFn:
    """Pointwise multiplication by the step tension.

    Invertible wherever the step tension is nonzero; composing its
    inverse with the differential recovers the derivative.
    """
    return lambda p: step_tension(ctx, p) * f(p)


def differential_map(ctx: QCtx) -> LinearMap:
    return lambda f: differential(ctx, f)


def derivative_map(ctx: QCtx) -> LinearMap:
    return lambda f: derivative(ctx, f)


def differential_right_inverse(ctx: QCtx, f: RealFn) -> RealFn:
    """Finite orbit sums inverting the differential.

    With k the cell index of p, the primitive is

        k <= -1:  - sum over m in [0, -k-1] of f(tau^m sigma^(-m-1) p)
        k == 0:   0
        k >= 1:   sum over m in [1, k] of f(tau^(-m) sigma^(m-1) p)

    Applying the differential telescopes the sums back to f(p).  The
    sums are finite by construction, with |k| terms.
    """
    tau, sigma, scheme = ctx.tau, ctx.sigma, ctx.scheme

    def primitive(p: Point) -> float:
        k = scheme.index(p)
        if k == 0:
            return 0.0
        if k >= 1:
            y = tau.inverse(p)
            total = f(y)
            for _ in range(k - 1):
                y = tau.inverse(sigma(y))
                total += f(y)
            return total
        y = sigma.inverse(p)
        total = f(y)
        for _ in range(-k - 1):
            y = tau(sigma.inverse(y))
            total += f(y)
        return -total

    return primitive


def derivative_right_inverse(ctx: QCtx, f: RealFn) -> RealFn:
    """Right inverse of the derivative: the differential one composed
    with multiplication by the step tension."""
    return differential_right_inverse(ctx, multiplier(ctx, f))


def right_inverse_map(ctx: QCtx) -> LinearMap:
    return lambda f: derivative_right_inverse(ctx, f)


def initial_operator(
    ctx: QCtx, f: RealFn, scheme: Optional[PartitionScheme] = None
) -> RealFn:
    """Project f onto the derivative's kernel by pulling every point
    back to its cell-0 representative:

        F f(p) = f((tau o sigma^-1)^(-index(p)) (p))

    Idempotent; equals the identity minus (right inverse o derivative)
    for the matching scheme.  An explicit scheme selects a different
    anchor cell and hence a different projection.
    """
    indexer = ctx.scheme if scheme is None else scheme
    advance = ctx.step()
    return lambda p: f(advance.iterate(p, -indexer.index(p)))


def leibniz_residual(ctx: QCtx, f: RealFn, g: RealFn, p: Point) -> float:
    """Defect of the product rule for the built-in differential:

        d(fg)(p) - d(f)(p) g(tau p) - f(sigma p) d(g)(p)

    Zero (to tolerance) for all inputs.
    """
    d = differential_map(ctx)
    product: RealFn = lambda x: f(x) * g(x)
    return d(product)(p) - (
        d(f)(p) * g(ctx.tau(p)) + f(ctx.sigma(p)) * d(g)(p)
    )


def ab_rule_residual(
    ctx: QCtx, delta: LinearMap, f: RealFn, g: RealFn, p: Point, a: float
) -> float:
    """Defect of the weighted product-rule combination with weights
    a and b = 1 - a.  Because the function algebra is commutative every
    operator satisfying the plain product rule satisfies each of these
    combinations as well.
    """
    b = 1.0 - a
    product: RealFn = lambda x: f(x) * g(x)
    return delta(product)(p) - (
        (a * f(ctx.sigma(p)) + b * f(ctx.tau(p))) * delta(g)(p)
        + delta(f)(p) * (b * g(ctx.sigma(p)) + a * g(ctx.tau(p)))
    )


def symmetric_rule_residual(
    ctx: QCtx, delta: LinearMap, f: RealFn, g: RealFn, p: Point
) -> float:
    """Defect of the symmetric product rule built on the two-point
    average H(f)(p) = (f(sigma p) + f(tau p)) / 2."""

    def average(fn: RealFn) -> float:
        return (fn(ctx.sigma(p)) + fn(ctx.tau(p))) / 2.0

    product: RealFn = lambda x: f(x) * g(x)
    return delta(product)(p) - (
        average(f) * delta(g)(p) + delta(f)(p) * average(g)
    )


def order1_residual(
    ctx: QCtx, delta: LinearMap, f1: RealFn, f2: RealFn, p: Point
) -> float:
    """Defect of the order-1 difference-like law

        delta(f1 f2)(p) - f2(tau p) delta(f1)(p) - f1(sigma p) delta(f2)(p)
            + f1(sigma p) f2(tau p) delta(1)(p)

    Zero for any order-1 difference-like operator, including ones that
    do not kill constants (a pure shift, for example).
    """
    product: RealFn = lambda x: f1(x) * f2(x)
    one: RealFn = lambda x: 1.0
    return (
        delta(product)(p)
        - f2(ctx.tau(p)) * delta(f1)(p)
        - f1(ctx.sigma(p)) * delta(f2)(p)
        + f1(ctx.sigma(p)) * f2(ctx.tau(p)) * delta(one)(p)
    )


def probe_functions(ctx: QCtx) -> tuple:
    """A few independent functions built from tension potentials.

    These exist on any point set (no coordinates needed) and are what
    the sampled operator checks evaluate.
    """
    pts = tuple(ctx.theta.samples)
    t0 = ctx.theta.potential(pts[0])
    t1 = ctx.theta.potential(pts[-1])
    return (
        lambda p: 1.0,
        t0,
        lambda p: t0(p) ** 2,
        lambda p: math.sin(t0(p)),
        lambda p: t0(p) * t1(p),
    )


def _assert_right_inverse(ctx: QCtx, candidate: LinearMap) -> None:
    for f in probe_functions(ctx):
        restored = derivative(ctx, candidate(f))
        for p in ctx.theta.samples:
            if not close(restored(p), f(p)):
                raise NotRightInverse(
                    "derivative o candidate is not the identity "
                    f"(failed at {p!r})"
                )


def generate_right_inverse(
    ctx: QCtx, base: LinearMap, perturbation: LinearMap
) -> LinearMap:
    """New right inverse base + (I - base o derivative) o perturbation.

    Every right inverse of the derivative arises this way from a single
    one as the perturbation ranges over linear maps.  The base is
    verified on sampled probe functions first.
    """
    _assert_right_inverse(ctx, base)

    def build(f: RealFn) -> RealFn:
        perturbed = perturbation(f)
        primitive = base(f)
        correction = base(derivative(ctx, perturbed))
        return lambda p: primitive(p) + perturbed(p) - correction(p)

    return build


def definite_integral(
    ctx: QCtx,
    scheme_a: PartitionScheme,
    scheme_b: PartitionScheme,
    right_inverse: LinearMap,
    f: RealFn,
) -> RealFn:
    """Difference of the two initial operators applied to a primitive:

        I f = F_b (R f) - F_a (R f)

    The value is invariant under tau o sigma^-1 (it lands in the
    derivative's kernel) and does not depend on which right inverse R
    was supplied.  Integration limits are partition schemes: each one
    stands for the projection anchored at its own zero cell.
    """
    primitive = right_inverse(f)
    upper = initial_operator(ctx, primitive, scheme=scheme_b)
    lower = initial_operator(ctx, primitive, scheme=scheme_a)
    return lambda p: upper(p) - lower(p)


def indefinite_integral(ctx: QCtx, right_inverse: LinearMap, f: RealFn) -> RealFn:
    """Canonical primitive of f: one representative of the coset
    R f + (kernel of the derivative)."""
    return right_inverse(f)
