"""Tension spaces: two-point scalar potentials with an additivity law.

A tension function theta assigns a real "gap" theta(p, q) to every
ordered pair of points of an arbitrary set M and is additive along
chains:

    theta(p1, p2) + theta(p2, p3) = theta(p1, p3)

which forces skew symmetry and theta(p, p) = 0.  The induced ordering,
metric and potential functions generalize "difference of coordinates"
to sets without arithmetic, and supply the denominators of the
divided-difference operators built on top.

M is generally infinite, so every law is validated on a caller-supplied
finite sampler.  All objects here are immutable and all evaluators are
expected to be pure, which makes concurrent evaluation safe.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from .errors import ContractViolation, DegenerateSample
from .numeric import REL_TOL, close, is_zero

Point = Any
RealFn = Callable[[Point], float]


class Ordering(enum.Enum):
    PRECEDES = "precedes"
    EQUIVALENT = "equivalent"
    SUCCEEDS = "succeeds"


class Directedness(enum.Enum):
    """Sign behaviour of a map's step tension over a sample set."""

    RIGHTWARD = "rightward"
    LEFTWARD = "leftward"
    NOT_DIRECTED = "not-directed"


@dataclass(frozen=True)
class Bijection:
    """Invertible self-map of the point set, both directions explicit."""

    forward: Callable[[Point], Point]
    inverse: Callable[[Point], Point]

    def __call__(self, p: Point) -> Point:
        return self.forward(p)

    def iterate(self, p: Point, n: int) -> Point:
        """Apply the map n times; negative n applies the inverse."""
        step = self.forward if n >= 0 else self.inverse
        for _ in range(abs(n)):
            p = step(p)
        return p


def step_map(tau: Bijection, sigma: Bijection) -> Bijection:
    """The cell-advancing composite tau o sigma^-1 as a bijection."""
    return Bijection(
        forward=lambda p: tau.forward(sigma.inverse(p)),
        inverse=lambda p: sigma.forward(tau.inverse(p)),
    )


@dataclass(frozen=True)
class TensionSpace:
    """A point set together with a tension function and a finite sampler.

    The sampler is a tuple of representative points used whenever a law
    stated "for all points" has to be checked executably.
    """

    theta: Callable[[Point, Point], float]
    samples: Sequence[Point]

    def value(self, p: Point, q: Point) -> float:
        return self.theta(p, q)

    def order_of(self, p: Point, q: Point) -> Ordering:
        v = self.theta(p, q)
        if is_zero(v):
            return Ordering.EQUIVALENT
        return Ordering.PRECEDES if v < 0.0 else Ordering.SUCCEEDS

    def metric(self, p: Point, q: Point) -> float:
        """Magnitude of the gap; zero exactly on equivalent pairs."""
        return abs(self.theta(p, q))

    def potential(self, q: Point) -> RealFn:
        """Scalar potential anchored at q: p -> theta(p, q), zero at q."""
        return lambda p: self.theta(p, q)


@dataclass(frozen=True)
class LawReport:
    """Outcome of a sampled-law validation with per-point diagnostics."""

    ok: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


def validate_space(space: TensionSpace, max_checks: int = 5000) -> LawReport:
    """Check additivity, skew symmetry, reflexivity and nontriviality.

    Pair and triple enumeration is capped at max_checks each so large
    samplers stay cheap.
    """
    pts = list(space.samples)
    bad = []
    for p in pts:
        if not is_zero(space.theta(p, p)):
            bad.append((p, "theta(p, p) != 0"))
    nontrivial = False
    for p, q in itertools.islice(itertools.combinations(pts, 2), max_checks):
        if not close(space.theta(p, q), -space.theta(q, p)):
            bad.append(((p, q), "skew symmetry"))
        if not is_zero(space.theta(p, q)):
            nontrivial = True
    for p, q, r in itertools.islice(itertools.combinations(pts, 3), max_checks):
        lhs = space.theta(p, q) + space.theta(q, r)
        rhs = space.theta(p, r)
        if abs(lhs - rhs) > REL_TOL * (1.0 + abs(rhs)):
            bad.append(((p, q, r), "additivity along the chain"))
    if len(pts) >= 2 and not nontrivial:
        bad.append((None, "all sampled pairs are equivalent"))
    return LawReport(not bad, tuple(bad))


def check_directed(
    space: TensionSpace,
    mapping: Bijection,
    samples: Optional[Sequence[Point]] = None,
) -> Directedness:
    """Classify a map by the sign of theta(map(p), p) over the samples.

    Rightward means strictly positive at every sample, leftward strictly
    negative; anything mixed or vanishing is not directed.  The verdict
    is a sampled certificate only: a later iterate outside the sample
    set may still expose a violation.
    """
    pts = list(space.samples if samples is None else samples)
    if not pts:
        raise ValueError("directedness needs a nonempty sample set")
    signs = []
    for p in pts:
        v = space.theta(mapping(p), p)
        if is_zero(v):
            return Directedness.NOT_DIRECTED
        signs.append(v > 0.0)
    if all(signs):
        return Directedness.RIGHTWARD
    if not any(signs):
        return Directedness.LEFTWARD
    return Directedness.NOT_DIRECTED


def check_homogeneity(
    space: TensionSpace,
    mapping: Bijection,
    samples: Optional[Sequence[Point]] = None,
) -> Optional[float]:
    """Scaling coefficient t with theta(map p, map q) = t * theta(p, q).

    t is estimated from the first non-equivalent sampled pair and then
    verified on every pair; returns None when no single coefficient
    fits.  Raises DegenerateSample when every sampled pair is
    equivalent, since then no estimate exists.
    """
    pts = list(space.samples if samples is None else samples)
    pairs = list(itertools.combinations(pts, 2))
    anchor = next(
        ((p, q) for p, q in pairs if not is_zero(space.theta(p, q))), None
    )
    if anchor is None:
        raise DegenerateSample("every sampled pair has zero tension")
    t = space.theta(mapping(anchor[0]), mapping(anchor[1])) / space.theta(*anchor)
    for p, q in pairs:
        if not close(space.theta(mapping(p), mapping(q)), t * space.theta(p, q)):
            return None
    return t


def no_fixed_points(
    mapping: Bijection, certificate: Directedness, p: Point, n: int
) -> bool:
    """Assert that no iterate of a directed map up to order n returns to p.

    Directed maps cannot have periodic points, so a returning iterate
    proves the supplied map was not actually directed (the sampled
    certificate missed it) and raises ContractViolation.
    """
    if certificate is Directedness.NOT_DIRECTED:
        raise ValueError("map must be certified directed before iterating")
    if n < 1:
        raise ValueError("iteration order must be at least 1")
    current = p
    for k in range(1, n + 1):
        current = mapping(current)
        if current == p:
            raise ContractViolation(
                f"iterate {k} returned to the start point {p!r}; "
                "the map is not actually directed"
            )
    return True
