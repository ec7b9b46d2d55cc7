"""Integer cell indexing adapted to a commuting pair of bijections.

A partition scheme is an integer-valued evaluator lam on the point set
whose defining shift law

    lam(tau(sigma^-1(p))) = lam(p) + 1

slices the set into cells lam^-1(k) that the composite tau o sigma^-1
advances one by one.  The cell index bounds every finite antiderivative
sum downstream; cell 0 is the anchor where those sums vanish.

lam is kept as an evaluator, never a stored table: the underlying set
is generally infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import NotDirected, NotHomogeneous, ZeroStep
from .numeric import close, is_zero, snap_floor
from .tension import (
    Bijection,
    Directedness,
    LawReport,
    Point,
    TensionSpace,
    check_directed,
    check_homogeneity,
    step_map,
)


@dataclass(frozen=True)
class PartitionScheme:
    """Cell index evaluator plus the bijection pair it is adapted to."""

    index_fn: Callable[[Point], int]
    tau: Bijection
    sigma: Bijection

    def index(self, p: Point) -> int:
        """Cell number of p; p belongs to cell index(p) by definition."""
        return int(self.index_fn(p))

    def cell_of(self, p: Point) -> int:
        """Alias of index, reading the value as cell membership."""
        return self.index(p)

    def step(self) -> Bijection:
        return step_map(self.tau, self.sigma)


def validate(
    scheme: PartitionScheme, samples: Sequence[Point], max_iterates: int = 3
) -> LawReport:
    """Check the shift law and its consequences on every sampled point.

    Besides the defining law this also checks its tau/sigma form
    index(tau(p)) = index(sigma(p)) + 1, walks each sample back to cell
    0 (which exhibits a nonempty zero cell even when no sample sits in
    it), and rejects small-order fixed points of the step map.
    """
    pts = list(samples)
    if not pts:
        raise ValueError("validation needs a nonempty sample set")
    advance = scheme.step()
    bad = []
    for p in pts:
        k = scheme.index(p)
        if scheme.index(advance(p)) != k + 1:
            bad.append((p, "index(step(p)) != index(p) + 1"))
        if scheme.index(scheme.tau(p)) != scheme.index(scheme.sigma(p)) + 1:
            bad.append((p, "index(tau(p)) != index(sigma(p)) + 1"))
        if scheme.index(advance.iterate(p, -k)) != 0:
            bad.append((p, "walking back index(p) steps does not reach cell 0"))
        current = p
        for m in range(1, max_iterates + 1):
            current = advance(current)
            if current == p:
                bad.append((p, f"step^{m} has a fixed point"))
                break
    return LawReport(not bad, tuple(bad))


def from_tension(
    eta: TensionSpace,
    s: Point,
    tau: Bijection,
    sigma: Bijection,
    samples: Optional[Sequence[Point]] = None,
) -> PartitionScheme:
    """Build the scheme lam(p) = floor(eta(p, s) / eta(step(s), s)).

    eta must scale with coefficient 1 under both maps and the composite
    tau o sigma^-1 must be eta-directed; then the quotient above changes
    by exactly one when the composite is applied, so the shift law holds
    by construction.  Preconditions are checked on the provided sampler
    only (defaults to eta's own).
    """
    pts = tuple(eta.samples if samples is None else samples)
    for name, mapping in (("tau", tau), ("sigma", sigma)):
        t = check_homogeneity(eta, mapping, pts)
        if t is None or not close(t, 1.0):
            raise NotHomogeneous(
                f"{name} must scale the tension with coefficient 1, got {t!r}"
            )
    advance = step_map(tau, sigma)
    if check_directed(eta, advance, pts) is Directedness.NOT_DIRECTED:
        raise NotDirected("tau o sigma^-1 is not directed on the sampler")
    denominator = eta.theta(advance(s), s)
    if is_zero(denominator):
        raise ZeroStep(f"tension step at the base point {s!r} vanishes")

    def level(p: Point) -> int:
        return snap_floor(eta.theta(p, s) / denominator)

    return PartitionScheme(level, tau, sigma)
