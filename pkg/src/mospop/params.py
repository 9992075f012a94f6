"""Parameter domain and region classification for the two-stage population map.

The model tracks larvae (x) and adults (y) with five rates:

    alpha  maximal emergence rate of larvae into adults,  alpha > 0
    beta   per-adult oviposition rate,                    beta > 0
    mu     adult death rate,                              mu > 0
    d0     linear larval death coefficient,               d0 >= 0
    d1     density-dependent larval death coefficient,    d1 >= 0

The admissible domain is the set of all such vectors.  The long-run behaviour
of the map is organised by a handful of named parameter sets, all defined by
exact inequalities on the five rates.  This module owns every membership test
so the rest of the package can share one source of truth.

Boundary comparisons are exact by design.  There is no epsilon smudging in
classification; a separate sensitivity helper reports which boundaries sit
within a user-chosen eps of the given parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "DomainError",
    "Params",
    "RegionLabel",
    "SimplexClass",
    "basic_offspring_number",
    "birth_threshold",
    "boundary_report",
    "classify",
    "in_invariance_region",
    "preserves_quadrant",
    "primary_region",
    "shape_class",
    "validate",
]


class DomainError(ValueError):
    """A parameter vector lies outside the admissible domain."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid parameters: " + "; ".join(self.violations))


@dataclass(frozen=True)
class Params:
    """Validated rate vector (alpha, beta, mu, d0, d1).

    Construction raises DomainError listing every violated constraint, so an
    instance always lies in the admissible domain.
    """

    alpha: float
    beta: float
    mu: float
    d0: float
    d1: float

    def __post_init__(self):
        violations = []
        for name in ("alpha", "beta", "mu", "d0", "d1"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                violations.append(f"{name} must be a finite real, got {v!r}")
        if not violations:
            if not self.alpha > 0:
                violations.append(f"alpha must be > 0, got {self.alpha}")
            if not self.beta > 0:
                violations.append(f"beta must be > 0, got {self.beta}")
            if not self.mu > 0:
                violations.append(f"mu must be > 0, got {self.mu}")
            if self.d0 < 0:
                violations.append(f"d0 must be >= 0, got {self.d0}")
            if self.d1 < 0:
                violations.append(f"d1 must be >= 0, got {self.d1}")
        if violations:
            raise DomainError(violations)

    def astuple(self) -> tuple[float, float, float, float, float]:
        return (self.alpha, self.beta, self.mu, self.d0, self.d1)


def validate(alpha: float, beta: float, mu: float, d0: float, d1: float) -> Params:
    """Build a Params vector, raising DomainError on any violated constraint."""
    return Params(float(alpha), float(beta), float(mu), float(d0), float(d1))


def birth_threshold(p: Params) -> float:
    """Critical oviposition rate mu*(1 + d0/alpha).

    Above this value the reproduction number exceeds one and a positive
    equilibrium can exist; below it the extinct state is the only candidate.
    """
    return p.mu * (1.0 + p.d0 / p.alpha)


def basic_offspring_number(p: Params) -> float:
    """Expected offspring per adult over its lifetime.

    r0 = alpha*beta / ((alpha + d0)*mu).  r0 > 1 is equivalent to
    beta > mu*(1 + d0/alpha); the equivalence is exercised in tests.
    """
    return p.alpha * p.beta / ((p.alpha + p.d0) * p.mu)


class SimplexClass(Enum):
    """Named subsets of the (alpha, beta) square used by the simplex case.

    A and B are the two pieces of the invariance region for the restriction
    of the map to the unit simplex (matched rates beta = mu, d0 = d1 = 0).
    C, D, E_STAR and F_STAR partition A union B by the monotonicity shape of
    the one-dimensional restriction: increasing, decreasing, or an interior
    minimum (the two starred classes).
    """

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E_STAR = "E*"
    F_STAR = "F*"
    NONE = "none"


def in_invariance_region(alpha: float, beta: float) -> SimplexClass:
    """Membership of (alpha, beta) in the simplex invariance region.

    Returns SimplexClass.A, SimplexClass.B, or SimplexClass.NONE.
    A: beta in (0, 1/2), alpha in (0, 1 + 2*sqrt(beta*(1-beta))].
    B: beta in [1/2, 1], alpha in (0, 2].
    """
    if not (alpha > 0 and 0 < beta <= 1):
        return SimplexClass.NONE
    if beta < 0.5:
        if alpha <= 1.0 + 2.0 * math.sqrt(beta * (1.0 - beta)):
            return SimplexClass.A
        return SimplexClass.NONE
    if alpha <= 2.0:
        return SimplexClass.B
    return SimplexClass.NONE


def shape_class(alpha: float, beta: float) -> SimplexClass:
    """Monotonicity class of the simplex restriction at (alpha, beta).

    Defined only inside the invariance region; NONE otherwise.  First match
    wins on shared interval endpoints, so the partition is deterministic:

      C:  alpha <= 1 - beta                      (restriction increasing)
      D:  beta >= 1/2 and alpha >= 4*(1 - beta)  (restriction decreasing)
      E*: alpha <= 2*(1 - beta)                  (interior minimum, shallow)
      F*: the rest                               (interior minimum, steep)
    """
    if in_invariance_region(alpha, beta) is SimplexClass.NONE:
        return SimplexClass.NONE
    if alpha <= 1.0 - beta:
        return SimplexClass.C
    if beta >= 0.5 and alpha >= 4.0 * (1.0 - beta):
        return SimplexClass.D
    if alpha <= 2.0 * (1.0 - beta):
        return SimplexClass.E_STAR
    return SimplexClass.F_STAR


@dataclass(frozen=True)
class RegionLabel:
    """Membership flags for every named parameter set.

    The four primary sets partition the admissible domain:

      omega_star  only the extinct state (0, 0) is fixed
      phi1        d0 != 0, d1 = 0, beta above threshold: two fixed points
      phi2        d1 != 0, beta above threshold: two fixed points
      psi         d0 = d1 = 0 and beta = mu: a continuum of fixed points

    The theta family refines the picture where the map keeps the closed
    positive quadrant invariant (d1 = 0, alpha <= 1 - d0, mu <= 1, d0 < 1):

      theta1      quadrant-compatible, beta strictly below threshold
      theta2      quadrant-compatible, beta strictly above threshold
      theta_star  omega_star and theta
      phi_star    phi1 and theta
      psi_star    psi and theta

    beta exactly at threshold belongs to neither theta1 nor theta2.
    """

    in_omega_star: bool
    in_phi1: bool
    in_phi2: bool
    in_psi: bool
    in_theta: bool
    in_theta1: bool
    in_theta2: bool
    in_theta_star: bool
    in_phi_star: bool
    in_psi_star: bool
    simplex_class: SimplexClass


def preserves_quadrant(p: Params) -> bool:
    """True when the map sends the closed positive quadrant into itself.

    Requires d1 = 0, alpha <= 1 - d0, 0 < mu <= 1 and 0 <= d0 < 1.
    """
    return (
        p.d1 == 0.0
        and p.alpha <= 1.0 - p.d0
        and p.mu <= 1.0
        and p.d0 < 1.0
    )


def classify(p: Params) -> RegionLabel:
    """Classify p into every named parameter set using exact comparisons."""
    thr = birth_threshold(p)
    above = p.beta > thr
    below = p.beta < thr

    in_phi1 = p.d0 != 0.0 and p.d1 == 0.0 and above
    in_phi2 = p.d1 != 0.0 and above
    in_psi = p.d0 == 0.0 and p.d1 == 0.0 and p.beta == p.mu
    in_omega_star = not (in_phi1 or in_phi2 or in_psi)

    in_theta = preserves_quadrant(p)
    small_trace = p.mu + p.d0 + p.alpha <= 2.0
    in_theta1 = p.d1 == 0.0 and small_trace and below
    in_theta2 = p.d1 == 0.0 and small_trace and above

    return RegionLabel(
        in_omega_star=in_omega_star,
        in_phi1=in_phi1,
        in_phi2=in_phi2,
        in_psi=in_psi,
        in_theta=in_theta,
        in_theta1=in_theta1,
        in_theta2=in_theta2,
        in_theta_star=in_omega_star and in_theta,
        in_phi_star=in_phi1 and in_theta,
        in_psi_star=in_psi and in_theta,
        simplex_class=shape_class(p.alpha, p.beta),
    )


def primary_region(p: Params) -> str:
    """Name of the unique primary set containing p."""
    label = classify(p)
    if label.in_phi1:
        return "phi1"
    if label.in_phi2:
        return "phi2"
    if label.in_psi:
        return "psi"
    return "omega_star"


def boundary_report(p: Params, eps: float) -> list[str]:
    """List the classification boundaries lying within eps of p.

    Purely informational: classification itself never uses eps.  Each entry
    names a defining comparison whose two sides differ by at most eps.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    thr = birth_threshold(p)
    checks = [
        ("beta vs threshold mu*(1+d0/alpha)", abs(p.beta - thr)),
        ("beta vs mu", abs(p.beta - p.mu)),
        ("d0 vs 0", abs(p.d0)),
        ("d1 vs 0", abs(p.d1)),
        ("alpha vs 1-d0 (quadrant preservation)", abs(p.alpha - (1.0 - p.d0))),
        ("mu vs 1 (quadrant preservation)", abs(p.mu - 1.0)),
        ("d0 vs 1 (quadrant preservation)", abs(p.d0 - 1.0)),
        ("mu+d0+alpha vs 2", abs(p.mu + p.d0 + p.alpha - 2.0)),
    ]
    if 0 < p.beta <= 1:
        if p.beta < 0.5:
            bound = 1.0 + 2.0 * math.sqrt(p.beta * (1.0 - p.beta))
            checks.append(("alpha vs simplex bound 1+2*sqrt(beta*(1-beta))",
                           abs(p.alpha - bound)))
        else:
            checks.append(("alpha vs simplex bound 2", abs(p.alpha - 2.0)))
        checks.append(("beta vs 1/2 (simplex bound switch)", abs(p.beta - 0.5)))
    return [name for name, gap in checks if gap <= eps]
