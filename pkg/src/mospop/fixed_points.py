"""Closed-form fixed points of the two-stage map.

A fixed point (x, y) forces y = gamma(x) = alpha*x/(mu*(1 + x)) from the
adult equation; substituting into the larval equation leaves

    d1*x**2 + (d0 + d1)*x + d0 + alpha*(1 - beta/mu) = 0

for x != 0, while x = 0 is always a root.  The extinct state (0, 0) is
therefore a fixed point for every admissible parameter vector, and the
classification of the quadratic decides what else exists:

  omega_star  no further nonnegative root: (0, 0) alone
  phi1        d1 = 0 branch, root x2 = alpha*(beta - mu)/(mu*d0) - 1 > 0
  phi2        d1 != 0 branch, positive root of the quadratic
  psi         the equation collapses to 0 = 0: every (x, gamma(x)), x >= 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .dynamics import State, step
from .params import Params, classify

__all__ = [
    "DEFAULT_CONTINUUM_GRID",
    "FixedPointKind",
    "FixedPointReport",
    "FixedPointSet",
    "FormulaTag",
    "discriminant",
    "find_fixed_points",
    "gamma",
]

DEFAULT_CONTINUUM_GRID = (0.0, 0.5, 1.0, 2.0, 10.0)


def gamma(p: Params, x: float):
    """Adult density forced by larval density x at a fixed point.

    gamma(x) = alpha*x/(mu*(1 + x)).  Increasing in x, bounded above by
    alpha/mu.  Accepts scalars or numpy arrays.
    """
    if np.any(np.asarray(x) <= -1.0):
        raise ValueError("gamma is defined for x > -1 only")
    return p.alpha * x / (p.mu * (1.0 + x))


def discriminant(p: Params) -> float:
    """Discriminant of the nonzero-root quadratic, in the grouped form

    (d0 - d1)**2 + 4*alpha*d1*(beta - mu)/mu.
    """
    return (p.d0 - p.d1) ** 2 + 4.0 * p.alpha * p.d1 * (p.beta - p.mu) / p.mu


class FixedPointKind(Enum):
    SINGLE_ORIGIN = "single_origin"
    TWO_POINTS = "two_points"
    CONTINUUM = "continuum"


class FormulaTag(Enum):
    """Which closed form produced a reported point."""

    ORIGIN = "origin"
    PHI1_CLOSED_FORM = "phi1_closed_form"    # d1 = 0 branch
    PHI2_CLOSED_FORM = "phi2_closed_form"    # d1 != 0 branch
    CONTINUUM_SAMPLE = "continuum_sample"


@dataclass(frozen=True)
class FixedPointReport:
    """One fixed point with its provenance and its one-step residual."""

    location: State
    formula: FormulaTag
    residual: float
    discriminant: Optional[float] = None


@dataclass(frozen=True)
class FixedPointSet:
    """All fixed points of the map for one parameter vector.

    For the continuum kind, points holds samples along the curve
    x -> (x, gamma(x)) on sample_grid and curve is the parameterization
    itself; otherwise curve is None and points is the full list.
    quad_discriminant is reported whenever d1 != 0, even when the
    quadratic contributes no nonnegative root.
    """

    kind: FixedPointKind
    points: tuple[FixedPointReport, ...]
    curve: Optional[Callable[[float], float]] = None
    sample_grid: Optional[tuple[float, ...]] = None
    quad_discriminant: Optional[float] = None


def _residual(p: Params, x: float, y: float) -> float:
    nx, ny = step(p, (x, y))
    return max(abs(nx - x), abs(ny - y))


def _report(p: Params, x: float, y: float, tag: FormulaTag) -> FixedPointReport:
    return FixedPointReport(
        location=State(x, y),
        formula=tag,
        residual=_residual(p, x, y),
    )


def _positive_quadratic_root(p: Params) -> float:
    """Positive root of d1*x**2 + (d0+d1)*x + c with c < 0.

    Uses x2 = -2c/(b + sqrt(disc)) with b = d0 + d1 >= 0, which avoids the
    cancellation in (sqrt(disc) - b)/(2*d1) when 4*d1*|c| << b*b.
    """
    c = p.d0 + p.alpha * (1.0 - p.beta / p.mu)
    b = p.d0 + p.d1
    disc = b * b - 4.0 * p.d1 * c
    return -2.0 * c / (b + math.sqrt(disc))


def find_fixed_points(
    p: Params,
    sample_grid: tuple[float, ...] = DEFAULT_CONTINUUM_GRID,
) -> FixedPointSet:
    """Enumerate the fixed points of the map at p.

    The returned points always include the extinct state first.  Closed
    forms are used throughout; every report carries the max-norm residual
    of one map step at the point.
    """
    label = classify(p)
    origin = _report(p, 0.0, 0.0, FormulaTag.ORIGIN)
    quad_disc = discriminant(p) if p.d1 != 0.0 else None

    if label.in_psi:
        for x in sample_grid:
            if x < 0:
                raise ValueError("continuum sample grid must be nonnegative")
        pts = tuple(
            _report(p, float(x), float(gamma(p, float(x))), FormulaTag.CONTINUUM_SAMPLE)
            for x in sample_grid
        )
        return FixedPointSet(
            kind=FixedPointKind.CONTINUUM,
            points=pts,
            curve=lambda x: gamma(p, x),
            sample_grid=tuple(float(x) for x in sample_grid),
        )

    if label.in_phi1:
        x2 = p.alpha * (p.beta - p.mu) / (p.mu * p.d0) - 1.0
        pt = _report(p, x2, float(gamma(p, x2)), FormulaTag.PHI1_CLOSED_FORM)
        return FixedPointSet(
            kind=FixedPointKind.TWO_POINTS,
            points=(origin, pt),
        )

    if label.in_phi2:
        x2 = _positive_quadratic_root(p)
        pt = replace(
            _report(p, x2, float(gamma(p, x2)), FormulaTag.PHI2_CLOSED_FORM),
            discriminant=quad_disc,
        )
        return FixedPointSet(
            kind=FixedPointKind.TWO_POINTS,
            points=(origin, pt),
            quad_discriminant=quad_disc,
        )

    # omega_star: the quadratic has no root in the open positive axis, which
    # covers a negative discriminant as well as negative or zero roots.
    return FixedPointSet(
        kind=FixedPointKind.SINGLE_ORIGIN,
        points=(origin,),
        quad_discriminant=quad_disc,
    )
