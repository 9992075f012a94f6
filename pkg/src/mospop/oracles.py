"""Independent numerical cross-checks used by tests and the verify command.

Everything here is deliberately dumb and generic: a cancellation-safe
quadratic solver, centered finite differences, and a brute-force periodic
point scan.  None of it knows the closed forms used by the main modules,
which is what makes the cross-checks meaningful.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "DegenerateAllZero",
    "OracleConfig",
    "fd_derivative",
    "fd_jacobian",
    "grid_period_scan",
    "quad_roots",
    "sample_invariance_pairs",
    "sample_outside_pairs",
    "sample_region",
]


class DegenerateAllZero(ValueError):
    """All three quadratic coefficients vanish; every number is a root."""


@dataclass(frozen=True)
class OracleConfig:
    """Default knobs for the oracle routines."""

    fd_step: float = 1e-6
    grid_points: int = 1000
    seed: int = 20260821

    def __post_init__(self) -> None:
        if not (math.isfinite(self.fd_step) and self.fd_step > 0):
            raise ValueError(f"fd_step must be positive and finite, got {self.fd_step}")
        if self.grid_points < 2:
            raise ValueError(f"grid_points must be at least 2, got {self.grid_points}")


def quad_roots(a: float, b: float, c: float) -> tuple[complex, ...]:
    """Roots of a*x**2 + b*x + c with a cancellation-safe evaluation.

    Returns a pair for a true quadratic (real roots as complex with zero
    imaginary part, ordered by descending real part then descending
    imaginary part), a single root for the linear fallback a = 0, and
    raises DegenerateAllZero when a = b = c = 0.
    """
    if a == 0.0:
        if b == 0.0:
            if c == 0.0:
                raise DegenerateAllZero("0 == 0 holds for every x")
            return ()
        return (complex(-c / b),)
    disc = b * b - 4.0 * a * c
    if disc >= 0.0:
        s = math.sqrt(disc)
        if b >= 0.0:
            q = -0.5 * (b + s)
        else:
            q = -0.5 * (b - s)
        # q is the larger-magnitude half; the second root via c/q avoids
        # subtracting nearly equal quantities when |4ac| << b*b.
        if q == 0.0:
            roots = [complex(0.0), complex(0.0)]
        else:
            roots = [complex(q / a), complex(c / q)]
    else:
        s = cmath.sqrt(complex(disc))
        roots = [(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)]
    roots.sort(key=lambda r: (-r.real, -r.imag))
    return tuple(roots)


def fd_jacobian(
    f: Callable[[float, float], tuple[float, float]],
    z: Sequence[float],
    h: float = 1e-6,
) -> np.ndarray:
    """Centered finite-difference Jacobian of a planar map at state z."""
    if not (math.isfinite(h) and h > 0):
        raise ValueError(f"step h must be positive and finite, got {h}")
    x, y = float(z[0]), float(z[1])
    fxp = f(x + h, y)
    fxm = f(x - h, y)
    fyp = f(x, y + h)
    fym = f(x, y - h)
    return np.array(
        [
            [(fxp[0] - fxm[0]) / (2.0 * h), (fyp[0] - fym[0]) / (2.0 * h)],
            [(fxp[1] - fxm[1]) / (2.0 * h), (fyp[1] - fym[1]) / (2.0 * h)],
        ]
    )


def fd_derivative(f: Callable[[float], float], x: float, h: float = 1e-6) -> float:
    """Centered finite-difference derivative of a scalar map at x."""
    if not (math.isfinite(h) and h > 0):
        raise ValueError(f"step h must be positive and finite, got {h}")
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _iterate(f: Callable, x, times: int):
    for _ in range(times):
        x = f(x)
    return x


def grid_period_scan(
    f: Callable[[float], float],
    domain: tuple[float, float],
    period: int,
    grid: int = 1000,
    tol: float = 1e-10,
    zero_tol: float = 1e-12,
) -> list[float]:
    """Brute-force periodic points of f on a closed interval.

    Evaluates F(x) = f^period(x) - x on a uniform grid, reports grid points
    where |F| <= zero_tol (covers whole-interval cycle families), bisects
    every sign change of F down to tol, and drops any candidate whose least
    period is a proper divisor of `period` (checked with f^d(x) ~ x).

    The map must be defined on the whole domain and anywhere iterates of
    grid points land.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    lo, hi = float(domain[0]), float(domain[1])
    if not hi > lo:
        raise ValueError("domain must satisfy hi > lo")

    xs = np.linspace(lo, hi, grid)
    try:
        fx = _iterate(f, xs.copy(), period)
        big_f = np.asarray(fx, dtype=float) - xs
    except Exception:
        # map not vectorized; fall back to a scalar sweep
        big_f = np.array([_iterate(f, float(x), period) - float(x) for x in xs])

    def scalar_big_f(x: float) -> float:
        return _iterate(f, float(x), period) - float(x)

    def least_period_divides(x: float) -> bool:
        for d in range(1, period):
            if period % d == 0:
                if abs(_iterate(f, float(x), d) - float(x)) <= max(tol, 1e-9):
                    return True
        return False

    found: list[float] = []

    def push(x: float):
        for prev in found:
            if abs(prev - x) <= max(10.0 * tol, 1e-9):
                return
        if not least_period_divides(x):
            found.append(x)

    flat = np.abs(big_f) <= zero_tol
    for i in np.nonzero(flat)[0]:
        push(float(xs[i]))

    for i in range(grid - 1):
        y0, y1 = big_f[i], big_f[i + 1]
        if flat[i] or flat[i + 1]:
            continue
        if y0 == 0.0:
            push(float(xs[i]))
            continue
        if y0 * y1 < 0.0:
            a, b = float(xs[i]), float(xs[i + 1])
            fa = scalar_big_f(a)
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = scalar_big_f(mid)
                if fm == 0.0 or (b - a) <= tol:
                    a = b = mid
                    break
                if (fa < 0) == (fm < 0):
                    a, fa = mid, fm
                else:
                    b = mid
            push(0.5 * (a + b))

    found.sort()
    return found


# ---------------------------------------------------------------------------
# Seeded constructive samplers for the named parameter sets.  Tests and the
# verify command both draw from these, so the construction is documented
# here once.  Ranges are moderate on purpose: the closed forms are exact at
# any scale, but absolute residual bounds in the checks assume O(1..1e4)
# coordinates.
# ---------------------------------------------------------------------------


def _mix_zero(rng: np.random.Generator, lo: float, hi: float, p_zero: float) -> float:
    if rng.random() < p_zero:
        return 0.0
    return float(rng.uniform(lo, hi))


def sample_region(region: str, n: int, rng: np.random.Generator):
    """Draw n parameter vectors from one named set, by construction.

    Supported names: omega, omega_star, phi1, phi2, psi, theta_star_theta1,
    phi_star, psi_star.  Every draw is classified on the way out, so a
    construction bug fails fast rather than poisoning a test.
    """
    from .params import classify, validate

    out = []
    for _ in range(n):
        if region == "omega":
            alpha = float(rng.uniform(0.05, 6.0))
            mu = float(rng.uniform(0.05, 1.5))
            d0 = _mix_zero(rng, 0.0, 1.0, 0.3)
            d1 = _mix_zero(rng, 0.0, 1.0, 0.5)
            beta = float(rng.uniform(0.05, 4.0))
            if rng.random() < 0.1:
                beta = mu  # exercise the matched-rates boundary
            p = validate(alpha, beta, mu, d0, d1)
        elif region == "omega_star":
            alpha = float(rng.uniform(0.2, 6.0))
            mu = float(rng.uniform(0.1, 1.0))
            d0 = _mix_zero(rng, 0.05, 1.0, 0.25)
            d1 = _mix_zero(rng, 0.05, 1.0, 0.5)
            thr = mu * (1.0 + d0 / alpha)
            u = rng.random()
            if u < 0.05 and d0 > 0.0:
                beta = thr  # exact threshold still classifies as omega_star
            elif u < 0.15 and d0 == 0.0 and d1 == 0.0:
                beta = float(mu * rng.uniform(1.05, 3.0))  # divergent corner
            else:
                beta = float(thr * rng.uniform(0.05, 0.999))
            p = validate(alpha, beta, mu, d0, d1)
            assert classify(p).in_omega_star
        elif region == "phi1":
            alpha = float(rng.uniform(0.2, 6.0))
            mu = float(rng.uniform(0.1, 1.0))
            d0 = float(rng.uniform(0.1, 1.0))
            thr = mu * (1.0 + d0 / alpha)
            beta = float(thr * (1.0 + rng.uniform(1e-3, 1.0)))
            p = validate(alpha, beta, mu, d0, 0.0)
            assert classify(p).in_phi1
        elif region == "phi2":
            alpha = float(rng.uniform(0.2, 6.0))
            mu = float(rng.uniform(0.1, 1.0))
            d0 = _mix_zero(rng, 0.05, 1.0, 0.3)
            d1 = float(rng.uniform(0.05, 1.0))
            thr = mu * (1.0 + d0 / alpha)
            beta = float(thr * (1.0 + rng.uniform(1e-3, 1.0)))
            p = validate(alpha, beta, mu, d0, d1)
            assert classify(p).in_phi2
        elif region == "psi":
            alpha = float(rng.uniform(0.05, 6.0))
            mu = float(rng.uniform(0.1, 1.5))
            p = validate(alpha, mu, mu, 0.0, 0.0)
            assert classify(p).in_psi
        elif region == "theta_star_theta1":
            d0 = _mix_zero(rng, 0.05, 0.9, 0.3)
            alpha = float(rng.uniform(0.05, 1.0) * (1.0 - d0))
            mu = float(rng.uniform(0.05, 1.0))
            thr = mu * (1.0 + d0 / alpha)
            beta = float(thr * rng.uniform(0.05, 1.0 - 1e-6))
            p = validate(alpha, beta, mu, d0, 0.0)
            lab = classify(p)
            assert lab.in_theta_star and lab.in_theta1
        elif region == "phi_star":
            d0 = float(rng.uniform(0.05, 0.95))
            alpha = float(rng.uniform(0.05, 1.0) * (1.0 - d0))
            mu = float(rng.uniform(0.05, 1.0))
            thr = mu * (1.0 + d0 / alpha)
            beta = float(thr + 1e-6 * max(1.0, thr) + rng.uniform(0.0, 3.0))
            p = validate(alpha, beta, mu, d0, 0.0)
            assert classify(p).in_phi_star
        elif region == "psi_star":
            alpha = float(rng.uniform(0.05, 1.0 - 1e-6))
            mu = float(rng.uniform(0.05, 1.0))
            p = validate(alpha, mu, mu, 0.0, 0.0)
            assert classify(p).in_psi_star
        else:
            raise ValueError(f"unknown region name {region!r}")
        out.append(p)
    return out


def sample_invariance_pairs(n: int, rng: np.random.Generator) -> list[tuple[float, float]]:
    """Draw (alpha, beta) pairs inside the simplex invariance region."""
    out = []
    for _ in range(n):
        beta = float(rng.uniform(1e-3, 1.0))
        if beta < 0.5:
            bound = 1.0 + 2.0 * math.sqrt(beta * (1.0 - beta))
        else:
            bound = 2.0
        alpha = float(bound * rng.uniform(1e-3, 1.0))
        out.append((alpha, beta))
    return out


def sample_outside_pairs(n: int, rng: np.random.Generator) -> list[tuple[float, float]]:
    """Draw (alpha, beta) with alpha <= 2, beta <= 1 outside the region.

    Such points exist only for beta < 1/2, between the invariance bound
    and 2.
    """
    out = []
    for _ in range(n):
        beta = float(rng.uniform(0.01, 0.45))
        bound = 1.0 + 2.0 * math.sqrt(beta * (1.0 - beta))
        alpha = float(bound + (2.0 - bound) * rng.uniform(1e-6, 1.0))
        out.append((alpha, beta))
    return out
