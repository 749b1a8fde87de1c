"""Closed-form index rate function and constrained equilibrium measures.

For a disk radius 0 < R < 1 and a target fraction p of particles with
modulus strictly greater than R, the rate function is, with q = 1 - p,

    psi_R(p) =  R^4/4 - q R^2 + q^2 (3/4 - (ln q)/2 + ln R),   p > 1 - R^2,
    psi_R(p) = -R^4/4 + q R^2 - q^2 (3/4 - (ln q)/2 + ln R),   p < 1 - R^2,

and 0 at the typical fraction p* = 1 - R^2, where the q^2 ln q term is
continued by 0 at q = 0.  psi is convex, vanishes only at p*, and its
third derivative jumps by 2/R^2 there (|delta|^3 / (6 R^2) cubic core).

The minimizing measure is the circular law deformed by the constraint:
the excess charge condenses uniformly on the circle of radius R while
the planar part keeps density 1/pi, with a depleted gap between R and
sqrt(1-p) on whichever side the constraint pushes.

Restricted to the one-parameter family of candidate measures indexed by
the inner annulus radius r1, the cost is the single-variable function
j_cost below.  As written it omits the -3/4 calibration of the energy
functional, so

    (2/beta) * j_cost(sqrt(1-p)) - 3/4 = psi_R(p)      (p <= p*).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .radial import Annulus, CircleAtom, Disk, RadialMeasure

__all__ = [
    "ConstraintSpec",
    "Branch",
    "RateValue",
    "psi",
    "ld_log_prob",
    "cubic_approx",
    "equilibrium_measure",
    "j_cost",
    "j_cost_derivative",
    "minimize_j",
]

UNIFORM_DENSITY = 1.0 / math.pi


@dataclass(frozen=True)
class ConstraintSpec:
    """Disk radius R, target outside fraction p, inverse temperature beta.

    beta = 2 corresponds to the complex ensemble, beta = 1 to the real
    one; it only rescales probabilities, never the measures or psi.
    """

    radius: float
    fraction: float
    beta: float = 2.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and 0.0 < self.radius < 1.0):
            raise DomainError(f"radius must lie in (0, 1), got {self.radius}")
        if not (math.isfinite(self.fraction) and 0.0 <= self.fraction <= 1.0):
            raise DomainError(f"fraction must lie in [0, 1], got {self.fraction}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be positive, got {self.beta}")

    @property
    def p_star(self) -> float:
        """Typical outside fraction 1 - R^2 under the circular law."""
        return 1.0 - self.radius * self.radius


class Branch(Enum):
    BELOW = "below"
    AT = "at"
    ABOVE = "above"


@dataclass(frozen=True)
class RateValue:
    psi: float
    branch: Branch


def _upper_branch(radius: float, q: float) -> float:
    """psi for p > p*, as a function of q = 1 - p."""
    r2 = radius * radius
    if q == 0.0:
        tail = 0.0
    else:
        tail = q * q * (0.75 - 0.5 * math.log(q) + math.log(radius))
    return 0.25 * r2 * r2 - q * r2 + tail


def psi(spec: ConstraintSpec) -> RateValue:
    """Two-branch rate function of the index fraction."""
    p = spec.fraction
    p_star = spec.p_star
    if p == p_star:
        return RateValue(0.0, Branch.AT)
    value = _upper_branch(spec.radius, 1.0 - p)
    if p > p_star:
        return RateValue(max(value, 0.0), Branch.ABOVE)
    return RateValue(max(-value, 0.0), Branch.BELOW)


def ld_log_prob(spec: ConstraintSpec, n: int) -> float:
    """Leading-order ln P(index fraction = p) = -(beta/2) n^2 psi."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    return -0.5 * spec.beta * float(n) * float(n) * psi(spec).psi


def cubic_approx(radius: float, delta: float) -> float:
    """Cubic core |delta|^3 / (6 R^2) of psi around p*."""
    if not (math.isfinite(radius) and 0.0 < radius < 1.0):
        raise DomainError(f"radius must lie in (0, 1), got {radius}")
    return abs(delta) ** 3 / (6.0 * radius * radius)


def equilibrium_measure(spec: ConstraintSpec) -> RadialMeasure:
    """Constrained minimizer of the energy functional.

    Below p*: uniform disk up to R, atom of mass p* - p on the circle of
    radius R, uniform annulus from sqrt(1-p) to 1.  Above p*: uniform
    disk up to sqrt(1-p), atom of mass p - p* at radius R, uniform
    annulus from R to 1.  Exactly at p* the circular law is returned
    with no zero-mass atom, and empty components are never emitted.
    """
    p = spec.fraction
    radius = spec.radius
    p_star = spec.p_star
    if p == p_star:
        return RadialMeasure((Disk(1.0, UNIFORM_DENSITY),))
    components: list = []
    if p < p_star:
        components.append(Disk(radius, UNIFORM_DENSITY))
        components.append(CircleAtom(radius, p_star - p))
        inner = math.sqrt(1.0 - p)
        if inner < 1.0:
            components.append(Annulus(inner, 1.0, UNIFORM_DENSITY))
    else:
        if p < 1.0:
            components.append(Disk(math.sqrt(1.0 - p), UNIFORM_DENSITY))
        components.append(CircleAtom(radius, p - p_star))
        components.append(Annulus(radius, 1.0, UNIFORM_DENSITY))
    measure = RadialMeasure(components)
    measure.validate()
    return measure


def j_cost(r1: float, spec: ConstraintSpec) -> float:
    """Single-variable constrained cost over the candidate family.

    The family places the uniform disk up to R, the condensed atom at R,
    and a uniform annulus between r1 and sqrt(r1^2 + p); it is defined
    for p <= p* and r1 >= R.  Note the missing -3/4 calibration:
    (2/beta) j_cost(sqrt(1-p)) - 3/4 equals psi.
    """
    p = spec.fraction
    radius = spec.radius
    if p > spec.p_star:
        raise DomainError(f"j_cost is defined for p <= 1 - R^2, got p={p}, R={radius}")
    if not (math.isfinite(r1) and r1 >= radius):
        raise DomainError(f"r1 must be >= R={radius}, got {r1}")
    q = 1.0 - p
    r1sq = r1 * r1
    bracket = (
        -0.25 * radius**4
        + q * radius * radius
        - q * q * math.log(radius)
        + 0.75 * p * p
        + 0.5 * p * r1sq
        + p * q
        - r1sq * (r1sq - 2.0 * q) * math.log(r1)
        + 0.5 * ((r1sq - 1.0 + p) ** 2 - 1.0) * math.log(p + r1sq)
    )
    return 0.5 * spec.beta * bracket


def j_cost_derivative(r1: float, spec: ConstraintSpec) -> float:
    """d j_cost / d r1 = beta r1 (r1^2 - 1 + p) ln((p + r1^2)/r1^2)."""
    p = spec.fraction
    if p > spec.p_star:
        raise DomainError(f"j_cost is defined for p <= 1 - R^2, got p={p}, R={spec.radius}")
    if not (math.isfinite(r1) and r1 >= spec.radius):
        raise DomainError(f"r1 must be >= R={spec.radius}, got {r1}")
    r1sq = r1 * r1
    return spec.beta * r1 * (r1sq - 1.0 + p) * math.log((p + r1sq) / r1sq)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def _golden_min(f, a: float, b: float, xtol: float) -> float:
    """Golden-section minimum of a unimodal f on [a, b] to width xtol."""
    h = b - a
    if h <= xtol:
        return 0.5 * (a + b)
    steps = int(math.ceil(math.log(xtol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(steps - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h *= _INV_PHI
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            yd = f(d)
    return 0.5 * (a + d) if yc < yd else 0.5 * (c + b)


def minimize_j(spec: ConstraintSpec) -> float:
    """Numerical minimizer of j_cost over [R, inf); equals sqrt(1 - p).

    Golden-section bracketing on [R, sqrt(1-p) + 1] followed by a sign
    bisection of the closed-form derivative, which pins the last digits
    past the sqrt(machine-eps) resolution of value comparisons alone.
    For p = 0 the annulus carries no mass and the cost is flat in r1;
    the limiting minimizer 1 is returned directly.
    """
    p = spec.fraction
    radius = spec.radius
    if p > spec.p_star:
        raise DomainError(f"minimize_j is defined for p <= 1 - R^2, got p={p}, R={radius}")
    if p == 0.0:
        return 1.0

    def deriv_sign(r: float) -> float:
        rsq = r * r
        return (rsq - 1.0 + p) * math.log((p + rsq) / rsq)

    lo = radius
    hi = math.sqrt(1.0 - p) + 1.0
    if deriv_sign(lo) >= 0.0:
        return lo
    x = _golden_min(lambda r: j_cost(r, spec), lo, hi, 1e-10)
    a = max(lo, x - 1e-3)
    b = min(hi, x + 1e-3)
    if not (deriv_sign(a) < 0.0 < deriv_sign(b)):
        a, b = lo, hi
    while b - a > 1e-15:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if deriv_sign(mid) < 0.0:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)
