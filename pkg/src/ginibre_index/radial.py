"""Rotation-invariant measures on the plane and their logarithmic energy.

A measure is stored as a list of radial components: uniform disks,
uniform annuli and singular circle atoms (uniform mass on a centered
circle).  For two such components the logarithmic pair energy

    E(mu1, mu2) = integral integral ln|z - z'| mu1(dz) mu2(dz')

reduces to a one-dimensional integral through the angular average

    (1/2pi) integral_0^{2pi} ln|z - z' e^{i theta}| d theta
        = ln max(|z|, |z'|),

valid away from the origin (ln|z| is harmonic there).  With radial mass
densities sigma(r) = 2 pi lambda r this leaves only antiderivatives of
r ln r and r^3 ln r, so every pair energy used here is in closed form;
no quadrature is involved.  Equal radii use the continuous extension
ln max(a, a) = ln a.

The quadratic-confinement energy functional over normalized measures,

    F[mu] = (beta/2) (integral |z|^2 mu(dz) - E(mu, mu) - 3/4),

vanishes exactly on the uniform unit disk of density 1/pi (the -3/4
calibrates that) and is the large-deviation cost of observing the
empirical spectral measure mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

__all__ = [
    "Disk",
    "Annulus",
    "CircleAtom",
    "RadialComponent",
    "RadialMeasure",
    "component_mass",
    "component_second_moment",
    "pair_log_energy",
    "energy_functional",
    "radial_cdf",
    "effective_potential",
    "MASS_TOL",
]

MASS_TOL = 1e-12


@dataclass(frozen=True)
class Disk:
    """Uniform areal density on the closed ball {|z| <= radius}."""

    radius: float
    density: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"disk radius must be positive, got {self.radius}")
        if not (math.isfinite(self.density) and self.density > 0.0):
            raise DomainError(f"disk density must be positive, got {self.density}")


@dataclass(frozen=True)
class Annulus:
    """Uniform areal density on {inner < |z| < outer}."""

    inner: float
    outer: float
    density: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.inner) and math.isfinite(self.outer) and 0.0 < self.inner < self.outer):
            raise DomainError(f"annulus needs 0 < inner < outer, got ({self.inner}, {self.outer})")
        if not (math.isfinite(self.density) and self.density > 0.0):
            raise DomainError(f"annulus density must be positive, got {self.density}")


@dataclass(frozen=True)
class CircleAtom:
    """Singular mass spread uniformly on the circle {|z| = radius}."""

    radius: float
    mass: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"circle atom radius must be positive, got {self.radius}")
        if not (math.isfinite(self.mass) and self.mass >= 0.0):
            raise DomainError(f"circle atom mass must be nonnegative, got {self.mass}")


RadialComponent = Union[Disk, Annulus, CircleAtom]


def component_mass(component: RadialComponent) -> float:
    if isinstance(component, Disk):
        return component.density * math.pi * component.radius**2
    if isinstance(component, Annulus):
        return component.density * math.pi * (component.outer**2 - component.inner**2)
    if isinstance(component, CircleAtom):
        return component.mass
    raise DomainError(f"unknown component type {type(component)!r}")


def component_second_moment(component: RadialComponent) -> float:
    """integral |z|^2 over the component."""
    if isinstance(component, Disk):
        return 0.5 * math.pi * component.density * component.radius**4
    if isinstance(component, Annulus):
        return 0.5 * math.pi * component.density * (component.outer**4 - component.inner**4)
    if isinstance(component, CircleAtom):
        return component.mass * component.radius**2
    raise DomainError(f"unknown component type {type(component)!r}")


def _support_interval(component: RadialComponent) -> tuple[float, float]:
    """Radial support [lo, hi] of a two-dimensional component."""
    if isinstance(component, Disk):
        return 0.0, component.radius
    return component.inner, component.outer


@dataclass(frozen=True)
class RadialMeasure:
    """Ordered list of radial components.

    A normalized measure has total mass 1.  Two-dimensional supports must
    be pairwise disjoint; a circle atom may only sit on the boundary of a
    disk or annulus, never in its interior.
    """

    components: tuple[RadialComponent, ...]

    def __init__(self, components) -> None:
        object.__setattr__(self, "components", tuple(components))
        if not self.components:
            raise DomainError("a radial measure needs at least one component")

    def total_mass(self) -> float:
        return math.fsum(component_mass(c) for c in self.components)

    def second_moment(self) -> float:
        return math.fsum(component_second_moment(c) for c in self.components)

    def validate(self) -> None:
        """Raise DomainError unless normalized with admissible supports."""
        mass = self.total_mass()
        if abs(mass - 1.0) > MASS_TOL:
            raise DomainError(f"measure mass {mass!r} is not 1 within {MASS_TOL}")
        planar = [c for c in self.components if not isinstance(c, CircleAtom)]
        for i, a in enumerate(planar):
            lo_a, hi_a = _support_interval(a)
            for b in planar[i + 1 :]:
                lo_b, hi_b = _support_interval(b)
                if max(lo_a, lo_b) < min(hi_a, hi_b):
                    raise DomainError(f"overlapping planar supports: {a} and {b}")
        for atom in self.components:
            if not isinstance(atom, CircleAtom):
                continue
            for c in planar:
                lo, hi = _support_interval(c)
                if lo < atom.radius < hi:
                    raise DomainError(f"atom at {atom.radius} lies inside the interior of {c}")


# --- closed-form primitives -------------------------------------------------
#
# _int_r_ln and _int_r3_ln are the antiderivative differences of r ln r and
# r^3 ln r; both integrands extend continuously by 0 to r = 0.


def _int_r(a: float, b: float) -> float:
    return 0.5 * (b * b - a * a)


def _int_r_ln(a: float, b: float) -> float:
    def f(x: float) -> float:
        return 0.0 if x == 0.0 else x * x * (0.5 * math.log(x) - 0.25)

    return f(b) - f(a)


def _int_r3_ln(a: float, b: float) -> float:
    def f(x: float) -> float:
        return 0.0 if x == 0.0 else x**4 * (0.25 * math.log(x) - 0.0625)

    return f(b) - f(a)


def _square_block(t1: float, t2: float) -> float:
    """integral of r s ln max(r, s) over [t1, t2]^2.

    By symmetry this is 2 * integral_{t1 <= s <= r <= t2} r s ln r, i.e.
    integral (r^3 - t1^2 r) ln r dr.
    """
    return _int_r3_ln(t1, t2) - t1 * t1 * _int_r_ln(t1, t2)


def _planar_planar(i1: tuple[float, float], i2: tuple[float, float]) -> float:
    """integral of r s ln max(r, s) over i1 x i2 for radial intervals."""
    points = sorted({i1[0], i1[1], i2[0], i2[1]})
    pieces = list(zip(points[:-1], points[1:]))
    total = 0.0
    for a, b in pieces:
        if not (a >= i1[0] and b <= i1[1]):
            continue
        for c, d in pieces:
            if not (c >= i2[0] and d <= i2[1]):
                continue
            if a == c and b == d:
                total += _square_block(a, b)
            elif b <= c:
                total += _int_r(a, b) * _int_r_ln(c, d)
            else:
                total += _int_r_ln(a, b) * _int_r(c, d)
    return total


def _atom_planar(radius: float, interval: tuple[float, float]) -> float:
    """integral of s ln max(radius, s) over the interval."""
    lo, hi = interval
    total = 0.0
    cap = min(hi, radius)
    if cap > lo:
        total += math.log(radius) * _int_r(lo, cap)
    base = max(lo, radius)
    if hi > base:
        total += _int_r_ln(base, hi)
    return total


_TWO_PI = 2.0 * math.pi


def pair_log_energy(c1: RadialComponent, c2: RadialComponent) -> float:
    """Logarithmic interaction energy of two radial components.

    Returns integral integral ln|z - z'| dmu1 dmu2 in closed form via the
    angular average ln max(|z|, |z'|).  A circle atom of positive mass at
    radius zero is rejected at construction time (the origin carries a log
    singularity that only a vanishing radial density can cross).
    """
    atom1 = isinstance(c1, CircleAtom)
    atom2 = isinstance(c2, CircleAtom)
    if atom1 and atom2:
        return c1.mass * c2.mass * math.log(max(c1.radius, c2.radius))
    if atom1:
        return c1.mass * _TWO_PI * c2.density * _atom_planar(c1.radius, _support_interval(c2))
    if atom2:
        return c2.mass * _TWO_PI * c1.density * _atom_planar(c2.radius, _support_interval(c1))
    return (
        _TWO_PI * c1.density * _TWO_PI * c2.density * _planar_planar(_support_interval(c1), _support_interval(c2))
    )


def energy_functional(measure: RadialMeasure, beta: float) -> float:
    """Large-deviation cost (beta/2)(second moment - log energy - 3/4).

    The log energy is the full double integral over the product measure:
    self-pairs once, distinct ordered pairs both ways.  Zero exactly on
    the uniform unit disk of density 1/pi.
    """
    if not (math.isfinite(beta) and beta > 0.0):
        raise DomainError(f"beta must be positive, got {beta}")
    measure.validate()
    comps = measure.components
    log_energy = 0.0
    for i, a in enumerate(comps):
        log_energy += pair_log_energy(a, a)
        for b in comps[i + 1 :]:
            log_energy += 2.0 * pair_log_energy(a, b)
    return 0.5 * beta * (measure.second_moment() - log_energy - 0.75)


def radial_cdf(measure: RadialMeasure, r: float) -> float:
    """Mass of the closed ball of radius r.

    Right-continuous, with a jump of the atom mass at each atom radius.
    """
    if not (math.isfinite(r) and r >= 0.0):
        raise DomainError(f"radius must be nonnegative, got {r}")
    measure.validate()
    total = 0.0
    for c in measure.components:
        if isinstance(c, CircleAtom):
            if c.radius <= r:
                total += c.mass
        elif isinstance(c, Disk):
            total += c.density * math.pi * min(r, c.radius) ** 2
        else:
            if r > c.inner:
                total += c.density * math.pi * (min(r, c.outer) ** 2 - c.inner**2)
    return total


def effective_potential(measure: RadialMeasure, r: float) -> float:
    """Mean-field one-particle potential V(r) = r^2 - 2 integral ln|z - z'| dmu.

    Evaluated exactly by pairing a unit probe atom at radius r against each
    component.  For a minimizing measure V is constant on the interior of
    each planar support component and of no smaller value off the support.
    """
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"probe radius must be positive, got {r}")
    measure.validate()
    probe = CircleAtom(r, 1.0)
    potential = math.fsum(pair_log_energy(probe, c) for c in measure.components)
    return r * r - 2.0 * potential
