"""Independent numerical oracles used to check closed forms.

Everything here goes through scipy quadrature (or direct angular
integration) instead of the package's antiderivative formulas, so a
bug in the closed forms cannot hide in its own test.
"""

import math

import numpy as np
from scipy import integrate

from ginibre_index.radial import Annulus, CircleAtom, Disk, RadialMeasure


def _radial_density(component):
    """Radial mass density sigma(r) and support of a planar component."""
    if isinstance(component, Disk):
        lo, hi = 0.0, component.radius
    else:
        lo, hi = component.inner, component.outer
    lam = component.density

    def sigma(r):
        return 2.0 * math.pi * lam * r

    return sigma, lo, hi


def quad_pair_energy(c1, c2):
    """Quadrature value of the pair log energy via ln max(r, s)."""
    atom1 = isinstance(c1, CircleAtom)
    atom2 = isinstance(c2, CircleAtom)
    if atom1 and atom2:
        return c1.mass * c2.mass * math.log(max(c1.radius, c2.radius))
    if atom1 or atom2:
        atom, planar = (c1, c2) if atom1 else (c2, c1)
        sigma, lo, hi = _radial_density(planar)
        val, _ = integrate.quad(
            lambda s: sigma(s) * math.log(max(atom.radius, s)), lo, hi, points=[atom.radius], limit=200
        )
        return atom.mass * val
    s1, lo1, hi1 = _radial_density(c1)
    s2, lo2, hi2 = _radial_density(c2)

    def inner(r):
        val, _ = integrate.quad(
            lambda s: s2(s) * math.log(max(r, s)), lo2, hi2, points=[r] if lo2 < r < hi2 else None, limit=200
        )
        return s1(r) * val

    val, _ = integrate.quad(inner, lo1, hi1, limit=200)
    return val


def quad_second_moment(component):
    sigma, lo, hi = (
        _radial_density(component) if not isinstance(component, CircleAtom) else (None, None, None)
    )
    if sigma is None:
        return component.mass * component.radius**2
    val, _ = integrate.quad(lambda r: sigma(r) * r * r, lo, hi)
    return val


def quad_energy_functional(measure: RadialMeasure, beta: float) -> float:
    comps = measure.components
    moment = sum(quad_second_moment(c) for c in comps)
    log_energy = 0.0
    for i, a in enumerate(comps):
        log_energy += quad_pair_energy(a, a)
        for b in comps[i + 1 :]:
            log_energy += 2.0 * quad_pair_energy(a, b)
    return 0.5 * beta * (moment - log_energy - 0.75)


def quad_rate_from_measures(constrained: RadialMeasure, baseline: RadialMeasure, beta: float) -> float:
    """(2/beta) (F[constrained] - F[baseline]) without trusting the -3/4 shift."""
    return (2.0 / beta) * (quad_energy_functional(constrained, beta) - quad_energy_functional(baseline, beta))


def angular_log_average(a: float, b: float) -> float:
    """(1/2pi) integral ln|a - b e^{i theta}| d theta by direct quadrature."""
    val, _ = integrate.quad(
        lambda t: math.log(abs(a - b * complex(math.cos(t), math.sin(t)))), 0.0, 2.0 * math.pi, limit=400
    )
    return val / (2.0 * math.pi)


def brute_force_poisson_binomial(probs) -> np.ndarray:
    """Exact Poisson-binomial pmf by direct linear convolution (small n)."""
    pmf = np.array([1.0])
    for p in probs:
        pmf = np.concatenate([pmf * (1.0 - p), [0.0]]) + np.concatenate([[0.0], pmf * p])
    return pmf
