"""Index probability mass functions and large-deviation rate curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["IndexPMF", "RateCurve", "log_sum_exp", "reconstruct_log_pmf", "empirical_rate"]


def log_sum_exp(values: np.ndarray) -> float:
    values = np.asarray(values, dtype=np.float64)
    m = np.max(values)
    if not np.isfinite(m):
        return float(m)
    return float(m + np.log(np.sum(np.exp(values - m))))


@dataclass(frozen=True, eq=False)
class IndexPMF:
    """Distribution of the index over {0, ..., n} as log probabilities."""

    n: int
    log_probs: np.ndarray

    def __post_init__(self) -> None:
        lp = np.asarray(self.log_probs, dtype=np.float64)
        if lp.shape != (self.n + 1,):
            raise DomainError(f"log_probs must have length n+1={self.n + 1}, got shape {lp.shape}")
        object.__setattr__(self, "log_probs", lp)

    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    def normalized(self) -> "IndexPMF":
        return IndexPMF(self.n, self.log_probs - log_sum_exp(self.log_probs))

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(log_sum_exp(self.log_probs)) <= tol


@dataclass(frozen=True, eq=False)
class RateCurve:
    """Per-fraction rate estimates, shift-normalized so the minimum is 0."""

    fractions: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        f = np.asarray(self.fractions, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if f.shape != v.shape or f.ndim != 1 or f.size == 0:
            raise DomainError("fractions and values must be matching nonempty 1-d arrays")
        object.__setattr__(self, "fractions", f)
        object.__setattr__(self, "values", v)


def reconstruct_log_pmf(ratios) -> IndexPMF:
    """Telescope adjacent-probability ratios into a normalized PMF.

    ratios[k] estimates P(k+1)/P(k); the unnormalized log masses are the
    prefix sums of ln ratios, normalized with a stable log-sum.
    """
    ratios = np.asarray(ratios, dtype=np.float64)
    if ratios.ndim != 1 or ratios.size == 0:
        raise DomainError("ratios must be a nonempty 1-d array")
    if not np.all(np.isfinite(ratios)) or np.any(ratios <= 0.0):
        raise DomainError("all ratios must be finite and positive")
    log_probs = np.concatenate(([0.0], np.cumsum(np.log(ratios))))
    log_probs -= log_sum_exp(log_probs)
    return IndexPMF(ratios.size, log_probs)


def empirical_rate(pmf: IndexPMF, beta: float) -> RateCurve:
    """Rate curve (k/n, -(2/(beta n^2)) ln P(k)), shifted so min = 0."""
    if not (math.isfinite(beta) and beta > 0.0):
        raise DomainError(f"beta must be positive, got {beta}")
    if not pmf.is_normalized(tol=1e-8):
        raise DomainError("pmf must be normalized")
    n = pmf.n
    fractions = np.arange(n + 1, dtype=np.float64) / n
    values = -(2.0 / (beta * n * n)) * pmf.log_probs
    values = values - np.min(values)
    return RateCurve(fractions, values)
