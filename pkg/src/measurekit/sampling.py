"""Floating-point simulation: inverse-transform sampling and empirical checks.

Everything here is double precision. Exact values cross into floats through
explicit ``float(...)`` conversions, and floats cross back via ``Fraction``.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import MeasureKitError, NotDistributionError
from .product import GENERATOR_ID
from .stieltjes.cdf import CDFSpec, upper_inverse


@dataclass(frozen=True)
class RNGStream:
    generator_id: str = GENERATOR_ID
    seed: int = 0
    index: int = 0

    def __post_init__(self):
        if self.generator_id != GENERATOR_ID:
            raise MeasureKitError(f"unknown generator {self.generator_id!r}")
        if not 0 <= self.seed < 2**64:
            raise MeasureKitError("seed must be a 64-bit unsigned integer")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(self.index,))))

    def split(self, index: int) -> "RNGStream":
        return RNGStream(self.generator_id, self.seed, index)


@dataclass(frozen=True)
class EmpiricalLaw:
    values: tuple
    count: int

    def __post_init__(self):
        vals = tuple(sorted(float(v) for v in self.values))
        if len(vals) != self.count:
            raise MeasureKitError(f"{len(vals)} values for declared count {self.count}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Sequence) -> "EmpiricalLaw":
        return cls(tuple(values), len(values))

    def cdf(self, x: float) -> float:
        return bisect_right(self.values, x) / self.count

    def left_cdf(self, x: float) -> float:
        return bisect_left(self.values, x) / self.count

    def mean(self) -> float:
        return math.fsum(self.values) / self.count

    def dump(self) -> str:
        """Columnar text: index and value per line."""
        return "\n".join(f"{i}\t{v!r}" for i, v in enumerate(self.values))


def _open_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    bad = (u <= 0.0) | (u >= 1.0)
    while bad.any():
        u[bad] = rng.random(int(bad.sum()))
        bad = (u <= 0.0) | (u >= 1.0)
    return u


def sample_quantile(F: CDFSpec, n: int, stream: RNGStream) -> EmpiricalLaw:
    """n draws of F<-(U) with U uniform on (0, 1) from ``stream``."""
    if not F.is_distribution():
        raise NotDistributionError("F is not a distribution function")
    us = _open_unit(stream.generator(), n)
    out = []
    for u in us:
        # floats are dyadic rationals, so the inverse is evaluated exactly
        out.append(float(upper_inverse(F, Fraction(float(u)))))
    return EmpiricalLaw.of(out)


def ks_distance(emp: EmpiricalLaw, F: CDFSpec) -> float:
    """sup_x |F_n(x) - F(x)|, checking both sides of every sample point.

    A sample value equal to the float image of a breakpoint or atom of F is
    read as that exact point; otherwise rounding would move it across a jump.
    """
    n = emp.count
    if n == 0:
        raise MeasureKitError("empty sample")
    snap = {float(e): e for e in F.events()}
    d = 0.0
    vals = emp.values
    i = 0
    while i < n:
        j = i
        while j + 1 < n and vals[j + 1] == vals[i]:
            j += 1
        x = snap.get(vals[i], Fraction(vals[i]))
        d = max(d, abs((j + 1) / n - float(F(x))), abs(i / n - float(F.left_limit(x))))
        i = j + 1
    return d


def ks_band(n: int, coefficient: float = 1.36) -> float:
    """Asymptotic 5% critical value of the one-sample KS statistic."""
    return coefficient / math.sqrt(n)


@dataclass
class ConvergenceRow:
    n: int
    estimate: float
    stderr: float


def convergence_in_probability(
    X_seq: Callable[[int, np.ndarray], np.ndarray],
    X_limit: Callable[[np.ndarray], np.ndarray],
    eps: float,
    n_grid: Sequence[int],
    stream: RNGStream,
    samples: int = 10_000,
    omega_dim: int | None = None,
) -> list[ConvergenceRow]:
    """Monte Carlo estimates of P(|X_n - X| >= eps) with binomial standard errors.

    Each row of ``omega`` is one sample point: ``omega_dim`` uniforms shared by
    every X_n, so the sequence is coupled on a common probability space.
    """
    dim = omega_dim if omega_dim is not None else max(n_grid)
    omega = stream.generator().random((samples, dim))
    lim = np.asarray(X_limit(omega), dtype=float)
    rows = []
    for n in n_grid:
        xn = np.asarray(X_seq(n, omega), dtype=float)
        # forgive the rounding of the subtraction itself, a few ulps of the operands
        slack = 4 * np.spacing(np.maximum(np.abs(xn), np.abs(lim)))
        p = float(np.mean(np.abs(xn - lim) >= eps - slack))
        rows.append(ConvergenceRow(n, p, math.sqrt(p * (1 - p) / samples)))
    return rows


@dataclass
class Subsequence:
    indices: list
    exhausted_at: int | None = None  # the k whose threshold 2^-k was never met

    @property
    def complete(self) -> bool:
        return self.exhausted_at is None


def subsequence_extractor(prob_table: Mapping[int, float], max_k: int | None = None) -> Subsequence:
    """Greedy n_1 < n_2 < ... with p(n_k) <= 2^-k."""
    ns = sorted(prob_table)
    out: list = []
    k = 1
    pos = 0
    while max_k is None or k <= max_k:
        thr = Fraction(1, 2**k)
        found = None
        while pos < len(ns):
            n = ns[pos]
            pos += 1
            p = prob_table[n]
            if Fraction(p) <= thr:
                found = n
                break
        if found is None:
            return Subsequence(out, k)
        out.append(found)
        k += 1
    return Subsequence(out)
