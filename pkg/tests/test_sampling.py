from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from measurekit import randinst
from measurekit.errors import MeasureKitError, NotDistributionError
from measurekit.sampling import (
    EmpiricalLaw,
    RNGStream,
    convergence_in_probability,
    ks_band,
    ks_distance,
    sample_quantile,
    subsequence_extractor,
)
from measurekit.stieltjes.cdf import dirac, discrete, exponential, lebesgue, quantile_pushforward_check, uniform


def test_uniform_sample_ks():
    emp = sample_quantile(uniform(0, 1), 10_000, RNGStream(seed=7))
    assert emp.count == 10_000
    assert ks_distance(emp, uniform(0, 1)) < 0.02
    assert ks_band(10_000) == pytest.approx(0.0136)


def test_point_mass_samples():
    emp = sample_quantile(dirac(3), 100, RNGStream(seed=1))
    assert set(emp.values) == {3.0}
    assert ks_distance(emp, dirac(3)) == 0.0


def test_exponential_mean_band():
    n = 10_000
    emp = sample_quantile(exponential(2), n, RNGStream(seed=3))
    assert abs(emp.mean() - 0.5) < 3 * 0.5 / math.sqrt(n)


def test_determinism():
    a = sample_quantile(uniform(0, 1), 50, RNGStream(seed=11, index=2))
    b = sample_quantile(uniform(0, 1), 50, RNGStream(seed=11, index=2))
    c = sample_quantile(uniform(0, 1), 50, RNGStream(seed=11, index=3))
    assert a == b and a != c
    with pytest.raises(MeasureKitError):
        RNGStream("mt19937", 0, 0)


def test_invalid_distribution():
    with pytest.raises(NotDistributionError):
        sample_quantile(lebesgue(), 10, RNGStream())


def test_ks_closed_forms():
    n = 200
    grid = EmpiricalLaw.of([(i - 0.5) / n for i in range(1, n + 1)])
    assert ks_distance(grid, uniform(0, 1)) == pytest.approx(1 / (2 * n))
    assert ks_distance(EmpiricalLaw.of([0.5]), uniform(0, 1)) == pytest.approx(0.5)
    emp = sample_quantile(uniform(0, 1), 5000, RNGStream(seed=2))
    assert ks_distance(emp, uniform(0, 2)) > 0.4


def test_ks_counts_atoms_as_jumps():
    F = discrete({0: Fraction(1, 2), 1: Fraction(1, 2)})
    emp = EmpiricalLaw.of([0.0, 1.0])
    assert ks_distance(emp, F) == 0.0


def test_convergence_examples():
    stream = RNGStream(seed=5)
    same = convergence_in_probability(lambda n, w: w[:, 0], lambda w: w[:, 0], 0.1, [1, 5], stream, samples=500, omega_dim=1)
    assert [r.estimate for r in same] == [0.0, 0.0]
    rows = convergence_in_probability(
        lambda n, w: w[:, 0] + 1 / n, lambda w: w[:, 0], 0.1, list(range(1, 16)), stream, samples=200, omega_dim=1
    )
    for r in rows:
        assert r.estimate == (1.0 if r.n <= 10 else 0.0)
    eps = 0.1
    rows = convergence_in_probability(
        lambda n, w: (w[:, :n] < 0.5).mean(axis=1), lambda w: np.full(len(w), 0.5), eps, [10, 50, 200], stream, samples=4000
    )
    ests = [r.estimate for r in rows]
    assert ests[0] > ests[1] > ests[2]
    for r in rows:
        assert r.estimate <= 2 * math.exp(-2 * r.n * eps * eps) + 3 * r.stderr + 1e-12


def test_subsequence_examples():
    table = {n: Fraction(1, n) for n in range(1, 2**8 + 1)}
    assert subsequence_extractor(table, 8).indices == [2**k for k in range(1, 9)]
    zero = subsequence_extractor({n: 0 for n in range(1, 11)}, 6)
    assert zero.indices == [1, 2, 3, 4, 5, 6] and zero.complete
    half = subsequence_extractor({n: 0.5 for n in range(1, 50)})
    assert half.indices == [1] and half.exhausted_at == 2 and not half.complete


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_inverse_transform_verdicts_agree(seed):
    F = randinst.piecewise_linear_cdf(randinst.seeded(seed, 0))
    assert quantile_pushforward_check(F).passed
    emp = sample_quantile(F, 4000, RNGStream(seed=seed))
    assert ks_distance(emp, F) < ks_band(4000, 1.63)
