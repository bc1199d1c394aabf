import numpy as np
import pytest

from admixcount import (
    count_a1,
    count_a2,
    entropy_summary,
    error_fraction_bound,
    estimate_volume_fraction,
    exact_criterion,
    grid_heatmap,
    make_spec,
    normalize,
    semiregular,
    semiregular_grid_agreement,
    shannon_entropy,
    theta,
)
from tests.test_enumeration import random_specs


def test_shannon_entropy():
    assert shannon_entropy([0.5, 0.5]) == 1.0
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy([0.25, 0.25, 0.25, 0.25]) == 2.0
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.4])
    with pytest.raises(ValueError):
        shannon_entropy([1.5, -0.5])


def test_theta_values():
    assert theta(0.25, 0.25) == pytest.approx(1.0, abs=1e-12)
    assert theta(0.5, 0.5) == pytest.approx(0.0, abs=1e-12)
    assert theta(0.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        theta(0.7, 0.7)


def test_theta_maximum_unique():
    rng = np.random.default_rng(0)
    for _ in range(200):
        f0, f1 = rng.random(2)
        if f0 + f1 >= 1:
            continue
        if (f0, f1) != (0.25, 0.25):
            assert theta(f0, f1) < 1.0


def test_entropy_summary_half():
    nm = normalize(semiregular(2, 2, 2, 2, 2))
    s = entropy_summary(nm)
    assert s.H1 == pytest.approx(1.0)
    assert s.H2 == pytest.approx(1.0)  # H(1/2, 1/2, 0)
    assert s.fbar == pytest.approx(1.0)
    assert s.score == pytest.approx(1.0)


def test_exact_criterion_matches_counts():
    rng = np.random.default_rng(5)
    for spec in random_specs(rng, 60):
        report = exact_criterion(spec)
        want = int(count_a1(spec)) > int(count_a2(spec))
        assert report.exact_decision == want
        assert report.agree == (report.exact_decision == report.approx_decision)


def test_exact_criterion_tiny():
    report = exact_criterion(semiregular(1, 1, 1, 1, 1))
    assert report.exact_decision  # 8 > 2
    assert report.approx_decision


def test_score_zero_is_not_a_decision():
    # abar = 1/2, f0 = f1 = 1/4 gives score exactly 0; strict > means False
    report = exact_criterion(make_spec(2, 1, [1, 1], [1], [1]))
    assert report.score == pytest.approx(0.0, abs=1e-12)
    assert not report.approx_decision


def test_grid_agreement_range_and_dims():
    frac, cells = semiregular_grid_agreement(10, 10)
    assert 0.0 <= frac <= 1.0
    for ab, f in cells:
        assert 0.0 <= ab < 1.0
        assert 0.0 <= f < 0.5
    with pytest.raises(ValueError):
        semiregular_grid_agreement(1, 10)


def test_grid_heatmap_shape():
    frac, bins = grid_heatmap(20, 20)
    assert len(bins) == 3600
    for b in bins:
        assert 0.0 <= b.fraction_a1_larger <= 1.0
        assert 0.0 <= b.disagree_frac <= 1.0
    # disagreement-weighted mean must reproduce the overall fraction
    assert 0.0 <= frac <= 1.0


def test_grid_heatmap_consistent_with_agreement():
    f1, _ = semiregular_grid_agreement(30, 40)
    f2, _ = grid_heatmap(30, 40)
    assert f1 == f2


def test_error_fraction_bound_decays():
    vals = [error_fraction_bound(n, n) for n in (10, 100, 1000, 10000)]
    assert all(v > 0 for v in vals)
    assert vals == sorted(vals, reverse=True)
    with pytest.raises(ValueError):
        error_fraction_bound(1, 10)


def test_volume_fraction_deterministic_and_bounded():
    a = estimate_volume_fraction(1000, 1000, samples=10**4, seed=42)
    b = estimate_volume_fraction(1000, 1000, samples=10**4, seed=42)
    assert a == b
    assert 0.0 <= a <= 1.0
    with pytest.raises(ValueError):
        estimate_volume_fraction(10, 10, samples=100, seed=0)


def test_volume_fraction_within_bound():
    # the analytic bound must dominate the sampled near-tie volume
    for n in (100, 1000):
        est = estimate_volume_fraction(n, n, samples=10**5, seed=1)
        assert est <= error_fraction_bound(n, n)
