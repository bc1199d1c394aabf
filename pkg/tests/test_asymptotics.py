import math

import mpmath
import pytest

from admixcount import (
    alpha12_upper_bound,
    correction_log,
    count_a12,
    independence_log_product,
    log2_binom,
    semiregular,
    spa_alpha12,
    stirling_central_log,
    table2,
    verify_lemmas,
)
from admixcount.asymptotics import b_matrix, b_matrix_report, _bareiss_det


def test_log2_binom_exact_small():
    for n in (0, 1, 5, 20, 100, 2000):
        for k in (0, n // 3, n // 2, n):
            assert log2_binom(n, k) == pytest.approx(
                math.log2(math.comb(n, k)) if math.comb(n, k) > 0 else 0.0, rel=1e-14
            )
    with pytest.raises(ValueError):
        log2_binom(5, 6)
    with pytest.raises(ValueError):
        log2_binom(5, -1)


def test_log2_binom_large_matches_mpmath():
    with mpmath.workdps(40):
        want = float(
            (mpmath.loggamma(2 * 10**6 + 1) - 2 * mpmath.loggamma(10**6 + 1))
            / mpmath.ln(2)
        )
    assert log2_binom(2 * 10**6, 10**6) == pytest.approx(want, rel=1e-13)


def test_log2_binom_symmetry():
    assert log2_binom(10**5, 17) == pytest.approx(log2_binom(10**5, 10**5 - 17), rel=1e-14)


def test_stirling_central_log_converges():
    for m in (10, 100, 10_000):
        err = abs(stirling_central_log(m) - log2_binom(2 * m, m))
        assert err < 0.02 / m**2
    with pytest.raises(ValueError):
        stirling_central_log(0)


def test_spa_below_upper_bound():
    for N, P in [(2, 2), (5, 9), (100, 100), (10, 1000)]:
        assert spa_alpha12(N, P) < alpha12_upper_bound(N, P)


def test_independence_modes_agree_asymptotically():
    for n in (100, 1000):
        exact = independence_log_product(n, n, mode="exact")
        stirling = independence_log_product(n, n, mode="stirling")
        assert exact == pytest.approx(stirling, abs=1e-3)
    with pytest.raises(ValueError):
        independence_log_product(2, 2, mode="other")


def test_correction_limit():
    limit = -math.log2(math.e) / 4
    vals = [correction_log(n, n) for n in (2, 5, 10, 100, 1000, 10000)]
    assert vals == sorted(vals, reverse=True)
    assert all(v > limit for v in vals)
    assert vals[-1] == pytest.approx(limit, abs=1e-4)


def test_table2_structure():
    rows = table2(3, large_ns=[100])
    assert [r.n for r in rows] == [2, 3, 100]
    assert rows[0].alpha12_exact == pytest.approx(math.log2(18), rel=1e-12)
    assert rows[2].alpha12_exact is None
    assert rows[2].spa == pytest.approx(spa_alpha12(100, 100))
    with pytest.raises(ValueError):
        table2(1)


def test_table2_exact_matches_count():
    rows = table2(4)
    for r in rows:
        want = count_a12(semiregular(r.n, r.n, r.n, r.n, r.n)).log2()
        assert r.alpha12_exact == pytest.approx(want, rel=1e-12)


def test_b_matrix_det():
    for N, P in [(2, 2), (3, 4), (5, 3)]:
        assert _bareiss_det(b_matrix(N, P)) == N ** (P - 1) * P ** (N - 1)


def test_b_matrix_report():
    rep = b_matrix_report(3, 3)
    assert rep.detB == 3**2 * 3**2
    assert rep.sigma_diag_row == pytest.approx(2 * 5 / 9)
    assert rep.sigma_diag_col == pytest.approx(4 / 3)
    assert rep.off_diags[0] == pytest.approx(2 * 2 / 9)
    assert rep.off_diags[1] == pytest.approx(-2 / 3)
    assert rep.off_diags[2] == pytest.approx(2 / 3)


def test_verify_lemmas_passes():
    report = verify_lemmas(max_dim=4, mc_samples=10**5, seed=0)
    assert report.all_passed
    assert len(report.checks) == 4
    assert report.failures() == []
    with pytest.raises(ValueError):
        verify_lemmas(max_dim=1)


def test_verify_lemmas_deterministic():
    a = verify_lemmas(max_dim=3, mc_samples=10**5, seed=9)
    b = verify_lemmas(max_dim=3, mc_samples=10**5, seed=9)
    assert a == b
