"""Saddle-point asymptotics of the doubly constrained count.

In the symmetric half-density setting (all row tallies P, all dosages N)
log2 |A12| admits a closed-form expansion whose only inexplicit term is
O(1/sqrt(min(N, P))).  This module evaluates that expansion, the matching
upper bound, and the independence-product comparison whose gap tends to
-log2(e)/4, and reproduces the comparison table.  It also numerically
verifies the auxiliary identities used in the derivation (precision
matrix determinant and covariances, quadratic cosine bound, ratio
approximation, fourth-moment Gaussian covariance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import mpmath
import numpy as np

from .bincount import log2_int
from .enumeration import count_a12
from .margins import semiregular

LOG2E = math.log2(math.e)

# exact big-integer binomials below this n; high-precision log-gamma above
_EXACT_BINOM_MAX_N = 10_000


def log2_binom(n: int, k: int) -> float:
    """log2 C(n, k), exact-integer based for small n, 30-digit log-gamma
    otherwise (accurate far beyond float epsilon for n up to ~1e9)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n <= _EXACT_BINOM_MAX_N:
        return log2_int(math.comb(n, k))
    with mpmath.workdps(30):
        val = (
            mpmath.loggamma(n + 1)
            - mpmath.loggamma(k + 1)
            - mpmath.loggamma(n - k + 1)
        ) / mpmath.ln(2)
        return float(val)


def stirling_central_log(m: int) -> float:
    """Three-term expansion of log2 C(2m, m): 2m - log2(pi m)/2 - log2(e)/(8m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 2 * m - 0.5 * math.log2(math.pi * m) - LOG2E / (8 * m)


def spa_alpha12(N: int, P: int) -> float:
    """Saddle-point approximation of log2 |A12| in the symmetric half case,
    including the fourth-moment term, excluding only the O(1/sqrt(m)) tail."""
    if N < 1 or P < 1:
        raise ValueError("N, P must be >= 1")
    return (
        2 * N * P
        - 0.5 * (N * math.log2(math.pi * P) + P * math.log2(math.pi * N))
        + 0.5 * math.log2(math.pi * N * P)
        - (N + P - 1) ** 2 / (8 * N * P) * LOG2E
    )


def alpha12_upper_bound(N: int, P: int) -> float:
    """Rigorous upper bound on log2 |A12| (the expansion without the
    negative fourth-moment term)."""
    if N < 1 or P < 1:
        raise ValueError("N, P must be >= 1")
    return (
        2 * N * P
        - 0.5 * (N * math.log2(math.pi * P) + P * math.log2(math.pi * N))
        + 0.5 * math.log2(math.pi * N * P)
    )


def independence_log_product(N: int, P: int, mode: str = "exact") -> float:
    """log2 of the independence-heuristic product D^{-1} |A1| |A2| in the
    symmetric half case.

    exact mode: N log2 C(2P,P) + P log2 C(2N,N) - log2 C(2NP,NP)
    (the 2NP terms of alpha1 and log D cancel); stirling mode evaluates
    the closed-form expansion of the same quantity.
    """
    if N < 1 or P < 1:
        raise ValueError("N, P must be >= 1")
    if mode == "exact":
        return (
            N * log2_binom(2 * P, P)
            + P * log2_binom(2 * N, N)
            - log2_binom(2 * N * P, N * P)
        )
    if mode == "stirling":
        return (
            2 * N * P
            - 0.5
            * (
                N * math.log2(math.pi * P)
                + P * math.log2(math.pi * N)
                - math.log2(math.pi * N * P)
            )
            - (N / (8 * P) + P / (8 * N) - 1 / (8 * N * P)) * LOG2E
        )
    raise ValueError(f"mode must be 'exact' or 'stirling', got {mode!r}")


def correction_log(N: int, P: int) -> float:
    """log2 of the correction factor: SPA minus the independence product.

    Tends to -log2(e)/4 as N, P grow together.
    """
    return spa_alpha12(N, P) - independence_log_product(N, P, mode="exact")


@dataclass(frozen=True)
class Table2Row:
    n: int
    alpha12_exact: Optional[float]
    spa: float
    diff_vs_indep: float


def table2(
    max_exact_n: int,
    large_ns: Sequence[int] = (),
    workers: int = 1,
) -> List[Table2Row]:
    """Exact-vs-approximate comparison rows for N = P = n.

    Exact log2 counts are computed for n = 2..max_exact_n; for the large
    n values only the approximation columns are filled.
    """
    if max_exact_n < 2:
        raise ValueError("max_exact_n must be >= 2")
    rows = []
    for n in range(2, max_exact_n + 1):
        spec = semiregular(n, n, n, n, n)
        exact = count_a12(spec, workers=workers).log2()
        rows.append(
            Table2Row(
                n=n,
                alpha12_exact=exact,
                spa=spa_alpha12(n, n),
                diff_vs_indep=correction_log(n, n),
            )
        )
    for n in large_ns:
        rows.append(
            Table2Row(
                n=n,
                alpha12_exact=None,
                spa=spa_alpha12(n, n),
                diff_vs_indep=correction_log(n, n),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# numerical verification of the auxiliary identities


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    checks: List[LemmaCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[LemmaCheck]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class BMatrixReport:
    N: int
    P: int
    detB: int
    sigma_diag_row: float
    sigma_diag_col: float
    off_diags: tuple


def b_matrix(N: int, P: int) -> np.ndarray:
    """The (N+P-1) x (N+P-1) precision-matrix core: P I_N and N I_{P-1}
    diagonal blocks, all-ones off-diagonal blocks."""
    d = N + P - 1
    B = np.ones((d, d), dtype=np.int64)
    B[:N, :N] = P * np.eye(N, dtype=np.int64)
    B[N:, N:] = N * np.eye(P - 1, dtype=np.int64)
    return B


def _bareiss_det(M: np.ndarray) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [[int(v) for v in row] for row in M]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def b_matrix_report(N: int, P: int) -> BMatrixReport:
    B = b_matrix(N, P)
    det = _bareiss_det(B)
    Sigma = 2 * np.linalg.inv(B.astype(float))
    off_row = Sigma[0, 1] if N >= 2 else float("nan")
    off_cross = Sigma[0, N] if P >= 2 else float("nan")
    off_col = Sigma[N, N + 1] if P >= 3 else float("nan")
    return BMatrixReport(
        N=N,
        P=P,
        detB=det,
        sigma_diag_row=float(Sigma[0, 0]),
        sigma_diag_col=float(Sigma[N, N]) if P >= 2 else float("nan"),
        off_diags=(off_row, off_cross, off_col),
    )


def _check_b_matrix(max_dim: int, tol: float = 1e-9) -> LemmaCheck:
    worst = 0.0
    for N in range(2, max_dim + 1):
        for P in range(2, max_dim + 1):
            B = b_matrix(N, P)
            det = _bareiss_det(B)
            expected = N ** (P - 1) * P ** (N - 1)
            if det != expected:
                return LemmaCheck(
                    "precision-matrix determinant",
                    False,
                    f"det mismatch at (N,P)=({N},{P}): {det} != {expected}",
                )
            Sigma = 2 * np.linalg.inv(B.astype(float))
            d = N + P - 1
            want = np.empty((d, d))
            want[:N, :N] = 2 * (P - 1) / (N * P)
            np.fill_diagonal(want[:N, :N], 2 * (N + P - 1) / (N * P))
            want[:N, N:] = -2 / N
            want[N:, :N] = -2 / N
            want[N:, N:] = 2 / N
            np.fill_diagonal(want[N:, N:], 4 / N)
            worst = max(worst, float(np.abs(Sigma - want).max()))
    if worst > tol:
        return LemmaCheck(
            "precision-matrix inverse entries",
            False,
            f"max covariance residual {worst:.3e} > {tol}",
        )
    return LemmaCheck(
        "precision-matrix determinant and inverse",
        True,
        f"all (N,P) up to {max_dim}; max covariance residual {worst:.3e}",
    )


def _check_quadratic_bound(points: int = 10_000) -> LemmaCheck:
    t = np.linspace(-math.pi, math.pi, points)
    h = 4 * np.cos(t / 2) ** 2
    with np.errstate(divide="ignore"):
        lhs = np.log(h / 4)
    ok = np.all(lhs <= -(t**2) / 4 + 1e-12)
    worst = float(np.max(lhs + t**2 / 4))
    return LemmaCheck(
        "quadratic cosine bound",
        bool(ok),
        f"max of ln(h/4) + t^2/4 over {points} grid points: {worst:.3e}",
    )


def _check_ratio_approx(tol: float = 0.05) -> LemmaCheck:
    # second-order expansion of ln((1/2+x)/(1/2-x)) is 4x + O(x^3), so the
    # ratio is ~ sqrt(eps/c)/4
    worst = 0.0
    for c in (math.log(2), 1.0):
        for eps in (1e-3, 1e-4, 1e-5, 1e-6):
            x = math.sqrt(c * eps)
            exact = eps / math.log((0.5 + x) / (0.5 - x))
            approx = 0.25 * math.sqrt(eps / c)
            worst = max(worst, abs(exact - approx) / approx)
    passed = worst <= tol
    return LemmaCheck(
        "ratio approximation",
        passed,
        f"max relative error vs sqrt(eps/c)/4: {worst:.3%} (tolerance {tol:.0%})",
    )


def _check_fourth_moment_cov(samples: int, seed: int) -> LemmaCheck:
    rng = np.random.default_rng(seed)
    cases = [(1.0, 0.0), (1.0, 0.5), (2.0, -0.75)]
    details = []
    for var, rho in cases:
        cov = var * np.array([[1.0, rho], [rho, 1.0]])
        L = np.linalg.cholesky(cov)
        Z = rng.standard_normal((samples, 2)) @ L.T
        T1, T2 = Z[:, 0] ** 4, Z[:, 1] ** 4
        # batch means give a cheap standard error for the covariance estimate
        nb = 100
        size = samples // nb
        ests = [
            float(np.mean(T1[b * size : (b + 1) * size] * T2[b * size : (b + 1) * size]))
            - float(np.mean(T1[b * size : (b + 1) * size]))
            * float(np.mean(T2[b * size : (b + 1) * size]))
            for b in range(nb)
        ]
        est = float(np.mean(ests))
        se = float(np.std(ests, ddof=1)) / math.sqrt(nb)
        want = var**4 * (72 * rho**2 + 24 * rho**4)
        z = abs(est - want) / se if se > 0 else 0.0
        details.append(f"(sigma2={var}, rho={rho}): z={z:.2f}")
        if z > 3:
            return LemmaCheck(
                "fourth-moment Gaussian covariance",
                False,
                f"estimate {est:.4f} vs {want:.4f} is {z:.2f} SEs off at "
                f"(sigma2={var}, rho={rho})",
            )
    return LemmaCheck("fourth-moment Gaussian covariance", True, "; ".join(details))


def verify_lemmas(max_dim: int = 6, mc_samples: int = 10**6, seed: int = 0) -> VerificationReport:
    """Numerically verify the auxiliary identities behind the expansion."""
    if max_dim < 2:
        raise ValueError("max_dim must be >= 2")
    checks = [
        _check_b_matrix(max_dim),
        _check_quadratic_bound(),
        _check_ratio_approx(),
        _check_fourth_moment_cov(mc_samples, seed),
    ]
    return VerificationReport(checks=checks)
