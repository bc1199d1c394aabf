"""Decision criteria for which single-constraint family is larger.

The exact criterion compares |A1| and |A2| through an integer comparison
of binomial products; the approximate criterion compares the mean row
entropy against the mean locus entropy minus the mean dosage fraction.
The grid sweep reproduces the agreement heat map, and the volume
estimator checks the error-fraction bound of the entropy approximation.
All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .asymptotics import log2_binom
from .margins import MarginSpec, NormalizedMargins, normalize, validate

SIMPLEX_TOL = 1e-12

# heat-map binning of the (abar, f) domain [0,1] x [0,0.5]
GRID_BINS_X = 60
GRID_BINS_Y = 60


@dataclass(frozen=True)
class EntropySummary:
    """Mean row entropy H1, mean locus entropy H2, mean dosage fraction sum
    fbar, and the decision score H1 - H2 + fbar."""

    H1: float
    H2: float
    fbar: float
    score: float


@dataclass(frozen=True)
class CriterionReport:
    exact_decision: bool
    approx_decision: bool
    agree: bool
    score: float
    margins: NormalizedMargins


def shannon_entropy(probs: Sequence[float]) -> float:
    """Shannon entropy in bits of a probability vector, with 0 log(1/0) = 0."""
    probs = list(probs)
    if any(p < 0 for p in probs):
        raise ValueError("probabilities must be non-negative")
    if abs(sum(probs) - 1.0) > SIMPLEX_TOL:
        raise ValueError(f"probabilities must sum to 1, got {sum(probs)}")
    return -sum(p * math.log2(p) for p in probs if p > 0)


def theta(f0: float, f1: float) -> float:
    """Locus entropy minus dosage fraction: H(f0, f1, 1-f0-f1) - (f0 + f1).

    Strictly concave on {f0, f1 >= 0, f0 + f1 <= 1}, maximum 1 at (1/4, 1/4).
    """
    if f0 < 0 or f1 < 0 or f0 + f1 > 1 + SIMPLEX_TOL:
        raise ValueError(f"({f0}, {f1}) outside the admissible triangle")
    rest = max(0.0, 1.0 - f0 - f1)
    return shannon_entropy((f0, f1, rest)) - (f0 + f1)


def entropy_summary(nm: NormalizedMargins) -> EntropySummary:
    H1 = sum(shannon_entropy((ab, 1 - ab)) for ab in nm.abar) / len(nm.abar)
    H2 = sum(
        shannon_entropy((f0, f1, max(0.0, 1 - f0 - f1)))
        for f0, f1 in zip(nm.f0, nm.f1)
    ) / len(nm.f0)
    fbar = sum(f0 + f1 for f0, f1 in zip(nm.f0, nm.f1)) / len(nm.f0)
    return EntropySummary(H1=H1, H2=H2, fbar=fbar, score=H1 - H2 + fbar)


def exact_criterion(spec: MarginSpec) -> CriterionReport:
    """Decide |A1| > |A2| exactly, and report the entropy approximation.

    The exact decision compares prod_n C(2P, a_n) * 2^(sum phi) against
    prod_p C(2N, phi0+phi1) * C(phi0+phi1, phi1) as big integers; no
    floating point is involved.
    """
    validate(spec)
    N, P = spec.N, spec.P
    lhs = math.prod(math.comb(2 * P, an) for an in spec.a)
    lhs <<= sum(spec.phi0) + sum(spec.phi1)
    rhs = 1
    for p0, p1 in zip(spec.phi0, spec.phi1):
        s = p0 + p1
        rhs *= math.comb(2 * N, s) * math.comb(s, p1)
    exact = lhs > rhs
    nm = normalize(spec)
    summary = entropy_summary(nm)
    approx = summary.score > 0
    return CriterionReport(
        exact_decision=exact,
        approx_decision=approx,
        agree=exact == approx,
        score=summary.score,
        margins=nm,
    )


def _binary_entropy(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    mask = (x > 0) & (x < 1)
    xm = x[mask]
    out[mask] = -(xm * np.log2(xm) + (1 - xm) * np.log2(1 - xm))
    return out


def _log2_central_range(n: int) -> np.ndarray:
    """log2 C(n, k) for k = 0..n, from the exact big-integer recurrence."""
    from .bincount import log2_int

    vals = np.empty(n + 1)
    binom = 1
    for k in range(n + 1):
        vals[k] = log2_int(binom)
        binom = binom * (n - k) // (k + 1)
    return vals


def _grid_decisions(N: int, P: int):
    """Exact and approximate decisions over the semi-regular (abar, f) grid.

    abar ranges over i/(2P) for i = 1..2P-1 and f over j/(2N) for
    j = 1..N-1, with f0 = f1 = f.  Returns (abar, f, exact, approx).
    """
    if N < 2 or P < 2:
        raise ValueError("grid sweep requires N, P >= 2")
    i = np.arange(1, 2 * P)
    j = np.arange(1, N)
    abar = i / (2 * P)
    f = j / (2 * N)

    logC_2P = _log2_central_range(2 * P)
    logC_2N = _log2_central_range(2 * N)
    # per-abar and per-f halves of the exact inequality, scaled by 1/(2P)
    # and 1/(2N) respectively
    left = logC_2P[i] / (2 * P)
    right = np.array(
        [(logC_2N[2 * jj] + log2_binom(2 * jj, jj)) / (2 * N) for jj in j]
    ) - 2 * f
    exact = left[:, None] - right[None, :] > 0

    h_abar = _binary_entropy(abar)
    h_f = np.array([-2 * ff * math.log2(ff) if ff > 0 else 0.0 for ff in f])
    rest = 1 - 2 * f
    h_f = h_f + np.where(rest > 0, -rest * np.log2(np.where(rest > 0, rest, 1.0)), 0.0)
    approx = h_abar[:, None] - (h_f - 2 * f)[None, :] > 0
    return abar, f, exact, approx


def semiregular_grid_agreement(N: int, P: int) -> Tuple[float, List[Tuple[float, float]]]:
    """Fraction of grid points where the entropy criterion matches the exact
    one, plus the (abar, f) bin corners containing disagreements."""
    abar, f, exact, approx = _grid_decisions(N, P)
    agree = exact == approx
    fraction = float(agree.mean())
    xbin = np.minimum((abar * GRID_BINS_X).astype(int), GRID_BINS_X - 1)
    ybin = np.minimum((f / 0.5 * GRID_BINS_Y).astype(int), GRID_BINS_Y - 1)
    cells = set()
    bad_i, bad_j = np.nonzero(~agree)
    for bi, bj in zip(bad_i, bad_j):
        cells.add((xbin[bi] / GRID_BINS_X, ybin[bj] * 0.5 / GRID_BINS_Y))
    return fraction, sorted(cells)


@dataclass(frozen=True)
class GridBin:
    abar_lo: float
    f_lo: float
    fraction_a1_larger: float
    approx_pred: float
    exact_frac: float
    disagree_frac: float


def grid_heatmap(N: int, P: int) -> Tuple[float, List[GridBin]]:
    """Binned agreement data for the heat map: one row per bin of the
    [0,1] x [0,0.5] domain (GRID_BINS_X * GRID_BINS_Y rows)."""
    abar, f, exact, approx = _grid_decisions(N, P)
    agree = exact == approx
    xbin = np.minimum((abar * GRID_BINS_X).astype(int), GRID_BINS_X - 1)
    ybin = np.minimum((f / 0.5 * GRID_BINS_Y).astype(int), GRID_BINS_Y - 1)

    shape = (GRID_BINS_X, GRID_BINS_Y)
    tot = np.zeros(shape)
    ex = np.zeros(shape)
    ap = np.zeros(shape)
    dis = np.zeros(shape)
    np.add.at(tot, (xbin[:, None], ybin[None, :]), np.ones_like(exact, dtype=float))
    np.add.at(ex, (xbin[:, None], ybin[None, :]), exact.astype(float))
    np.add.at(ap, (xbin[:, None], ybin[None, :]), approx.astype(float))
    np.add.at(dis, (xbin[:, None], ybin[None, :]), (~agree).astype(float))

    bins = []
    for bx in range(GRID_BINS_X):
        for by in range(GRID_BINS_Y):
            n = tot[bx, by]
            bins.append(
                GridBin(
                    abar_lo=bx / GRID_BINS_X,
                    f_lo=by * 0.5 / GRID_BINS_Y,
                    fraction_a1_larger=ex[bx, by] / n if n else 0.0,
                    approx_pred=ap[bx, by] / n if n else 0.0,
                    exact_frac=ex[bx, by] / n if n else 0.0,
                    disagree_frac=dis[bx, by] / n if n else 0.0,
                )
            )
    fraction = float(agree.mean())
    return fraction, bins


def error_fraction_bound(N: int, P: int) -> float:
    """Upper bound on the volume fraction where the entropy criterion can
    misclassify, decaying like sqrt(log N / N + log P / P)."""
    if N < 2 or P < 2:
        raise ValueError("bound requires N, P >= 2")
    t = math.log2(N) / N + math.log2(P) / P
    K1 = 2 * math.sqrt(math.log(2))
    K2 = 2 * math.log(2) ** 1.5 * (2 * math.pi + 0.5)
    return K1 * math.sqrt(t) + K2 * t**1.5


def estimate_volume_fraction(N: int, P: int, samples: int, seed: int) -> float:
    """Monte Carlo estimate of the fraction of (abar, f0, f1) whose entropy
    score falls in the near-tie window (-t, t], t = log N/N + log P/P.

    Points are uniform over the half-cube f0 + f1 < 1 (rejection from the
    unit cube); deterministic given the seed.
    """
    if samples < 10**4:
        raise ValueError("samples must be >= 10^4")
    rng = np.random.default_rng(seed)
    t = math.log2(N) / N + math.log2(P) / P
    hits = 0
    have = 0
    while have < samples:
        batch = max(10**4, min(samples - have, 10**6)) * 3
        draw = rng.random((batch, 3))
        keep = draw[:, 1] + draw[:, 2] < 1
        pts = draw[keep][: samples - have]
        have += len(pts)
        ab, f0, f1 = pts[:, 0], pts[:, 1], pts[:, 2]
        rest = 1 - f0 - f1
        with np.errstate(divide="ignore", invalid="ignore"):
            h2 = -(
                np.where(f0 > 0, f0 * np.log2(f0), 0.0)
                + np.where(f1 > 0, f1 * np.log2(f1), 0.0)
                + np.where(rest > 0, rest * np.log2(np.where(rest > 0, rest, 1.0)), 0.0)
            )
        score = _binary_entropy(ab) - h2 + (f0 + f1)
        hits += int(((score > -t) & (score <= t)).sum())
    return hits / samples
