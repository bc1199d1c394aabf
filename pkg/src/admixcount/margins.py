"""Constraint data shared by every counting routine.

A margin specification bundles the dimensions (N individuals, P paired
loci) with three integer vectors: per-row ancestry tallies ``a`` and the
per-locus dosage pair ``(phi0, phi1)``.  All downstream modules consume a
validated :class:`MarginSpec`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np


class MarginError(ValueError):
    """Raised when a margin specification violates its invariants."""


@dataclass(frozen=True)
class Dims:
    """Array dimensions: N rows (individuals), P paired columns (loci)."""

    N: int
    P: int

    def __post_init__(self):
        if self.N < 1:
            raise MarginError(f"N must be >= 1, got {self.N}")
        if self.P < 1:
            raise MarginError(f"P must be >= 1, got {self.P}")


@dataclass(frozen=True)
class MarginSpec:
    """The constraint triple (a, phi0, phi1) with its dimensions.

    ``a`` has length N with entries in [0, 2P]; ``phi0`` and ``phi1`` have
    length P with non-negative entries satisfying phi0[p] + phi1[p] <= 2N.
    """

    dims: Dims
    a: tuple
    phi0: tuple
    phi1: tuple

    @property
    def N(self) -> int:
        return self.dims.N

    @property
    def P(self) -> int:
        return self.dims.P

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.N,
                "P": self.P,
                "a": list(self.a),
                "phi0": list(self.phi0),
                "phi1": list(self.phi1),
            }
        )


@dataclass(frozen=True)
class NormalizedMargins:
    """Margins scaled into [0, 1]: abar = a/(2P), f0 = phi0/(2N), f1 = phi1/(2N)."""

    abar: tuple
    f0: tuple
    f1: tuple


@dataclass(frozen=True)
class AdmixedArray:
    """A concrete pair [A, X] of N x 2P binary matrices.

    Column p and column P+p together form locus p.  A carries local
    ancestry, X carries allele dosage.
    """

    A: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=np.int8)
        X = np.asarray(self.X, dtype=np.int8)
        if A.ndim != 2 or A.shape != X.shape:
            raise MarginError(f"A and X must share a 2-D shape, got {A.shape} and {X.shape}")
        if A.shape[1] % 2 != 0:
            raise MarginError(f"number of columns must be even (2P), got {A.shape[1]}")
        for name, M in (("A", A), ("X", X)):
            if not np.isin(M, (0, 1)).all():
                raise MarginError(f"{name} must be binary")
        A.flags.writeable = False
        X.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "X", X)

    @property
    def N(self) -> int:
        return self.A.shape[0]

    @property
    def P(self) -> int:
        return self.A.shape[1] // 2


class ArrayStats(NamedTuple):
    """Observed margins of one admixed array.

    ``f0``/``f1`` are the dosage fractions with ``None`` marking an
    undefined ratio (zero ancestry cells at that locus); the integer
    dosages ``phi0``/``phi1`` are always well defined.
    """

    row_tallies: tuple
    phi0: tuple
    phi1: tuple
    f0: tuple
    f1: tuple


def make_spec(N: int, P: int, a: Sequence[int], phi0: Sequence[int], phi1: Sequence[int]) -> MarginSpec:
    """Build and validate a MarginSpec from plain sequences."""
    spec = MarginSpec(
        dims=Dims(N, P),
        a=tuple(int(v) for v in a),
        phi0=tuple(int(v) for v in phi0),
        phi1=tuple(int(v) for v in phi1),
    )
    return validate(spec)


def validate(spec: MarginSpec) -> MarginSpec:
    """Return ``spec`` unchanged if all invariants hold, else raise MarginError."""
    N, P = spec.N, spec.P
    if len(spec.a) != N:
        raise MarginError(f"a has length {len(spec.a)}, expected N={N}")
    if len(spec.phi0) != P:
        raise MarginError(f"phi0 has length {len(spec.phi0)}, expected P={P}")
    if len(spec.phi1) != P:
        raise MarginError(f"phi1 has length {len(spec.phi1)}, expected P={P}")
    for n, an in enumerate(spec.a, start=1):
        if not 0 <= an <= 2 * P:
            raise MarginError(f"a_{n} = {an} outside [0, 2P] = [0, {2 * P}]")
    for p, (p0, p1) in enumerate(zip(spec.phi0, spec.phi1), start=1):
        if p0 < 0:
            raise MarginError(f"phi_{{{p},0}} = {p0} is negative")
        if p1 < 0:
            raise MarginError(f"phi_{{{p},1}} = {p1} is negative")
        if p0 + p1 > 2 * N:
            raise MarginError(f"phi_{{{p},0}}+phi_{{{p},1}} = {p0 + p1} > 2N = {2 * N}")
    return spec


def normalize(spec: MarginSpec) -> NormalizedMargins:
    """Scale the integer margins into [0, 1]."""
    validate(spec)
    N, P = spec.N, spec.P
    return NormalizedMargins(
        abar=tuple(an / (2 * P) for an in spec.a),
        f0=tuple(p0 / (2 * N) for p0 in spec.phi0),
        f1=tuple(p1 / (2 * N) for p1 in spec.phi1),
    )


def semiregular(N: int, P: int, a: int, phi0: int, phi1: int) -> MarginSpec:
    """Broadcast scalar margins to constant vectors."""
    return make_spec(N, P, [a] * N, [phi0] * P, [phi1] * P)


def array_statistics(arr: AdmixedArray) -> ArrayStats:
    """Row tallies, per-locus dosages and dosage fractions of one array."""
    A, X = arr.A, arr.X
    P = arr.P
    row_tallies = tuple(int(v) for v in A.sum(axis=1))
    Aleft, Aright = A[:, :P], A[:, P:]
    Xleft, Xright = X[:, :P], X[:, P:]
    phi1 = (Aleft * Xleft + Aright * Xright).sum(axis=0)
    phi0 = ((1 - Aleft) * Xleft + (1 - Aright) * Xright).sum(axis=0)
    ones = (Aleft + Aright).sum(axis=0)
    zeros = 2 * arr.N - ones
    f1 = tuple(int(phi1[p]) / int(ones[p]) if ones[p] > 0 else None for p in range(P))
    f0 = tuple(int(phi0[p]) / int(zeros[p]) if zeros[p] > 0 else None for p in range(P))
    return ArrayStats(
        row_tallies=row_tallies,
        phi0=tuple(int(v) for v in phi0),
        phi1=tuple(int(v) for v in phi1),
        f0=f0,
        f1=f1,
    )


def spec_of_array(arr: AdmixedArray) -> MarginSpec:
    """The margin spec that the given array satisfies exactly."""
    stats = array_statistics(arr)
    return make_spec(arr.N, arr.P, stats.row_tallies, stats.phi0, stats.phi1)


def load_spec(source: Union[str, dict]) -> MarginSpec:
    """Parse a constraint document (JSON text, path contents, or dict).

    Accepts the full form {"N","P","a":[...],"phi0":[...],"phi1":[...]}
    and the semiregular shorthand where a/phi0/phi1 are scalars.
    """
    if isinstance(source, dict):
        doc = source
    else:
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise MarginError(f"invalid constraint JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MarginError("constraint document must be a JSON object")
    try:
        N = int(doc["N"])
        P = int(doc["P"])
        a, phi0, phi1 = doc["a"], doc["phi0"], doc["phi1"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MarginError(f"constraint document missing or malformed field: {exc}") from exc
    if all(isinstance(v, int) for v in (a, phi0, phi1)):
        return semiregular(N, P, a, phi0, phi1)
    if not all(isinstance(v, list) for v in (a, phi0, phi1)):
        raise MarginError("a, phi0, phi1 must be all scalars (semiregular) or all lists")
    return make_spec(N, P, a, phi0, phi1)
