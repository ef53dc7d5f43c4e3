"""Coordinate representations of SO(3)-invariant bipartite states.

An invariant state on C^n1 x C^n2 (n1 <= n2, spins j_i = (n_i - 1)/2) is

    rho = (n1*n2)**(-1/2) * sum_J alpha_J / sqrt(2J+1) * P_J,

with P_J the projector onto total angular momentum J, J running from
j2 - j1 to j1 + j2.  The same state expands over the invariant tensor
operators Q_K (K = 0 .. n1-1) with coordinates beta_K; the two coordinate
vectors are related by the orthogonal matrix

    L[K, J] = sqrt((2K+1)(2J+1)) * (-1)**(j1+j2+J) * {j1 j2 J; j2 j1 K}.

alpha is indexed by increasing J, beta by K = 0 .. n1-1.  rho is a state
iff alpha_J >= 0 and sum_J sqrt((2J+1)/(n1*n2)) alpha_J = 1; in beta
coordinates normalization reads beta_0 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .halfint import HalfInt, halfint, halfint_range
from .radical import ExactRadical
from .wigner import six_j

__all__ = [
    "SpinPair",
    "AlphaVector",
    "BetaVector",
    "LMatrix",
    "StateCheck",
    "build_l_matrix",
    "explicit_l_matrix_4xn",
    "alpha_to_beta",
    "beta_to_alpha",
    "check_state",
    "spectrum_from_alpha",
    "maximally_mixed",
    "vector_from_json_dict",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpinPair:
    """The bipartite system (n1, n2) with n1 <= n2."""

    n1: int
    n2: int

    def __post_init__(self):
        if not (isinstance(self.n1, int) and isinstance(self.n2, int)):
            raise TypeError("dimensions must be ints")
        if self.n1 < 2:
            raise ValueError(f"n1 must be >= 2, got {self.n1}")
        if self.n2 < self.n1:
            raise ValueError(f"need n2 >= n1, got ({self.n1}, {self.n2})")

    @property
    def j1(self) -> HalfInt:
        return HalfInt(self.n1 - 1)

    @property
    def j2(self) -> HalfInt:
        return HalfInt(self.n2 - 1)

    @property
    def dim(self) -> int:
        return self.n1 * self.n2

    @property
    def breuer_applicable(self) -> bool:
        """Whether the Breuer map is a positive map on this system (even n1 >= 4)."""
        return self.n1 % 2 == 0 and self.n1 >= 4

    def j_values(self) -> tuple[HalfInt, ...]:
        """Total angular momenta j2-j1 .. j1+j2, ascending (n1 values)."""
        return halfint_range(self.j2 - self.j1, self.j1 + self.j2)

    def k_values(self) -> tuple[int, ...]:
        """Tensor ranks 0 .. n1-1."""
        return tuple(range(self.n1))

    def norm_weights(self) -> np.ndarray:
        """Weights w_J = sqrt((2J+1)/(n1*n2)); a state has w . alpha = 1."""
        return np.array([
            np.sqrt((j.twice + 1) / self.dim) for j in self.j_values()
        ])


def _coord_tuple(coords) -> tuple[float, ...]:
    return tuple(float(c) for c in coords)


@dataclass(frozen=True)
class AlphaVector:
    """Coordinates over the projectors P_J, indexed by increasing J."""

    system: SpinPair
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _coord_tuple(self.coords))
        if len(self.coords) != self.system.n1:
            raise ValueError(
                f"alpha for {self.system} needs {self.system.n1} coordinates, "
                f"got {len(self.coords)}"
            )

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)

    def labeled(self) -> tuple[tuple[str, float], ...]:
        """(J label, value) pairs, e.g. ('J=3/2', 0.25)."""
        return tuple(
            (f"J={j}", c) for j, c in zip(self.system.j_values(), self.coords)
        )

    def to_json_dict(self) -> dict:
        return {
            "system": [self.system.n1, self.system.n2],
            "basis": "alpha",
            "coords": list(self.coords),
        }


@dataclass(frozen=True)
class BetaVector:
    """Coordinates over the invariant tensor operators Q_K, K = 0 .. n1-1."""

    system: SpinPair
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _coord_tuple(self.coords))
        if len(self.coords) != self.system.n1:
            raise ValueError(
                f"beta for {self.system} needs {self.system.n1} coordinates, "
                f"got {len(self.coords)}"
            )

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)

    def labeled(self) -> tuple[tuple[str, float], ...]:
        return tuple((f"K={k}", c) for k, c in enumerate(self.coords))

    def to_json_dict(self) -> dict:
        return {
            "system": [self.system.n1, self.system.n2],
            "basis": "beta",
            "coords": list(self.coords),
        }


def vector_from_json_dict(data: dict) -> AlphaVector | BetaVector:
    """Inverse of AlphaVector/BetaVector.to_json_dict."""
    system = SpinPair(*data["system"])
    basis = data["basis"]
    if basis == "alpha":
        return AlphaVector(system, data["coords"])
    if basis == "beta":
        return BetaVector(system, data["coords"])
    raise ValueError(f"unknown basis {basis!r}")


@dataclass(frozen=True)
class LMatrix:
    """The orthogonal alpha -> beta basis change, rows K, columns ascending J.

    Entries are carried both as floats (for numerics) and as ExactRadical
    (for the closed-form geometry checks, which need exact values).
    """

    system: SpinPair
    exact: tuple[tuple[ExactRadical, ...], ...]

    @property
    def values(self) -> np.ndarray:
        return _l_matrix_floats(self.system)

    def row(self, k: int) -> tuple[ExactRadical, ...]:
        return self.exact[k]


@lru_cache(maxsize=None)
def build_l_matrix(system: SpinPair) -> LMatrix:
    """L[K, J] = sqrt((2K+1)(2J+1)) (-1)**(j1+j2+J) {j1 j2 J; j2 j1 K}."""
    j1, j2 = system.j1, system.j2
    rows = []
    for k in system.k_values():
        row = []
        for j in system.j_values():
            phase = -1 if ((j1.twice + j2.twice + j.twice) // 2) % 2 else 1
            entry = six_j(j1, j2, j, j2, j1, k).scale(phase) * ExactRadical.sqrt(
                (2 * k + 1) * (j.twice + 1)
            )
            row.append(entry)
        rows.append(tuple(row))
    return LMatrix(system, tuple(rows))


@lru_cache(maxsize=None)
def _l_matrix_floats(system: SpinPair) -> np.ndarray:
    exact = build_l_matrix(system).exact
    arr = np.array([[float(e) for e in row] for row in exact])
    arr.flags.writeable = False
    return arr


def explicit_l_matrix_4xn(n: int) -> LMatrix:
    """The 4 x N basis-change matrix in closed form (j1 = 3/2, N = n2 >= 4).

    Spelled out entry by entry as explicit radicals in N; serves as an
    independent cross-check of :func:`build_l_matrix` on 4 x N systems.
    """
    if n < 4:
        raise ValueError(f"explicit 4xN matrix needs N >= 4, got {n}")
    half = Fraction(1, 2)
    f = Fraction

    def ent(prefactor: Fraction, radicand: Fraction) -> ExactRadical:
        return ExactRadical.sqrt(radicand).scale(prefactor * half)

    rows = (
        (
            ent(f(1), f(n - 3, n)),
            ent(f(1), f(n - 1, n)),
            ent(f(1), f(n + 1, n)),
            ent(f(1), f(n + 3, n)),
        ),
        (
            ent(f(-3), f((n - 3) * (n + 1), 5 * (n - 1) * n)),
            ent(f(-(n + 7)), f(1, 5 * n * (n + 1))),
            ent(f(n - 7), f(1, 5 * n * (n - 1))),
            ent(f(3), f((n + 3) * (n - 1), 5 * (n + 1) * n)),
        ),
        (
            ent(f(1), f((n - 3) * (n + 1) * (n + 2), n * (n - 1) * (n - 2))),
            ent(f(-(n - 5)), f(n + 2, (n - 2) * n * (n + 1))),
            ent(f(-(n + 5)), f(n - 2, (n - 1) * n * (n + 2))),
            ent(f(1), f((n - 1) * (n - 2) * (n + 3), n * (n + 1) * (n + 2))),
        ),
        (
            ent(f(-1), f((n + 1) * (n + 2) * (n + 3), 5 * (n - 2) * (n - 1) * n)),
            ent(f(3), f((n * n - 9) * (n + 2), 5 * (n - 2) * n * (n + 1))),
            ent(f(-3), f((n * n - 9) * (n - 2), 5 * (n - 1) * n * (n + 2))),
            ent(f(1), f((n - 3) * (n - 2) * (n - 1), 5 * n * (n + 1) * (n + 2))),
        ),
    )
    return LMatrix(SpinPair(4, n), rows)


def alpha_to_beta(alpha: AlphaVector) -> BetaVector:
    """beta = L alpha.  Normalized alpha maps to beta with beta_0 = 1."""
    l = _l_matrix_floats(alpha.system)
    return BetaVector(alpha.system, l @ alpha.as_array())


def beta_to_alpha(beta: BetaVector) -> AlphaVector:
    """alpha = L^T beta (L is orthogonal)."""
    l = _l_matrix_floats(beta.system)
    return AlphaVector(beta.system, l.T @ beta.as_array())


@dataclass(frozen=True)
class StateCheck:
    normalized: bool
    positive: bool

    @property
    def is_state(self) -> bool:
        return self.normalized and self.positive


def check_state(alpha: AlphaVector, tol: float = DEFAULT_TOL) -> StateCheck:
    """Whether alpha is normalized (w . alpha = 1) and entrywise nonnegative."""
    w = alpha.system.norm_weights()
    a = alpha.as_array()
    return StateCheck(
        normalized=abs(float(w @ a) - 1.0) <= tol,
        positive=bool(a.min() >= -tol),
    )


def spectrum_from_alpha(alpha: AlphaVector) -> tuple[tuple[float, int], ...]:
    """(eigenvalue, multiplicity) per J block, ascending J.

    The block for total momentum J contributes the eigenvalue
    alpha_J / sqrt(n1*n2*(2J+1)) with multiplicity 2J+1; multiplicities
    sum to n1*n2.
    """
    sys_ = alpha.system
    out = []
    for j, a in zip(sys_.j_values(), alpha.coords):
        mult = j.twice + 1
        out.append((a / np.sqrt(sys_.dim * mult), mult))
    return tuple(out)


def maximally_mixed(system: SpinPair) -> AlphaVector:
    """alpha of the maximally mixed state 1/(n1*n2): alpha_J = w_J."""
    return AlphaVector(system, system.norm_weights())
