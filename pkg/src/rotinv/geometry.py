"""Closed-form state-space geometry of invariant states.

For 4 x N the invariant states form a tetrahedron ABCD in the coordinates
(beta_1, beta_2, beta_3); its image under partial time reversal is
A'B'C'D', the PPT states are the intersection DD'EE'FF'GG', and DD'EE' is
the minimal set known to be separable.  Every labelled point has
coordinates of the form (rational) * r_K with the shared radial units

    r_1 = sqrt((N-1) / (5(N+1))),
    r_2 = sqrt((N-1)(N-2) / ((N+1)(N+2))),
    r_3 = sqrt((N-1)(N-2)(N-3) / (5(N+1)(N+2)(N+3))),

so all point constructions and hull tests here are exact.

For general even n1 the theta_1-invariant states form a polytope in the
even coordinates (beta_2, ..., beta_{n1-2}) bounded by the hyperplanes
alpha_J = 0, and the Gamma hyperplane (whose Breuer image lies on the face
alpha_{(n2-n1)/2} = 0) separates the detected bound-entangled region.  The
point D~'' (the symmetrized extreme state of maximal total momentum) lies
on Gamma and strictly inside the polytope, which forces the detected
region to be nonempty for every even n1 >= 4, n2 >= n1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from .maps import breuer_detects, partial_time_reversal
from .radical import ExactRadical
from .states import (
    DEFAULT_TOL,
    AlphaVector,
    BetaVector,
    SpinPair,
    build_l_matrix,
    _l_matrix_floats,
)
from .wigner import six_j

__all__ = [
    "NamedPoint",
    "Hyperplane",
    "alpha_extreme_points",
    "vertices_4xn",
    "intersection_points_4xn",
    "named_points_4xn",
    "gamma_hyperplane",
    "d_tilde_point",
    "theta1_polytope",
    "segment_state_4xn",
    "segment_detection_threshold",
    "minimal_separable_membership_4xn",
    "exact_hull_membership_4xn",
    "polytope_bounding_box",
    "be_region_fraction",
    "find_detected_invariant_state",
    "sweep_rows",
]


@dataclass(frozen=True)
class NamedPoint:
    """A labelled invariant state with exact tensor coordinates."""

    label: str
    beta: BetaVector
    exact: tuple[ExactRadical, ...]

    @property
    def system(self) -> SpinPair:
        return self.beta.system

    def flipped(self, label: str) -> "NamedPoint":
        """The partial-time-reversal image (odd-K signs change)."""
        exact = tuple(-e if k % 2 else e for k, e in enumerate(self.exact))
        return NamedPoint(label, partial_time_reversal(self.beta), exact)


@dataclass(frozen=True)
class Hyperplane:
    """Affine functional constant + sum_K coeff_{2K} beta_{2K} over even K >= 2."""

    system: SpinPair
    label: str
    constant: float
    coeffs: tuple[float, ...]  # for beta_2, beta_4, ..., beta_{n1-2}
    exact_constant: ExactRadical | None = None
    exact_coeffs: tuple[ExactRadical, ...] | None = None

    def __post_init__(self):
        if len(self.coeffs) != (self.system.n1 - 2) // 2:
            raise ValueError("one coefficient per even coordinate beta_2..beta_{n1-2}")
        if not any(self.coeffs):
            raise ValueError("hyperplane must have a nonzero coefficient")

    def evaluate_even(self, x) -> np.ndarray | float:
        """Evaluate on even coordinates (beta_2, ..., beta_{n1-2})."""
        x = np.asarray(x, dtype=float)
        return self.constant + x @ np.array(self.coeffs)

    def evaluate(self, beta: BetaVector) -> float:
        return float(self.evaluate_even(beta.coords[2::2]))


def _even_count(system: SpinPair) -> int:
    return (system.n1 - 2) // 2


def _require_even(system: SpinPair, what: str):
    if system.n1 % 2 or system.n1 < 4:
        raise ValueError(f"{what} needs an even n1 >= 4, got n1 = {system.n1}")


# ---------------------------------------------------------------------------
# extreme points and 4 x N labelled geometry
# ---------------------------------------------------------------------------

def alpha_extreme_points(system: SpinPair) -> tuple[AlphaVector, ...]:
    """The n1 extreme invariant states: one projector each, ascending J.

    The point for total momentum J has alpha_J = sqrt(n1 n2 / (2J+1)) and
    zeros elsewhere.
    """
    points = []
    for idx, j in enumerate(system.j_values()):
        coords = [0.0] * system.n1
        coords[idx] = float(ExactRadical.sqrt(Fraction(system.dim, j.twice + 1)))
        points.append(AlphaVector(system, coords))
    return tuple(points)


@lru_cache(maxsize=None)
def _radial_units(n: int) -> tuple[ExactRadical, ExactRadical, ExactRadical]:
    return (
        ExactRadical.sqrt(Fraction(n - 1, 5 * (n + 1))),
        ExactRadical.sqrt(Fraction((n - 1) * (n - 2), (n + 1) * (n + 2))),
        ExactRadical.sqrt(Fraction((n - 1) * (n - 2) * (n - 3),
                                   5 * (n + 1) * (n + 2) * (n + 3))),
    )


def _scaled_coords(n: int) -> dict[str, tuple[Fraction, Fraction, Fraction]]:
    """Closed-form coordinates of the labelled 4 x N points, in r_K units."""
    f = Fraction
    return {
        "A": (f(-3 * (n + 1), n - 1),
              f((n + 1) * (n + 2), (n - 1) * (n - 2)),
              f(-(n + 1) * (n + 2) * (n + 3), (n - 1) * (n - 2) * (n - 3))),
        "B": (f(-(n + 7), n - 1),
              f(-(n - 5) * (n + 2), (n - 1) * (n - 2)),
              f(3 * (n + 2) * (n + 3), (n - 1) * (n - 2))),
        "C": (f(n - 7, n - 1),
              f(-(n + 5), n - 1),
              f(-3 * (n + 3), n - 1)),
        "D": (f(3), f(1), f(1)),
        "E": (f(-1), f(-1), f(3)),
        "F": (f(-9 * (n - 4), 7 * n - 20),
              f(n + 4, 7 * n - 20),
              f(-(13 * n + 28), 7 * n - 20)),
        "G": (f(-3 * (n + 1), n + 5),
              f((n + 1) * (n + 2), (n - 2) * (n + 5)),
              f(-(n - 7) * (n + 1) * (n + 2), (n - 2) * (n - 3) * (n + 5))),
    }


def _named_point(n: int, label: str, scaled) -> NamedPoint:
    units = _radial_units(n)
    exact = (ExactRadical.one(),) + tuple(u.scale(c) for u, c in zip(units, scaled))
    beta = BetaVector(SpinPair(4, n), tuple(float(e) for e in exact))
    return NamedPoint(label, beta, exact)


def vertices_4xn(n: int) -> dict[str, NamedPoint]:
    """Tetrahedron vertices A, B, C, D and their time-reversal images A'..D'.

    A..D are the images of the extreme states with ascending J under the
    basis change L; each equals alpha_to_beta of the matching extreme
    point.
    """
    if n < 4:
        raise ValueError(f"4 x N geometry needs N >= 4, got {n}")
    coords = _scaled_coords(n)
    out: dict[str, NamedPoint] = {}
    for label in "ABCD":
        point = _named_point(n, label, coords[label])
        out[label] = point
        out[label + "'"] = point.flipped(label + "'")
    return out


def intersection_points_4xn(n: int) -> dict[str, NamedPoint]:
    """The PPT-set vertices E, F, G (and primes) beyond D and D'.

    Together with D, D' these are all vertices of the intersection of the
    state tetrahedron with its time-reversal image; each lies on the
    boundary of both (its alpha and the alpha of its flip have a zero).
    """
    if n < 4:
        raise ValueError(f"4 x N geometry needs N >= 4, got {n}")
    coords = _scaled_coords(n)
    out: dict[str, NamedPoint] = {}
    for label in "EFG":
        point = _named_point(n, label, coords[label])
        out[label] = point
        out[label + "'"] = point.flipped(label + "'")
    return out


def named_points_4xn(n: int) -> dict[str, NamedPoint]:
    """All labelled 4 x N points: A..D, E..G, primes, and the midpoint D''."""
    out = vertices_4xn(n)
    out.update(intersection_points_4xn(n))
    units = _radial_units(n)
    exact = (ExactRadical.one(), ExactRadical.zero(), units[1], ExactRadical.zero())
    out["D''"] = NamedPoint(
        "D''", BetaVector(SpinPair(4, n), tuple(float(e) for e in exact)), exact
    )
    return out


# ---------------------------------------------------------------------------
# hyperplanes: Gamma, gamma, and the theta_1-invariant polytope
# ---------------------------------------------------------------------------

def gamma_hyperplane(system: SpinPair) -> Hyperplane:
    """The detection boundary in the theta_1-invariant coordinates.

    Gamma(beta) = 1/sqrt(n1 n2)
                + (-1)**n2 * 2/(n1-2) * sum_K sqrt(4K+1) {j1 j2 Jmin; j2 j1 2K} beta_2K

    with Jmin = (n2-n1)/2.  The Breuer image of a point on Gamma lies on the
    state-space face alpha_Jmin = 0, so Gamma < 0 is exactly the detected
    side.  For n1 = 4 this is the plane through D'' orthogonal to the
    invariant segment E''G''.
    """
    _require_even(system, "gamma_hyperplane")
    j1, j2 = system.j1, system.j2
    jmin = j2 - j1
    sign = -1 if system.n2 % 2 else 1
    const = ExactRadical.sqrt(Fraction(1, system.dim))
    coeffs = []
    for k in range(1, _even_count(system) + 1):
        c = six_j(j1, j2, jmin, j2, j1, 2 * k) * ExactRadical.sqrt(4 * k + 1)
        coeffs.append(c.scale(Fraction(2 * sign, system.n1 - 2)))
    return Hyperplane(
        system=system,
        label="Gamma",
        constant=float(const),
        coeffs=tuple(float(c) for c in coeffs),
        exact_constant=const,
        exact_coeffs=tuple(coeffs),
    )


def d_tilde_point(system: SpinPair) -> NamedPoint:
    """The symmetrized maximal-momentum extreme state D~''.

    beta_2K = sqrt(n1 n2 (4K+1)) (-1)**n2 {j1 j2 Jmax; j2 j1 2K}; odd
    coordinates vanish.  It is an interior point of the invariant polytope
    (all alpha_J > 0) and lies on Gamma, which proves that detected bound
    entangled states exist for every even n1 >= 4.
    """
    _require_even(system, "d_tilde_point")
    j1, j2 = system.j1, system.j2
    jmax = j1 + j2
    sign = -1 if system.n2 % 2 else 1
    exact = [ExactRadical.one()]
    for k in range(1, system.n1):
        if k % 2:
            exact.append(ExactRadical.zero())
        else:
            val = six_j(j1, j2, jmax, j2, j1, k) * ExactRadical.sqrt(
                system.dim * (2 * k + 1)
            )
            exact.append(val.scale(sign))
    beta = BetaVector(system, tuple(float(e) for e in exact))
    return NamedPoint("D~''", beta, tuple(exact))


def theta1_polytope(system: SpinPair) -> tuple[Hyperplane, ...]:
    """The half-space constraints alpha_J >= 0 on the even coordinates.

    A theta_1-invariant coefficient vector (1, 0, beta_2, 0, ...) is a
    state iff every returned functional is >= 0 at (beta_2, ..., beta_{n1-2}).
    """
    _require_even(system, "theta1_polytope")
    l = build_l_matrix(system)
    planes = []
    for j_idx, j in enumerate(system.j_values()):
        const = l.exact[0][j_idx]
        coeffs = tuple(l.exact[2 * k][j_idx] for k in range(1, _even_count(system) + 1))
        planes.append(Hyperplane(
            system=system,
            label=f"alpha[J={j}]=0",
            constant=float(const),
            coeffs=tuple(float(c) for c in coeffs),
            exact_constant=const,
            exact_coeffs=coeffs,
        ))
    return tuple(planes)


# ---------------------------------------------------------------------------
# the invariant segment and detection threshold (4 x N)
# ---------------------------------------------------------------------------

def segment_detection_threshold(n: int) -> float:
    """t* = (N-2)(N+5) / ((N-1)(N+4)): the Breuer flip point on E''G''.

    The segment state at t* is the midpoint D'' of DD'.
    """
    if n < 4:
        raise ValueError(f"needs N >= 4, got {n}")
    return float(Fraction((n - 2) * (n + 5), (n - 1) * (n + 4)))


def segment_state_4xn(n: int, t: float) -> BetaVector:
    """The theta_1-invariant interpolation (1-t) E'' + t G'', t in [0, 1].

    E'' and G'' are the symmetrizations (X + theta_1 X)/2 of E and G; only
    beta_2 varies along the segment.  Detection flips exactly once, at
    :func:`segment_detection_threshold`.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    points = intersection_points_4xn(n)
    e2 = points["E"].beta.coords[2]
    g2 = points["G"].beta.coords[2]
    return BetaVector(SpinPair(4, n), (1.0, 0.0, (1.0 - t) * e2 + t * g2, 0.0))


# ---------------------------------------------------------------------------
# minimal separable set DD'EE' (4 x N)
# ---------------------------------------------------------------------------

# Barycentric solve against the hull vertices D, D', E, E' in r_K units;
# in those units the vertex matrix is independent of N and nonsingular.
_HULL_MATRIX = np.array([
    [3.0, -3.0, -1.0, 1.0],   # x1 of D, D', E, E'
    [1.0, 1.0, -1.0, -1.0],   # x2
    [1.0, -1.0, 3.0, -3.0],   # x3
    [1.0, 1.0, 1.0, 1.0],     # affine normalization
])
_HULL_MATRIX_FRACTIONS = tuple(
    tuple(Fraction(int(v)) for v in row) for row in _HULL_MATRIX
)


def minimal_separable_membership_4xn(beta: BetaVector, tol: float = DEFAULT_TOL) -> bool:
    """Whether beta lies in the tetrahedron DD'EE' (the minimal separable set).

    Solves for the unique barycentric weights over the four vertices and
    accepts weights down to -tol.  Points outside this hull are not
    thereby entangled; DD'EE' is only the region known separable in closed
    form.
    """
    sys_ = beta.system
    if sys_.n1 != 4:
        raise ValueError(f"minimal separable set is only known for n1 = 4, got {sys_.n1}")
    if abs(beta.coords[0] - 1.0) > max(tol, 1e-9):
        return False
    units = [float(u) for u in _radial_units(sys_.n2)]
    x = [beta.coords[k + 1] / units[k] for k in range(3)]
    lam = np.linalg.solve(_HULL_MATRIX, np.array(x + [1.0]))
    return bool(lam.min() >= -tol)


def exact_hull_membership_4xn(point: NamedPoint) -> bool:
    """Exact-arithmetic membership of a labelled point in DD'EE'.

    Requires coordinates that are rational multiples of the radial units
    (all labelled points are); decides boundary cases without rounding.
    """
    sys_ = point.system
    if sys_.n1 != 4:
        raise ValueError("exact hull membership is a 4 x N operation")
    units = _radial_units(sys_.n2)
    x = []
    for k in range(3):
        coord = point.exact[k + 1]
        ratio = Fraction(0) if coord.is_zero else coord.ratio(units[k])
        if ratio is None:
            raise ValueError(f"{point.label}: coordinate {k + 1} is not in the radial lattice")
        x.append(ratio)
    rhs = x + [Fraction(1)]
    # Gaussian elimination over fractions on the fixed 4x4 vertex matrix.
    a = [list(row) + [rhs[i]] for i, row in enumerate(_HULL_MATRIX_FRACTIONS)]
    for col in range(4):
        piv = next(r for r in range(col, 4) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        a[col] = [v / a[col][col] for v in a[col]]
        for r in range(4):
            if r != col and a[r][col] != 0:
                a[r] = [vr - a[r][col] * vc for vr, vc in zip(a[r], a[col])]
    return all(a[r][4] >= 0 for r in range(4))


# ---------------------------------------------------------------------------
# polytope sweeps and the bound-entangled region
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _polytope_arrays(system: SpinPair) -> tuple[np.ndarray, np.ndarray]:
    """(const, coefs) with alpha(x) = const + x @ coefs over the even coords."""
    _require_even(system, "invariant polytope")
    l = _l_matrix_floats(system)
    const = l[0, :].copy()
    coefs = np.array([l[2 * k, :] for k in range(1, _even_count(system) + 1)])
    const.flags.writeable = False
    coefs.flags.writeable = False
    return const, coefs


def _breuer_image_arrays(system: SpinPair) -> tuple[np.ndarray, np.ndarray]:
    """Affine map x -> alpha(Phi_1 image): (n1-2) L[0,:] - 2 x @ coefs."""
    const, coefs = _polytope_arrays(system)
    return (system.n1 - 2) * const, -2.0 * coefs


def polytope_bounding_box(system: SpinPair) -> tuple[tuple[float, float], ...]:
    """Per-coordinate [min, max] of the invariant polytope, via linear programs."""
    const, coefs = _polytope_arrays(system)
    dims = coefs.shape[0]
    box = []
    for k in range(dims):
        bounds = []
        for sgn in (1.0, -1.0):
            c = np.zeros(dims)
            c[k] = sgn
            res = linprog(c, A_ub=-coefs.T, b_ub=const, bounds=[(None, None)] * dims)
            if not res.success:
                raise RuntimeError(f"bounding-box LP failed for {system}: {res.message}")
            bounds.append(sgn * res.fun)
        lo, hi = min(bounds), max(bounds)
        box.append((float(lo), float(hi)))
    return tuple(box)


def _grid_points(system: SpinPair, grid: int) -> np.ndarray:
    box = polytope_bounding_box(system)
    axes = [np.linspace(lo, hi, grid) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _beta_from_even(system: SpinPair, x) -> BetaVector:
    coords = [1.0] + [0.0] * (system.n1 - 1)
    for k, val in enumerate(x):
        coords[2 * (k + 1)] = float(val)
    return BetaVector(system, coords)


def be_region_fraction(system: SpinPair, grid: int, tol: float = DEFAULT_TOL) -> float:
    """Fraction of invariant-polytope grid states detected by the Breuer map.

    Enumerates a uniform grid over the polytope's bounding box, keeps the
    points inside the polytope and returns the detected share.
    Deterministic for a fixed grid.
    """
    if system.n1 not in (4, 6):
        raise ValueError(f"region sweep supports n1 in (4, 6), got {system.n1}")
    if grid < 10:
        raise ValueError(f"grid must be >= 10, got {grid}")
    pts = _grid_points(system, grid)
    const, coefs = _polytope_arrays(system)
    inside = (const + pts @ coefs).min(axis=1) >= -tol
    img_const, img_coefs = _breuer_image_arrays(system)
    detected = (img_const + pts @ img_coefs).min(axis=1) < -tol
    n_inside = int(inside.sum())
    if n_inside == 0:
        raise RuntimeError(f"empty polytope grid for {system}; refine the grid")
    return float((inside & detected).sum() / n_inside)


def find_detected_invariant_state(system: SpinPair, grid: int = 64,
                                  tol: float = DEFAULT_TOL) -> BetaVector | None:
    """A theta_1-invariant PPT state strictly beyond Gamma with detection.

    Walks a grid along the inward ray from D~'' down the Gamma normal;
    every step lands strictly on the detected side, so existence only
    requires one grid point inside the polytope.  Since D~'' is interior,
    the first step already qualifies for any reasonable grid.
    """
    _require_even(system, "detection search")
    const, coefs = _polytope_arrays(system)
    d_even = np.array(d_tilde_point(system).beta.coords[2::2])
    gamma = gamma_hyperplane(system)
    normal = np.array(gamma.coeffs)
    direction = -normal / np.linalg.norm(normal)  # Gamma decreases along this ray

    alpha_at_d = const + d_even @ coefs
    rates = -(direction @ coefs)  # decrease rate of each alpha along the ray
    positive = rates > 1e-15
    if not positive.any():
        return None
    s_max = float((alpha_at_d[positive] / rates[positive]).min())
    for s in np.linspace(0.0, s_max, grid + 1)[1:]:
        x = d_even + s * direction
        inside = (const + x @ coefs).min() >= tol  # strictly interior
        beyond = gamma.evaluate_even(x) < -tol
        if inside and beyond:
            beta = _beta_from_even(system, x)
            if breuer_detects(beta, tol):
                return beta
    return None


def sweep_rows(system: SpinPair, grid: int, tol: float = DEFAULT_TOL
               ) -> tuple[tuple[str, ...], list[tuple], float]:
    """Grid sweep of the invariant polytope: (header, rows, detected fraction).

    One row per grid point inside the polytope, carrying the even
    coordinates and the classification of the point (all such points are
    PPT states by theta_1 invariance).
    """
    if system.n1 not in (4, 6):
        raise ValueError(f"region sweep supports n1 in (4, 6), got {system.n1}")
    if grid < 10:
        raise ValueError(f"grid must be >= 10, got {grid}")
    pts = _grid_points(system, grid)
    const, coefs = _polytope_arrays(system)
    inside = (const + pts @ coefs).min(axis=1) >= -tol
    img_const, img_coefs = _breuer_image_arrays(system)
    detected = (img_const + pts @ img_coefs).min(axis=1) < -tol

    separable = np.zeros(len(pts), dtype=bool)
    if system.n1 == 4:
        # theta_1-invariant slice of DD'EE' is the segment beta_2 in [E_2, D_2]
        points = named_points_4xn(system.n2)
        e2 = points["E"].beta.coords[2]
        d2 = points["D''"].beta.coords[2]
        separable = (pts[:, 0] >= e2 - tol) & (pts[:, 0] <= d2 + tol)

    header = tuple(f"beta_K={2 * (k + 1)}" for k in range(_even_count(system)))
    rows = []
    for i in np.flatnonzero(inside):
        if detected[i]:
            cls = "PptBoundEntangledDetected"
        elif separable[i]:
            cls = "KnownSeparable"
        else:
            cls = "PptUndetermined"
        rows.append(tuple(float(v) for v in pts[i]) + (cls,))
    n_inside = int(inside.sum())
    fraction = float((inside & detected).sum() / n_inside) if n_inside else 0.0
    return header + ("class",), rows, fraction
