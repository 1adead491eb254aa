"""Transition probabilities between x- and y-quantised spin states, both
exact and through semiclassical band geometry on the spin sphere.

Exact route
-----------
P(n,m) = |<n_x|m_y>|^2.  The x eigenbasis U comes from diagonalising the
real symmetric tridiagonal S_x; the y eigenstates are quarter-turn images
of the x ones, |m_y> = R_z(pi/2)|m_x> with R_z(pi/2) diagonal in the z
basis with entries exp(-i pi n / 2).  Hence

    <n_x|m_y> = sum_k U[k,n] exp(-i pi k / 2) U[k,m],

the single complex-valued sum in this package; everything else is real.

Semiclassical route
-------------------
Each spin level is a band of unit coordinate width on the sphere of
radius R_S = sqrt(S(S+1)): the level n about the x axis occupies
n - 1/2 <= S_x <= n + 1/2, clipped to the sphere.  Two bands intersect in
two lobes placed mirror-symmetrically about the equator S_z = 0; a_nm is
the area of the upper lobe (S_z > 0).  A_nm is the area of the lens
{S_x >= n} & {S_y >= m}, and the interference angle is

    Phi(n,m) = A_nm / (2 R_S) - pi / 4,

giving the band-geometry transition probability

    P_sc(n,m) = 4 * (a_nm / (2 pi R_S)) * cos^2(Phi).

A pair (n,m) is classically allowed when the two band-centre circles
intersect: n^2 + m^2 <= R_S^2 (checked in exact integer arithmetic on
2n, 2m, 2S).  Forbidden entries of the semiclassical table are zero and
flagged, never fatal.

Areas come from a deterministic midpoint quadrature on a latitude x
longitude grid aligned with the z axis (area element R^2 sin(theta)
dtheta dphi, production grid 2048 x 4096, indicator integrand).  Because
every band edge and lens threshold sits on the half-integer lattice, one
histogram pass over the grid yields all band and lens areas of a sector
at once; results are cached per (sector, resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ClassicallyForbidden, InvalidSqueezing
from .spins import SpinSector, collective_spin_matrix, eigendecompose

__all__ = [
    "PRODUCTION_GRID",
    "TransitionTable",
    "BandGeometry",
    "BandAreas",
    "FockDistribution",
    "GeometryReport",
    "transition_table_exact",
    "band_areas",
    "band_geometry",
    "transition_table_semiclassical",
    "semiclassical_vs_exact_report",
    "squeezed_vacuum_fock",
]

PRODUCTION_GRID = (2048, 4096)

# Rows per quadrature chunk.  Fixed so that float accumulation order, and
# therefore every emitted byte, never depends on available memory.
_CHUNK_ROWS = 256


@dataclass(frozen=True)
class TransitionTable:
    """P(n,m) over x labels (rows) and y labels (columns), both ascending.

    kind is 'exact' or 'semiclassical'; the latter carries the mask of
    classically forbidden pairs (entries forced to zero).
    """

    kind: str
    values: np.ndarray
    sector: SpinSector
    forbidden: np.ndarray | None = None

    def value(self, twice_n: int, twice_m: int) -> float:
        i = self.sector.index_of(twice_n)
        j = self.sector.index_of(twice_m)
        return float(self.values[i, j])


def transition_table_exact(sector: SpinSector) -> TransitionTable:
    """Exact doubly stochastic table |<n_x|m_y>|^2."""
    sx = collective_spin_matrix(sector, "x")
    u = eigendecompose(sx).eigenvectors
    phase = np.exp(-0.5j * np.pi * sector.n_values)
    amp = u.T @ (phase[:, None] * u)
    p = np.abs(amp) ** 2
    p.flags.writeable = False
    return TransitionTable(kind="exact", values=p, sector=sector)


def _classically_allowed(twice_s: int, twice_n: int, twice_m: int) -> bool:
    # n^2 + m^2 <= S(S+1), scaled by 4 to stay in integers
    return twice_n * twice_n + twice_m * twice_m <= twice_s * (twice_s + 2)


@lru_cache(maxsize=None)
def _area_histogram_tables(twice_s: int, n_theta: int, n_phi: int):
    """One quadrature pass: upper-lobe band areas and lens areas.

    Returns (a, lens) as dim x dim read-only arrays indexed by ascending
    (n, m) labels.
    """
    s = twice_s / 2.0
    r = math.sqrt(s * (s + 1))
    dim = twice_s + 1

    off = int(math.ceil(2 * r)) + 1
    nb = 2 * off + 2
    d_theta = math.pi / n_theta
    d_phi = 2.0 * math.pi / n_phi
    phi_mid = (np.arange(n_phi) + 0.5) * d_phi
    cos_phi = np.cos(phi_mid)
    sin_phi = np.sin(phi_mid)

    hist_full = np.zeros(nb * nb)
    hist_upper = np.zeros(nb * nb)
    for row0 in range(0, n_theta, _CHUNK_ROWS):
        rows = np.arange(row0, min(row0 + _CHUNK_ROWS, n_theta))
        theta = (rows + 0.5) * d_theta
        sin_th = np.sin(theta)
        rho = r * sin_th[:, None]
        ix = np.floor(2.0 * rho * cos_phi[None, :]).astype(np.int64) + off
        iy = np.floor(2.0 * rho * sin_phi[None, :]).astype(np.int64) + off
        idx = ix * nb + iy
        w = np.broadcast_to(
            (r * r * sin_th * d_theta * d_phi)[:, None], idx.shape
        )
        hist_full += np.bincount(idx.ravel(), weights=w.ravel(),
                                 minlength=nb * nb)
        upper = np.cos(theta) > 0
        if upper.any():
            hist_upper += np.bincount(idx[upper].ravel(),
                                      weights=w[upper].ravel(),
                                      minlength=nb * nb)

    hist_full = hist_full.reshape(nb, nb)
    hist_upper = hist_upper.reshape(nb, nb)

    # band of label n covers half-bins {2n-1, 2n}; lens {x>=n} starts at 2n
    labels = np.arange(-twice_s, twice_s + 1, 2)
    a = np.zeros((dim, dim))
    for i, tn in enumerate(labels):
        kx = (tn - 1 + off, tn + off)
        block = hist_upper[kx, :]
        for j, tm in enumerate(labels):
            ky = (tm - 1 + off, tm + off)
            a[i, j] = block[:, ky].sum()
    suffix = np.cumsum(np.cumsum(hist_full[::-1, ::-1], axis=0), axis=1)[::-1, ::-1]
    lens = np.zeros((dim, dim))
    for i, tn in enumerate(labels):
        for j, tm in enumerate(labels):
            lens[i, j] = suffix[tn + off, tm + off]
    a.flags.writeable = False
    lens.flags.writeable = False
    return a, lens


@dataclass(frozen=True)
class BandAreas:
    """All upper-lobe overlap areas and lens areas of one sector."""

    sector: SpinSector
    resolution: tuple[int, int]
    lobe: np.ndarray   # a[n, m], upper lobe of band(n,x) & band(m,y)
    lens: np.ndarray   # A[n, m], area of {S_x >= n} & {S_y >= m}

    @property
    def r_s(self) -> float:
        s = self.sector.s
        return math.sqrt(s * (s + 1))


def band_areas(
    sector: SpinSector, resolution: tuple[int, int] = PRODUCTION_GRID
) -> BandAreas:
    """Cached quadrature areas for every (n, m) pair of the sector."""
    n_theta, n_phi = resolution
    a, lens = _area_histogram_tables(sector.twice_s, int(n_theta), int(n_phi))
    return BandAreas(sector=sector, resolution=(int(n_theta), int(n_phi)),
                     lobe=a, lens=lens)


@dataclass(frozen=True)
class BandGeometry:
    """Geometry of one (n, m) band pair on the spin sphere."""

    sector: SpinSector
    twice_n: int
    twice_m: int
    r_s: float
    a_nm: float
    lens_area: float
    phi: float
    classically_allowed: bool


def band_geometry(
    sector: SpinSector,
    twice_n: int,
    twice_m: int,
    resolution: tuple[int, int] = PRODUCTION_GRID,
    allow_forbidden: bool = False,
) -> BandGeometry:
    """Areas and interference angle for one pair of band labels.

    Raises ClassicallyForbidden when the band-centre circles do not
    intersect, unless allow_forbidden is set (whole-table operations and
    reports pass it to stay total).
    """
    areas = band_areas(sector, resolution)
    i = sector.index_of(twice_n)
    j = sector.index_of(twice_m)
    allowed = _classically_allowed(sector.twice_s, twice_n, twice_m)
    if not allowed and not allow_forbidden:
        raise ClassicallyForbidden(
            f"bands 2n={twice_n}, 2m={twice_m} do not intersect on the "
            f"sphere of sector 2S={sector.twice_s}"
        )
    lens = float(areas.lens[i, j])
    return BandGeometry(
        sector=sector,
        twice_n=twice_n,
        twice_m=twice_m,
        r_s=areas.r_s,
        a_nm=float(areas.lobe[i, j]),
        lens_area=lens,
        phi=lens / (2.0 * areas.r_s) - math.pi / 4.0,
        classically_allowed=allowed,
    )


def transition_table_semiclassical(
    sector: SpinSector, resolution: tuple[int, int] = PRODUCTION_GRID
) -> TransitionTable:
    """Band-geometry table 4 (a/2 pi R) cos^2(Phi); forbidden entries zero."""
    areas = band_areas(sector, resolution)
    r = areas.r_s
    phi = areas.lens / (2.0 * r) - math.pi / 4.0
    values = 4.0 * (areas.lobe / (2.0 * math.pi * r)) * np.cos(phi) ** 2
    tn = sector.twice_n
    forbidden = (tn[:, None] ** 2 + tn[None, :] ** 2
                 > sector.twice_s * (sector.twice_s + 2))
    values = np.where(forbidden, 0.0, values)
    values.flags.writeable = False
    forbidden.flags.writeable = False
    return TransitionTable(kind="semiclassical", values=values, sector=sector,
                           forbidden=forbidden)


@dataclass(frozen=True)
class GeometryReport:
    """Aligned exact vs semiclassical values for selected x labels.

    rows: (twice_n, twice_m, p_exact, p_semiclassical, a_nm, lens_area,
    phi, allowed) for every requested n and every m of the sector.  The
    paired differences P(k, S) - P(k+1, S) (k = 0 for integer S, 1/2 for
    half-integer) summarise the alternation that feeds the work output.
    """

    sector: SpinSector
    rows: tuple
    pair_difference_exact: float
    pair_difference_semiclassical: float

    COLUMNS = ("twice_n", "twice_m", "p_exact", "p_semiclassical",
               "a_nm", "A_nm", "phi", "allowed_flag")


def semiclassical_vs_exact_report(
    sector: SpinSector,
    n_list,
    resolution: tuple[int, int] = PRODUCTION_GRID,
) -> GeometryReport:
    """Tabulate both evaluations for the requested x labels (as 2n ints)."""
    exact = transition_table_exact(sector)
    semi = transition_table_semiclassical(sector, resolution)
    areas = band_areas(sector, resolution)
    r = areas.r_s
    rows = []
    for twice_n in n_list:
        i = sector.index_of(int(twice_n))
        for j, twice_m in enumerate(sector.twice_n):
            lens = float(areas.lens[i, j])
            rows.append((
                int(twice_n),
                int(twice_m),
                float(exact.values[i, j]),
                float(semi.values[i, j]),
                float(areas.lobe[i, j]),
                lens,
                lens / (2.0 * r) - math.pi / 4.0,
                bool(~semi.forbidden[i, j]),
            ))
    # dominant-band pair difference at k = 0 (integer S) or 1/2
    twice_k = 0 if sector.twice_s % 2 == 0 else 1
    if twice_k + 2 <= sector.twice_s:
        ik = sector.index_of(twice_k)
        ik1 = sector.index_of(twice_k + 2)
        top = sector.dim - 1
        diff_exact = float(exact.values[ik, top] - exact.values[ik1, top])
        diff_semi = float(semi.values[ik, top] - semi.values[ik1, top])
    else:
        diff_exact = diff_semi = float("nan")  # sector too small for k+1
    return GeometryReport(
        sector=sector,
        rows=tuple(rows),
        pair_difference_exact=diff_exact,
        pair_difference_semiclassical=diff_semi,
    )


@dataclass(frozen=True)
class FockDistribution:
    """Photon-number distribution of a squeezed vacuum state.

    Only even k carry weight; the partial sums approach 1 from below as
    k_max grows (slowly for large squeezing).
    """

    squeeze: float
    probs: np.ndarray


def squeezed_vacuum_fock(r: float, k_max: int) -> FockDistribution:
    """Closed-form P(2j) = (2j)! tanh^(2j) r / (4^j (j!)^2 cosh r).

    Evaluated by the multiplicative recurrence
    P(2j+2)/P(2j) = tanh^2(r) (2j+1)/(2j+2), which avoids factorials.
    """
    if r < 0:
        raise InvalidSqueezing(f"squeeze parameter must be >= 0, got {r}")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    probs = np.zeros(k_max + 1)
    t2 = math.tanh(r) ** 2
    p = 1.0 / math.cosh(r)
    probs[0] = p
    for j in range(1, k_max // 2 + 1):
        p *= t2 * (2 * j - 1) / (2 * j)
        probs[2 * j] = p
    probs.flags.writeable = False
    return FockDistribution(squeeze=r, probs=probs)
