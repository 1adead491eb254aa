"""Collective spin operators, the anisotropic two-axis Hamiltonian and its
dense eigendecomposition.

Everything lives in the maximum-spin multiplet of N spin-1/2 particles:
total spin S = N/2, dimension 2S + 1, basis ordered by the z projection
n = -S, ..., +S.  Both 2S and 2n are stored as integers so half-integer
sectors stay exact.

The y component is handled through its real proxy K = i*S_y, which is a
real antisymmetric tridiagonal matrix in the z basis.  Since
S_y^2 = -K @ K, the Hamiltonian

    H = g_x * S_x^2 + g_y * S_y^2

is real symmetric by construction and all downstream thermodynamics stays
in real arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    EigensolverFailure,
    InvalidSector,
)

__all__ = [
    "SpinSector",
    "ScalingMode",
    "CouplingPair",
    "Spectrum",
    "make_sector",
    "collective_spin_matrix",
    "lmg_hamiltonian",
    "eigendecompose",
]

# Relative tolerance used to group near-equal eigenvalues into one
# degenerate cluster (parity doublets are split only by finite g_y).
DEGENERACY_RTOL = 1e-10


class ScalingMode(enum.Enum):
    """Coupling normalisation of the working medium.

    NON_EXTENSIVE uses the couplings as given; EXTENSIVE divides both by
    the particle number N = 2S, which keeps the energy per particle finite
    as the medium grows.
    """

    NON_EXTENSIVE = "nonextensive"
    EXTENSIVE = "extensive"


@dataclass(frozen=True)
class SpinSector:
    """Maximum-spin multiplet: 2S as an integer, dimension 2S + 1."""

    twice_s: int

    @property
    def dim(self) -> int:
        return self.twice_s + 1

    @property
    def n_spins(self) -> int:
        """Particle number N = 2S of the underlying spin-1/2 medium."""
        return self.twice_s

    @property
    def s(self) -> float:
        return self.twice_s / 2.0

    @property
    def twice_n(self) -> np.ndarray:
        """Integers 2n for n = -S ... +S, ascending."""
        return np.arange(-self.twice_s, self.twice_s + 1, 2)

    @property
    def n_values(self) -> np.ndarray:
        """Magnetic quantum numbers n = -S ... +S as floats."""
        return self.twice_n / 2.0

    def index_of(self, twice_n: int) -> int:
        """Basis index of the level with given 2n."""
        if (twice_n - self.twice_s) % 2 != 0 or abs(twice_n) > self.twice_s:
            raise DimensionError(
                f"label 2n={twice_n} not in sector 2S={self.twice_s}"
            )
        return (twice_n + self.twice_s) // 2


def make_sector(twice_s: int) -> SpinSector:
    """Validated sector constructor; requires at least two levels."""
    if int(twice_s) != twice_s or twice_s < 1:
        raise InvalidSector(f"twice_s must be an integer >= 1, got {twice_s}")
    return SpinSector(int(twice_s))


@dataclass(frozen=True)
class CouplingPair:
    """Two-axis couplings (g_x, g_y) in units of the cold x coupling.

    The antiferromagnetic regime requires g_x > 0.  g_y may be zero: the
    interference-isolation baseline protocol runs the engine with the y
    coupling switched off.
    """

    gamma_x: float
    gamma_y: float

    def __post_init__(self):
        if not (self.gamma_x > 0):
            raise ValueError(f"gamma_x must be > 0, got {self.gamma_x}")
        if not (self.gamma_y >= 0):
            raise ValueError(f"gamma_y must be >= 0, got {self.gamma_y}")

    def scaled(self, mode: ScalingMode, n_spins: int) -> "CouplingPair":
        """Couplings actually entering the Hamiltonian for this mode."""
        if mode is ScalingMode.EXTENSIVE:
            return CouplingPair(self.gamma_x / n_spins, self.gamma_y / n_spins)
        return self


def collective_spin_matrix(sector: SpinSector, axis: str) -> np.ndarray:
    """Collective spin component in the z basis, as a real matrix.

    axis 'z': diagonal with entries n.
    axis 'x': symmetric tridiagonal, <n+1|S_x|n> = sqrt(S(S+1)-n(n+1))/2.
    axis 'y': returns the real proxy K = i*S_y (antisymmetric tridiagonal),
              so S_y^2 = -K @ K.
    """
    dim = sector.dim
    n = sector.n_values
    if axis == "z":
        return np.diag(n)
    # <n+1| ladder |n> amplitudes, halved
    c = 0.5 * np.sqrt(sector.s * (sector.s + 1) - n[:-1] * (n[:-1] + 1))
    lower = (np.arange(1, dim), np.arange(dim - 1))
    upper = (np.arange(dim - 1), np.arange(1, dim))
    out = np.zeros((dim, dim))
    if axis == "x":
        out[lower] = c
        out[upper] = c
        return out
    if axis == "y":
        out[lower] = c
        out[upper] = -c
        return out
    raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")


def lmg_hamiltonian(
    sector: SpinSector, couplings: CouplingPair, mode: ScalingMode
) -> np.ndarray:
    """Two-axis Hamiltonian g_x S_x^2 + g_y S_y^2, exactly symmetric.

    S_x^2 is symmetric and S_y^2 = -K@K with K antisymmetric, so the
    result is symmetric entry-for-entry without any post-symmetrisation.
    """
    g = couplings.scaled(mode, sector.n_spins)
    sx = collective_spin_matrix(sector, "x")
    k = collective_spin_matrix(sector, "y")
    return g.gamma_x * (sx @ sx) - g.gamma_y * (k @ k)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def degenerate_clusters(self) -> list[range]:
        """Index ranges of eigenvalues equal within the degeneracy tolerance."""
        e = self.eigenvalues
        tol = DEGENERACY_RTOL * max(1.0, float(np.max(np.abs(e))))
        clusters = []
        start = 0
        for i in range(1, len(e) + 1):
            if i == len(e) or abs(e[i] - e[i - 1]) > tol:
                clusters.append(range(start, i))
                start = i
        return clusters


def eigendecompose(h: np.ndarray, check: bool = True) -> Spectrum:
    """Dense symmetric eigendecomposition with verified output.

    Column sign convention: the entry of largest magnitude in each
    eigenvector is made positive, which pins an otherwise arbitrary
    overall sign.  Ordering inside degenerate clusters is the solver's
    (stable across repeated calls on identical input).

    Raises EigensolverFailure instead of returning an unverified result:
    reconstruction must hold to 1e-9 * max(1, |H|_max) and orthonormality
    to 1e-10.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {h.shape}")
    if not np.array_equal(h, h.T):
        raise DimensionError("matrix is not exactly symmetric")
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    # pin the sign of each column
    flips = np.sign(evecs[np.argmax(np.abs(evecs), axis=0), np.arange(h.shape[0])])
    flips[flips == 0] = 1.0
    evecs = evecs * flips
    if check:
        scale = max(1.0, float(np.max(np.abs(h))))
        ortho = np.max(np.abs(evecs.T @ evecs - np.eye(h.shape[0])))
        if ortho > 1e-10:
            raise EigensolverFailure(f"orthonormality residual {ortho:.3e}")
        recon = np.max(np.abs((evecs * evals) @ evecs.T - h))
        if recon > 1e-9 * scale:
            raise EigensolverFailure(f"reconstruction residual {recon:.3e}")
    evals = evals.copy()
    evals.flags.writeable = False
    evecs.flags.writeable = False
    return Spectrum(evals, evecs)
