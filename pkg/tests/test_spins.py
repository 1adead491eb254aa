import numpy as np
import pytest

from lmg_otto import (
    CouplingPair,
    ScalingMode,
    collective_spin_matrix,
    eigendecompose,
    lmg_hamiltonian,
    make_sector,
)
from lmg_otto.errors import DimensionError, EigensolverFailure, InvalidSector


class TestMakeSector:
    def test_spin_half(self):
        sector = make_sector(1)
        assert sector.dim == 2
        assert list(sector.twice_n) == [-1, 1]
        assert list(sector.n_values) == [-0.5, 0.5]

    def test_sixty_spins(self):
        assert make_sector(60).dim == 61

    @pytest.mark.parametrize("bad", [0, -1, -17])
    def test_empty_medium_rejected(self, bad):
        with pytest.raises(InvalidSector):
            make_sector(bad)

    def test_enumeration_step_two(self):
        sector = make_sector(7)
        assert np.array_equal(np.diff(sector.twice_n), 2 * np.ones(7))

    def test_index_of(self):
        sector = make_sector(4)
        assert sector.index_of(-4) == 0
        assert sector.index_of(0) == 2
        assert sector.index_of(4) == 4
        with pytest.raises(DimensionError):
            sector.index_of(3)   # wrong parity for integer S


class TestSpinMatrices:
    def test_spin_half_z(self):
        sz = collective_spin_matrix(make_sector(1), "z")
        assert np.array_equal(sz, np.diag([-0.5, 0.5]))

    def test_spin_half_x(self):
        sx = collective_spin_matrix(make_sector(1), "x")
        assert np.array_equal(sx, np.array([[0.0, 0.5], [0.5, 0.0]]))

    def test_spin_one_x_offdiagonal(self):
        sx = collective_spin_matrix(make_sector(2), "x")
        # ladder formula gives sqrt(2)/2 = 1/sqrt(2) above/below the diagonal
        assert sx[0, 1] == pytest.approx(1 / np.sqrt(2), abs=1e-15)
        assert np.allclose(sx, sx.T)

    @pytest.mark.parametrize("twice_s", [1, 2, 3, 8, 21, 60, 121, 200])
    def test_commutator_algebra(self, twice_s):
        # [S_x, S_y] = i S_z translates to Sx K - K Sx = -S_z for K = i S_y.
        # Matrix entries grow like S^2, so the bound scales with the sector.
        sector = make_sector(twice_s)
        sx = collective_spin_matrix(sector, "x")
        k = collective_spin_matrix(sector, "y")
        sz = collective_spin_matrix(sector, "z")
        assert np.max(np.abs(sx @ k - k @ sx + sz)) \
            <= 1e-12 * max(1, twice_s)

    @pytest.mark.parametrize("twice_s", [1, 2, 7, 40, 200])
    def test_casimir(self, twice_s):
        sector = make_sector(twice_s)
        sx = collective_spin_matrix(sector, "x")
        k = collective_spin_matrix(sector, "y")
        sz = collective_spin_matrix(sector, "z")
        total = sx @ sx - k @ k + sz @ sz
        expected = sector.s * (sector.s + 1) * np.eye(sector.dim)
        assert np.max(np.abs(total - expected)) <= 1e-10

    def test_k_is_antisymmetric(self):
        k = collective_spin_matrix(make_sector(9), "y")
        assert np.array_equal(k, -k.T)

    def test_unknown_axis(self):
        with pytest.raises(ValueError):
            collective_spin_matrix(make_sector(2), "w")


class TestHamiltonian:
    def test_spin_half_is_identity_multiple(self):
        h = lmg_hamiltonian(make_sector(1), CouplingPair(1.3, 0.7),
                            ScalingMode.NON_EXTENSIVE)
        assert np.array_equal(h, 0.25 * (1.3 + 0.7) * np.eye(2))

    @pytest.mark.parametrize("twice_s", [1, 2, 5, 16])
    def test_kac_rescaling_elementwise(self, twice_s):
        sector = make_sector(twice_s)
        g = CouplingPair(1.01, 0.02)
        h_ne = lmg_hamiltonian(sector, g, ScalingMode.NON_EXTENSIVE)
        h_ext = lmg_hamiltonian(sector, g, ScalingMode.EXTENSIVE)
        assert np.allclose(h_ext, h_ne / twice_s, rtol=1e-15, atol=0.0)

    def test_exactly_symmetric(self):
        for twice_s in (2, 3, 30):
            h = lmg_hamiltonian(make_sector(twice_s), CouplingPair(1.0, 0.02),
                                ScalingMode.NON_EXTENSIVE)
            assert np.array_equal(h, h.T)

    def test_spin_one_eigenvalues_closed_form(self):
        # For S=1 the 3x3 splits into a singlet gx+gy and a 2x2 block whose
        # eigenvalues are gx and gy.
        gx, gy = 1.0, 0.02
        h = lmg_hamiltonian(make_sector(2), CouplingPair(gx, gy),
                            ScalingMode.NON_EXTENSIVE)
        spec = eigendecompose(h)
        assert np.allclose(spec.eigenvalues, [gy, gx, gx + gy], atol=1e-10)

    def test_spin_one_eigenvalues_characteristic_polynomial(self):
        # independent brute-force route: roots of det(H - e I) for the 3x3
        gx, gy = 1.0, 0.02
        h = lmg_hamiltonian(make_sector(2), CouplingPair(gx, gy),
                            ScalingMode.NON_EXTENSIVE)
        a, b, c = h[0, 0], h[0, 2], h[1, 1]
        # det for the arrow-free pattern [[a,0,b],[0,c,0],[b,0,a]]
        coeffs = np.array([
            1.0,
            -(2 * a + c),
            a * a - b * b + 2 * a * c,
            -c * (a * a - b * b),
        ])
        roots = np.sort(np.roots(coeffs).real)
        spec = eigendecompose(h)
        assert np.allclose(spec.eigenvalues, roots, atol=1e-10)

    def test_coupling_validation(self):
        with pytest.raises(ValueError):
            CouplingPair(0.0, 0.1)
        with pytest.raises(ValueError):
            CouplingPair(1.0, -0.1)
        CouplingPair(1.0, 0.0)   # gamma_y = 0 allowed (baseline protocol)

    @pytest.mark.parametrize("twice_s", [2, 3, 12])
    def test_spectrum_scaling_identity(self, twice_s):
        sector = make_sector(twice_s)
        g = CouplingPair(1.01, 0.01)
        e_ne = eigendecompose(
            lmg_hamiltonian(sector, g, ScalingMode.NON_EXTENSIVE)
        ).eigenvalues
        e_ext = eigendecompose(
            lmg_hamiltonian(sector, g, ScalingMode.EXTENSIVE)
        ).eigenvalues
        scale = max(1.0, np.max(np.abs(e_ne)))
        assert np.max(np.abs(e_ext - e_ne / twice_s)) <= 1e-13 * scale

    @pytest.mark.parametrize("twice_s", [2, 3, 9, 20])
    def test_spectrum_invariant_under_spin_flip(self, twice_s):
        # H commutes with the parity rotation diag(+1,-1,+1,...): the
        # conjugation only flips odd-distance bands, which are exactly
        # zero, so it is an entry-for-entry identity.  The spin-flip
        # exchange holds to a few ulps (matmul accumulation order), and
        # the eigenvalue multiset is unchanged.
        sector = make_sector(twice_s)
        h = lmg_hamiltonian(sector, CouplingPair(1.01, 0.02),
                            ScalingMode.NON_EXTENSIVE)
        d = np.diag((-1.0) ** np.arange(sector.dim))
        assert np.array_equal(d @ h @ d, h)
        j = np.eye(sector.dim)[::-1]
        scale = max(1.0, np.max(np.abs(h)))
        assert np.max(np.abs(j @ h @ j - h)) <= 1e-12 * scale
        e_flip = eigendecompose(np.ascontiguousarray(j @ h @ j)).eigenvalues
        e_base = eigendecompose(h).eigenvalues
        assert np.max(np.abs(e_flip - e_base)) <= 1e-11 * scale


class TestEigendecompose:
    def test_diagonal_input(self):
        h = np.diag([3.0, -1.0, 2.0])
        spec = eigendecompose(h)
        assert np.array_equal(spec.eigenvalues, [-1.0, 2.0, 3.0])
        # eigenvectors are a signed permutation of identity columns
        assert np.allclose(np.abs(spec.eigenvectors).sum(axis=0), 1.0)
        assert np.allclose(np.abs(spec.eigenvectors).max(axis=0), 1.0)

    @pytest.mark.parametrize("order", [5, 50, 201])
    def test_reconstruction_random_symmetric(self, order, rng):
        m = rng.standard_normal((order, order))
        h = m + m.T
        spec = eigendecompose(h)
        recon = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.T
        assert np.max(np.abs(recon - h)) <= 1e-9 * max(1.0, np.max(np.abs(h)))
        ortho = spec.eigenvectors.T @ spec.eigenvectors - np.eye(order)
        assert np.max(np.abs(ortho)) <= 1e-10

    def test_eigenvalues_sorted(self, rng):
        m = rng.standard_normal((40, 40))
        spec = eigendecompose(m + m.T)
        assert np.all(np.diff(spec.eigenvalues) >= 0)

    def test_sign_convention(self, rng):
        m = rng.standard_normal((17, 17))
        spec = eigendecompose(m + m.T)
        for col in spec.eigenvectors.T:
            assert col[np.argmax(np.abs(col))] > 0

    def test_rejects_asymmetric(self):
        with pytest.raises(DimensionError):
            eigendecompose(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_nonsquare(self):
        with pytest.raises(DimensionError):
            eigendecompose(np.zeros((3, 4)))

    def test_nonfinite_input_fails_loudly(self):
        h = np.full((3, 3), np.nan)
        with pytest.raises((EigensolverFailure, DimensionError)):
            eigendecompose(h)

    def test_degenerate_clusters(self):
        spec = eigendecompose(np.diag([1.0, 1.0, 2.0]))
        clusters = spec.degenerate_clusters()
        assert [list(c) for c in clusters] == [[0, 1], [2]]
