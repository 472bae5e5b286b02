import math

import numpy as np
import pytest

from jacobi_spectra import (
    JacobiMatrix,
    SpectralMeasure,
    eigenvalues,
    eigenvectors,
    measure_n,
    spectral_gaps,
    spectral_measure,
)
from jacobi_spectra.instances import random_jacobi
from jacobi_spectra.spectral_engine import (
    leading_submatrix,
    pi_at_eigenvalues,
    spectral_diameter,
    trailing_submatrix,
)

from conftest import dense_eigh, uniform

SQ2 = math.sqrt(2.0)


class TestEigenvalues:
    def test_uniform_three(self, J3):
        np.testing.assert_allclose(eigenvalues(J3), [-2 - SQ2, -2.0, -2 + SQ2],
                                   atol=1e-14)

    def test_closed_form_uniform(self):
        for N in (4, 7, 12):
            expected = -2 + 2 * np.cos(np.arange(N, 0, -1) * np.pi / (N + 1))
            np.testing.assert_allclose(eigenvalues(uniform(N)), expected, atol=1e-13)

    def test_one_by_one(self):
        assert eigenvalues(JacobiMatrix([3.25], [])).tolist() == [3.25]

    def test_two_by_two(self, J2):
        np.testing.assert_allclose(eigenvalues(J2), [-3.0, -1.0], atol=1e-15)

    def test_against_dense(self, rng):
        for _ in range(100):
            J = random_jacobi(rng, int(rng.integers(1, 13)))
            np.testing.assert_allclose(eigenvalues(J), dense_eigh(J)[0],
                                       rtol=0, atol=1e-9)

    def test_tolerance_argument(self, rng):
        J = random_jacobi(rng, 8)
        coarse = eigenvalues(J, tol=1e-3)
        assert np.max(np.abs(coarse - dense_eigh(J)[0])) < 1e-3

    def test_sorted_and_simple(self, rng):
        for _ in range(30):
            lam = eigenvalues(random_jacobi(rng, int(rng.integers(2, 13))))
            assert np.all(np.diff(lam) > 0)

    def test_cached_and_read_only(self, rng):
        J = random_jacobi(rng, 5)
        a = eigenvalues(J)
        assert eigenvalues(J) is a
        with pytest.raises(ValueError):
            a[0] = 0.0

    def test_tiny_offdiagonal(self):
        # nearly decoupled blocks still give simple, accurate eigenvalues
        J = JacobiMatrix([1.0, 1.0, 2.0], [1e-8, 1e-8])
        np.testing.assert_allclose(eigenvalues(J), dense_eigh(J)[0], atol=1e-12)


class TestEigenvectors:
    def test_against_dense(self, rng):
        for _ in range(30):
            J = random_jacobi(rng, int(rng.integers(1, 13)))
            V = eigenvectors(J)
            W = dense_eigh(J)[1]
            W = W * np.sign(W[0])
            np.testing.assert_allclose(V, W, atol=1e-8)

    def test_pi_columns(self, rng):
        J = random_jacobi(rng, 6, (-3, 3), (0.3, 2))
        P = pi_at_eigenvalues(J)
        from jacobi_spectra import eval_pi
        for i, x in enumerate(eigenvalues(J)):
            np.testing.assert_allclose(P[:, i], eval_pi(J, x, J.size).true_values(),
                                       rtol=1e-8, atol=1e-10)


class TestSpectralMeasure:
    def test_two_by_two(self, J2):
        mu = spectral_measure(J2)
        np.testing.assert_allclose(mu.positions, [-3.0, -1.0], atol=1e-15)
        np.testing.assert_allclose(mu.weights, [0.5, 0.5], atol=1e-15)

    def test_one_by_one(self):
        mu = spectral_measure(JacobiMatrix([-7.0], []))
        assert mu.atoms == [(-7.0, 1.0)]

    def test_uniform_three(self, J3):
        np.testing.assert_allclose(spectral_measure(J3).weights, [0.25, 0.5, 0.25],
                                   atol=1e-15)

    def test_weights_are_inverse_pi_norms(self, rng):
        from jacobi_spectra import eval_pi
        J = random_jacobi(rng, 7, (-3, 3), (0.3, 2))
        mu = spectral_measure(J)
        for x, w in mu.atoms:
            pis = eval_pi(J, x, J.size).true_values()
            assert w == pytest.approx(1.0 / np.sum(pis ** 2), rel=1e-9)

    def test_mass_and_first_moment(self, rng):
        for _ in range(100):
            J = random_jacobi(rng, int(rng.integers(1, 13)))
            mu = spectral_measure(J)
            assert np.all(mu.weights > 0)
            assert mu.total_mass == pytest.approx(1.0, abs=1e-10)
            assert float(mu.positions @ mu.weights) == pytest.approx(J.diag[0], abs=1e-9)

    def test_tol_argument(self, rng):
        J = random_jacobi(rng, 5)
        np.testing.assert_allclose(spectral_measure(J, 1e-10).weights,
                                   spectral_measure(J).weights, atol=1e-9)

    def test_measure_type_checks(self):
        with pytest.raises(ValueError):
            SpectralMeasure([0.0, 0.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            SpectralMeasure([0.0, 1.0], [0.5, 0.0])


class TestMeasureN:
    def test_n_one(self, rng):
        J = random_jacobi(rng, 6)
        a, b = measure_n(J, 1), spectral_measure(J)
        np.testing.assert_array_equal(a.positions, b.positions)
        np.testing.assert_allclose(a.weights, b.weights, rtol=1e-14)

    def test_one_by_one(self):
        assert measure_n(JacobiMatrix([2.0], []), 1).atoms == [(2.0, 1.0)]

    def test_uniform_three_site_two(self, J3):
        mu = measure_n(J3, 2)
        np.testing.assert_allclose(mu.positions, [-2 - SQ2, -2 + SQ2], atol=1e-14)
        np.testing.assert_allclose(mu.weights, [0.5, 0.5], atol=1e-14)

    def test_against_dense(self, rng):
        for _ in range(30):
            J = random_jacobi(rng, int(rng.integers(2, 13)), (-3, 3), (0.3, 2))
            n = int(rng.integers(1, J.size + 1))
            lam, W = dense_eigh(J)
            mu = measure_n(J, n)
            np.testing.assert_allclose(mu.weights, W[n - 1] ** 2, atol=1e-10)
            assert mu.total_mass == pytest.approx(1.0, abs=1e-10)

    def test_index_range(self, J3):
        with pytest.raises(IndexError):
            measure_n(J3, 4)


class TestSubmatrices:
    def test_leading(self, J3):
        Jm = leading_submatrix(J3, 2)
        assert Jm.diag.tolist() == [-2.0]
        assert Jm.offdiag.size == 0

    def test_trailing(self, J3):
        Jp = trailing_submatrix(J3, 1)
        assert Jp.diag.tolist() == [-2.0, -2.0]
        assert Jp.offdiag.tolist() == [1.0]

    def test_sizes(self, rng):
        J = random_jacobi(rng, 7)
        for n in range(2, 8):
            assert leading_submatrix(J, n).size == n - 1
        for n in range(1, 7):
            assert trailing_submatrix(J, n).size == 7 - n

    def test_empty_rejected(self, J3):
        with pytest.raises(ValueError):
            leading_submatrix(J3, 1)
        with pytest.raises(ValueError):
            trailing_submatrix(J3, 3)


class TestGaps:
    def test_two_atoms(self):
        g = spectral_gaps(SpectralMeasure([-3.0, -1.0], [0.5, 0.5]))
        assert [(x.lower, x.upper) for x in g] == [(-math.inf, -3.0), (-3.0, -1.0),
                                                   (-1.0, math.inf)]
        assert g[0].lower_kind == "infinite"
        assert g[1].lower_kind == g[1].upper_kind == "eigenvalue"

    def test_single_atom(self):
        g = spectral_gaps(SpectralMeasure([4.0], [1.0]))
        assert [(x.lower, x.upper) for x in g] == [(-math.inf, 4.0), (4.0, math.inf)]

    def test_uniform_three_bounded(self, J3):
        g = spectral_gaps(spectral_measure(J3)).bounded()
        np.testing.assert_allclose([[x.lower, x.upper] for x in g],
                                   [[-2 - SQ2, -2.0], [-2.0, -2 + SQ2]], atol=1e-14)

    def test_contains(self):
        g = spectral_gaps(SpectralMeasure([0.0, 1.0], [0.5, 0.5]))[1]
        assert g.contains(0.5) and not g.contains(0.0)


def test_diameter():
    assert spectral_diameter(JacobiMatrix([-3.0], [])) == 3.0
    assert spectral_diameter(JacobiMatrix([0.1], [])) == 1.0
    J = uniform(3)
    lam = eigenvalues(J)
    assert spectral_diameter(J) >= lam[-1] - lam[0]
