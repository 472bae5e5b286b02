import math

import numpy as np
import pytest

from jacobi_spectra import (
    HypothesisViolated,
    Perturbation,
    apply_perturbation,
    augmented_measure,
    borel_F,
    classify,
    gamma,
    green,
    locate_new_eigenvalues,
    master,
)
from jacobi_spectra.instances import jacobi_with_common, random_jacobi
from jacobi_spectra.perturbation_analysis import interlacing_gaps, match_spectra
from jacobi_spectra.verification import theorem_gaps

from conftest import dense_eigh, off_spectrum_points, uniform


def dense_green(J, z, n):
    lam, W = dense_eigh(J)
    return complex(np.sum(W[n - 1] ** 2 / (lam - z)))


# sigma(Jt) for the uniform N=5 chain, n=2, theta=1/2, h=0, from LAPACK
U5_JT = [-3.4377539126174077, -2.2166926658850401, -2.0,
         -0.70618574994130967, -0.13936767155624252]


@pytest.fixture
def u5():
    return uniform(5), Perturbation(2, 0.5, 0.0)


def test_gamma_function():
    assert gamma(Perturbation(1, 0.5, 3.0)) == pytest.approx(1.0)
    assert gamma(Perturbation(1, 2.0, -3.0)) == pytest.approx(4.0)
    assert math.isinf(gamma(Perturbation(1, 1.0, -3.0)))


def test_frozen_perturbed_spectrum(u5):
    J, p = u5
    np.testing.assert_allclose(dense_eigh(apply_perturbation(J, p))[0], U5_JT, atol=1e-13)


class TestMaster:
    def test_identity_perturbation(self, rng):
        J = random_jacobi(rng, 6)
        for z in off_spectrum_points(rng, J, 10):
            m = master(J, Perturbation(3, 1.0, 0.0), z)
            assert m.ratio == pytest.approx(1.0, abs=1e-14)
            assert m.affine == 1.0

    def test_against_dense_oracle(self, rng):
        for _ in range(20):
            J = random_jacobi(rng, int(rng.integers(1, 12)))
            n = int(rng.integers(1, J.size + 1))
            p = Perturbation(n, 0.5, 1.0)
            Jt = apply_perturbation(J, p)
            ratio = dense_green(J, 1j, n) / dense_green(Jt, 1j, n)
            m = master(J, p, 1j)
            assert abs(ratio - m.affine) <= 1e-8 * max(1.0, abs(ratio))
            assert m.discrepancy <= 1e-8
            assert m.ratio * m.reciprocal_ratio == pytest.approx(1.0)
            assert 1.0 / ratio == pytest.approx(m.reciprocal_affine, rel=1e-8)

    def test_at_gamma(self, rng):
        J = random_jacobi(rng, 6, (-3, 3), (0.3, 2))
        lam = dense_eigh(J)[0]
        g = 0.5 * (lam[2] + lam[3])
        p = Perturbation.with_gamma(3, 0.6, g)
        m = master(J, p, g)
        assert m.affine == pytest.approx(0.36, abs=1e-12)
        assert m.ratio == pytest.approx(0.36, rel=1e-8)

    def test_theta_one_is_rank_one_form(self, rng):
        J = random_jacobi(rng, 6)
        p = Perturbation(2, 1.0, 0.7)
        z = 0.3 + 1j
        m = master(J, p, z)
        assert m.affine == pytest.approx(1 + 0.7 * green(J, z, 2), rel=1e-14)
        assert m.discrepancy <= 1e-8


class TestMatch:
    def test_partition(self):
        pairs, a, b = match_spectra([0.0, 1.0, 2.0], [0.5, 1.0 + 1e-12, 3.0], 1e-9)
        assert pairs == [(1.0, 1.0 + 1e-12)]
        assert a == [0.0, 2.0]
        assert b == [0.5, 3.0]

    def test_interlacing_gaps(self):
        g = interlacing_gaps([-1.0, 2.0])
        assert [(x.lower, x.upper) for x in g] == [(-math.inf, -1.0), (-1.0, 2.0),
                                                   (2.0, math.inf)]
        assert interlacing_gaps([]) == []


class TestClassify:
    def test_identity_all_common(self, rng):
        J = random_jacobi(rng, 7)
        rep = classify(J, Perturbation(4, 1.0, 0.0))
        assert len(rep.common) == 7
        assert rep.J_only == rep.Jt_only == []
        assert rep.gap_records == []
        assert math.isinf(rep.gamma)

    def test_partitions(self, rng):
        for _ in range(30):
            J = random_jacobi(rng, int(rng.integers(2, 11)), (-3, 3), (0.3, 2))
            p = Perturbation(int(rng.integers(1, J.size + 1)),
                             float(rng.uniform(0.2, 2.5)), float(rng.normal()))
            rep = classify(J, p)
            left = sorted([a for a, _ in rep.common] + rep.J_only)
            right = sorted([b for _, b in rep.common] + rep.Jt_only)
            np.testing.assert_array_equal(left, rep.eigs_J)
            np.testing.assert_array_equal(right, rep.eigs_Jt)
            for rec in rep.gap_records:
                assert rec.new_count >= 0

    def test_uniform_common(self, J3):
        for theta, h in ((0.5, 0.0), (0.3, 2.0), (1.7, -1.0), (1.0, 0.4)):
            rep = classify(J3, Perturbation(2, theta, h))
            common = [a for a, _ in rep.common]
            assert any(abs(x + 2.0) < 1e-12 for x in common)
            assert rep.common_zero_violations == []
            assert -2.0 in np.round(dense_eigh(apply_perturbation(J3, Perturbation(2, theta, h)))[0], 12)

    def test_uniform_five_records(self, u5):
        J, p = u5
        rep = classify(J, p)
        lam_t = dense_eigh(apply_perturbation(J, p))[0]
        np.testing.assert_allclose(sorted(rep.Jt_only + [b for _, b in rep.common]), lam_t,
                                   atol=1e-12)
        assert [round(a, 12) for a, _ in rep.common] == [-2.0]
        bounded = [r for r in rep.gap_records if math.isfinite(r.lower) and math.isfinite(r.upper)]
        assert len(bounded) == 3
        for rec in bounded:
            # gamma = 0 lies above the spectrum: a single region A per gap
            assert [r.name for r in rec.regions] == ["A"]
            assert rec.new_count == 1
            reg = rec.regions[0]
            if reg.common:
                assert reg.common == [pytest.approx(-2.0)]
                assert reg.attractor_ok
        assert not rep.swapped

    def test_near_coincidence_kept_apart(self):
        # close eigenvalues with non-negligible weight at the site are not
        # declared shared (found by the randomized campaign)
        rng = np.random.default_rng(2)
        from jacobi_spectra.verification import CAMPAIGN_KINDS, campaign_instance
        for i in range(101):
            kind = CAMPAIGN_KINDS[i % 4]
            J, p = campaign_instance(rng, kind, (i // 4) % 2 == 0)
        rep = classify(J, p)
        eJ, eT = dense_eigh(J)[0], dense_eigh(apply_perturbation(J, p))[0]
        close = [(x, y) for x in eJ for y in eT if abs(x - y) < 1e-8]
        assert close, "the instance should contain a near coincidence"
        assert all(abs(a - x) > 1e-12 for a, _ in rep.common for x, _ in close)

    def test_shared_are_green_zeros_on_constructed(self, rng):
        for _ in range(20):
            N = int(rng.integers(3, 10))
            site = int(rng.integers(2, N))
            J, lam = jacobi_with_common(rng, N, site)
            p = Perturbation(site, float(rng.uniform(0.2, 2.5)), float(rng.normal()))
            rep = classify(J, p)
            assert any(abs(a - lam) < 1e-8 for a, _ in rep.common)
            assert rep.common_zero_violations == []

    def test_match_tol_must_be_positive(self, J3):
        with pytest.raises(ValueError):
            classify(J3, Perturbation(1, 0.5, 0.0), match_tol=0.0)


class TestAugmentedMeasure:
    def test_transform_is_master_quotient(self, rng):
        # F_omega(x) = M(x) / ((1 - theta**2)(gamma - x)) on the real axis
        J = random_jacobi(rng, 6, (-3, 3), (0.3, 2))
        p = Perturbation(3, 0.6, 0.8)
        omega = augmented_measure(J, p)
        lam = dense_eigh(J)[0]
        x = 0.5 * (lam[1] + lam[2])
        t2 = p.theta ** 2
        m = master(J, p, x)
        assert borel_F(omega, x) == pytest.approx(
            m.affine.real / ((1 - t2) * (p.gamma - x)), rel=1e-9)

    def test_theta_one(self, J3):
        with pytest.raises(HypothesisViolated):
            augmented_measure(J3, Perturbation(1, 1.0, 0.0))


class TestLocate:
    def test_uniform_five(self, u5):
        J, p = u5
        lam_t = np.array(U5_JT)
        found = []
        for gp in theorem_gaps(J, p):
            roots = locate_new_eigenvalues(J, p, gp)
            # gamma = 0 is above every bounded gap: one root per gap
            assert len(roots) == 1
            assert np.min(np.abs(lam_t - roots[0])) < 1e-10
            found += roots
        assert len(found) == 3

    def test_lower_ray_no_roots(self, u5):
        J, p = u5
        lam = dense_eigh(J)[0]
        assert locate_new_eigenvalues(J, p, (-math.inf, lam[0])) == []

    def test_upper_ray_with_gamma(self, u5):
        J, p = u5
        lam = dense_eigh(J)[0]
        roots = locate_new_eigenvalues(J, p, (lam[-1], math.inf))
        assert roots == [pytest.approx(U5_JT[-1], abs=1e-10)]

    def test_theta_one_rejected(self, J3):
        with pytest.raises(HypothesisViolated) as info:
            locate_new_eigenvalues(J3, Perturbation(1, 1.0, 0.1), (-3.5, -2.5))
        assert info.value.hypothesis == "theta-one"

    def test_endpoint_checks(self, u5):
        J, p = u5
        lam = dense_eigh(J)[0]
        with pytest.raises(HypothesisViolated) as info:
            locate_new_eigenvalues(J, p, (lam[1], -2.0))
        assert info.value.hypothesis == "endpoint-common"
        with pytest.raises(HypothesisViolated) as info:
            locate_new_eigenvalues(J, p, (lam[1], -1.5))
        assert info.value.hypothesis == "endpoint-not-eigenvalue"
        with pytest.raises(HypothesisViolated) as info:
            locate_new_eigenvalues(J, p, (lam[0], lam[3]))
        assert info.value.hypothesis == "interior-unshared"

    def test_swapped(self, rng):
        for _ in range(20):
            J = random_jacobi(rng, int(rng.integers(4, 10)), (-3, 3), (0.3, 2))
            p = Perturbation(int(rng.integers(1, J.size + 1)),
                             float(rng.uniform(1.1, 2.5)), float(rng.normal()))
            lam_J = dense_eigh(J)[0]
            for gp in theorem_gaps(J, p):
                for r in locate_new_eigenvalues(J, p, gp):
                    # for theta > 1 the new points are eigenvalues of J
                    assert np.min(np.abs(lam_J - r)) < 1e-9

    def test_direction(self, u5):
        J, p = u5
        with pytest.raises(HypothesisViolated) as info:
            locate_new_eigenvalues(J, p, (-3.0, -1.0), swap=True)
        assert info.value.hypothesis == "direction"
