import numpy as np
import pytest

from kaczmarz_rkhs.clark import (
    clark_family,
    clark_measure,
    comb_atoms,
    expsum_sides,
    measure_power,
    roots_of_unity,
    verify_affine,
    verify_expsum,
)
from kaczmarz_rkhs.measures import Atomic, fourier_table
from kaczmarz_rkhs.transforms import InnerSeries, inner_from_measure

K = 64


def z_power(m, order=K):
    return InnerSeries.monomial(m, order)


def comb_moments(m, k_max=K, shift=0.0):
    k = np.arange(k_max + 1)
    return np.where(k % m == 0, np.exp(-2j * np.pi * k * shift), 0)


@pytest.fixture(scope="module")
def b_mu3():
    from kaczmarz_rkhs.measures import cantor

    return inner_from_measure(fourier_table(cantor(3), 256))


class TestMeasurePower:
    def test_z_squared_gives_half_comb(self):
        np.testing.assert_allclose(measure_power(z_power(1), 2).values, comb_moments(2), atol=1e-14)

    def test_z2_squared_gives_quarter_comb(self):
        np.testing.assert_allclose(measure_power(z_power(2), 2).values, comb_moments(4), atol=1e-14)

    def test_n1_roundtrip(self, b_mu3, mu3):
        t = measure_power(b_mu3, 1)
        np.testing.assert_allclose(t.values, fourier_table(mu3, 256).values, atol=1e-12)

    def test_needs_positive_n(self):
        with pytest.raises(ValueError):
            measure_power(z_power(1), 0)


class TestClarkFamily:
    def test_b_z_two_members(self):
        fam = clark_family(z_power(1), 2)
        np.testing.assert_allclose(fam.sigma_tables[0].values, np.ones(K + 1), atol=1e-14)
        np.testing.assert_allclose(fam.sigma_tables[1].values, (-1.0) ** np.arange(K + 1), atol=1e-14)
        np.testing.assert_allclose(fam.average(), comb_moments(2), atol=1e-14)

    def test_b_z2_two_members(self):
        fam = clark_family(z_power(2), 2)
        np.testing.assert_allclose(fam.sigma_tables[0].values, comb_moments(2), atol=1e-14)
        np.testing.assert_allclose(fam.sigma_tables[1].values, comb_moments(2, shift=0.25), atol=1e-14)
        assert fam.decomposition_residual() < 1e-12

    def test_n1_is_identity(self, b_mu3):
        fam = clark_family(b_mu3, 1)
        assert fam.decomposition_residual() == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_decomposition_all_b(self, n, b_mu3):
        for b in (z_power(1), z_power(2), b_mu3):
            assert clark_family(b, n).decomposition_residual(K) < 1e-10

    def test_sigma_tables_are_probability_moments(self, b_mu3):
        for s in clark_family(b_mu3, 3).sigma_tables:
            assert abs(s.values[0] - 1) < 1e-12
            assert np.all(np.abs(s.values) <= 1 + 1e-10)

    def test_clark_at_one_is_own_measure(self, b_mu3):
        np.testing.assert_allclose(clark_measure(b_mu3, 1.0).values, measure_power(b_mu3, 1).values)

    def test_roots(self):
        np.testing.assert_allclose(roots_of_unity(4), [1, 1j, -1, -1j], atol=1e-15)


class TestExpsum:
    def test_rational_case(self):
        lhs, rhs = expsum_sides(0.5, 2)
        assert abs(lhs - 5 / 3) < 1e-15 and abs(rhs - 5 / 3) < 1e-15

    def test_at_zero(self):
        assert expsum_sides(0.0, 5) == (1.0, 1.0)

    def test_mu3_random_samples(self, b_mu3, rng):
        zs = 0.7 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
        for n in range(1, 9):
            assert verify_expsum(b_mu3, n, zs) < 1e-10


class TestAffine:
    @pytest.mark.parametrize("m", [1, 2])
    def test_monomials(self, m):
        assert verify_affine(z_power(1), m, 2).residual < 1e-12
        assert verify_affine(z_power(2), m, 2).residual < 1e-12

    @pytest.mark.parametrize("m", [1, 2])
    def test_mu3(self, m, b_mu3):
        r = verify_affine(b_mu3, m, 2, K)
        assert r.residual < 1e-9
        assert r.n == 2 * m and r.per_moment.size == K + 1

    def test_b_z_rho_is_half_point_mass(self):
        r = verify_affine(z_power(1), 1, 2)
        np.testing.assert_allclose(r.rho, (-1.0) ** np.arange(K + 1), atol=1e-14)

    def test_guards(self):
        with pytest.raises(ValueError):
            verify_affine(z_power(1), 1, 1)


class TestCombAtoms:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_clark_atoms_disjoint(self, m):
        n = 4
        fam = clark_family(z_power(m), n)
        sets = [comb_atoms(t, m) for t in fam.sigma_tables]
        for i in range(n):
            assert len(sets[i]) == m
            for j in range(i):
                assert np.min(np.abs(np.subtract.outer(sets[i], sets[j]))) > 1e-6

    def test_half_comb_atoms(self):
        t = fourier_table(Atomic(((0.0, 0.5), (0.5, 0.5))), 16)
        np.testing.assert_allclose(comb_atoms(t, 2), [0, 0.5], atol=1e-14)

    def test_not_a_comb(self):
        t = fourier_table(Atomic(((0.0, 0.7), (0.5, 0.3))), 16)
        with pytest.raises(ValueError):
            comb_atoms(t, 2)
