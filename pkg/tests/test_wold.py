import numpy as np
import pytest

from kaczmarz_rkhs.measures import Atomic, atoms, cantor, fourier_table, sample_function
from kaczmarz_rkhs.series import PowerSeries, multiply
from kaczmarz_rkhs.transforms import InnerSeries, inner_from_measure, radial_check, series_function
from kaczmarz_rkhs.wold import toeplitz_adjoint, wold_layers, wold_reconstruct

N = 512


@pytest.fixture(scope="module")
def mu3_case():
    b = inner_from_measure(fourier_table(cantor(3), N))
    f = PowerSeries(0.4 ** np.arange(N + 1))  # k_{0.4}
    return b, f, wold_layers(f, b, 8)


def z2(order=8):
    return InnerSeries.monomial(2, order)


class TestToeplitzAdjoint:
    def test_shift_adjoint(self):
        out = toeplitz_adjoint(z2(), PowerSeries.monomial(3, 8))
        np.testing.assert_array_equal(out.coeffs, PowerSeries.monomial(1, 8).coeffs)

    def test_constant_dies(self):
        assert toeplitz_adjoint(z2(), PowerSeries.one(8)).norm() == 0

    def test_b_against_itself(self):
        out = toeplitz_adjoint(z2(), z2().b)
        np.testing.assert_array_equal(out.coeffs, PowerSeries.one(8).coeffs)

    def test_against_direct_sum(self, rng):
        bc = np.concatenate([[0], rng.standard_normal(6) + 1j * rng.standard_normal(6)]) / 4
        fc = rng.standard_normal(7) + 1j * rng.standard_normal(7)
        out = toeplitz_adjoint(PowerSeries(bc), PowerSeries(fc)).coeffs
        direct = [sum(np.conj(bc[j]) * fc[k + j] for j in range(7 - k)) for k in range(7)]
        np.testing.assert_allclose(out, direct, atol=1e-14)

    def test_order_preserved(self):
        assert toeplitz_adjoint(z2(3), PowerSeries(np.ones(10))).order == 9


class TestLayers:
    def test_interleave(self, rng):
        c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        w = wold_layers(PowerSeries(c), z2(5), M=3)
        for n in range(3):
            np.testing.assert_allclose(w.layers[n].coeffs[:2], c[2 * n : 2 * n + 2], atol=1e-15)
            np.testing.assert_allclose(w.layers[n].coeffs[2:], 0, atol=1e-15)
        assert w.layers[3].norm() == 0
        assert np.max(np.abs(wold_reconstruct(w).coeffs - c)) <= 1e-15

    def test_already_in_model_space(self):
        f = PowerSeries.one(16)
        w = wold_layers(f, z2(16), M=4)
        np.testing.assert_array_equal(w.layers[0].coeffs, f.coeffs)
        assert all(p.norm() == 0 for p in w.layers[1:])

    def test_m_zero(self, rng):
        f = PowerSeries(rng.standard_normal(9))
        b = z2(8)
        w = wold_layers(f, b, M=0)
        assert w.depth == 0
        np.testing.assert_allclose((w.layers[0] + multiply(b.b, w.residual)).coeffs, f.coeffs, atol=1e-15)

    def test_guards(self):
        with pytest.raises(ValueError):
            wold_layers(PowerSeries.one(4), z2(4), M=-1)
        with pytest.raises(ValueError):
            wold_layers(PowerSeries.one(16), z2(4))

    def test_monomial_identities_exact(self, rng):
        f = PowerSeries(rng.standard_normal(33) + 1j * rng.standard_normal(33))
        for m in (1, 2, 3):
            w = wold_layers(f, InnerSeries.monomial(m, 32), M=12)
            assert w.pythagoras_gap() < 1e-10 * f.norm() ** 2
            assert np.max(w.membership_errors()) < 1e-12
            assert w.orthogonality() < 1e-12


class TestMu3:
    def test_reconstruction(self, mu3_case):
        b, f, w = mu3_case
        assert np.max(np.abs(wold_reconstruct(w).coeffs - f.coeffs)) < 1e-10

    def test_layer_norms_decrease(self, mu3_case):
        _, _, w = mu3_case
        assert np.all(np.diff(w.layer_norms()) < 0)

    # The three checks below need b(mu3) to be inner on the truncation; see the
    # reported b_tail_energy (about 0.06 at this order).
    def test_pythagoras(self, mu3_case):
        _, f, w = mu3_case
        assert w.pythagoras_gap() < 1e-8

    def test_membership(self, mu3_case):
        _, _, w = mu3_case
        assert np.all(w.membership_errors() < 1e-9 * np.maximum(w.layer_norms(), 1))

    def test_orthogonality(self, mu3_case):
        _, _, w = mu3_case
        assert w.orthogonality() < 1e-9

    def test_tail_energy_reported(self, mu3_case):
        b, _, w = mu3_case
        assert 0 < w.b_tail_energy() < 1


def test_boundary_multiplication_atomic():
    # two equal atoms at 0 and 1/2 have inner function z^2; H(z^2) = span{1, z}
    rule = atoms(Atomic(((0.0, 0.5), (0.5, 0.5))))
    f = PowerSeries(np.array([1.0, 2.0]))
    bf = multiply(InnerSeries.monomial(2, 3).b, PowerSeries(np.array([1.0, 2.0, 0, 0])))
    target = sample_function(lambda x: 1 + 2 * np.exp(2j * np.pi * x), rule)
    assert f.order == 1
    res = radial_check(series_function(bf), target, radii=[1 - 1e-2, 1 - 1e-3, 1 - 1e-4])
    assert res.conclusive and np.all(np.diff(res.errors) < 0)
    assert res.errors[-1] < 1e-3
