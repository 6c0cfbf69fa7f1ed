import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaczmarz_rkhs.errors import RuleMismatch
from kaczmarz_rkhs.kaczmarz import (
    alpha,
    expand,
    g_from_alpha,
    g_recursive,
    gram,
    gram_quadrature,
)
from kaczmarz_rkhs.measures import (
    Atomic,
    BoundaryFunction,
    FourierTable,
    atoms,
    delta,
    fourier_table,
    sample_exponential,
)


def gram_schmidt_like(table):
    """Plain-python recursion over inner products, independent of the library loop."""
    N = table.order
    ip = lambda n, i: np.conj(table.at(n - i))  # <e_n, e_i>
    rows = []
    for n in range(N + 1):
        r = np.zeros(N + 1, dtype=complex)
        r[n] = 1.0
        for i in range(n):
            r -= ip(n, i) * rows[i]
        rows.append(r)
    return np.array(rows)


class TestAlpha:
    def test_point_mass(self):
        a = alpha(fourier_table(delta(0.0), 6)).alpha
        np.testing.assert_allclose(a, [1, -1, 0, 0, 0, 0, 0], atol=1e-15)

    def test_two_atom(self, two_atom):
        a = alpha(fourier_table(two_atom, 6)).alpha
        np.testing.assert_allclose(a, [1, 0, -1, 0, 0, 0, 0], atol=1e-15)

    def test_mu3_convolution(self, mu3):
        t = fourier_table(mu3, 128)
        a = alpha(t)
        assert a.alpha[0] == 1
        assert a.convolution_residual(t) < 1e-12

    def test_newton_path(self, mu4):
        t = fourier_table(mu4, 200)
        np.testing.assert_allclose(alpha(t, "newton").alpha, alpha(t).alpha, atol=1e-12)


class TestRows:
    def test_point_mass_rows(self):
        g = g_from_alpha(alpha(fourier_table(delta(0.0), 4)))
        np.testing.assert_allclose(g.row(1), [-1, 1], atol=0)
        np.testing.assert_allclose(g.row(0), [1], atol=0)

    def test_two_atom_rows(self, two_atom):
        g = g_from_alpha(alpha(fourier_table(two_atom, 4)))
        np.testing.assert_allclose(g.row(2), [-1, 0, 1], atol=1e-15)

    def test_recursive_examples(self, two_atom):
        g = g_recursive(fourier_table(delta(0.0), 3))
        np.testing.assert_allclose(g.row(1), [-1, 1], atol=0)
        g = g_recursive(fourier_table(two_atom, 3))
        np.testing.assert_allclose(g.row(1), [0, 1], atol=1e-15)

    def test_diagonal_and_triangular(self, mu3):
        g = g_from_alpha(alpha(fourier_table(mu3, 30)))
        np.testing.assert_array_equal(np.diag(g.rows), 1)
        assert np.all(np.triu(g.rows, 1) == 0)

    def test_entries_are_conjugate_alpha(self, mu3):
        a = alpha(fourier_table(mu3, 20))
        g = g_from_alpha(a)
        for n in (5, 20):
            np.testing.assert_array_equal(g.row(n), np.conj(a.alpha[n::-1]))

    def test_mu3_two_path_64(self, mu3):
        t = fourier_table(mu3, 64)
        assert np.max(np.abs(g_recursive(t).rows - g_from_alpha(alpha(t)).rows)) < 1e-10

    def test_two_path_all_measures(self, test_measures):
        for name, spec in test_measures.items():
            t = fourier_table(spec, 128)
            diff = np.max(np.abs(g_recursive(t).rows - g_from_alpha(alpha(t)).rows))
            assert diff < 1e-10, name
            assert alpha(t).convolution_residual(t) < 1e-12, name

    def test_library_recursion_matches_plain_oracle(self, test_measures):
        t = fourier_table(test_measures["mixture"], 40)
        np.testing.assert_allclose(g_recursive(t).rows, gram_schmidt_like(t), atol=1e-12)


class TestGram:
    def test_point_mass(self):
        G = gram(fourier_table(delta(0.0), 6), g_from_alpha(alpha(fourier_table(delta(0.0), 6)))).entries
        expected = np.zeros((7, 7))
        expected[0, 0] = 1
        np.testing.assert_allclose(G, expected, atol=1e-14)

    def test_two_atom(self, two_atom):
        t = fourier_table(two_atom, 6)
        G = gram(t, g_from_alpha(alpha(t))).entries
        np.testing.assert_allclose(G, np.diag([1, 1, 0, 0, 0, 0, 0]), atol=1e-14)

    def test_origin_entry_and_psd(self, test_measures):
        for spec in test_measures.values():
            t = fourier_table(spec, 64)
            G = gram(t, g_from_alpha(alpha(t)))
            assert G.entries[0, 0] == pytest.approx(1.0, abs=1e-14)
            assert G.hermitian_defect() < 1e-13
            assert G.is_psd()

    def test_against_quadrature(self, mu3):
        t = fourier_table(mu3, 20)
        g = g_from_alpha(alpha(t))
        rule = atoms(mu3, 12, anchor="barycenter")
        assert np.max(np.abs(gram(t, g).entries - gram_quadrature(rule, g).entries)) < 1e-6

    def test_short_table(self, mu3):
        g = g_from_alpha(alpha(fourier_table(mu3, 10)))
        with pytest.raises(ValueError):
            gram(fourier_table(mu3, 5), g)


class TestExpand:
    def test_two_atom_e1(self, two_atom):
        t = fourier_table(two_atom, 8)
        e = expand(sample_exponential(1, atoms(two_atom)), g_from_alpha(alpha(t)), t)
        np.testing.assert_allclose(e.coeffs, [0, 1, 0, 0, 0, 0, 0, 0, 0], atol=1e-15)
        assert e.residuals[1] < 1e-15

    def test_point_mass_constant(self):
        t = fourier_table(delta(0.0), 5)
        f = BoundaryFunction(atoms(delta(0.0)), [2 - 1j])
        e = expand(f, g_from_alpha(alpha(t)), t)
        np.testing.assert_allclose(e.coeffs, [2 - 1j, 0, 0, 0, 0, 0], atol=1e-15)

    def test_two_atom_parseval_at_one(self, two_atom, rng):
        t = fourier_table(two_atom, 10)
        g = g_from_alpha(alpha(t))
        for _ in range(5):
            f = BoundaryFunction(atoms(two_atom), rng.standard_normal(2) + 1j * rng.standard_normal(2))
            e = expand(f, g, t)
            assert abs(e.parseval[1] - e.norm_sq) < 1e-12

    def test_mu3_partial_sums(self, mu3):
        t = fourier_table(mu3, 256)
        g = g_from_alpha(alpha(t))
        rule = atoms(mu3, 12, anchor="barycenter")
        for k in (0, 1, 2):
            e = expand(sample_exponential(k, rule), g, t)
            assert e.monotone
            assert e.parseval[-1] <= e.norm_sq * (1 + 1e-10)

    def test_rule_mismatch(self, mu3, two_atom):
        t = fourier_table(mu3, 16)
        with pytest.raises(RuleMismatch):
            expand(sample_exponential(1, atoms(two_atom)), g_from_alpha(alpha(t)), t)


atom_lists = st.lists(
    st.tuples(st.integers(0, 999), st.floats(0.05, 1.0)), min_size=1, max_size=5, unique_by=lambda t: t[0]
)


@settings(max_examples=30, deadline=None)
@given(atom_lists, st.integers(0, 6))
def test_parseval_on_random_atomic(items, k):
    total = sum(w for _, w in items)
    spec = Atomic(tuple((x / 1000, w / total) for x, w in items))
    t = fourier_table(spec, 64)
    g = g_from_alpha(alpha(t))
    e = expand(sample_exponential(k, atoms(spec)), g, t)
    assert e.monotone
    assert e.parseval[-1] <= e.norm_sq * (1 + 1e-10)


@settings(max_examples=30, deadline=None)
@given(atom_lists)
def test_two_path_random_atomic(items):
    total = sum(w for _, w in items)
    t = fourier_table(Atomic(tuple((x / 1000, w / total) for x, w in items)), 48)
    assert np.max(np.abs(g_recursive(t).rows - g_from_alpha(alpha(t)).rows)) < 1e-10


def test_table_guard():
    with pytest.raises(Exception):
        alpha(FourierTable([0.0, 1.0]))
