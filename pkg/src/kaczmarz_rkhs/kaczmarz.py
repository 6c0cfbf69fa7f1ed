"""The Kaczmarz auxiliary sequence {g_n} of a measure and its Gram matrix.

Every g_n is stored as a row of coefficients over the exponentials
e_0..e_n.  Two independent constructions are provided: the defining
recursion ``g_n = e_n - sum_{i<n} <e_n, e_i> g_i`` and the closed form
``g_n = sum_i conj(alpha_{n-i}) e_i`` with ``alpha`` the series reciprocal
of the Fourier coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RuleMismatch
from .measures import (
    BoundaryFunction,
    FourierTable,
    QuadratureRule,
    exponential_matrix,
)
from .series import PowerSeries, reciprocal


@dataclass(frozen=True, eq=False)
class AlphaSeq:
    alpha: np.ndarray

    @property
    def order(self) -> int:
        return self.alpha.size - 1

    def convolution_residual(self, table: FourierTable) -> float:
        """``max_{1<=n<=N} |sum_k alpha_k mu_hat(n-k)|``."""
        n = min(self.order, table.order) + 1
        conv = np.convolve(self.alpha[:n], table.values[:n])[:n]
        return float(np.max(np.abs(conv[1:]))) if n > 1 else 0.0


@dataclass(frozen=True, eq=False)
class GnMatrix:
    """Lower-triangular table; ``rows[n, i]`` is the coefficient of e_i in g_n."""

    rows: np.ndarray

    @property
    def order(self) -> int:
        return self.rows.shape[0] - 1

    def row(self, n: int) -> np.ndarray:
        return self.rows[n, : n + 1]

    def sample(self, rule: QuadratureRule) -> np.ndarray:
        """Matrix of values ``g_n(x_k)``, shape (N+1, len(rule))."""
        return self.rows @ exponential_matrix(self.rows.shape[1] - 1, rule.nodes)

    def boundary(self, n: int, rule: QuadratureRule) -> BoundaryFunction:
        coeffs = self.rows[n]
        return BoundaryFunction(rule, coeffs @ exponential_matrix(coeffs.size - 1, rule.nodes))


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0] - 1

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min())

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def is_psd(self, rel_tol: float = 1e-9) -> bool:
        return self.min_eigenvalue() >= -rel_tol * max(self.trace(), 1e-300)


def alpha(table: FourierTable, method: str = "forward") -> AlphaSeq:
    """Reciprocal of the series ``sum mu_hat(n) z^n``: the triangular Toeplitz inversion."""
    return AlphaSeq(reciprocal(PowerSeries(table.values), method=method).coeffs.copy())


def g_from_alpha(a: AlphaSeq) -> GnMatrix:
    n = a.order + 1
    idx = np.arange(n)
    lag = idx[:, None] - idx[None, :]
    rows = np.where(lag >= 0, np.conj(a.alpha)[np.clip(lag, 0, None)], 0)
    return GnMatrix(rows.astype(np.complex128))


def g_recursive(table: FourierTable) -> GnMatrix:
    """Run the recursion directly, reading ``<e_n, e_i>_mu = mu_hat(i - n)`` from the table."""
    n_rows = table.order + 1
    rows = np.zeros((n_rows, n_rows), dtype=np.complex128)
    rows[0, 0] = 1.0
    for n in range(1, n_rows):
        # <e_n, e_i> = conj(mu_hat(n - i)), i = 0..n-1
        proj = np.conj(table.values[n - np.arange(n)])
        rows[n] = -(proj @ rows[:n])
        rows[n, n] += 1.0
    return GnMatrix(rows)


def gram(table: FourierTable, g: GnMatrix) -> GramMatrix:
    """``G[n, m] = <g_n, g_m>_mu`` from the exact bilinear form on exponentials."""
    size = g.rows.shape[1]
    if table.order + 1 < size:
        raise ValueError("Fourier table is shorter than the coefficient rows")
    return GramMatrix(family_gram(g.rows, table))


def family_gram(rows: np.ndarray, table: FourierTable) -> np.ndarray:
    """``<h_n, h_m>_mu`` for any coefficient rows, via ``rows T rows^H``."""
    t = table.toeplitz(rows.shape[1])
    return rows @ t @ rows.conj().T


def gram_quadrature(rule: QuadratureRule, g: GnMatrix) -> GramMatrix:
    """Gram matrix by quadrature on ``rule``; a check on :func:`gram`."""
    vals = g.sample(rule)
    return GramMatrix((vals * rule.weights) @ vals.conj().T)


@dataclass(frozen=True, eq=False)
class Expansion:
    coeffs: np.ndarray  # <f, g_n>_mu
    residuals: np.ndarray  # ||f - sum_{n<=k} <f,g_n> e_n||_mu
    parseval: np.ndarray  # sum_{n<=k} |<f,g_n>|^2
    norm_sq: float

    @property
    def monotone(self) -> bool:
        return bool(np.all(np.diff(self.parseval) >= -1e-15 * max(self.norm_sq, 1.0)))


def check_rule_matches(rule: QuadratureRule, table: FourierTable, n_check: int = 4, slack=1e-9):
    """Raise RuleMismatch if the rule's low moments disagree with ``table``."""
    for n in range(1, min(n_check, table.order) + 1):
        q = np.dot(rule.weights, np.exp(-2j * np.pi * n * rule.nodes))
        if abs(q - table[n]) > rule.exponential_error_bound(n) + slack:
            raise RuleMismatch(f"rule moment {n} is {q:.6g}, table says {table[n]:.6g}")


def expand(f: BoundaryFunction, g: GnMatrix, table: FourierTable | None = None) -> Expansion:
    """Kaczmarz expansion ``sum <f, g_n> e_n`` of ``f`` with partial-sum diagnostics."""
    rule = f.rule
    if table is not None:
        check_rule_matches(rule, table)
    vals = g.sample(rule)
    coeffs = (vals.conj() * rule.weights) @ f.values
    expo = exponential_matrix(g.order, rule.nodes)
    partial = np.cumsum(coeffs[:, None] * expo, axis=0)
    diff = partial - f.values[None, :]
    residuals = np.sqrt((np.abs(diff) ** 2) @ rule.weights)
    return Expansion(
        coeffs=coeffs,
        residuals=residuals,
        parseval=np.cumsum(np.abs(coeffs) ** 2),
        norm_sq=f.norm() ** 2,
    )
