"""Dextroduals of {e_n} in L^2(mu) built from the Kaczmarz sequence of another measure.

Two constructions are implemented:

* mixture duals: ``lambda = eta mu + (1 - eta) nu`` with nu singular to mu;
  the family ``{eta h_n}`` is a tight frame for L^2(mu) with bound eta;
* weighted duals: mu << lambda with density rho bounded in [A, B];
  ``{h_n / rho}`` is a frame with bounds no worse than 1/B and 1/A.

Here ``h_n`` is always the Kaczmarz sequence of lambda.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidEta, RuleMismatch, UnsupportedSpec, ZeroDensity
from .kaczmarz import alpha, family_gram, g_from_alpha
from .kernels import GramSeries
from .measures import (
    Atomic,
    BoundaryFunction,
    FourierTable,
    MeasureSpec,
    Mixture,
    QuadratureRule,
    atoms,
    exponential_matrix,
    fourier_table,
    warn_if_not_disjoint,
)


@dataclass(frozen=True)
class Uniform:
    eta: float


@dataclass(frozen=True, eq=False)
class Weighted:
    density: np.ndarray  # d mu / d lambda at the atoms of mu
    lower: float
    upper: float


Scaling = Union[Uniform, Weighted]


@dataclass(frozen=True, eq=False)
class DualFamily:
    rows: np.ndarray
    scaling: Scaling
    mu_rule: QuadratureRule
    lam_rule: QuadratureRule
    lam_table: FourierTable
    # position of each mu node inside lam_rule
    support_index: np.ndarray
    mu_table: FourierTable | None = None

    @property
    def order(self) -> int:
        return self.rows.shape[0] - 1

    def node_factor(self) -> np.ndarray:
        if isinstance(self.scaling, Uniform):
            return np.full(len(self.mu_rule), self.scaling.eta)
        return 1.0 / self.scaling.density

    def sampled(self) -> np.ndarray:
        """Scaled family at the nodes of mu_rule, shape (N+1, nodes)."""
        h = self.rows @ exponential_matrix(self.rows.shape[1] - 1, self.mu_rule.nodes)
        return h * self.node_factor()[None, :]

    def lam_sampled(self) -> np.ndarray:
        return self.rows @ exponential_matrix(self.rows.shape[1] - 1, self.lam_rule.nodes)


def mixture_dual(
    mu: MeasureSpec, nu: MeasureSpec, eta: float, N: int, depth: int = 10, anchor: str = "left"
) -> DualFamily:
    """Family ``{eta h_n}`` from the Kaczmarz sequence of ``eta mu + (1 - eta) nu``.

    Mutual singularity of mu and nu is the caller's responsibility; a
    warning is issued when two atomic inputs share an atom.
    """
    if not (0.0 < eta <= 1.0):
        raise InvalidEta(f"eta must lie in (0, 1], got {eta}")
    mu_rule = atoms(mu, depth, anchor)
    if eta == 1.0:
        lam = mu
        lam_rule = mu_rule
    else:
        warn_if_not_disjoint(mu, nu)
        lam = Mixture(((eta, mu), (1.0 - eta, nu)))
        lam_rule = atoms(lam, depth, anchor)
    lam_table = fourier_table(lam, N)
    rows = g_from_alpha(alpha(lam_table)).rows
    return DualFamily(
        rows=rows,
        scaling=Uniform(float(eta)),
        mu_rule=mu_rule,
        lam_rule=lam_rule,
        lam_table=lam_table,
        support_index=np.arange(len(mu_rule)),
        mu_table=fourier_table(mu, N),
    )


def weighted_dual(mu: MeasureSpec, lam: MeasureSpec, N: int) -> DualFamily:
    """Family ``{h_n / rho}`` with ``rho = d mu / d lambda``, for atomic mu << lambda."""
    if not (isinstance(mu, Atomic) and isinstance(lam, Atomic)):
        raise UnsupportedSpec("weighted duals need atomic mu and lambda")
    lam_pos = lam.positions
    index = []
    for x in mu.positions:
        hit = np.flatnonzero(np.abs(lam_pos - x) < 1e-12)
        if hit.size == 0:
            raise ZeroDensity(f"mu has an atom at {x} where lambda has no mass")
        index.append(int(hit[0]))
    index = np.array(index)
    rho = mu.weights / lam.weights[index]
    lam_table = fourier_table(lam, N)
    rows = g_from_alpha(alpha(lam_table)).rows
    return DualFamily(
        rows=rows,
        scaling=Weighted(rho, float(rho.min()), float(rho.max())),
        mu_rule=atoms(mu),
        lam_rule=atoms(lam),
        lam_table=lam_table,
        support_index=index,
        mu_table=fourier_table(mu, N),
    )


def j_coeffs(f: BoundaryFunction, fam: DualFamily) -> np.ndarray:
    """Coefficients ``<f, x_n>_mu`` of the element of J(lambda) with boundary f."""
    if not f.rule.same_as(fam.mu_rule):
        raise RuleMismatch("f must be sampled on the family's mu rule")
    x = fam.sampled()
    return (x.conj() * fam.mu_rule.weights) @ f.values


def analysis_energy(f: BoundaryFunction, fam: DualFamily) -> np.ndarray:
    """Partial sums ``sum_{n<=k} |<f, x_n>_mu|^2``."""
    return np.cumsum(np.abs(j_coeffs(f, fam)) ** 2)


def reconstruction_residuals(f: BoundaryFunction, fam: DualFamily) -> np.ndarray:
    """``||f - sum_{n<=k} <f, x_n> e_n||_mu`` for k = 0..N."""
    c = j_coeffs(f, fam)
    expo = exponential_matrix(fam.order, fam.mu_rule.nodes)
    partial = np.cumsum(c[:, None] * expo, axis=0)
    return np.sqrt((np.abs(partial - f.values[None, :]) ** 2) @ fam.mu_rule.weights)


def frame_bounds_empirical(fam: DualFamily, trials: int = 64, seed: int = 0x5EED, degree: int = 8):
    """Frame bounds of the scaled family in L^2(mu).

    For exact (atomic) rules these are the extreme eigenvalues of the frame
    operator of the truncated family.  Otherwise they are the extreme
    Rayleigh quotients over ``trials`` random trigonometric polynomials of
    the given degree, i.e. estimates only.
    """
    x = fam.sampled()
    w = fam.mu_rule.weights
    if fam.mu_rule.exact:
        sw = np.sqrt(w)
        op = (sw[:, None] * (x.T @ x.conj())) * sw[None, :]
        eig = np.linalg.eigvalsh((op + op.conj().T) / 2)
        return float(eig.min()), float(eig.max())
    rng = np.random.default_rng(seed)
    freqs = np.arange(-degree, degree + 1)
    basis = np.exp(2j * np.pi * np.multiply.outer(freqs, fam.mu_rule.nodes))
    quotients = []
    for _ in range(trials):
        c = rng.standard_normal(freqs.size) + 1j * rng.standard_normal(freqs.size)
        f = c @ basis
        energy = np.sum(np.abs((x.conj() * w) @ f) ** 2)
        quotients.append(energy / np.dot(w, np.abs(f) ** 2))
    return float(min(quotients)), float(max(quotients))


def backward_shift(c) -> np.ndarray:
    """``S^*``: drop the constant coefficient and shift left."""
    return np.asarray(c)[1:].copy()


@dataclass(frozen=True, eq=False)
class ShiftIdentity:
    lhs: np.ndarray  # S^* applied to the J(lambda) coefficients of f
    rhs: np.ndarray  # coefficients of (f~ - <f~, e_0>_lambda) e_{-1} against h_n in L^2(lambda)
    outside_norm: float  # L^2(lambda) norm of that function off supp(mu)

    @property
    def error(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs)))


def shift_identity(f: BoundaryFunction, fam: DualFamily) -> ShiftIdentity:
    """Both sides of the backward-shift formula for J(lambda), computed independently.

    The left side comes from the mu-side coefficients; the right side lifts
    f to ``f~ = f chi_M`` on the lambda rule and pairs the shifted function
    with the unscaled h_n.  A nonzero ``outside_norm`` certifies that the
    shifted function is not of the form ``w chi_M``.
    """
    lhs = backward_shift(j_coeffs(f, fam))
    lam_rule = fam.lam_rule
    ft = np.zeros(len(lam_rule), dtype=np.complex128)
    ft[fam.support_index] = f.values
    mean = np.dot(lam_rule.weights, ft)
    u = (ft - mean) * np.exp(-2j * np.pi * lam_rule.nodes)
    h = fam.lam_sampled()[: fam.order]
    rhs = (h.conj() * lam_rule.weights) @ u
    outside = np.ones(len(lam_rule), dtype=bool)
    outside[fam.support_index] = False
    outside_norm = float(np.sqrt(np.dot(lam_rule.weights[outside], np.abs(u[outside]) ** 2)))
    return ShiftIdentity(lhs, rhs, outside_norm)


def dual_kernel(fam: DualFamily) -> GramSeries:
    """Gram kernel ``sum <x_n, x_m>_mu conj(z)^n w^m`` of the scaled family."""
    if isinstance(fam.scaling, Uniform) and fam.mu_table is not None:
        g = fam.scaling.eta**2 * family_gram(fam.rows, fam.mu_table)
        return GramSeries(g, fam.rows, scale=fam.scaling.eta)
    x = fam.sampled()
    g = (x * fam.mu_rule.weights) @ x.conj().T
    if isinstance(fam.scaling, Uniform):
        return GramSeries(g, fam.rows, scale=fam.scaling.eta)
    density = BoundaryFunction(fam.mu_rule, fam.scaling.density)
    return GramSeries(g, fam.rows, density=density)


def family_distance(a: DualFamily, b: DualFamily) -> float:
    """``max_n ||x_n - x'_n||_mu`` between two families on the same mu rule."""
    if not a.mu_rule.same_as(b.mu_rule):
        raise RuleMismatch("families live on different mu rules")
    n = min(a.order, b.order) + 1
    d = a.sampled()[:n] - b.sampled()[:n]
    return float(np.sqrt(np.max((np.abs(d) ** 2) @ a.mu_rule.weights)))
