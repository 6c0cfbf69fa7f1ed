"""Clark measures of an inner function and the measures of its powers.

For an inner ``b`` and ``|alpha| = 1``, ``sigma_alpha`` is the measure whose
inner function is ``conj(alpha) b``; ``mu_n`` is the measure of ``b^n``.
Measures are compared through their moments ``k = 0..K``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .measures import FourierTable
from .series import as_complex, power
from .transforms import InnerSeries, measure_from_inner


def measure_power(b: InnerSeries, n: int) -> FourierTable:
    if n < 1:
        raise ValueError("measure_power needs n >= 1")
    return measure_from_inner(InnerSeries(power(b.b, n)))


def clark_measure(b: InnerSeries, alpha_: complex) -> FourierTable:
    """sigma_alpha, from the rotated inner function ``conj(alpha) b``."""
    return measure_from_inner(b.rotate(np.conj(alpha_)))


def roots_of_unity(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True, eq=False)
class ClarkFamily:
    b: InnerSeries
    n: int
    sigma_tables: tuple  # sigma at omega^j, j = 0..n-1, omega = e^{2 pi i / n}
    mu_n_table: FourierTable

    def average(self) -> np.ndarray:
        return np.mean([t.values for t in self.sigma_tables], axis=0)

    def residuals(self) -> np.ndarray:
        """Per-moment ``|mu_n_hat(k) - (1/n) sum_j sigma_hat_j(k)|``."""
        return np.abs(self.mu_n_table.values - self.average())

    def decomposition_residual(self, k_max: int | None = None) -> float:
        r = self.residuals()
        return float(r[: (k_max + 1) if k_max is not None else None].max())


def clark_family(b: InnerSeries, n: int) -> ClarkFamily:
    if n < 1:
        raise ValueError("clark_family needs n >= 1")
    sigmas = tuple(clark_measure(b, a) for a in roots_of_unity(n))
    return ClarkFamily(b, n, sigmas, measure_power(b, n))


def expsum_sides(bz: complex, n: int) -> tuple[complex, complex]:
    """Both sides of ``(1/n) sum_j (1 + w_j b)/(1 - w_j b) = (1 + b^n)/(1 - b^n)``, ``w_j = e^{-2 pi i j/n}``."""
    w = np.exp(-2j * np.pi * np.arange(n) / n)
    lhs = np.mean((1 + w * bz) / (1 - w * bz))
    bn = bz**n
    rhs = (1 + bn) / (1 - bn)
    return complex(lhs), complex(rhs)


def verify_expsum(b: InnerSeries, n: int, samples: Sequence) -> float:
    worst = 0.0
    for z in samples:
        bz, _ = b.evaluate(as_complex(z))
        lhs, rhs = expsum_sides(bz, n)
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True, eq=False)
class AffineReport:
    m: int
    q: int
    n: int
    residual: float
    per_moment: np.ndarray
    rho: np.ndarray


def verify_affine(b: InnerSeries, m: int, q: int, k_max: int = 64) -> AffineReport:
    """Check ``mu_n = (1/q) mu_m + ((q-1)/q) rho`` in moments, ``n = q m``.

    ``rho = q/((q-1) n) * sum_{j < n, q does not divide j} sigma_{e^{2 pi i j/n}}``.
    The Clark family is built at ``n`` while mu_m comes from ``b^m`` directly.
    """
    if q < 2 or m < 1:
        raise ValueError("verify_affine needs q >= 2 and m >= 1")
    n = q * m
    fam = clark_family(b, n)
    acc = sum(fam.sigma_tables[j].values for j in range(n) if j % q)
    rho = q / ((q - 1) * n) * acc
    mu_m = measure_power(b, m).values
    k = min(k_max, b.order) + 1
    diff = np.abs(fam.mu_n_table.values - mu_m / q - (q - 1) / q * rho)[:k]
    return AffineReport(m, q, n, float(diff.max()), diff, rho[:k])


def comb_atoms(table: FourierTable, m: int, tol: float = 1e-10) -> np.ndarray:
    """Atoms of a measure known to be an equal-weight comb on the m-th roots of some alpha.

    Such a measure has ``mu_hat(k) = conj(alpha)^{k/m}`` when m | k and 0
    otherwise.  Raises ValueError if ``table`` is not of that form.
    """
    c = table.values[m] if m <= table.order else None
    if c is None or abs(abs(c) - 1) > tol:
        raise ValueError("table is not an m-comb")
    k = np.arange(table.order + 1)
    expected = np.where(k % m == 0, c ** (k // m), 0)
    if np.max(np.abs(expected - table.values)) > tol * 10:
        raise ValueError("table is not an m-comb")
    a = np.conj(c)
    base = (np.angle(a) / (2 * np.pi)) % 1.0
    return np.sort(((base + np.arange(m)) / m) % 1.0)
