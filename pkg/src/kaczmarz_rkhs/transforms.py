"""Cauchy and Herglotz transforms linking measures and inner functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NumericalDegeneracy
from .kaczmarz import GnMatrix, alpha
from .measures import BoundaryFunction, FourierTable
from .series import PowerSeries, as_complex, evaluate, evaluate_many, reciprocal

DEGENERACY_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class InnerSeries:
    """Taylor coefficients of an inner function vanishing at the origin."""

    b: PowerSeries

    def __post_init__(self):
        if abs(self.b.coeffs[0]) > 1e-14:
            raise ValueError(f"inner series must satisfy b(0) = 0, got {self.b.coeffs[0]}")

    @property
    def order(self) -> int:
        return self.b.order

    @property
    def coeffs(self) -> np.ndarray:
        return self.b.coeffs

    def __call__(self, z) -> complex:
        return evaluate(self.b, z)[0]

    def evaluate(self, z) -> tuple[complex, float]:
        """Value and tail bound; inner coefficients satisfy ``|b_n| <= 1``."""
        return evaluate(self.b, z, coeff_bound=1.0)

    def rotate(self, c: complex) -> "InnerSeries":
        """The inner function ``c * b`` for a unimodular constant ``c``."""
        return InnerSeries(self.b * c)

    @classmethod
    def monomial(cls, k: int, order: int) -> "InnerSeries":
        return cls(PowerSeries.monomial(k, order))


def moments(f: BoundaryFunction, order: int) -> np.ndarray:
    """``m_n = int f e^{-2 pi i n x} dmu`` for n = 0..order, by quadrature on f's rule."""
    rule = f.rule
    phase = np.exp(-2j * np.pi * np.multiply.outer(np.arange(order + 1), rule.nodes))
    return phase @ (rule.weights * f.values)


def cauchy_transform(moments_: Sequence[complex] | FourierTable, z, coeff_bound: float | None = None):
    """``C_mu f(z) = sum m_n z^n`` with its tail bound.

    ``coeff_bound`` defaults to ``max |m_n|`` over the supplied moments; pass
    ``sup |f|`` to make the bound rigorous.
    """
    m = moments_.values if isinstance(moments_, FourierTable) else np.asarray(moments_, dtype=complex)
    if coeff_bound is None:
        coeff_bound = float(np.max(np.abs(m)))
    return evaluate(PowerSeries(m), z, coeff_bound=coeff_bound)


def inner_from_measure(table: FourierTable) -> InnerSeries:
    """``b = 1 - 1/C_mu 1``, i.e. ``b_n = -alpha_n``."""
    a = alpha(table).alpha
    c = -a
    c[0] = 0.0
    return InnerSeries(PowerSeries(c))


def herglotz(b: InnerSeries | PowerSeries) -> PowerSeries:
    """``(1 + b) / (1 - b)``; for a measure this is ``1 + 2 sum_{n>=1} mu_hat(n) z^n``."""
    s = b.b if isinstance(b, InnerSeries) else b
    return (1.0 + s) * reciprocal(1.0 - s)


def measure_from_inner(b: InnerSeries) -> FourierTable:
    h = herglotz(b).coeffs
    values = h / 2.0
    values[0] = 1.0
    return FourierTable(values)


def normalized_cauchy(f: BoundaryFunction, table: FourierTable, g: GnMatrix, z) -> tuple[complex, complex]:
    """V_mu f(z) two ways: as the Cauchy ratio and as ``sum <f, g_n> z^n``."""
    z = as_complex(z)
    order = min(table.order, g.order)
    num, _ = cauchy_transform(moments(f, order), z)
    den, _ = cauchy_transform(table.values[: order + 1], z)
    if abs(den) < DEGENERACY_FLOOR:
        raise NumericalDegeneracy(f"|C_mu 1(z)| = {abs(den):.3g} at z = {z}")
    vals = g.sample(f.rule)
    coeffs = (vals.conj() * f.rule.weights) @ f.values
    via_series = evaluate(PowerSeries(coeffs[: order + 1]), z)[0]
    return num / den, via_series


def expansion_coefficients(f: BoundaryFunction, g: GnMatrix) -> PowerSeries:
    """Taylor coefficients ``<f, g_n>_mu`` of V_mu f."""
    vals = g.sample(f.rule)
    return PowerSeries((vals.conj() * f.rule.weights) @ f.values)


def default_radii(k_max: int = 12) -> np.ndarray:
    return 1.0 - 2.0 ** -np.arange(1, k_max + 1)


@dataclass(frozen=True, eq=False)
class RadialResult:
    radii: np.ndarray
    errors: np.ndarray
    conclusive: bool

    def passes(self, tol: float) -> bool:
        return bool(self.conclusive and self.errors[-1] < tol)


def radial_check(
    F: Callable[[np.ndarray], np.ndarray],
    target: BoundaryFunction,
    radii: Sequence[float] | None = None,
    order: int | None = None,
) -> RadialResult:
    """L^2(mu) distance between ``F(r e^{2 pi i x})`` and ``target`` for each radius.

    ``F`` is evaluated on arrays of disc points.  When ``F`` is a truncated
    series of order ``order``, the run is marked inconclusive unless
    ``order >= 50 / (1 - r_max)``.
    """
    radii = default_radii() if radii is None else np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) <= 0) or radii[0] <= 0 or radii[-1] >= 1:
        raise ValueError("radii must increase strictly inside (0, 1)")
    xi = target.rule.points
    w = target.rule.weights
    errors = np.array(
        [np.sqrt(np.dot(w, np.abs(F(r * xi) - target.values) ** 2)) for r in radii]
    )
    conclusive = order is None or order >= 50.0 / (1.0 - radii[-1])
    return RadialResult(radii, errors, bool(conclusive))


def series_function(s: PowerSeries) -> Callable[[np.ndarray], np.ndarray]:
    return lambda zs: evaluate_many(s, zs)


def cauchy_quadrature(f: BoundaryFunction, zs) -> np.ndarray:
    """``int f(x) / (1 - z e^{-2 pi i x}) dmu`` by quadrature on f's rule.

    No series truncation is involved, so this works up to the circle; for
    an IFS rule it is the transform of the discretised measure.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    conj_pts = np.conj(f.rule.points)
    kernel = 1.0 / (1.0 - np.multiply.outer(zs, conj_pts))
    return kernel @ (f.rule.weights * f.values)


def normalized_cauchy_function(f: BoundaryFunction) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised ``V_mu f = C_mu f / C_mu 1`` from :func:`cauchy_quadrature`."""
    one = BoundaryFunction(f.rule, np.ones(len(f.rule)))
    return lambda zs: cauchy_quadrature(f, zs) / cauchy_quadrature(one, zs)
