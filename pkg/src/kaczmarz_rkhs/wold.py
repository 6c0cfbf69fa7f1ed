"""Wold decomposition of H^2 along the powers of an inner function.

``f = sum_n phi_n b^n`` with every ``phi_n`` in H(b) = ker T_{conj b}.  The
iteration is ``f_0 = f``, ``phi_n = f_n - b T_{conj b} f_n``,
``f_{n+1} = T_{conj b} f_n``; all series keep the order of ``f``.

Norms and inner products are taken on the truncations.  The omitted tail
of ``b`` beyond the truncation order affects the norm identities (not the
telescoping reconstruction); :attr:`WoldLayers.b_tail_energy` reports
``1 - sum |b_k|^2``, which bounds how far the truncated b is from inner.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import PowerSeries, multiply
from .transforms import InnerSeries


def toeplitz_adjoint(b: InnerSeries | PowerSeries, f: PowerSeries) -> PowerSeries:
    """``(T_{conj b} f)_k = sum_{j>=0} conj(b_j) f_{k+j}``, truncated at the order of f."""
    bc = b.coeffs
    fc = f.coeffs
    n = fc.size
    m = min(bc.size, n)
    # correlation of f against b: out[k] = sum_j conj(b[j]) f[k + j]
    full = np.correlate(fc, bc[:m], mode="full")
    return PowerSeries(full[m - 1 : m - 1 + n])


@dataclass(frozen=True, eq=False)
class WoldLayers:
    b: InnerSeries
    layers: tuple  # phi_0..phi_M
    residual: PowerSeries  # f_{M+1}
    source: PowerSeries

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def layer_norms(self) -> np.ndarray:
        return np.array([p.norm() for p in self.layers])

    def pythagoras_gap(self) -> float:
        """``| ||f||^2 - sum ||phi_n||^2 - ||f_{M+1}||^2 |``."""
        total = np.sum(self.layer_norms() ** 2) + self.residual.norm() ** 2
        return float(abs(self.source.norm() ** 2 - total))

    def membership_errors(self) -> np.ndarray:
        """``||T_{conj b} phi_n||`` for each layer (zero inside H(b))."""
        return np.array([toeplitz_adjoint(self.b, p).norm() for p in self.layers])

    def orthogonality(self) -> float:
        """Largest ``|<phi_i b^i, phi_j b^j>_{H^2}|`` over i != j."""
        pieces = _layer_terms(self)
        worst = 0.0
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                worst = max(worst, abs(np.vdot(pieces[j].coeffs, pieces[i].coeffs)))
        return float(worst)

    def b_tail_energy(self) -> float:
        return float(1.0 - np.sum(np.abs(self.b.coeffs) ** 2))


def _layer_terms(w: WoldLayers) -> list[PowerSeries]:
    order = w.source.order
    bpow = PowerSeries.one(order)
    out = []
    for phi in w.layers:
        out.append(multiply(phi, bpow))
        bpow = multiply(bpow, w.b.b)
    return out


def wold_layers(f: PowerSeries, b: InnerSeries, M: int = 8) -> WoldLayers:
    if M < 0:
        raise ValueError("M must be >= 0")
    if b.order < f.order:
        raise ValueError("b must be known at least to the order of f")
    fn = f
    layers = []
    for _ in range(M + 1):
        nxt = toeplitz_adjoint(b, fn)
        layers.append(fn - multiply(b.b, nxt))
        fn = nxt
    return WoldLayers(b, tuple(layers), fn, f)


def wold_reconstruct(w: WoldLayers) -> PowerSeries:
    """``sum_{n<=M} phi_n b^n + b^{M+1} f_{M+1}``."""
    order = w.source.order
    bpow = PowerSeries.one(order)
    total = PowerSeries(np.zeros(order + 1, dtype=np.complex128))
    for phi in w.layers:
        total = total + multiply(phi, bpow)
        bpow = multiply(bpow, w.b.b)
    return total + multiply(bpow, w.residual)
