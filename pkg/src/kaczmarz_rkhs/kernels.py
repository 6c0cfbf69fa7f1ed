"""Positive matrices on the disc and their L^2(mu) boundary functions.

A kernel handle ``h`` evaluates ``h(z, w) = K_z(w)`` (antilinear in ``z``)
and samples the boundary function ``K_z^*`` on a quadrature rule.  The
reproducing identity ``K_z(w) = <K_z^*, K_w^*>_mu`` is what
:func:`reproduce_check` measures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import EmptyAnchors, RuleMismatch, SingularAnchorGram
from .kaczmarz import alpha, g_from_alpha, gram
from .measures import BoundaryFunction, FourierTable, QuadratureRule, exponential_matrix
from .series import as_complex
from .transforms import InnerSeries, inner_from_measure

ANCHOR_COND_LIMIT = 1e12


def _powers(z: complex, order: int) -> np.ndarray:
    return z ** np.arange(order + 1)


class KernelHandle:
    """Interface shared by all kernels."""

    def __call__(self, z, w) -> complex:
        raise NotImplementedError

    def boundary_values(self, z, rule: QuadratureRule) -> tuple[np.ndarray, float]:
        """``K_z^*`` at the nodes of ``rule`` and a tail estimate."""
        raise NotImplementedError

    def matrix(self, points: Sequence) -> np.ndarray:
        """Section ``M[i, j] = K(zeta_j, zeta_i) = K_{zeta_j}(zeta_i)``."""
        pts = [as_complex(p) for p in points]
        return np.array([[self(zj, zi) for zj in pts] for zi in pts])


@dataclass(frozen=True, eq=False)
class Szego(KernelHandle):
    def __call__(self, z, w):
        return szego(z, w)

    def boundary_values(self, z, rule):
        z = as_complex(z)
        return 1.0 / (1.0 - np.conj(z) * rule.points), 0.0


@dataclass(frozen=True, eq=False)
class ClosedDBR(KernelHandle):
    """Kernel of H(b): ``(1 - conj(b(z)) b(w)) / (1 - conj(z) w)``."""

    b: InnerSeries

    def __call__(self, z, w):
        return dbr_closed(self.b, z, w)[0]

    def boundary_values(self, z, rule):
        # b^* = 1 mu-a.e. for the measure of b
        z = as_complex(z)
        bz, tz = self.b.evaluate(z)
        denom = 1.0 - np.conj(z) * rule.points
        return (1.0 - np.conj(bz)) / denom, float(tz / np.min(np.abs(denom)))


@dataclass(frozen=True, eq=False)
class GramSeries(KernelHandle):
    """``sum_{n,m} <h_n, h_m>_mu conj(z)^n w^m`` for a Bessel family ``{h_n}``.

    ``rows`` are coefficients of the unscaled h_n over e_i.  The boundary
    function is ``scale * sum conj(z)^n h_n / density`` where ``density``
    (values on a fixed rule) is optional.
    """

    gram: np.ndarray
    rows: np.ndarray
    scale: float = 1.0
    density: BoundaryFunction | None = None

    @property
    def order(self) -> int:
        return self.gram.shape[0] - 1

    def __call__(self, z, w):
        return gram_kernel(self, z, w)[0]

    def tail_bound(self, z, w) -> float:
        rz, rw = abs(as_complex(z)), abs(as_complex(w))
        g = float(np.max(np.abs(self.gram)))
        n1 = self.order + 1
        return g * (rz**n1 + rw**n1) / ((1 - rz) * (1 - rw))

    def boundary_values(self, z, rule):
        z = as_complex(z)
        zbar = _powers(np.conj(z), self.order)
        coef = self.rows.T @ zbar
        vals = self.scale * (coef @ exponential_matrix(self.rows.shape[1] - 1, rule.nodes))
        if self.density is not None:
            if not self.density.rule.same_as(rule):
                raise RuleMismatch("density is sampled on a different rule")
            vals = vals / self.density.values
        row_sup = float(np.max(np.abs(self.rows).sum(axis=1)))
        tail = abs(z) ** (self.order + 1) / (1 - abs(z)) * self.scale * row_sup
        return vals, tail

    @classmethod
    def canonical(cls, table: FourierTable) -> "GramSeries":
        """Kaczmarz family {g_n} of the measure behind ``table``."""
        g = g_from_alpha(alpha(table))
        return cls(gram(table, g).entries, g.rows)


@dataclass(frozen=True, eq=False)
class Projected(KernelHandle):
    """Kernel of ``V = span{base_a : a in anchors}`` (or of its complement).

    With ``complement=True`` the handle is ``base - P_V base``, the kernel
    of the orthogonal complement of V inside the space of ``base``.
    """

    base: KernelHandle
    anchors: tuple
    complement: bool = False
    anchor_gram: np.ndarray = field(init=False, repr=False)
    condition: float = field(init=False)

    def __post_init__(self):
        anchors = tuple(as_complex(a) for a in self.anchors)
        if not anchors:
            raise EmptyAnchors("projected kernel needs at least one anchor")
        # G[i, j] = base_{a_j}(a_i)
        g = np.array([[self.base(aj, ai) for aj in anchors] for ai in anchors])
        cond = float(np.linalg.cond(g))
        if not np.isfinite(cond) or cond > ANCHOR_COND_LIMIT:
            raise SingularAnchorGram(f"anchor Gram condition number {cond:.3g} exceeds {ANCHOR_COND_LIMIT:g}")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "anchor_gram", g)
        object.__setattr__(self, "condition", cond)

    def _weights(self, z) -> np.ndarray:
        # P_V base_z = sum_j c_j base_{a_j} with G c = (base_z(a_i))_i
        v = np.array([self.base(z, a) for a in self.anchors])
        return np.linalg.solve(self.anchor_gram, v)

    def __call__(self, z, w):
        c = self._weights(z)
        proj = sum(cj * self.base(aj, w) for cj, aj in zip(c, self.anchors))
        return self.base(z, w) - proj if self.complement else proj

    def boundary_values(self, z, rule):
        c = self._weights(z)
        vals = np.zeros(len(rule), dtype=np.complex128)
        tail = 0.0
        for cj, aj in zip(c, self.anchors):
            bv, t = self.base.boundary_values(aj, rule)
            vals += cj * bv
            tail += abs(cj) * t
        if self.complement:
            bz, t = self.base.boundary_values(z, rule)
            vals = bz - vals
            tail += t
        return vals, tail


@dataclass(frozen=True, eq=False)
class Layered(KernelHandle):
    """``sum_n conj(b(z))^n b(w)^n k^{(n)}_z(w)`` over layer kernels k^{(n)}."""

    b: InnerSeries
    layers: tuple

    def __post_init__(self):
        if not self.layers:
            raise ValueError("layered kernel needs at least one layer")
        object.__setattr__(self, "layers", tuple(self.layers))

    def __call__(self, z, w):
        bz, bw = self.b(z), self.b(w)
        return sum((np.conj(bz) * bw) ** n * k(z, w) for n, k in enumerate(self.layers))

    def boundary_values(self, z, rule):
        # (b^n f)^* = f^* on the support of the measure of b
        bz = np.conj(self.b(z))
        vals = np.zeros(len(rule), dtype=np.complex128)
        tail = 0.0
        for n, k in enumerate(self.layers):
            v, t = k.boundary_values(z, rule)
            vals += bz**n * v
            tail += abs(bz) ** n * t
        return vals, tail


# --------------------------------------------------------------------------
# module-level operations


def szego(z, w) -> complex:
    z, w = as_complex(z), as_complex(w)
    return 1.0 / (1.0 - np.conj(z) * w)


def dbr_closed(b: InnerSeries, z, w) -> tuple[complex, float]:
    """``k^b_z(w)`` and a bound from the truncation tails of ``b``."""
    z, w = as_complex(z), as_complex(w)
    bz, tz = b.evaluate(z)
    bw, tw = b.evaluate(w)
    denom = 1.0 - np.conj(z) * w
    value = (1.0 - np.conj(bz) * bw) / denom
    bound = (tz * abs(bw) + tw * abs(bz) + tz * tw) / abs(denom)
    return complex(value), float(bound)


def gram_kernel(h: GramSeries, z, w) -> tuple[complex, float]:
    z, w = as_complex(z), as_complex(w)
    zbar = _powers(np.conj(z), h.order)
    wv = _powers(w, h.order)
    return complex(zbar @ h.gram @ wv), h.tail_bound(z, w)


def kernel_boundary(h: KernelHandle, z, rule: QuadratureRule) -> tuple[BoundaryFunction, float]:
    vals, tail = h.boundary_values(z, rule)
    return BoundaryFunction(rule, vals), tail


def reproduction_errors(h: KernelHandle, rule: QuadratureRule, points: Sequence) -> np.ndarray:
    """``|K_{z_i}(z_j) - <K*_{z_i}, K*_{z_j}>_mu|`` for every pair."""
    pts = [as_complex(p) for p in points]
    bvals = np.array([h.boundary_values(p, rule)[0] for p in pts])
    quad = (bvals * rule.weights) @ bvals.conj().T
    exact = np.array([[h(zi, zj) for zj in pts] for zi in pts])
    return np.abs(exact - quad)


def reproduce_check(h: KernelHandle, rule: QuadratureRule, points: Sequence) -> float:
    return float(reproduction_errors(h, rule, points).max())


class PSDResult(NamedTuple):
    min_eigenvalue: float
    trace: float
    hermitian_defect: float

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -1e-9 * max(self.trace, 1e-300)


def psd_check(h: KernelHandle, points: Sequence) -> PSDResult:
    m = h.matrix(points)
    defect = float(np.max(np.abs(m - m.conj().T)))
    eig = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return PSDResult(float(eig.min()), float(np.real(np.trace(m))), defect)


def projected_kernel(base: KernelHandle, anchors: Sequence, z, w) -> complex:
    return Projected(base, tuple(anchors))(z, w)


def layered_kernel(b: InnerSeries, layers: Sequence[KernelHandle], z, w) -> complex:
    return Layered(b, tuple(layers))(z, w)


def layer_orthogonality(layers: Sequence[KernelHandle], rule: QuadratureRule, points: Sequence) -> float:
    """Largest ``|<k^{(i)*}_z, k^{(j)*}_w>_mu|`` over i != j: zero for orthogonal layers."""
    pts = [as_complex(p) for p in points]
    samples = [np.array([k.boundary_values(p, rule)[0] for p in pts]) for k in layers]
    worst = 0.0
    for i in range(len(layers)):
        for j in range(i + 1, len(layers)):
            cross = (samples[i] * rule.weights) @ samples[j].conj().T
            worst = max(worst, float(np.max(np.abs(cross))))
    return worst


def dbr_from_measure(table: FourierTable) -> ClosedDBR:
    return ClosedDBR(inner_from_measure(table))
