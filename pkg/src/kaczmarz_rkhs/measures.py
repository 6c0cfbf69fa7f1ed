"""Singular probability measures on [0, 1) and their numerical realisations.

Three descriptors are supported: finitely many atoms, self-similar (IFS)
Cantor-type measures, and finite mixtures of either.  Fourier coefficients
use the convention ``mu_hat(n) = int exp(-2 pi i n x) dmu(x)``, so that
``<e_i, e_j>_mu = mu_hat(j - i)`` and ``C_mu 1(z) = sum mu_hat(n) z^n``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidMeasure, RuleMismatch

MASS_TOL = 1e-12
# per-factor cutoff for the IFS infinite product
IFS_PRODUCT_TOL = 1e-16


@dataclass(frozen=True)
class Atomic:
    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        if not atoms:
            raise InvalidMeasure("atomic measure needs at least one atom")
        xs = [x for x, _ in atoms]
        if any(not (0.0 <= x < 1.0) for x in xs):
            raise InvalidMeasure("atom positions must lie in [0, 1)")
        if any(w <= 0 for _, w in atoms):
            raise InvalidMeasure("atom weights must be positive")
        if len(set(xs)) != len(xs):
            raise InvalidMeasure("atom positions must be distinct")
        if abs(sum(w for _, w in atoms) - 1.0) > MASS_TOL:
            raise InvalidMeasure("atom weights must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @property
    def positions(self) -> np.ndarray:
        return np.array([x for x, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])


@dataclass(frozen=True)
class IFS:
    """Invariant measure of ``x -> (x + d) / scale`` with digit probabilities ``weights``."""

    scale: int
    digits: tuple[int, ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        scale = int(self.scale)
        digits = tuple(int(d) for d in self.digits)
        if scale < 2:
            raise InvalidMeasure("IFS scale must be >= 2")
        if not digits or len(digits) >= scale:
            raise InvalidMeasure("IFS needs between 1 and scale-1 digits")
        if any(b <= a for a, b in zip(digits, digits[1:])):
            raise InvalidMeasure("IFS digits must be strictly increasing")
        if digits[0] < 0 or digits[-1] >= scale:
            raise InvalidMeasure("IFS digits must lie in [0, scale)")
        weights = self.weights
        if weights is None:
            weights = (1.0 / len(digits),) * len(digits)
        weights = tuple(float(w) for w in weights)
        if len(weights) != len(digits):
            raise InvalidMeasure("IFS needs one weight per digit")
        if any(w <= 0 for w in weights):
            raise InvalidMeasure("IFS weights must be positive")
        if abs(sum(weights) - 1.0) > MASS_TOL:
            raise InvalidMeasure("IFS weights must sum to 1")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "weights", weights)

    @property
    def barycenter(self) -> float:
        """Mean of the invariant measure, ``sum w_d d / (scale - 1)``."""
        return float(np.dot(self.weights, self.digits)) / (self.scale - 1)


@dataclass(frozen=True)
class Mixture:
    terms: tuple[tuple[float, "MeasureSpec"], ...]

    def __post_init__(self):
        terms = tuple((float(eta), spec) for eta, spec in self.terms)
        if not terms:
            raise InvalidMeasure("mixture needs at least one term")
        if any(eta <= 0 for eta, _ in terms):
            raise InvalidMeasure("mixture coefficients must be positive")
        if abs(sum(eta for eta, _ in terms) - 1.0) > MASS_TOL:
            raise InvalidMeasure("mixture coefficients must sum to 1")
        for _, spec in terms:
            if not isinstance(spec, (Atomic, IFS, Mixture)):
                raise InvalidMeasure(f"mixture term is not a measure: {spec!r}")
        object.__setattr__(self, "terms", terms)


MeasureSpec = Union[Atomic, IFS, Mixture]


def delta(x: float = 0.0) -> Atomic:
    return Atomic(((x, 1.0),))


def cantor(scale: int = 3, digits: Sequence[int] = (0, 2)) -> IFS:
    """Equal-weight Cantor measure; ``cantor(3)`` is mu_3 and ``cantor(4)`` is mu_4."""
    return IFS(scale, tuple(digits))


def mixture(*terms) -> Mixture:
    return Mixture(tuple(terms))


# --------------------------------------------------------------------------
# Fourier coefficients


def _ifs_fourier(spec: IFS, n: np.ndarray) -> np.ndarray:
    n = n.astype(np.float64)
    out = np.ones(n.shape, dtype=np.complex128)
    nmax = np.max(np.abs(n)) if n.size else 0.0
    if nmax == 0:
        return out
    digits = np.array(spec.digits, dtype=np.float64)
    weights = np.array(spec.weights)
    dmax = max(digits.max(), 1.0)
    k = 1
    while 2 * np.pi * nmax * dmax / float(spec.scale) ** k >= IFS_PRODUCT_TOL:
        s = float(spec.scale) ** -k
        phase = np.exp(-2j * np.pi * np.multiply.outer(n, digits * s))
        out *= phase @ weights
        k += 1
    return out


def fourier(spec: MeasureSpec, n) -> complex | np.ndarray:
    """``mu_hat(n)`` for an integer or an integer array ``n`` (negative allowed)."""
    scalar = np.ndim(n) == 0
    n = np.atleast_1d(np.asarray(n))
    if isinstance(spec, Atomic):
        val = np.exp(-2j * np.pi * np.multiply.outer(n, spec.positions)) @ spec.weights
    elif isinstance(spec, IFS):
        val = _ifs_fourier(spec, n)
    elif isinstance(spec, Mixture):
        val = sum(eta * fourier(term, n) for eta, term in spec.terms)
    else:
        raise TypeError(f"not a measure spec: {spec!r}")
    val = np.asarray(val, dtype=np.complex128)
    return complex(val[0]) if scalar else val


@dataclass(frozen=True, eq=False)
class FourierTable:
    """``mu_hat(0..N)``; negative indices are recovered by conjugation."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).ravel()
        if v.size == 0:
            raise ValueError("empty Fourier table")
        if abs(v[0] - 1.0) > 1e-12:
            raise InvalidMeasure(f"mu_hat(0) must be 1, got {v[0]}")
        if np.any(np.abs(v) > 1.0 + 1e-9):
            raise InvalidMeasure("|mu_hat(n)| must not exceed 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def order(self) -> int:
        return self.values.size - 1

    def __getitem__(self, k):
        return self.values[k]

    def at(self, k) -> np.ndarray:
        """Signed lookup: ``mu_hat(-k) = conj(mu_hat(k))``."""
        k = np.asarray(k)
        v = self.values[np.abs(k)]
        return np.where(k < 0, np.conj(v), v)

    def toeplitz(self, size: int | None = None) -> np.ndarray:
        """Hermitian matrix ``T[i, j] = <e_i, e_j>_mu = mu_hat(j - i)``."""
        size = self.order + 1 if size is None else size
        idx = np.arange(size)
        return self.at(idx[None, :] - idx[:, None])


def fourier_table(spec: MeasureSpec, order: int) -> FourierTable:
    values = fourier(spec, np.arange(order + 1))
    values[0] = 1.0
    return FourierTable(values)


# --------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Finite-atom realisation of a measure.

    ``resolution`` is the largest ``scale**-depth`` among IFS components
    (0 for an exact rule); the error in integrating ``e_n`` is at most
    ``2 pi |n| resolution``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact: bool = True
    depth: int | None = None
    resolution: float = 0.0

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64).ravel()
        weights = np.array(self.weights, dtype=np.float64).ravel()
        if nodes.shape != weights.shape:
            raise ValueError("nodes and weights differ in length")
        if np.any(nodes < 0) or np.any(nodes >= 1):
            raise ValueError("quadrature nodes must lie in [0, 1)")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-14 * max(1.0, np.sqrt(nodes.size)):
            raise ValueError("quadrature weights must sum to 1")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    @property
    def points(self) -> np.ndarray:
        """Nodes on the circle, ``exp(2 pi i x)``."""
        return np.exp(2j * np.pi * self.nodes)

    def exponential_error_bound(self, n: int) -> float:
        return 2 * np.pi * abs(n) * self.resolution

    def same_as(self, other: "QuadratureRule") -> bool:
        return other is self or (
            np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


def _ifs_rule(spec: IFS, depth: int, anchor: str) -> QuadratureRule:
    if depth < 1:
        raise ValueError("IFS quadrature needs depth >= 1")
    digits = np.array(spec.digits, dtype=np.float64)
    weights = np.array(spec.weights)
    nodes = np.zeros(1)
    probs = np.ones(1)
    for k in range(1, depth + 1):
        nodes = (nodes[:, None] + digits[None, :] * float(spec.scale) ** -k).ravel()
        probs = (probs[:, None] * weights[None, :]).ravel()
    res = float(spec.scale) ** -depth
    if anchor == "barycenter":
        # each cell carries a scaled copy of the measure; its mean sits at offset barycenter*res
        nodes = nodes + spec.barycenter * res
    elif anchor != "left":
        raise ValueError(f"unknown node anchor {anchor!r}")
    return QuadratureRule(nodes, probs / probs.sum(), exact=False, depth=depth, resolution=res)


def atoms(spec: MeasureSpec, depth: int = 10, anchor: str = "left") -> QuadratureRule:
    """Quadrature rule for ``spec``.

    Atomic measures give their own atoms (exact).  An IFS at ``depth``
    gives one node per digit word ``sum d_k scale**-k``; with
    ``anchor="barycenter"`` each node is moved to the mean of its cell,
    which makes the rule exact on linear functions.
    """
    if isinstance(spec, Atomic):
        w = spec.weights
        return QuadratureRule(spec.positions, w / w.sum(), exact=True)
    if isinstance(spec, IFS):
        return _ifs_rule(spec, depth, anchor)
    if isinstance(spec, Mixture):
        rules = [(eta, atoms(term, depth, anchor)) for eta, term in spec.terms]
        nodes = np.concatenate([r.nodes for _, r in rules])
        weights = np.concatenate([eta * r.weights for eta, r in rules])
        exact = all(r.exact for _, r in rules)
        depths = [r.depth for _, r in rules if r.depth is not None]
        return QuadratureRule(
            nodes,
            weights / weights.sum(),
            exact=exact,
            depth=max(depths) if depths else None,
            resolution=max(r.resolution for _, r in rules),
        )
    raise TypeError(f"not a measure spec: {spec!r}")


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Samples of a function in L^2(mu) at the nodes of ``rule``."""

    rule: QuadratureRule
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).ravel()
        if v.size != len(self.rule):
            raise ValueError("one value per quadrature node is required")
        if not np.all(np.isfinite(v)):
            raise ValueError("boundary values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def _check(self, other):
        if not self.rule.same_as(other.rule):
            raise RuleMismatch("boundary functions live on different rules")

    def __add__(self, other):
        if isinstance(other, BoundaryFunction):
            self._check(other)
            return BoundaryFunction(self.rule, self.values + other.values)
        return BoundaryFunction(self.rule, self.values + other)

    def __sub__(self, other):
        if isinstance(other, BoundaryFunction):
            self._check(other)
            return BoundaryFunction(self.rule, self.values - other.values)
        return BoundaryFunction(self.rule, self.values - other)

    def __mul__(self, other):
        if isinstance(other, BoundaryFunction):
            self._check(other)
            return BoundaryFunction(self.rule, self.values * other.values)
        return BoundaryFunction(self.rule, self.values * other)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.rule.weights, np.abs(self.values) ** 2)))


def inner_product(f: BoundaryFunction, g: BoundaryFunction) -> complex:
    """``<f, g>_mu = sum_k w_k f(x_k) conj(g(x_k))``."""
    if not f.rule.same_as(g.rule):
        raise RuleMismatch("inner product of functions on different rules")
    return complex(np.sum(f.rule.weights * f.values * np.conj(g.values)))


def sample_exponential(n: int, rule: QuadratureRule) -> BoundaryFunction:
    """``e_n(x) = exp(2 pi i n x)`` at the nodes of ``rule``."""
    return BoundaryFunction(rule, np.exp(2j * np.pi * n * rule.nodes))


def sample_function(func, rule: QuadratureRule) -> BoundaryFunction:
    """Sample ``func(x)`` (vectorised over ``x`` in [0, 1)) on ``rule``."""
    return BoundaryFunction(rule, func(rule.nodes))


def exponential_matrix(order: int, nodes: np.ndarray) -> np.ndarray:
    """``E[i, k] = e_i(x_k)`` for ``i = 0..order``."""
    return np.exp(2j * np.pi * np.multiply.outer(np.arange(order + 1), nodes))


def atomic_supports_intersect(a: MeasureSpec, b: MeasureSpec) -> bool:
    """True when two atomic specs share an atom.  Non-atomic input returns False."""
    if isinstance(a, Atomic) and isinstance(b, Atomic):
        return bool(set(a.positions.tolist()) & set(b.positions.tolist()))
    return False


def warn_if_not_disjoint(a: MeasureSpec, b: MeasureSpec) -> None:
    if atomic_supports_intersect(a, b):
        warnings.warn(
            "atomic supports intersect: the measures are not mutually singular",
            RuntimeWarning,
            stacklevel=3,
        )
