"""Truncated complex power series.

A :class:`PowerSeries` holds the coefficients ``c_0..c_N`` of a function
holomorphic on the unit disc.  Binary operations truncate to the smaller of
the two orders, so nothing is ever read past index ``N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import OutsideDisc, ZeroConstantTerm

Number = Union[int, float, complex]


@dataclass(frozen=True)
class DiscPoint:
    """A point of the open unit disc."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not np.isfinite(z) or abs(z) >= 1.0:
            raise OutsideDisc(f"|z| must be < 1, got z={z!r}")
        object.__setattr__(self, "z", z)

    def __complex__(self):
        return self.z

    def __abs__(self):
        return abs(self.z)


def as_complex(z) -> complex:
    """Accept a DiscPoint or a raw number, validating |z| < 1."""
    if isinstance(z, DiscPoint):
        return z.z
    return DiscPoint(z).z


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least the constant term")
        if not np.all(np.isfinite(c)):
            raise ValueError("power series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, values: Sequence[Number], order: int | None = None) -> "PowerSeries":
        """Build a series, zero-padding or truncating ``values`` to ``order``."""
        values = np.asarray(values, dtype=np.complex128).ravel()
        if order is None:
            return cls(values)
        out = np.zeros(order + 1, dtype=np.complex128)
        k = min(order + 1, values.size)
        out[:k] = values[:k]
        return cls(out)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([1.0], order)

    @classmethod
    def monomial(cls, k: int, order: int, scale: Number = 1.0) -> "PowerSeries":
        out = np.zeros(order + 1, dtype=np.complex128)
        if k <= order:
            out[k] = scale
        return cls(out)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order) + 1
            return PowerSeries(self.coeffs[:n] + other.coeffs[:n])
        c = self.coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __call__(self, z, coeff_bound: float = 1.0):
        return evaluate(self, z, coeff_bound)[0]

    def norm(self) -> float:
        """H^2 norm of the truncation."""
        return float(np.linalg.norm(self.coeffs))

    def __repr__(self):
        head = ", ".join(f"{c:.4g}" for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"PowerSeries(order={self.order}, [{head}{more}])"


def multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    n = min(a.order, b.order) + 1
    return PowerSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def _fft_mul(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    size = 1 << int(np.ceil(np.log2(max(2 * n - 1, 1))))
    return np.fft.ifft(np.fft.fft(x[:n], size) * np.fft.fft(y[:n], size))[:n]


def _reciprocal_forward(a: np.ndarray) -> np.ndarray:
    # Forward substitution on the lower-triangular Toeplitz system a * r = 1.
    n = a.size
    r = np.zeros(n, dtype=np.complex128)
    inv0 = 1.0 / a[0]
    r[0] = inv0
    for k in range(1, n):
        r[k] = -np.dot(a[1 : k + 1], r[k - 1 :: -1]) * inv0
    return r


def _reciprocal_newton(a: np.ndarray) -> np.ndarray:
    n = a.size
    r = np.array([1.0 / a[0]], dtype=np.complex128)
    m = 1
    while m < n:
        m = min(2 * m, n)
        ar = _fft_mul(a, np.pad(r, (0, m - r.size)), m)
        ar = -ar
        ar[0] += 2.0
        r = _fft_mul(np.pad(r, (0, m - r.size)), ar, m)
    return r


def reciprocal(a: PowerSeries, method: str = "forward") -> PowerSeries:
    """Series reciprocal ``1/a`` to the order of ``a``.

    ``method="forward"`` solves the triangular Toeplitz system by forward
    substitution (exact up to roundoff, O(N^2)); ``method="newton"`` uses
    Newton doubling ``r <- r(2 - a r)`` with FFT products.
    """
    if a.coeffs[0] == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    if method == "forward":
        return PowerSeries(_reciprocal_forward(a.coeffs))
    if method == "newton":
        return PowerSeries(_reciprocal_newton(a.coeffs))
    raise ValueError(f"unknown reciprocal method {method!r}")


def power(a: PowerSeries, n: int) -> PowerSeries:
    if n < 0:
        raise ValueError("power needs n >= 0")
    result = PowerSeries.one(a.order)
    base = a
    # binary exponentiation; every factor keeps order a.order
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def evaluate(a: PowerSeries, z, coeff_bound: float = 1.0) -> tuple[complex, float]:
    """Horner evaluation of the truncation plus a bound on the omitted tail.

    The bound ``coeff_bound * |z|**(N+1) / (1 - |z|)`` is valid whenever
    ``coeff_bound`` dominates every coefficient of the untruncated series.
    """
    z = as_complex(z)
    value = complex(np.polyval(a.coeffs[::-1], z))
    r = abs(z)
    tail = coeff_bound * r ** (a.order + 1) / (1.0 - r) if r > 0 else 0.0
    return value, float(tail)


def evaluate_many(a: PowerSeries, zs) -> np.ndarray:
    """Vectorised Horner evaluation (no tail bound, no disc check)."""
    zs = np.asarray(zs, dtype=np.complex128)
    out = np.zeros_like(zs)
    for c in a.coeffs[::-1]:
        out = out * zs + c
    return out
