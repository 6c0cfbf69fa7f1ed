"""Kaczmarz sequences, inner functions and reproducing kernels for singular measures on the circle."""

from . import clark, duals, kaczmarz, kernels, measures, series, transforms, wold
from .measures import IFS, Atomic, Mixture, atoms, cantor, delta, fourier, fourier_table
from .series import DiscPoint, PowerSeries

__all__ = [
    "Atomic",
    "DiscPoint",
    "IFS",
    "Mixture",
    "PowerSeries",
    "atoms",
    "cantor",
    "clark",
    "delta",
    "duals",
    "fourier",
    "fourier_table",
    "kaczmarz",
    "kernels",
    "measures",
    "series",
    "transforms",
    "wold",
]

__version__ = "0.1.0"
