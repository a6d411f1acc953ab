"""Periodic 1D grid and spectral field algebra.

Everything downstream (kernels, potentials, solvers) lives on a uniform
periodic grid. Differentiation and convolution are done in Fourier space,
so smooth fields are handled to near machine accuracy; integration is the
periodic trapezoid rule, which on a uniform periodic grid is sum times dx.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "ComplexField",
    "derivative",
    "convolve",
    "integrate",
    "dealias",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with ``n`` samples on ``[0, length)``.

    Parameters
    ----------
    n : int
        Number of samples. Must be even (Nyquist bookkeeping, 2/3 dealias
        rule) and at least 8.
    length : float
        Box size. Samples sit at ``x_j = j * length / n``.
    """

    n: int
    length: float

    def __post_init__(self) -> None:
        if self.n < 8:
            raise ValueError(f"grid needs n >= 8, got n={self.n}")
        if self.n % 2 != 0:
            raise ValueError(f"grid needs even n, got n={self.n}")
        if not (self.length > 0.0 and np.isfinite(self.length)):
            raise ValueError(f"grid needs finite length > 0, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def x(self) -> np.ndarray:
        """Sample positions ``x_j = j dx``."""
        x = self.dx * np.arange(self.n)
        x.flags.writeable = False
        return x

    @cached_property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT ordering, ``k_j = 2 pi j / length``."""
        k = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)
        k.flags.writeable = False
        return k

    @cached_property
    def signed_x(self) -> np.ndarray:
        """Sample positions folded to the signed interval ``[-L/2, L/2)``."""
        s = np.where(self.x < 0.5 * self.length, self.x, self.x - self.length)
        s.flags.writeable = False
        return s

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """Boolean mask keeping modes with ``|k| <= (2/3) k_max``."""
        kabs = np.abs(self.k)
        mask = kabs <= (2.0 / 3.0) * kabs.max() * (1.0 + 1e-12)
        mask.flags.writeable = False
        return mask


class Field:
    """Real scalar field sampled on a :class:`Grid`.

    Immutable by convention: the sample array is copied on construction and
    marked read-only. Arithmetic with fields on the same grid and with
    scalars is supported and returns new fields.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values, *, _fresh: bool = False):
        if _fresh:
            arr = values
        else:
            arr = np.array(values, dtype=float)
            if arr.shape != (grid.n,):
                raise ValueError(
                    f"field shape {arr.shape} does not match grid n={grid.n}"
                )
        if not np.all(np.isfinite(arr)):
            raise ValueError("field samples must be finite")
        arr.flags.writeable = False
        self.grid = grid
        self.values = arr

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "Field":
        return cls(grid, np.asarray(fn(grid.x), dtype=float))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "Field":
        return cls(grid, np.full(grid.n, float(value)), _fresh=True)

    def _wrap(self, arr: np.ndarray) -> "Field":
        return Field(self.grid, arr, _fresh=True)

    def _coerce(self, other):
        if isinstance(other, Field):
            if other.grid != self.grid:
                raise ValueError("fields live on different grids")
            return other.values
        return float(other)

    def __add__(self, other):
        return self._wrap(self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.values - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.values)

    def __mul__(self, other):
        return self._wrap(self.values * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.values / self._coerce(other))

    def __rtruediv__(self, other):
        return self._wrap(self._coerce(other) / self.values)

    def __neg__(self):
        return self._wrap(-self.values)

    def __repr__(self):
        return f"Field(n={self.grid.n}, L={self.grid.length:g})"


class ComplexField:
    """Complex scalar field sampled on a :class:`Grid` (wavefunctions)."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values, *, _fresh: bool = False):
        if _fresh:
            arr = values
        else:
            arr = np.array(values, dtype=complex)
            if arr.shape != (grid.n,):
                raise ValueError(
                    f"field shape {arr.shape} does not match grid n={grid.n}"
                )
        if not np.all(np.isfinite(arr)):
            raise ValueError("field samples must be finite")
        arr.flags.writeable = False
        self.grid = grid
        self.values = arr

    def __repr__(self):
        return f"ComplexField(n={self.grid.n}, L={self.grid.length:g})"


def derivative(f: Field, order: int = 1) -> Field:
    """Spectral derivative of integer ``order >= 1``.

    Multiplies each mode by ``(i k)**order``. For odd orders the Nyquist
    mode is zeroed: its multiplier would break conjugate symmetry, and for
    resolved fields that mode carries no usable content anyway. The
    imaginary residue of the inverse transform must stay below 1e-12 of the
    field amplitude; a larger residue signals a non-real input and raises.
    """
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    g = f.grid
    mult = (1j) ** order * g.k**order
    if order % 2 == 1:
        mult = mult.copy()
        mult[g.n // 2] = 0.0
    out = np.fft.ifft(mult * np.fft.fft(f.values))
    ref = max(np.abs(out.real).max(), np.abs(f.values).max(), 1e-300)
    if np.abs(out.imag).max() > 1e-12 * ref:
        raise ValueError("derivative produced a non-real result")
    return Field(g, np.ascontiguousarray(out.real), _fresh=True)


def convolve(f: Field, g: Field) -> Field:
    """Periodic convolution ``(f * g)(x) = int f(y) g(x - y) dy``.

    Computed spectrally and scaled by ``dx`` so that convolution with a
    unit-integral kernel preserves the mean of ``f``.
    """
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    out = np.fft.ifft(np.fft.fft(f.values) * np.fft.fft(g.values)).real
    out = np.ascontiguousarray(out * f.grid.dx)
    return Field(f.grid, out, _fresh=True)


def integrate(f: Field) -> float:
    """Periodic trapezoid quadrature: ``sum(f) * dx``."""
    return float(np.sum(f.values) * f.grid.dx)


def dealias(f: Field) -> Field:
    """Zero all modes above the 2/3 cutoff."""
    g = f.grid
    out = np.fft.ifft(np.fft.fft(f.values) * g.dealias_mask).real
    return Field(g, np.ascontiguousarray(out), _fresh=True)
