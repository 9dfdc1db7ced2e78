"""Functions on a uniform unit-circle grid with FFT-based Riesz projections.

All quadrature is the trapezoid rule on ``z_j = exp(2*pi*i*j/M)`` with M a
power of two, which integrates trigonometric polynomials of degree < M
exactly.  Everything handled here is rational with poles separated from the
circle, so Fourier tails decay geometrically and a guard band at +-M/4 keeps
pointwise products alias-free at the working tolerances.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .errors import GridMismatch, NyquistViolation

DEFAULT_GRID_FLOOR = 256
TAIL_TOL = 1e-12
MAX_GRID_SIZE = 1 << 20


def grid_floor() -> int:
    """Smallest allowed grid size; override with ATTO_GRID_FLOOR."""
    value = os.environ.get("ATTO_GRID_FLOOR")
    return int(value) if value else DEFAULT_GRID_FLOOR


def next_power_of_two(n: int) -> int:
    m = 1
    while m < n:
        m <<= 1
    return m


def choose_grid_size(total_degree: int, floor: int | None = None) -> int:
    """Initial grid size for data of the given total rational degree."""
    floor = grid_floor() if floor is None else floor
    return next_power_of_two(max(floor, 8 * (total_degree + 4)))


@lru_cache(maxsize=64)
def circle_points(m: int) -> np.ndarray:
    """The grid z_j = exp(2*pi*i*j/m); cached and treated as read-only."""
    pts = np.exp(2j * np.pi * np.arange(m) / m)
    pts.setflags(write=False)
    return pts


def _frequencies(m: int) -> np.ndarray:
    freq = np.arange(m)
    return np.where(freq < m // 2, freq, freq - m)


class GridFunction:
    """A function on the circle known by its samples on the uniform grid."""

    __slots__ = ("samples",)

    def __init__(self, samples):
        samples = np.asarray(samples, dtype=complex)
        if samples.ndim != 1:
            raise ValueError("samples must be a one-dimensional array")
        m = samples.size
        if m & (m - 1) or m == 0:
            raise ValueError(f"grid size {m} is not a power of two")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        self.samples = samples

    @property
    def grid_size(self) -> int:
        return self.samples.size

    @classmethod
    def from_callable(cls, fn, m: int) -> "GridFunction":
        return cls(fn(circle_points(m)))

    @classmethod
    def constant(cls, value, m: int) -> "GridFunction":
        return cls(np.full(m, complex(value)))

    @classmethod
    def monomial(cls, k: int, m: int) -> "GridFunction":
        """z**k on the grid; negative k gives conj(z)**(-k)."""
        return cls(circle_points(m) ** k)

    @classmethod
    def from_laurent(cls, coefficients: dict, m: int) -> "GridFunction":
        """Sum of c_k z**k over a dict {k: c_k} of Laurent coefficients."""
        z = circle_points(m)
        out = np.zeros(m, dtype=complex)
        for k, c in coefficients.items():
            k = int(k)
            if abs(k) >= m // 2:
                raise NyquistViolation(f"Laurent index {k} exceeds the grid Nyquist range")
            out += complex(c) * z**k
        return cls(out)

    def coefficients(self) -> np.ndarray:
        """Fourier coefficients; index k holds frequency k (mod m, FFT layout)."""
        return np.fft.fft(self.samples) / self.grid_size

    def tail_fraction(self, guard: int | None = None) -> float:
        """Relative l2 mass at frequencies beyond +-guard (default m/4)."""
        m = self.grid_size
        guard = m // 4 if guard is None else guard
        c = self.coefficients()
        total = np.linalg.norm(c)
        if total == 0.0:
            return 0.0
        tail = np.linalg.norm(c[np.abs(_frequencies(m)) > guard])
        return float(tail / total)

    def resample(self, m2: int) -> "GridFunction":
        """Re-grid by trigonometric interpolation (band-limited exact)."""
        m = self.grid_size
        if m2 == m:
            return self
        if m2 & (m2 - 1) or m2 == 0:
            raise ValueError(f"grid size {m2} is not a power of two")
        c = self.coefficients()
        half = min(m, m2) // 2
        if m2 < m:
            kept = np.linalg.norm(np.concatenate([c[:half], c[m - half:]]))
            total = np.linalg.norm(c)
            if total > 0 and 1.0 - (kept / total) ** 2 > TAIL_TOL**2:
                raise NyquistViolation("downsampling would discard significant Fourier content")
        c2 = np.zeros(m2, dtype=complex)
        c2[:half] = c[:half]
        c2[m2 - half:] = c[m - half:]
        return GridFunction(np.fft.ifft(c2 * m2))

    # -- pointwise algebra (collocation) ------------------------------------

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.grid_size != self.grid_size:
                raise GridMismatch(
                    f"grid sizes differ: {self.grid_size} vs {other.grid_size}"
                )
            return other.samples
        return complex(other)

    def __add__(self, other):
        return GridFunction(self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.samples - self._coerce(other))

    def __rsub__(self, other):
        return GridFunction(self._coerce(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(-self.samples)

    def conj(self) -> "GridFunction":
        return GridFunction(np.conj(self.samples))


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """The L2(circle) pairing (1/M) sum f(z_j) conj(g(z_j))."""
    if f.grid_size != g.grid_size:
        raise GridMismatch(f"grid sizes differ: {f.grid_size} vs {g.grid_size}")
    return complex(np.vdot(g.samples, f.samples) / f.grid_size)


def norm(f: GridFunction) -> float:
    return float(np.linalg.norm(f.samples) / np.sqrt(f.grid_size))


def project_plus(f: GridFunction) -> GridFunction:
    """Orthogonal projection onto nonnegative Fourier modes (the Hardy part)."""
    m = f.grid_size
    c = np.fft.fft(f.samples)
    c[m // 2:] = 0.0
    return GridFunction(np.fft.ifft(c))


def project_minus(f: GridFunction) -> GridFunction:
    """Orthogonal projection onto strictly negative Fourier modes."""
    m = f.grid_size
    c = np.fft.fft(f.samples)
    c[: m // 2] = 0.0
    return GridFunction(np.fft.ifft(c))


def require_band_limited(f: GridFunction, guard: int | None = None, tol: float = TAIL_TOL):
    """Raise NyquistViolation unless f's Fourier tail beyond the guard is tiny."""
    fraction = f.tail_fraction(guard)
    if fraction >= tol:
        raise NyquistViolation(
            f"Fourier tail fraction {fraction:.3e} beyond the guard band "
            f"(grid size {f.grid_size}); enlarge the grid"
        )
