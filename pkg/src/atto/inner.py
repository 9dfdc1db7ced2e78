"""Finite Blaschke products: evaluation, divisibility, quotients and GCDs.

An inner function is represented by its zero multiset inside the unit disk
together with a unimodular constant.  Degree-n monomials use the convention
``zeros = (0,)*n, constant = (-1)**n`` so that evaluation returns exactly
``z**n``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import NotDivisible

# Zeros are capped away from the boundary so the poles 1/conj(a) stay a fixed
# distance from the unit circle and grid quadrature converges geometrically.
MAX_ZERO_MODULUS = 1.0 - 1e-6

# Tolerance for pairing zeros in divisibility / GCD computations.
PAIRING_TOL = 1e-8


@dataclass(frozen=True)
class InnerFunction:
    """A finite Blaschke product ``c * prod (a - z) / (1 - conj(a) z)``."""

    zeros: tuple = ()
    constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "constant", complex(self.constant))
        for a in zs:
            if abs(a) > MAX_ZERO_MODULUS:
                raise ValueError(f"Blaschke zero {a} too close to the unit circle")
        if abs(abs(self.constant) - 1.0) > 1e-12:
            raise ValueError(f"constant {self.constant} is not unimodular")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, z):
        return evaluate(self, z)

    def sample(self, points: np.ndarray) -> np.ndarray:
        """Evaluate on an array of points (vectorized)."""
        z = np.asarray(points, dtype=complex)
        out = np.full(z.shape, self.constant, dtype=complex)
        for a in self.zeros:
            out *= (a - z) / (1.0 - np.conj(a) * z)
        return out


def monomial(n: int) -> InnerFunction:
    """The inner function z**n."""
    if n < 0:
        raise ValueError("monomial degree must be nonnegative")
    return InnerFunction(zeros=(0.0,) * n, constant=(-1.0) ** n)


def blaschke_factor(a: complex) -> InnerFunction:
    """The elementary factor (a - z)/(1 - conj(a) z)."""
    return InnerFunction(zeros=(complex(a),))


def evaluate(f: InnerFunction, z: complex) -> complex:
    """Evaluate f at a point of the closed unit disk."""
    z = complex(z)
    out = f.constant
    for a in f.zeros:
        out *= (a - z) / (1.0 - a.conjugate() * z)
    return out


def product(f: InnerFunction, g: InnerFunction) -> InnerFunction:
    return InnerFunction(zeros=f.zeros + g.zeros, constant=f.constant * g.constant)


def _match_zeros(sub, sup, tol=PAIRING_TOL):
    """Greedy nearest pairing of `sub` zeros into `sup`; returns indices or None."""
    remaining = list(range(len(sup)))
    matches = []
    for a in sub:
        if not remaining:
            return None
        best = min(remaining, key=lambda j: abs(sup[j] - a))
        if abs(sup[best] - a) > tol:
            return None
        matches.append(best)
        remaining.remove(best)
    return matches


def divides(a: InnerFunction, t: InnerFunction) -> bool:
    """True iff a's zero multiset is contained in t's (conj(a)*t is inner)."""
    return _match_zeros(a.zeros, t.zeros) is not None


def quotient(t: InnerFunction, a: InnerFunction) -> InnerFunction:
    """The inner function t/a; requires divides(a, t)."""
    matches = _match_zeros(a.zeros, t.zeros)
    if matches is None:
        raise NotDivisible("quotient requires the denominator to divide the numerator")
    keep = [z for j, z in enumerate(t.zeros) if j not in set(matches)]
    return InnerFunction(zeros=tuple(keep), constant=t.constant / a.constant)


def gcd(a: InnerFunction, b: InnerFunction) -> InnerFunction:
    """Greatest common divisor: the zero-multiset intersection, constant 1."""
    remaining = list(range(len(b.zeros)))
    common = []
    for z in a.zeros:
        if not remaining:
            break
        best = min(remaining, key=lambda j: abs(b.zeros[j] - z))
        if abs(b.zeros[best] - z) <= PAIRING_TOL:
            common.append(z)
            remaining.remove(best)
    return InnerFunction(zeros=tuple(common), constant=1.0)


def sorted_zeros(f: InnerFunction) -> tuple:
    """Zeros ordered by (modulus, argument), ties broken by input order.

    Moduli and arguments are quantized at 1e-12 so the ordering is stable
    under rounding noise.
    """
    def key(item):
        idx, a = item
        r = round(abs(a) / 1e-12)
        phi = round(cmath.phase(a) / 1e-12) if a != 0 else 0
        return (r, phi, idx)

    return tuple(a for _, a in sorted(enumerate(f.zeros), key=lambda it: key(it)))
