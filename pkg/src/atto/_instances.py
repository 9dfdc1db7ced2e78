"""Seeded random instances shared by the verification battery and the tests."""

from __future__ import annotations

import numpy as np

from .inner import InnerFunction
from .operators import SymbolPair


def random_zeros(rng, degree, max_modulus=0.8):
    radii = max_modulus * np.sqrt(rng.uniform(size=degree))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=degree)
    return tuple(radii * np.exp(1j * phases))


def random_inner(rng, degree, max_modulus=0.8) -> InnerFunction:
    return InnerFunction(zeros=random_zeros(rng, degree, max_modulus))


def random_divisible_pair(rng, max_degree=8, min_alpha=1, strict=False, max_modulus=0.8):
    """A pair (theta, alpha) with alpha dividing theta, zeros shared exactly.

    strict=True forces theta/alpha nonconstant (deg alpha < deg theta).
    """
    lo = max(2, min_alpha + 1) if strict else max(2, min_alpha)
    deg_theta = int(rng.integers(lo, max_degree + 1))
    hi = deg_theta if strict else deg_theta + 1
    deg_alpha = int(rng.integers(min_alpha, hi))
    zeros = random_zeros(rng, deg_theta, max_modulus)
    picked = rng.choice(deg_theta, size=deg_alpha, replace=False)
    theta = InnerFunction(zeros=zeros)
    alpha = InnerFunction(zeros=tuple(zeros[i] for i in sorted(picked)))
    return theta, alpha


def random_vector(rng, dim) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def random_symbol_pair(rng, deg_alpha, deg_theta) -> SymbolPair:
    return SymbolPair(psi=random_vector(rng, deg_alpha), chi=random_vector(rng, deg_theta))


def random_laurent(rng, max_index=4) -> dict:
    return {
        int(k): complex(rng.standard_normal() + 1j * rng.standard_normal())
        for k in range(-max_index, max_index + 1)
    }
