"""Concrete orthonormal realizations of the model spaces K2_theta.

A ModelSpace carries the Takenaka-Malmquist orthonormal basis of
``K2_theta = H2 (-) theta H2`` sampled on a circle grid, together with the
kernel vectors k0 and k0~, the conjugation, the compressed shift and the
orthogonal decomposition ``K2_theta = K2_alpha (+) alpha K2_{theta/alpha}``.

Basis convention: with the zeros of theta ordered deterministically,

    e_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z-a_j)/(1-conj(a_j) z),

which reduces to the monomials 1, z, ..., z^(n-1) when theta = z^n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import inner as inner_mod
from .errors import AttoError, ConstantInner, NotDivisible, OutsideDisk
from .grid import (
    GridFunction,
    TAIL_TOL,
    MAX_GRID_SIZE,
    choose_grid_size,
    circle_points,
    inner_product,
    project_minus,
    project_plus,
    _frequencies,
)

# Residual tolerance for "lies in the subspace" checks, relative to the norm.
SUBSPACE_RESIDUAL_TOL = 1e-9


def cinner(u: np.ndarray, v: np.ndarray) -> complex:
    """Coefficient-space inner product <u, v> (linear in the first slot)."""
    return complex(np.vdot(v, u))


def outer(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix of the rank-one operator (x (x) y) f = <f, y> x."""
    return np.outer(x, np.conj(y))


def _tm_basis(zeros, m: int) -> np.ndarray:
    """Takenaka-Malmquist basis sampled on the m-point grid, one row per e_k."""
    z = circle_points(m)
    basis = np.empty((len(zeros), m), dtype=complex)
    running = np.ones(m, dtype=complex)
    for k, a in enumerate(zeros):
        basis[k] = np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z) * running
        running = running * (z - a) / (1.0 - np.conj(a) * z)
    return basis


class ModelSpace:
    """Orthonormal realization of K2_theta on a circle grid."""

    def __init__(self, theta: inner_mod.InnerFunction, m: int, _basis=None):
        if theta.degree == 0:
            raise ConstantInner("model space of a constant inner function is trivial")
        self.theta = theta
        self.m = m
        self.dim = theta.degree
        self.zeros = inner_mod.sorted_zeros(theta)
        self.basis = _tm_basis(self.zeros, m) if _basis is None else _basis
        self.theta_samples = theta.sample(circle_points(m))
        self.theta0 = inner_mod.evaluate(theta, 0.0)
        z = circle_points(m)
        self.k0 = self.project(1.0 - np.conj(self.theta0) * self.theta_samples)
        self.k0_tilde = self.project(np.conj(z) * (self.theta_samples - self.theta0))
        self._conj_matrix = None
        self._shift = None

    # -- construction --------------------------------------------------------

    @classmethod
    def build(cls, theta: inner_mod.InnerFunction, m: int | None = None) -> "ModelSpace":
        """Build the space, growing the grid until Fourier tails are negligible."""
        if theta.degree == 0:
            raise ConstantInner("model space of a constant inner function is trivial")
        if m is not None:
            return cls(theta, m)
        m = choose_grid_size(theta.degree)
        while True:
            space = cls(theta, m)
            if space.max_tail_fraction() < TAIL_TOL:
                return space
            m *= 2
            if m > MAX_GRID_SIZE:
                raise AttoError("grid size overflow; zeros too close to the circle")

    def max_tail_fraction(self) -> float:
        """Worst relative Fourier tail beyond +-m/4 among basis and theta data."""
        guard = self.m // 4
        freqs = np.abs(_frequencies(self.m)) > guard
        worst = 0.0
        for row in (*self.basis, self.theta_samples):
            c = np.fft.fft(row) / self.m
            total = np.linalg.norm(c)
            if total > 0:
                worst = max(worst, float(np.linalg.norm(c[freqs]) / total))
        return worst

    # -- sampling and coefficients -------------------------------------------

    def _samples(self, f) -> np.ndarray:
        if isinstance(f, GridFunction):
            if f.grid_size != self.m:
                f = f.resample(self.m)
            return f.samples
        f = np.asarray(f, dtype=complex)
        if f.shape != (self.m,):
            raise ValueError(f"expected {self.m} samples, got shape {f.shape}")
        return f

    def project(self, f) -> np.ndarray:
        """Coefficients <f, e_k> of the orthogonal projection onto the space."""
        return (self.basis.conj() @ self._samples(f)) / self.m

    def reconstruct(self, coeffs) -> np.ndarray:
        """Samples of sum_k c_k e_k."""
        coeffs = np.asarray(coeffs, dtype=complex)
        return coeffs @ self.basis

    def function(self, coeffs) -> GridFunction:
        return GridFunction(self.reconstruct(coeffs))

    def project_residual(self, f) -> float:
        """Distance from f to the space, relative to max(1, ||f||)."""
        samples = self._samples(f)
        recon = self.reconstruct(self.project(samples))
        scale = max(1.0, float(np.linalg.norm(samples) / np.sqrt(self.m)))
        return float(np.linalg.norm(samples - recon) / np.sqrt(self.m) / scale)

    def projection_via_riesz(self, f) -> np.ndarray:
        """P_theta f computed independently as theta * P-(conj(theta) * P f)."""
        g = project_plus(GridFunction(self._samples(f)))
        h = project_minus(GridFunction(np.conj(self.theta_samples) * g.samples))
        return self.theta_samples * h.samples

    def value_at_zero(self, coeffs) -> complex:
        """f(0) for f given by coefficients, via the reproducing kernel."""
        return cinner(np.asarray(coeffs, dtype=complex), self.k0)

    # -- kernels ---------------------------------------------------------------

    def kernel_at(self, lam: complex) -> np.ndarray:
        """Coefficients of the reproducing kernel at a point of the open disk."""
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise OutsideDisk(f"kernel point {lam} is not in the open unit disk")
        z = circle_points(self.m)
        theta_lam = inner_mod.evaluate(self.theta, lam)
        samples = (1.0 - np.conj(theta_lam) * self.theta_samples) / (1.0 - np.conj(lam) * z)
        return self.project(samples)

    # -- conjugation and shift ---------------------------------------------------

    def conjugation(self) -> np.ndarray:
        """Matrix J with coeffs(C_theta f) = J conj(coeffs(f))."""
        if self._conj_matrix is None:
            z = circle_points(self.m)
            conj_images = self.theta_samples * np.conj(z) * np.conj(self.basis)
            self._conj_matrix = (self.basis.conj() @ conj_images.T) / self.m
        return self._conj_matrix

    def apply_conjugation(self, coeffs) -> np.ndarray:
        return self.conjugation() @ np.conj(np.asarray(coeffs, dtype=complex))

    def compressed_shift(self):
        """Matrices (S, S*) of the compressed shift and its adjoint."""
        if self._shift is None:
            z = circle_points(self.m)
            shifted = z * self.basis
            S = (self.basis.conj() @ shifted.T) / self.m
            self._shift = (S, S.conj().T)
        return self._shift

    # -- relations with subspaces ---------------------------------------------

    def projection_matrix(self, sub: "ModelSpace") -> np.ndarray:
        """Matrix of P_sub restricted to this space (dim sub x dim self)."""
        if sub.m != self.m:
            raise ValueError("spaces must share a grid")
        return (sub.basis.conj() @ self.basis.T) / self.m


def gram_residual(space: ModelSpace) -> float:
    gram = (space.basis.conj() @ space.basis.T) / space.m
    return float(np.max(np.abs(gram - np.eye(space.dim))))


@dataclass
class KernelVectors:
    """Coefficient vectors of k0 = 1 - conj(theta(0)) theta and k0~ = conj(z)(theta - theta(0))."""

    k0: np.ndarray
    k0_tilde: np.ndarray


def kernels(space: ModelSpace) -> KernelVectors:
    return KernelVectors(k0=space.k0.copy(), k0_tilde=space.k0_tilde.copy())


class Decomposition:
    """The split K2_theta = K2_alpha (+) alpha K2_{theta/alpha} on a shared grid.

    Also provides the flipped split K2_theta = K2_{theta/alpha} (+) (theta/alpha) K2_alpha
    used to decompose co-analytic symbol parts.
    """

    def __init__(self, theta, alpha, m: int | None = None):
        if not inner_mod.divides(alpha, theta):
            raise NotDivisible("alpha must divide theta")
        if alpha.degree == 0:
            raise ConstantInner("alpha must be nonconstant")
        self.theta = theta
        self.alpha = alpha
        self.quot = inner_mod.quotient(theta, alpha)
        if m is None:
            m = ModelSpace.build(theta).m
        self.m = m
        self.theta_space = ModelSpace(theta, m)
        self.alpha_space = ModelSpace(alpha, m)
        self.quot_space = ModelSpace(self.quot, m) if self.quot.degree > 0 else None
        pts = circle_points(m)
        self.alpha_samples = alpha.sample(pts)
        self.quot_samples = self.quot.sample(pts)
        self.alpha0 = inner_mod.evaluate(alpha, 0.0)
        self.quot0 = inner_mod.evaluate(self.quot, 0.0)

    @classmethod
    def build(cls, theta, alpha, extra_degree: int = 0) -> "Decomposition":
        """Choose a grid large enough for theta, its divisors and extra data."""
        m = choose_grid_size(theta.degree + extra_degree)
        while True:
            dec = cls(theta, alpha, m)
            if dec.theta_space.max_tail_fraction() < TAIL_TOL:
                return dec
            m *= 2
            if m > MAX_GRID_SIZE:
                raise AttoError("grid size overflow; zeros too close to the circle")

    def split(self, coeffs):
        """f = f_alpha + alpha f_quot: returns (coeffs of f_alpha, coeffs of f_quot)."""
        samples = self.theta_space.reconstruct(coeffs)
        f_alpha = self.alpha_space.project(samples)
        if self.quot_space is None:
            return f_alpha, np.zeros(0, dtype=complex)
        f_quot = self.quot_space.project(np.conj(self.alpha_samples) * samples)
        return f_alpha, f_quot

    def split_flip(self, coeffs):
        """f = f_quot + (theta/alpha) f_alpha: returns (coeffs of f_quot, coeffs of f_alpha)."""
        samples = self.theta_space.reconstruct(coeffs)
        f_alpha = self.alpha_space.project(np.conj(self.quot_samples) * samples)
        if self.quot_space is None:
            return np.zeros(0, dtype=complex), f_alpha
        f_quot = self.quot_space.project(samples)
        return f_quot, f_alpha

    def embed_alpha(self, coeffs) -> np.ndarray:
        """Coefficients in K2_theta of a function given in K2_alpha."""
        return self.theta_space.project(self.alpha_space.reconstruct(coeffs))

    def quot_reconstruct(self, coeffs) -> np.ndarray:
        if self.quot_space is None:
            return np.zeros(self.m, dtype=complex)
        return self.quot_space.reconstruct(coeffs)


def decompose(theta_space: ModelSpace, alpha, coeffs):
    """Split f in K2_theta as f_alpha + alpha f_quot (coefficients per subspace)."""
    dec = Decomposition(theta_space.theta, alpha, theta_space.m)
    return dec.split(coeffs)
