"""Asymmetric truncated Toeplitz operators as matrices between model spaces.

``build_atto(theta, alpha, phi)`` realizes A_phi: K2_theta -> K2_alpha,
f |-> P_alpha(phi f), in the Takenaka-Malmquist bases.  Symbols are grid
functions (Laurent polynomials and rational data with poles away from the
circle); every operator here is a finite matrix, hence bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import inner as inner_mod
from .errors import DimensionMismatch, NotDivisible
from .grid import GridFunction, TAIL_TOL, circle_points, require_band_limited
from .model import Decomposition, ModelSpace, cinner

# Relative singular-value threshold below which directions count as kernel.
RANK_TOL = 1e-8


@dataclass
class SymbolPair:
    """Canonical symbol psi + conj(chi) with psi in K2_alpha, chi in K2_theta."""

    psi: np.ndarray
    chi: np.ndarray

    def gauge_shift(self, c: complex, k0_alpha: np.ndarray, k0_theta: np.ndarray) -> "SymbolPair":
        """The equivalent pair (psi + c k0^alpha, chi - conj(c) k0^theta)."""
        return SymbolPair(
            psi=self.psi + c * k0_alpha,
            chi=self.chi - np.conj(c) * k0_theta,
        )


@dataclass
class AttoMatrix:
    """Matrix of A_phi: K2_domain -> K2_codomain in orthonormal bases."""

    domain: inner_mod.InnerFunction
    codomain: inner_mod.InnerFunction
    matrix: np.ndarray
    domain_space: ModelSpace
    codomain_space: ModelSpace

    @property
    def shape(self):
        return self.matrix.shape

    def norm(self) -> float:
        """Operator (spectral) norm."""
        if min(self.matrix.shape) == 0:
            return 0.0
        return float(np.linalg.svd(self.matrix, compute_uv=False)[0])

    def apply(self, coeffs) -> np.ndarray:
        return self.matrix @ np.asarray(coeffs, dtype=complex)

    def adjoint(self) -> "AttoMatrix":
        """The adjoint operator K2_codomain -> K2_domain (conjugate transpose)."""
        return AttoMatrix(
            domain=self.codomain,
            codomain=self.domain,
            matrix=self.matrix.conj().T,
            domain_space=self.codomain_space,
            codomain_space=self.domain_space,
        )


def adjoint(a: AttoMatrix) -> AttoMatrix:
    return a.adjoint()


def _check_related(domain, codomain):
    if not (inner_mod.divides(codomain, domain) or inner_mod.divides(domain, codomain)):
        raise NotDivisible("one of the inner functions must divide the other")


def _operator_spaces(domain, codomain, phi=None, m=None):
    """Model spaces for both inner functions on a grid that also carries phi."""
    degrees = domain.degree + codomain.degree
    dom = ModelSpace.build(domain) if m is None else ModelSpace(domain, m)
    m = dom.m
    if isinstance(phi, GridFunction) and phi.grid_size > m:
        m = phi.grid_size
        dom = ModelSpace(domain, m)
    cod = ModelSpace(codomain, m)
    while max(dom.max_tail_fraction(), cod.max_tail_fraction()) >= TAIL_TOL:
        m *= 2
        dom = ModelSpace(domain, m)
        cod = ModelSpace(codomain, m)
    del degrees
    return dom, cod


def symbol_function(phi, m: int) -> GridFunction:
    """Coerce a symbol given as GridFunction, Laurent dict or callable."""
    if isinstance(phi, GridFunction):
        return phi.resample(m) if phi.grid_size != m else phi
    if isinstance(phi, dict):
        return GridFunction.from_laurent(phi, m)
    if callable(phi):
        return GridFunction.from_callable(phi, m)
    raise TypeError(f"unsupported symbol type {type(phi)!r}")


def pair_symbol(pair: SymbolPair, domain_space: ModelSpace, codomain_space: ModelSpace) -> GridFunction:
    """The grid function psi + conj(chi) for a symbol pair."""
    psi = codomain_space.reconstruct(pair.psi)
    chi = domain_space.reconstruct(pair.chi)
    return GridFunction(psi + np.conj(chi))


def _columns(phi_samples, domain_space, codomain_space):
    products = phi_samples[None, :] * domain_space.basis
    return (codomain_space.basis.conj() @ products.T) / domain_space.m


def build_atto(theta, alpha, phi, m: int | None = None) -> AttoMatrix:
    """Matrix of A_phi: K2_theta -> K2_alpha (column k is P_alpha(phi e_k))."""
    _check_related(theta, alpha)
    dom, cod = _operator_spaces(theta, alpha, phi, m)
    phi_fn = symbol_function(phi, dom.m)
    require_band_limited(phi_fn)
    matrix = _columns(phi_fn.samples, dom, cod)
    return AttoMatrix(domain=theta, codomain=alpha, matrix=matrix,
                      domain_space=dom, codomain_space=cod)


def build_atto_from_pair(theta, alpha, pair: SymbolPair, m: int | None = None) -> AttoMatrix:
    """Matrix of A with symbol psi + conj(chi) given by coefficient vectors."""
    _check_related(theta, alpha)
    dom, cod = _operator_spaces(theta, alpha, None, m)
    phi_fn = pair_symbol(pair, dom, cod)
    matrix = _columns(phi_fn.samples, dom, cod)
    return AttoMatrix(domain=theta, codomain=alpha, matrix=matrix,
                      domain_space=dom, codomain_space=cod)


def normalize_symbol(theta, alpha, phi, m: int | None = None) -> SymbolPair:
    """Reduce a symbol to psi + conj(chi) with psi = P_alpha(P phi), chi = P_theta(conj(P- phi)).

    The constant Fourier mode is assigned to the analytic part; the residual
    class phi - psi - conj(chi) lies in alpha H2 + conj(theta H2), so the
    operator is unchanged.
    """
    if not inner_mod.divides(alpha, theta):
        raise NotDivisible("alpha must divide theta")
    dom, cod = _operator_spaces(theta, alpha, phi, m)
    phi_fn = symbol_function(phi, dom.m)
    require_band_limited(phi_fn)
    coeffs = phi_fn.coefficients()
    mm = phi_fn.grid_size
    plus = coeffs.copy()
    plus[mm // 2:] = 0.0
    minus = coeffs - plus
    plus_samples = np.fft.ifft(plus * mm)
    minus_samples = np.fft.ifft(minus * mm)
    psi = cod.project(plus_samples)
    chi = dom.project(np.conj(minus_samples))
    return SymbolPair(psi=psi, chi=chi)


def is_zero_symbol(theta, alpha, phi, m: int | None = None) -> bool:
    """True iff A_phi is the zero operator, i.e. phi in alpha H2 + conj(theta H2)."""
    a = build_atto(theta, alpha, phi, m)
    scale = 1.0 + float(np.max(np.abs(symbol_function(phi, a.domain_space.m).samples)))
    return a.norm() <= RANK_TOL * scale


def gauge_normalize(theta_space: ModelSpace, alpha_space: ModelSpace, pair: SymbolPair) -> SymbolPair:
    """Shift along the gauge family so that <chi, k0^theta> = 0."""
    k0t = theta_space.k0
    cbar = cinner(pair.chi, k0t) / cinner(k0t, k0t)
    return pair.gauge_shift(np.conj(cbar), alpha_space.k0, k0t)


@dataclass
class KernelDescription:
    """Numerical kernel of A_phi for an inner symbol, with its predicted form.

    kind is "shifted_model_space" when the kernel is (alpha/g) K2_{theta g/alpha}
    (g = GCD(alpha, phi)), else "intersection" and the kernel is checked against
    the membership description K2_theta n (alpha/g) H2.
    """

    numerical_basis: np.ndarray
    predicted_dim: int
    kind: str
    predicted_basis: np.ndarray | None
    max_angle: float
    membership_residual: float


def _nullspace(matrix, dim, tol=RANK_TOL):
    if min(matrix.shape) == 0:
        return np.eye(dim, dtype=complex)
    u, s, vh = np.linalg.svd(matrix)
    # absolute floor keeps an exactly-zero matrix from reading as full rank
    cutoff = max(tol * s[0], 1e-12)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def _principal_angle(q1: np.ndarray, q2: np.ndarray) -> float:
    """max sin of principal angles between equal-dimension column spans."""
    if q1.shape[1] == 0 and q2.shape[1] == 0:
        return 0.0
    resid = q2 - q1 @ (q1.conj().T @ q2)
    return float(np.linalg.norm(resid, 2))


def kernel_inner_symbol(theta, alpha, phi: inner_mod.InnerFunction) -> KernelDescription:
    """Kernel of A_phi for a finite Blaschke symbol phi, numerics vs. prediction."""
    g = inner_mod.gcd(alpha, phi)
    eta = inner_mod.quotient(alpha, g)
    dom, cod = _operator_spaces(theta, alpha)
    phi_fn = GridFunction(phi.sample(circle_points(dom.m)))
    matrix = _columns(phi_fn.samples, dom, cod)
    null = _nullspace(matrix, dom.dim)

    eta_samples = eta.sample(circle_points(dom.m))
    if inner_mod.divides(eta, theta):
        shifted = inner_mod.quotient(theta, eta)
        if shifted.degree == 0:
            predicted = np.zeros((dom.dim, 0), dtype=complex)
        else:
            shifted_space = ModelSpace(shifted, dom.m)
            vectors = [dom.project(eta_samples * e) for e in shifted_space.basis]
            predicted = np.linalg.qr(np.column_stack(vectors))[0] if vectors else np.zeros((dom.dim, 0), dtype=complex)
        angle = max(_principal_angle(predicted, null), _principal_angle(null, predicted)) \
            if predicted.shape[1] == null.shape[1] else 1.0
        return KernelDescription(
            numerical_basis=null,
            predicted_dim=theta.degree - alpha.degree + g.degree,
            kind="shifted_model_space",
            predicted_basis=predicted,
            max_angle=angle,
            membership_residual=0.0,
        )

    # No containment (alpha/g) <= theta: check each kernel vector lies in (alpha/g) H2.
    worst = 0.0
    mm = dom.m
    for k in range(null.shape[1]):
        samples = dom.reconstruct(null[:, k])
        ratio = np.conj(eta_samples) * samples
        coeffs = np.fft.fft(ratio) / mm
        worst = max(worst, float(np.linalg.norm(coeffs[mm // 2:])))
    return KernelDescription(
        numerical_basis=null,
        predicted_dim=null.shape[1],
        kind="intersection",
        predicted_basis=None,
        max_angle=0.0,
        membership_residual=worst,
    )


def kernel_conjugate_inner_symbol(theta, alpha, phi: inner_mod.InnerFunction):
    """Kernel of A_{conj(phi)}: K2_theta -> K2_alpha when theta divides alpha.

    Experimental: the swapped-divisibility regime, predicted kernel
    K2_{GCD(theta, GCD(alpha, phi))}.  Returns (numerical basis, predicted basis).
    """
    if not inner_mod.divides(theta, alpha):
        raise NotDivisible("theta must divide alpha in this regime")
    g = inner_mod.gcd(alpha, phi)
    psi = inner_mod.gcd(theta, g)
    dom, cod = _operator_spaces(theta, alpha)
    phi_fn = GridFunction(np.conj(phi.sample(circle_points(dom.m))))
    matrix = _columns(phi_fn.samples, dom, cod)
    null = _nullspace(matrix, dom.dim)
    if psi.degree == 0:
        predicted = np.zeros((dom.dim, 0), dtype=complex)
    else:
        sub = ModelSpace(psi, dom.m)
        predicted = np.linalg.qr(np.column_stack([dom.project(e) for e in sub.basis]))[0]
    return null, predicted


def kernel_action_suite(theta, alpha, pair: SymbolPair, m: int | None = None):
    """The eight kernel-action identities: matrix action vs. closed formulas.

    Returns a list of (name, lhs, rhs, residual) with coefficient vectors in
    K2_alpha for the first four identities and K2_theta for the last four.
    """
    dec = Decomposition.build(theta, alpha) if m is None else Decomposition(theta, alpha, m)
    ts, als = dec.theta_space, dec.alpha_space
    z = circle_points(dec.m)
    t0, a0, q0 = ts.theta0, dec.alpha0, dec.quot0

    psi_g = als.reconstruct(pair.psi)
    chi_g = ts.reconstruct(pair.chi)
    chi_quot, chi_alpha = dec.split_flip(pair.chi)
    chi_alpha_g = als.reconstruct(chi_alpha)
    chi_quot_g = dec.quot_reconstruct(chi_quot)
    psi0 = als.value_at_zero(pair.psi)
    chi0 = ts.value_at_zero(pair.chi)
    chi_alpha0 = als.value_at_zero(chi_alpha)

    a_psi = build_atto(theta, alpha, GridFunction(psi_g), dec.m)
    a_chibar = build_atto(theta, alpha, GridFunction(np.conj(chi_g)), dec.m)
    a_psibar = build_atto(alpha, theta, GridFunction(np.conj(psi_g)), dec.m)
    a_chi = build_atto(alpha, theta, GridFunction(chi_g), dec.m)

    St, Stad = ts.compressed_shift()
    Sa, Saad = als.compressed_shift()

    checks = []

    def add(name, lhs, rhs_samples, space):
        rhs = space.project(rhs_samples)
        checks.append((name, lhs, rhs, float(np.linalg.norm(lhs - rhs))))

    # (1) A_psi k0^theta = psi
    add("k0_analytic", a_psi.apply(ts.k0), psi_g, als)
    # (2) A_conj(chi) k0^theta = conj(chi(0)) k0^alpha - conj(theta(0)) alpha (conj(chi_alpha) - conj(chi_alpha(0)))
    rhs2 = np.conj(chi0) * als.reconstruct(als.k0) \
        - np.conj(t0) * dec.alpha_samples * (np.conj(chi_alpha_g) - np.conj(chi_alpha0))
    add("k0_coanalytic", a_chibar.apply(ts.k0), rhs2, als)
    # (3) A_psi k0~^theta = conj(z)((theta/alpha)(0) psi(0) alpha - theta(0) psi)
    rhs3 = np.conj(z) * (q0 * psi0 * dec.alpha_samples - t0 * psi_g)
    add("k0t_analytic", a_psi.apply(ts.k0_tilde), rhs3, als)
    # (4) A_conj(chi) k0~^theta = P_alpha C_theta chi = C_alpha chi_alpha
    rhs4 = als.reconstruct(als.apply_conjugation(chi_alpha))
    add("k0t_coanalytic", a_chibar.apply(ts.k0_tilde), rhs4, als)
    # (5) A_conj(psi) k0^alpha = conj(psi(0)) k0^theta - conj(alpha(0))(alpha conj(psi) - conj(q0 psi(0)) theta)
    rhs5 = np.conj(psi0) * ts.reconstruct(ts.k0) \
        - np.conj(a0) * (dec.alpha_samples * np.conj(psi_g) - np.conj(q0 * psi0) * ts.theta_samples)
    add("k0_alpha_coanalytic", a_psibar.apply(als.k0), rhs5, ts)
    # (6) A_chi k0^alpha = chi - conj(alpha(0)) alpha chi_quot
    rhs6 = chi_g - np.conj(a0) * dec.alpha_samples * chi_quot_g
    add("k0_alpha_analytic", a_chi.apply(als.k0), rhs6, ts)
    # (7) A_conj(psi) k0~^alpha = C_alpha psi
    rhs7 = als.reconstruct(als.apply_conjugation(pair.psi))
    add("k0t_alpha_coanalytic", a_psibar.apply(als.k0_tilde), rhs7, ts)
    # (8) A_chi k0~^alpha = P_theta C_theta(conj(chi) theta/alpha) - alpha(0) S*_theta chi
    ctheta_arg = ts.theta_samples * np.conj(z) * np.conj(np.conj(chi_g) * dec.quot_samples)
    rhs8 = ts.reconstruct(ts.project(ctheta_arg) - a0 * (Stad @ pair.chi))
    add("k0t_alpha_analytic", a_chi.apply(als.k0_tilde), rhs8, ts)

    del St, Sa, Saad
    return checks
