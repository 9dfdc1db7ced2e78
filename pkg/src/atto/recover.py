"""Recovering a symbol from a truncated Toeplitz operator between model spaces.

Two routes are implemented.  The first evaluates the operator and its adjoint
on the kernel vectors k0 and k0~, solves a 2x2 system for the scalar data

    a + conj(theta(0)) alpha(0) b + ||k0^alpha||^2 c = <A k0^theta, k0^alpha>
    (theta/alpha)(0) a + b                          = <A k0~^theta, k0~^alpha>

(a = psi(0), b = conj(chi_alpha(0)), c = conj(chi(0)); the sign of the
(theta/alpha)(0) coefficient is the one the kernel-action identities produce),
then solves a 3x3 function-valued system pointwise on the circle grid for the
analytic unknowns X = psi, Y = alpha conj(chi_alpha), Z = (theta/alpha)
conj(chi_quot), whose determinant ||k0^theta||^2 (alpha(z) - alpha(0)) is
bounded away from zero on the circle.

The second route starts from the (mu, nu) data of the second rank-two
characterization, removes the gauge component along k0~^{theta/alpha}, and
applies the closed-form inversion

    psi = C_alpha P_alpha(nu - c k0~^theta),
    chi = S_quot P_quot(conj(alpha)(nu - c k0~^theta)) + (theta/alpha) C_alpha(mu + conj(c) k0~^alpha).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import inner as inner_mod
from .errors import NotInClass, QuotientConstant, SingularSystem
from .grid import circle_points
from .model import Decomposition, cinner
from .operators import AttoMatrix, SymbolPair
from .characterize import CharData, membership_extract

# Refuse recovery when alpha(0) is this close to the circle: alpha(z)-alpha(0)
# on the grid would lose all conditioning.
ALPHA0_CAP = 0.999
PointGuard = 1e-6


@dataclass
class RecoveryScalars:
    """The scalars a = psi(0), b = conj(chi_alpha(0)), c = conj(chi(0))."""

    a: complex
    b: complex
    c: complex
    determinant: float


def _kernel_pairings(a: AttoMatrix):
    ts, als = a.domain_space, a.codomain_space
    r1 = cinner(a.matrix @ ts.k0, als.k0)
    r2 = cinner(a.matrix @ ts.k0_tilde, als.k0_tilde)
    return r1, r2


def recover_scalars(theta, alpha, a: AttoMatrix, gauge=("chi0", 0.0)) -> RecoveryScalars:
    """Solve the 2x2 kernel-pairing system with one scalar gauged.

    gauge is ("chi0", value) fixing c = conj(chi(0)) = conj(value), or
    ("psi0", value) fixing a = psi(0).
    """
    report = membership_extract(theta, alpha, a.matrix,
                                Decomposition(theta, alpha, a.domain_space.m))
    if not report.in_class:
        raise NotInClass("matrix is not a truncated Toeplitz operator",
                         residual=report.residual)
    ts = a.domain_space
    t0 = ts.theta0
    a0 = inner_mod.evaluate(alpha, 0.0)
    q0 = inner_mod.evaluate(inner_mod.quotient(theta, alpha), 0.0)
    n_alpha = 1.0 - abs(a0) ** 2
    r1, r2 = _kernel_pairings(a)
    kind, value = gauge
    if kind == "chi0":
        c = np.conj(complex(value))
        system = np.array([[1.0, np.conj(t0) * a0], [q0, 1.0]], dtype=complex)
        rhs = np.array([r1 - n_alpha * c, r2], dtype=complex)
        det = system[0, 0] * system[1, 1] - system[0, 1] * system[1, 0]
        if abs(det) < 1e-12:
            raise SingularSystem("kernel-pairing system is singular")
        sol = np.linalg.solve(system, rhs)
        return RecoveryScalars(a=complex(sol[0]), b=complex(sol[1]), c=complex(c),
                               determinant=float(abs(det)))
    if kind == "psi0":
        a_val = complex(value)
        b = r2 - q0 * a_val
        if n_alpha < 1e-12:
            raise SingularSystem("alpha(0) too close to the circle")
        c = (r1 - a_val - np.conj(t0) * a0 * b) / n_alpha
        return RecoveryScalars(a=a_val, b=complex(b), c=complex(c),
                               determinant=float(n_alpha))
    raise ValueError(f"unknown gauge kind {kind!r}")


def recover_symbol_from_actions(theta, alpha, a: AttoMatrix, gauge=("chi0", 0.0)) -> SymbolPair:
    """Recover (psi, chi) from the actions of A and A* on kernel vectors."""
    a0 = inner_mod.evaluate(alpha, 0.0)
    if abs(a0) > ALPHA0_CAP:
        raise SingularSystem(
            f"|alpha(0)| = {abs(a0):.6f} too close to 1; alpha(z) - alpha(0) is ill-conditioned"
        )
    scalars = recover_scalars(theta, alpha, a, gauge)
    dec = Decomposition(theta, alpha, a.domain_space.m)
    ts, als = dec.theta_space, dec.alpha_space
    m = dec.m
    z = circle_points(m)
    t0, q0 = ts.theta0, dec.quot0

    diff = dec.alpha_samples - dec.alpha0
    if float(np.min(np.abs(diff))) < PointGuard:
        raise SingularSystem("alpha(z) - alpha(0) vanishes on the grid")

    a_k0 = als.reconstruct(a.matrix @ ts.k0)
    a_k0t = als.reconstruct(a.matrix @ ts.k0_tilde)
    astar_k0a = a.matrix.conj().T @ als.k0
    c_theta_astar = ts.theta_samples * np.conj(z) * np.conj(ts.reconstruct(astar_k0a))

    # the b-term sign follows from the kernel-action identity for conj(chi)
    # symbols: A k0 = psi + c k0^alpha - conj(theta(0)) alpha conj(chi_alpha)
    #          + conj(theta(0)) b alpha
    rhs = np.empty((m, 3), dtype=complex)
    rhs[:, 0] = a_k0 - scalars.c * als.reconstruct(als.k0) \
        - scalars.b * np.conj(t0) * dec.alpha_samples
    rhs[:, 1] = z * a_k0t - q0 * scalars.a * dec.alpha_samples
    rhs[:, 2] = z * c_theta_astar - scalars.a * ts.theta_samples

    coeffs = np.zeros((m, 3, 3), dtype=complex)
    coeffs[:, 0, 0] = 1.0
    coeffs[:, 0, 1] = -np.conj(t0)
    coeffs[:, 1, 0] = -t0
    coeffs[:, 1, 1] = 1.0
    coeffs[:, 2, 0] = -dec.alpha0 * dec.quot_samples
    coeffs[:, 2, 1] = 1.0
    coeffs[:, 2, 2] = diff

    solution = np.linalg.solve(coeffs, rhs[:, :, None])[:, :, 0]
    x, y, zed = solution[:, 0], solution[:, 1], solution[:, 2]

    psi = als.project(x)
    chi_samples = dec.quot_samples * np.conj(zed) + ts.theta_samples * np.conj(y)
    chi = ts.project(chi_samples)
    return SymbolPair(psi=psi, chi=chi)


def _quot_gauge(dec: Decomposition, nu: np.ndarray) -> complex:
    """The coefficient c = <P_quot(conj(alpha) nu), k0~^quot> / ||k0~^quot||^2."""
    qs = dec.quot_space
    nu_quot = qs.project(np.conj(dec.alpha_samples) * dec.theta_space.reconstruct(nu))
    return cinner(nu_quot, qs.k0_tilde) / cinner(qs.k0_tilde, qs.k0_tilde)


def canonicalize_mu_nu(theta, alpha, data: CharData, dec: Decomposition | None = None) -> CharData:
    """Gauge (mu, nu) so that P_quot(conj(alpha) nu) is orthogonal to k0~^quot."""
    if dec is None:
        dec = Decomposition.build(theta, alpha)
    if dec.quot_space is None:
        raise QuotientConstant("theta/alpha is constant; the symmetric relation applies instead")
    ts, als = dec.theta_space, dec.alpha_space
    c = _quot_gauge(dec, data.nu)
    return CharData(mu=data.mu + np.conj(c) * als.k0_tilde,
                    nu=data.nu - c * ts.k0_tilde)


def recover_symbol_from_mu_nu(theta, alpha, data: CharData,
                              dec: Decomposition | None = None) -> SymbolPair:
    """Recover (psi, chi) from the (mu, nu) data of the second characterization.

    When theta/alpha is constant the asymmetric machinery collapses and the
    conjugation gives the symbol directly: psi = C_alpha nu, chi = (theta/alpha) C_alpha mu.
    """
    if dec is None:
        dec = Decomposition.build(theta, alpha)
    ts, als, qs = dec.theta_space, dec.alpha_space, dec.quot_space
    if qs is None:
        c0 = dec.quot.constant
        nu_alpha = als.project(ts.reconstruct(data.nu))
        psi = als.apply_conjugation(nu_alpha)
        chi = ts.project(c0 * als.reconstruct(als.apply_conjugation(data.mu)))
        return SymbolPair(psi=psi, chi=chi)

    c = _quot_gauge(dec, data.nu)
    nu0 = data.nu - c * ts.k0_tilde
    mu0 = data.mu + np.conj(c) * als.k0_tilde
    nu0_samples = ts.reconstruct(nu0)
    psi = als.apply_conjugation(als.project(nu0_samples))
    s_quot, _ = qs.compressed_shift()
    quot_part = s_quot @ qs.project(np.conj(dec.alpha_samples) * nu0_samples)
    alpha_part = als.apply_conjugation(mu0)
    chi_samples = qs.reconstruct(quot_part) + dec.quot_samples * als.reconstruct(alpha_part)
    chi = ts.project(chi_samples)
    return SymbolPair(psi=psi, chi=chi)


def gauge_fit(pair_a: SymbolPair, pair_b: SymbolPair,
              k0_alpha: np.ndarray, k0_theta: np.ndarray):
    """Best single gauge constant relating two symbol pairs.

    Returns (c, residual) minimizing ||psi_b - psi_a - c k0^alpha|| and
    ||chi_b - chi_a + conj(c) k0^theta|| jointly.
    """
    d1 = pair_b.psi - pair_a.psi
    d2 = pair_b.chi - pair_a.chi
    denom = cinner(k0_alpha, k0_alpha).real + cinner(k0_theta, k0_theta).real
    c = (cinner(d1, k0_alpha) - cinner(k0_theta, d2)) / denom
    res = np.sqrt(np.linalg.norm(d1 - c * k0_alpha) ** 2
                  + np.linalg.norm(d2 + np.conj(c) * k0_theta) ** 2)
    return complex(c), float(res)
