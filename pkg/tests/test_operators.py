import numpy as np
import pytest

from atto.errors import NotDivisible, NyquistViolation
from atto.grid import GridFunction, circle_points
from atto.inner import InnerFunction, blaschke_factor, monomial
from atto.model import Decomposition, ModelSpace, cinner
from atto.operators import (
    SymbolPair,
    adjoint,
    build_atto,
    build_atto_from_pair,
    gauge_normalize,
    is_zero_symbol,
    kernel_action_suite,
    kernel_conjugate_inner_symbol,
    kernel_inner_symbol,
    normalize_symbol,
    pair_symbol,
)


@pytest.fixture
def blaschke_pair():
    theta = InnerFunction(zeros=(0.2 + 0.3j, -0.5, 0.1 - 0.6j, 0.4 + 0.2j, -0.3 - 0.3j))
    alpha = InnerFunction(zeros=(0.2 + 0.3j, 0.4 + 0.2j))
    return theta, alpha


def toeplitz_oracle(laurent, rows, cols):
    t = np.zeros((rows, cols), dtype=complex)
    for j in range(rows):
        for k in range(cols):
            t[j, k] = laurent.get(j - k, 0.0)
    return t


def test_rectangular_toeplitz(rng):
    laurent = {k: complex(*rng.standard_normal(2)) for k in range(-4, 3)}
    a = build_atto(monomial(5), monomial(2), laurent)
    assert np.max(np.abs(a.matrix - toeplitz_oracle(laurent, 2, 5))) < 1e-12


def test_projection_symbol_gives_p_alpha():
    a = build_atto(monomial(5), monomial(2), {0: 1.0})
    expected = np.hstack([np.eye(2), np.zeros((2, 3))])
    assert np.max(np.abs(a.matrix - expected)) < 1e-12
    # conj(k0^theta) = 1 for theta = z^5 gives the same operator
    b = build_atto(monomial(5), monomial(2),
                   GridFunction.from_laurent({0: 1.0}, a.domain_space.m).conj())
    assert np.max(np.abs(b.matrix - a.matrix)) < 1e-12


def test_projection_symbol_blaschke(blaschke_pair):
    # A_{k0^alpha} acts as P_alpha restricted to K2_theta
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    k0_alpha = GridFunction(dec.alpha_space.reconstruct(dec.alpha_space.k0))
    a = build_atto(theta, alpha, k0_alpha, m=dec.m)
    proj = dec.theta_space.projection_matrix(dec.alpha_space)
    assert np.max(np.abs(a.matrix - proj)) < 1e-10
    # conj(k0^theta) symbol gives the same operator
    k0_theta = GridFunction(dec.theta_space.reconstruct(dec.theta_space.k0))
    b = build_atto(theta, alpha, k0_theta.conj(), m=dec.m)
    assert np.max(np.abs(b.matrix - a.matrix)) < 1e-10


def test_zero_symbol_matrix(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    z = circle_points(dec.m)
    h1 = (0.7 - 1.2j) * z + (0.3 + 0.4j) * z**3
    h2 = (-0.2 + 0.9j) + (1.1 - 0.2j) * z**2
    phi = GridFunction(dec.alpha_samples * h1 + np.conj(dec.theta_space.theta_samples * h2))
    a = build_atto(theta, alpha, phi, m=dec.m)
    assert a.norm() < 1e-10


def test_build_requires_divisibility():
    with pytest.raises(NotDivisible):
        build_atto(monomial(3), blaschke_factor(0.5), {0: 1.0})


def test_nyquist_violation():
    phi = GridFunction.from_laurent({120: 1.0}, 256)
    with pytest.raises(NyquistViolation):
        build_atto(monomial(5), monomial(2), phi)


def test_adjoint_is_swapped_conjugate(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    phi = GridFunction.from_laurent(
        {k: complex(*rng.standard_normal(2)) for k in range(-3, 4)}, 512)
    a = build_atto(theta, alpha, phi)
    b = build_atto(alpha, theta, phi.conj(), m=a.domain_space.m)
    assert np.max(np.abs(adjoint(a).matrix - b.matrix)) < 1e-10


def test_adjoint_pairing(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    phi = GridFunction.from_laurent(
        {k: complex(*rng.standard_normal(2)) for k in range(-3, 4)}, 512)
    a = build_atto(theta, alpha, phi)
    f = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    g = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert abs(cinner(a.apply(f), g) - cinner(f, adjoint(a).apply(g))) < 1e-10


def test_adjoint_of_projection_is_inclusion():
    a = build_atto(monomial(5), monomial(2), {0: 1.0})
    incl = adjoint(a).matrix
    assert np.max(np.abs(incl - np.vstack([np.eye(2), np.zeros((3, 2))]))) < 1e-12


def test_normalize_monomial_bookkeeping():
    # phi = conj(z)^3 with theta = z^5, alpha = z^2: psi = 0, chi = z^3
    pair = normalize_symbol(monomial(5), monomial(2), {-3: 1.0})
    assert np.max(np.abs(pair.psi)) < 1e-13
    expected = np.zeros(5, dtype=complex)
    expected[3] = 1.0
    assert np.max(np.abs(pair.chi - expected)) < 1e-13
    # phi = z^3 itself lies in alpha H2: the canonical pair vanishes
    pair0 = normalize_symbol(monomial(5), monomial(2), {3: 1.0})
    assert np.max(np.abs(pair0.psi)) < 1e-13
    assert np.max(np.abs(pair0.chi)) < 1e-13


def test_normalize_zero_class(blaschke_pair):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    z = circle_points(dec.m)
    phi = GridFunction(dec.alpha_samples * (1 + z) + np.conj(dec.theta_space.theta_samples * z**2))
    pair = normalize_symbol(theta, alpha, phi)
    # the pair is gauge-trivial: after normalizing the gauge it vanishes
    fixed = gauge_normalize(dec.theta_space, dec.alpha_space, pair)
    assert np.max(np.abs(fixed.psi)) < 1e-10
    assert np.max(np.abs(fixed.chi)) < 1e-10


def test_normalize_reproduces_operator(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    phi = GridFunction.from_laurent(
        {k: complex(*rng.standard_normal(2)) for k in range(-4, 5)}, 512)
    a = build_atto(theta, alpha, phi)
    pair = normalize_symbol(theta, alpha, phi)
    b = build_atto_from_pair(theta, alpha, pair, m=a.domain_space.m)
    assert np.max(np.abs(a.matrix - b.matrix)) < 1e-10


def test_normalize_constant_mode_to_analytic_part(blaschke_pair):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    base = GridFunction.from_laurent({-2: 1.0, 1: 0.5}, dec.m)
    c = 0.7 - 0.2j
    plain = normalize_symbol(theta, alpha, base, m=dec.m)
    shifted = normalize_symbol(theta, alpha, base + c, m=dec.m)
    assert np.max(np.abs(shifted.psi - plain.psi - c * dec.alpha_space.k0)) < 1e-10
    assert np.max(np.abs(shifted.chi - plain.chi)) < 1e-10


def test_symbol_gauge_family(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    for _ in range(5):
        c = complex(*rng.standard_normal(2))
        shifted = pair.gauge_shift(c, dec.alpha_space.k0, dec.theta_space.k0)
        b = build_atto_from_pair(theta, alpha, shifted, m=dec.m)
        assert np.linalg.norm(a.matrix - b.matrix, 2) < 1e-10


def test_is_zero_symbol_cases():
    # alpha itself is in alpha H2
    z = circle_points(256)
    assert is_zero_symbol(monomial(5), monomial(2), GridFunction(z**2))
    assert not is_zero_symbol(monomial(5), monomial(2), {0: 1.0})
    # conj(theta) zbar is in conj(theta H2)
    assert is_zero_symbol(monomial(5), monomial(2),
                          GridFunction(np.conj(z) ** 5 * np.conj(z)))


def test_kernel_shifted_model_space():
    desc = kernel_inner_symbol(monomial(5), monomial(2), monomial(1))
    assert desc.kind == "shifted_model_space"
    assert desc.predicted_dim == 4
    assert desc.numerical_basis.shape[1] == 4
    assert desc.max_angle < 1e-7
    # the kernel is z K2_{z^4} = span{z, ..., z^4}: first coordinate vanishes
    assert np.max(np.abs(desc.numerical_basis[0, :])) < 1e-10


def test_kernel_full_space_for_divisible_symbol():
    desc = kernel_inner_symbol(monomial(5), monomial(2), monomial(2))
    assert desc.predicted_dim == 5
    assert desc.numerical_basis.shape[1] == 5
    assert desc.max_angle < 1e-7


def test_kernel_mixed_blaschke():
    # g = b_lam, alpha/g = z^2 divides z^4, kernel = z^2 K2_{z^2}:
    # f in ker iff b_lam f in z^2 b_lam H2 iff f in z^2 H2, giving dim 2
    lam = 0.5
    alpha = InnerFunction(zeros=(0.0, 0.0, lam))
    desc = kernel_inner_symbol(monomial(4), alpha, blaschke_factor(lam))
    assert desc.kind == "shifted_model_space"
    assert desc.predicted_dim == 2
    assert desc.numerical_basis.shape[1] == 2
    assert desc.max_angle < 1e-7


def test_kernel_intersection_branch():
    # theta and alpha unrelated: eta = alpha does not divide theta
    theta = monomial(3)
    alpha = blaschke_factor(0.4)
    desc = kernel_inner_symbol(theta, alpha, monomial(1))
    assert desc.kind == "intersection"
    assert desc.membership_residual < 1e-8


def test_kernel_conjugate_symbol_experimental():
    # theta <= alpha regime: ker A_{conj(phi)} = K2_{GCD(theta, GCD(alpha, phi))}
    theta = monomial(2)
    alpha = monomial(5)
    null, predicted = kernel_conjugate_inner_symbol(theta, alpha, monomial(3))
    assert null.shape[1] == predicted.shape[1] == 2
    resid = predicted - null @ (null.conj().T @ predicted)
    assert np.linalg.norm(resid, 2) < 1e-8


def test_kernel_action_suite_residuals(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    checks = kernel_action_suite(theta, alpha, pair)
    assert len(checks) == 8
    for name, lhs, rhs, residual in checks:
        assert residual < 1e-9, name


def test_kernel_action_identity_one(blaschke_pair, rng):
    # A_psi k0^theta = psi
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a = build_atto(theta, alpha, GridFunction(dec.alpha_space.reconstruct(psi)), m=dec.m)
    assert np.max(np.abs(a.apply(dec.theta_space.k0) - psi)) < 1e-10


def test_kernel_action_identity_seven(blaschke_pair, rng):
    # A_{conj(psi)}: K2_alpha -> K2_theta sends k0~^alpha to C_alpha psi
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    sym = GridFunction(np.conj(dec.alpha_space.reconstruct(psi)))
    a = build_atto(alpha, theta, sym, m=dec.m)
    lhs = a.apply(dec.alpha_space.k0_tilde)
    rhs = dec.theta_space.project(
        dec.alpha_space.reconstruct(dec.alpha_space.apply_conjugation(psi)))
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_analytic_intertwining(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a = build_atto(theta, alpha, GridFunction(dec.alpha_space.reconstruct(psi)), m=dec.m)
    s_t, _ = dec.theta_space.compressed_shift()
    s_a, _ = dec.alpha_space.compressed_shift()
    assert np.linalg.norm(s_a @ a.matrix - a.matrix @ s_t, 2) < 1e-9


def test_reverse_intertwining_counterexample():
    # alpha = z^2, theta = z^7, psi = z^3, f = z: S_theta A f = z^5, A S_alpha f = 0
    a = build_atto(monomial(2), monomial(7), {3: 1.0})
    f = np.array([0.0, 1.0], dtype=complex)
    s_theta, _ = a.codomain_space.compressed_shift()
    lhs = s_theta @ a.apply(f)
    expected = np.zeros(7, dtype=complex)
    expected[5] = 1.0
    assert np.max(np.abs(lhs - expected)) < 1e-12
    s_alpha, _ = a.domain_space.compressed_shift()
    assert np.max(np.abs(a.apply(s_alpha @ f))) < 1e-12


def test_restriction_identity(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    phi = GridFunction.from_laurent(
        {k: complex(*rng.standard_normal(2)) for k in range(-3, 4)}, dec.m)
    big = build_atto(theta, alpha, phi, m=dec.m)
    small = build_atto(alpha, alpha, phi, m=dec.m)
    incl = dec.theta_space.projection_matrix(dec.alpha_space).conj().T
    f = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert np.linalg.norm(big.apply(incl @ f) - small.apply(f)) < 1e-9


def test_pair_symbol_round_trip(blaschke_pair, rng):
    theta, alpha = blaschke_pair
    dec = Decomposition.build(theta, alpha)
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    phi = pair_symbol(pair, dec.theta_space, dec.alpha_space)
    recovered = normalize_symbol(theta, alpha, phi, m=dec.m)
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    b = build_atto_from_pair(theta, alpha, recovered, m=dec.m)
    assert np.max(np.abs(a.matrix - b.matrix)) < 1e-10
