import numpy as np
import pytest

from atto.grid import GridFunction, circle_points
from atto.inner import InnerFunction, monomial
from atto.model import Decomposition, cinner, outer
from atto.operators import SymbolPair, build_atto, build_atto_from_pair
from atto.characterize import (
    CharData,
    defect_one,
    defect_two,
    lemma_l4_suite,
    membership_extract,
    mu_nu_extract,
    mu_nu_from_symbol,
    rank_one_conditions,
    series_partial_sum,
)


@pytest.fixture
def setup(rng):
    theta = InnerFunction(zeros=(0.2 + 0.3j, -0.5, 0.1 - 0.6j, 0.4 + 0.2j, -0.3 - 0.3j))
    alpha = InnerFunction(zeros=(0.2 + 0.3j, 0.4 + 0.2j))
    dec = Decomposition.build(theta, alpha)
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    return theta, alpha, dec, pair


def test_defect_one_rank_two_form(setup):
    theta, alpha, dec, pair = setup
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    d1 = defect_one(a)
    model = outer(pair.psi, dec.theta_space.k0) + outer(dec.alpha_space.k0, pair.chi)
    assert np.max(np.abs(d1 - model)) < 1e-9


def test_defect_one_symmetric_identity():
    # alpha = theta = z^2, symbol 1: the defect is the rank-one e0 (x) e0
    pair = SymbolPair(psi=np.array([1.0, 0.0], dtype=complex),
                      chi=np.zeros(2, dtype=complex))
    a = build_atto_from_pair(monomial(2), monomial(2), pair)
    assert np.max(np.abs(a.matrix - np.eye(2))) < 1e-12
    d1 = defect_one(a)
    expected = np.zeros((2, 2), dtype=complex)
    expected[0, 0] = 1.0
    assert np.max(np.abs(d1 - expected)) < 1e-12


def test_defect_two_of_zero_matrix():
    pair = SymbolPair(psi=np.zeros(2, dtype=complex), chi=np.zeros(5, dtype=complex))
    a = build_atto_from_pair(monomial(5), monomial(2), pair)
    assert np.max(np.abs(defect_two(a))) < 1e-13


def test_defect_two_matrix_display(rng):
    # theta = z^5, alpha = z^2, psi = a0 + a1 z, chi coefficients conj(b_{-k})
    a0, a1 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(5) + 1j * rng.standard_normal(5)  # b[k] = b_{-k}, b[0] = b_0
    pair = SymbolPair(psi=np.array([a0, a1]), chi=np.conj(b))
    a = build_atto_from_pair(monomial(5), monomial(2), pair)
    d2 = defect_two(a)
    expected = np.array([
        [0, 0, 0, 0, b[4]],
        [a1, a0 + b[0], b[1], b[2], b[3]],
    ])
    assert np.max(np.abs(d2 - expected)) < 1e-10
    # and its rank-two expression (b4 + b3 z) (x) z^4 + z (x) nu
    mu = np.array([b[4], b[3]])
    nu = np.array([0.0, np.conj(a1), np.conj(a0) + np.conj(b[0]), np.conj(b[1]), np.conj(b[2])])
    model = outer(mu, np.eye(5)[4]) + outer(np.eye(2)[1], nu)
    assert np.max(np.abs(d2 - model)) < 1e-10


def test_defect_one_companion_display():
    # psi = a1 + a0 z and the recovered chi from the second display, numeric instance
    a = np.array([1.0, 2.0, 3.0, 4.0, 5.0], dtype=complex)
    b = np.array([6.0, 7.0], dtype=complex)
    psi = np.array([a[1], a[0]])
    chi = np.array([0.0, np.conj(a[2]), np.conj(a[3]), np.conj(b[1]) + np.conj(a[4]), np.conj(b[0])])
    pair = SymbolPair(psi=psi, chi=chi)
    op = build_atto_from_pair(monomial(5), monomial(2), pair)
    d1 = defect_one(op)
    model = outer(psi, np.eye(5)[0]) + outer(np.eye(2)[0], chi)
    assert np.max(np.abs(d1 - model)) < 1e-10


def test_mu_nu_from_symbol_reproduces_defect(setup):
    theta, alpha, dec, pair = setup
    data = mu_nu_from_symbol(theta, alpha, pair, dec)
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    d2 = defect_two(a)
    model = outer(data.mu, dec.theta_space.k0_tilde) \
        + outer(dec.alpha_space.k0_tilde, data.nu)
    assert np.max(np.abs(d2 - model)) < 1e-9


def test_mu_nu_specialization_quotient_part_only(setup, rng):
    # psi = 0 and chi in K2_quot: mu = 0 and nu = S*_theta(alpha chi)
    theta, alpha, dec, _ = setup
    chi_quot = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    chi = dec.theta_space.project(dec.quot_reconstruct(chi_quot))
    pair = SymbolPair(psi=np.zeros(2, dtype=complex), chi=chi)
    data = mu_nu_from_symbol(theta, alpha, pair, dec)
    assert np.max(np.abs(data.mu)) < 1e-10
    _, s_adj = dec.theta_space.compressed_shift()
    expected = s_adj @ dec.theta_space.project(
        dec.alpha_samples * dec.quot_reconstruct(chi_quot))
    assert np.max(np.abs(data.nu - expected)) < 1e-10


def test_mu_nu_gauge_covariance(setup):
    # (psi, chi) -> (psi + c k0^a, chi - conj(c) k0^t) shifts
    # mu by -c q0 k0~^a and nu by +conj(c q0) k0~^t
    theta, alpha, dec, pair = setup
    c = 0.8 - 0.6j
    data = mu_nu_from_symbol(theta, alpha, pair, dec)
    shifted = mu_nu_from_symbol(
        theta, alpha, pair.gauge_shift(c, dec.alpha_space.k0, dec.theta_space.k0), dec)
    q0 = dec.quot0
    assert np.max(np.abs(shifted.mu - (data.mu - c * q0 * dec.alpha_space.k0_tilde))) < 1e-10
    assert np.max(np.abs(shifted.nu - (data.nu + np.conj(c * q0) * dec.theta_space.k0_tilde))) < 1e-10


def test_blaschke_example_mu_nu():
    # theta = z^3 b_lam^2, alpha = z^3, lam = 0.3, fixed coefficient sets
    lam = 0.3
    alpha = monomial(3)
    theta = InnerFunction(zeros=(0.0, 0.0, 0.0, lam, lam), constant=-1.0)
    dec = Decomposition.build(theta, alpha)
    z = circle_points(dec.m)
    a = np.array([1.0, 0.0, 2.0], dtype=complex)
    b = np.array([0.0, 1.0, 0.0, 2.0, 1.0], dtype=complex)
    psi_samples = a[0] + a[1] * z + a[2] * z**2
    chi_samples = sum(np.conj(b[j]) * z**j for j in range(5)) / (1.0 - lam * z) ** 2
    pair = SymbolPair(psi=dec.alpha_space.project(psi_samples),
                      chi=dec.theta_space.project(chi_samples))
    data = mu_nu_from_symbol(theta, alpha, pair, dec)
    # closed forms: mu = b4 + (b3 + 2 lam b4) z + (b2 + 2 lam b3 + 3 lam^2 b4) z^2
    mu_expected = b[4] + (b[3] + 2 * lam * b[4]) * z \
        + (b[2] + 2 * lam * b[3] + 3 * lam**2 * b[4]) * z**2
    assert np.max(np.abs(dec.alpha_space.reconstruct(data.mu) - mu_expected)) < 1e-8
    q0c = np.conj(b[0]) - lam**2 * np.conj(b[2]) - 2 * lam**3 * np.conj(b[3]) \
        - 3 * lam**4 * np.conj(b[4])
    q1c = np.conj(b[1]) + 2 * lam * np.conj(b[2]) + 3 * lam**2 * np.conj(b[3]) \
        + 4 * lam**3 * np.conj(b[4])
    ac = np.conj(a)
    nu_expected = (ac[2] + (ac[1] - 2 * lam * ac[2]) * z
                   + (ac[0] - 2 * lam * ac[1] + lam**2 * ac[2] + q0c) * z**2
                   + (lam**2 * ac[1] - 2 * lam * ac[0] + q1c) * z**3
                   + lam**2 * ac[0] * z**4) / (1.0 - lam * z) ** 2
    assert np.max(np.abs(dec.theta_space.reconstruct(data.nu) - nu_expected)) < 1e-8


def test_membership_roundtrip(setup):
    theta, alpha, dec, pair = setup
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    report = membership_extract(theta, alpha, a, dec)
    assert report.in_class
    assert report.residual < 1e-10
    rebuilt = build_atto_from_pair(theta, alpha, report.pair, m=dec.m)
    assert np.max(np.abs(rebuilt.matrix - a.matrix)) < 1e-8
    # extraction gauge: <chi, k0^theta> = 0
    assert abs(cinner(report.pair.chi, dec.theta_space.k0)) < 1e-10


def test_membership_ones_matrix():
    # constant diagonals: the all-ones rectangular matrix is Toeplitz
    dec = Decomposition.build(monomial(5), monomial(2))
    ones = np.ones((2, 5), dtype=complex)
    report = membership_extract(monomial(5), monomial(2), ones, dec)
    assert report.in_class
    rebuilt = build_atto_from_pair(monomial(5), monomial(2), report.pair, m=dec.m)
    assert np.max(np.abs(rebuilt.matrix - ones)) < 1e-8


def test_membership_negative_control(rng):
    theta = InnerFunction(zeros=(0.1, -0.3, 0.2j, 0.5, -0.2 - 0.2j))
    alpha = InnerFunction(zeros=(0.1, -0.3, 0.5))
    dec = Decomposition.build(theta, alpha)
    pair = SymbolPair(psi=rng.standard_normal(3) + 1j * rng.standard_normal(3),
                      chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    u = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    v = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    noise = u @ v
    noise /= np.linalg.norm(noise, 2)
    report = membership_extract(theta, alpha, a.matrix + noise, dec)
    assert not report.in_class
    assert report.residual > 1e-3


def test_mu_nu_extract_roundtrip(setup):
    theta, alpha, dec, pair = setup
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    report = mu_nu_extract(theta, alpha, a, dec)
    assert report.in_class
    d2 = defect_two(a)
    model = outer(report.data.mu, dec.theta_space.k0_tilde) \
        + outer(dec.alpha_space.k0_tilde, report.data.nu)
    assert np.max(np.abs(d2 - model)) < 1e-9


def test_rank_bound(setup):
    theta, alpha, dec, pair = setup
    a = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    for d in (defect_one(a), defect_two(a)):
        s = np.linalg.svd(d, compute_uv=False)
        if s.size > 2:
            assert s[2] <= 1e-8 * max(a.norm(), 1.0)


def test_rank_one_mu_side(setup, rng):
    theta, alpha, dec, _ = setup
    s = 1.7 - 0.4j
    extra = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    chi_samples = dec.quot_reconstruct(-np.conj(s) * dec.quot_space.k0) \
        + dec.quot_samples * dec.alpha_space.reconstruct(extra)
    pair = SymbolPair(psi=s * dec.alpha_space.k0,
                      chi=dec.theta_space.project(chi_samples))
    report = rank_one_conditions(theta, alpha, pair)
    assert report.reduces_to_mu_side
    assert not report.reduces_to_nu_side
    assert report.defect_rank <= 1


def test_rank_one_nu_side(setup, rng):
    theta, alpha, dec, _ = setup
    chi_samples = dec.quot_reconstruct(rng.standard_normal(3) + 1j * rng.standard_normal(3)) \
        + dec.quot_samples * dec.alpha_space.reconstruct(3.0 * dec.alpha_space.k0)
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=dec.theta_space.project(chi_samples))
    report = rank_one_conditions(theta, alpha, pair)
    assert report.reduces_to_nu_side
    assert not report.reduces_to_mu_side


def test_rank_one_generic_is_rank_two(setup):
    theta, alpha, dec, pair = setup
    report = rank_one_conditions(theta, alpha, pair)
    assert not report.reduces_to_mu_side
    assert not report.reduces_to_nu_side
    assert report.defect_rank == 2


def test_lemma_l4_suite(setup):
    theta, alpha, dec, pair = setup
    checks = lemma_l4_suite(theta, alpha, pair, m=dec.m)
    assert len(checks) == 9
    for name, lhs, rhs, residual in checks:
        assert residual < 1e-9, name


def test_lemma_l4_monomial_vanishing():
    # theta = z^5, alpha = z^2, chi_quot = z: (theta/alpha)(0) = 0 kills line (1)
    dec = Decomposition.build(monomial(5), monomial(2))
    chi = np.zeros(5, dtype=complex)
    chi[1] = 1.0
    pair = SymbolPair(psi=np.zeros(2, dtype=complex), chi=chi)
    checks = dict((name, (lhs, rhs, res)) for name, lhs, rhs, res in
                  lemma_l4_suite(monomial(5), monomial(2), pair, m=dec.m))
    lhs, rhs, res = checks["line_k0t_theta_shift"]
    assert np.max(np.abs(np.asarray(lhs))) < 1e-12
    assert np.max(np.abs(np.asarray(rhs))) < 1e-12


def test_adjoint_corollaries(setup):
    # operators in T(alpha, theta) satisfy the conjugate-transposed forms
    theta, alpha, dec, pair = setup
    from atto.operators import pair_symbol

    phi = pair_symbol(pair, dec.theta_space, dec.alpha_space)
    a = build_atto(alpha, theta, phi.conj(), m=dec.m)
    b = a.adjoint()
    report = membership_extract(theta, alpha, b, dec)
    assert report.in_class
    s_t, s_t_adj = dec.theta_space.compressed_shift()
    s_a, s_a_adj = dec.alpha_space.compressed_shift()
    lhs1 = a.matrix - s_t @ a.matrix @ s_a_adj
    model1 = outer(dec.theta_space.k0, report.pair.psi) \
        + outer(report.pair.chi, dec.alpha_space.k0)
    assert np.linalg.norm(lhs1 - model1, 2) < 1e-9
    data = mu_nu_from_symbol(theta, alpha, report.pair, dec)
    lhs2 = a.matrix - s_t_adj @ a.matrix @ s_a
    model2 = outer(dec.theta_space.k0_tilde, data.mu) \
        + outer(data.nu, dec.alpha_space.k0_tilde)
    assert np.linalg.norm(lhs2 - model2, 2) < 1e-9


def test_series_partial_sums(setup, rng):
    # nilpotent case is exact
    pair_m = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                        chi=rng.standard_normal(5) + 1j * rng.standard_normal(5))
    a = build_atto_from_pair(monomial(5), monomial(2), pair_m)
    total = series_partial_sum(monomial(5), monomial(2), pair_m)
    assert np.linalg.norm(total - a.matrix, 2) < 1e-12
    # geometric case converges within the tolerance
    zeros = tuple(0.4 * np.sqrt(rng.uniform(size=6)) * np.exp(2j * np.pi * rng.uniform(size=6)))
    theta = InnerFunction(zeros=zeros)
    alpha = InnerFunction(zeros=zeros[:2])
    dec = Decomposition.build(theta, alpha)
    pair = SymbolPair(psi=rng.standard_normal(2) + 1j * rng.standard_normal(2),
                      chi=rng.standard_normal(6) + 1j * rng.standard_normal(6))
    b = build_atto_from_pair(theta, alpha, pair, m=dec.m)
    total = series_partial_sum(theta, alpha, pair, dec=dec)
    assert np.linalg.norm(total - b.matrix, 2) < 1e-8
