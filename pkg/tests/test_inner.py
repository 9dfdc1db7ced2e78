import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atto.errors import NotDivisible
from atto.grid import circle_points
from atto.inner import (
    InnerFunction,
    blaschke_factor,
    divides,
    evaluate,
    gcd,
    monomial,
    product,
    quotient,
    sorted_zeros,
)
from atto.serialize import inner_from_json, inner_to_json


def test_monomial_evaluation():
    assert evaluate(monomial(2), 1j) == pytest.approx(-1.0)
    assert evaluate(monomial(5), 1.0) == pytest.approx(1.0)


def test_zero_at_origin_vanishes():
    f = InnerFunction(zeros=(0, 0, 0, 0.3, 0.3))
    assert evaluate(f, 0.0) == 0.0


def test_constructor_validation():
    with pytest.raises(ValueError):
        InnerFunction(zeros=(1.0,))
    with pytest.raises(ValueError):
        InnerFunction(zeros=(0.5,), constant=2.0)


def test_divides_monomials():
    assert divides(monomial(2), monomial(5))
    assert not divides(monomial(5), monomial(2))


def test_divides_blaschke():
    lam = 0.3
    theta = InnerFunction(zeros=(0, 0, 0, lam, lam), constant=-1.0)
    assert divides(monomial(3), theta)
    assert not divides(blaschke_factor(0.5), monomial(4))


def test_quotient_monomials():
    q = quotient(monomial(5), monomial(2))
    assert q.degree == 3
    assert evaluate(q, 0.5j) == pytest.approx(evaluate(monomial(3), 0.5j))


def test_quotient_blaschke():
    lam = 0.3
    theta = InnerFunction(zeros=(0, 0, 0, lam, lam), constant=-1.0)
    q = quotient(theta, monomial(3))
    assert sorted(z.real for z in q.zeros) == pytest.approx([lam, lam])
    z = circle_points(64)
    recombined = q.sample(z) * monomial(3).sample(z)
    assert np.max(np.abs(recombined - theta.sample(z))) < 1e-10


def test_quotient_by_itself_is_constant():
    f = InnerFunction(zeros=(0.2, -0.4j))
    q = quotient(f, f)
    assert q.degree == 0
    assert q.constant == pytest.approx(1.0)


def test_quotient_requires_divisibility():
    with pytest.raises(NotDivisible):
        quotient(monomial(2), blaschke_factor(0.5))


def test_gcd_examples():
    assert gcd(monomial(3), monomial(5)).degree == 3
    lam = 0.4
    a = InnerFunction(zeros=(0, 0, lam))
    b = InnerFunction(zeros=(0, lam, lam))
    g = gcd(a, b)
    assert sorted(abs(z) for z in g.zeros) == pytest.approx([0.0, lam])
    assert gcd(blaschke_factor(0.2), blaschke_factor(0.7)).degree == 0


def test_gcd_divides_both(rng):
    for _ in range(10):
        shared = tuple(0.6 * (rng.standard_normal(2) @ (1, 1j)) / 3 for _ in range(2))
        a = InnerFunction(zeros=shared + (0.1,))
        b = InnerFunction(zeros=shared + (-0.2j, 0.5))
        g = gcd(a, b)
        assert divides(g, a) and divides(g, b)
        assert g.degree <= min(a.degree, b.degree)


def test_degree_laws():
    theta = InnerFunction(zeros=(0.1, 0.2, 0.3))
    alpha = InnerFunction(zeros=(0.2,))
    assert quotient(theta, alpha).degree == theta.degree - alpha.degree


def test_mutual_divisibility_means_equality():
    a = InnerFunction(zeros=(0.3, -0.1j))
    b = InnerFunction(zeros=(-0.1j, 0.3))
    assert divides(a, b) and divides(b, a)
    assert sorted_zeros(a) == sorted_zeros(b)


zeros_strategy = st.lists(
    st.tuples(st.floats(0.0, 0.85), st.floats(0.0, 2 * np.pi)).map(
        lambda t: t[0] * np.exp(1j * t[1])
    ),
    min_size=1,
    max_size=6,
)


@settings(max_examples=40, deadline=None)
@given(zeros_strategy)
def test_unimodular_on_circle(zeros):
    f = InnerFunction(zeros=tuple(zeros))
    values = f.sample(circle_points(64))
    assert np.max(np.abs(np.abs(values) - 1.0)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(zeros_strategy, zeros_strategy)
def test_product_then_quotient(za, zb):
    a = InnerFunction(zeros=tuple(za))
    b = InnerFunction(zeros=tuple(zb))
    t = product(a, b)
    assert divides(a, t)
    q = quotient(t, a)
    pts = circle_points(64)
    assert np.max(np.abs(q.sample(pts) * a.sample(pts) - t.sample(pts))) < 1e-10


def test_json_round_trip():
    f = InnerFunction(zeros=(0.3 + 0.1j, -0.2), constant=1j)
    g = inner_from_json(inner_to_json(f))
    assert g.zeros == f.zeros and g.constant == f.constant
    assert inner_to_json(monomial(4)) == {"monomial": 4}
    assert inner_from_json({"monomial": 4}).degree == 4
