"""Unit and property tests for exact cyclotomic arithmetic."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiform.cyclotomic import (
    CycQ,
    cyc_root,
    cyc_root_of,
    cyclotomic_polynomial,
    euler_phi,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=6
)


def cycq_elements(max_conductor=12):
    def build(n, data):
        return CycQ(n, [data.draw(rationals) for _ in range(euler_phi(n))])

    return st.integers(min_value=1, max_value=max_conductor).flatmap(
        lambda n: st.builds(
            CycQ, st.just(n), st.lists(
                rationals, min_size=euler_phi(n), max_size=euler_phi(n)
            )
        )
    )


def test_phi_and_cyclotomic_polynomials():
    assert [euler_phi(n) for n in range(1, 13)] == [
        1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4,
    ]
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_basics():
    i = cyc_root(1, 4)
    assert i * i == CycQ.from_rational(-1)
    w = cyc_root(1, 3)
    assert w**3 == CycQ.one
    assert w**2 + w + 1 == CycQ.zero
    # minimal conductor reduction
    assert cyc_root(2, 4) == CycQ.from_rational(-1)
    assert cyc_root(3, 6) == CycQ.from_rational(-1)
    assert cyc_root_of(Fraction(1, 2)) == CycQ.from_rational(-1)
    assert cyc_root_of(Fraction(7, 3)) == cyc_root(1, 3)


def test_order_of_every_root():
    for n in range(1, 13):
        z = cyc_root(1, n)
        assert z**n == CycQ.one
        for k in range(1, n):
            assert z**k != CycQ.one or n == 1


@settings(max_examples=40, deadline=None)
@given(cycq_elements(), cycq_elements(), cycq_elements())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + CycQ.zero == a
    assert a * CycQ.one == a
    assert a - a == CycQ.zero


@settings(max_examples=40, deadline=None)
@given(cycq_elements(8), cycq_elements(8))
def test_embed_is_a_homomorphism(a, b):
    ea, eb = a.embed(), b.embed()
    assert abs(complex((a + b).embed()) - (ea + eb)) < 1e-9
    assert abs(complex((a * b).embed()) - ea * eb) < 1e-7


def test_embed_matches_exponential():
    for n in range(1, 13):
        for j in range(n):
            got = cyc_root(j, n).embed()
            want = cmath.exp(2j * cmath.pi * j / n)
            assert abs(got - want) < 1e-12


def test_inverse_and_division():
    z = cyc_root(1, 5)
    x = z + 2 * z**3 - Fraction(1, 2)
    assert x * x.inverse() == CycQ.one
    assert (x / x) == CycQ.one
    with pytest.raises(ZeroDivisionError):
        CycQ.zero.inverse()


def test_high_precision_embedding():
    z = cyc_root(1, 7)
    hi = z.embed(200)
    lo = z.embed()
    assert abs(complex(hi) - lo) < 1e-14


def test_lift_and_cross_conductor_arithmetic():
    w3 = cyc_root(1, 3)
    i4 = cyc_root(1, 4)
    prod = w3 * i4
    assert prod == cyc_root(7, 12)
    assert w3.lift(12) == w3
    assert w3 + Fraction(1, 2) - Fraction(1, 2) == w3


def test_rational_detection():
    x = cyc_root(1, 3) + cyc_root(2, 3)  # = -1
    assert x.is_rational()
    assert x.rational_value() == -1
    assert not cyc_root(1, 3).is_rational()


def test_json_roundtrip():
    x = cyc_root(1, 5) * Fraction(3, 7) + 2
    assert CycQ.from_json(x.to_json()) == x
