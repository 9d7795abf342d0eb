"""Tests for Puiseux series, log-q series, products, and residues."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiform.cyclotomic import CycQ, cyc_root
from orbiform.errors import NonInvertibleLeadingTerm, NotConvergent
from orbiform.series import (
    BiSeries,
    LogQSeries,
    Puiseux,
    eval_at_tau,
    iota_inverse_difference,
    product_expand,
    residue,
    theta,
)

small_series = st.builds(
    lambda lead_num, t, coeffs: Puiseux(
        t, Fraction(lead_num, t), coeffs, Fraction(lead_num, t) + Fraction(len(coeffs), t)
    ),
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=1, max_value=3),
    st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
        min_size=1,
        max_size=6,
    ),
)


def geometric(trunc=10):
    # 1/(1-q) = sum q^n
    return Puiseux(1, 0, [Fraction(1)] * trunc, trunc)


def test_constructors_and_coeff_access():
    s = Puiseux.from_terms([(Fraction(1, 2), 3), (2, Fraction(-1, 4))], 5, 2)
    assert s.coeff_at(Fraction(1, 2)) == 3
    assert s.coeff_at(2) == Fraction(-1, 4)
    assert s.coeff_at(1) == CycQ.zero
    with pytest.raises(KeyError):
        s.coeff_at(5)
    assert Puiseux.zero(4).is_zero()
    assert Puiseux.constant(7, 4).coeff_at(0) == 7


def test_addition_and_truncation_propagation():
    a = Puiseux(1, 0, [1, 2, 3], 3)
    b = Puiseux(1, 1, [5, 5], 3)
    c = a + b
    assert c.trunc == 3
    assert [c.coeff_at(n) for n in range(3)] == [
        CycQ.from_rational(1),
        CycQ.from_rational(7),
        CycQ.from_rational(8),
    ]


def test_multiplication_against_geometric_identity():
    g = geometric(12)
    one_minus_q = Puiseux.from_terms([(0, 1), (1, -1)], 12)
    prod = g * one_minus_q
    assert prod == Puiseux.constant(1, prod.trunc)


def test_inverse_roundtrip_and_failure():
    g = geometric(10)
    inv = g.inverse()
    assert (g * inv) == 1
    with pytest.raises(NonInvertibleLeadingTerm):
        Puiseux.zero(5).inverse()


def test_branching_alignment():
    a = Puiseux(2, Fraction(1, 2), [1, 0, 2], 2)
    b = Puiseux(3, 0, [1, 1, 1], 1)
    c = a * b
    assert c.T == 6
    assert c.coeff_at(Fraction(1, 2)) == 1
    assert c.coeff_at(Fraction(5, 6)) == 1


def test_pow_and_shift_and_substitute():
    g = geometric(8)
    assert g**2 == g * g
    assert g**0 == 1
    s = g.shifted(Fraction(3, 2))
    assert s.coeff_at(Fraction(3, 2)) == 1
    sub = g.substituted(2)
    assert sub.coeff_at(2) == 1
    assert sub.coeff_at(1) == CycQ.zero


@settings(max_examples=30, deadline=None)
@given(small_series, small_series)
def test_theta_is_a_derivation(a, b):
    lhs = theta(a * b, "full")
    rhs = theta(a, "full") * b + a * theta(b, "full")
    assert (lhs - rhs).truncated(min(lhs.trunc, rhs.trunc)).is_zero()


def test_theta_scalings():
    s = Puiseux(2, Fraction(1, 2), [1, 1], Fraction(3, 2))
    full = theta(s, "full")
    part = theta(s, "one_over_T")
    assert full.coeff_at(Fraction(1, 2)) == Fraction(1, 2)
    assert part.coeff_at(Fraction(1, 2)) == 1


def _pentagonal_sign(n):
    k = 1
    while True:
        for m in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if m == n:
                return (-1) ** k
        if k * (3 * k - 1) // 2 > n:
            return 0
        k += 1


def test_euler_product_matches_pentagonal_numbers():
    s = product_expand([(1, 1)], 40)
    assert s.coeff_at(0) == 1
    for n in range(1, 40):
        assert s.coeff_at(n) == _pentagonal_sign(n)


def test_partition_generating_function():
    p = product_expand([(1, -1)], 12)
    expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]
    assert [p.coeff_at(n) for n in range(12)] == [
        CycQ.from_rational(v) for v in expect
    ]


def test_product_inverse_pairs_cancel():
    s = product_expand([(2, 5), (2, -5), (1, 3), (1, -3)], 20)
    assert s == 1


def test_eval_at_tau_geometric():
    import cmath

    g = geometric(200)
    tau = 0.3 + 1.1j
    q = cmath.exp(2j * cmath.pi * tau)
    r = eval_at_tau(g, tau)
    assert abs(r.value - 1 / (1 - q)) < 1e-12
    assert r.tail < 1e-12
    with pytest.raises(NotConvergent):
        eval_at_tau(g, 0.5 - 1j)


def test_logq_theta_product_rule():
    base = geometric(8)
    s = LogQSeries(1, [base, Puiseux.constant(1, 8)])  # f + l * 1
    d = s.theta_full()
    # theta(l) = 1/T = 1, carried into the log^0 part
    assert d.parts[0].coeff_at(0) == 1
    assert d.parts[1].is_zero()
    assert (d.parts[0] - theta(base, "full") - 1).is_zero()


def test_logq_eval_realizes_log_q():
    import cmath

    tau = 0.2 + 1.3j
    s = LogQSeries(2, [Puiseux.zero(5, 2), Puiseux.constant(1, 5, 2)])
    r = eval_at_tau(s, tau)
    assert abs(r.value - 2j * cmath.pi * tau / 2) < 1e-12


def test_logq_json_roundtrip():
    s = LogQSeries(2, [geometric(5).with_branching(2), Puiseux.constant(3, 5, 2)])
    back = LogQSeries.from_json(s.to_json())
    assert (s - back).is_zero()


def test_biseries_residue_and_window():
    one = Puiseux.constant(1, 5)
    b = BiSeries(0, -2, [one.scalar_mul(7), one.scalar_mul(5), one])
    assert residue(b).coeff_at(0) == 5
    i = iota_inverse_difference(3, 5)
    assert residue(i).coeff_at(0) == 1


def test_biseries_product_shifts_window():
    one = Puiseux.constant(1, 5)
    a = BiSeries(Fraction(1, 2), 0, [one, one])
    b = BiSeries(Fraction(-1, 2), 1, [one])
    c = a * b
    assert c.wlead == 0
    assert c.min_off == 1
    assert c.coeff_at_w(1).coeff_at(0) == 1


def test_puiseux_json_roundtrip():
    s = Puiseux.from_terms(
        [(Fraction(1, 3), cyc_root(1, 3)), (1, Fraction(2, 5))], 2, 3
    )
    assert (Puiseux.from_json(s.to_json()) - s).is_zero()
