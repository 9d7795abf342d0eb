"""Bernoulli polynomials, Eisenstein series, twisted q-series, and the
closed-form numeric evaluators built on them.

Exact series keep every 2*pi*i factor outside the coefficients, so all
coefficients live in cyclotomic fields; numeric evaluators reinstate the
transcendental factors.
"""

from __future__ import annotations

import cmath
import functools
import math
from fractions import Fraction

import numpy as np

from .cyclotomic import CycQ, cyc_root_of, lcm
from .errors import (
    BadWeight,
    NearPole,
    OutsideRegion,
    UndefinedAtLatticePoint,
    UndefinedAtTrivialPair,
    WindowTooSmall,
)
from .modular import TorsionPair
from .report import CheckReport
from .series import BiSeries, Puiseux, residue, theta

TWO_PI_I = 2j * cmath.pi

# the twisted q-series are generated with the geometric denominator aligned
# to its numerator exponent; reports carry this flag
QK_DENOMINATOR_FLAG = "qk-denominator-exponent-matches-numerator"
# the residue identity's Bernoulli term is B_k(1-m+j/M)/k!, the value its
# own derivation produces; the printed /k agrees only for k <= 2
RESIDUE_BERNOULLI_FLAG = "residue-identity-bernoulli-term-uses-k-factorial"


# -- Bernoulli polynomials ----------------------------------------------------

@functools.lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k(0); convention B_1(0) = -1/2."""
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{k} binom(k+1, j) B_j = 0 for k >= 1
    s = Fraction(0)
    for j in range(k):
        s += math.comb(k + 1, j) * bernoulli_number(j)
    return -s / (k + 1)


class BernoulliPoly:
    """Coefficients of B_k(x), ascending in x."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients):
        self.degree = degree
        self.coefficients = [Fraction(c) for c in coefficients]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, BernoulliPoly)
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"BernoulliPoly({self.degree}, {list(map(str, self.coefficients))})"


@functools.lru_cache(maxsize=None)
def bernoulli_poly(k: int) -> BernoulliPoly:
    """B_k(x) = sum_i binom(k, i) B_i x^(k-i), exact."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    coeffs = [Fraction(0)] * (k + 1)
    for i in range(k + 1):
        coeffs[k - i] = math.comb(k, i) * bernoulli_number(i)
    return BernoulliPoly(k, coeffs)


def bernoulli_value(k: int, x) -> Fraction:
    return bernoulli_poly(k)(x)


def bernoulli_identities_check(k: int, x, n: int = 10) -> bool:
    """Power-sum and reflection identities for B_k, checked exactly."""
    if k < 1:
        raise ValueError("k must be at least 1")
    x = Fraction(x)
    bk = bernoulli_poly(k)
    power_sum = sum((Fraction(a) + x) ** (k - 1) for a in range(n))
    lhs_ok = power_sum == (bk(x + n) - bk(x)) / k
    reflect_ok = bk(1 - x) == (-1) ** k * bk(x)
    return lhs_ok and reflect_ok


# -- Eisenstein series --------------------------------------------------------

def _divisor_power_sum(n: int, p: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d**p
            e = n // d
            if e != d:
                s += e**p
        d += 1
    return s


def eisenstein(k: int, trunc) -> Puiseux:
    """Normalized weight-k Eisenstein series, constant term -B_k(0)/k!."""
    if k < 2 or k % 2 != 0:
        raise BadWeight("Eisenstein weight must be an even integer >= 2")
    trunc = Fraction(trunc)
    n = max(0, math.ceil(trunc))
    coeffs = [Fraction(0)] * n
    if n:
        coeffs[0] = -bernoulli_number(k) / math.factorial(k)
    two_over = Fraction(2, math.factorial(k - 1))
    for m in range(1, n):
        coeffs[m] = two_over * _divisor_power_sum(m, k - 1)
    return Puiseux(1, 0, coeffs, trunc)


def g2_eval(tau: complex, trunc=60) -> complex:
    """pi^2/3 + 2 (2 pi i)^2 sum n q^n / (1 - q^n); equals (2 pi i)^2 E_2."""
    from .series import eval_at_tau

    e2 = eval_at_tau(eisenstein(2, trunc), tau)
    return TWO_PI_I**2 * e2.value


def del_k(f: Puiseux, k: int) -> Puiseux:
    """theta(f) + k E_2 f, the weight-raising derivative."""
    window = f.trunc - f.lead
    e2 = eisenstein(2, window)
    return theta(f, "full") + (e2 * f).scalar_mul(Fraction(k))


# -- twisted Eisenstein series Q_k ---------------------------------------------

def _rpow(base: Fraction, e: int) -> Fraction:
    # 0^0 = 1 edge convention for the k=1 boundary terms
    if e == 0:
        return Fraction(1)
    return base**e


def _add_geometric(
    coeffs: list, lead: Fraction, t: int, trunc: Fraction, x: Fraction, lam_pows, weight
):
    """Add weight * sum_{m>=1} lam^m q^(m x) into the dense buffer."""
    m = 1
    while m * x < trunc:
        idx = int((m * x - lead) * t)
        coeffs[idx] = coeffs[idx] + lam_pows(m) * weight
        m += 1


def qk_series(k: int, pair: TorsionPair, trunc) -> Puiseux:
    """Weight-k twisted Eisenstein series as an exact q-expansion.

    Branching is the denominator M of the first pair entry; the constant
    term is -B_k(j/M)/k! plus boundary contributions.
    """
    if k < 0:
        raise ValueError("weight must be nonnegative")
    trunc = Fraction(trunc)
    if k == 0:
        return Puiseux.constant(-1, trunc)
    if pair.is_trivial() and k < 2:
        # the boundary term 1/(1 - lam^-1) is a pole at lam = 1; for k >= 2
        # its weight (n - j/M)^(k-1) vanishes and the series is fine
        raise UndefinedAtTrivialPair("Q_1 is undefined at the pair (1,1)")
    a1 = pair.j_over_M
    m_den = pair.M
    lam_cache: dict[int, CycQ] = {}

    def lam_pow(e: int) -> CycQ:
        if e not in lam_cache:
            lam_cache[e] = cyc_root_of(e * pair.l_over_N)
        return lam_cache[e]

    t = m_den
    lead = Fraction(0)
    nslots = max(0, math.ceil((trunc - lead) * t))
    coeffs: list = [CycQ.zero] * nslots
    km1fact = Fraction(1, math.factorial(k - 1))

    def add_const(value):
        if nslots:
            coeffs[0] = coeffs[0] + value

    add_const(CycQ.from_rational(-bernoulli_poly(k)(a1) / math.factorial(k)))

    # first sum: n >= 0, exponent x = n + j/M > 0 always
    n = 0
    while Fraction(n) + a1 < trunc:
        x = Fraction(n) + a1
        w = km1fact * _rpow(x, k - 1)
        if w:
            _add_geometric(coeffs, lead, t, trunc, x, lam_pow, w)
        n += 1
    # second sum: n >= 1, exponent x = n - j/M >= 0
    sign = Fraction((-1) ** k)
    n = 1
    while Fraction(n) - a1 < trunc:
        x = Fraction(n) - a1
        w = sign * km1fact * _rpow(x, k - 1)
        if w:
            if x == 0:
                # constant boundary term lam^-1 w / (1 - lam^-1); lam != 1 here
                lam_inv = lam_pow(-1)
                add_const(lam_inv * w / (CycQ.one - lam_inv))
            else:
                _add_geometric(
                    coeffs, lead, t, trunc, x, lambda m: lam_pow(-m), w
                )
        n += 1
    return Puiseux(t, lead, coeffs, trunc)


def qk_series_divisor_oracle(k: int, pair: TorsionPair, trunc) -> Puiseux:
    """Independent lattice-sum rearrangement of Q_k for k >= 3.

    Coefficient of q^(n/M):
    (-1)^k M^(1-k)/(k-1)! * [ sum_{d|n, d = -j mod M} d^(k-1) lam^(-n/d)
                              + (-1)^k sum_{d|n, d = j mod M} d^(k-1) lam^(n/d) ].
    """
    if k < 3:
        raise ValueError("the lattice rearrangement needs k >= 3")
    trunc = Fraction(trunc)
    a1 = pair.j_over_M
    m_den = pair.M
    j = a1.numerator * (m_den // a1.denominator)  # j with mu = zeta_M^j, 1<=j<=M

    def lam_pow(e: int) -> CycQ:
        return cyc_root_of(e * pair.l_over_N)

    t = m_den
    nslots = max(0, math.ceil(trunc * t))
    coeffs: list = [CycQ.zero] * nslots
    if nslots:
        coeffs[0] = CycQ.from_rational(-bernoulli_poly(k)(a1) / math.factorial(k))
    pref = Fraction((-1) ** k, m_den ** (k - 1) * math.factorial(k - 1))
    for n in range(1, nslots):
        acc = CycQ.zero
        for d in range(1, n + 1):
            if n % d:
                continue
            if (d + j) % m_den == 0:
                acc = acc + lam_pow(-(n // d)) * Fraction(d ** (k - 1))
            if (d - j) % m_den == 0:
                acc = acc + lam_pow(n // d) * Fraction((-1) ** k * d ** (k - 1))
        coeffs[n] = coeffs[n] + acc * pref
    return Puiseux(t, 0, coeffs, trunc)


# -- the P-bar two-variable series ---------------------------------------------

def _expanded_reciprocal(x: Fraction, lam_pow, trunc: Fraction, t: int) -> Puiseux:
    """1/(1 - lam q^x) as a q-series, valid for either sign of x.

    Negative x is rewritten via -lam^(-1) q^(-x)/(1 - lam^(-1) q^(-x)).
    """
    trunc = Fraction(trunc)
    if x > 0:
        terms = [(Fraction(0), CycQ.one)]
        m = 1
        while m * x < trunc:
            terms.append((m * x, lam_pow(m)))
            m += 1
        return Puiseux.from_terms(terms, trunc, t)
    if x < 0:
        terms = []
        m = 1
        while -m * x < trunc:
            terms.append((-m * x, -lam_pow(-m)))
            m += 1
        return Puiseux.from_terms(terms, trunc, t)
    lam = lam_pow(1)
    if lam == CycQ.one:
        raise UndefinedAtTrivialPair("1/(1 - lam) needs lam != 1")
    return Puiseux.constant((CycQ.one - lam).inverse(), trunc, t)


def pbar_series(k: int, pair: TorsionPair, window: tuple[int, int], trunc) -> BiSeries:
    """Two-variable series sum' n^(k-1) w^n / ((k-1)! (1 - lam q^n)).

    w-exponents n run over j/M + Z restricted to j/M + [window[0], window[1]];
    each reciprocal is expanded as a q-series.  Returns the zero series for
    k = 0.
    """
    lo, hi = window
    if hi < lo:
        raise WindowTooSmall("empty w-window")
    trunc = Fraction(trunc)
    a1 = pair.j_over_M
    t = lcm(a1.denominator, 1)
    if k == 0:
        zero = Puiseux.zero(trunc, t)
        return BiSeries(a1, lo, [zero] * (hi - lo + 1))

    def lam_pow(e: int) -> CycQ:
        return cyc_root_of(e * pair.l_over_N)

    km1fact = Fraction(1, math.factorial(k - 1))
    coeffs = []
    for off in range(lo, hi + 1):
        n = a1 + off
        if n == 0 and pair.is_trivial():
            coeffs.append(Puiseux.zero(trunc, t))
            continue
        w = km1fact * _rpow(n, k - 1)
        if w == 0:
            coeffs.append(Puiseux.zero(trunc, t))
            continue
        if n == 0 and pair.lam == CycQ.one:
            raise UndefinedAtTrivialPair("n = 0 term divides by zero at lam = 1")
        coeffs.append(_expanded_reciprocal(n, lam_pow, trunc, t).scalar_mul(w))
    return BiSeries(a1, lo, coeffs)


# -- numeric evaluators for P_k, wp1, P_lambda ----------------------------------

def _lerch_positive(k: int, a: float, z: complex) -> complex:
    """Analytic continuation of sum_(r>=0) (a+r)^(k-1) q_z^(a+r).

    Computed as theta^(k-1) applied to x^a/(1-x) with x = q_z; terms are
    kept in the basis x^(a+j) (1-x)^(-i).
    """
    terms = {(0, 1): 1.0 + 0j}
    for _ in range(k - 1):
        new: dict[tuple[int, int], complex] = {}
        for (j, i), c in terms.items():
            new[(j, i)] = new.get((j, i), 0j) + c * (a + j)
            new[(j + 1, i + 1)] = new.get((j + 1, i + 1), 0j) + c * i
        terms = new
    x = cmath.exp(TWO_PI_I * z)
    return sum(
        c * cmath.exp(TWO_PI_I * z * (a + j)) * (1 - x) ** (-i)
        for (j, i), c in terms.items()
    )


def pk_eval(
    k: int,
    pair: TorsionPair,
    z: complex,
    tau: complex,
    cutoff: int = 400,
    tol: float | None = None,
):
    """Truncated closed-form sum for P_k; returns (value, tail bound).

    The non-decaying geometric part of the positive-n sum is split off and
    summed in closed form, so the evaluator realizes the analytic
    continuation on the annulus |q_tau| < |q_z| < 1/|q_tau| (the defining
    series itself only converges for |q_z| < 1).  Terms with very negative
    n are rewritten against q_tau^(-n) for stability; the cutoff escalates
    until the geometric tail bound drops below tol (hard cap 10^5 terms).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    qz = cmath.exp(TWO_PI_I * z)
    qt = cmath.exp(TWO_PI_I * tau)
    if not (abs(qt) < abs(qz) < 1 / abs(qt)):
        raise OutsideRegion("need |q_tau| < |q_z| < 1/|q_tau|")
    if abs(qz - 1) < 1e-12:
        raise NearPole("q_z too close to 1")
    a1 = pair.j_over_M
    lam = complex(pair.lam.embed())
    lam_inv = 1 / lam
    trivial = pair.is_trivial()
    km1fact = 1 / math.factorial(k - 1)
    ratio = max(abs(qz) * abs(qt), abs(qt) / abs(qz))
    hard_cap = 10**5

    def tail_bound(c: int) -> float:
        # sum_{|n|>c} |n|^(k-1) r^|n| <= 2 (c+1)^(k-1) r^(c+1)/(1-r)^k
        return 2 * (c + 1) ** (k - 1) * ratio ** (c + 1) / (1 - ratio) ** k * km1fact

    while tol is not None and tail_bound(cutoff) > tol and cutoff < hard_cap:
        cutoff *= 2
    # positive n = a1 + r: 1/(1 - lam q^n) = 1 + lam q^n/(1 - lam q^n); the
    # free "1" part is the closed-form geometric piece
    value = km1fact * _lerch_positive(k, float(a1), z)
    for off in range(0, cutoff + 1):
        n = float(a1 + off)
        npow = n ** (k - 1) if k > 1 else 1.0
        lq = lam * cmath.exp(TWO_PI_I * tau * n)
        value += km1fact * npow * cmath.exp(TWO_PI_I * z * n) * lq / (1 - lq)
    # the n = 0 term (present only when j/M = 1, at offset -1)
    start = 1 if a1 < 1 else 2
    if a1 == 1 and not trivial and k == 1:
        value += km1fact / (1 - lam)
    # negative n: q_z^n q_tau^(-n) = exp(2 pi i (z - tau) n) stays small
    for s in range(start, cutoff + 1):
        n = float(a1 - s)
        npow = n ** (k - 1) if k > 1 else 1.0
        denom = 1 - lam_inv * cmath.exp(-TWO_PI_I * tau * n)
        value += (
            km1fact
            * npow
            * (-lam_inv)
            * cmath.exp(TWO_PI_I * (z - tau) * n)
            / denom
        )
    return value, tail_bound(cutoff)


def pk_double_sum_oracle(
    k: int, pair: TorsionPair, z: complex, tau: complex, terms: int = 200
) -> complex:
    """Independent double-geometric-sum evaluator for P_k (k = 1 form).

    Expands each reciprocal geometrically, valid in |q_tau| < |q_z| < 1.
    """
    qz = cmath.exp(TWO_PI_I * z)
    qt = cmath.exp(TWO_PI_I * tau)
    a1 = pair.j_over_M
    lam = complex(pair.lam.embed())
    km1fact = 1 / math.factorial(k - 1)
    value = 0j
    for off in range(-terms, terms + 1):
        nf = a1 + off
        if nf == 0:
            if pair.is_trivial():
                continue
            if k == 1:
                value += km1fact / (1 - lam)
            continue
        n = float(nf)
        npow = n ** (k - 1) if k > 1 else 1.0
        if n > 0:
            acc = sum(
                lam**m * cmath.exp(TWO_PI_I * tau * m * n) for m in range(terms)
            )
            value += km1fact * npow * cmath.exp(TWO_PI_I * z * n) * acc
        else:
            # q_z^n q_tau^(-mn) = exp(2 pi i (z - m tau) n), each factor below 1
            acc = sum(
                lam ** (-m) * cmath.exp(TWO_PI_I * (z - m * tau) * n)
                for m in range(1, terms)
            )
            value -= km1fact * npow * acc
    return value


def wp1_eval(z: complex, tau: complex, trunc: int = 200) -> complex:
    """G2(tau) z + pi i (q_z+1)/(q_z-1) + lattice corrections, truncated."""
    if tau.imag <= 0:
        raise ValueError("need Im(tau) > 0")
    qz = cmath.exp(TWO_PI_I * z)
    qt = cmath.exp(TWO_PI_I * tau)
    if abs(qz - 1) < 1e-12:
        raise NearPole("q_z too close to 1")
    value = g2_eval(tau, trunc) * z + 1j * cmath.pi * (qz + 1) / (qz - 1)
    acc = 0j
    for n in range(1, trunc + 1):
        qn = qt**n
        d1 = 1 - qn / qz
        d2 = 1 - qz * qn
        if min(abs(d1), abs(d2)) < 1e-12:
            raise NearPole(f"lattice denominator vanishes at n={n}")
        acc += (qn / qz) / d1 - (qz * qn) / d2
    return value + TWO_PI_I * acc


def plambda_eval(z: complex, tau: complex, lam: complex, cutoff: int = 200) -> complex:
    """2 pi i sum'_{n != 0} q_z^n / (1 - lam q_tau^n), stabilized form."""
    qz = cmath.exp(TWO_PI_I * z)
    qt = cmath.exp(TWO_PI_I * tau)
    if not (abs(qt) < abs(qz) < 1):
        raise OutsideRegion("need |q_tau| < |q_z| < 1")
    if abs(qz - 1) < 1e-12:
        raise NearPole("q_z too close to 1")
    value = qz / (1 - qz)
    for m in range(1, cutoff + 1):
        qm = qt**m
        value += lam**m * qz * qm / (1 - qz * qm)
        value -= lam ** (-m) * qm / qz / (1 - qm / qz)
    return TWO_PI_I * value


# -- Klein and Hecke forms -------------------------------------------------------

def klein_hecke_series(pair: TorsionPair, trunc) -> tuple[Puiseux, Puiseux]:
    """The Klein form g and the Hecke form h/(2 pi i) as exact series.

    g carries leading exponent B_2(a1)/2 and an exact root-of-unity
    prefactor; h is returned divided by 2 pi i so that its coefficients
    stay cyclotomic.
    """
    a1, a2 = pair.j_over_M, pair.l_over_N
    if a1 == 1 and a2 == 1:
        raise UndefinedAtLatticePoint("Klein/Hecke forms need (a1,a2) not in Z^2")
    trunc = Fraction(trunc)
    t = a1.denominator
    lam = pair.lam  # q_(a1 tau + a2) = lam * q^(a1)
    lam_inv = cyc_root_of(-pair.l_over_N)
    lead = bernoulli_poly(2)(a1) / 2
    # prefactor -e^(2 pi i a2 (a1 - 1)/2); the B2(a1)/2 lead needs a finer
    # exponent grid than the 1/M factor lattice
    pref = -cyc_root_of(a2 * (a1 - 1) / 2)
    t_g = lcm(t, lead.denominator)
    g = Puiseux.monomial(pref, lead, lead + trunc, t_g)
    # (1 - lam q^(a1)) and the n >= 1 factors, all exponents on the 1/t grid
    factors = [(a1, lam)] if a1 < trunc else []
    n = 1
    while True:
        e_plus = Fraction(n) + a1
        e_minus = Fraction(n) - a1
        if e_plus >= trunc and e_minus >= trunc:
            break
        if e_plus < trunc:
            factors.append((e_plus, lam))
        if e_minus < trunc:
            factors.append((e_minus, lam_inv))
        n += 1
    for e, root in factors:
        if e == 0:
            binom = Puiseux.constant(CycQ.one - root, trunc, t)
        else:
            binom = Puiseux.from_terms(
                [(Fraction(0), CycQ.one), (e, -root)], trunc, t
            )
        g = g * binom
        g = g.truncated(min(g.trunc, lead + trunc))
    # h/(2 pi i) = a1 - 1/2 - lam q^(a1)/(1 - lam q^(a1)) - sum_m {...}
    def lam_pow(e: int) -> CycQ:
        return cyc_root_of(e * pair.l_over_N)

    h = Puiseux.constant(Fraction(a1 - Fraction(1, 2)), trunc, t)
    h = h - _geom_tail(a1, lam_pow, 1, trunc, t)
    m = 1
    while Fraction(m) - a1 < trunc or Fraction(m) + a1 < trunc:
        e_plus = Fraction(m) + a1
        e_minus = Fraction(m) - a1
        if e_plus < trunc:
            h = h - _geom_tail(e_plus, lam_pow, 1, trunc, t)
        if e_minus < trunc:
            h = h + _geom_tail(e_minus, lam_pow, -1, trunc, t)
        m += 1
    return g, h


def _geom_tail(x: Fraction, lam_pow, sign: int, trunc: Fraction, t: int) -> Puiseux:
    """lam^sign q^x / (1 - lam^sign q^x) as a series; x = 0 gives a constant."""
    if x == 0:
        lam = lam_pow(sign)
        if lam == CycQ.one:
            raise UndefinedAtLatticePoint("constant geometric term at lam = 1")
        return Puiseux.constant(lam / (CycQ.one - lam), trunc, t)
    terms = []
    m = 1
    while m * x < trunc:
        terms.append((m * x, lam_pow(sign * m)))
        m += 1
    return Puiseux.from_terms(terms, trunc, t)


# -- Zhu change-of-variable coefficients -----------------------------------------

def zhu_coeff(p: int, i: int, m: int) -> Fraction:
    """Coefficient of z^i in (log(1+z))^m (1+z)^(p-1) / m!."""
    if i < 0 or m < 0:
        raise ValueError("i and m must be nonnegative")
    if i < m:
        return Fraction(0)
    series = _log_pow_times_binomial(p, m, i + 1)
    return series[i] / math.factorial(m)


def zhu_coeff_binomial_oracle(p: int, i: int, m: int) -> Fraction:
    """Coefficient of z^m in the polynomial binom(p-1+z, i)."""
    if i < 0 or m < 0:
        raise ValueError("i and m must be nonnegative")
    # expand prod_(t=0..i-1) (p-1-t+z) / i!
    poly = [Fraction(1)]
    for t in range(i):
        const = Fraction(p - 1 - t)
        new = [Fraction(0)] * (len(poly) + 1)
        for s, c in enumerate(poly):
            new[s] += c * const
            new[s + 1] += c
        poly = new
    poly = [c / math.factorial(i) for c in poly]
    return poly[m] if m < len(poly) else Fraction(0)


def _log_pow_times_binomial(p: int, m: int, nterms: int) -> list[Fraction]:
    log1p = [Fraction(0)] + [
        Fraction((-1) ** (n - 1), n) for n in range(1, nterms)
    ]
    acc = [Fraction(1)] + [Fraction(0)] * (nterms - 1)
    for _ in range(m):
        acc = _frac_series_mul(acc, log1p, nterms)
    # (1+z)^(p-1) via the generalized binomial series
    binom = []
    c = Fraction(1)
    for n in range(nterms):
        binom.append(c)
        c = c * Fraction(p - 1 - n, n + 1)
    return _frac_series_mul(acc, binom, nterms)


def _frac_series_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


# -- checks ----------------------------------------------------------------------

def prop44_check(k: int, j: int, m: int, cutoff: int = 10**6, tol: float = 1e-9):
    """Root-of-unity polylog sum against -B_k(j/M)/k!, vectorized.

    Compares (1/(2 pi i)^k) sum_{0<|n|<=cutoff} mu^n/n^k with the exact
    Bernoulli value and reports the absolute error.
    """
    if not (1 <= j <= m):
        raise ValueError("need 1 <= j <= M")
    if k < 2:
        raise ValueError("the sum needs k >= 2 for absolute convergence")
    ns = np.arange(1, cutoff + 1, dtype=np.float64)
    phase = np.exp(2j * np.pi * ((np.arange(1, cutoff + 1) * j) % m) / m)
    inv = ns ** (-float(k))
    total = np.sum(phase * inv) + (-1) ** k * np.sum(np.conj(phase) * inv)
    if j % m == 0:
        # mu = 1: the tail does not oscillate and decays only like
        # cutoff^(1-k); restore it with the Hurwitz zeta value
        import mpmath

        total += (1 + (-1) ** k) * float(mpmath.zeta(k, cutoff + 1))
    lhs = total / TWO_PI_I**k
    rhs = complex(-bernoulli_poly(k)(Fraction(j, m)) / math.factorial(k))
    err = abs(lhs - rhs)
    return CheckReport(
        check="bernoulli-polylog-sum",
        params={"k": k, "j": j, "M": m, "cutoff": cutoff, "tol": tol},
        error=err,
        passed=err < tol,
    )


def prop46_exact_checks(pair: TorsionPair, trunc) -> list[CheckReport]:
    """Hecke/Klein forms vs Q_1 and Q_2 as exact series identities."""
    g, h = klein_hecke_series(pair, trunc)
    q1 = qk_series(1, pair, trunc)
    ok1 = h == -q1
    # theta(log g) = theta(g)/g, equals -Q_2
    tg = theta(g, "full")
    logderiv = tg * g.inverse()
    q2 = qk_series(2, pair, trunc)
    ok2 = logderiv == -q2
    flags = [QK_DENOMINATOR_FLAG]
    return [
        CheckReport(
            "hecke-form-equals-weight1-series",
            {"pair": pair, "trunc": trunc},
            "exact" if ok1 else "coefficient mismatch",
            ok1,
            flags,
        ),
        CheckReport(
            "klein-log-derivative-equals-weight2-series",
            {"pair": pair, "trunc": trunc},
            "exact" if ok2 else "coefficient mismatch",
            ok2,
            flags,
        ),
    ]


def lemma_plambda_check(
    z: complex, tau: complex, l_over_N: Fraction, tol: float = 1e-8
) -> CheckReport:
    """P_lambda against the cyclic average of wp1 at scaled period."""
    l_over_N = Fraction(l_over_N)
    n = l_over_N.denominator
    lam = complex(cyc_root_of(l_over_N).embed())
    lhs = plambda_eval(z, tau, lam)
    rhs = 0j
    g2n = g2_eval(n * tau)
    for kk in range(n):
        w = z + kk * tau
        rhs += lam**kk * (g2n * w - wp1_eval(w, n * tau) - 1j * cmath.pi)
    err = abs(lhs - rhs)
    return CheckReport(
        "plambda-cyclic-average",
        {"z": z, "tau": tau, "lam_exponent": l_over_N, "tol": tol},
        err,
        err < tol,
    )


def prop48_check(k: int, m: int, pair: TorsionPair, trunc) -> CheckReport:
    """Exact residue identity linking the two-variable series to Q_k.

    Res_z of the two expansion products, minus Q_k, must equal the exact
    Bernoulli constant B_k(1 - m + j/M)/k! for k >= 1; for k = 0 both
    residues vanish and Q_0 + 1 = 0.
    """
    from .series import iota_inverse_difference

    trunc = Fraction(trunc)
    params = {"k": k, "m": m, "pair": pair, "trunc": trunc}
    flags = [QK_DENOMINATOR_FLAG, RESIDUE_BERNOULLI_FLAG]
    if k == 0:
        q0 = qk_series(0, pair, trunc)
        ok = q0 == Puiseux.constant(-1, trunc)
        return CheckReport(
            "residue-pairing-identity", params, "exact" if ok else "mismatch", ok, flags
        )
    a1 = pair.j_over_M
    t = a1.denominator
    depth = math.ceil(trunc) + abs(m) + 2
    window = (-m - depth, 1 - m + depth)
    # extra q-window so the q^n shift of the second product (negative n)
    # still leaves everything exact to trunc
    trunc_p = trunc + max(m, 0)
    pbar = pbar_series(k, pair, window, trunc_p)

    # first product: iota_(z,z1)(1/(z-z1)) * z^(j/M - m) * Pbar(w = z1/z);
    # the suppressed z1-exponent is the constant j/M - m at the residue, so
    # z1 powers are carried as plain constants.  Pbar in z: w-exponent n
    # contributes z^(-n).
    pbar_in_z = BiSeries(-a1, -pbar.max_off, list(reversed(pbar.coeffs)))
    iota1 = iota_inverse_difference(depth + 2, trunc_p, t)
    mono = BiSeries(a1 - m, 0, [Puiseux.constant(1, trunc_p, t)])
    res1 = residue(iota1 * mono * pbar_in_z)

    # second product: -lam * iota_(z1,z)(1/(z-z1)) * z^(j/M - m) * Pbar(w = z1 q/z)
    pbar_q = pbar.scale_coeffs_by_w_power()
    pbar_q_in_z = BiSeries(-a1, -pbar_q.max_off, list(reversed(pbar_q.coeffs)))
    iota2 = BiSeries(
        0,
        0,
        [Puiseux.constant(-1, trunc_p, t) for _ in range(depth + 2)],
    )
    lam = pair.lam
    res2 = residue(iota2 * mono * pbar_q_in_z).scalar_mul(lam)

    qk = qk_series(k, pair, trunc)
    rhs = res1 - res2
    lhs = qk + Puiseux.constant(
        bernoulli_poly(k)(1 - m + a1) / math.factorial(k), trunc, t
    )
    ok = (lhs - rhs).truncated(min(lhs.trunc, rhs.trunc, trunc)).is_zero()
    return CheckReport(
        "residue-pairing-identity", params, "exact" if ok else "mismatch", ok, flags
    )
