"""Truncated Puiseux series, log-q series, and two-variable series.

A Puiseux series is sum_n a_n q^(lead + n/T) with exact cyclotomic
coefficients.  Truncation is explicit: exponents >= trunc are unknown and
every operation propagates the most pessimistic truncation of its inputs.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .cyclotomic import CycQ, Rational, lcm
from .errors import NonInvertibleLeadingTerm, NotConvergent, WindowTooSmall

# convolutions switch to divide-and-conquer above this many terms
KARATSUBA_THRESHOLD = 2048


def _coerce_coeff(v):
    if isinstance(v, (int, Fraction)):
        return CycQ.from_rational(v)
    return v


def _is_zero_coeff(c) -> bool:
    if isinstance(c, CycQ):
        return c.is_zero()
    return c == 0


def _nterms(lead: Fraction, trunc: Fraction, t: int) -> int:
    span = (trunc - lead) * t
    return max(0, math.ceil(span))


class EvalResult:
    """Value of a truncated series at a point plus a tail estimate."""

    __slots__ = ("value", "tail")

    def __init__(self, value, tail):
        self.value = value
        self.tail = tail

    def __iter__(self):
        return iter((self.value, self.tail))

    def __repr__(self):
        return f"EvalResult(value={self.value!r}, tail={self.tail!r})"


class Puiseux:
    """Truncated series sum a_n q^(lead + n/T), exponents below trunc."""

    __slots__ = ("T", "lead", "coeffs", "trunc")

    def __init__(self, T: int, lead, coeffs, trunc):
        if T < 1:
            raise ValueError("branching must be a positive integer")
        lead = Fraction(lead)
        trunc = Fraction(trunc)
        coeffs = [_coerce_coeff(c) for c in coeffs]
        n = _nterms(lead, trunc, T)
        if len(coeffs) < n:
            coeffs = coeffs + [CycQ.zero] * (n - len(coeffs))
        elif len(coeffs) > n:
            raise ValueError("coefficients extend past the truncation order")
        self.T = T
        self.lead = lead
        self.coeffs = coeffs
        self.trunc = trunc

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(trunc, T: int = 1) -> "Puiseux":
        return Puiseux(T, 0, [], trunc)

    @staticmethod
    def constant(value, trunc, T: int = 1) -> "Puiseux":
        s = Puiseux(T, 0, [], trunc)
        if s.coeffs:
            s.coeffs[0] = _coerce_coeff(value)
        return s

    @staticmethod
    def monomial(coeff, exponent, trunc, T: int = 1) -> "Puiseux":
        exponent = Fraction(exponent)
        if (exponent * T).denominator != 1:
            raise ValueError("exponent not representable with this branching")
        s = Puiseux(T, exponent, [], trunc)
        if s.coeffs:
            s.coeffs[0] = _coerce_coeff(coeff)
        return s

    @staticmethod
    def from_terms(terms, trunc, T: int = 1) -> "Puiseux":
        """terms: iterable of (exponent, coefficient)."""
        terms = [(Fraction(e), _coerce_coeff(c)) for e, c in terms]
        if not terms:
            return Puiseux.zero(trunc, T)
        lead = min(e for e, _ in terms)
        s = Puiseux(T, lead, [], trunc)
        for e, c in terms:
            idx = (e - lead) * T
            if idx.denominator != 1:
                raise ValueError("exponent not on the 1/T grid")
            idx = int(idx)
            if 0 <= idx < len(s.coeffs):
                s.coeffs[idx] = s.coeffs[idx] + c
            elif e >= trunc:
                raise ValueError("term beyond truncation order")
        return s

    # -- structure -----------------------------------------------------------

    def with_branching(self, t: int) -> "Puiseux":
        if t == self.T:
            return self
        if t % self.T != 0:
            raise ValueError("branching can only be refined to a multiple")
        step = t // self.T
        out = Puiseux(t, self.lead, [], self.trunc)
        for i, c in enumerate(self.coeffs):
            out.coeffs[i * step] = c
        return out

    def truncated(self, new_trunc) -> "Puiseux":
        new_trunc = Fraction(new_trunc)
        if new_trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        n = _nterms(self.lead, new_trunc, self.T)
        return Puiseux(self.T, self.lead, self.coeffs[:n], new_trunc)

    def normalized(self) -> "Puiseux":
        """Strip leading zero coefficients, advancing the leading exponent."""
        i = 0
        while i < len(self.coeffs) and _is_zero_coeff(self.coeffs[i]):
            i += 1
        if i == 0:
            return self
        return Puiseux(
            self.T, self.lead + Fraction(i, self.T), self.coeffs[i:], self.trunc
        )

    def shifted(self, r) -> "Puiseux":
        """Multiply by q^r."""
        r = Fraction(r)
        return Puiseux(self.T, self.lead + r, list(self.coeffs), self.trunc + r)

    def substituted(self, s: int) -> "Puiseux":
        """q -> q^s for a positive integer s."""
        if s < 1:
            raise ValueError("substitution power must be positive")
        out = Puiseux(self.T, self.lead * s, [], self.trunc * s)
        for i, c in enumerate(self.coeffs):
            out.coeffs[i * s] = c
        return out

    def coeff_at(self, exponent):
        """Exact coefficient of q^exponent; raises if past truncation."""
        exponent = Fraction(exponent)
        if exponent >= self.trunc:
            raise KeyError(f"exponent {exponent} at or past truncation {self.trunc}")
        idx = (exponent - self.lead) * self.T
        if exponent < self.lead or idx.denominator != 1:
            return CycQ.zero
        return self.coeffs[int(idx)]

    def is_zero(self) -> bool:
        return all(_is_zero_coeff(c) for c in self.coeffs)

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                yield self.lead + Fraction(i, self.T), c

    # -- arithmetic ----------------------------------------------------------

    def _aligned(self, other: "Puiseux"):
        t = lcm(self.T, other.T)
        return self.with_branching(t), other.with_branching(t)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            other = Puiseux.constant(other, self.trunc, self.T)
        if not isinstance(other, Puiseux):
            return NotImplemented
        a, b = self._aligned(other)
        lead = min(a.lead, b.lead)
        trunc = min(a.trunc, b.trunc)
        out = Puiseux(a.T, lead, [], trunc)
        buf = out.coeffs
        n = len(buf)
        off = int((a.lead - lead) * a.T)
        for i, c in enumerate(a.coeffs):
            if off + i < n:
                buf[off + i] = c
        off = int((b.lead - lead) * a.T)
        zero = CycQ.zero
        for i, c in enumerate(b.coeffs):
            j = off + i
            if j < n and not _is_zero_coeff(c):
                cur = buf[j]
                buf[j] = c if cur is zero else cur + c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Puiseux(self.T, self.lead, [], self.trunc)
        out.coeffs = [-c for c in self.coeffs]
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            other = Puiseux.constant(other, self.trunc, self.T)
        if not isinstance(other, Puiseux):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c) -> "Puiseux":
        c = _coerce_coeff(c)
        out = Puiseux(self.T, self.lead, [], self.trunc)
        out.coeffs = [c * x for x in self.coeffs]
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            return self.scalar_mul(other)
        if not isinstance(other, Puiseux):
            return NotImplemented
        a, b = self._aligned(other)
        lead = a.lead + b.lead
        trunc = min(a.trunc + b.lead, b.trunc + a.lead)
        out = Puiseux(a.T, lead, [], trunc)
        n = len(out.coeffs)
        conv = _convolve(a.coeffs, b.coeffs, n)
        out.coeffs = conv[:n] + [CycQ.zero] * max(0, n - len(conv))
        return out

    __rmul__ = __mul__

    def inverse(self) -> "Puiseux":
        s = self.normalized()
        if not s.coeffs or _is_zero_coeff(s.coeffs[0]):
            raise NonInvertibleLeadingTerm(
                "series has no invertible leading coefficient"
            )
        n = len(s.coeffs)
        a0 = s.coeffs[0]
        if isinstance(a0, CycQ):
            inv0 = a0.inverse()
        else:
            inv0 = 1 / a0
        b = [inv0]
        for k in range(1, n):
            acc = None
            for i in range(1, k + 1):
                term = s.coeffs[i] * b[k - i]
                acc = term if acc is None else acc + term
            b.append(-(inv0 * acc))
        lead = -s.lead
        trunc = s.trunc - 2 * s.lead
        return Puiseux(s.T, lead, b, trunc)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            # the relative truncation window of the base
            return Puiseux.constant(1, self.trunc - self.normalized().lead, self.T)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            other = Puiseux.constant(other, self.trunc, self.T)
        if not isinstance(other, Puiseux):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        parts = []
        for e, c in list(self.terms())[:6]:
            parts.append(f"({c!r})*q^({e})")
        body = " + ".join(parts) if parts else "0"
        return f"Puiseux[T={self.T}, O(q^{self.trunc})]({body})"

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "leading": str(self.lead),
            "trunc": str(self.trunc),
            "coeffs": [
                c.to_json() if isinstance(c, CycQ) else repr(c) for c in self.coeffs
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Puiseux":
        coeffs = [CycQ.from_json(c) for c in data["coeffs"]]
        return Puiseux(
            data["T"], Fraction(data["leading"]), coeffs, Fraction(data["trunc"])
        )


def _convolve(a, b, limit=None):
    """Coefficient convolution, divide-and-conquer above the threshold."""
    n = len(a) + len(b) - 1 if a and b else 0
    if limit is not None:
        n = min(n, limit)
    if n <= 0:
        return []
    if min(len(a), len(b)) < KARATSUBA_THRESHOLD:
        out = [None] * n
        for i, x in enumerate(a):
            if _is_zero_coeff(x) or i >= n:
                continue
            for j, y in enumerate(b):
                if i + j >= n:
                    break
                if _is_zero_coeff(y):
                    continue
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return [CycQ.zero if c is None else c for c in out]
    return _karatsuba(list(a), list(b))[:n]


def _karatsuba(a, b):
    if min(len(a), len(b)) < KARATSUBA_THRESHOLD:
        return _convolve(a, b)
    m = min(len(a), len(b)) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _karatsuba(a0, b0)
    z2 = _karatsuba(a1, b1)
    s_a = _list_add(a0, a1)
    s_b = _list_add(b0, b1)
    z1 = _list_sub(_list_sub(_karatsuba(s_a, s_b), z0), z2)
    out = [CycQ.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = out[i] + c
    for i, c in enumerate(z1):
        out[i + m] = out[i + m] + c
    for i, c in enumerate(z2):
        out[i + 2 * m] = out[i + 2 * m] + c
    return out


def _list_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


def _list_sub(a, b):
    out = list(a) + [CycQ.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return out


# -- the theta derivative -----------------------------------------------------

def theta(s: Puiseux, scale: str = "full") -> Puiseux:
    """q d/dq (scale="full") or q_(1/T) d/dq_(1/T) (scale="one_over_T")."""
    if scale not in ("full", "one_over_T"):
        raise ValueError("scale must be 'full' or 'one_over_T'")
    factor = s.T if scale == "one_over_T" else 1
    out = Puiseux(s.T, s.lead, [], s.trunc)
    for i, c in enumerate(s.coeffs):
        r = (s.lead + Fraction(i, s.T)) * factor
        out.coeffs[i] = c * r
    return out


# -- log-q series --------------------------------------------------------------

class LogQSeries:
    """Polynomial in l = log q_(1/T) with Puiseux coefficients."""

    __slots__ = ("T", "parts")

    def __init__(self, T: int, parts):
        self.T = T
        self.parts = [p.with_branching(T) if p.T != T else p for p in parts]
        if not self.parts:
            raise ValueError("need at least one part (use a zero Puiseux)")

    @property
    def max_log_power(self) -> int:
        return len(self.parts) - 1

    def trimmed(self) -> "LogQSeries":
        parts = list(self.parts)
        while len(parts) > 1 and parts[-1].is_zero():
            parts.pop()
        return LogQSeries(self.T, parts)

    def __add__(self, other):
        if isinstance(other, Puiseux):
            other = LogQSeries(self.T, [other])
        if not isinstance(other, LogQSeries):
            return NotImplemented
        t = lcm(self.T, other.T)
        n = max(len(self.parts), len(other.parts))
        trunc = min(
            min(p.trunc for p in self.parts), min(p.trunc for p in other.parts)
        )
        parts = []
        for i in range(n):
            p = Puiseux.zero(trunc, t)
            if i < len(self.parts):
                p = p + self.parts[i]
            if i < len(other.parts):
                p = p + other.parts[i]
            parts.append(p)
        return LogQSeries(t, parts)

    def __neg__(self):
        return LogQSeries(self.T, [-p for p in self.parts])

    def __sub__(self, other):
        if isinstance(other, Puiseux):
            other = LogQSeries(self.T, [other])
        return self + (-other)

    def mul_series(self, s: Puiseux) -> "LogQSeries":
        return LogQSeries(self.T, [p * s for p in self.parts])

    def scalar_mul(self, c) -> "LogQSeries":
        return LogQSeries(self.T, [p.scalar_mul(c) for p in self.parts])

    def theta_full(self) -> "LogQSeries":
        """q d/dq, acting on log factors via theta(l^i f) = (i/T) l^(i-1) f + l^i theta f."""
        parts = []
        for i, p in enumerate(self.parts):
            term = theta(p, "full")
            if i + 1 < len(self.parts):
                term = term + self.parts[i + 1].scalar_mul(Fraction(i + 1, self.T))
            parts.append(term)
        return LogQSeries(self.T, parts)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def to_json(self) -> list:
        return [
            dict(p.to_json(), log_power=i) for i, p in enumerate(self.parts)
        ]

    @staticmethod
    def from_json(data: list) -> "LogQSeries":
        parts = sorted(data, key=lambda d: d["log_power"])
        series = [Puiseux.from_json(d) for d in parts]
        return LogQSeries(series[0].T, series)

    def __repr__(self):
        return f"LogQSeries(T={self.T}, parts={self.parts!r})"


# -- evaluation ----------------------------------------------------------------

def eval_at_tau(s, tau: complex, precision: int = 53) -> EvalResult:
    """Numeric value on the upper half-plane plus a geometric tail bound."""
    if tau.imag <= 0:
        raise NotConvergent("evaluation requires Im(tau) > 0")
    if isinstance(s, LogQSeries):
        logfac = 2j * cmath.pi * tau / s.T
        value = 0j
        tail = 0.0
        for i, p in enumerate(s.parts):
            r = eval_at_tau(p, tau, precision)
            value += r.value * logfac**i
            tail += r.tail * abs(logfac) ** i
        return EvalResult(value, tail)
    q1t = cmath.exp(2j * cmath.pi * tau / s.T)
    value = 0j
    maxabs = 0.0
    power = cmath.exp(2j * cmath.pi * tau * s.lead)
    for c in s.coeffs:
        if not _is_zero_coeff(c):
            cv = c.embed(precision) if isinstance(c, CycQ) else complex(c)
            value += complex(cv) * power
            maxabs = max(maxabs, abs(cv))
        power *= q1t
    absq = math.exp(-2 * math.pi * tau.imag)
    tail = absq ** float(s.trunc) / (1 - absq ** (1 / s.T)) * maxabs
    return EvalResult(value, tail)


# -- infinite products -----------------------------------------------------------

def product_expand(factors, trunc) -> Puiseux:
    """prod over (a, e) of prod_(n>=1) (1 - q^(a n))^e, truncated.

    Coefficients are exact integers.
    """
    trunc = Fraction(trunc)
    n = max(0, math.ceil(trunc))
    coeffs = [0] * n
    if n:
        coeffs[0] = 1
    for a, e in factors:
        if a < 1:
            raise ValueError("product scales must be positive integers")
        base = _euler_product_int(a, n)
        coeffs = _int_series_pow(coeffs, base, e, n)
    return Puiseux(1, 0, [Fraction(c) for c in coeffs], trunc)


def _euler_product_int(a: int, n: int) -> list:
    c = [0] * n
    if n:
        c[0] = 1
    for k in range(1, n // a + 1):
        # multiply by (1 - q^(a k))
        step = a * k
        for i in range(n - 1, step - 1, -1):
            c[i] -= c[i - step]
    return c


def _int_series_pow(acc: list, base: list, e: int, n: int) -> list:
    if e < 0:
        base = _int_series_inverse(base, n)
        e = -e
    result = acc
    while e:
        if e & 1:
            result = _int_series_mul(result, base, n)
        base = _int_series_mul(base, base, n) if e > 1 else base
        e >>= 1
    return result


def _int_series_mul(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _int_series_inverse(a: list, n: int) -> list:
    if not a or a[0] not in (1, -1):
        raise NonInvertibleLeadingTerm("integer series inversion needs unit lead")
    inv0 = a[0]
    b = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            s += a[i] * b[k - i]
        b[k] = -inv0 * s
    return b


# -- two-variable series ----------------------------------------------------------

class BiSeries:
    """Series in an outer variable w with Puiseux-in-q coefficients.

    w-exponents run over wlead + Z on a finite window of integer offsets;
    offsets outside the window are unknown (truncated).
    """

    __slots__ = ("wlead", "min_off", "coeffs")

    def __init__(self, wlead, min_off: int, coeffs):
        self.wlead = Fraction(wlead)
        self.min_off = min_off
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("empty window")

    @property
    def max_off(self) -> int:
        return self.min_off + len(self.coeffs) - 1

    def coeff_at_w(self, exponent) -> Puiseux:
        exponent = Fraction(exponent)
        off = exponent - self.wlead
        if off.denominator != 1:
            p0 = self.coeffs[0]
            return Puiseux.zero(p0.trunc, p0.T)
        off = int(off)
        if off < self.min_off or off > self.max_off:
            raise WindowTooSmall(
                f"w-exponent {exponent} outside window "
                f"[{self.wlead + self.min_off}, {self.wlead + self.max_off}]"
            )
        return self.coeffs[off - self.min_off]

    def __mul__(self, other):
        if isinstance(other, Puiseux):
            return BiSeries(self.wlead, self.min_off, [c * other for c in self.coeffs])
        if not isinstance(other, BiSeries):
            return NotImplemented
        wlead = self.wlead + other.wlead
        min_off = self.min_off + other.min_off
        n = len(self.coeffs) + len(other.coeffs) - 1
        slots = [None] * n
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                t = x * y
                slots[i + j] = t if slots[i + j] is None else slots[i + j] + t
        return BiSeries(wlead, min_off, slots)

    def scale_coeffs_by_w_power(self) -> "BiSeries":
        """Multiply the coefficient at w-exponent x by q^x (w -> w*q)."""
        out = []
        for i, c in enumerate(self.coeffs):
            x = self.wlead + self.min_off + i
            out.append(c.shifted(x))
        return BiSeries(self.wlead, self.min_off, out)

    def __repr__(self):
        return (
            f"BiSeries(w^{self.wlead}+Z, offsets {self.min_off}..{self.max_off})"
        )


def residue(s, variable: str = "w"):
    """Coefficient of the (-1)-power of the outer variable.

    Accepts a BiSeries (returns a Puiseux) or a plain Puiseux regarded as a
    Laurent series in the named variable (returns its coefficient, a CycQ).
    """
    if isinstance(s, BiSeries):
        return s.coeff_at_w(-1)
    if isinstance(s, Puiseux):
        if Fraction(-1) >= s.trunc:
            raise WindowTooSmall("exponent -1 is past the truncation order")
        return s.coeff_at(Fraction(-1))
    raise TypeError(f"cannot take a residue of {type(s).__name__}")


def iota_inverse_difference(window_size: int, trunc, T: int = 1) -> BiSeries:
    """Expansion of 1/(z - z1) in nonnegative powers of z1, as a series in z.

    The z-coefficient of z^(-1-i) is z1^i; the z1 powers are returned as
    q-free constants (callers track the suppressed variable's exponent
    bookkeeping, which forces it to zero in residue identities).
    """
    one = Puiseux.constant(1, trunc, T)
    coeffs = [one] * window_size
    return BiSeries(0, -window_size, coeffs)
