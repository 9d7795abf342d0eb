"""Frobenius-Fuchs solver for regular-singular ODEs in theta = q d/dq.

An ODE is theta^m S + sum_{i<m} r_i(q) theta^i S = 0 with Puiseux
coefficients r_i whose exponents lie in (1/T)Z_{>=0}.  Solutions are
q^lambda times polynomials in l = log q_(1/T) with Puiseux coefficients;
lambda runs over the indicial roots and logs appear when roots within one
congruence class mod (1/T)Z resonate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CycQ, lcm
from .errors import TruncationTooSmall
from .series import LogQSeries, Puiseux

# numeric indicial roots closer than this are clustered into one root
ROOT_CLUSTER_TOL = 1e-9


@dataclass
class RegularSingularODE:
    """theta^order S + sum r_i theta^i S, with 0 a regular singular point."""

    order: int
    T: int
    coeffs: list  # r_0 .. r_{order-1}, Puiseux

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if len(self.coeffs) != self.order:
            raise ValueError("need exactly `order` coefficient series")
        lifted = []
        for r in self.coeffs:
            if self.T % r.T != 0:
                raise ValueError("coefficient branching must divide T")
            r = r.with_branching(self.T)
            if r.normalized().lead < 0 and not r.is_zero():
                raise ValueError(
                    "regular-singular normalization requires exponents >= 0"
                )
            lifted.append(r)
        self.coeffs = lifted

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "T": self.T,
            "coeffs": [r.to_json() for r in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict) -> "RegularSingularODE":
        T = data["T"]
        coeffs = []
        for entry in data["coeffs"]:
            if "terms" in entry:
                coeffs.append(
                    Puiseux.from_terms(
                        [(Fraction(e), Fraction(c)) for e, c in entry["terms"]],
                        Fraction(entry["trunc"]),
                        T,
                    )
                )
            else:
                coeffs.append(Puiseux.from_json(entry))
        return RegularSingularODE(data["order"], T, coeffs)


@dataclass
class NumericSolution:
    """Solution with a non-rational leading exponent; float coefficients.

    coeffs[n][j] is the complex coefficient of q^(exponent + n/T) l^j.
    """

    exponent: complex
    T: int
    coeffs: list
    max_log_power: int


@dataclass
class FrobeniusBasis:
    exponent_classes: list  # groups of indicial roots congruent mod (1/T)Z
    solutions: list  # LogQSeries (exact) or NumericSolution entries
    max_log_power: int
    numeric: bool = False

    def to_json(self) -> list:
        if self.numeric:
            raise ValueError("numeric bases have no exact serialization")
        return [s.to_json() for s in self.solutions]


# -- indicial polynomial -------------------------------------------------------

def indicial_polynomial(ode: RegularSingularODE) -> list:
    """Coefficients p_0 .. p_m of x^m + sum r_i(0) x^i, as CycQ, p_m = 1."""
    return [r.coeff_at(0) for r in ode.coeffs] + [CycQ.one]


def indicial_roots(ode: RegularSingularODE) -> list:
    """The m indicial roots, largest real part first.

    Roots of a rational-coefficient polynomial found by the rational-root
    test come back as exact Fractions; all remaining roots are complex
    floats with small residual.
    """
    poly = indicial_polynomial(ode)
    roots: list = []
    rest = None
    if all(c.is_rational() for c in poly):
        rat = [c.rational_value() for c in poly]
        found, rest = _rational_roots(rat)
        roots.extend(found)
    if rest is None:
        rest = poly
    if len(rest) > 1:
        arr = [
            complex(c) if isinstance(c, Fraction) else c.embed() for c in rest
        ]
        for z in np.roots(arr[::-1]):
            roots.append(complex(z))
    roots.sort(key=lambda r: (-float(_re(r)), -float(_im(r))))
    return roots


def _re(x):
    return x.real if isinstance(x, complex) else x


def _im(x):
    return x.imag if isinstance(x, complex) else 0


def _rational_roots(coeffs: list) -> tuple[list, list]:
    """All rational roots (with multiplicity) and the deflated cofactor."""
    den = math.lcm(*(c.denominator for c in coeffs))
    cur = [int(c * den) for c in coeffs]
    roots = []
    while len(cur) > 1 and cur[0] == 0:
        roots.append(Fraction(0))
        cur = cur[1:]
    found = True
    while found and len(cur) > 1:
        found = False
        for p in _divisors(abs(cur[0])):
            for q in _divisors(abs(cur[-1])):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    while len(cur) > 1 and _poly_eval(cur, cand) == 0:
                        roots.append(cand)
                        cur = _deflate_int(cur, cand)
                        found = True
    return roots, [Fraction(c) for c in cur]


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate_int(coeffs: list[int], root: Fraction) -> list[int]:
    # exact division of an integer polynomial by (q x - p); by Gauss's
    # lemma the quotient is integral when p/q is a root in lowest terms
    p, q = root.numerator, root.denominator
    d = len(coeffs) - 1
    out = [0] * d
    out[d - 1], rem = divmod(coeffs[d], q)
    assert rem == 0
    for i in range(d - 1, 0, -1):
        out[i - 1], rem = divmod(coeffs[i] + p * out[i], q)
        assert rem == 0
    assert coeffs[0] + p * out[0] == 0
    return out


# -- polynomial-in-log helpers --------------------------------------------------

def _ptrim(p: list) -> list:
    while p and _pzero(p[-1]):
        p.pop()
    return p


def _pzero(c) -> bool:
    if isinstance(c, CycQ):
        return c.is_zero()
    return abs(c) < 1e-300


def _apply_D(p: list, x, invT):
    """(x + invT * d/dl) applied to a polynomial in l."""
    out = [x * c for c in p]
    for s in range(1, len(p)):
        out[s - 1] = out[s - 1] + p[s] * (invT * s)
    return _ptrim(out)


def _taylor_at(poly: list, x) -> list:
    """Coefficients of P(x + y) in y, from P's coefficients in x."""
    m = len(poly) - 1
    out = []
    for u in range(m + 1):
        acc = None
        for k in range(u, m + 1):
            term = poly[k] * (math.comb(k, u) * x ** (k - u))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def _falling(n: int, u: int) -> int:
    acc = 1
    for t in range(u):
        acc *= n - t
    return acc


def _solve_step(tay: list, g: list, invT, zero):
    """Solve P(x_n + invT d/dl) c = g for the polynomial c.

    tay are the Taylor coefficients of the indicial polynomial at x_n; the
    multiplicity r of x_n as a root forces c's bottom r coefficients to
    zero and raises the log degree by r.
    """
    if isinstance(zero, complex):
        # numeric resonance: a root hit only to rounding error must still
        # count as one, so zero-test the Taylor coefficients at 1e-9 scale
        tol = 1e-9 * max(1.0, max(abs(t) for t in tay))
        tiny = lambda c: abs(c) < tol
    else:
        tiny = _pzero
    r = 0
    while r < len(tay) and tiny(tay[r]):
        r += 1
    d = len(g) - 1
    b = [zero] * (d + 1 + r)
    if d >= 0:
        for s in range(d, -1, -1):
            acc = g[s]
            for u in range(r + 1, len(tay)):
                idx = s + u
                if idx <= d + r and not _pzero(tay[u]) and not _pzero(b[idx]):
                    acc = acc - b[idx] * (tay[u] * (invT**u * _falling(s + u, u)))
            denom = tay[r] * (invT**r * _falling(s + r, r))
            b[s + r] = acc / denom
    return _ptrim(b), r


# -- the solver -----------------------------------------------------------------

def _series_coeff_table(ode: RegularSingularODE, steps: int) -> list:
    """R[i][s] = coefficient of q^(s/T) in r_i, for 1 <= s < steps."""
    span = Fraction(steps, ode.T)
    table = []
    for r in ode.coeffs:
        if r.trunc < span:
            raise TruncationTooSmall(
                f"coefficient series truncated at {r.trunc} < requested {span}"
            )
        row = [r.coeff_at(Fraction(s, ode.T)) for s in range(steps)]
        table.append(row)
    return table


def _recurse(indicial, rtable, mu, seed_power: int, steps: int, T: int,
             exact: bool, extra_g=None):
    """Coefficient polynomials c_0 .. c_{steps-1} of one Frobenius solution.

    c_n solves P(D_n) c_n = -sum_{i,s>=1} r_{i,s} D_{n-s}^i c_{n-s} (+ the
    inhomogeneous term), with D_n = (mu + n/T) + (1/T) d/dl.
    """
    m = len(indicial) - 1
    invT = Fraction(1, T) if exact else 1.0 / T
    zero = CycQ.zero if exact else 0j
    if seed_power >= 0:
        seed = [zero] * seed_power + [CycQ.one if exact else 1 + 0j]
    else:
        seed = []
    if extra_g is not None:
        g0 = [c for c in extra_g(0)]
        tay0 = _taylor_at(indicial, mu)
        c0, r0 = _solve_step(tay0, _ptrim(g0), invT, zero)
        cs = [_ptrim([a + b for a, b in _zip_pad(seed, c0, zero)])]
        max_log = len(cs[0]) - 1 if cs[0] else 0
    else:
        cs = [seed]
        max_log = seed_power
    # derivative images D_k^i c_k, filled in as c_k is produced
    dk = [[None] * steps for _ in range(m)]
    def fill_dk(k):
        x = mu + (Fraction(k, T) if exact else k / T)
        cur = cs[k]
        for i in range(m):
            dk[i][k] = cur
            cur = _apply_D(cur, x, invT)
    fill_dk(0)
    for n in range(1, steps):
        x_n = mu + (Fraction(n, T) if exact else n / T)
        g: list = []
        for i in range(m):
            row = rtable[i]
            for s in range(1, n + 1):
                c = row[s]
                if _pzero(c):
                    continue
                p = dk[i][n - s]
                if not p:
                    continue
                while len(g) < len(p):
                    g.append(zero)
                for t, pc in enumerate(p):
                    g[t] = g[t] - c * pc
        if extra_g is not None:
            fn = extra_g(n)
            while len(g) < len(fn):
                g.append(zero)
            for t, pc in enumerate(fn):
                g[t] = g[t] + pc
        tay = _taylor_at(indicial, x_n)
        c_n, _ = _solve_step(tay, _ptrim(g), invT, zero)
        cs.append(c_n)
        max_log = max(max_log, len(c_n) - 1)
        fill_dk(n)
    return cs, max_log


def _zip_pad(a, b, zero):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else zero), (b[i] if i < len(b) else zero)


def _fold_solution(cs: list, mu: Fraction, T: int, span: Fraction,
                   max_log: int) -> LogQSeries:
    """Assemble q^mu sum_n c_n(l) q^(n/T) into a LogQSeries.

    The leading exponent is folded into the Puiseux parts; refining the
    branching rescales l = log q_(1/T) to log q_(1/t), so the log-power-j
    part picks up (t/T)^j.
    """
    t = lcm(T, mu.denominator)
    scale = Fraction(t, T)
    trunc = mu + span
    parts = []
    for j in range(max_log + 1):
        terms = []
        for n, c in enumerate(cs):
            e = mu + Fraction(n, T)
            if e < trunc and j < len(c) and not _pzero(c[j]):
                terms.append((e, c[j] * scale**j))
        parts.append(Puiseux.from_terms(terms, trunc, t))
    return LogQSeries(t, parts)


def _group_classes(roots: list, T: int):
    """Partition roots into congruence classes mod (1/T)Z, each sorted
    descending by real part, with exact roots compared exactly and numeric
    roots clustered at ROOT_CLUSTER_TOL."""
    classes: list[list] = []
    for r in roots:
        for cls in classes:
            rep = cls[0]
            if isinstance(r, Fraction) and isinstance(rep, Fraction):
                if ((r - rep) * T).denominator == 1:
                    cls.append(r)
                    break
            elif not isinstance(r, Fraction) and not isinstance(rep, Fraction):
                diff = (r - rep) * T
                if (abs(diff.imag) < ROOT_CLUSTER_TOL
                        and abs(diff.real - round(diff.real)) < ROOT_CLUSTER_TOL):
                    cls.append(r)
                    break
        else:
            classes.append([r])
    return classes


def _with_multiplicity(cls: list):
    """Distinct roots of one class, descending, with multiplicities;
    numeric roots within ROOT_CLUSTER_TOL count as equal."""
    out: list[list] = []
    for r in cls:
        for entry in out:
            other = entry[0]
            if isinstance(r, Fraction) and isinstance(other, Fraction):
                if r == other:
                    entry[1] += 1
                    break
            elif not isinstance(r, Fraction) and not isinstance(other, Fraction):
                if abs(r - other) < ROOT_CLUSTER_TOL:
                    entry[1] += 1
                    break
        else:
            out.append([r, 1])
    return [(r, mult) for r, mult in out]


def frobenius_solve(ode: RegularSingularODE, trunc) -> FrobeniusBasis:
    """Full solution basis to relative order q^trunc.

    Within each congruence class the roots are processed from largest real
    part downward; ascending recursions from lower roots pass through the
    higher ones, where the resonant solve escalates the log power.  Each
    solution is normalized to leading coefficient 1.
    """
    span = Fraction(trunc)
    T = ode.T
    if span < Fraction(1, T):
        raise TruncationTooSmall(f"truncation {span} is below one step 1/{T}")
    steps = math.ceil(span * T)
    roots = indicial_roots(ode)
    exact = all(isinstance(r, Fraction) for r in roots)
    classes = _group_classes(roots, T)
    indicial = indicial_polynomial(ode)
    if not exact:
        return _solve_numeric(ode, indicial, classes, steps)
    rtable = _series_coeff_table(ode, steps)
    solutions = []
    max_log = 0
    for cls in classes:
        for mu, mult in _with_multiplicity(cls):
            for j in range(mult):
                cs, ml = _recurse(indicial, rtable, mu, j, steps, T, True)
                solutions.append(_fold_solution(cs, mu, T, span, ml))
                max_log = max(max_log, ml)
    return FrobeniusBasis(classes, solutions, max_log)


def _solve_numeric(ode, indicial, classes, steps: int) -> FrobeniusBasis:
    ind = [c.embed() if isinstance(c, CycQ) else complex(c) for c in indicial]
    rtable = []
    span = Fraction(steps, ode.T)
    for r in ode.coeffs:
        if r.trunc < span:
            raise TruncationTooSmall(
                f"coefficient series truncated at {r.trunc} < requested {span}"
            )
        rtable.append([
            _embed(r.coeff_at(Fraction(s, ode.T))) for s in range(steps)
        ])
    solutions = []
    max_log = 0
    for cls in classes:
        for mu, mult in _with_multiplicity(cls):
            mu_c = complex(mu)
            for j in range(mult):
                cs, ml = _recurse(ind, rtable, mu_c, j, steps, ode.T, False)
                solutions.append(NumericSolution(mu_c, ode.T, cs, ml))
                max_log = max(max_log, ml)
    return FrobeniusBasis(classes, solutions, max_log, numeric=True)


def _embed(c):
    return c.embed() if isinstance(c, CycQ) else complex(c)


# -- residual and inhomogeneous solve -------------------------------------------

def rebranch_log(s: LogQSeries, t: int) -> LogQSeries:
    """Refine branching to t, rescaling l = log q_(1/T) to log q_(1/t)."""
    if t == s.T:
        return s
    if t % s.T != 0:
        raise ValueError("branching can only be refined to a multiple")
    scale = Fraction(t, s.T)
    return LogQSeries(
        t, [p.scalar_mul(scale**j) for j, p in enumerate(s.parts)]
    )


def apply_ode(ode: RegularSingularODE, s: LogQSeries) -> LogQSeries:
    """theta^m s + sum r_i theta^i s; zero to truncation order on solutions."""
    t = lcm(ode.T, s.T)
    cur = rebranch_log(s, t)
    images = [cur]
    for _ in range(ode.order):
        images.append(images[-1].theta_full())
    out = images[ode.order]
    for i, r in enumerate(ode.coeffs):
        term = images[i].mul_series(r.with_branching(t))
        out = out + term
    return out


def solve_inhomogeneous(ode: RegularSingularODE, f: LogQSeries, trunc) -> LogQSeries:
    """Particular solution s with apply_ode(ode, s) + f = 0.

    f's exponents must lie in lambda + (1/T)Z for the leading exponent
    lambda of f; resonances with indicial roots escalate the log power,
    with the resonant degrees of freedom fixed to zero.
    """
    span = Fraction(trunc)
    T = ode.T
    if span < Fraction(1, T):
        raise TruncationTooSmall(f"truncation {span} is below one step 1/{T}")
    steps = math.ceil(span * T)
    f = rebranch_log(f, lcm(f.T, T))
    lam = min(p.normalized().lead for p in f.parts if not p.is_zero())
    indicial = indicial_polynomial(ode)
    rtable = _series_coeff_table(ode, steps)
    for p in f.parts:
        if p.trunc < lam + span:
            raise TruncationTooSmall(
                f"inhomogeneous term truncated at {p.trunc} < {lam + span}"
            )

    # f's log parts are in l = log q_(1/f.T); the recursion works in
    # log q_(1/T), which is (f.T/T) times larger, so part j scales down
    def extra_g(n: int):
        e = lam + Fraction(n, T)
        return _ptrim([
            -(part.coeff_at(e)) * Fraction(T, f.T) ** j
            for j, part in enumerate(f.parts)
        ])

    cs, max_log = _recurse(
        indicial, rtable, lam, -1, steps, T, True, extra_g=extra_g
    )
    return _fold_solution(cs, lam, T, span, max_log)
