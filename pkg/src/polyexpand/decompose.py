"""Additive and multiplicative decomposition of a single bivariate polynomial.

Both decisions read the inner polynomial off the reduced ratio ``P_x / P_y``:

* ``P = f(u(x) + v(y))`` gives ``P_x / P_y = u'(x) / v'(y)``;
* ``P = f(u(x) v(y))`` gives ``P_x / P_y = u'(x) v(y) / (u(x) v'(y))``.

The candidate inner polynomial is then confirmed by :func:`reduce_in_powers`,
so every returned form is checked against ``P`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bipoly import BiPoly, compose, exact_div, gcd_bi, partials, reduce_in_powers, require_nontrivial, separate_product
from .errors import CertificateError
from .exact_arith import UniPoly, nth_root


@dataclass(frozen=True)
class AdditiveForm:
    """``P = f(u(x) + v(y))`` with ``u`` monic and ``u(0) = v(0) = 0``."""

    f: UniPoly
    u: UniPoly
    v: UniPoly

    def inner(self) -> BiPoly:
        return BiPoly.from_uni(self.u, "x") + BiPoly.from_uni(self.v, "y")

    def recompose(self) -> BiPoly:
        return compose(self.f, self.inner())


@dataclass(frozen=True)
class MultiplicativeForm:
    """``P = f(u(x) v(y))`` with ``u, v`` monic and not both n-th powers."""

    f: UniPoly
    u: UniPoly
    v: UniPoly

    def inner(self) -> BiPoly:
        return BiPoly.from_uni(self.u, "x") * BiPoly.from_uni(self.v, "y")

    def recompose(self) -> BiPoly:
        return compose(self.f, self.inner())


@dataclass(frozen=True)
class PrimitiveBase:
    base: UniPoly
    exponent: int


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def primitive_base(p: UniPoly) -> PrimitiveBase:
    """Write monic ``p`` as ``base**exponent`` with the largest possible exponent."""
    if not p.is_monic() or p.is_constant:
        raise ValueError("primitive_base requires a monic nonconstant polynomial")
    for k in reversed(_divisors(p.degree)):
        r = nth_root(p, k)
        if r is not None:
            return PrimitiveBase(r, k)
    raise AssertionError("unreachable: k = 1 always succeeds")


def _reduced_ratio(P: BiPoly) -> tuple[BiPoly, BiPoly]:
    px, py = partials(P)
    g = gcd_bi(px, py)
    n, d = exact_div(px, g), exact_div(py, g)
    assert n is not None and d is not None
    return n, d


def _check(form, P: BiPoly):
    if form.recompose() != P:
        raise CertificateError(f"{form} does not recompose to {P}")
    return form


def additive_decompose(P: BiPoly) -> Optional[AdditiveForm]:
    require_nontrivial(P)
    n, d = _reduced_ratio(P)
    if n.deg_y > 0 or d.deg_x > 0:
        return None
    du = n.rows()[0]  # polynomial in x
    dv = d.coeff_x(0)  # polynomial in y
    u0, v0 = du.integral(), dv.integral()
    s = 1 / u0.lc
    u, v = u0 * s, v0 * s
    f = reduce_in_powers(P, BiPoly.from_uni(u, "x") + BiPoly.from_uni(v, "y"))
    if f is None:
        return None
    return _check(AdditiveForm(f, u, v), P)


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of ``rows @ z = rhs`` (free unknowns set to 0), or None."""
    m = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [t * inv for t in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                fac = aug[i][col]
                aug[i] = [a - fac * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in aug[r:]):
        return None
    z = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        z[col] = aug[i][-1]
    return z


def _solve_log_derivative(num: UniPoly, den: UniPoly, t: Fraction, deg: int) -> Optional[UniPoly]:
    """Monic ``w`` of degree ``deg`` with ``w' * den == t * num * w``."""
    cols = []
    for j in range(deg + 1):
        xj = UniPoly.monomial(j)
        cols.append(xj.derivative() * den - num * xj * t)
    height = max((c.degree for c in cols if not c.is_zero), default=-1) + 1
    matrix = [[cols[j].coeff(k) for j in range(deg)] for k in range(height)]
    rhs = [-cols[deg].coeff(k) for k in range(height)]
    sol = solve_linear(matrix, rhs) if deg else []
    if sol is None:
        return None
    w = UniPoly(sol + [1])
    if w.derivative() * den != num * w * t:
        return None
    return w


def multiplicative_decompose(P: BiPoly) -> Optional[MultiplicativeForm]:
    require_nontrivial(P)
    n, d = _reduced_ratio(P)
    sn, sd = separate_product(n), separate_product(d)
    if sn is None or sd is None:
        return None
    a, b = sn
    c, dd = sd
    if a.degree != c.degree - 1 or dd.degree != b.degree - 1:
        return None
    dx, dy = P.deg_x, P.deg_y
    for e in reversed(_divisors(math.gcd(dx, dy))):
        m, k = dx // e, dy // e
        t = m * c.lc / a.lc
        if t != k * b.lc / dd.lc:
            continue
        u = _solve_log_derivative(a, c, t, m)
        v = _solve_log_derivative(dd, b, t, k) if u is not None else None
        if v is None:
            continue
        f = reduce_in_powers(P, BiPoly.from_uni(u, "x") * BiPoly.from_uni(v, "y"))
        if f is None:
            continue
        return _check(_primitivize(f, u, v), P)
    return None


def _primitivize(f: UniPoly, u: UniPoly, v: UniPoly) -> MultiplicativeForm:
    pu, pv = primitive_base(u), primitive_base(v)
    n0 = math.gcd(pu.exponent, pv.exponent)
    if n0 > 1:
        u = pu.base ** (pu.exponent // n0)
        v = pv.base ** (pv.exponent // n0)
        f = f(UniPoly.monomial(n0))
    return MultiplicativeForm(f, u, v)
