"""Bivariate polynomials over Q.

A :class:`BiPoly` is stored as a common denominator over an integer
coefficient matrix in the recursive layout ``rows[j][i]`` = coefficient of
``x**i * y**j``.  Heavy operations (products, GCD, exact division) run on the
integer matrix.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Optional

from . import _intpoly as zp
from .errors import TrivialDependence
from .exact_arith import NEG_INF, UniPoly, _frac, format_terms, gcd_uni


def _normalize(rows: list[list[int]], den: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    rows = zp.bi_trim([zp.trim(list(r)) for r in rows])
    if not rows:
        return (), 1
    if den < 0:
        rows = [[-c for c in r] for r in rows]
        den = -den
    g = den
    for r in rows:
        for c in r:
            if g == 1:
                break
            g = math.gcd(g, c)
    if g > 1:
        rows = [[c // g for c in r] for r in rows]
        den //= g
    return tuple(tuple(r) for r in rows), den


class BiPoly:
    """Dense polynomial in x and y with rational coefficients."""

    __slots__ = ("_rows", "_den", "_hash")

    def __init__(self, rows=(), den: int = 1):
        self._rows, self._den = _normalize([list(r) for r in rows], den)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], object]) -> "BiPoly":
        fr = {k: _frac(v) for k, v in terms.items() if v != 0}
        if not fr:
            return cls()
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in fr.values()), 1)
        dy = max(j for _, j in fr)
        rows = [[] for _ in range(dy + 1)]
        for (i, j), c in fr.items():
            r = rows[j]
            if len(r) <= i:
                r.extend([0] * (i + 1 - len(r)))
            r[i] += c.numerator * (den // c.denominator)
        return cls(rows, den)

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls.from_terms({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls([[0, 1]])

    @classmethod
    def y(cls) -> "BiPoly":
        return cls([[], [1]])

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "x") -> "BiPoly":
        if var == "x":
            return cls.from_terms({(i, 0): c for i, c in enumerate(p.coeffs)})
        if var == "y":
            return cls.from_terms({(0, j): c for j, c in enumerate(p.coeffs)})
        raise ValueError(f"unknown variable {var!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[UniPoly]) -> "BiPoly":
        """Build from the y-coefficients given as polynomials in x."""
        return cls.from_terms({(i, j): c for j, r in enumerate(rows) for i, c in enumerate(r.coeffs)})

    # -- inspection ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._rows

    @property
    def deg_y(self):
        return len(self._rows) - 1 if self._rows else NEG_INF

    @property
    def deg_x(self):
        return max(len(r) for r in self._rows) - 1 if self._rows else NEG_INF

    @property
    def total_degree(self):
        if not self._rows:
            return NEG_INF
        return max(i + j for j, r in enumerate(self._rows) for i, c in enumerate(r) if c)

    @property
    def is_constant(self) -> bool:
        return len(self._rows) <= 1 and all(len(r) <= 1 for r in self._rows)

    def depends_on_both(self) -> bool:
        return not self.is_zero and self.deg_x >= 1 and self.deg_y >= 1

    def coeff(self, i: int, j: int) -> Fraction:
        if 0 <= j < len(self._rows) and 0 <= i < len(self._rows[j]):
            return Fraction(self._rows[j][i], self._den)
        return Fraction(0)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {
            (i, j): Fraction(c, self._den)
            for j, r in enumerate(self._rows)
            for i, c in enumerate(r)
            if c
        }

    def rows(self) -> tuple[UniPoly, ...]:
        """Coefficients of ``y**j`` as polynomials in x."""
        return tuple(UniPoly(Fraction(c, self._den) for c in r) for r in self._rows)

    def coeff_x(self, i: int) -> UniPoly:
        """Coefficient of ``x**i`` as a polynomial in y."""
        return UniPoly(Fraction(r[i], self._den) if i < len(r) else 0 for r in self._rows)

    def lead_lex(self) -> Fraction:
        """Leading coefficient for the lexicographic order (y first, then x)."""
        if not self._rows:
            return Fraction(0)
        return Fraction(self._rows[-1][-1], self._den)

    def int_rows(self) -> tuple[list[list[int]], int]:
        return [list(r) for r in self._rows], self._den

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            return BiPoly.from_uni(other, "x")
        return BiPoly.constant(other)

    def __add__(self, other):
        o = self._coerce(other)
        if o.is_zero:
            return self
        if self.is_zero:
            return o
        L = self._den * o._den // math.gcd(self._den, o._den)
        a, b = L // self._den, L // o._den
        n = max(len(self._rows), len(o._rows))
        rows = []
        for j in range(n):
            r1 = [c * a for c in self._rows[j]] if j < len(self._rows) else []
            r2 = [c * b for c in o._rows[j]] if j < len(o._rows) else []
            rows.append(zp.add(r1, r2))
        return BiPoly(rows, L)

    __radd__ = __add__

    def __neg__(self):
        out = BiPoly.__new__(BiPoly)
        out._rows = tuple(tuple(-c for c in r) for r in self._rows)
        out._den = self._den
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, BiPoly):
            c = _frac(other)
            return BiPoly([[t * c.numerator for t in r] for r in self._rows], self._den * c.denominator)
        o = self._coerce(other)
        rows = zp.bi_mul([list(r) for r in self._rows], [list(r) for r in o._rows])
        return BiPoly(rows, self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = BiPoly.constant(1), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._den == other._den and self._rows == other._rows
        if isinstance(other, (int, Rational, UniPoly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("BiPoly", self._rows, self._den))
        return self._hash

    # -- evaluation and substitution ---------------------------------------
    def __call__(self, x0, y0):
        return eval_bi(self, x0, y0)

    def section_y(self, y0) -> UniPoly:
        """``P(x, y0)`` as a polynomial in x."""
        return section(self, y=y0)

    def section_x(self, x0) -> UniPoly:
        """``P(x0, y)`` as a polynomial in y."""
        return section(self, x=x0)

    def swap(self) -> "BiPoly":
        """``P(y, x)``."""
        return BiPoly.from_terms({(j, i): c for (i, j), c in self.terms().items()})

    def substitute(self, x_poly: UniPoly, y_poly: UniPoly) -> "BiPoly":
        """``P(x_poly(x), y_poly(y))``."""
        xb = BiPoly.from_uni(x_poly, "x")
        yb = BiPoly.from_uni(y_poly, "y")
        acc = BiPoly()
        ypow = BiPoly.constant(1)
        for r in self.rows():
            if not r.is_zero:
                acc = acc + r(xb) * ypow
            ypow = ypow * yb
        return acc

    # -- display ------------------------------------------------------------
    def to_str(self, names: tuple[str, str] = ("x", "y")) -> str:
        ordered = sorted(self.terms().items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        return format_terms((c, {names[0]: i, names[1]: j}) for (i, j), c in ordered)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()!r})"


def require_nontrivial(*polys: BiPoly) -> None:
    for p in polys:
        if not p.depends_on_both():
            raise TrivialDependence(f"{p} does not depend on both x and y")


def compose(f: UniPoly, w: BiPoly) -> BiPoly:
    """``f(w(x, y))``."""
    if f.is_zero:
        return BiPoly()
    acc = BiPoly.constant(f.coeffs[-1])
    for c in reversed(f.coeffs[:-1]):
        acc = acc * w + c
    return acc


def partials(P: BiPoly) -> tuple[BiPoly, BiPoly]:
    rows, den = P.int_rows()
    px = [[i * c for i, c in enumerate(r)][1:] for r in rows]
    py = [[j * c for c in r] for j, r in enumerate(rows)][1:]
    return BiPoly(px, den), BiPoly(py, den)


def eval_bi(P: BiPoly, x0, y0) -> Fraction:
    x0, y0 = _frac(x0), _frac(y0)
    acc = Fraction(0)
    for r in reversed(P.rows()):
        acc = acc * y0 + r(x0)
    return acc


def section(P: BiPoly, x=None, y=None) -> UniPoly:
    """Fix exactly one variable and return the univariate remainder."""
    if (x is None) == (y is None):
        raise ValueError("fix exactly one of x, y")
    if y is not None:
        y0 = _frac(y)
        acc = UniPoly()
        for r in reversed(P.rows()):
            acc = acc * y0 + r
        return acc
    x0 = _frac(x)
    return UniPoly(r(x0) for r in P.rows())


def gcd_bi(F: BiPoly, G: BiPoly) -> BiPoly:
    """GCD in Q[x, y], scaled so that its lex-leading coefficient is 1."""
    if F.is_zero and G.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    g = zp.bi_gcd(F.int_rows()[0], G.int_rows()[0])
    return BiPoly(g, g[-1][-1])


def exact_div(F: BiPoly, G: BiPoly) -> Optional[BiPoly]:
    """``F / G`` when ``G`` divides ``F`` in Q[x, y], else None."""
    if G.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if F.is_zero:
        return BiPoly()
    fn, fd = F.int_rows()
    gn, gd = G.int_rows()
    cg = 0
    for r in gn:
        cg = math.gcd(cg, zp.content(r))
    gp = [[c // cg for c in r] for r in gn]
    q = zp.bi_exact_div(fn, gp)
    if q is None:
        return None
    return BiPoly([[c * gd for c in r] for r in q], fd * cg)


def separate_product(N: BiPoly) -> Optional[tuple[UniPoly, UniPoly]]:
    """Split ``N = a(x) * b(y)`` with ``a`` monic, or return None."""
    if N.is_zero:
        raise ValueError("cannot separate the zero polynomial")
    rows = N.rows()
    a = None
    for r in rows:
        if not r.is_zero:
            a = r.monic() if a is None else gcd_uni(a, r)
    bcoeffs = []
    for r in rows:
        if r.is_zero:
            bcoeffs.append(0)
            continue
        if r.degree != a.degree:
            return None
        c = r.lc
        if r != a * c:
            return None
        bcoeffs.append(c)
    return a, UniPoly(bcoeffs)


def reduce_in_powers(P: BiPoly, w: BiPoly) -> Optional[UniPoly]:
    """Find ``f`` with ``f(w) == P`` by greedy elimination from the top x-power."""
    if w.is_constant:
        raise ValueError("inner polynomial must be nonconstant")
    if P.is_zero:
        return UniPoly()
    if w.deg_x < 1:
        return reduce_in_powers(P.swap(), w.swap())
    dx = w.deg_x
    if P.deg_x % dx:
        return None
    K = P.deg_x // dx
    lead = w.coeff_x(dx)
    pows = [BiPoly.constant(1)]
    for _ in range(K):
        pows.append(pows[-1] * w)
    coeffs = [Fraction(0)] * (K + 1)
    R = P
    lead_pow = UniPoly([1])
    lead_pows = [lead_pow]
    for _ in range(K):
        lead_pow = lead_pow * lead
        lead_pows.append(lead_pow)
    for k in range(K, 0, -1):
        if R.is_zero:
            break
        if R.deg_x > k * dx:
            return None
        col = R.coeff_x(k * dx)
        if col.is_zero:
            continue
        target = lead_pows[k]
        if col.degree != target.degree:
            return None
        c = col.lc / target.lc
        if col != target * c:
            return None
        coeffs[k] = c
        R = R - pows[k] * c
    if not R.is_constant:
        return None
    coeffs[0] = R.coeff(0, 0)
    return UniPoly(coeffs)
