"""Exact rational univariate polynomials and real-root isolation.

Scalars are :class:`fractions.Fraction` throughout; a Fraction already keeps
a positive denominator in lowest terms, with zero stored as 0/1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Optional, Sequence

from . import _intpoly as zp

BigRational = Fraction

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class UniPoly:
    """Dense univariate polynomial over Q; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    @classmethod
    def _from_ints(cls, ints: Sequence[int], den: int = 1) -> "UniPoly":
        if den == 1:
            return cls(ints)
        return cls(Fraction(c, den) for c in ints)

    def _to_ints(self) -> tuple[list[int], int]:
        """Return (integer coefficients, common denominator)."""
        den = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
        return [c.numerator * (den // c.denominator) for c in self.coeffs], den

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        lc = self.coeffs[-1]
        return self if lc == 1 else UniPoly(c / lc for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _frac(other)
            return UniPoly(c * t for t in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        a, da = self._to_ints()
        b, db = other._to_ints()
        return UniPoly._from_ints(zp.mul(a, b), da * db)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out, base = UniPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, value):
        """Horner evaluation; works for scalars and for polynomial arguments."""
        if not self.coeffs:
            return Fraction(0) if not hasattr(value, "coeffs") else value * 0
        acc = value * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        return self(inner)

    def derivative(self) -> "UniPoly":
        return derivative(self)

    def integral(self) -> "UniPoly":
        """Antiderivative with zero constant term."""
        return UniPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"UniPoly({self.to_str()!r})"

    def to_str(self, var: str = "x") -> str:
        return format_terms(
            ((c, {var: i} if i else {}) for i, c in reversed(list(enumerate(self.coeffs)))),
        )


def format_terms(terms) -> str:
    """Render ``(coefficient, {var: exponent})`` pairs in the parser's grammar."""
    parts = []
    for c, mono in terms:
        if c == 0:
            continue
        factors = [v if e == 1 else f"{v}^{e}" for v, e in mono.items() if e]
        mag = abs(c)
        if factors and mag == 1 and not (c < 0 and not parts and "^" in factors[0]):
            # a leading "-x^2" would read as (-x)^2, so that case keeps "-1*"
            body = "*".join(factors)
        else:
            lit = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            body = "*".join([lit] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder with ``deg r < deg b``."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    if len(r) - 1 < db:
        return UniPoly(), a
    q = [Fraction(0)] * (len(r) - db)
    inv = 1 / b.coeffs[-1]
    bc = b.coeffs
    for k in range(len(r) - 1 - db, -1, -1):
        t = r[k + db] * inv
        if t:
            q[k] = t
            for i in range(db + 1):
                r[i + k] -= t * bc[i]
    return UniPoly(q), UniPoly(r[:db])


def derivative(p: UniPoly) -> UniPoly:
    return UniPoly(i * c for i, c in enumerate(p.coeffs) if i)


def gcd_uni(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic GCD over Q, via the primitive Euclidean algorithm over Z."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    g = zp.gcd_poly(a._to_ints()[0], b._to_ints()[0])
    return UniPoly(g).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of ``p``."""
    if p.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant:
        return UniPoly([1])
    q, r = poly_divmod(p, gcd_uni(p, derivative(p)))
    assert r.is_zero
    return q.monic()


def nth_root(p: UniPoly, n: int) -> Optional[UniPoly]:
    """Monic ``q`` with ``q**n == p`` exactly, or None.

    The reversed polynomial ``t**D p(1/t)`` has constant term 1; its formal
    n-th root is expanded from the leading end with Miller's power
    recurrence and truncated at degree ``deg p / n``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not p.is_monic():
        raise ValueError("nth_root requires a monic polynomial")
    if p.is_constant:
        raise ValueError("nth_root requires a nonconstant polynomial")
    if n == 1:
        return p
    D = p.degree
    if D % n:
        return None
    d = D // n
    rev = p.coeffs[::-1]  # rev[0] = 1
    alpha = Fraction(1, n)
    q = [Fraction(1)]
    for k in range(1, d + 1):
        s = Fraction(0)
        for j in range(1, min(k, D) + 1):
            if rev[j]:
                s += ((alpha + 1) * j - k) * rev[j] * q[k - j]
        q.append(s / k)
    root = UniPoly(q[::-1])
    return root if root ** n == p else None


# --- real root isolation ---------------------------------------------------

@dataclass(frozen=True)
class RootInterval:
    """Isolating interval ``[lo, hi]`` for one real root.

    When ``lo < hi`` the endpoints are not roots and the root lies strictly
    inside; ``lo == hi`` means the root is the rational ``lo`` itself.
    ``simple`` records whether the root has multiplicity one in the queried
    polynomial.
    """

    lo: Fraction
    hi: Fraction
    simple: bool = True

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("RootInterval requires lo <= hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi


def _int_value(ints: Sequence[int], x: Fraction) -> int:
    """``den**d * p(x)`` for integer ``p``; same sign as ``p(x)``."""
    num, den = x.numerator, x.denominator
    acc = 0
    pw = 1
    # homogenised Horner: sum c_i num^i den^(d-i)
    for c in reversed(ints):
        acc = acc * num + c * pw
        pw *= den
    return acc


def _sign_at(ints: Sequence[int], x: Fraction) -> int:
    v = _int_value(ints, x)
    return (v > 0) - (v < 0)


def _taylor_shift1(a: list[int]) -> list[int]:
    a = list(a)
    n = len(a)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            a[k] += a[k + 1]
    return a


def _descartes_bound(ints: Sequence[int], a: Fraction, b: Fraction) -> int:
    """Sign variations bounding the number of roots in the open interval (a, b)."""
    d = len(ints) - 1
    q = math.lcm(a.denominator, b.denominator)
    p1 = a.numerator * (q // a.denominator)
    h = b.numerator * (q // b.denominator) - p1
    # q**d * s(a + (b - a) t) via Horner on (p1 + h t) / q
    acc: list[int] = []
    lin = [p1, h]
    pw = 1
    for c in reversed(ints):
        acc = zp.add(zp.mul(acc, lin), [c * pw])
        pw *= q
    acc = acc + [0] * (d + 1 - len(acc))
    t = _taylor_shift1(acc[::-1])
    signs = [c > 0 for c in t if c]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _root_bound(ints: Sequence[int]) -> Fraction:
    lead = abs(ints[-1])
    m = max(abs(c) for c in ints[:-1]) if len(ints) > 1 else 0
    bound = 1 + Fraction(m, lead)
    k = 1
    while k < bound:
        k *= 2
    return Fraction(k)


def _pull_endpoint(ints, a: Fraction, b: Fraction, move_hi: bool) -> Fraction:
    """Move a root endpoint inward until the gap contains no root."""
    j = 1
    while True:
        if move_hi:
            c = b - (b - a) / 2 ** j
            if _sign_at(ints, c) and _descartes_bound(ints, c, b) == 0:
                return c
        else:
            c = a + (b - a) / 2 ** j
            if _sign_at(ints, c) and _descartes_bound(ints, a, c) == 0:
                return c
        j += 1


def _isolate_squarefree(ints: list[int]) -> list[tuple[Fraction, Fraction]]:
    if len(ints) <= 1:
        return []
    B = _root_bound(ints)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        v = _descartes_bound(ints, a, b)
        if v == 0:
            continue
        if v == 1:
            if _sign_at(ints, a) == 0:
                a = _pull_endpoint(ints, a, b, move_hi=False)
            if _sign_at(ints, b) == 0:
                b = _pull_endpoint(ints, a, b, move_hi=True)
            out.append((a, b))
            continue
        m = (a + b) / 2
        if _sign_at(ints, m) == 0:
            out.append((m, m))
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    # split points may be shared by neighbours; keep closed intervals disjoint
    for i in range(len(out) - 1):
        (a, b), (c, _) = out[i], out[i + 1]
        if a < b and b == c:
            out[i] = (a, _pull_endpoint(ints, a, b, move_hi=True))
    return out


def isolate_real_roots(p: UniPoly) -> list[RootInterval]:
    """Disjoint isolating intervals, one per distinct real root of ``p``."""
    if p.is_zero:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    s = squarefree_part(p)
    ints = s._to_ints()[0]
    spans = _isolate_squarefree(ints)
    if not spans:
        return []
    # roots shared with p' are the multiple ones
    g = gcd_uni(p, derivative(p))
    h = gcd_uni(s, squarefree_part(g)) if not g.is_constant else UniPoly([1])
    hint = h._to_ints()[0]
    result = []
    for lo, hi in spans:
        if h.is_constant:
            simple = True
        elif lo == hi:
            simple = _sign_at(hint, lo) != 0
        else:
            simple = _sign_at(hint, lo) * _sign_at(hint, hi) > 0
        result.append(RootInterval(lo, hi, simple))
    return result


def refine_root(p: UniPoly, r: RootInterval, width) -> RootInterval:
    """Bisect ``r`` until ``hi - lo <= width``; exact hits collapse to a point."""
    width = _frac(width)
    if width <= 0:
        raise ValueError("width must be positive")
    ints = squarefree_part(p)._to_ints()[0]
    lo, hi = r.lo, r.hi
    if lo == hi:
        if _sign_at(ints, lo) != 0:
            raise ValueError("degenerate interval is not a root")
        return r
    slo, shi = _sign_at(ints, lo), _sign_at(ints, hi)
    if slo * shi >= 0:
        raise ValueError("interval does not bracket a sign change")
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = _sign_at(ints, m)
        if sm == 0:
            return RootInterval(m, m, r.simple)
        if sm == slo:
            lo = m
        else:
            hi = m
    return RootInterval(lo, hi, r.simple)


def rational_root_in(p: UniPoly, r: RootInterval, max_den: int = 1 << 20) -> Optional[Fraction]:
    """The root inside ``r`` if it is a rational of modest height, else None."""
    if r.is_exact:
        return r.lo
    cand = r.midpoint.limit_denominator(max_den)
    if r.lo <= cand <= r.hi and p(cand) == 0:
        return cand
    return None
