"""Pair, symmetric and single-polynomial trichotomy classification.

A verdict other than ``EXPANDING_CANDIDATE`` always carries a certificate
that has been recomposed and compared to the inputs coefficient by
coefficient before it is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .bipoly import BiPoly, compose, require_nontrivial
from .decompose import (
    AdditiveForm,
    MultiplicativeForm,
    additive_decompose,
    multiplicative_decompose,
    primitive_base,
)
from .errors import CertificateError
from .exact_arith import UniPoly


class Verdict(enum.Enum):
    EXPANDING_CANDIDATE = "ExpandingCandidate"
    ADDITIVE_PAIR = "AdditivePair"
    MULTIPLICATIVE_PAIR = "MultiplicativePair"

    def __str__(self):
        return self.value


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class AdditiveCertificate:
    """``P = f(gamma1 u(x) + delta1 v(y))`` and ``Q = g(gamma2 u(x) + delta2 v(y))``."""

    f: UniPoly
    g: UniPoly
    u: UniPoly
    v: UniPoly
    gamma1: Fraction
    delta1: Fraction
    gamma2: Fraction
    delta2: Fraction

    @property
    def symmetric(self) -> bool:
        return self.u == self.v

    def recompose(self) -> tuple[BiPoly, BiPoly]:
        ux, vy = BiPoly.from_uni(self.u, "x"), BiPoly.from_uni(self.v, "y")
        return (
            compose(self.f, ux * self.gamma1 + vy * self.delta1),
            compose(self.g, ux * self.gamma2 + vy * self.delta2),
        )

    def to_tree(self) -> dict:
        return {
            "f": self.f.to_str("z"),
            "g": self.g.to_str("z"),
            "u": self.u.to_str("x"),
            "v": self.v.to_str("y"),
            "gamma1": _fmt(self.gamma1),
            "delta1": _fmt(self.delta1),
            "gamma2": _fmt(self.gamma2),
            "delta2": _fmt(self.delta2),
        }


@dataclass(frozen=True)
class MultiplicativeCertificate:
    """``P = f(u^m1(x) v^n1(y))`` and ``Q = g(u^m2(x) v^n2(y))``."""

    f: UniPoly
    g: UniPoly
    u: UniPoly
    v: UniPoly
    m1: int
    n1: int
    m2: int
    n2: int

    @property
    def symmetric(self) -> bool:
        return self.u == self.v

    def recompose(self) -> tuple[BiPoly, BiPoly]:
        ux, vy = BiPoly.from_uni(self.u, "x"), BiPoly.from_uni(self.v, "y")
        return (
            compose(self.f, ux ** self.m1 * vy ** self.n1),
            compose(self.g, ux ** self.m2 * vy ** self.n2),
        )

    def to_tree(self) -> dict:
        return {
            "f": self.f.to_str("z"),
            "g": self.g.to_str("z"),
            "u": self.u.to_str("x"),
            "v": self.v.to_str("y"),
            "m1": self.m1,
            "n1": self.n1,
            "m2": self.m2,
            "n2": self.n2,
        }


Certificate = Union[AdditiveCertificate, MultiplicativeCertificate]


@dataclass(frozen=True)
class Decompositions:
    additive: Optional[AdditiveForm]
    multiplicative: Optional[MultiplicativeForm]

    @classmethod
    def of(cls, P: BiPoly) -> "Decompositions":
        return cls(additive_decompose(P), multiplicative_decompose(P))


@dataclass(frozen=True)
class PairClassification:
    verdict: Verdict
    certificate: Optional[Certificate] = None
    forms_p: Optional[Decompositions] = field(default=None, compare=False)
    forms_q: Optional[Decompositions] = field(default=None, compare=False)

    def to_tree(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "certificate": self.certificate.to_tree() if self.certificate else None,
        }


@dataclass(frozen=True)
class SymmetricClassification:
    """Like :class:`PairClassification`, but the certificate uses ``v == u``."""

    verdict: Verdict
    certificate: Optional[Certificate] = None

    # single-polynomial reading (P == Q)
    @property
    def gamma(self):
        return self.certificate.gamma1

    @property
    def delta(self):
        return self.certificate.delta1

    @property
    def m(self):
        return self.certificate.m1

    @property
    def n(self):
        return self.certificate.n1

    def to_tree(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "certificate": self.certificate.to_tree() if self.certificate else None,
        }


def verify_certificate(cert: Certificate, P: BiPoly, Q: BiPoly) -> bool:
    """Recompose both polynomials and compare coefficient-wise."""
    rp, rq = cert.recompose()
    return rp == P and rq == Q


def _checked(cert: Certificate, P: BiPoly, Q: BiPoly) -> Certificate:
    if not verify_certificate(cert, P, Q):
        raise CertificateError(f"certificate {cert} does not recompose to ({P}, {Q})")
    return cert


def _additive_pair(P, Q, aP: AdditiveForm, aQ: AdditiveForm) -> Optional[AdditiveCertificate]:
    if aP.u != aQ.u:
        return None
    rho = aP.v.lc / aQ.v.lc
    if aP.v != aQ.v * rho:
        return None
    one = Fraction(1)
    return _checked(AdditiveCertificate(aP.f, aQ.f, aP.u, aP.v, one, one, one, 1 / rho), P, Q)


def _multiplicative_pair(P, Q, mP: MultiplicativeForm, mQ: MultiplicativeForm) -> Optional[MultiplicativeCertificate]:
    bu_p, bv_p = primitive_base(mP.u), primitive_base(mP.v)
    bu_q, bv_q = primitive_base(mQ.u), primitive_base(mQ.v)
    if bu_p.base != bu_q.base or bv_p.base != bv_q.base:
        return None
    cert = MultiplicativeCertificate(
        mP.f, mQ.f, bu_p.base, bv_p.base,
        bu_p.exponent, bv_p.exponent, bu_q.exponent, bv_q.exponent,
    )
    return _checked(cert, P, Q)


def classify_pair(P: BiPoly, Q: BiPoly) -> PairClassification:
    require_nontrivial(P, Q)
    dp, dq = Decompositions.of(P), Decompositions.of(Q)
    add = mul = None
    if dp.additive and dq.additive:
        add = _additive_pair(P, Q, dp.additive, dq.additive)
    if dp.multiplicative and dq.multiplicative:
        mul = _multiplicative_pair(P, Q, dp.multiplicative, dq.multiplicative)
    if add and mul:
        raise CertificateError(f"({P}, {Q}) is both an additive and a multiplicative pair")
    if add:
        return PairClassification(Verdict.ADDITIVE_PAIR, add, dp, dq)
    if mul:
        return PairClassification(Verdict.MULTIPLICATIVE_PAIR, mul, dp, dq)
    return PairClassification(Verdict.EXPANDING_CANDIDATE, None, dp, dq)


def _iroot(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of ``n >= 0``, or None."""
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r ** k == n else None


def rational_root(c: Fraction, k: int) -> Optional[Fraction]:
    """Real ``s`` with ``s**k == c`` (positive when k is even), if rational."""
    if c < 0 and k % 2 == 0:
        return None
    a, b = _iroot(abs(c.numerator), k), _iroot(c.denominator, k)
    if a is None or b is None:
        return None
    s = Fraction(a, b)
    return -s if c < 0 else s


def _fold_monic(f: UniPoly, gamma: Fraction, delta: Fraction):
    """Absorb a rational scale into (gamma, delta) so that ``f`` becomes monic."""
    s = rational_root(f.lc, f.degree)
    if s is None or s == 1:
        return f, gamma, delta
    return f(UniPoly([0, 1 / s])), gamma * s, delta * s


def classify_symmetric(P: BiPoly, Q: BiPoly) -> SymmetricClassification:
    require_nontrivial(P, Q)
    direct = classify_pair(P, Q)
    swapped = classify_pair(P.swap(), Q)
    if direct.forms_q != swapped.forms_q:
        raise CertificateError("canonical forms of Q differ between the two runs")
    expanding = SymmetricClassification(Verdict.EXPANDING_CANDIDATE)
    if Verdict.EXPANDING_CANDIDATE in (direct.verdict, swapped.verdict):
        return expanding
    if direct.verdict != swapped.verdict:
        raise CertificateError("P and P(y, x) fall into different pair cases with Q")
    cert = direct.certificate
    if direct.verdict is Verdict.ADDITIVE_PAIR:
        lam = cert.v.lc
        if cert.v != cert.u * lam:
            return expanding
        f, g1, d1 = _fold_monic(cert.f, cert.gamma1, cert.delta1 * lam)
        g, g2, d2 = _fold_monic(cert.g, cert.gamma2, cert.delta2 * lam)
        sym = AdditiveCertificate(f, g, cert.u, cert.u, g1, d1, g2, d2)
    else:
        if cert.u != cert.v:
            return expanding
        sym = MultiplicativeCertificate(cert.f, cert.g, cert.u, cert.u, cert.m1, cert.n1, cert.m2, cert.n2)
    return SymmetricClassification(direct.verdict, _checked(sym, P, Q))


def classify_single(P: BiPoly) -> SymmetricClassification:
    return classify_symmetric(P, P)
