from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polyexpand.bipoly import BiPoly
from polyexpand.classify import (
    AdditiveCertificate,
    MultiplicativeCertificate,
    Verdict,
    classify_pair,
    classify_single,
    classify_symmetric,
    rational_root,
    verify_certificate,
)
from polyexpand.errors import TrivialDependence
from polyexpand.exact_arith import UniPoly

import composers as C
from conftest import SX, SY, sympy_compose, uni_to_sympy

x, y = BiPoly.x(), BiPoly.y()
Z = UniPoly.x()


def oracle_recompose(cert):
    """Recompose a certificate through sympy instead of the package."""
    u, v = uni_to_sympy(cert.u, SX), uni_to_sympy(cert.v, SY)
    if isinstance(cert, AdditiveCertificate):
        wp = sympy.Rational(cert.gamma1) * u + sympy.Rational(cert.delta1) * v
        wq = sympy.Rational(cert.gamma2) * u + sympy.Rational(cert.delta2) * v
    else:
        wp = u ** cert.m1 * v ** cert.n1
        wq = u ** cert.m2 * v ** cert.n2
    return sympy_compose(cert.f, wp), sympy_compose(cert.g, wq)


class TestPair:
    def test_sum_product_instance(self):
        r = classify_pair(x + y, x * y)
        assert r.verdict is Verdict.EXPANDING_CANDIDATE and r.certificate is None

    def test_additive_pair(self):
        P = x ** 4 + 2 * x ** 2 * y ** 3 + y ** 6
        Q = x ** 2 - y ** 3 + 5
        r = classify_pair(P, Q)
        assert r.verdict is Verdict.ADDITIVE_PAIR
        assert r.certificate == AdditiveCertificate(Z ** 2, Z + 5, Z ** 2, Z ** 3, 1, 1, 1, -1)
        assert oracle_recompose(r.certificate) == (P, Q)

    def test_multiplicative_pair(self):
        P = x ** 2 * y ** 2 + 2 * x * y + 1
        Q = x ** 4 * y ** 2
        r = classify_pair(P, Q)
        assert r.verdict is Verdict.MULTIPLICATIVE_PAIR
        assert r.certificate == MultiplicativeCertificate(Z ** 2 + 2 * Z + 1, Z ** 2, Z, Z, 1, 1, 2, 1)
        assert oracle_recompose(r.certificate) == (P, Q)

    def test_trivial_dependence(self):
        with pytest.raises(TrivialDependence):
            classify_pair(x + y, x)

    def test_non_proportional_inner_parts(self):
        # both additive, with u = x and u = x^2: no common basis
        r = classify_pair(x + y, x ** 2 + y)
        assert r.verdict is Verdict.EXPANDING_CANDIDATE

    def test_tree(self):
        tree = classify_pair(x + y, x + 2 * y).to_tree()
        assert tree["verdict"] == "AdditivePair"
        assert set(tree["certificate"]) == {"f", "g", "u", "v", "gamma1", "delta1", "gamma2", "delta2"}

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=40)
    def test_composed_additive_pairs(self, seed):
        P, Q = C.random_additive_pair(C.rng(seed))
        r = classify_pair(P, Q)
        assert r.verdict is Verdict.ADDITIVE_PAIR
        assert verify_certificate(r.certificate, P, Q)
        assert oracle_recompose(r.certificate) == (P, Q)

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=40)
    def test_composed_multiplicative_pairs(self, seed):
        P, Q = C.random_multiplicative_pair(C.rng(seed))
        r = classify_pair(P, Q)
        assert r.verdict is Verdict.MULTIPLICATIVE_PAIR
        cert = r.certificate
        assert oracle_recompose(cert) == (P, Q)
        assert C.power_multiplicity(cert.u, SX) == 1 and C.power_multiplicity(cert.v, SY) == 1


class TestSymmetric:
    def test_additive(self):
        P, Q = x ** 2 + y ** 2, 3 * x ** 2 + 5 * y ** 2 + 1
        r = classify_symmetric(P, Q)
        assert r.verdict is Verdict.ADDITIVE_PAIR
        assert r.certificate == AdditiveCertificate(Z, Z + 1, Z ** 2, Z ** 2, 1, 1, 3, 5)
        assert oracle_recompose(r.certificate) == (P, Q)

    def test_sum_product(self):
        assert classify_symmetric(x + y, x * y).verdict is Verdict.EXPANDING_CANDIDATE

    def test_multiplicative(self):
        P, Q = x ** 2 * y ** 4 + 1, x ** 4 * y ** 2
        r = classify_symmetric(P, Q)
        assert r.verdict is Verdict.MULTIPLICATIVE_PAIR
        assert r.certificate == MultiplicativeCertificate(Z ** 2 + 1, Z ** 2, Z, Z, 1, 2, 2, 1)
        assert oracle_recompose(r.certificate) == (P, Q)

    def test_different_bases_rejected(self):
        # an additive pair, but with v = y^3 not proportional to u = x^2
        assert classify_symmetric(x ** 2 + y ** 3, x ** 2 + 2 * y ** 3).verdict is Verdict.EXPANDING_CANDIDATE

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=25)
    def test_swap_coherence(self, seed):
        rng = C.rng(seed)
        u = C.rand_monic(rng, 2, zero_const=True)
        f, g = C.rand_f(rng, 2), C.rand_f(rng, 2)
        P = C.expand_additive(f, u, u, C.rand_nonzero_frac(rng), C.rand_nonzero_frac(rng))
        Q = C.expand_additive(g, u, u, C.rand_nonzero_frac(rng), C.rand_nonzero_frac(rng))
        r, s = classify_symmetric(P, Q), classify_symmetric(P.swap(), Q.swap())
        assert r.verdict is s.verdict is Verdict.ADDITIVE_PAIR
        assert oracle_recompose(r.certificate) == (P, Q)
        assert oracle_recompose(s.certificate) == (P.swap(), Q.swap())

    def test_swap_coherence_multiplicative(self):
        P, Q = x ** 2 * y ** 4 + 1, x ** 4 * y ** 2
        assert classify_symmetric(P.swap(), Q.swap()).verdict is Verdict.MULTIPLICATIVE_PAIR


class TestSingle:
    def test_cube_of_sum(self):
        r = classify_single((x + y) ** 3)
        assert r.verdict is Verdict.ADDITIVE_PAIR
        assert r.certificate.f == Z ** 3 and r.certificate.u == Z
        assert r.gamma == r.delta == 1

    def test_monomial(self):
        r = classify_single(x ** 2 * y ** 3)
        assert r.verdict is Verdict.MULTIPLICATIVE_PAIR
        assert r.certificate.f == Z and r.certificate.u == Z
        assert (r.m, r.n) == (2, 3)

    def test_expanding(self):
        assert classify_single(x ** 2 + x * y + y ** 2).verdict is Verdict.EXPANDING_CANDIDATE

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=30)
    def test_verdicts_are_exclusive(self, seed):
        rng = C.rng(seed)
        P, _ = C.random_additive(rng) if seed % 2 else C.random_multiplicative(rng)
        r = classify_single(P)
        if r.certificate is not None:
            assert oracle_recompose(r.certificate) == (P, P)


class TestRationalRoot:
    def test_roots(self):
        assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
        assert rational_root(Fraction(-8), 3) == -2
        assert rational_root(Fraction(-4), 2) is None
        assert rational_root(Fraction(2), 2) is None
