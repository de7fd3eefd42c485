import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings, strategies as st

from polyexpand import BiPoly, UniPoly
from polyexpand.parser import parse_bipoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SX, SY, SZ = sympy.symbols("x y z")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- sympy bridge (independent oracle) ----------------------------------------


def bi_to_sympy(P: BiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * SX ** i * SY ** j for (i, j), c in P.terms().items()),
               sympy.Integer(0))


def uni_to_sympy(p: UniPoly, var=SZ):
    return sum((sympy.Rational(c.numerator, c.denominator) * var ** i for i, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def sympy_to_bi(expr) -> BiPoly:
    poly = sympy.Poly(sympy.expand(expr), SX, SY)
    terms = {}
    for (i, j), c in poly.terms():
        c = sympy.Rational(c)
        terms[(i, j)] = Fraction(int(c.p), int(c.q))
    return BiPoly.from_terms(terms)


def sympy_compose(f: UniPoly, inner) -> BiPoly:
    return sympy_to_bi(uni_to_sympy(f).subs(SZ, inner))


# -- generators ----------------------------------------------------------------

small_int = st.integers(-9, 9)
small_frac = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def unipolys(draw, max_degree=5, elements=small_frac):
    return UniPoly(draw(st.lists(elements, max_size=max_degree + 1)))


@st.composite
def nonzero_unipolys(draw, max_degree=5, elements=small_frac):
    p = draw(unipolys(max_degree, elements))
    return p if not p.is_zero else UniPoly([draw(st.integers(1, 9))])


@st.composite
def monic_unipolys(draw, min_degree=1, max_degree=3):
    d = draw(st.integers(min_degree, max_degree))
    return UniPoly(draw(st.lists(small_int, min_size=d, max_size=d)) + [1])


@st.composite
def bipolys(draw, max_deg=3, elements=small_int):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)), elements, max_size=8))
    return BiPoly.from_terms(terms)


def rand_uni(rng: random.Random, degree: int, monic=False, zero_const=False) -> UniPoly:
    cs = [rng.randint(-9, 9) for _ in range(degree + 1)]
    while cs[-1] == 0:
        cs[-1] = rng.randint(-9, 9)
    if monic:
        cs[-1] = 1
    if zero_const:
        cs[0] = 0
    return UniPoly(cs)


@pytest.fixture
def p():
    return parse_bipoly
