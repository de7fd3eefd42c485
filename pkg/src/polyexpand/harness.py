"""Desk-scale expansion experiments.

Builds the non-expanding witness sets for additive and multiplicative pairs,
measures image sizes ``|P(A, B)|`` exactly (or with certified interval
deduplication when the sets contain irrational preimages) and fits the growth
exponent of ``max(|P(A,B)|, |Q(A,B)|)`` against ``n``.
"""

from __future__ import annotations

import enum
import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .bipoly import BiPoly, require_nontrivial
from .classify import AdditiveCertificate, MultiplicativeCertificate, PairClassification, Verdict, classify_pair
from .errors import PrecisionExhausted, UnreachableCardinality
from .exact_arith import RootInterval, UniPoly, _frac, isolate_real_roots, rational_root_in, refine_root, squarefree_part

DEFAULT_WIDTH = Fraction(1, 1 << 30)
MAX_RETRIES = 16
K_CAP_FACTOR = 64


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of ``poly`` (squarefree) isolated by ``interval``."""

    poly: UniPoly
    interval: RootInterval

    @property
    def midpoint(self) -> Fraction:
        return self.interval.midpoint

    @property
    def width(self) -> Fraction:
        return self.interval.width

    def refined(self, width) -> "AlgebraicReal":
        if self.interval.width <= width:
            return self
        return AlgebraicReal(self.poly, refine_root(self.poly, self.interval, width))

    def bounds(self, width) -> tuple[Fraction, Fraction]:
        r = self.refined(width).interval
        return r.lo, r.hi


Real = Union[Fraction, AlgebraicReal]


def _bounds(a: Real, width) -> tuple[Fraction, Fraction]:
    if isinstance(a, Fraction):
        return a, a
    return a.bounds(width)


def _approx(a: Real) -> Fraction:
    return a if isinstance(a, Fraction) else a.midpoint


def all_rational(values: Sequence[Real]) -> bool:
    return all(isinstance(a, Fraction) for a in values)


@dataclass(frozen=True)
class WitnessSets:
    A: list
    B: list
    n: int
    k: int
    width: Fraction = DEFAULT_WIDTH

    @property
    def exact(self) -> bool:
        return all_rational(self.A) and all_rational(self.B)


# -- preimages ---------------------------------------------------------------


def _target_sign(u: UniPoly, towards: int = 1) -> int:
    """Sign flip sending targets that grow in direction ``towards`` into the range of ``u``."""
    if u.degree % 2 == 1:
        return 1
    # even degree: the range is unbounded only on the side of the leading coefficient
    return towards * (1 if u.lc > 0 else -1)


def largest_preimage(u: UniPoly, t: Fraction, width=DEFAULT_WIDTH) -> Optional[Real]:
    """Largest real ``a`` with ``u(a) == t``, exact when rational."""
    p = u - t
    if p.degree == 1:
        return -p.coeff(0) / p.coeff(1)
    roots = isolate_real_roots(p)
    if not roots:
        return None
    s = squarefree_part(p)
    r = roots[-1]
    if not r.is_exact:
        r = refine_root(s, r, min(_frac(width), Fraction(1, 1 << 40)))
    q = rational_root_in(s, r)
    if q is not None:
        return q
    return AlgebraicReal(s, r)


def _separate(values: list, width: Fraction) -> tuple[list, Fraction]:
    """Sort distinct reals, refining until neighbours are more than ``2 width`` apart."""
    values = list(values)
    for _ in range(200):
        values.sort(key=_approx)
        bad = False
        for i in range(len(values) - 1):
            lo_next = _bounds(values[i + 1], width)[0]
            hi_prev = _bounds(values[i], width)[1]
            if lo_next - hi_prev <= 2 * width:
                bad = True
                break
        if not bad:
            return [v.refined(width) if isinstance(v, AlgebraicReal) else v for v in values], width
        width /= 2
    raise PrecisionExhausted("could not separate witness elements")


def _targets_additive(c1: Fraction, c2: Fraction, k: int, seen: set) -> list[Fraction]:
    """Targets ``c1 l + c2 l'`` with ``max(l, l') == k`` not seen before."""
    out = []
    pairs = [(k, j) for j in range(k + 1)] + [(j, k) for j in range(k)]
    for l, lp in pairs:
        t = c1 * l + c2 * lp
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _direction(coeffs) -> int:
    # targets c1 l + c2 l' are unbounded above unless both coefficients are negative
    return 1 if max(coeffs) > 0 else -1


def _collect(u: UniPoly, target_fn, n: int, width: Fraction, towards: int = 1) -> tuple[list, int]:
    sign = _target_sign(u, towards)
    seen: set = set()
    found: dict = {}
    k = 0
    cap = K_CAP_FACTOR * n
    while True:
        for t in target_fn(k, seen):
            a = largest_preimage(u, sign * t, width)
            if a is not None:
                found[t] = a
        if len(found) >= n:
            break
        k += 1
        if k > cap:
            raise UnreachableCardinality(f"only {len(found)} of {n} preimages under {u} with k <= {cap}")
    values, _ = _separate(list(found.values()), width)
    return values[:n], k


def build_witness_sets(cls: PairClassification, n: int, width=DEFAULT_WIDTH) -> WitnessSets:
    """Sets ``A, B`` of size ``n`` on which an additive or multiplicative pair does not expand."""
    if n < 1:
        raise ValueError("n must be positive")
    width = _frac(width)
    cert = cls.certificate
    if cls.verdict is Verdict.ADDITIVE_PAIR:
        assert isinstance(cert, AdditiveCertificate)
        ca = (cert.gamma1 * cert.gamma2, cert.delta1 * cert.delta2)
        cb = (cert.gamma1 * cert.delta2, cert.delta1 * cert.gamma2)
        A, ka = _collect(cert.u, lambda k, s: _targets_additive(*ca, k, s), n, width, _direction(ca))
        B, kb = _collect(cert.v, lambda k, s: _targets_additive(*cb, k, s), n, width, _direction(cb))
    elif cls.verdict is Verdict.MULTIPLICATIVE_PAIR:
        assert isinstance(cert, MultiplicativeCertificate)
        A, ka = _collect(cert.u, _powers_of_two, n, width)
        B, kb = _collect(cert.v, _powers_of_two, n, width)
    else:
        raise ValueError("witness sets need an additive or multiplicative pair")
    return WitnessSets(A, B, n, max(ka, kb), width)


def _powers_of_two(k: int, seen: set) -> list[Fraction]:
    t = Fraction(1 << k)
    if t in seen:
        return []
    seen.add(t)
    return [t]


# -- image sizes -------------------------------------------------------------


class Mode(enum.Enum):
    EXACT = "exact"
    CERTIFIED = "certified"


@dataclass(frozen=True)
class Certified:
    width: Fraction = DEFAULT_WIDTH


def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values], den


def _exact_size(P: BiPoly, A: Sequence[Fraction], B: Sequence[Fraction]) -> int:
    rows, _ = P.int_rows()
    dx, dy = P.deg_x, P.deg_y
    ia, da = _scaled(A)
    ib, db = _scaled(B)
    # clearing denominators: value * da^dx * db^dy is an integer polynomial value
    coef = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row):
            if c:
                coef[(i, j)] = c * da ** (dx - i) * db ** (dy - j)
    ma = max((abs(v) for v in ia), default=0)
    mb = max((abs(v) for v in ib), default=0)
    bound = sum(abs(c) * ma ** i * mb ** j for (i, j), c in coef.items())
    dtype = np.int64 if bound < (1 << 62) else object
    av = np.array(ia, dtype=dtype)
    bv = np.array(ib, dtype=dtype)
    apow = [np.ones(len(ia), dtype=dtype)]
    for _ in range(dx):
        apow.append(apow[-1] * av)
    bpow = [np.ones(len(ib), dtype=dtype)]
    for _ in range(dy):
        bpow.append(bpow[-1] * bv)
    total = np.zeros((len(ia), len(ib)), dtype=dtype)
    for i in sorted({i for i, _ in coef}):
        col = np.zeros(len(ib), dtype=dtype)
        for j in range(dy + 1):
            c = coef.get((i, j))
            if c:
                col = col + bpow[j] * (c if dtype is object else np.int64(c))
        total = total + np.multiply.outer(apow[i], col)
    if dtype is object:
        return len(set(total.ravel().tolist()))
    return int(np.unique(total).size)


def _imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _ipow(a, k: int):
    lo, hi = a
    if k == 0:
        return Fraction(1), Fraction(1)
    if k % 2 == 1 or lo >= 0:
        return lo ** k, hi ** k
    if hi <= 0:
        return hi ** k, lo ** k
    return Fraction(0), max(-lo, hi) ** k


def _round_out(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    s = 1 << bits
    return Fraction(math.floor(lo * s), s), Fraction(math.ceil(hi * s), s)


def _interval_values(P: BiPoly, A, B, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    terms = P.terms()
    dx, dy = P.deg_x, P.deg_y
    bits = max(1, -math.floor(math.log2(width))) + 8
    apow = [[_ipow(_bounds(a, width), i) for i in range(dx + 1)] for a in A]
    bpow = [[_ipow(_bounds(b, width), j) for j in range(dy + 1)] for b in B]
    out = []
    for pa in apow:
        for pb in bpow:
            lo = hi = Fraction(0)
            for (i, j), c in terms.items():
                m = _imul(pa[i], pb[j])
                if c > 0:
                    lo, hi = lo + c * m[0], hi + c * m[1]
                else:
                    lo, hi = lo + c * m[1], hi + c * m[0]
            # exact point values stay exact; only proper intervals are coarsened
            out.append((lo, hi) if lo == hi else _round_out(lo, hi, bits))
    return out


def _cluster_count(intervals: list[tuple[Fraction, Fraction]]) -> Optional[int]:
    """Distinct values among the intervals, or None when a cluster is ambiguous."""
    intervals = sorted(intervals)
    count = 0
    i = 0
    while i < len(intervals):
        lo, reach = intervals[i]
        common_lo, common_hi = intervals[i]
        j = i + 1
        while j < len(intervals) and intervals[j][0] <= reach:
            reach = max(reach, intervals[j][1])
            common_lo = max(common_lo, intervals[j][0])
            common_hi = min(common_hi, intervals[j][1])
            j += 1
        # merged only when all members share a point; partial chains are unresolved
        if common_lo > common_hi:
            return None
        count += 1
        i = j
    return count


def _certified_size(P: BiPoly, A, B, width: Fraction) -> int:
    prev = None
    for _ in range(MAX_RETRIES):
        c = _cluster_count(_interval_values(P, A, B, width))
        if c is not None and c == prev:
            return c
        prev = c
        width /= 2
    raise PrecisionExhausted(f"image size not stable after {MAX_RETRIES} halvings")


def image_size(P: BiPoly, A: Sequence[Real], B: Sequence[Real], mode: Union[Mode, Certified, str] = Mode.EXACT) -> int:
    """``|{P(a, b) : a in A, b in B}|``."""
    A = [a if isinstance(a, AlgebraicReal) else _frac(a) for a in A]
    B = [b if isinstance(b, AlgebraicReal) else _frac(b) for b in B]
    if not A or not B:
        return 0
    if isinstance(mode, str):
        mode = Mode(mode)
    if mode is Mode.CERTIFIED:
        mode = Certified()
    if isinstance(mode, Certified):
        return _certified_size(P, A, B, _frac(mode.width))
    if not (all_rational(A) and all_rational(B)):
        raise ValueError("exact mode needs rational elements")
    return _exact_size(P, A, B)


# -- series ------------------------------------------------------------------


class SetFamily(enum.Enum):
    WITNESS_ADDITIVE = "WitnessAdditive"
    WITNESS_MULTIPLICATIVE = "WitnessMultiplicative"
    ARITHMETIC_PROGRESSION = "ArithmeticProgression"
    GEOMETRIC_PROGRESSION = "GeometricProgression"
    UNIFORM_RANDOM = "UniformRandom"

    def __str__(self):
        return self.value


FAMILY_ALIASES = {
    "ap": SetFamily.ARITHMETIC_PROGRESSION,
    "gp": SetFamily.GEOMETRIC_PROGRESSION,
    "random": SetFamily.UNIFORM_RANDOM,
}


@dataclass(frozen=True)
class SeriesPoint:
    n: int
    card_p: int
    card_q: int

    @property
    def max(self) -> int:
        return max(self.card_p, self.card_q)


@dataclass
class ExpansionSeries:
    points: list[SeriesPoint]
    fitted_exponent: float
    fit_r2: float
    set_family: SetFamily
    comparison_exponent: Fraction = field(default=Fraction(5, 4))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,card_P,card_Q,max,family\n")
        for p in self.points:
            buf.write(f"{p.n},{p.card_p},{p.card_q},{p.max},{self.set_family.value}\n")
        buf.write(f"# exponent={self.fitted_exponent:.6f} r2={self.fit_r2:.6f} comparison=5/4\n")
        return buf.getvalue()

    def to_tree(self) -> dict:
        return {
            "family": self.set_family.value,
            "points": [{"n": p.n, "card_P": p.card_p, "card_Q": p.card_q, "max": p.max} for p in self.points],
            "fitted_exponent": round(self.fitted_exponent, 6),
            "fit_r2": round(self.fit_r2, 6),
            "comparison_exponent": "5/4",
        }


def fit_exponent(ns: Sequence[int], values: Sequence[int]) -> tuple[float, float]:
    """Least-squares slope of ``log(values)`` on ``log(ns)`` and its R^2."""
    lx = np.log(np.asarray(ns, dtype=float))
    ly = np.log(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def family_sets(family: SetFamily, n: int, seed: int = 0) -> tuple[list[Fraction], list[Fraction]]:
    """Non-witness test sets of size ``n``."""
    if family is SetFamily.ARITHMETIC_PROGRESSION:
        s = [Fraction(i) for i in range(1, n + 1)]
        return s, list(s)
    if family is SetFamily.GEOMETRIC_PROGRESSION:
        s = [Fraction(1 << i) for i in range(n)]
        return s, list(s)
    if family is SetFamily.UNIFORM_RANDOM:
        rng = random.Random(seed * 1_000_003 + n)
        hi = max(4 * n * n, 16)
        A = sorted(Fraction(v) for v in rng.sample(range(1, hi + 1), n))
        B = sorted(Fraction(v) for v in rng.sample(range(1, hi + 1), n))
        return A, B
    raise ValueError(f"{family} needs a classification")


def witness_family(cls: PairClassification) -> SetFamily:
    if cls.verdict is Verdict.ADDITIVE_PAIR:
        return SetFamily.WITNESS_ADDITIVE
    if cls.verdict is Verdict.MULTIPLICATIVE_PAIR:
        return SetFamily.WITNESS_MULTIPLICATIVE
    raise ValueError("witness sets need an additive or multiplicative pair")


def run_series(
    P: BiPoly,
    Q: BiPoly,
    family: Union[SetFamily, str],
    n_grid: Sequence[int],
    classification: Optional[PairClassification] = None,
    seed: int = 0,
    width=DEFAULT_WIDTH,
) -> ExpansionSeries:
    require_nontrivial(P, Q)
    n_grid = [int(n) for n in n_grid]
    if len(n_grid) < 3 or any(b <= a for a, b in zip(n_grid, n_grid[1:])) or n_grid[0] < 1:
        raise ValueError("n_grid must be strictly increasing positive integers, at least 3 of them")
    if isinstance(family, str):
        family = FAMILY_ALIASES.get(family) or SetFamily(family)
    witness = family in (SetFamily.WITNESS_ADDITIVE, SetFamily.WITNESS_MULTIPLICATIVE)
    if witness:
        if classification is None:
            classification = classify_pair(P, Q)
        if witness_family(classification) is not family:
            raise ValueError(f"{family} does not match verdict {classification.verdict}")
    mode = Certified(_frac(width))
    points = []
    for n in n_grid:
        if witness:
            ws = build_witness_sets(classification, n, width)
            A, B = ws.A, ws.B
        else:
            A, B = family_sets(family, n, seed)
        m = Mode.EXACT if all_rational(A) and all_rational(B) else mode
        points.append(SeriesPoint(n, image_size(P, A, B, m), image_size(Q, A, B, m)))
    slope, r2 = fit_exponent([p.n for p in points], [p.max for p in points])
    return ExpansionSeries(points, slope, r2, family)
