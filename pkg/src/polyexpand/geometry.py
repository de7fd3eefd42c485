"""Curve families ``C_b = {(P(a, b1), Q(a, b2)) : a}`` and their overlaps.

Two curves of the family share a one-dimensional piece exactly when the
pullback polynomials ``P(s, b1) - P(t, b1')`` and ``Q(s, b2) - Q(t, b2')``
have a nonconstant common factor in Q[s, t].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bipoly import BiPoly, gcd_bi
from .errors import DegenerateParameters
from .exact_arith import UniPoly, _frac


class Intersection(enum.Enum):
    FINITE = "Finite"
    ONE_DIMENSIONAL = "OneDimensional"


@dataclass(frozen=True)
class CurveParams:
    b1: Fraction
    b2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b1", _frac(self.b1))
        object.__setattr__(self, "b2", _frac(self.b2))


@dataclass(frozen=True)
class IntersectionDim:
    verdict: Intersection
    witness: Optional[BiPoly] = None

    @property
    def one_dimensional(self) -> bool:
        return self.verdict is Intersection.ONE_DIMENSIONAL


class _Sections:
    """Memoised ``P(x, b)`` sections, rejecting constant ones."""

    def __init__(self, P: BiPoly, name: str):
        self.P, self.name, self._cache = P, name, {}

    def __call__(self, b: Fraction) -> UniPoly:
        s = self._cache.get(b)
        if s is None:
            s = self.P.section_y(b)
            self._cache[b] = s
        return s

    def degenerate(self, b: Fraction) -> bool:
        return self(b).is_constant


def _pullback(sec_a: UniPoly, sec_b: UniPoly) -> BiPoly:
    return BiPoly.from_uni(sec_a, "x") - BiPoly.from_uni(sec_b, "y")


def _intersection(secP: _Sections, secQ: _Sections, b: CurveParams, bp: CurveParams) -> IntersectionDim:
    for sec, val in ((secP, b.b1), (secP, bp.b1), (secQ, b.b2), (secQ, bp.b2)):
        if sec.degenerate(val):
            raise DegenerateParameters(f"{sec.name}(x, {val}) is constant")
    F = _pullback(secP(b.b1), secP(bp.b1))
    G = _pullback(secQ(b.b2), secQ(bp.b2))
    g = gcd_bi(F, G)
    if g.is_constant:
        return IntersectionDim(Intersection.FINITE)
    return IntersectionDim(Intersection.ONE_DIMENSIONAL, g)


def intersection_dim(P: BiPoly, Q: BiPoly, b: CurveParams, bp: CurveParams) -> IntersectionDim:
    """Decide whether ``C_b`` and ``C_bp`` meet in a one-dimensional set."""
    return _intersection(_Sections(P, "P"), _Sections(Q, "Q"), b, bp)


DEFAULT_THRESHOLD = 1


def default_threshold(P: BiPoly, Q: BiPoly) -> int:
    """Largest partner count still read as "finitely many" on a grid.

    A constant, so that families whose counts grow with the grid are
    flagged once the grid outgrows accidental coincidences.
    """
    return DEFAULT_THRESHOLD


@dataclass
class ScatterReport:
    grid: list[CurveParams]
    counts: list[int]
    excluded: list[tuple[str, Fraction]]
    threshold: int
    exclusion_bound: int
    pairs: set[tuple[int, int]] = field(default_factory=set, repr=False)

    @property
    def max_count(self) -> int:
        return max(self.counts, default=0)

    @property
    def scattered(self) -> bool:
        return self.max_count <= self.threshold

    def count_at(self, b1, b2) -> int:
        return self.counts[self.grid.index(CurveParams(b1, b2))]

    def to_tree(self) -> dict:
        return {
            "params": [[_q(p.b1), _q(p.b2)] for p in self.grid],
            "counts": list(self.counts),
            "excluded": [[role, _q(b)] for role, b in self.excluded],
            "verdict": {
                "scattered_on_grid": self.scattered,
                "max_count": self.max_count,
                "threshold": self.threshold,
                "exclusion_bound": self.exclusion_bound,
            },
        }

    def to_table(self) -> str:
        lines = ["b1\tb2\tcount"]
        lines += [f"{_q(p.b1)}\t{_q(p.b2)}\t{c}" for p, c in zip(self.grid, self.counts)]
        for role, b in self.excluded:
            lines.append(f"# excluded {role}={_q(b)}")
        verdict = "scattered" if self.scattered else "not scattered"
        lines.append(f"# max_count={self.max_count} threshold={self.threshold} verdict={verdict}")
        return "\n".join(lines) + "\n"


def _q(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def scatter_probe(P: BiPoly, Q: BiPoly, S: Iterable, threshold: Optional[int] = None) -> ScatterReport:
    """All-pairs overlap counts over the grid ``S x S`` of curve parameters."""
    values: list[Fraction] = []
    for s in S:
        s = _frac(s)
        if s not in values:
            values.append(s)
    if not values:
        raise ValueError("empty sample")
    secP, secQ = _Sections(P, "P"), _Sections(Q, "Q")
    excluded = [("b1", b) for b in values if secP.degenerate(b)]
    excluded += [("b2", b) for b in values if secQ.degenerate(b)]
    bound = P.total_degree + Q.total_degree + 1
    # a nonconstant-in-x polynomial has at most deg constant sections
    assert len(excluded) < bound, "more degenerate parameters than the degree bound allows"
    s1 = [b for b in values if not secP.degenerate(b)]
    s2 = [b for b in values if not secQ.degenerate(b)]
    grid = [CurveParams(b1, b2) for b1 in s1 for b2 in s2]
    counts = [0] * len(grid)
    pairs = set()
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            if _intersection(secP, secQ, grid[i], grid[j]).one_dimensional:
                counts[i] += 1
                counts[j] += 1
                pairs.add((i, j))
    if threshold is None:
        threshold = default_threshold(P, Q)
    return ScatterReport(grid, counts, excluded, threshold, bound, pairs)
