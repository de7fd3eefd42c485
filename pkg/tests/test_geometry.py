import itertools

import pytest
from hypothesis import given, settings, strategies as st

from polyexpand.bipoly import BiPoly, exact_div
from polyexpand.errors import DegenerateParameters
from polyexpand.geometry import CurveParams, Intersection, intersection_dim, scatter_probe

x, y = BiPoly.x(), BiPoly.y()


def brute_same_curve(P, Q, b, bp, samples=range(-6, 7)):
    """Two curves with linear sections agree iff their point sets agree on samples."""
    c1 = {(P(a, b.b1), Q(a, b.b2)) for a in samples}
    c2 = {(P(a, bp.b1), Q(a, bp.b2)) for a in range(-60, 61)}
    return c1 <= c2


class TestIntersectionDim:
    def test_distinct_slopes(self):
        r = intersection_dim(x + y, x * y, CurveParams(1, 2), CurveParams(1, 3))
        assert r.verdict is Intersection.FINITE and r.witness is None

    def test_self_intersection(self):
        r = intersection_dim(x + y, x * y, CurveParams(1, 2), CurveParams(1, 2))
        assert r.one_dimensional
        # witness is s - t up to a scalar
        assert r.witness.lead_lex() == 1
        assert r.witness(1, 1) == 0 and r.witness.total_degree == 1

    def test_parallel_translate(self):
        r = intersection_dim(x + y, x + y, CurveParams(1, 3), CurveParams(2, 4))
        assert r.verdict is Intersection.ONE_DIMENSIONAL

    def test_degenerate(self):
        with pytest.raises(DegenerateParameters):
            intersection_dim(x * y, x + y, CurveParams(0, 1), CurveParams(1, 1))

    @given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
    @settings(max_examples=40)
    def test_symmetry_and_witness(self, a, b, c, d):
        P, Q = (x + y) ** 2, x + 2 * y
        b1, b2 = CurveParams(a, b), CurveParams(c, d)
        r, s = intersection_dim(P, Q, b1, b2), intersection_dim(P, Q, b2, b1)
        assert r.verdict is s.verdict
        if r.one_dimensional:
            F = BiPoly.from_uni(P.section_y(a), "x") - BiPoly.from_uni(P.section_y(c), "y")
            G = BiPoly.from_uni(Q.section_y(b), "x") - BiPoly.from_uni(Q.section_y(d), "y")
            assert exact_div(F, r.witness) is not None and exact_div(G, r.witness) is not None

    @pytest.mark.parametrize("b", list(itertools.product(range(1, 4), range(1, 4))))
    def test_self_is_one_dimensional(self, b):
        b = CurveParams(*b)
        assert intersection_dim(x ** 2 + y, x * y + y, b, b).one_dimensional

    def test_linear_curves_match_brute_force(self):
        P, Q = x + y, x + 2 * y
        for b, bp in itertools.product(itertools.product(range(1, 4), repeat=2), repeat=2):
            b, bp = CurveParams(*b), CurveParams(*bp)
            assert intersection_dim(P, Q, b, bp).one_dimensional == brute_same_curve(P, Q, b, bp)


class TestScatter:
    def test_sum_product_scattered(self):
        r = scatter_probe(x + y, x * y, range(1, 9))
        assert len(r.grid) == 64
        assert r.max_count == 0 and r.scattered

    def test_same_line_family(self):
        r = scatter_probe(x + y, x + y, range(1, 9))
        assert r.count_at(1, 1) >= 7
        assert not r.scattered

    def test_additive_pair_grows(self):
        small = scatter_probe((x + y) ** 2, x + 2 * y, range(1, 9))
        big = scatter_probe((x + y) ** 2, x + 2 * y, range(1, 13))
        assert big.max_count > small.max_count
        assert not small.scattered

    @pytest.mark.parametrize("P,Q", [
        ((x + y) ** 2, x + 2 * y),
        (x ** 2 * y ** 2 + 2 * x * y + 1, x ** 4 * y ** 2),
        (x ** 2 + y ** 2, 3 * x ** 2 + 5 * y ** 2 + 1),
    ])
    def test_structured_pairs_not_scattered(self, P, Q):
        assert not scatter_probe(P, Q, range(1, 13)).scattered

    def test_counts_symmetric(self):
        r = scatter_probe((x + y) ** 2, x + 2 * y, range(1, 6))
        total = sum(r.counts)
        assert total == 2 * len(r.pairs)

    def test_degenerate_excluded(self):
        r = scatter_probe(x * y, x + y, range(0, 4))
        assert r.excluded == [("b1", 0)]
        assert len(r.excluded) < r.exclusion_bound
        assert all(p.b1 != 0 for p in r.grid)

    def test_empty_sample(self):
        with pytest.raises(ValueError):
            scatter_probe(x + y, x * y, [])

    def test_threshold_is_configurable(self):
        r = scatter_probe(x + y, x + y, range(1, 5), threshold=100)
        assert r.scattered and r.threshold == 100

    def test_serialization(self):
        r = scatter_probe(x * y, x + y, range(0, 3))
        tree = r.to_tree()
        assert set(tree) == {"params", "counts", "excluded", "verdict"}
        assert tree["excluded"] == [["b1", "0"]]
        lines = r.to_table().splitlines()
        assert lines[0] == "b1\tb2\tcount"
        assert lines[-1].startswith("# max_count=")
