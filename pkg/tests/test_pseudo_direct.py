"""Pseudo-direct witnesses, product groups, decomposition, span systems."""

from fractions import Fraction

import pytest
from hypothesis import given

import hahnsolve as hs

from .conftest import QZ, F5Z, nonzero_exact_series

OV = hs.OrderedValue
INF = hs.INFINITY

EVEN = hs.SupportSubgroup("even", lambda g: g % 2 == 0)
ODD = hs.SupportSubgroup("odd", lambda g: g % 2 == 1)


def tup(*series):
    return hs.ProductElement(tuple(series))


class TestMinValuation:
    def test_least_component_value(self):
        assert hs.min_valuation(tup(QZ.monomial(1, 2), QZ.monomial(1, 3))) == OV(2)

    def test_all_zero_is_top(self):
        assert hs.min_valuation(tup(QZ.zero, QZ.zero)) == INF
        assert hs.min_valuation(hs.ProductElement(())) == INF

    def test_exact_component_can_undercut_a_blurry_zero(self):
        blurry = QZ.series([], OV(5))
        assert hs.min_valuation(tup(blurry, QZ.monomial(1, 2))) == OV(2)

    def test_blurry_zero_above_everything_blocks_the_minimum(self):
        blurry = QZ.series([], OV(5))
        with pytest.raises(hs.IndeterminateValuation) as excinfo:
            hs.min_valuation(tup(blurry, QZ.monomial(1, 7)))
        assert excinfo.value.bound == OV(5)

    def test_lone_blurry_zero_is_undetermined(self):
        with pytest.raises(hs.IndeterminateValuation):
            hs.min_valuation(tup(QZ.series([], OV(5))))


class TestSumAndProduct:
    def test_sum_map(self):
        t = tup(QZ.monomial(1, 2), QZ.monomial(1, 3))
        assert hs.sum_map(t) == QZ.series([(1, 2), (1, 3)])

    def test_empty_sum_rejected(self):
        with pytest.raises(ValueError):
            hs.sum_map(hs.ProductElement(()))

    def test_product_group_operations(self):
        product = hs.ProductGroup((QZ, QZ))
        a = tup(QZ.monomial(1, 1), QZ.monomial(2, 0))
        b = tup(QZ.monomial(1, 1), QZ.zero)
        assert product.group == hs.INTEGERS
        assert product.zero == tup(QZ.zero, QZ.zero)
        assert product.add(a, b) == tup(QZ.monomial(2, 1), QZ.monomial(2, 0))
        assert product.sub(a, b) == tup(QZ.zero, QZ.monomial(2, 0))
        assert product.valuation(a) == OV(0)

    def test_product_group_is_ultrametric(self):
        import random

        product = hs.ProductGroup((QZ, QZ))
        rng = random.Random(3)
        pairs = [
            (
                tup(hs.random_series(rng, QZ), hs.random_series(rng, QZ)),
                tup(hs.random_series(rng, QZ), hs.random_series(rng, QZ)),
            )
            for _ in range(100)
        ]
        assert hs.check_ultrametric(product, pairs).ok

    def test_sum_never_undercuts_the_minimum(self):
        samples = [
            tup(QZ.monomial(1, 2), QZ.monomial(-1, 2)),
            tup(QZ.series([(1, 0), (1, 1)]), QZ.monomial(-1, 0)),
            tup(QZ.series([(1, 1)], OV(4)), QZ.monomial(2, 0)),
        ]
        report = hs.check_sum_value_bound(samples)
        assert report.ok
        assert report.checked == 3


class TestWitnessChecker:
    def test_assigned_leading_term_is_a_witness(self):
        a = QZ.monomial(1, 2)
        assert hs.check_pseudo_direct_witness(a, tup(a, QZ.zero))

    def test_value_mismatch_fails(self):
        # the tuple sums to something of higher value than the target
        a = QZ.monomial(1, 2)
        assert not hs.check_pseudo_direct_witness(a, tup(QZ.zero, QZ.monomial(1, 3)))

    def test_zero_tuple_fails_for_nonzero_target(self):
        a = QZ.monomial(1, 2)
        assert not hs.check_pseudo_direct_witness(a, tup(QZ.zero, QZ.zero))

    def test_cancelling_components_fail(self):
        # components of value 0 summing to value 1 break the first condition
        a = QZ.monomial(2, 1)
        t = tup(QZ.series([(1, 0), (2, 1)]), QZ.monomial(-1, 0))
        assert not hs.check_pseudo_direct_witness(a, t)


class TestSupportSection:
    def test_leading_term_goes_to_matching_subgroup(self):
        a = QZ.series([(1, 3), (1, 6)])
        t = hs.pseudo_direct_section([EVEN, ODD], a)
        assert t == tup(QZ.zero, QZ.monomial(1, 3))

    def test_lowest_index_wins_ties(self):
        everything = hs.SupportSubgroup("all", lambda g: True)
        t = hs.pseudo_direct_section([everything, EVEN], QZ.monomial(1, 2))
        assert t == tup(QZ.monomial(1, 2), QZ.zero)

    def test_unmatched_exponent_is_not_pseudo_direct(self):
        with pytest.raises(hs.NotPseudoDirect) as excinfo:
            hs.pseudo_direct_section([EVEN], QZ.monomial(1, 3))
        assert "3" in str(excinfo.value)

    def test_no_subgroups_rejected(self):
        with pytest.raises(ValueError):
            hs.pseudo_direct_section([], QZ.monomial(1, 1))

    def test_mixed_kinds_rejected(self):
        span = hs.SpanSubgroup("s", (QZ.monomial(1, 0),))
        with pytest.raises(ValueError):
            hs.pseudo_direct_section([EVEN, span], QZ.monomial(1, 1))


class TestDecompose:
    def test_even_odd_split(self):
        a = QZ.series([(1, -2), (3, 0), (1, 3), (2, 4)])
        parts = hs.decompose([EVEN, ODD], a)
        assert parts.components[0] == QZ.series([(1, -2), (3, 0), (2, 4)])
        assert parts.components[1] == QZ.monomial(1, 3)
        assert hs.sum_map(parts) == a

    def test_prime_field_split(self):
        a = F5Z.series([(1, -2), (1, 1), (1, 4)])
        result = hs.decompose_solve([EVEN, ODD], a)
        assert result.exact
        assert result.iterations == 3
        assert result.solution.components[0] == F5Z.series([(1, -2), (1, 4)])
        assert result.solution.components[1] == F5Z.monomial(1, 1)
        assert hs.check_pseudo_direct_witness(a, result.solution)

    def test_zero_target(self):
        result = hs.decompose_solve([EVEN, ODD], QZ.zero)
        assert result.exact
        assert result.iterations == 0
        assert result.solution == hs.ProductGroup((QZ, QZ)).zero

    def test_three_way_split(self):
        subs = [
            hs.parse_subgroup(hs.QQ, hs.INTEGERS, "mod:3:0"),
            hs.parse_subgroup(hs.QQ, hs.INTEGERS, "mod:3:1"),
            hs.parse_subgroup(hs.QQ, hs.INTEGERS, "mod:3:2"),
        ]
        a = QZ.series([(1, 0), (2, 1), (3, 2), (4, 3), (5, 7)])
        parts = hs.decompose(subs, a)
        assert parts.components[0] == QZ.series([(1, 0), (4, 3)])
        assert parts.components[1] == QZ.series([(2, 1), (5, 7)])
        assert parts.components[2] == QZ.monomial(3, 2)

    def test_blurry_target_to_its_bound(self):
        a = QZ.series([(1, 1), (1, 2)], OV(4))
        result = hs.decompose_solve([EVEN, ODD], a, precision=OV(4))
        assert not result.exact
        assert result.residual_value == OV(4)
        assert result.solution.components[0] == QZ.monomial(1, 2)
        assert result.solution.components[1] == QZ.monomial(1, 1)

    def test_unsplittable_target_names_residual(self):
        a = QZ.series([(1, 2), (1, 3)])
        only_even = [EVEN]
        with pytest.raises(hs.NotPseudoDirect) as excinfo:
            hs.decompose(only_even, a)
        assert excinfo.value.residual == QZ.monomial(1, 3)

    @given(nonzero_exact_series(max_terms=6))
    def test_even_odd_matches_parity_filter(self, a):
        parts = hs.decompose([EVEN, ODD], a)
        evens = QZ.series([(c, g) for c, g in a.terms if g % 2 == 0])
        odds = QZ.series([(c, g) for c, g in a.terms if g % 2 == 1])
        assert parts.components == (evens, odds)
        assert hs.check_pseudo_direct_witness(a, parts) or not a.terms


class TestSpanSubgroups:
    def test_membership(self):
        sub = hs.SpanSubgroup("line", (QZ.series([(1, 0), (1, 1)]),))
        assert sub.contains_series(QZ.series([(2, 0), (2, 1)]))
        assert sub.contains_series(QZ.zero)
        assert not sub.contains_series(QZ.series([(1, 0), (2, 1)]))

    def test_generators_must_be_exact_and_present(self):
        with pytest.raises(ValueError):
            hs.SpanSubgroup("bad", ())
        with pytest.raises(ValueError):
            hs.SpanSubgroup("bad", (QZ.series([(1, 0)], OV(3)),))

    def test_two_step_span_decomposition(self):
        one_plus_t = hs.SpanSubgroup("a1", (QZ.series([(1, 0), (1, 1)]),))
        just_t = hs.SpanSubgroup("a2", (QZ.monomial(1, 1),))
        a = QZ.series([(2, 0), (5, 1)])
        result = hs.decompose_solve([one_plus_t, just_t], a)
        assert result.exact
        assert result.iterations == 2
        assert result.solution.components[0] == QZ.series([(2, 0), (2, 1)])
        assert result.solution.components[1] == QZ.monomial(3, 1)

    def test_rank_one_counterexample_is_exact(self):
        # span{1 + t} against span{1}: the only combination summing to t has
        # both components of value 0, so no witness can exist
        a1 = hs.SpanSubgroup("a1", (QZ.series([(1, 0), (1, 1)]),))
        a2 = hs.SpanSubgroup("a2", (QZ.monomial(1, 0),))
        with pytest.raises(hs.NotPseudoDirect) as excinfo:
            hs.decompose([a1, a2], QZ.monomial(1, 1))
        assert "unique cancelling combination" in str(excinfo.value)

    def test_unreachable_leading_part(self):
        sub = hs.SpanSubgroup("high", (QZ.monomial(1, 2),))
        with pytest.raises(hs.NotPseudoDirect) as excinfo:
            hs.decompose([sub], QZ.monomial(1, 1))
        assert "no span combination" in str(excinfo.value)

    def test_free_direction_found_by_grid_search(self):
        # the pivot solution puts value-0 mass in both components; the integer
        # offset k = -1 along the nullspace moves everything into the second
        a1 = hs.SpanSubgroup("a1", (QZ.monomial(1, 0),))
        a2 = hs.SpanSubgroup(
            "a2", (QZ.series([(1, 0), (1, 1)]), QZ.series([(1, 0), (-1, 1)]))
        )
        parts = hs.decompose([a1, a2], QZ.monomial(2, 1))
        assert parts.components[0] == QZ.zero
        assert parts.components[1] == QZ.monomial(2, 1)

    def test_bounded_search_reports_honestly(self):
        # the witness needs the fractional offset k = -1/2, outside the
        # integer grid, so the verdict must carry the bounded-search caveat
        a1 = hs.SpanSubgroup("a1", (QZ.monomial(1, 0),))
        a2 = hs.SpanSubgroup(
            "a2", (QZ.series([(1, 0), (1, 1)]), QZ.series([(1, 0), (-1, 1)]))
        )
        with pytest.raises(hs.NotPseudoDirect) as excinfo:
            hs.decompose([a1, a2], QZ.monomial(1, 1))
        assert "bounded search" in str(excinfo.value)

    def test_span_needs_exact_target(self):
        sub = hs.SpanSubgroup("line", (QZ.monomial(1, 1),))
        with pytest.raises(ValueError):
            hs.decompose([sub], QZ.series([(1, 1)], OV(5)))


class TestNestAssembly:
    def test_componentwise_intersection(self):
        product = hs.ProductGroup((QZ, QZ))
        small = QZ.series([(1, 2), (1, 5)])
        nests = [
            [hs.Ball(QZ, QZ.monomial(1, 2), OV(3)), hs.Ball(QZ, small, OV(4))],
            [],
        ]
        t = hs.product_nest_intersect(product, nests)
        assert t == tup(small, QZ.zero)

    def test_one_list_per_component(self):
        product = hs.ProductGroup((QZ, QZ))
        with pytest.raises(ValueError):
            hs.product_nest_intersect(product, [[]])


class TestParseSubgroup:
    def test_parity_patterns(self):
        even = hs.parse_subgroup(hs.QQ, hs.INTEGERS, "even")
        odd = hs.parse_subgroup(hs.QQ, hs.INTEGERS, "odd")
        assert even.contains_series(QZ.series([(1, -2), (1, 0)]))
        assert odd.contains_series(QZ.monomial(1, -1))
        assert not odd.contains_series(QZ.monomial(1, 2))

    def test_mod_pattern_handles_negatives(self):
        sub = hs.parse_subgroup(hs.QQ, hs.INTEGERS, "mod:3:1")
        assert sub.contains_series(QZ.monomial(1, -2))
        assert sub.contains_series(QZ.monomial(1, 4))
        assert not sub.contains_series(QZ.monomial(1, 3))

    def test_set_pattern(self):
        sub = hs.parse_subgroup(hs.QQ, hs.INTEGERS, "set:{-2, 5}")
        assert sub.contains_series(QZ.series([(1, -2), (1, 5)]))
        assert not sub.contains_series(QZ.monomial(1, 0))

    def test_span_pattern(self):
        sub = hs.parse_subgroup(hs.QQ, hs.INTEGERS, "span:{1 + t^1; t^2}")
        assert isinstance(sub, hs.SpanSubgroup)
        assert sub.contains_series(QZ.series([(3, 0), (3, 1), (1, 2)]))
        assert not sub.contains_series(QZ.monomial(1, 1))

    @pytest.mark.parametrize(
        "bad", ["prime", "mod:0:1", "mod:x:1", "set:{", "span:{}", "mod:3"]
    )
    def test_bad_patterns(self, bad):
        with pytest.raises(hs.ParseError):
            hs.parse_subgroup(hs.QQ, hs.INTEGERS, bad)
