"""Tests for posets with equivalence: normality, weights, rho, mu and reductions."""

from fractions import Fraction

import pytest

from reptype.core.errors import ClassTooSmall, NotReducible, SchemaError
from reptype.theory.equiv_posets import (
    SMALL,
    EquivPoset,
    classify_eqposet,
    grid,
    grid_union_poset,
    is_perfectly_chain,
    is_quasiantichain,
    p_tilde,
    reduce_dim3,
    reduce_normal1,
)
from reptype.theory.exact import INF
from reptype.theory.posets import (
    RepType,
    chain,
    classify_by_value,
    classify_poset,
    make_poset,
    width,
)
from reptype.theory.separating import rho_tuple


def _three_chain_class(extra_pairs=(), extra_labels=()):
    labels = ["c1", "c2", "c3", *extra_labels]
    pairs = [(0, 1), (1, 2), *extra_pairs]
    return EquivPoset.from_classes(make_poset(len(labels), pairs, labels), [[0, 1, 2]])


class TestConstruction:
    def test_unlisted_points_are_small(self, worked_eqposet):
        assert worked_eqposet.classes == ((0,), (1,), (2, 3), (4, 5))
        assert worked_eqposet.dimension == 2
        assert worked_eqposet.star(2) == 3

    def test_overlapping_classes(self):
        with pytest.raises(SchemaError):
            EquivPoset.from_classes(chain(3), [[0, 1], [1, 2]])

    def test_star_needs_dimension_two(self, worked_eqposet):
        with pytest.raises(SchemaError):
            worked_eqposet.star(0)


class TestNormality:
    """Normality degrees and the weight function of the six-point example."""

    def test_degrees(self, worked_eqposet):
        S = worked_eqposet
        assert S.normality_degree(0) == SMALL
        assert S.normality_degree(2) == 1
        assert S.normality_degree(4) == 2
        assert S.normality_degree(3) is None
        assert S.normality_degree(5) is None

    def test_conormality(self, worked_eqposet):
        assert worked_eqposet.conormality_degree(3) == 1
        assert worked_eqposet.conormality_degree(5) == 2
        assert worked_eqposet.conormality_degree(2) is None

    def test_incomparables(self, worked_eqposet):
        assert worked_eqposet.incomparables(2) == {1}
        assert worked_eqposet.incomparables(4) == {1, 3}

    def test_weights(self, worked_eqposet):
        assert p_tilde(worked_eqposet) == {0: 1, 1: 1, 2: INF, 3: 3, 4: INF, 5: 6}

    def test_structure(self, worked_eqposet):
        assert is_perfectly_chain(worked_eqposet)
        assert not is_quasiantichain(worked_eqposet)

    def test_classification(self, worked_eqposet):
        # the antichain {x*, y*, a} alone gives 3/2 + 12/7 + 1
        assert worked_eqposet.rho() >= Fraction(59, 14)
        assert worked_eqposet.mu() == 0
        assert classify_eqposet(worked_eqposet) == RepType.WILD


class TestMu:
    """mu over classes of more than two points."""

    def test_chain_class(self):
        assert _three_chain_class().mu() == 3

    def test_point_beside_class(self):
        S = _three_chain_class([], ["s"])
        assert S.mu() == 4

    def test_chain_beside_top(self):
        # s1 < s2 above c2 and incomparable to c3 only
        S = _three_chain_class([(1, 3), (3, 4)], ["s1", "s2"])
        assert S.mu() == Fraction(7, 2)

    def test_small_class(self, worked_eqposet):
        with pytest.raises(ClassTooSmall):
            worked_eqposet.mu_class((2, 3))


class TestReductions:
    def test_reduce_normal1(self, worked_eqposet):
        R = reduce_normal1(worked_eqposet, 2)
        assert R.base.labels == ("a", "b", "y", "y*", "x*.1", "x*.2", "x*.3")
        assert (2, 3) in R.classes
        assert R.normality_degree(2) == 1
        assert R.base.less(1, 4) and R.base.less(1, 6)
        assert classify_eqposet(R) == RepType.WILD

    def test_reduce_needs_one_normal(self, worked_eqposet):
        with pytest.raises(NotReducible):
            reduce_normal1(worked_eqposet, 4)

    def test_reduce_dim3(self):
        S = _three_chain_class()
        R = reduce_dim3(S, 0)
        assert R.n == 4
        assert R.dimension == 1
        assert width(R.base) == 2

    def test_reduce_dim3_needs_dimension_three(self, worked_eqposet):
        with pytest.raises(NotReducible):
            reduce_dim3(worked_eqposet, 4)

    def test_grid(self):
        G = grid(2, 3)
        assert G.n == 6
        assert G.less(0, 5)
        assert not G.comparable(1, 3)

    def test_grid_union(self):
        S = grid_union_poset(3, 1, 1)
        assert S.n == 6
        assert width(S) == 3

    def test_grid_union_domain(self):
        with pytest.raises(SchemaError):
            grid_union_poset(0, 1, 1)

    @pytest.mark.parametrize("u", range(1, 6))
    @pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2)])
    def test_grid_union_type(self, u, a, b):
        expected = classify_by_value(rho_tuple((u, a, b)))
        assert classify_poset(grid_union_poset(u, a, b)) == expected
        assert classify_poset(grid_union_poset(u, b, a)) == expected

    @pytest.mark.parametrize(
        "labels, pairs, x, expected",
        [
            (["a", "x", "x*"], [(1, 2), (0, 2)], 1, RepType.FINITE),
            (
                ["b1", "b2", "c1", "c2", "x", "x*"],
                [(0, 1), (2, 3), (4, 5), (4, 0), (4, 2)],
                4,
                RepType.TAME,
            ),
            (["a", "b", "c", "x", "x*"], [(3, 4), (3, 1), (3, 2)], 3, RepType.WILD),
        ],
    )
    def test_reduce_normal1_keeps_type(self, labels, pairs, x, expected):
        S = EquivPoset.from_classes(make_poset(len(labels), pairs, labels), [[x, x + 1]])
        assert is_perfectly_chain(S)
        R = reduce_normal1(S, x)
        assert R.dimension == 1
        # x* becomes a chain of p(x*) small points
        assert R.n == S.n - 2 + S.weights[x + 1]
        assert classify_eqposet(S) == classify_eqposet(R) == expected

    @pytest.mark.parametrize(
        "extra_pairs, extra_labels, expected",
        [
            ((), (), RepType.FINITE),
            ((), ("s",), RepType.TAME),
            (((1, 3), (3, 4)), ("s1", "s2"), RepType.FINITE),
        ],
    )
    def test_reduce_dim3_keeps_type(self, extra_pairs, extra_labels, expected):
        S = _three_chain_class(extra_pairs, extra_labels)
        R = reduce_dim3(S, 0)
        assert R.dimension == 1
        assert classify_eqposet(S) == classify_eqposet(R) == expected


class TestWildPatterns:
    """Antichain posets with equivalence realising the wild patterns."""

    def test_patterns_are_wild(self, critical_service):
        for name, S in critical_service.equivalence_patterns().items():
            assert classify_eqposet(S) == RepType.WILD, name

    def test_patterns_are_quasiantichains(self, critical_service):
        for name, S in critical_service.equivalence_patterns().items():
            assert is_quasiantichain(S), name
