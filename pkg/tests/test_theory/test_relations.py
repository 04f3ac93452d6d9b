"""Tests for the exact norm, P and P-faithfulness of relations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from reptype.core.errors import CapExceeded, DimensionMismatch, InputError, SchemaError
from reptype.theory.exact import INF
from reptype.theory.posets import antichain, chain, make_poset
from reptype.theory.relations import (
    Relation,
    disjoint_union,
    is_p_faithful,
    norm,
    p_value,
    quadratic_value,
    stationary_candidates,
    twins,
)


@st.composite
def reflexive_relations(draw, max_n=4):
    n = draw(st.integers(min_value=1, max_value=max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    rows = tuple(tuple(i == j or bits[i * n + j] for j in range(n)) for i in range(n))
    return Relation(n, rows)


class TestConstruction:
    """Building relations from pairs and 0/1 rows."""

    def test_from_pairs(self):
        R = Relation.from_pairs(2, [(0, 0), (1, 1), (0, 1)])
        assert R.to_matrix() == ["11", "01"]
        assert R.is_reflexive

    def test_pair_out_of_range(self):
        with pytest.raises(SchemaError):
            Relation.from_pairs(2, [(0, 2)])

    def test_from_matrix(self):
        R = Relation.from_matrix(["110", "010", "011"])
        assert R.n == 3
        assert R.R(0, 1) == 1 and R.R(1, 0) == 0
        assert R.r(0, 0) == 2
        assert R.r(0, 1) == 1

    @pytest.mark.parametrize("rows", [["10", "1"], ["12", "01"], ["1"] * 2])
    def test_bad_rows(self, rows):
        with pytest.raises(SchemaError):
            Relation.from_matrix(rows)

    def test_remove(self):
        R = chain(3).to_relation().remove(1)
        assert R.to_matrix() == ["11", "01"]


class TestNorm:
    """The exact minimum of f_R over the simplex."""

    @pytest.mark.parametrize("n", range(1, 13))
    def test_chain_law(self, n):
        assert p_value(chain(n).to_relation()) == Fraction(2 * n, n + 1)

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_complete(self, n):
        cert = norm(Relation.complete(n))
        assert cert.value == 1
        assert cert.p == 1

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_equality(self, n):
        assert norm(Relation.equality(n)).value == Fraction(1, n)
        assert p_value(Relation.equality(n)) == n

    def test_n_hat(self, n_hat_relation):
        assert p_value(n_hat_relation) == Fraction(12, 5)

    def test_four_point_antichain(self):
        assert p_value(antichain(4).to_relation()) == 4

    def test_witness_attains_value(self, chain3):
        R = chain3.to_relation()
        cert = norm(R)
        assert cert.witness == (Fraction(1, 3),) * 3
        assert cert.support == (0, 1, 2)
        assert quadratic_value(R, cert.witness) == cert.value == Fraction(2, 3)

    def test_witness_on_simplex(self, n_hat_relation):
        cert = norm(n_hat_relation)
        assert sum(cert.witness) == 1
        assert all(c >= 0 for c in cert.witness)
        assert quadratic_value(n_hat_relation, cert.witness) == Fraction(5, 12)

    def test_non_reflexive_is_infinite(self, caplog):
        R = Relation.from_pairs(2, [(0, 1)])
        assert p_value(R) == INF
        assert "non-reflexive" in caplog.text

    def test_empty_relation(self):
        assert p_value(Relation(0, ())) == 0
        with pytest.raises(InputError):
            norm(Relation(0, ()))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            stationary_candidates(Relation.equality(5), cap=4)

    def test_quadratic_value_length(self, chain3):
        with pytest.raises(DimensionMismatch):
            quadratic_value(chain3.to_relation(), [Fraction(1)])

    @hyp_settings(max_examples=50, deadline=None)
    @given(reflexive_relations(max_n=5), reflexive_relations(max_n=5))
    def test_disjoint_union_adds_reciprocals(self, R1, R2):
        joined = disjoint_union(R1, R2)
        assert 1 / norm(joined).value == 1 / norm(R1).value + 1 / norm(R2).value

    @hyp_settings(max_examples=25, deadline=None)
    @given(reflexive_relations())
    def test_norm_between_bounds(self, R):
        value = norm(R).value
        assert Fraction(1, R.n) <= value <= 1


class TestFaithfulness:
    """Removing any element must strictly lower P."""

    def test_chain_is_faithful(self, chain3):
        report = is_p_faithful(chain3.to_relation())
        assert report.faithful
        assert report.p == Fraction(3, 2)
        assert report.witness is None
        assert report.reduced == {0: Fraction(4, 3), 1: Fraction(4, 3), 2: Fraction(4, 3)}

    def test_n_hat_is_faithful(self, n_hat_relation):
        report = is_p_faithful(n_hat_relation)
        assert report.faithful
        assert all(p < Fraction(12, 5) for p in report.reduced.values())

    def test_complete_is_not_faithful(self):
        report = is_p_faithful(Relation.complete(3))
        assert not report.faithful
        assert report.witness == 0
        assert report.reduced[0] == 1

    def test_v_poset_is_not_faithful(self, v_poset):
        report = is_p_faithful(v_poset.to_relation())
        assert not report.faithful
        assert report.p == 2
        assert report.witness == 0

    def test_requires_reflexive(self):
        with pytest.raises(InputError):
            is_p_faithful(Relation.from_pairs(2, [(0, 1)]))


class TestTwins:
    def test_v_poset_twins(self, v_poset):
        assert (1, 2) in twins(v_poset.to_relation())

    def test_isolated_point_is_no_twin(self):
        S = make_poset(3, [(0, 1)])
        assert twins(S.to_relation()) == {(0, 1)}
