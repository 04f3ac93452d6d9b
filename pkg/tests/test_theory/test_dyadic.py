"""Tests for biequivalences, dyadic sets and the finiteness criterion."""

from fractions import Fraction

import pytest

from reptype.core.errors import AxiomViolation, CapExceeded, NotComparable, SchemaError
from reptype.theory.dyadic import (
    BorderingSet,
    DyadicSet,
    PairRelation,
    bordering_sets,
    classify_dyadic,
    edge_shortness,
    enumerate_dyadic_sets,
    equipment,
    is_critical_dyadic,
    is_transitive_biequiv,
    motif_occurrences,
    mu_sigma,
    necessary_bounds,
    p_hat,
    split_components,
    strips,
    validate_biequivalence,
)
from reptype.theory.equiv_posets import grid
from reptype.theory.exact import Infinity
from reptype.theory.posets import antichain, chain, make_poset, ordinal_sum


def _plain(base):
    return DyadicSet.build(base, [])


class TestAxioms:
    """Building biequivalences and rejecting broken ones."""

    def test_chain_dyadic(self, chain_dyadic):
        D = chain_dyadic
        assert D.classes == ((0, 2), (1, 3))
        assert D.pair_classes == (((0, 1), (2, 3)),)
        assert D.biequiv_rank == 2
        assert validate_biequivalence(D) is None

    def test_shared_component(self):
        with pytest.raises(AxiomViolation) as exc:
            DyadicSet.build(chain(3), [[(0, 1), (0, 2)]])
        assert exc.value.axiom == "i"

    def test_mixed_class(self):
        with pytest.raises(AxiomViolation) as exc:
            DyadicSet.build(chain(3), [[(0, 0), (1, 2)]])
        assert exc.value.axiom == "iii"

    def test_degenerate_pairs_merge_points(self):
        D = DyadicSet.build(chain(2), [[(0, 0), (1, 1)]])
        assert D.classes == ((0, 1),)

    def test_pair_ends_need_equivalent_points(self):
        with pytest.raises(AxiomViolation) as exc:
            DyadicSet.build(chain(4), [[(0, 1), (2, 3)]])
        assert exc.value.axiom == "ii"

    def test_incomparable_class(self):
        with pytest.raises(AxiomViolation) as exc:
            DyadicSet.build(antichain(2), [], [[0, 1]])
        assert exc.value.axiom == "dyadic"

    def test_pair_must_be_strict(self):
        with pytest.raises(SchemaError):
            DyadicSet.build(chain(2), [[(1, 0), (0, 1)]])


class TestPairRelations:
    def test_relations(self, chain_dyadic):
        D = chain_dyadic
        assert D.relation(0, 1) == PairRelation.DOUBLE_ARROW
        assert D.relation(0, 2) == PairRelation.TRIANGLE
        assert D.relation(2, 0) == PairRelation.ABOVE
        assert D.rank(0, 1) == 2
        assert D.equiv((0, 1), (2, 3))

    def test_incomparable(self, equipped_dyadic):
        assert equipped_dyadic.relation(0, 4) == PairRelation.INCOMPARABLE

    def test_pair_class_needs_order(self, chain_dyadic):
        with pytest.raises(NotComparable):
            chain_dyadic.pair_class(1, 0)

    def test_transitive(self, chain_dyadic):
        assert is_transitive_biequiv(chain_dyadic)

    def test_composed_pairs(self):
        # rows (0, 1, 2) < (3, 4, 5) of a 2x3 grid, columns as classes
        classes = [[0, 3], [1, 4], [2, 5]]
        steps = [[(0, 1), (3, 4)], [(1, 2), (4, 5)]]
        assert not is_transitive_biequiv(DyadicSet.build(grid(2, 3), steps, classes))
        closed = DyadicSet.build(grid(2, 3), steps + [[(0, 2), (3, 5)]], classes)
        assert is_transitive_biequiv(closed)

    def test_p_hat(self, chain_dyadic):
        assert p_hat(chain_dyadic) == {0: 2, 1: 2, 2: 2, 3: 2}

    def test_restrict(self, chain_dyadic):
        D = chain_dyadic.restrict(0b0011)
        assert D.n == 2
        assert D.pair_classes == ()
        assert D.classes == ((0,), (1,))


class TestEdges:
    """Edges, shortness, strips and equipment."""

    def test_edges(self, chain_dyadic):
        assert chain_dyadic.edges == ((0, 1), (2, 3))
        assert chain_dyadic.dual_edge((0, 1)) == (2, 3)
        assert chain_dyadic.length((0, 1)) == 0

    def test_shortness_by_containment(self, chain_dyadic):
        kinds = edge_shortness(chain_dyadic, "containment")
        assert all(k.short and k.maximal for k in kinds.values())

    def test_shortness_literal(self, chain_dyadic):
        kinds = edge_shortness(chain_dyadic, "literal")
        assert kinds[(0, 1)].long
        assert kinds[(2, 3)].short

    def test_strips(self, chain_dyadic):
        assert strips(chain_dyadic, "containment") == [(0, 1), (2, 3)]

    def test_equipment(self, chain_dyadic, equipped_dyadic):
        bare = equipment(chain_dyadic, (0, 1))
        assert not bare.equipped
        assert bare.eq == 0
        ctx = equipment(equipped_dyadic, (0, 1))
        assert ctx.equipped
        assert ctx.eq == 2
        assert ctx.linearly_equipped

    def test_no_motif_between_dual_edges(self, chain_dyadic):
        assert list(motif_occurrences(chain_dyadic)) == []


class TestBorderingSets:
    """Bordering sets of the edge (x1, x2) and their mu values."""

    def test_unequipped_edge(self, chain_dyadic):
        assert list(bordering_sets(chain_dyadic, (0, 1))) == [BorderingSet()]
        assert mu_sigma(chain_dyadic, (0, 1), BorderingSet()) == 0

    def test_comparable_points_stay_in_one_part(self, equipped_dyadic):
        found = list(bordering_sets(equipped_dyadic, (0, 1)))
        # c1 < c2, so at most one part is non-empty
        assert len(found) == 10
        assert all(X.points & ~0b110000 == 0 for X in found)
        assert BorderingSet(z_e=0b110000) in found
        assert BorderingSet(z_minus=0b010000, z_e=0b100000) not in found

    def test_mu_values(self, equipped_dyadic):
        assert mu_sigma(equipped_dyadic, (0, 1), BorderingSet()) == 0
        assert mu_sigma(equipped_dyadic, (0, 1), BorderingSet(z_e=0b010000)) == 2
        assert mu_sigma(equipped_dyadic, (0, 1), BorderingSet(z_e=0b110000)) == 4


class TestClassification:
    """Finite versus NotFinite for dyadic sets."""

    def test_chain_is_finite(self, chain_dyadic):
        verdict = classify_dyadic(chain_dyadic)
        assert verdict.finite
        assert verdict.failure is None
        assert verdict.rho_tilde == Fraction(16, 9)

    def test_necessary_bounds(self, chain_dyadic):
        bounds = necessary_bounds(chain_dyadic)
        assert bounds.rho == 2
        assert bounds.mu == 0
        assert bounds.holds

    def test_rho_failure(self):
        verdict = classify_dyadic(_plain(antichain(4)))
        assert not verdict.finite
        assert verdict.reason == "rho"
        assert verdict.rho_tilde == 4

    def test_edge_failure(self, equipped_dyadic):
        verdict = classify_dyadic(equipped_dyadic, scope="all")
        assert not verdict.finite
        assert verdict.rho_tilde == Fraction(164, 51)
        failure = verdict.failure
        assert failure.condition == "A"
        assert failure.edge == (0, 1)
        assert failure.detail["mu"] == 4
        assert failure.detail["parameters"].as_tuple() == (0, 2, 2, 0, 0)
        assert failure.detail["bordering"] == BorderingSet(z_e=0b110000)

    def test_long_scope_skips_short_edges(self, equipped_dyadic):
        verdict = classify_dyadic(equipped_dyadic, order="containment", scope="long")
        assert verdict.finite

    def test_components(self):
        D = _plain(ordinal_sum(antichain(2), antichain(2)))
        parts = split_components(D)
        assert [p.n for p in parts] == [2, 2]
        verdict = classify_dyadic(D)
        assert verdict.finite
        assert len(verdict.components) == 2
        assert verdict.rho_tilde == 2

    def test_components_run_bottom_first(self):
        base = make_poset(4, [(2, 0), (2, 1), (3, 0), (3, 1)], ["t1", "t2", "b1", "b2"])
        parts = split_components(_plain(base))
        assert [p.base.labels for p in parts] == [("b1", "b2"), ("t1", "t2")]

    def test_class_around_a_summand_does_not_split(self):
        # {0, 2} ties the bottom of the chain to its top around 1
        D = DyadicSet.build(chain(3), [[(0, 0), (2, 2)]])
        assert split_components(D) is None
        verdict = classify_dyadic(D)
        assert verdict.finite == (verdict.failure is None)

    def test_every_small_dyadic_set(self):
        for D in enumerate_dyadic_sets(5):
            verdict = classify_dyadic(D)
            if verdict.finite:
                assert verdict.failure is None
                assert verdict.rho_tilde < 4
            else:
                assert verdict.failure is not None

    def test_cap(self):
        with pytest.raises(CapExceeded):
            classify_dyadic(_plain(antichain(9)))


class TestSmallRhoStructure:
    """What rho(D~) < 4 forces on the big points of small dyadic sets."""

    def test_big_points_or_partners_are_comparable(self):
        for D in enumerate_dyadic_sets(5):
            rho = D.tilde().rho()
            if isinstance(rho, Infinity) or rho >= 4:
                continue
            big = [i for i in range(D.n) if D.dim(i) == 2]
            for a in big:
                for b in big:
                    if a == b or D.base.comparable(a, b):
                        continue
                    assert D.base.comparable(D.star(a), D.star(b)), D.base.covers()


class TestCriticality:
    def test_four_point_antichain_is_critical(self):
        assert is_critical_dyadic(_plain(antichain(4)))

    def test_finite_set_is_not_critical(self, chain_dyadic):
        assert not is_critical_dyadic(chain_dyadic)

    def test_enumeration(self):
        assert len(list(enumerate_dyadic_sets(2))) == 4

    def test_enumerated_sets_are_valid(self):
        for D in enumerate_dyadic_sets(3):
            D.validate()
            assert all(len(c) <= 2 for c in D.classes)

    def test_critical_sets_are_transitive(self):
        for D in enumerate_dyadic_sets(5):
            if is_critical_dyadic(D):
                assert is_transitive_biequiv(D)

    def test_pairs_in_enumeration(self):
        found = [D for D in enumerate_dyadic_sets(4, min_points=4) if D.pair_classes]
        assert any(D.base.is_chain() for D in found)
        assert all(D.edges for D in found)
