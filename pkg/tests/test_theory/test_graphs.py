"""Tests for rho-degrees, Dynkin schemes and Coxeter graphs."""

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from reptype.core.errors import BadMatrix, Disconnected, NotCoxeter, SchemaError
from reptype.theory.exact import GOLDEN_HAT, INF, CosSq, Ordering
from reptype.theory.graphs import (
    GraphKind,
    LabeledGraph,
    classify_coxeter,
    classify_integral_fgraph,
    coxeter_group_is_finite,
    coxeter_matrix_to_graph,
    cycle_graph,
    expand_vgraph,
    forked_path,
    hat_transform,
    is_cyclic_edge,
    is_vf_simple,
    partial_degree,
    path_graph,
    rho_degree,
    rho_degrees,
    star_graph,
    worst_vertex,
)


@pytest.fixture
def xy_vgraph():
    """x - y with v(x) = 3 and v(y) = inf."""
    return LabeledGraph.from_edges([("x", "y")], v={"x": 3, "y": INF})


class TestRhoDegrees:
    """rho(v - 1) plus the f-weighted partial degrees."""

    def test_vgraph(self, xy_vgraph):
        assert rho_degrees(xy_vgraph) == {"x": Fraction(10, 3), "y": Fraction(7, 2)}

    def test_expansion_keeps_degrees(self, xy_vgraph):
        H = expand_vgraph(xy_vgraph)
        assert len(H.vertices) == 6
        assert {"a2^x", "a3^x", "b1^y", "b2^y"} <= set(H.vertices)
        assert rho_degree(H, "x") == Fraction(10, 3)
        assert rho_degree(H, "y") == Fraction(7, 2)

    def test_expansion_needs_unit_f(self):
        G = LabeledGraph.from_edges([("x", "y", 2)])
        with pytest.raises(SchemaError):
            expand_vgraph(G)

    def test_loop(self):
        G = cycle_graph(1)
        assert partial_degree(G, "x1", 0) == 4
        assert rho_degree(G, "x1") == 4

    def test_non_simple_tail(self):
        G = star_graph([1, 1, 1])
        # seen from a leaf, the centre has degree 3
        assert not is_vf_simple(G, "y1.1", 0)
        assert partial_degree(G, "y1.1", 0) == 2
        assert partial_degree(G, "c", 0) == 1

    def test_infinite_edge(self):
        G = LabeledGraph.from_edges([("x", "y", INF)])
        assert rho_degree(G, "x") == INF

    def test_worst_vertex(self, xy_vgraph):
        worst = worst_vertex(xy_vgraph)
        assert worst.vertex == "y"
        assert worst.ordering == Ordering.LESS

    def test_cyclic_edges(self):
        assert all(is_cyclic_edge(cycle_graph(3), k) for k in range(3))
        assert is_cyclic_edge(cycle_graph(1), 0)
        assert is_cyclic_edge(cycle_graph(2), 1)
        assert not is_cyclic_edge(path_graph(3), 0)

    def test_bad_labels(self):
        with pytest.raises(SchemaError):
            LabeledGraph.from_edges([("x", "y", 0)])
        with pytest.raises(SchemaError):
            LabeledGraph(["x", "x"])


class TestIntegralClassification:
    """Dynkin, extended Dynkin and wild f-graphs."""

    @pytest.mark.parametrize(
        "arms, kind, value",
        [
            ([1, 2, 2], GraphKind.DYNKIN, Fraction(11, 3)),
            ([2, 2, 2], GraphKind.EXTENDED_DYNKIN, Fraction(4)),
            ([2, 2, 3], GraphKind.WILD, Fraction(25, 6)),
        ],
    )
    def test_stars(self, arms, kind, value):
        result = classify_integral_fgraph(star_graph(arms))
        assert result.kind == kind
        assert result.witness.vertex == "c"
        assert result.witness.value == value

    def test_names(self, catalog_service):
        assert classify_integral_fgraph(star_graph([1, 2, 2]), catalog_service.name_of).name == "E6"
        assert classify_integral_fgraph(star_graph([2, 2, 2]), catalog_service.name_of).name == "~E6"

    def test_wild_has_no_name(self, catalog_service):
        result = classify_integral_fgraph(star_graph([2, 2, 3]), catalog_service.name_of)
        assert result.name is None

    def test_loop_is_extended(self):
        assert classify_integral_fgraph(cycle_graph(1)).kind == GraphKind.EXTENDED_DYNKIN

    def test_forked_path_is_dynkin(self):
        assert classify_integral_fgraph(forked_path(5)).kind == GraphKind.DYNKIN

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            classify_integral_fgraph(LabeledGraph(["x", "y"]))

    def test_vertex_weights_rejected(self, xy_vgraph):
        with pytest.raises(SchemaError):
            classify_integral_fgraph(xy_vgraph)


class TestCoxeterClassification:
    """Coxeter graphs through the hat transform."""

    def test_hat_transform(self):
        G = path_graph(5, {1: 3, 2: 4, 3: 5, 4: 7})
        hatted = hat_transform(G)
        assert hatted.vertices == G.vertices
        assert [e.f for e in hatted.edges] == [1, 2, GOLDEN_HAT, CosSq(7)]
        assert hat_transform(LabeledGraph.from_edges([("a", "b", INF)])).edges[0].f == 4

    def test_hat_transform_rejects_multigraphs(self):
        with pytest.raises(NotCoxeter):
            hat_transform(cycle_graph(2, default=3))

    def test_h3(self, catalog_service):
        G = path_graph(3, {2: 5}, default=3)
        result = classify_coxeter(G, catalog_service.name_of)
        assert result.kind == GraphKind.FINITE_TYPE
        assert result.witness.vertex == "x2"
        assert result.witness.approx == pytest.approx(3.618, abs=1e-3)
        assert result.name == "H3"

    def test_dihedral_seven(self):
        assert classify_coxeter(path_graph(2, {1: 7}, default=3)).kind == GraphKind.FINITE_TYPE

    def test_infinite_label(self):
        result = classify_coxeter(path_graph(2, {1: INF}, default=3))
        assert result.kind == GraphKind.AFFINE_TYPE

    def test_double_four(self):
        assert classify_coxeter(path_graph(3, {1: 4, 2: 4}, default=3)).kind == GraphKind.AFFINE_TYPE

    def test_triangle(self):
        assert classify_coxeter(cycle_graph(3, default=3)).kind == GraphKind.AFFINE_TYPE

    def test_neither(self):
        assert classify_coxeter(star_graph([2, 2, 3], default=3)).kind == GraphKind.NEITHER

    def test_label_two(self):
        with pytest.raises(NotCoxeter):
            classify_coxeter(path_graph(2, default=2))


class TestCoxeterMatrices:
    """Finiteness decided on the presentation itself."""

    @pytest.mark.parametrize(
        "matrix",
        [
            [[1, 3, 2], [3, 1, 5], [2, 5, 1]],
            [[1, 3, 2, 2], [3, 1, 4, 2], [2, 4, 1, 3], [2, 2, 3, 1]],
            [[1, 3, 2, 2], [3, 1, 3, 3], [2, 3, 1, 2], [2, 3, 2, 1]],
            [[1, 6], [6, 1]],
            [[1, 7], [7, 1]],
            [[1, 2], [2, 1]],
        ],
    )
    def test_finite(self, matrix):
        assert coxeter_group_is_finite(matrix)

    @pytest.mark.parametrize(
        "matrix",
        [
            [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
            [[1, "inf"], ["inf", 1]],
            [[1, 3, 3, 3, 3], [3, 1, 2, 2, 2], [3, 2, 1, 2, 2], [3, 2, 2, 1, 2], [3, 2, 2, 2, 1]],
        ],
    )
    def test_infinite(self, matrix):
        assert not coxeter_group_is_finite(matrix)

    @pytest.mark.parametrize("n", [4, 6])
    def test_b_family(self, n):
        matrix = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        matrix[n - 2][n - 1] = matrix[n - 1][n - 2] = 4
        assert coxeter_group_is_finite(matrix)

    def test_long_paths_with_special_label(self):
        n = 5
        base = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        five_at_end = [row[:] for row in base]
        five_at_end[3][4] = five_at_end[4][3] = 5
        four_in_middle = [row[:] for row in base]
        four_in_middle[1][2] = four_in_middle[2][1] = 4
        assert not coxeter_group_is_finite(five_at_end)
        assert not coxeter_group_is_finite(four_in_middle)

    def test_matrix_to_graph(self):
        G = coxeter_matrix_to_graph([[1, 3, 2], [3, 1, 5], [2, 5, 1]])
        assert G.vertices == ["s1", "s2", "s3"]
        assert [e.f for e in G.edges] == [3, 5]

    @pytest.mark.parametrize(
        "matrix",
        [[[1, 3], [4, 1]], [[2, 3], [3, 1]], [[1, 1], [1, 1]], [[1, 3]], []],
    )
    def test_bad_matrix(self, matrix):
        with pytest.raises(BadMatrix):
            coxeter_matrix_to_graph(matrix)


@st.composite
def coxeter_matrices(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    matrix = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i][j] = matrix[j][i] = draw(st.sampled_from([2, 2, 2, 3, 3, 4, 5, 6, 7, "inf"]))
    return matrix


class TestCoxeterCrossCheck:
    """The presentation test and the hat transform agree component by component."""

    @hyp_settings(max_examples=300, deadline=None)
    @given(coxeter_matrices())
    def test_random_matrices(self, matrix):
        G = coxeter_matrix_to_graph(matrix)
        by_graph = True
        for nodes in nx.connected_components(G.multigraph()):
            rows = sorted(int(name[1:]) - 1 for name in nodes)
            sub = [[matrix[i][j] for j in rows] for i in rows]
            kind = classify_coxeter(coxeter_matrix_to_graph(sub)).kind
            by_graph = by_graph and kind == GraphKind.FINITE_TYPE
        assert coxeter_group_is_finite(matrix) == by_graph, matrix
