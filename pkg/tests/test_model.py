import pytest

from circforest.errors import (
    BadArity,
    DisconnectedBase,
    FiberCountMismatch,
    JumpTooLargeForN,
    LoopInBase,
    NonIncreasingJumps,
)
from circforest.families import BUILTIN_FAMILIES, build_family, path_graph, star_graph
from circforest.model import (
    BaseGraph,
    FiberSpec,
    edge_list_text,
    expand,
    graph_text,
    laplacian,
    make_foliation,
)
from circforest.algebra import det_exact

PETERSEN_EDGES = {
    # outer 5-cycle, spokes, inner pentagram (0-based, outer 0..4, inner 5..9)
    *[(i, (i + 1) % 5) for i in range(5)],
    *[(i, i + 5) for i in range(5)],
    *[(5 + i, 5 + (i + 2) % 5) for i in range(5)],
}


def normalized(edges):
    return {(min(u, v), max(u, v)) for u, v in edges}


class TestConstruction:
    def test_single_vertex(self):
        spec = make_foliation(BaseGraph([[0]]), [FiberSpec()])
        assert spec.vertex_count == 1
        assert spec.max_jump == 0
        assert spec.shift == 0

    def test_gp(self):
        spec = make_foliation(path_graph(2), [[2], [1]])
        assert spec == build_family("GP(n,2)")
        assert spec.degrees == (1, 1)

    def test_y(self):
        spec = make_foliation(star_graph(3), [[1], [1], [1], []])
        assert spec == build_family("Y(n;1,1,1)")
        assert spec.empty_vertices == (3,)

    def test_loop(self):
        with pytest.raises(LoopInBase):
            BaseGraph([[1]])
        with pytest.raises(LoopInBase):
            BaseGraph.from_edges(2, [(1, 1)])

    def test_fiber_count(self):
        with pytest.raises(FiberCountMismatch):
            make_foliation(path_graph(2), [[1]])

    @pytest.mark.parametrize("jumps", [[2, 1], [1, 1], [0], [-1]])
    def test_bad_jumps(self, jumps):
        with pytest.raises(NonIncreasingJumps):
            FiberSpec(jumps)

    def test_disconnected(self):
        base = BaseGraph([[0, 0], [0, 0]])
        with pytest.raises(DisconnectedBase):
            make_foliation(base, [[1], [1]])
        with pytest.warns(UserWarning):
            spec = make_foliation(base, [[1], [1]], allow_disconnected=True)
        assert spec.vertex_count == 2

    def test_asymmetric(self):
        with pytest.raises(ValueError):
            BaseGraph([[0, 1], [0, 0]])

    def test_multigraph_degrees(self):
        base = BaseGraph.from_edges(3, [(0, 1, 2), (1, 2)])
        assert base.degrees == (2, 3, 1)
        assert base.edge_count == 3


class TestExpand:
    def test_petersen(self):
        g = expand(build_family("GP(n,2)"), 5)
        assert g.vertex_count == 10
        assert g.edge_count == 15
        assert set(g.degree_sequence()) == {3}
        # layer k of fiber i is vertex i*5 + k: fiber 0 has jump 2 (inner star), fiber 1 jump 1
        relabel = {i: (i + 5) % 10 for i in range(10)}
        edges = normalized((relabel[u], relabel[v]) for u, v, _ in g.edges)
        assert edges == normalized(PETERSEN_EDGES)

    def test_four_cycle(self):
        g = expand(build_family("C(n;1)"), 4)
        assert normalized((u, v) for u, v, _ in g.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}

    def test_torus(self):
        g = expand(build_family("T(n,3)"), 3)
        assert g.vertex_count == 9
        assert set(g.degree_sequence()) == {4}

    def test_too_small(self):
        with pytest.raises(JumpTooLargeForN):
            expand(build_family("GP(n,2)"), 4)

    @pytest.mark.parametrize("text", BUILTIN_FAMILIES)
    @pytest.mark.parametrize("offset", [1, 4])
    def test_counts_and_degrees(self, text, offset):
        spec = build_family(text)
        n = 2 * spec.max_jump + offset
        g = expand(spec, n)
        nonempty = sum(len(f.jumps) for f in spec.fibers)
        assert g.vertex_count == n * spec.vertex_count
        assert g.edge_count == n * (spec.base.edge_count + nonempty)
        deg = g.degree_sequence()
        for idx, d in enumerate(deg):
            _, i = g.label(idx)
            assert d == spec.degrees[i] + 2 * len(spec.fibers[i].jumps)

    @pytest.mark.parametrize("text", ["GP(n,2)", "Y(n;1,1,1)", "I(n,2,3)"])
    def test_shift_automorphism(self, text):
        spec = build_family(text)
        n = 2 * spec.max_jump + 3
        g = expand(spec, n)
        edges = {(u, v): c for u, v, c in g.edges}
        for (u, v), c in edges.items():
            (ku, iu), (kv, iv) = g.label(u), g.label(v)
            a, b = g.index(ku + 1, iu), g.index(kv + 1, iv)
            assert edges[(min(a, b), max(a, b))] == c


class TestLaplacian:
    def test_isolated(self):
        g = expand(build_family("C(n;[])"), 1)
        assert laplacian(g) == [[0]]

    def test_triangle(self):
        assert laplacian(expand(build_family("C(n;1)"), 3)) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]

    @pytest.mark.parametrize("text", BUILTIN_FAMILIES)
    def test_properties(self, text):
        spec = build_family(text)
        lap = laplacian(expand(spec, 2 * spec.max_jump + 2))
        size = len(lap)
        assert all(sum(row) == 0 for row in lap)
        assert all(lap[i][j] == lap[j][i] for i in range(size) for j in range(size))
        shifted = [[v + (i == j) for j, v in enumerate(row)] for i, row in enumerate(lap)]
        assert det_exact(shifted) > 0

    def test_petersen(self):
        lap = laplacian(expand(build_family("GP(n,2)"), 5))
        assert [lap[i][i] for i in range(10)] == [3] * 10


class TestFamilies:
    def test_gp_is_i(self):
        assert build_family("I(n,3,1)") == build_family("GP(n,3)")

    def test_torus(self):
        spec = build_family("T(n,3)")
        assert spec.base.multiplicities == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
        assert [f.jumps for f in spec.fibers] == [(1,)] * 3

    def test_h_graph(self):
        spec = build_family("H(n;1,1,1,1)")
        assert spec.base.edges() == [(0, 4, 1), (1, 5, 1), (2, 4, 1), (3, 5, 1), (4, 5, 1)]
        assert [f.jumps for f in spec.fibers] == [(1,)] * 4 + [()] * 2

    def test_cartesian(self):
        assert build_family("X(n;K_3,[1])") == build_family("T(n,3)")
        spec = build_family("X(n;K_4,[1,2])")
        assert spec.base.degrees == (3, 3, 3, 3)

    def test_sandwich(self):
        spec = build_family("SW(n;[1],[2],[1,2])")
        assert spec.base.edges() == [(0, 1, 1), (1, 2, 1)]
        assert [f.jumps for f in spec.fibers] == [(1,), (2,), (1, 2)]

    def test_foliation(self):
        spec = build_family("FOLIATION{base:edges[(1,2):1,(2,3):2];fibers:[[1],[],[1,3]]}")
        assert spec.base.multiplicities == ((0, 1, 0), (1, 0, 2), (0, 2, 0))

    def test_disconnected_foliation(self):
        text = "FOLIATION{base:edges[];fibers:[[1],[2]]}"
        with pytest.raises(DisconnectedBase):
            build_family(text)
        with pytest.warns(UserWarning):
            build_family(text, allow_disconnected=True)

    def test_bad_arity(self):
        from circforest.dsl import FamilyDescriptor

        with pytest.raises(BadArity):
            build_family(FamilyDescriptor("Y", ((1,), (1,))))


class TestExport:
    def test_edge_list(self):
        text = edge_list_text(expand(build_family("C(n;1)"), 3))
        assert text.splitlines() == ["1,1\t2,1\t1", "1,1\t3,1\t1", "2,1\t3,1\t1"]

    def test_multiplicity(self):
        spec = build_family("FOLIATION{base:edges[(1,2):2];fibers:[[],[]]}")
        assert edge_list_text(expand(spec, 1)) == "1,1\t1,2\t2\n"
        dot = graph_text(expand(spec, 1))
        assert dot.count("--") == 2

    def test_dot_nodes(self):
        dot = graph_text(expand(build_family("GP(n,2)"), 5))
        assert dot.count("--") == 15
        assert '"5,2";' in dot
