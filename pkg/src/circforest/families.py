"""Named foliation families and descriptor -> spec construction."""

from __future__ import annotations

from .dsl import FamilyDescriptor, parse_family
from .errors import BadArity, UnknownFamily
from .model import BaseGraph, FoliationSpec, make_foliation


def path_graph(m: int) -> BaseGraph:
    return BaseGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> BaseGraph:
    if m < 3:
        raise BadArity("a cycle needs at least 3 vertices")
    return BaseGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def complete_graph(m: int) -> BaseGraph:
    return BaseGraph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def star_graph(leaves: int) -> BaseGraph:
    """K_{1,leaves} with the hub last."""
    return BaseGraph.from_edges(leaves + 1, [(i, leaves) for i in range(leaves)])


def h_shape_graph() -> BaseGraph:
    # v1v5, v3v5, v2v6, v4v6, v5v6 in 1-based labels
    return BaseGraph.from_edges(6, [(0, 4), (2, 4), (1, 5), (3, 5), (4, 5)])


_BASES = {"K": complete_graph, "C": cycle_graph, "P": path_graph}


def circulant(*jumps: int) -> FoliationSpec:
    return make_foliation(BaseGraph([[0]]), [jumps])


def i_graph(k: int, l: int) -> FoliationSpec:
    return make_foliation(path_graph(2), [[k], [l]])


def generalized_petersen(k: int) -> FoliationSpec:
    return i_graph(k, 1)


def sandwich(*fibers) -> FoliationSpec:
    return make_foliation(path_graph(len(fibers)), fibers)


def y_graph(f1, f2, f3) -> FoliationSpec:
    return make_foliation(star_graph(3), [f1, f2, f3, ()])


def h_graph(f1, f2, f3, f4) -> FoliationSpec:
    return make_foliation(h_shape_graph(), [f1, f2, f3, f4, (), ()])


def torus(m: int) -> FoliationSpec:
    return make_foliation(cycle_graph(m), [[1]] * m)


def cartesian(base: BaseGraph, jumps) -> FoliationSpec:
    return make_foliation(base, [jumps] * base.vertex_count)


def build_family(desc: FamilyDescriptor | str, allow_disconnected: bool = False) -> FoliationSpec:
    if isinstance(desc, str):
        desc = parse_family(desc)
    kind, args = desc.kind, desc.args

    def need(count):
        if len(args) != count:
            raise BadArity(f"{kind} takes {count} arguments, got {len(args)}")

    if kind == "C":
        need(1)
        return circulant(*args[0])
    if kind == "GP":
        need(1)
        return generalized_petersen(args[0])
    if kind == "I":
        need(2)
        return i_graph(*args)
    if kind == "SW":
        if not args:
            raise BadArity("SW needs at least one fiber")
        return sandwich(*args)
    if kind == "Y":
        need(3)
        return y_graph(*args)
    if kind == "H":
        need(4)
        return h_graph(*args)
    if kind == "T":
        need(1)
        return torus(args[0])
    if kind == "X":
        need(3)
        letter, order, jumps = args
        if letter not in _BASES:
            raise UnknownFamily(f"unknown base graph {letter}_{order}")
        return cartesian(_BASES[letter](order), jumps)
    if kind == "FOLIATION":
        need(3)
        m, edges, fibers = args
        base = BaseGraph.from_edges(m, [(i - 1, j - 1, c) for i, j, c in edges])
        return make_foliation(base, fibers, allow_disconnected=allow_disconnected)
    raise UnknownFamily(f"unknown family kind {kind!r}")


BUILTIN_FAMILIES = (
    "C(n;1)",
    "C(n;1,2)",
    "GP(n,2)",
    "I(n,2,3)",
    "SW(n;[1],[2])",
    "Y(n;1,1,1)",
    "H(n;1,1,1,1)",
    "T(n,3)",
)
