"""Base multigraphs, circulant fibers and their foliations.

A foliation attaches one circulant graph C_n(jumps) to every vertex of a
base multigraph H. Expanding it at a concrete n gives a graph on n*m
vertices whose layer-k copies of the base vertices are joined as in H.
Vertices are 0-based internally; serialized output uses 1-based labels.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DisconnectedBase,
    FiberCountMismatch,
    JumpTooLargeForN,
    LoopInBase,
    NonIncreasingJumps,
)


@dataclass(frozen=True)
class BaseGraph:
    """Loopless multigraph stored as a symmetric multiplicity matrix."""

    multiplicities: tuple[tuple[int, ...], ...]

    def __init__(self, multiplicities: Sequence[Sequence[int]]):
        mat = tuple(tuple(int(x) for x in row) for row in multiplicities)
        m = len(mat)
        if m == 0:
            raise ValueError("base graph needs at least one vertex")
        for i, row in enumerate(mat):
            if len(row) != m:
                raise ValueError("multiplicity matrix must be square")
            if row[i] != 0:
                raise LoopInBase(f"vertex {i + 1} has a loop")
            for j, a in enumerate(row):
                if a < 0:
                    raise ValueError("multiplicities must be non-negative")
                if a != mat[j][i]:
                    raise ValueError("multiplicity matrix must be symmetric")
        object.__setattr__(self, "multiplicities", mat)

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int] | tuple[int, int, int]]):
        """Build from 0-based (i, j) or (i, j, multiplicity) triples."""
        mat = [[0] * m for _ in range(m)]
        for e in edges:
            i, j = e[0], e[1]
            mult = e[2] if len(e) > 2 else 1
            if i == j:
                raise LoopInBase(f"vertex {i + 1} has a loop")
            mat[i][j] += mult
            mat[j][i] += mult
        return cls(mat)

    @property
    def vertex_count(self) -> int:
        return len(self.multiplicities)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.multiplicities[i][j]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.multiplicities)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, multiplicity) with i < j, 0-based, sorted."""
        m = self.vertex_count
        return [
            (i, j, self.multiplicities[i][j])
            for i in range(m)
            for j in range(i + 1, m)
            if self.multiplicities[i][j]
        ]

    def is_connected(self) -> bool:
        m = self.vertex_count
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(m):
                if self.multiplicities[u][v] and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == m

    def induced(self, vertices: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.multiplicities[i][j] for j in vertices) for i in vertices)


@dataclass(frozen=True)
class FiberSpec:
    """Jumps of a circulant fiber C_n(s_1 < ... < s_k); empty means C_n(())."""

    jumps: tuple[int, ...] = ()

    def __init__(self, jumps: Iterable[int] = ()):
        js = tuple(int(s) for s in jumps)
        if any(s < 1 for s in js):
            raise NonIncreasingJumps(f"jumps must be positive, got {list(js)}")
        if any(a >= b for a, b in zip(js, js[1:])):
            raise NonIncreasingJumps(f"jumps must be strictly increasing, got {list(js)}")
        object.__setattr__(self, "jumps", js)

    @property
    def is_empty(self) -> bool:
        return not self.jumps

    @property
    def max_jump(self) -> int:
        return self.jumps[-1] if self.jumps else 0

    @property
    def odd_count(self) -> int:
        return sum(s % 2 for s in self.jumps)

    def effective_jumps(self) -> tuple[int, ...]:
        """Jumps with the empty-fiber convention applied (k=1, s=0)."""
        return self.jumps if self.jumps else (0,)


@dataclass(frozen=True)
class FoliationSpec:
    base: BaseGraph
    fibers: tuple[FiberSpec, ...]
    degrees: tuple[int, ...] = field(compare=False, repr=False, default=())

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count

    @property
    def max_jump(self) -> int:
        return max((f.max_jump for f in self.fibers), default=0)

    @property
    def shift(self) -> int:
        """Sum over vertices of the largest jump; the degree of Q(w)."""
        return sum(f.max_jump for f in self.fibers)

    @property
    def empty_vertices(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.fibers) if f.is_empty)

    def is_valid_n(self, n: int) -> bool:
        return n >= 1 and n > 2 * self.max_jump


def make_foliation(
    base: BaseGraph,
    fibers: Sequence[FiberSpec | Iterable[int]],
    allow_disconnected: bool = False,
) -> FoliationSpec:
    fibers = tuple(f if isinstance(f, FiberSpec) else FiberSpec(f) for f in fibers)
    if len(fibers) != base.vertex_count:
        raise FiberCountMismatch(
            f"base has {base.vertex_count} vertices but {len(fibers)} fibers were given"
        )
    if not base.is_connected():
        if not allow_disconnected:
            raise DisconnectedBase("base graph must be connected")
        warnings.warn("base graph is disconnected; growth-constant results may not apply")
    return FoliationSpec(base, fibers, base.degrees)


@dataclass(frozen=True)
class ExpandedGraph:
    """Explicit foliation graph; vertex (k, i) has index i*n + k."""

    n: int
    m: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, multiplicity), u < v

    @property
    def vertex_count(self) -> int:
        return self.n * self.m

    def label(self, idx: int) -> tuple[int, int]:
        """0-based (k, i) of a vertex index."""
        return idx % self.n, idx // self.n

    def index(self, k: int, i: int) -> int:
        return i * self.n + k % self.n

    @property
    def edge_count(self) -> int:
        return sum(mult for _, _, mult in self.edges)

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, mult in self.edges:
            deg[u] += mult
            deg[v] += mult
        return deg


def expand(spec: FoliationSpec, n: int) -> ExpandedGraph:
    if not spec.is_valid_n(n):
        raise JumpTooLargeForN(
            f"n={n} requires n > 2*max_jump = {2 * spec.max_jump}"
        )
    m = spec.vertex_count
    mult: dict[tuple[int, int], int] = {}

    def add(u, v, c=1):
        key = (u, v) if u < v else (v, u)
        mult[key] = mult.get(key, 0) + c

    for k in range(n):
        for i, j, a in spec.base.edges():
            add(i * n + k, j * n + k, a)
        for i, fiber in enumerate(spec.fibers):
            for s in fiber.jumps:
                # each edge {k, k+s} once; k-s is covered from the other end
                add(i * n + k, i * n + (k + s) % n)
    return ExpandedGraph(n, m, tuple(sorted((u, v, c) for (u, v), c in mult.items())))


def laplacian(g: ExpandedGraph) -> list[list[int]]:
    size = g.vertex_count
    lap = [[0] * size for _ in range(size)]
    for u, v, c in g.edges:
        lap[u][v] -= c
        lap[v][u] -= c
        lap[u][u] += c
        lap[v][v] += c
    return lap


def edge_list_text(g: ExpandedGraph) -> str:
    """Lines ``k,i<TAB>k',i'<TAB>multiplicity`` with 1-based labels."""
    lines = []
    for u, v, c in g.edges:
        (ku, iu), (kv, iv) = g.label(u), g.label(v)
        lines.append(f"{ku + 1},{iu + 1}\t{kv + 1},{iv + 1}\t{c}")
    return "\n".join(lines) + ("\n" if lines else "")


def graph_text(g: ExpandedGraph, name: str = "H_n") -> str:
    """Graphviz DOT; parallel edges are written once per copy."""
    out = [f'graph "{name}" {{']
    for idx in range(g.vertex_count):
        k, i = g.label(idx)
        out.append(f'  "{k + 1},{i + 1}";')
    for u, v, c in g.edges:
        (ku, iu), (kv, iv) = g.label(u), g.label(v)
        for _ in range(c):
            out.append(f'  "{ku + 1},{iu + 1}" -- "{kv + 1},{iv + 1}";')
    out.append("}")
    return "\n".join(out) + "\n"
