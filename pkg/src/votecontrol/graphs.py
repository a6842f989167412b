"""Graphs, digraphs and exact solvers for the covering problems.

Vertices are ``0..n-1``.  Vertex sets inside the solvers are bitmasks over
the original numbering, which lets one solver (with its memo) answer
queries on every induced subgraph.  That is what the control searches need:
deleting or adding vertices only changes which mask is asked about.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, InvariantViolation, ResourceLimit
from .ordering import OrderingSolver

VC_LIMIT = 30
FAS_LIMIT = 48


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput("negative vertex count")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @cached_property
    def adj(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def induced(self, kept: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``kept``, renumbered; also returns new-to-old ids."""
        kept = sorted(set(kept))
        idx = {v: i for i, v in enumerate(kept)}
        edges = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph(len(kept), tuple(edges)), kept

    def delete_vertices(self, dropped: Iterable[int]) -> tuple["Graph", list[int]]:
        dropped = set(dropped)
        return self.induced(v for v in range(self.n) if v not in dropped)

    def complement(self) -> "Graph":
        have = set(self.edges)
        return Graph(self.n, tuple((u, v) for u in range(self.n)
                                   for v in range(u + 1, self.n) if (u, v) not in have))

    def union(self, other: "Graph") -> "Graph":
        """Disjoint union; ``other`` is shifted past this graph's vertices."""
        shifted = tuple((u + self.n, v + self.n) for u, v in other.edges)
        return Graph(self.n + other.n, self.edges + shifted)

    def join(self, other: "Graph") -> "Graph":
        """Disjoint union plus every edge between the two sides."""
        both = self.union(other)
        cross = tuple((u, self.n + v) for u in range(self.n) for v in range(other.n))
        return Graph(both.n, both.edges + cross)


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput("negative vertex count")
        norm = set()
        for u, v in self.arcs:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"arc ({u}, {v}) out of range")
            norm.add((u, v))
        for u, v in norm:
            if (v, u) in norm:
                raise InvalidInput(f"arcs ({u}, {v}) and ({v}, {u}) break antisymmetry")
        object.__setattr__(self, "arcs", tuple(sorted(norm)))

    def matrix(self) -> np.ndarray:
        W = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.arcs:
            W[u, v] = 1
        return W

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def induced(self, kept: Iterable[int]) -> tuple["Digraph", list[int]]:
        kept = sorted(set(kept))
        idx = {v: i for i, v in enumerate(kept)}
        arcs = [(idx[u], idx[v]) for u, v in self.arcs if u in idx and v in idx]
        return Digraph(len(kept), tuple(arcs)), kept

    def delete_vertices(self, dropped: Iterable[int]) -> tuple["Digraph", list[int]]:
        dropped = set(dropped)
        return self.induced(v for v in range(self.n) if v not in dropped)

    def with_arcs(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.arcs + tuple(extra))

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            indeg[v] += 1
            succ[u].append(v)
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.n


# --- vertex cover and independent sets ------------------------------------

class VertexCoverSolver:
    """Branch and bound for minimum vertex cover on induced subgraphs.

    Branching is on a vertex of maximum degree: either it joins the cover,
    or all of its neighbours do.  Degree-one vertices are resolved by taking
    their neighbour.
    """

    def __init__(self, g: Graph, limit: int = VC_LIMIT):
        if g.n > limit:
            raise ResourceLimit(f"{g.n} vertices exceeds the vertex cover limit {limit}")
        self.adj = g.adj
        self.memo: dict[int, tuple[int, int]] = {0: (0, 0)}

    def solve(self, R: int) -> tuple[int, int]:
        """(size, cover mask) of a minimum cover of the subgraph on R."""
        hit = self.memo.get(R)
        if hit is not None:
            return hit
        adj = self.adj
        best_v, best_d = -1, 0
        x = R
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            d = bin(adj[v] & R).count("1")
            if d == 1:
                u = (adj[v] & R).bit_length() - 1
                size, cover = self.solve(R & ~(low | 1 << u))
                res = (size + 1, cover | 1 << u)
                self.memo[R] = res
                return res
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            res = (0, 0)
        else:
            v = best_v
            nb = adj[v] & R
            s1, c1 = self.solve(R & ~(1 << v))
            res = (s1 + 1, c1 | 1 << v)
            if best_d < res[0]:
                s2, c2 = self.solve(R & ~nb & ~(1 << v))
                if s2 + best_d < res[0]:
                    res = (s2 + best_d, c2 | nb)
        self.memo[R] = res
        return res

    def size(self, R: int) -> int:
        return self.solve(R)[0]

    def member(self, v: int, R: int) -> bool:
        """Whether ``v`` lies in some minimum cover of the subgraph on R."""
        return self.size(R & ~(1 << v)) + 1 == self.size(R)

    def alpha(self, R: int) -> int:
        return bin(R).count("1") - self.size(R)

    def alpha_v(self, v: int, R: int) -> int:
        return 1 + self.alpha(R & ~(self.adj[v] | 1 << v))


def min_vertex_cover(g: Graph, limit: int = VC_LIMIT) -> tuple[int, tuple[int, ...]]:
    size, cover = VertexCoverSolver(g, limit).solve(g.full)
    return size, tuple(_bits(cover))


def vc_membership(g: Graph, v: int, limit: int = VC_LIMIT) -> bool:
    if not 0 <= v < g.n:
        raise InvalidInput(f"vertex {v} out of range")
    return VertexCoverSolver(g, limit).member(v, g.full)


def max_independent_set(g: Graph, limit: int = VC_LIMIT) -> int:
    """Independence number by its own recursion (used as a cross-check).

    Some maximum independent set contains a minimum-degree vertex or one of
    its neighbours, so branching over that closed neighbourhood is complete.
    """
    if g.n > limit:
        raise ResourceLimit(f"{g.n} vertices exceeds limit {limit}")
    adj = g.adj
    memo: dict[int, int] = {0: 0}

    def rec(R):
        if R in memo:
            return memo[R]
        v = min(_bits(R), key=lambda x: bin(adj[x] & R).count("1"))
        best = 0
        for u in _bits((adj[v] & R) | 1 << v):
            best = max(best, 1 + rec(R & ~(adj[u] | 1 << u)))
        memo[R] = best
        return best

    return rec(g.full)


def independence(g: Graph, v: int | None = None, limit: int = VC_LIMIT) -> tuple[int, int | None]:
    """(alpha, alpha_v): the independence number and, if ``v`` is given, the
    largest independent set containing ``v``."""
    solver = VertexCoverSolver(g, limit)
    alpha = solver.alpha(g.full)
    if alpha != max_independent_set(g, limit):
        raise InvariantViolation("independence number disagrees with n - vertex cover")
    if v is None:
        return alpha, None
    if not 0 <= v < g.n:
        raise InvalidInput(f"vertex {v} out of range")
    return alpha, solver.alpha_v(v, g.full)


def clique_number(g: Graph, limit: int = VC_LIMIT) -> int:
    return max_independent_set(g.complement(), limit) if g.n else 0


def has_clique(g: Graph, size: int, limit: int = VC_LIMIT) -> bool:
    return size <= 0 or clique_number(g, limit) >= size


# --- feedback arc sets ----------------------------------------------------

def _fas_solver(d: Digraph, limit: int) -> OrderingSolver:
    if d.n > limit:
        raise ResourceLimit(f"{d.n} vertices exceeds the feedback arc set limit {limit}")
    return OrderingSolver(d.matrix())


def min_feedback_arc_set(d: Digraph, limit: int = FAS_LIMIT) -> tuple[int, tuple[int, ...]]:
    """Size of a minimum feedback arc set and an ordering whose backward arcs
    form one."""
    solver = _fas_solver(d, limit)
    order = solver.best_order(range(d.n))
    return solver.opt(range(d.n)), order


def backward_arcs(d: Digraph, order: Sequence[int]) -> list[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(order)}
    return [(u, v) for u, v in d.arcs if pos[u] > pos[v]]


def fas_top_membership(d: Digraph, v: int, limit: int = FAS_LIMIT) -> bool:
    """Whether some optimal ordering puts ``v`` first, i.e. some minimum
    feedback arc set contains every arc entering ``v``."""
    if not 0 <= v < d.n:
        raise InvalidInput(f"vertex {v} out of range")
    return _fas_solver(d, limit).is_top(v, range(d.n))


# --- file formats ---------------------------------------------------------

def _parse_pairs(text: str, tag: str):
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "c ")) or line == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 2:
                raise InvalidInput(f"line {lineno}: expected 'p <n>'")
            n = int(parts[1])
        elif parts[0] == tag and len(parts) == 3:
            if n is None:
                raise InvalidInput(f"line {lineno}: '{tag}' line before 'p' header")
            try:
                pairs.append((int(parts[1]) - 1, int(parts[2]) - 1))
            except ValueError:
                raise InvalidInput(f"line {lineno}: bad vertex id") from None
        else:
            raise InvalidInput(f"line {lineno}: unexpected {line!r}")
    if n is None:
        raise InvalidInput("missing 'p <n>' header")
    return n, pairs


def parse_graph(text: str) -> Graph:
    n, pairs = _parse_pairs(text, "e")
    return Graph(n, tuple(pairs))


def parse_digraph(text: str) -> Digraph:
    n, pairs = _parse_pairs(text, "a")
    return Digraph(n, tuple(pairs))


def format_graph(g: Graph) -> str:
    return "\n".join([f"p {g.n}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]) + "\n"


def format_digraph(d: Digraph) -> str:
    return "\n".join([f"p {d.n}"] + [f"a {u + 1} {v + 1}" for u, v in d.arcs]) + "\n"
