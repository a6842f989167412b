"""Formula-to-graph and graph-to-graph transformations.

Vertex layout for formula gadgets: variable ``t`` (1-based over the whole
formula) owns vertices ``2(t-1)`` for its positive and ``2(t-1)+1`` for
its negative literal.  Clause ``i``'s three occurrence vertices follow the
literal vertices.  For a Qbf2 formula the x-block variables come first.
"""

from __future__ import annotations

from ..errors import InvalidInput
from ..formulas import Cnf, Qbf2Formula
from ..graph_control import GraphControlInstance
from ..graphs import Digraph, Graph, complete_graph, empty_graph


def literal_vertex(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (lit < 0)


def clause_vertex(num_vars: int, i: int, j: int) -> int:
    return 2 * num_vars + 3 * i + j


def _karp_edges(phi: Cnf) -> list[tuple[int, int]]:
    edges = [(2 * t, 2 * t + 1) for t in range(phi.num_vars)]
    for i, cl in enumerate(phi.clauses):
        a, b, c = (clause_vertex(phi.num_vars, i, j) for j in range(3))
        edges += [(a, b), (a, c), (b, c)]
        for j, lit in enumerate(cl):
            edges.append((clause_vertex(phi.num_vars, i, j), literal_vertex(lit)))
    return edges


def karp_3sat_to_vc(phi: Cnf) -> tuple[Graph, int]:
    """Graph and cover bound: phi is satisfiable iff a cover of that size exists."""
    n = 2 * phi.num_vars + 3 * phi.m
    return Graph(n, tuple(_karp_edges(phi))), phi.num_vars + 2 * phi.m


def h_graph(f: Qbf2Formula) -> Graph:
    """Karp graph of the matrix with each clause triangle grown to a K4 by a
    vertex d_i, every d_i adjacent to the last vertex v-hat."""
    phi = f.matrix()
    base = 2 * phi.num_vars + 3 * phi.m
    hat = base + phi.m
    edges = _karp_edges(phi)
    for i in range(phi.m):
        d = base + i
        edges += [(clause_vertex(phi.num_vars, i, j), d) for j in range(3)]
        edges.append((d, hat))
    return Graph(hat + 1, tuple(edges))


def x_literal_vertices(f: Qbf2Formula) -> list[int]:
    return list(range(2 * f.n))


def qsat2_to_vcms(f: Qbf2Formula) -> GraphControlInstance:
    h = h_graph(f)
    return GraphControlInstance("vcms", h, tuple(x_literal_vertices(f)), f.n, target=h.n - 1)


def qsat2_to_vcma(f: Qbf2Formula) -> GraphControlInstance:
    """H plus a pendant addable vertex hanging off every x-literal vertex."""
    h = h_graph(f)
    addable = list(range(h.n, h.n + 2 * f.n))
    edges = h.edges + tuple((v, h.n + v) for v in x_literal_vertices(f))
    g = Graph(h.n + 2 * f.n, edges)
    return GraphControlInstance("vcma", g, tuple(addable), f.n, target=h.n - 1)


def doubled_digraph(g: Graph) -> Digraph:
    """Vertex v becomes v and its copy n+v; arcs v->v' and v'->w, w'->v per edge."""
    n = g.n
    arcs = [(v, n + v) for v in range(n)]
    for v, w in g.edges:
        arcs += [(n + v, w), (n + w, v)]
    return Digraph(2 * n, tuple(arcs))


def vcms_to_fasms(inst: GraphControlInstance) -> GraphControlInstance:
    _expect(inst, "vcms")
    n = inst.graph.n
    sel = tuple(v for v in inst.selectable if v != inst.target)
    return GraphControlInstance("fasms", doubled_digraph(inst.graph), sel, inst.limit,
                                target=n + inst.target)


def vcma_to_fasma(inst: GraphControlInstance) -> GraphControlInstance:
    """Only the unprimed copies are addable; the copies of addable vertices
    stay in the base, where they have no in-arcs and cannot matter."""
    _expect(inst, "vcma")
    n = inst.graph.n
    return GraphControlInstance("fasma", doubled_digraph(inst.graph), inst.selectable,
                                inst.limit, target=n + inst.target)


def vcma_to_fasmaa(inst: GraphControlInstance) -> GraphControlInstance:
    """Every vertex and copy is present; adding vertex w means adding the arc w->w'."""
    _expect(inst, "vcma")
    n = inst.graph.n
    d = doubled_digraph(inst.graph)
    chosen = set(inst.selectable)
    base = tuple(a for a in d.arcs if not (a[1] == a[0] + n and a[0] in chosen))
    addable = tuple((w, n + w) for w in inst.selectable)
    return GraphControlInstance("fasmaa", Digraph(2 * n, base), addable, inst.limit,
                                target=n + inst.target)


def dwork_hat(d: Digraph) -> Digraph:
    """Subdivide every arc: arc number i (in sorted order) becomes vertex n+i."""
    arcs = []
    for i, (v, w) in enumerate(d.arcs):
        arcs += [(v, d.n + i), (d.n + i, w)]
    return Digraph(d.n + len(d.arcs), tuple(arcs))


def _check_ell(ell: int):
    if ell < 1:
        raise InvalidInput("ell must be at least 1")


def gnd_to_ismd(g: Graph, k: int, ell: int) -> GraphControlInstance:
    """Complement of G joined with ell independent vertices; the target is
    the first of those."""
    _check_ell(ell)
    h = g.complement().join(empty_graph(ell))
    return GraphControlInstance("ismd", h, tuple(range(h.n)), k, target=g.n)


def gnd_to_vcms(g: Graph, k: int, ell: int) -> GraphControlInstance:
    """(complement of G plus an isolated v-hat) joined with ell+1 independent
    vertices; every vertex is deletable."""
    _check_ell(ell)
    h = g.complement().union(empty_graph(1)).join(empty_graph(ell + 1))
    return GraphControlInstance("vcms", h, tuple(range(h.n)), k, target=g.n)


def young_padding(g: Graph, k: int, copies: int) -> Graph:
    """G plus ``copies`` disjoint cliques on k+1 vertices each (at least two,
    so that the padding never adds an isolated vertex)."""
    out = g
    for _ in range(copies):
        out = out.union(complete_graph(max(k + 1, 2)))
    return out


def _expect(inst: GraphControlInstance, kind: str):
    if inst.kind != kind:
        raise InvalidInput(f"expected a {kind} instance, got {inst.kind}")
