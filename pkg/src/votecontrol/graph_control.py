"""Graph control problems decided by guessing a selection and checking it.

Kinds and what the chosen set W does:

* ``vcms``   delete W from the deletable vertices; target must lie in a
  minimum vertex cover of what remains.
* ``vcma``   add W from the addable vertices to the base graph; same test.
* ``ismd``   delete any W; target must lie in a maximum independent set.
* ``fasms``  delete W; some minimum feedback arc set contains every arc
  entering the target.
* ``fasma``  add vertices W; same test.
* ``fasmaa`` add arcs W from the addable arc set; same test.
* ``gnd``    delete W so that no clique of size ``ell + 1`` remains.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvalidInput, ResourceLimit
from .graphs import (Digraph, Graph, VertexCoverSolver, _mask, clique_number,
                     format_digraph, format_graph)
from .ordering import OrderingSolver

KINDS = ("vcms", "vcma", "ismd", "fasms", "fasma", "fasmaa", "gnd")
DIRECTED = ("fasms", "fasma", "fasmaa")
ENUM_LIMIT = 1 << 22


@dataclass(frozen=True)
class GraphControlInstance:
    kind: str
    graph: object  # Graph or Digraph; for vcma/fasma it includes the addable vertices
    selectable: tuple  # vertex ids, or arcs for fasmaa
    limit: int
    target: int | None = None
    ell: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown graph control kind {self.kind!r}")
        want = Digraph if self.kind in DIRECTED else Graph
        if not isinstance(self.graph, want):
            raise InvalidInput(f"{self.kind} needs a {want.__name__}")
        if self.limit < 0:
            raise InvalidInput("limit must be nonnegative")
        n = self.graph.n
        if self.kind == "fasmaa":
            sel = tuple(sorted(set((int(u), int(v)) for u, v in self.selectable)))
            if set(sel) & set(self.graph.arcs):
                raise InvalidInput("addable arcs must be disjoint from the base arcs")
            self.graph.with_arcs(sel)  # validates antisymmetry of A plus B
        else:
            sel = tuple(sorted(set(int(v) for v in self.selectable)))
            if any(not 0 <= v < n for v in sel):
                raise InvalidInput("selectable vertex out of range")
        object.__setattr__(self, "selectable", sel)
        if self.kind == "gnd":
            if self.ell is None or self.ell < 1:
                raise InvalidInput("gnd needs ell >= 1")
        else:
            if self.target is None or not 0 <= self.target < n:
                raise InvalidInput("target vertex missing or out of range")
            if self.kind in ("fasms", "vcma", "fasma") and self.target in sel:
                raise InvalidInput("the target may not be selectable")

    def base_vertices(self) -> list[int]:
        if self.kind in ("vcma", "fasma"):
            chosen = set(self.selectable)
            return [v for v in range(self.graph.n) if v not in chosen]
        return list(range(self.graph.n))

    def apply(self, chosen) -> object:
        """The graph after the chair's action, renumbered."""
        if self.kind == "fasmaa":
            return self.graph.with_arcs(chosen)
        if self.kind in ("vcma", "fasma"):
            return self.graph.induced(self.base_vertices() + list(chosen))[0]
        return self.graph.delete_vertices(chosen)[0]


def count_actions(size: int, limit: int) -> int:
    return sum(math.comb(size, i) for i in range(min(size, limit) + 1))


def _predicate(inst: GraphControlInstance):
    g = inst.graph
    full = (1 << g.n) - 1
    kind = inst.kind
    t = inst.target
    if kind in ("vcms", "vcma", "ismd"):
        solver = VertexCoverSolver(g)
        base = _mask(inst.base_vertices())

        def check(W):
            if kind == "vcma":
                R = base | _mask(W)
            else:
                if t in W:
                    return False
                R = full & ~_mask(W)
            if kind == "ismd":
                return solver.alpha_v(t, R) == solver.alpha(R)
            return solver.member(t, R)
        return check
    if kind in ("fasms", "fasma"):
        solver = OrderingSolver(g.matrix())
        base = inst.base_vertices()

        def check(W):
            if kind == "fasma":
                kept = base + list(W)
            else:
                if t in W:
                    return False
                dropped = set(W)
                kept = [v for v in range(g.n) if v not in dropped]
            return solver.is_top(t, kept)
        return check
    if kind == "fasmaa":
        def check(W):
            return OrderingSolver(g.with_arcs(W).matrix()).is_top(t, range(g.n))
        return check

    def check(W):
        return clique_number(g.delete_vertices(W)[0]) < inst.ell + 1
    return check


def decide_graph_control(inst: GraphControlInstance, enum_limit: int = ENUM_LIMIT):
    """(decision, witness): the witness is the first successful selection in
    size-then-lexicographic order, or None."""
    total = count_actions(len(inst.selectable), inst.limit)
    if total > enum_limit:
        raise ResourceLimit(f"{total} selections exceeds the enumeration limit {enum_limit}")
    check = _predicate(inst)
    for size in range(min(inst.limit, len(inst.selectable)) + 1):
        for W in itertools.combinations(inst.selectable, size):
            if check(W):
                return True, W
    return False, None


def gnd_decide(g: Graph, k: int, ell: int):
    return decide_graph_control(GraphControlInstance("gnd", g, range(g.n), k, ell=ell))


# --- text format ----------------------------------------------------------

def format_graph_instance(inst: GraphControlInstance) -> str:
    out = [f"kind: {inst.kind}"]
    body = format_digraph(inst.graph) if inst.kind in DIRECTED else format_graph(inst.graph)
    out += body.splitlines()
    if inst.kind == "fasmaa":
        out.append("select: " + ",".join(f"{u + 1}>{v + 1}" for u, v in inst.selectable))
    else:
        out.append("select: " + ",".join(str(v + 1) for v in inst.selectable))
    out.append(f"limit: {inst.limit}")
    if inst.target is not None:
        out.append(f"target: {inst.target + 1}")
    if inst.ell is not None:
        out.append(f"ell: {inst.ell}")
    return "\n".join(out) + "\n"


def parse_graph_instance(text: str) -> GraphControlInstance:
    fields: dict[str, str] = {}
    n = None
    pairs = []
    tag = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" in line:
            key, _, val = line.partition(":")
            fields[key.strip()] = val.strip()
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 2:
                n = int(parts[1])
            elif parts[0] in ("e", "a") and len(parts) == 3:
                tag = parts[0]
                pairs.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise ValueError
        except ValueError:
            raise InvalidInput(f"line {lineno}: unexpected {line!r}") from None
    kind = fields.get("kind")
    if kind not in KINDS or n is None:
        raise InvalidInput("instance needs 'kind:' and a 'p <n>' line")
    if tag is not None and (tag == "a") != (kind in DIRECTED):
        raise InvalidInput(f"{kind} instances use '{'a' if kind in DIRECTED else 'e'}' lines")
    graph = Digraph(n, tuple(pairs)) if kind in DIRECTED else Graph(n, tuple(pairs))
    sel_text = fields.get("select", "")
    try:
        if kind == "fasmaa":
            sel = [tuple(int(x) - 1 for x in item.split(">"))
                   for item in sel_text.split(",") if item.strip()]
        else:
            sel = [int(x) - 1 for x in sel_text.split(",") if x.strip()]
        limit = int(fields.get("limit", ""))
        target = int(fields["target"]) - 1 if "target" in fields else None
        ell = int(fields["ell"]) if "ell" in fields else None
    except ValueError:
        raise InvalidInput("bad select/limit/target/ell field") from None
    return GraphControlInstance(kind, graph, tuple(sel), limit, target, ell)
