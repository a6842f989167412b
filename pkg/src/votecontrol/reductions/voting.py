"""Graph problems to election control: McGarvey elections, the Kemeny
instances built from them, and the Young voter-deletion gadget."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..control import ControlInstance, sub_multisets
from ..election import Election, Vote, pairwise_matrix
from ..errors import InvalidInput, InvariantViolation
from ..graph_control import GraphControlInstance
from ..graphs import Digraph, Graph, VertexCoverSolver, _mask
from ..young import young_score
from .graph import _expect, young_padding


def mcgarvey(d: Digraph) -> Election:
    """Two voters per arc (v, w): v > w > rest, and reversed rest > v > w."""
    votes = []
    for v, w in d.arcs:
        rest = [c for c in range(d.n) if c not in (v, w)]
        votes.append(Vote(1, (v, w, *rest)))
        votes.append(Vote(1, (*reversed(rest), v, w)))
    e = Election(max(d.n, 1), tuple(votes))
    P = pairwise_matrix(e)
    margins = P - P.T
    if d.n and not np.array_equal(margins, 2 * (d.matrix() - d.matrix().T)):
        raise InvariantViolation("McGarvey margins differ from twice the adjacency")
    return e


def fasms_to_kemeny_ccdcstar(inst: GraphControlInstance) -> ControlInstance:
    _expect(inst, "fasms")
    return ControlInstance("kemeny", "ccdc_star", mcgarvey(inst.graph), inst.target,
                           inst.limit, deletable=frozenset(inst.selectable))


def fasma_to_kemeny_ccac(inst: GraphControlInstance) -> ControlInstance:
    _expect(inst, "fasma")
    return ControlInstance("kemeny", "ccac", mcgarvey(inst.graph), inst.target,
                           inst.limit, unregistered=frozenset(inst.selectable))


def fasmaa_to_kemeny_prime_ccav(inst: GraphControlInstance) -> ControlInstance:
    """One partial vote u > w per arc; addable arcs become addable voters."""
    _expect(inst, "fasmaa")
    d = inst.graph
    e = Election(d.n, tuple(Vote(1, a, True) for a in d.arcs))
    addable = tuple(Vote(1, a, True) for a in inst.selectable)
    return ControlInstance("kemeny_prime", "ccav", e, inst.target, inst.limit,
                           addable_votes=addable)


# --- Young ------------------------------------------------------------------

@dataclass(frozen=True)
class YoungGadget:
    """The voter-deletion election together with the graph it encodes.

    Candidates are the edges of ``graph`` in sorted order, then a, p, q.
    Vote entry ``v`` belongs to vertex ``v``; the Type II entry and the
    Type III entry (2|V| voters) come last.
    """
    graph: Graph
    target: int
    instance: ControlInstance

    @property
    def election(self) -> Election:
        return self.instance.election

    @property
    def a(self) -> int:
        return len(self.graph.edges)

    @property
    def p(self) -> int:
        return self.a + 1

    @property
    def q(self) -> int:
        return self.a + 2

    @property
    def type2_entry(self) -> int:
        return self.graph.n

    def delete_vertices(self, W) -> Election:
        """The election with the voters of the vertices in W removed."""
        W = set(W)
        return self.election.with_votes(v for i, v in enumerate(self.election.votes)
                                        if i not in W)

    def claimed_scores(self, W) -> tuple[int, int]:
        """(young score of q, young score of p) the construction promises
        once the voters of W (not containing the target) are deleted."""
        if self.target in W:
            raise InvalidInput("the claims cover deletions that keep the target's voter")
        solver = VertexCoverSolver(self.graph)
        R = self.graph.full & ~_mask(W)
        return 2 * solver.alpha(R), 2 * solver.alpha_v(self.target, R)


def young_precondition(g: Graph, k: int) -> str | None:
    """None when the gadget applies, otherwise the reason it does not."""
    isolated = [v for v in range(g.n) if g.degree(v) == 0]
    if isolated:
        return f"vertex {isolated[0] + 1} is isolated"
    solver = VertexCoverSolver(g)
    for size in range(min(k, g.n) + 1):
        for W in itertools.combinations(range(g.n), size):
            if solver.alpha(g.full & ~_mask(W)) < 3:
                return "deleting {" + ",".join(str(v + 1) for v in W) + "} leaves independence number below 3"
    return None


def repair_for_young(g: Graph, k: int) -> Graph:
    """Append disjoint (k+1)-cliques, starting with two, until the
    independence precondition holds."""
    if k < 0:
        raise InvalidInput("limit must be nonnegative")
    if any(g.degree(v) == 0 for v in range(g.n)):
        raise InvalidInput("padding cannot fix isolated vertices")
    copies = 2
    while young_precondition(young_padding(g, k, copies), k) is not None:
        copies += 1
    return young_padding(g, k, copies)


def ismd_to_young_ccdv(inst: GraphControlInstance) -> YoungGadget:
    _expect(inst, "ismd")
    g, k, hat = inst.graph, inst.limit, inst.target
    reason = young_precondition(g, k)
    if reason is not None:
        raise InvalidInput(f"young gadget precondition fails: {reason}")
    E = len(g.edges)
    a, p, q = E, E + 1, E + 2
    m = E + 3
    incident = [[i for i, e in enumerate(g.edges) if v in e] for v in range(g.n)]
    hat_nbrs = set(g.neighbors(hat))

    def order(head, tail=()):
        used = set(head) | set(tail)
        return tuple(head) + tuple(c for c in range(m) if c not in used) + tuple(tail)

    votes = []
    for v in range(g.n):
        if v in hat_nbrs:
            votes.append(Vote(1, order(incident[v] + [a, q], [p])))
        else:
            votes.append(Vote(1, order(incident[v] + [a, q, p])))
    votes.append(Vote(1, order([p, q], [a])))
    votes.append(Vote(2 * g.n, order([], [p, q, a])))
    names = tuple(f"e{u + 1}-{w + 1}" for u, w in g.edges) + ("a", "p", "q")
    e = Election(m, tuple(votes), names)
    return YoungGadget(g, hat, ControlInstance("young", "ccdv", e, p, k))


def young_condition(e: Election, p: int, q: int) -> bool:
    """p's Young score is at least 2 and at least q's."""
    sp = young_score(e, p).score
    return sp >= 2 and sp >= young_score(e, q).score


def decide_young_gadget(gadget: YoungGadget) -> tuple[bool, tuple | None]:
    """Whether deleting at most k voters meets ``young_condition``; this is
    the score-level question the gadget encodes."""
    inst = gadget.instance
    mults = inst.multiplicities()
    for size in range(min(inst.limit, sum(mults)) + 1):
        for action in sub_multisets(list(mults), size):
            e2, _ = inst.apply(action)
            if young_condition(e2, gadget.p, gadget.q):
                return True, action
    return False, None
