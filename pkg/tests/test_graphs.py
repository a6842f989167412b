import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from votecontrol.errors import InvalidInput
from votecontrol.formulas import (Cnf, Qbf2Formula, all_qbf2, format_dimacs, format_qcnf,
                                  pad_qbf2, parse_dimacs, parse_qcnf, qsat2_decide,
                                  sat3_decide)
from votecontrol.generate import random_digraph, random_graph, random_graph_instance
from votecontrol.graph_control import (GraphControlInstance, decide_graph_control,
                                       format_graph_instance, gnd_decide,
                                       parse_graph_instance)
from votecontrol.graphs import (Digraph, Graph, backward_arcs, complete_graph, empty_graph,
                                fas_top_membership, format_digraph, format_graph,
                                independence, min_feedback_arc_set, min_vertex_cover,
                                parse_digraph, parse_graph, vc_membership)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


@st.composite
def digraphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        d = draw(st.integers(0, 2))
        if d == 1:
            arcs.append((u, v))
        elif d == 2:
            arcs.append((v, u))
    return Digraph(n, tuple(arcs))


# --- vertex cover / independence ---------------------------------------------------

def test_vertex_cover_trivial():
    assert min_vertex_cover(empty_graph(4))[0] == 0
    assert min_vertex_cover(Graph(2, ((0, 1),)))[0] == 1


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_vertex_cover_matches_oracle(g):
    k, cover = min_vertex_cover(g)
    assert k == oracles.vertex_cover(g.n, g.edges)[0] == len(cover)
    assert all(u in cover or v in cover for u, v in g.edges)


def test_membership_trivial():
    g = Graph(3, ((0, 1),))
    assert vc_membership(g, 2) is False
    assert vc_membership(g, 0) is True and vc_membership(g, 1) is True


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.data())
def test_membership_matches_oracle(g, data):
    if g.n == 0:
        return
    v = data.draw(st.integers(0, g.n - 1))
    assert vc_membership(g, v) == oracles.vc_member(g.n, g.edges, v)


def test_independence_small():
    assert independence(empty_graph(5))[0] == 5
    assert independence(complete_graph(5))[0] == 1
    path = Graph(4, ((0, 1), (1, 2), (2, 3)))
    assert independence(path, 0) == (2, 2)
    assert oracles.alpha(4, path.edges) == 2 and oracles.alpha(4, path.edges, 0) == 2


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_gallai_and_alpha_v(g, data):
    a, _ = independence(g)
    assert a + min_vertex_cover(g)[0] == g.n
    if g.n:
        v = data.draw(st.integers(0, g.n - 1))
        assert independence(g, v)[1] == oracles.alpha(g.n, g.edges, v)


# --- feedback arc sets ---------------------------------------------------------------

def test_fas_trivial():
    assert min_feedback_arc_set(Digraph(3, ((0, 1), (1, 2), (0, 2))))[0] == 0
    assert min_feedback_arc_set(Digraph(3, ((0, 1), (1, 2), (2, 0))))[0] == 1


def test_digraph_rejects_two_cycles():
    with pytest.raises(InvalidInput):
        Digraph(2, ((0, 1), (1, 0)))


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_fas_matches_oracle(d):
    size, order = min_feedback_arc_set(d)
    assert size == oracles.fas(d.n, d.arcs)[0]
    back = backward_arcs(d, order)
    assert len(back) == size
    assert Digraph(d.n, tuple(a for a in d.arcs if a not in back)).is_acyclic()


def test_fas_top_trivial():
    assert fas_top_membership(Digraph(3, ((0, 1), (1, 2))), 0)
    cyc = Digraph(3, ((0, 1), (1, 2), (2, 0)))
    assert all(fas_top_membership(cyc, v) for v in range(3))


@settings(max_examples=50, deadline=None)
@given(digraphs(), st.data())
def test_fas_top_matches_oracle(d, data):
    v = data.draw(st.integers(0, d.n - 1))
    assert fas_top_membership(d, v) == oracles.fas_top(d.n, d.arcs, v)


# --- formulas ------------------------------------------------------------------------

WORKED = Qbf2Formula(1, ((1, 1, 2), (-1, -2, -2), (-1, 2, 2)))


def test_sat3_cases():
    assert sat3_decide(Cnf(1, ()))[0]
    assert not sat3_decide(Cnf(1, ((1, 1, 1), (-1, -1, -1))))[0]
    ok, bits = sat3_decide(Cnf(2, ((1, -2, 1), (-2, -1, 2))))
    assert ok
    assert all(any(bits[abs(l) - 1] == (l > 0) for l in cl)
               for cl in ((1, -2, 1), (-2, -1, 2)))
    # the assignment z1 = 1, z2 = 0 satisfies this formula
    assert all(any((True, False)[abs(l) - 1] == (l > 0) for l in cl)
               for cl in ((1, -2, 1), (-2, -1, 2)))


def test_qsat2_cases():
    assert not qsat2_decide(Qbf2Formula(1, ((2, 2, 2),)))[0]
    assert qsat2_decide(Qbf2Formula(1, ((2, 2, 2), (-2, -2, -2))))[0]
    ok, xs = qsat2_decide(WORKED)
    assert ok and xs == (True,)


def test_formula_deciders_match_oracles():
    for f in all_qbf2(1, 2):
        assert qsat2_decide(f)[0] == oracles.qsat2(f.n, f.clauses)
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 4)
        cls = tuple(tuple(rng.randint(1, n) * rng.choice((1, -1)) for _ in range(3))
                    for _ in range(rng.randint(0, 6)))
        assert sat3_decide(Cnf(n, cls))[0] == oracles.sat(n, cls)


def test_pad_keeps_decision():
    for f in list(all_qbf2(1, 2))[:80]:
        g = pad_qbf2(f, 3)
        assert g.n == 3 and qsat2_decide(g)[0] == qsat2_decide(f)[0]


def test_formula_text_round_trip():
    phi = Cnf(3, ((1, -2, 3), (-1, -1, 2)))
    assert parse_dimacs(format_dimacs(phi)) == phi
    assert parse_qcnf(format_qcnf(WORKED)) == WORKED
    with pytest.raises(InvalidInput):
        parse_dimacs("p cnf 1 1\n1 2 0\n")


# --- graph control -------------------------------------------------------------------

def _bf_graph_control(inst):
    g = inst.graph
    for size in range(min(inst.limit, len(inst.selectable)) + 1):
        for W in itertools.combinations(inst.selectable, size):
            k = inst.kind
            if k == "gnd":
                h, _ = g.delete_vertices(W)
                ok = not oracles.has_clique(h.n, h.edges, inst.ell + 1)
            elif k in ("vcms", "ismd", "fasms"):
                if inst.target in W:
                    continue
                h, ids = g.delete_vertices(W)
                t = ids.index(inst.target)
                if k == "vcms":
                    ok = oracles.vc_member(h.n, h.edges, t)
                elif k == "ismd":
                    ok = oracles.alpha(h.n, h.edges, t) == oracles.alpha(h.n, h.edges)
                else:
                    ok = oracles.fas_top(h.n, h.arcs, t)
            elif k in ("vcma", "fasma"):
                h, ids = g.induced(inst.base_vertices() + list(W))
                t = ids.index(inst.target)
                ok = (oracles.vc_member(h.n, h.edges, t) if k == "vcma"
                      else oracles.fas_top(h.n, h.arcs, t))
            else:
                h = g.with_arcs(W)
                ok = oracles.fas_top(h.n, h.arcs, inst.target)
            if ok:
                return True
    return False


KINDS = ["vcms", "vcma", "ismd", "fasms", "fasma", "fasmaa", "gnd"]


@pytest.mark.parametrize("kind", KINDS)
def test_graph_control_matches_brute_force(kind):
    rng = random.Random(KINDS.index(kind))
    for _ in range(25):
        inst = random_graph_instance(rng, kind, max_n=5, max_k=2)
        dec, wit = decide_graph_control(inst)
        assert dec == _bf_graph_control(inst)
        if dec:
            assert len(wit) <= inst.limit and set(wit) <= set(inst.selectable)


def test_graph_control_k0_is_plain_predicate():
    g = Graph(3, ((0, 1), (1, 2)))
    inst = GraphControlInstance("vcms", g, (0, 2), 0, target=1)
    assert decide_graph_control(inst) == (vc_membership(g, 1), () if vc_membership(g, 1) else None)


def test_gnd_cases():
    assert gnd_decide(complete_graph(3), 0, 2)[0] is False
    assert gnd_decide(complete_graph(3), 1, 2)[0] is True
    assert gnd_decide(empty_graph(4), 0, 1)[0] is True


def test_graph_text_round_trips():
    rng = random.Random(8)
    g = random_graph(rng, 6)
    d = random_digraph(rng, 5)
    assert parse_graph(format_graph(g)) == g
    assert parse_digraph(format_digraph(d)) == d
    for kind in ("vcms", "vcma", "ismd", "fasms", "fasma", "fasmaa", "gnd"):
        inst = random_graph_instance(rng, kind)
        assert parse_graph_instance(format_graph_instance(inst)) == inst


def test_instance_validation():
    with pytest.raises(InvalidInput):
        GraphControlInstance("vcma", Graph(3, ((0, 1),)), (1,), 1, target=1)
    with pytest.raises(InvalidInput):
        GraphControlInstance("fasms", Graph(2), (), 0, target=0)
    with pytest.raises(InvalidInput):
        GraphControlInstance("fasmaa", Digraph(2, ((0, 1),)), ((0, 1),), 1, target=0)


def test_fas_top_forms_agree_on_six_vertices():
    # the ordering form against "some minimum arc set holds every in-arc"
    rng = random.Random(66)
    for _ in range(25):
        d = random_digraph(rng, 6)
        v = rng.randrange(6)
        assert fas_top_membership(d, v) == oracles.fas_top(d.n, d.arcs, v)
