"""Named reductions with text I/O and structural metadata.

``REDUCTIONS`` maps a reduction name to its source format, the function and
the metadata it reports.  ``run_reduction`` parses a source file, applies the
function and returns a ``ReductionTrace`` whose ``target_text`` is a file in
the target format.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..control import format_control
from ..election import format_election
from ..errors import InvalidInput
from ..formulas import parse_dimacs, parse_qcnf
from ..graph_control import format_graph_instance, parse_graph_instance
from ..graphs import format_digraph, format_graph, parse_digraph
from . import dodgson as dg
from . import graph as gr
from . import voting as vt


@dataclass(frozen=True)
class ReductionTrace:
    name: str
    source_id: str
    target: object
    target_text: str
    meta: dict = field(default_factory=dict)

    def report(self) -> str:
        out = [f"reduction: {self.name}", f"source: {self.source_id}"]
        out += [f"{k}: {v}" for k, v in self.meta.items()]
        return "\n".join(out) + "\n"


def source_id(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:16]


def _graph_meta(inst) -> dict:
    g = inst.graph
    out = {"kind": inst.kind, "vertices": g.n}
    out["arcs" if hasattr(g, "arcs") else "edges"] = len(g.arcs if hasattr(g, "arcs") else g.edges)
    out["selectable"] = len(inst.selectable)
    out["limit"] = inst.limit
    if inst.target is not None:
        out["target"] = inst.target + 1
    return out


def _control_meta(inst) -> dict:
    e = inst.election
    out = {"rule": inst.rule, "kind": inst.kind, "candidates": e.num_candidates,
           "voters": e.num_voters, "distinct_votes": len(e.votes), "limit": inst.limit,
           "preferred": inst.preferred + 1}
    if inst.kind == "ccac":
        out["unregistered"] = len(inst.unregistered)
    if inst.deletable is not None:
        out["deletable"] = len(inst.deletable)
    if inst.kind == "ccav":
        out["addable_voters"] = sum(v.count for v in inst.addable_votes)
    return out


def _karp(phi):
    g, bound = gr.karp_3sat_to_vc(phi)
    text = f"c satisfiable iff a vertex cover of size {bound} exists\n" + format_graph(g)
    meta = {"vertices": g.n, "edges": len(g.edges), "literal_vertices": 2 * phi.num_vars,
            "clause_vertices": 3 * phi.m, "cover_bound": bound}
    return g, text, meta


def _h(fn):
    def run(f):
        inst = fn(f)
        meta = _graph_meta(inst)
        meta.update({"clause_gadgets": f.m, "d_vertices": f.m,
                     "h_vertices": 4 * f.n + 4 * f.m + 1})
        if inst.kind == "vcma":
            meta["primed_vertices"] = 2 * f.n
        return inst, format_graph_instance(inst), meta
    return run


def _graph_to_graph(fn):
    def run(inst):
        out = fn(inst)
        return out, format_graph_instance(out), _graph_meta(out)
    return run


def _graph_to_control(fn):
    def run(inst):
        out = fn(inst)
        meta = _control_meta(out)
        if out.rule == "kemeny":
            meta["mcgarvey_voters"] = 2 * len(inst.graph.arcs)
        return out, format_control(out), meta
    return run


def _gnd(fn):
    def run(inst):
        if inst.kind != "gnd":
            raise InvalidInput("expected a gnd instance")
        out = fn(inst.graph, inst.limit, inst.ell)
        return out, format_graph_instance(out), _graph_meta(out)
    return run


def _mcgarvey(d):
    e = vt.mcgarvey(d)
    return e, format_election(e), {"candidates": e.num_candidates, "voters": e.num_voters}


def _dwork(d):
    h = gr.dwork_hat(d)
    return h, format_digraph(h), {"vertices": h.n, "arcs": len(h.arcs), "arc_vertices": len(d.arcs)}


def _young(inst):
    gadget = vt.ismd_to_young_ccdv(inst)
    g = gadget.graph
    hat_nbrs = set(g.neighbors(gadget.target))
    meta = _control_meta(gadget.instance)
    meta.update({"type_IA": g.n - len(hat_nbrs), "type_IB": len(hat_nbrs),
                 "type_II": 1, "type_III": 2 * g.n})
    return gadget, format_control(gadget.instance), meta


def _sat3_dodgson(phi):
    gadget = dg.sat3_to_dodgson_score(phi)
    e = gadget.election
    text = (f"# q = candidate {gadget.q + 1}; satisfiable iff its Dodgson score is at most"
            f" {gadget.budget}\n" + format_election(e))
    meta = {"candidates": e.num_candidates, "voters": e.num_voters, "q": gadget.q + 1,
            "budget": gadget.budget}
    meta.update({f"block_{k}": v for k, v in gadget.blocks.items()})
    return gadget, text, meta


def _dodgson_control(fn):
    def run(f):
        gadget = fn(f)
        meta = _control_meta(gadget.instance)
        pf = gadget.formula
        meta.update({"padded_n": pf.n, "m": pf.m, "m_hat": pf.m_hat, "buffers": 4})
        meta.update({f"block_{k}": v for k, v in gadget.blocks.items()})
        return gadget, format_control(gadget.instance), meta
    return run


# name -> (source format, runner)
REDUCTIONS = {
    "karp": ("cnf", _karp),
    "qsat2-vcms": ("qcnf", _h(gr.qsat2_to_vcms)),
    "qsat2-vcma": ("qcnf", _h(gr.qsat2_to_vcma)),
    "vcms-fasms": ("graph-instance", _graph_to_graph(gr.vcms_to_fasms)),
    "vcma-fasma": ("graph-instance", _graph_to_graph(gr.vcma_to_fasma)),
    "vcma-fasmaa": ("graph-instance", _graph_to_graph(gr.vcma_to_fasmaa)),
    "fasms-kemeny-ccdcstar": ("graph-instance", _graph_to_control(vt.fasms_to_kemeny_ccdcstar)),
    "fasma-kemeny-ccac": ("graph-instance", _graph_to_control(vt.fasma_to_kemeny_ccac)),
    "fasmaa-kemeny-prime-ccav": ("graph-instance",
                                 _graph_to_control(vt.fasmaa_to_kemeny_prime_ccav)),
    "mcgarvey": ("digraph", _mcgarvey),
    "dwork-hat": ("digraph", _dwork),
    "gnd-ismd": ("graph-instance", _gnd(gr.gnd_to_ismd)),
    "gnd-vcms": ("graph-instance", _gnd(gr.gnd_to_vcms)),
    "ismd-young-ccdv": ("graph-instance", _young),
    "sat3-dodgson": ("cnf", _sat3_dodgson),
    "qsat2-dodgson-ccdcstar": ("qcnf", _dodgson_control(dg.qsat2_to_dodgson_ccdcstar)),
    "qsat2-dodgson-ccac": ("qcnf", _dodgson_control(dg.qsat2_to_dodgson_ccac)),
}

PARSERS = {
    "cnf": parse_dimacs,
    "qcnf": parse_qcnf,
    "graph-instance": parse_graph_instance,
    "digraph": parse_digraph,
}


def apply_reduction(name: str, source) -> ReductionTrace:
    if name not in REDUCTIONS:
        raise InvalidInput(f"unknown reduction {name!r}; choose from {', '.join(REDUCTIONS)}")
    _, run = REDUCTIONS[name]
    target, text, meta = run(source)
    return ReductionTrace(name, "", target, text, meta)


def run_reduction(name: str, text: str) -> ReductionTrace:
    if name not in REDUCTIONS:
        raise InvalidInput(f"unknown reduction {name!r}; choose from {', '.join(REDUCTIONS)}")
    fmt, run = REDUCTIONS[name]
    target, out, meta = run(PARSERS[fmt](text))
    return ReductionTrace(name, source_id(text), target, out, meta)
