"""End-to-end checks that reductions preserve decisions.

A chain runs a source instance through successive reductions and decides
every stage with its own brute-force oracle.  A row agrees when all stage
decisions coincide.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .control import solve_control
from .dodgson import dodgson_score
from .errors import InvalidInput
from .formulas import all_3cnf, all_qbf2, qsat2_decide, sat3_decide
from .generate import random_cnf, random_graph_instance, random_qbf2
from .graph_control import GraphControlInstance, decide_graph_control, gnd_decide
from .reductions import graph as gr
from .reductions import voting as vt
from .reductions.dodgson import sat3_to_dodgson_score


@dataclass
class ChainRow:
    source: str
    decisions: list[tuple[str, bool]]

    @property
    def agree(self) -> bool:
        return len({d for _, d in self.decisions}) == 1


@dataclass
class ChainReport:
    chain: str
    rows: list[ChainRow] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.agree for r in self.rows)

    @property
    def mismatches(self) -> list[ChainRow]:
        return [r for r in self.rows if not r.agree]

    def summary(self) -> str:
        yes = sum(1 for r in self.rows if r.decisions[0][1])
        status = "all stages agree" if self.ok else f"{len(self.mismatches)} MISMATCHES"
        out = [f"chain {self.chain}: {len(self.rows)} instances ({yes} yes), {status},"
               f" {self.elapsed:.1f}s"]
        for r in self.mismatches[:10]:
            out.append("  mismatch " + r.source + ": "
                       + ", ".join(f"{s}={'yes' if d else 'no'}" for s, d in r.decisions))
        return "\n".join(out)


# --- stage runners ----------------------------------------------------------

def _g(inst):
    return decide_graph_control(inst)[0]


def _c(inst):
    return solve_control(inst).decision


def vcms_stages(inst) -> list[tuple[str, bool]]:
    fs = gr.vcms_to_fasms(inst)
    return [("vcms", _g(inst)), ("fasms", _g(fs)),
            ("kemeny-ccdc_star", _c(vt.fasms_to_kemeny_ccdcstar(fs)))]


def vcma_stages(inst) -> list[tuple[str, bool]]:
    fa = gr.vcma_to_fasma(inst)
    return [("vcma", _g(inst)), ("fasma", _g(fa)),
            ("kemeny-ccac", _c(vt.fasma_to_kemeny_ccac(fa)))]


def vcma_arc_stages(inst) -> list[tuple[str, bool]]:
    faa = gr.vcma_to_fasmaa(inst)
    return [("vcma", _g(inst)), ("fasmaa", _g(faa)),
            ("kemeny_prime-ccav", _c(vt.fasmaa_to_kemeny_prime_ccav(faa)))]


def _qsat(stages, make):
    def run(f):
        return [("qsat2", qsat2_decide(f)[0])] + stages(make(f))
    return run


def _sat3_dodgson(phi):
    gadget = sat3_to_dodgson_score(phi)
    score = dodgson_score(gadget.election, gadget.q, max_budget=gadget.budget).score
    return [("sat3", sat3_decide(phi)[0]),
            ("dodgson-score<=4m+n", score is not None and score <= gadget.budget)]


def _graph_source(kind, stages):
    def run(inst):
        if inst.kind != kind:
            raise InvalidInput(f"expected a {kind} instance")
        return stages(inst)
    return run


def _fas_single(kind, reduce):
    def run(inst):
        return [(kind, _g(inst)), ("kemeny", _c(reduce(inst)))]
    return _graph_source(kind, run)


def _ismd_young(inst):
    g = inst.graph
    if any(g.degree(v) == 0 for v in range(g.n)):
        raise InvalidInput("the Young gadget needs a graph without isolated vertices")
    padded = vt.repair_for_young(g, inst.limit)
    src = GraphControlInstance("ismd", padded, tuple(range(padded.n)), inst.limit,
                               target=inst.target)
    return [("ismd", _g(src)), ("young-ccdv", vt.decide_young_gadget(vt.ismd_to_young_ccdv(src))[0])]


def _gnd(reduce, kind):
    def run(inst):
        return [("gnd", gnd_decide(inst.graph, inst.limit, inst.ell)[0]),
                (kind, _g(reduce(inst.graph, inst.limit, inst.ell)))]
    return run


# name -> (source family, stage runner)
CHAINS = {
    "qsat2-kemeny-ccdcstar": ("qbf2", _qsat(vcms_stages, gr.qsat2_to_vcms)),
    "qsat2-kemeny-ccac": ("qbf2", _qsat(vcma_stages, gr.qsat2_to_vcma)),
    "qsat2-kemeny-prime-ccav": ("qbf2", _qsat(vcma_arc_stages, gr.qsat2_to_vcma)),
    "sat3-dodgson": ("cnf", _sat3_dodgson),
    "vcms-kemeny-ccdcstar": ("vcms", _graph_source("vcms", vcms_stages)),
    "vcma-kemeny-ccac": ("vcma", _graph_source("vcma", vcma_stages)),
    "vcma-kemeny-prime-ccav": ("vcma", _graph_source("vcma", vcma_arc_stages)),
    "fasms-kemeny-ccdcstar": ("fasms", _fas_single("fasms", vt.fasms_to_kemeny_ccdcstar)),
    "fasma-kemeny-ccac": ("fasma", _fas_single("fasma", vt.fasma_to_kemeny_ccac)),
    "fasmaa-kemeny-prime-ccav": ("fasmaa",
                                 _fas_single("fasmaa", vt.fasmaa_to_kemeny_prime_ccav)),
    "ismd-young-ccdv": ("ismd", _ismd_young),
    "gnd-ismd": ("gnd", _gnd(gr.gnd_to_ismd, "ismd")),
    "gnd-vcms": ("gnd", _gnd(gr.gnd_to_vcms, "vcms")),
}


def _describe(src) -> str:
    if hasattr(src, "clauses"):
        return f"n={getattr(src, 'n', getattr(src, 'num_vars', '?'))} clauses={list(src.clauses)}"
    g = src.graph
    body = getattr(g, "edges", None) or getattr(g, "arcs", ())
    return f"{src.kind} n={g.n} {list(body)} sel={list(src.selectable)} k={src.limit} t={src.target}"


def chain_sources(name: str, exhaustive_n: int | None = None, max_m: int = 2,
                  trials: int = 50, seed: int = 0, max_n: int = 6, max_k: int = 2):
    """Source instances: every formula with ``exhaustive_n`` variables per
    block (all n up to it for plain 3CNF) and at most ``max_m`` clauses,
    or ``trials`` seeded random instances."""
    if name not in CHAINS:
        raise InvalidInput(f"unknown chain {name!r}; choose from {', '.join(CHAINS)}")
    family, _ = CHAINS[name]
    if exhaustive_n is not None:
        if family == "qbf2":
            return list(all_qbf2(exhaustive_n, max_m))
        if family == "cnf":
            return list(all_3cnf(exhaustive_n, max_m))
        raise InvalidInput(f"chain {name} has no exhaustive mode; use --trials")
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        if family == "qbf2":
            out.append(random_qbf2(rng, 1, rng.randint(1, max_m)))
        elif family == "cnf":
            out.append(random_cnf(rng, rng.randint(1, 2), rng.randint(1, max_m)))
        else:
            inst = random_graph_instance(rng, family, max_n, max_k)
            if family == "ismd":
                g = inst.graph
                if any(g.degree(v) == 0 for v in range(g.n)):
                    continue
                inst = GraphControlInstance("ismd", g, inst.selectable, min(inst.limit, 1),
                                            target=inst.target)
            out.append(inst)
    return out


def verify_chain(name: str, sources) -> ChainReport:
    _, run = CHAINS[name]
    report = ChainReport(name)
    start = time.perf_counter()
    for src in sources:
        report.rows.append(ChainRow(_describe(src), run(src)))
    report.elapsed = time.perf_counter() - start
    return report
