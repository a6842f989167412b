"""Seedable random instances.  Equal seeds give identical instances."""

from __future__ import annotations

import random

from .control import ControlInstance
from .election import Election, Vote
from .formulas import Cnf, Qbf2Formula
from .graph_control import DIRECTED, GraphControlInstance
from .graphs import Digraph, Graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_digraph(rng: random.Random, n: int, p: float = 0.6) -> Digraph:
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, tuple(arcs))


def random_ranking(rng: random.Random, m: int) -> tuple[int, ...]:
    r = list(range(m))
    rng.shuffle(r)
    return tuple(r)


def random_election(rng: random.Random, m: int, voters: int, distinct: int | None = None) -> Election:
    """``voters`` voters spread over at most ``distinct`` rankings."""
    pool = [random_ranking(rng, m) for _ in range(distinct or voters)]
    counts: dict[tuple[int, ...], int] = {}
    for _ in range(voters):
        r = rng.choice(pool)
        counts[r] = counts.get(r, 0) + 1
    return Election(m, tuple(Vote(k, r) for r, k in counts.items()))


def random_partial_election(rng: random.Random, m: int, voters: int) -> Election:
    votes = []
    for _ in range(voters):
        size = rng.randint(2, m)
        votes.append(Vote(1, random_ranking(rng, m)[:size], True))
    return Election(m, tuple(votes))


def _random_clause(rng: random.Random, num_vars: int) -> tuple[int, int, int]:
    return tuple(rng.randint(1, num_vars) * rng.choice((1, -1)) for _ in range(3))


def random_cnf(rng: random.Random, n: int, m: int) -> Cnf:
    return Cnf(n, tuple(_random_clause(rng, n) for _ in range(m)))


def random_qbf2(rng: random.Random, n: int, m: int) -> Qbf2Formula:
    return Qbf2Formula(n, tuple(_random_clause(rng, 2 * n) for _ in range(m)))


def random_graph_instance(rng: random.Random, kind: str, max_n: int = 6,
                          max_k: int = 2) -> GraphControlInstance:
    """Total vertex count (base plus addable) is at most ``max_n``."""
    k = rng.randint(0, max_k)
    if kind == "gnd":
        n = rng.randint(1, max_n)
        return GraphControlInstance("gnd", random_graph(rng, n), tuple(range(n)), k,
                                    ell=rng.randint(1, 3))
    n = rng.randint(2, max_n)
    g = random_digraph(rng, n) if kind in DIRECTED else random_graph(rng, n)
    target = rng.randrange(n)
    others = [v for v in range(n) if v != target]
    if kind == "fasmaa":
        have = set(g.arcs) | {(v, u) for u, v in g.arcs}
        free = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in have]
        rng.shuffle(free)
        picked = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in free[: rng.randint(0, 3)]]
        return GraphControlInstance(kind, g, tuple(picked), k, target=target)
    if kind in ("vcma", "fasma"):
        sel = rng.sample(others, rng.randint(0, min(3, len(others))))
    elif kind == "ismd":
        sel = list(range(n))
    else:
        sel = [v for v in others if rng.random() < 0.6]
        if kind == "vcms" and rng.random() < 0.3:
            sel.append(target)
    return GraphControlInstance(kind, g, tuple(sel), k, target=target)


def random_control_instance(rng: random.Random, rule: str, kind: str, m: int = 4,
                            voters: int = 5, limit: int | None = None) -> ControlInstance:
    partial = rule == "kemeny_prime"
    e = random_partial_election(rng, m, voters) if partial else random_election(rng, m, voters)
    p = rng.randrange(m)
    k = rng.randint(0, 2) if limit is None else limit
    if kind == "ccac":
        others = [c for c in range(m) if c != p]
        unreg = rng.sample(others, rng.randint(1, min(2, len(others))))
        return ControlInstance(rule, kind, e, p, k, unregistered=frozenset(unreg))
    if kind == "ccdc_star":
        others = [c for c in range(m) if c != p]
        dele = [c for c in others if rng.random() < 0.5]
        return ControlInstance(rule, kind, e, p, k, deletable=frozenset(dele))
    if kind == "ccav":
        extra = random_partial_election(rng, m, 3) if partial else random_election(rng, m, 3)
        return ControlInstance(rule, kind, e, p, k, addable_votes=extra.votes)
    return ControlInstance(rule, kind, e, p, k)
