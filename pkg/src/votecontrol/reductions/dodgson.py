"""Dodgson gadgets: a 3CNF formula as the score of one candidate, and a
Qbf2 formula as a candidate-deletion (or addition) control instance.

The unlisted middle of a vote is filled with the remaining candidates in
ascending id order.  Sets inside a vote are also listed in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..control import ControlInstance
from ..election import Election, Vote
from ..errors import InvalidInput, InvariantViolation
from ..formulas import Cnf, Qbf2Formula, pad_qbf2


def _filler(m: int):
    def order(head, tail=()):
        used = set(head) | set(tail)
        if len(used) != len(head) + len(tail):
            raise InvariantViolation("gadget vote repeats a candidate")
        return tuple(head) + tuple(c for c in range(m) if c not in used) + tuple(tail)
    return order


@dataclass(frozen=True)
class DodgsonScoreGadget:
    election: Election
    q: int
    budget: int  # phi satisfiable iff the Dodgson score of q is at most this
    blocks: dict = field(compare=False, default_factory=dict)


def sat3_to_dodgson_score(phi: Cnf) -> DodgsonScoreGadget:
    n, m = phi.num_vars, phi.m
    if n < 1 or m < 1 or 2 * n + 3 * m - 5 < 0:
        raise InvalidInput("need at least one variable and one clause")
    zhat = list(range(n))
    c = list(range(n, n + m))
    cij = [[n + m + 3 * i + j for j in range(3)] for i in range(m)]
    q = n + 4 * m
    b = q + 1
    total = b + 1
    order = _filler(total)

    block1 = [Vote(1, order([c[i], cij[i][j], q])) for i in range(m) for j in range(3)]
    block2 = []
    for t in range(1, n + 1):
        for lit in (t, -t):
            occ = sorted(cij[i][j] for i, cl in enumerate(phi.clauses)
                         for j, x in enumerate(cl) if x == lit)
            block2.append(Vote(1, order([zhat[t - 1]] + occ + [q])))
    block3 = [Vote(1, order([], [b, q] + c))]
    if 2 * n + 3 * m - 5 > 0:
        block3.append(Vote(2 * n + 3 * m - 5, order([], [b, q])))
    names = ([f"zhat{t + 1}" for t in range(n)] + [f"c{i + 1}" for i in range(m)]
             + [f"c{i + 1}.{j + 1}" for i in range(m) for j in range(3)] + ["q", "b"])
    e = Election(total, tuple(block1 + block2 + block3), tuple(names))
    blocks = {"I": 3 * m, "II": 2 * n, "III": 2 * n + 3 * m - 4}
    if e.num_voters != 6 * m + 4 * n - 4:
        raise InvariantViolation("voter count differs from 6m+4n-4")
    return DodgsonScoreGadget(e, q, 4 * m + n, blocks)


@dataclass(frozen=True)
class DodgsonControlGadget:
    formula: Qbf2Formula  # after padding
    instance: ControlInstance
    ids: dict = field(compare=False)  # group name -> candidate ids
    blocks: dict = field(compare=False)  # block name -> voter count

    @property
    def p(self) -> int:
        return self.ids["p"][0]

    @property
    def q(self) -> int:
        return self.ids["q"][0]

    @property
    def d(self) -> int:
        return self.ids["d"][0]

    @property
    def x_literals(self) -> list[int]:
        return self.ids["X"]

    def literal_candidate(self, lit: int) -> int:
        """Candidate of x-literal ``lit`` (a DIMACS literal over 1..n)."""
        return self.ids["X"][2 * (abs(lit) - 1) + (lit < 0)]

    @property
    def d_score(self) -> int:
        f = self.formula
        return 2 * f.n + f.m + f.m_hat + 2


def pad_for_dodgson(f: Qbf2Formula) -> Qbf2Formula:
    return pad_qbf2(f, max(f.n, f.m + 1, 7))


def _build(f: Qbf2Formula):
    n, m, mh = f.n, f.m, f.m_hat
    if not (n > m and n > 6):
        raise InvalidInput("the gadget needs n > m and n > 6; pad the formula first")
    ids: dict[str, list[int]] = {}
    names: list[str] = []

    def alloc(key, labels):
        ids[key] = list(range(len(names), len(names) + len(labels)))
        names.extend(labels)

    alloc("xhat", [f"xhat{t}" for t in range(1, n + 1)])
    alloc("yhat", [f"yhat{t}" for t in range(1, n + 1)])
    alloc("c", [f"c{i}" for i in range(1, m + 1)])
    y_occ = [(i, j) for i, cl in enumerate(f.clauses) for j, x in enumerate(cl) if not f.is_x(x)]
    alloc("cij", [f"c{i + 1}.{j + 1}" for i, j in y_occ])
    alloc("b", ["b1", "b2", "b3", "b4"])
    alloc("X", [s for t in range(1, n + 1) for s in (f"x{t}", f"-x{t}")])
    alloc("p", ["p"])
    alloc("q", ["q"])
    alloc("d", ["d"])
    total = len(names)
    order = _filler(total)
    c, b, X = ids["c"], ids["b"], ids["X"]
    p, q, d = ids["p"][0], ids["q"][0], ids["d"][0]
    cij = dict(zip(y_occ, ids["cij"]))

    def xcand(lit):
        return X[2 * (abs(lit) - 1) + (lit < 0)]

    tail = [q, b[0], p, d]
    blocks: dict[str, list[Vote]] = {k: [] for k in ("IA", "IB", "II", "III", "IV", "V", "VI")}
    for i, cl in enumerate(f.clauses):
        for j, x in enumerate(cl):
            if f.is_x(x):
                blocks["IB"].append(Vote(1, order([c[i], xcand(x)] + tail)))
            else:
                blocks["IA"].append(Vote(1, order([c[i], cij[(i, j)]] + tail)))
    for t in range(1, n + 1):
        yhat = ids["yhat"][t - 1]
        for lit in (n + t, -(n + t)):
            occ = sorted(cij[(i, j)] for i, cl in enumerate(f.clauses)
                         for j, x in enumerate(cl) if x == lit)
            blocks["II"].append(Vote(1, order([yhat] + occ + tail)))
    for t in range(1, n + 1):
        xhat = ids["xhat"][t - 1]
        for lit in (t, -t):
            blocks["III"].append(Vote(1, order([xhat, xcand(lit), p, q, d])))
    blocks["IV"] = [
        Vote(1, order([d], [b[1]] + c + sorted(ids["cij"]) + ids["yhat"] + [p, b[0], q])),
        Vote(1, order([d], [b[1]] + ids["xhat"] + [q, b[0], b[2], p])),
    ]
    blocks["V"] = [Vote(1, order([d], [b[1], p, q] + c))]
    if 2 * n + 3 * m - 6 > 0:
        blocks["V"].append(Vote(2 * n + 3 * m - 6, order([d], [b[1], p, b[0], q])))
    six = [
        (4 * n + m + mh - 2, order([p, q, d])),
        (2 * n + m + mh - 4, order([], [b[2], q, b[3], d, p, b[0], b[1]] + X)),
        (4 * n - 1, order([d], [b[1], q, b[0], p, b[2], b[3]] + X)),
        (2, order([], [b[2], d, p, b[3], q, b[0], b[1]] + X)),
    ]
    blocks["VI"] = [Vote(k, o) for k, o in six if k > 0]
    votes = tuple(v for key in blocks for v in blocks[key])
    e = Election(total, votes, tuple(names))
    if e.num_voters != 16 * n + 8 * m + 2 * mh - 8:
        raise InvariantViolation("voter count differs from 16n+8m+2m_hat-8")
    counts = {k: sum(v.count for v in vs) for k, vs in blocks.items()}
    return e, ids, counts


def qsat2_to_dodgson_ccdcstar(f: Qbf2Formula, pad: bool = True) -> DodgsonControlGadget:
    if pad:
        f = pad_for_dodgson(f)
    e, ids, counts = _build(f)
    inst = ControlInstance("dodgson", "ccdc_star", e, ids["p"][0], 2 * f.n,
                           deletable=frozenset(ids["X"]))
    return DodgsonControlGadget(f, inst, ids, counts)


def qsat2_to_dodgson_ccac(f: Qbf2Formula, pad: bool = True) -> DodgsonControlGadget:
    """Same election; the x-literal candidates start unregistered."""
    if pad:
        f = pad_for_dodgson(f)
    e, ids, counts = _build(f)
    inst = ControlInstance("dodgson", "ccac", e, ids["p"][0], 2 * f.n,
                           unregistered=frozenset(ids["X"]))
    return DodgsonControlGadget(f, inst, ids, counts)
