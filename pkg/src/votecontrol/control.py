"""Constructive control decided by guessing the chair's action and checking.

Every action set of at most ``limit`` elements is tried in order of size and
then lexicographically; the first action making the preferred candidate a
(co-)winner is the witness.  Voter actions pick sub-multisets of the vote
entries, written as nondecreasing tuples of vote indices.

Kemeny rules get a shortcut that changes no answers: restricting the
candidate set leaves the pairwise tallies among the survivors untouched, so
one ordering solver serves every candidate action.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .election import (Election, Vote, election_lines, format_vote, is_vote_line,
                       pairwise_matrix, parse_election_lines, parse_vote_line,
                       restrict_election)
from .errors import InvalidInput, ResourceLimit
from .kemeny import oracle_from_matrix
from .rules import check_rule, is_winner

KINDS = ("ccac", "ccav", "ccdv", "ccdc", "ccdc_star")
ENUM_LIMIT = 1 << 22


@dataclass(frozen=True)
class ControlInstance:
    rule: str
    kind: str
    election: Election
    preferred: int
    limit: int
    unregistered: frozenset = frozenset()
    deletable: frozenset | None = None
    addable_votes: tuple[Vote, ...] = ()

    def __post_init__(self):
        check_rule(self.rule)
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown control kind {self.kind!r}")
        e = self.election
        m = e.num_candidates
        object.__setattr__(self, "unregistered", frozenset(int(c) for c in self.unregistered))
        if self.deletable is not None:
            object.__setattr__(self, "deletable", frozenset(int(c) for c in self.deletable))
        votes = tuple(v if isinstance(v, Vote) else Vote(*v) for v in self.addable_votes)
        object.__setattr__(self, "addable_votes", Election(m, votes).votes)
        if not 0 <= self.preferred < m:
            raise InvalidInput("preferred candidate out of range")
        if self.limit < 0:
            raise InvalidInput("limit must be nonnegative")
        if any(not 0 <= c < m for c in self.unregistered):
            raise InvalidInput("unregistered candidate out of range")
        if self.unregistered and self.kind != "ccac":
            raise InvalidInput("only ccac has unregistered candidates")
        if self.kind == "ccac" and self.preferred in self.unregistered:
            raise InvalidInput("the preferred candidate must be registered")
        if self.kind == "ccac" and len(self.unregistered) == m:
            raise InvalidInput("ccac needs at least one registered candidate")
        if self.kind == "ccdc_star":
            if self.deletable is None:
                raise InvalidInput("ccdc_star needs a deletable set")
            if any(not 0 <= c < m for c in self.deletable):
                raise InvalidInput("deletable candidate out of range")
            if self.preferred in self.deletable:
                raise InvalidInput("the preferred candidate may not be deletable")
        elif self.deletable is not None:
            raise InvalidInput("only ccdc_star takes an explicit deletable set")
        if self.addable_votes and self.kind != "ccav":
            raise InvalidInput("only ccav has addable voters")
        if self.rule == "kemeny" and (e.has_partial or any(v.partial for v in self.addable_votes)):
            raise InvalidInput("partial votes need the kemeny_prime rule")
        if self.rule in ("young", "dodgson") and (
                e.has_partial or any(v.partial for v in self.addable_votes)):
            raise InvalidInput(f"{self.rule} needs complete votes")

    @property
    def registered(self) -> list[int]:
        return [c for c in self.election.candidates if c not in self.unregistered]

    def action_set(self) -> list[int]:
        """Candidates the chair may pick, or vote indices for voter kinds."""
        e = self.election
        if self.kind == "ccac":
            return sorted(self.unregistered)
        if self.kind == "ccdc":
            return [c for c in e.candidates if c != self.preferred]
        if self.kind == "ccdc_star":
            return sorted(self.deletable)
        if self.kind == "ccdv":
            return list(range(len(e.votes)))
        return list(range(len(self.addable_votes)))

    def multiplicities(self) -> list[int]:
        if self.kind == "ccdv":
            return [v.count for v in self.election.votes]
        if self.kind == "ccav":
            return [v.count for v in self.addable_votes]
        return [1] * len(self.action_set())

    def kept_candidates(self, action) -> list[int]:
        if self.kind == "ccac":
            chosen = set(action)
            return [c for c in self.election.candidates
                    if c not in self.unregistered or c in chosen]
        dropped = set(action)
        return [c for c in self.election.candidates if c not in dropped]

    def apply(self, action) -> tuple[Election, int]:
        """The election after the action, and the preferred candidate's id in it."""
        e = self.election
        if self.kind in ("ccac", "ccdc", "ccdc_star"):
            kept = self.kept_candidates(action)
            return restrict_election(e, kept), kept.index(self.preferred)
        if self.kind == "ccdv":
            counts = [v.count for v in e.votes]
            for i in action:
                counts[i] -= 1
            votes = [Vote(c, v.order, v.partial) for c, v in zip(counts, e.votes) if c > 0]
            return e.with_votes(votes), self.preferred
        extra: dict[int, int] = {}
        for i in action:
            extra[i] = extra.get(i, 0) + 1
        added = [Vote(k, self.addable_votes[i].order, self.addable_votes[i].partial)
                 for i, k in sorted(extra.items())]
        return e.with_votes(e.votes + tuple(added)), self.preferred


@dataclass(frozen=True)
class ControlOutcome:
    decision: bool
    witness: tuple | None
    subsets_examined: int
    elapsed: float = field(compare=False, default=0.0)


def count_actions(mults: list[int], limit: int) -> int:
    """Number of sub-multisets of size at most ``limit``."""
    ways = [1] + [0] * limit
    for k in mults:
        new = [0] * (limit + 1)
        for s, w in enumerate(ways):
            if w:
                for x in range(min(k, limit - s) + 1):
                    new[s + x] += w
        ways = new
    return sum(ways)


def sub_multisets(mults: list[int], size: int, start: int = 0):
    """Nondecreasing index tuples of the given size, lexicographically."""
    if size == 0:
        yield ()
        return
    for i in range(start, len(mults)):
        if mults[i] == 0:
            continue
        mults[i] -= 1
        for rest in sub_multisets(mults, size - 1, i):
            yield (i,) + rest
        mults[i] += 1


def _checker(inst: ControlInstance):
    e = inst.election
    p = inst.preferred
    if inst.rule in ("kemeny", "kemeny_prime"):
        P = pairwise_matrix(e)
        if inst.kind in ("ccac", "ccdc", "ccdc_star"):
            oracle = oracle_from_matrix(P)
            return lambda action: oracle.is_top(p, inst.kept_candidates(action))
        deltas = [pairwise_matrix(Election(e.num_candidates, (Vote(1, v.order, v.partial),)))
                  for v in (e.votes if inst.kind == "ccdv" else inst.addable_votes)]
        sign = -1 if inst.kind == "ccdv" else 1

        def kemeny_voters(action):
            Q = P.copy()
            for i in action:
                Q += sign * deltas[i]
            return oracle_from_matrix(np.asarray(Q)).is_top(p, range(e.num_candidates))
        return kemeny_voters

    def generic(action):
        e2, p2 = inst.apply(action)
        return is_winner(e2, inst.rule, p2)
    return generic


def solve_control(inst: ControlInstance, enum_limit: int = ENUM_LIMIT) -> ControlOutcome:
    start = time.perf_counter()
    mults = inst.multiplicities()
    total = count_actions(mults, inst.limit)
    if total > enum_limit:
        raise ResourceLimit(f"{total} actions exceeds the enumeration limit {enum_limit}")
    actions = inst.action_set()
    check = _checker(inst)
    examined = 0
    for size in range(min(inst.limit, sum(mults)) + 1):
        for idx in sub_multisets(list(mults), size):
            examined += 1
            action = tuple(actions[i] for i in idx)
            if check(action):
                return ControlOutcome(True, action, examined, time.perf_counter() - start)
    return ControlOutcome(False, None, examined, time.perf_counter() - start)


def verify_witness(inst: ControlInstance, witness) -> bool:
    """Replay a witness through the plain winner check."""
    e2, p2 = inst.apply(witness)
    return is_winner(e2, inst.rule, p2)


# --- text format ----------------------------------------------------------

def _ids(text: str, m: int) -> list[int]:
    try:
        ids = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidInput(f"bad candidate list {text!r}") from None
    if any(not 0 <= c < m for c in ids):
        raise InvalidInput(f"candidate id out of range in {text!r}")
    return ids


def parse_control(text: str) -> ControlInstance:
    lines = list(enumerate(text.splitlines(), 1))
    split = next((i for i, (_, l) in enumerate(lines) if l.strip() == "addable-voters:"), None)
    head = lines if split is None else lines[:split]
    tail = [] if split is None else lines[split + 1:]
    e, rest = parse_election_lines(head)
    fields: dict[str, str] = {}
    for lineno, line in rest:
        key, sep, val = line.partition(":")
        if not sep or key.strip() not in ("rule", "kind", "unregistered", "deletable",
                                          "limit", "preferred"):
            raise InvalidInput(f"line {lineno}: unexpected {line!r}")
        fields[key.strip()] = val.strip()
    for key in ("rule", "kind", "limit", "preferred"):
        if key not in fields:
            raise InvalidInput(f"control instance is missing '{key}:'")
    addable = []
    for lineno, raw in tail:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not is_vote_line(line):
            raise InvalidInput(f"line {lineno}: expected a vote line")
        addable.append(parse_vote_line(line, e.num_candidates, lineno))
    m = e.num_candidates
    preferred = _ids(fields["preferred"], m)
    if len(preferred) != 1:
        raise InvalidInput("exactly one preferred candidate")
    try:
        limit = int(fields["limit"])
    except ValueError:
        raise InvalidInput("bad limit") from None
    deletable = frozenset(_ids(fields["deletable"], m)) if "deletable" in fields else None
    return ControlInstance(
        rule=fields["rule"], kind=fields["kind"], election=e, preferred=preferred[0],
        limit=limit, unregistered=frozenset(_ids(fields.get("unregistered", ""), m)),
        deletable=deletable, addable_votes=tuple(addable))


def format_control(inst: ControlInstance) -> str:
    out = [f"rule: {inst.rule}", f"kind: {inst.kind}"]
    out += election_lines(inst.election)
    if inst.kind == "ccac":
        out.append("unregistered: " + ",".join(str(c + 1) for c in sorted(inst.unregistered)))
    if inst.deletable is not None:
        out.append("deletable: " + ",".join(str(c + 1) for c in sorted(inst.deletable)))
    out.append(f"limit: {inst.limit}")
    out.append(f"preferred: {inst.preferred + 1}")
    if inst.kind == "ccav":
        out.append("addable-voters:")
        out += [format_vote(v) for v in inst.addable_votes]
    return "\n".join(out) + "\n"
