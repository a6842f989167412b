"""Election data model, text format, and pairwise tallies.

Candidates are the integers ``0..m-1``.  A vote is a ranking (most
preferred first) together with a multiplicity.  Votes flagged ``partial``
may list any subset of the candidates; they are only meaningful for the
Kemeny' rule, where unlisted candidates contribute nothing.

Text format (1-based candidate ids)::

    # comment
    candidates: 3
    name: 1 alice
    2: 1,2,3
    1 partial: 3,1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidInput


class Vote(NamedTuple):
    count: int
    order: tuple[int, ...]
    partial: bool = False


@dataclass(frozen=True)
class ScoreReport:
    score: int | None
    witness: object = None


@dataclass(frozen=True)
class Election:
    num_candidates: int
    votes: tuple[Vote, ...] = ()
    candidate_names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        m = self.num_candidates
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise InvalidInput(f"need at least one candidate, got {m!r}")
        votes = tuple(
            v if isinstance(v, Vote) else Vote(int(v[0]), tuple(v[1]), *v[2:])
            for v in self.votes
        )
        votes = tuple(Vote(int(v.count), tuple(int(c) for c in v.order), bool(v.partial)) for v in votes)
        object.__setattr__(self, "votes", votes)
        for i, v in enumerate(votes):
            if v.count < 1:
                raise InvalidInput(f"vote {i}: count must be positive, got {v.count}")
            if len(set(v.order)) != len(v.order):
                raise InvalidInput(f"vote {i}: repeated candidate in {v.order}")
            if any(c < 0 or c >= m for c in v.order):
                raise InvalidInput(f"vote {i}: candidate id out of range in {v.order}")
            if not v.partial and len(v.order) != m:
                raise InvalidInput(f"vote {i}: complete vote must rank all {m} candidates")
        if self.candidate_names is not None:
            names = tuple(str(x) for x in self.candidate_names)
            if len(names) != m:
                raise InvalidInput("candidate_names must name every candidate")
            object.__setattr__(self, "candidate_names", names)

    @property
    def candidates(self) -> range:
        return range(self.num_candidates)

    @property
    def num_voters(self) -> int:
        return sum(v.count for v in self.votes)

    @property
    def has_partial(self) -> bool:
        return any(v.partial for v in self.votes)

    def name(self, c: int) -> str:
        if self.candidate_names is None:
            return str(c + 1)
        return self.candidate_names[c]

    def with_votes(self, votes: Iterable[Vote]) -> "Election":
        return Election(self.num_candidates, tuple(votes), self.candidate_names)

    def voters(self) -> Iterable[tuple[int, ...]]:
        """Each individual voter's ranking, multiplicities expanded."""
        for v in self.votes:
            for _ in range(v.count):
                yield v.order


def check_ranking(r: Sequence[int], m: int) -> tuple[int, ...]:
    r = tuple(int(c) for c in r)
    if sorted(r) != list(range(m)):
        raise InvalidInput(f"{r} is not a complete ranking of {m} candidates")
    return r


def kendall_tau(r1: Sequence[int], r2: Sequence[int]) -> int:
    """Number of candidate pairs the two complete rankings order oppositely."""
    if len(r1) != len(r2):
        raise InvalidInput("rankings have different lengths")
    m = len(r1)
    r1 = check_ranking(r1, m)
    r2 = check_ranking(r2, m)
    pos = [0] * m
    for i, c in enumerate(r2):
        pos[c] = i
    seq = [pos[c] for c in r1]
    return sum(1 for i, j in itertools.combinations(range(m), 2) if seq[i] > seq[j])


def pairwise_matrix(e: Election) -> np.ndarray:
    """``P[a, b]`` = number of voters that list both a and b with a above b."""
    m = e.num_candidates
    P = np.zeros((m, m), dtype=np.int64)
    for v in e.votes:
        order = v.order
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                P[a, b] += v.count
    return P


def restrict_election(e: Election, kept: Iterable[int]) -> Election:
    """Project every vote onto ``kept``; candidates are renumbered in ascending
    order of their original ids."""
    kept = sorted(set(int(c) for c in kept))
    if not kept:
        raise InvalidInput("cannot restrict an election to no candidates")
    if kept[0] < 0 or kept[-1] >= e.num_candidates:
        raise InvalidInput("kept candidate out of range")
    new_id = {c: i for i, c in enumerate(kept)}
    votes = tuple(
        Vote(v.count, tuple(new_id[c] for c in v.order if c in new_id), v.partial)
        for v in e.votes
    )
    names = None
    if e.candidate_names is not None:
        names = tuple(e.candidate_names[c] for c in kept)
    return Election(len(kept), votes, names)


def condorcet_status(e: Election, c: int) -> str:
    """``"condorcet"``, ``"weak_condorcet"`` or ``"neither"``."""
    if e.has_partial:
        raise InvalidInput("Condorcet status needs complete votes")
    P = pairwise_matrix(e)
    others = [d for d in e.candidates if d != c]
    if all(P[c, d] > P[d, c] for d in others):
        return "condorcet"
    if all(P[c, d] >= P[d, c] for d in others):
        return "weak_condorcet"
    return "neither"


# --- text format -----------------------------------------------------------

def _parse_ids(text: str, m: int, lineno: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        ids = tuple(int(t) - 1 for t in text.split(","))
    except ValueError:
        raise InvalidInput(f"line {lineno}: bad candidate list {text!r}") from None
    if any(c < 0 or c >= m for c in ids):
        raise InvalidInput(f"line {lineno}: candidate id out of range")
    return ids


def parse_vote_line(line: str, m: int, lineno: int) -> Vote:
    head, _, body = line.partition(":")
    words = head.split()
    partial = False
    if len(words) == 2 and words[1] == "partial":
        partial = True
    elif len(words) != 1:
        raise InvalidInput(f"line {lineno}: bad vote header {head!r}")
    try:
        count = int(words[0])
    except ValueError:
        raise InvalidInput(f"line {lineno}: bad vote count {words[0]!r}") from None
    return Vote(count, _parse_ids(body, m, lineno), partial)


def format_vote(v: Vote) -> str:
    head = f"{v.count} partial" if v.partial else str(v.count)
    if not v.order:
        return f"{head}:"
    return f"{head}: " + ",".join(str(c + 1) for c in v.order)


def is_vote_line(line: str) -> bool:
    return bool(line) and line[0].isdigit()


def parse_election_lines(lines: Iterable[tuple[int, str]]) -> tuple[Election, list[tuple[int, str]]]:
    """Parse the election part of a file; lines that are neither comments nor
    election lines are handed back to the caller untouched."""
    m = None
    names: dict[int, str] = {}
    votes: list[Vote] = []
    rest: list[tuple[int, str]] = []
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("candidates:"):
            try:
                m = int(line.split(":", 1)[1])
            except ValueError:
                raise InvalidInput(f"line {lineno}: bad candidate count") from None
        elif line.startswith("name:"):
            parts = line.split(None, 2)
            if m is None or len(parts) < 3:
                raise InvalidInput(f"line {lineno}: bad name line")
            names[int(parts[1]) - 1] = parts[2]
        elif is_vote_line(line):
            if m is None:
                raise InvalidInput(f"line {lineno}: vote before 'candidates:' header")
            votes.append(parse_vote_line(line, m, lineno))
        else:
            rest.append((lineno, line))
    if m is None:
        raise InvalidInput("missing 'candidates:' header")
    cand_names = None
    if names:
        if sorted(names) != list(range(m)):
            raise InvalidInput("name lines must cover every candidate")
        cand_names = tuple(names[i] for i in range(m))
    return Election(m, tuple(votes), cand_names), rest


def parse_election(text: str) -> Election:
    e, rest = parse_election_lines(enumerate(text.splitlines(), 1))
    if rest:
        lineno, line = rest[0]
        raise InvalidInput(f"line {lineno}: unexpected {line!r}")
    return e


def election_lines(e: Election) -> list[str]:
    out = [f"candidates: {e.num_candidates}"]
    if e.candidate_names is not None:
        out += [f"name: {i + 1} {nm}" for i, nm in enumerate(e.candidate_names)]
    out += [format_vote(v) for v in e.votes]
    return out


def format_election(e: Election) -> str:
    return "\n".join(election_lines(e)) + "\n"
