"""Dodgson scores by search over lift vectors.

Only moves of ``c`` itself matter: a swap not involving ``c`` leaves every
pairwise contest of ``c`` unchanged, so an optimal swap sequence only lifts
``c`` upward in some votes.  Lifting ``c`` by ``k`` places in one vote costs
``k`` and flips that voter on each of the ``k`` candidates passed.

The search is iterative deepening on the total budget, starting from the
sum of per-rival needs (every swap passes exactly one rival).  A node picks
the deficient rival with the fewest ways to be passed and branches over the
vote types that rank it above ``c``.  Within a type, voters are
interchangeable, so it suffices to raise the voter with the largest current
lift that is still below the rival.
"""

from __future__ import annotations

from .election import Election, ScoreReport, Vote
from .errors import InvalidInput, ResourceLimit

NODE_LIMIT = 5_000_000


def _needs(e: Election, c: int) -> list[int]:
    """Voters that must switch to ``c`` against each rival (0 for ``c``)."""
    m = e.num_candidates
    margin = [0] * m
    for v in e.votes:
        pos_c = v.order.index(c)
        for k, d in enumerate(v.order):
            if d != c:
                margin[d] += v.count if pos_c < k else -v.count
    need = [0] * m
    for d in range(m):
        if d != c and margin[d] <= 0:
            need[d] = -margin[d] // 2 + 1
    return need


class _Search:
    def __init__(self, e: Election, c: int, node_limit: int):
        if e.has_partial:
            raise InvalidInput("Dodgson scores need complete votes")
        if not 0 <= c < e.num_candidates:
            raise InvalidInput(f"candidate {c} out of range")
        self.c = c
        self.node_limit = node_limit
        self.nodes = 0
        index: dict[tuple, int] = {}
        self.above: list[list[int]] = []  # above[t][k-1] = rival k places above c
        self.members: list[list[int]] = []
        sizes = []
        for i, v in enumerate(e.votes):
            t = index.get(v.order)
            if t is None:
                t = index[v.order] = len(self.above)
                pos = v.order.index(c)
                self.above.append(list(reversed(v.order[:pos])))
                self.members.append([])
                sizes.append(0)
            sizes[t] += v.count
            self.members[t].append(i)
        self.sizes = sizes
        self.dist = [{d: k + 1 for k, d in enumerate(ab)} for ab in self.above]
        m = e.num_candidates
        self.types_above = [[t for t in range(len(self.above)) if d in self.dist[t]]
                            for d in range(m)]
        self.need0 = _needs(e, c)
        self.fail: dict[tuple, int] = {}
        self.solution = None

    def lower_bound(self) -> int:
        return sum(self.need0)

    def upper_bound(self) -> int:
        return sum(len(self.above[t]) * self.sizes[t] for t in range(len(self.above)))

    def _rec(self, lifts: tuple, need: list[int], total: int, budget: int) -> bool:
        if total == 0:
            self.solution = lifts
            return True
        if total > budget:
            return False
        if self.fail.get(lifts, -1) >= budget:
            return False
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceLimit("Dodgson search exceeded its node limit")
        best = None
        for d, nd in enumerate(need):
            if not nd:
                continue
            opts = []
            avail = 0
            for t in self.types_above[d]:
                dist = self.dist[t][d]
                row = lifts[t]
                # row is sorted descending; find the first lift below dist
                for j, lv in enumerate(row):
                    if lv < dist:
                        opts.append((dist - lv, t, j, dist))
                        avail += len(row) - j
                        break
            if avail < nd:
                self.fail[lifts] = max(budget, self.fail.get(lifts, -1))
                return False
            if best is None or len(opts) < len(best):
                best = opts
        best.sort()
        for cost, t, j, dist in best:
            if cost > budget:
                break
            row = list(lifts[t])
            old = row[j]
            row[j] = dist
            row.sort(reverse=True)
            new_need = list(need)
            gained = 0
            for d in self.above[t][old:dist]:
                if new_need[d]:
                    new_need[d] -= 1
                    gained += 1
            new_lifts = lifts[:t] + (tuple(row),) + lifts[t + 1:]
            if self._rec(new_lifts, new_need, total - gained, budget - cost):
                return True
        self.fail[lifts] = max(budget, self.fail.get(lifts, -1))
        return False

    def run(self, max_budget: int | None = None):
        start = tuple((0,) * n for n in self.sizes)
        total = sum(self.need0)
        if total and not any(self.sizes):
            return None
        hi = self.upper_bound()
        if max_budget is not None:
            hi = min(hi, max_budget)
        for budget in range(total, hi + 1):
            if self._rec(start, list(self.need0), total, budget):
                return budget
        return None


def _witness(e: Election, search: _Search) -> tuple[tuple[int, ...], ...]:
    lifts = [tuple(0 for _ in range(v.count)) for v in e.votes]
    for t, row in enumerate(search.solution):
        row = list(row)
        for i in search.members[t]:
            k = e.votes[i].count
            lifts[i] = tuple(row[:k])
            row = row[k:]
    return tuple(lifts)


def dodgson_score(e: Election, c: int, max_budget: int | None = None,
                  node_limit: int = NODE_LIMIT) -> ScoreReport:
    """Minimum adjacent swaps making ``c`` a Condorcet winner.

    The witness holds, for every vote entry, the lift of each of its voters.
    With ``max_budget`` the search stops early and reports ``None`` when the
    score exceeds it; ``None`` is also reported when no voters exist.
    """
    s = _Search(e, c, node_limit)
    score = s.run(max_budget)
    if score is None:
        return ScoreReport(None)
    return ScoreReport(score, _witness(e, s))


def apply_lifts(e: Election, c: int, lifts) -> Election:
    """Replay a lift witness: one vote per voter, with ``c`` moved up."""
    votes = []
    for v, row in zip(e.votes, lifts):
        if len(row) != v.count:
            raise InvalidInput("lift witness does not match vote counts")
        for k in row:
            order = list(v.order)
            pos = order.index(c)
            if k > pos:
                raise InvalidInput("lift moves the candidate past the top")
            order.pop(pos)
            order.insert(pos - k, c)
            votes.append(Vote(1, tuple(order)))
    return e.with_votes(votes)


def dodgson_winners(e: Election, node_limit: int = NODE_LIMIT) -> tuple[tuple[int, ...], dict]:
    scores = {c: dodgson_score(e, c, node_limit=node_limit).score for c in e.candidates}
    finite = [s for s in scores.values() if s is not None]
    if not finite:
        return tuple(e.candidates), scores
    top = min(finite)
    return tuple(c for c in e.candidates if scores[c] == top), scores


def dodgson_is_winner(e: Election, c: int, node_limit: int = NODE_LIMIT) -> bool:
    """Check ``c`` against every rival with a budget-capped search."""
    own = dodgson_score(e, c, node_limit=node_limit).score
    if own is None:
        return all(dodgson_score(e, d, node_limit=node_limit).score is None
                   for d in e.candidates)
    for d in e.candidates:
        if d != c and own > 0:
            if dodgson_score(e, d, max_budget=own - 1, node_limit=node_limit).score is not None:
                return False
    return True
