"""Young scores: the largest voter sub-multiset making c a weak Condorcet winner.

Voters with identical rankings are interchangeable, so the search picks a
count ``x_t`` for each distinct ranking ``t``.  Candidate ``c`` is a weak
Condorcet winner of the chosen voters iff, for every rival ``d``,
``sum_t x_t * s_t(d) >= 0`` where ``s_t(d)`` is +1 when ``t`` puts c above d
and -1 otherwise.  The empty selection always qualifies, so scores are never
negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .election import Election, ScoreReport
from .errors import InvalidInput, ResourceLimit

# bound on the number of count vectors the search may range over
ENUM_LIMIT = 1 << 22


@dataclass(frozen=True)
class _Types:
    orders: list
    counts: list
    signs: list  # signs[t][j] for the j-th rival
    members: list  # vote indices behind each type


def _group(e: Election, c: int) -> _Types:
    if e.has_partial:
        raise InvalidInput("Young scores need complete votes")
    if not 0 <= c < e.num_candidates:
        raise InvalidInput(f"candidate {c} out of range")
    rivals = [d for d in e.candidates if d != c]
    index: dict[tuple, int] = {}
    orders, counts, signs, members = [], [], [], []
    for i, v in enumerate(e.votes):
        t = index.get(v.order)
        if t is None:
            t = index[v.order] = len(orders)
            pos = {x: k for k, x in enumerate(v.order)}
            orders.append(v.order)
            counts.append(0)
            signs.append([1 if pos[c] < pos[d] else -1 for d in rivals])
            members.append([])
        counts[t] += v.count
        members[t].append(i)
    return _Types(orders, counts, signs, members)


def _search(types: _Types, num_rivals: int) -> tuple[int, list[int]]:
    n = len(types.counts)
    # visiting types with many "+" signs first finds big feasible sets early
    order = sorted(range(n), key=lambda t: (-sum(types.signs[t]), t))
    counts = [types.counts[t] for t in order]
    signs = [types.signs[t] for t in order]
    # suffix sums of counts, and of positive contributions per rival
    cap = [0] * (n + 1)
    pos_left = [[0] * num_rivals for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        cap[i] = cap[i + 1] + counts[i]
        pos_left[i] = [pos_left[i + 1][j] + (counts[i] if signs[i][j] > 0 else 0)
                       for j in range(num_rivals)]
    best = [-1, None]
    choice = [0] * n

    def rec(i, slack, size):
        if size + cap[i] <= best[0]:
            return
        if any(slack[j] + pos_left[i][j] < 0 for j in range(num_rivals)):
            return
        if i == n - 1:
            # closed form for the last type
            s = signs[i]
            hi = counts[i]
            lo = 0
            for j in range(num_rivals):
                if s[j] < 0:
                    hi = min(hi, slack[j])
                else:
                    lo = max(lo, -slack[j])
            if lo <= hi and size + hi > best[0]:
                choice[i] = hi
                best[0] = size + hi
                best[1] = list(choice)
            return
        if i == n:
            if size > best[0]:
                best[0] = size
                best[1] = list(choice)
            return
        s = signs[i]
        for x in range(counts[i], -1, -1):
            choice[i] = x
            rec(i + 1, [slack[j] + x * s[j] for j in range(num_rivals)], size + x)
        choice[i] = 0

    if n == 0:
        return 0, []
    rec(0, [0] * num_rivals, 0)
    picked = [0] * n
    for k, t in enumerate(order):
        picked[t] = best[1][k]
    return best[0], picked


def young_score(e: Election, c: int, enum_limit: int = ENUM_LIMIT) -> ScoreReport:
    """Young score of ``c``; the witness gives the kept count of every vote."""
    types = _group(e, c)
    space = math.prod(k + 1 for k in types.counts)
    if space > enum_limit:
        raise ResourceLimit(f"Young search space {space} exceeds limit {enum_limit}")
    score, picked = _search(types, e.num_candidates - 1)
    kept = [0] * len(e.votes)
    for t, x in enumerate(picked):
        for i in types.members[t]:
            take = min(x, e.votes[i].count)
            kept[i] = take
            x -= take
    return ScoreReport(score, tuple(kept))


def young_winners(e: Election, enum_limit: int = ENUM_LIMIT) -> tuple[tuple[int, ...], dict[int, int]]:
    scores = {c: young_score(e, c, enum_limit).score for c in e.candidates}
    top = max(scores.values())
    return tuple(c for c in e.candidates if scores[c] == top), scores


def young_is_winner(e: Election, c: int, enum_limit: int = ENUM_LIMIT) -> bool:
    return c in young_winners(e, enum_limit)[0]
