"""Exact Kemeny and Kemeny' scores and winners.

A consensus ranking costs ``sum over (a above b) of P[b, a]`` where ``P`` is
the pairwise tally.  Splitting each pair into its minority count plus the
majority margin turns the problem into a minimum weighted backward-arc
ordering of the majority digraph (arc ``a -> b`` of weight
``P[a, b] - P[b, a]`` when positive).  That digraph is cut into strongly
connected components; small components are solved by subset dynamic
programming, larger ones by a memoized branch and bound over ranking
prefixes.  ``method="dp"`` forces a single subset DP over all candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .election import Election, check_ranking, pairwise_matrix
from .errors import InvalidInput, ResourceLimit
from .ordering import DP_LIMIT, OrderingSolver, subset_dp

# the "auto" method has no DP cap, only this and the search state limit
AUTO_LIMIT = 48


@dataclass(frozen=True)
class KemenyResult:
    score: int
    winners: tuple[int, ...]
    consensus: tuple[int, ...]


def _tally(e: Election, variant: str) -> np.ndarray:
    if variant == "kemeny":
        if e.has_partial:
            raise InvalidInput("partial votes need the kemeny_prime variant")
    elif variant != "kemeny_prime":
        raise InvalidInput(f"unknown Kemeny variant {variant!r}")
    return pairwise_matrix(e)


def consensus_cost(P: np.ndarray, consensus: Sequence[int]) -> int:
    total = 0
    for i, a in enumerate(consensus):
        for b in consensus[i + 1:]:
            total += int(P[b, a])
    return total


def kemeny_score(e: Election, consensus: Sequence[int]) -> int:
    """Total Kendall-tau distance from the (complete) votes to ``consensus``."""
    consensus = check_ranking(consensus, e.num_candidates)
    return consensus_cost(_tally(e, "kemeny"), consensus)


def kemeny_prime_score(e: Election, consensus: Sequence[int]) -> int:
    """Kemeny' distance: a pair counts only when a vote lists both members."""
    consensus = check_ranking(consensus, e.num_candidates)
    return consensus_cost(_tally(e, "kemeny_prime"), consensus)


# --- the ordering problem on the majority digraph ----------------------------

def _split(P: np.ndarray) -> tuple[np.ndarray, int]:
    margin = P - P.T
    W = np.where(margin > 0, margin, 0)
    base = int(np.minimum(P, P.T)[np.triu_indices(P.shape[0], 1)].sum())
    return W, base


def _check_limits(m: int, method: str, dp_limit: int):
    if method == "dp":
        if m > dp_limit:
            raise ResourceLimit(f"{m} candidates exceeds the DP limit {dp_limit}")
    elif method == "auto":
        if m > AUTO_LIMIT:
            raise ResourceLimit(f"{m} candidates exceeds the search limit {AUTO_LIMIT}")
    else:
        raise InvalidInput(f"unknown method {method!r}")


def _winners_dp(W: np.ndarray) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    m = W.shape[0]
    g = subset_dp(W)
    full = (1 << m) - 1
    best = int(g[full])
    winners = tuple(c for c in range(m)
                    if int(W[:, c].sum()) + int(g[full ^ (1 << c)]) == best)
    order = []
    R = full
    while R:
        for c in range(m):
            if R >> c & 1:
                rest = R ^ (1 << c)
                cost = sum(int(W[b, c]) for b in range(m) if rest >> b & 1)
                if cost + int(g[rest]) == int(g[R]):
                    order.append(c)
                    R = rest
                    break
    return best, winners, tuple(order)


def kemeny_winners_from_matrix(P: np.ndarray, method: str = "auto",
                               dp_limit: int = DP_LIMIT) -> KemenyResult:
    m = P.shape[0]
    _check_limits(m, method, dp_limit)
    W, base = _split(np.asarray(P, dtype=np.int64))
    if method == "dp":
        best, winners, order = _winners_dp(W)
        return KemenyResult(base + best, winners, order)
    eng = OrderingSolver(W, dp_limit)
    allv = list(range(m))
    best = eng.opt(allv)
    winners = tuple(c for c in allv if eng.first_cost(c, allv) == best)
    return KemenyResult(base + best, winners, eng.best_order(allv))


def kemeny_winners(e: Election, variant: str = "kemeny", method: str = "auto",
                   dp_limit: int = DP_LIMIT) -> KemenyResult:
    """Optimal score, co-winner set and the lexicographically smallest optimal
    consensus."""
    return kemeny_winners_from_matrix(_tally(e, variant), method, dp_limit)


def oracle_from_matrix(P: np.ndarray) -> OrderingSolver:
    """Ordering solver over the majority margins; ``is_top(c, kept)`` then
    decides whether ``c`` wins after restricting to the ``kept`` candidates."""
    m = P.shape[0]
    _check_limits(m, "auto", DP_LIMIT)
    W, _ = _split(np.asarray(P, dtype=np.int64))
    return OrderingSolver(W)


def kemeny_is_winner_from_matrix(P: np.ndarray, c: int) -> bool:
    return oracle_from_matrix(P).is_top(c, range(P.shape[0]))


def kemeny_is_winner(e: Election, c: int, variant: str = "kemeny") -> bool:
    return kemeny_is_winner_from_matrix(_tally(e, variant), c)


def brute_force_kemeny(e: Election, variant: str = "kemeny") -> tuple[int, tuple[int, ...]]:
    """Score and winner set by trying every permutation (small m only)."""
    P = _tally(e, variant)
    best = None
    winners: set[int] = set()
    for perm in itertools.permutations(range(e.num_candidates)):
        cost = consensus_cost(P, perm)
        if best is None or cost < best:
            best, winners = cost, {perm[0]}
        elif cost == best:
            winners.add(perm[0])
    return best, tuple(sorted(winners))
