"""Minimum weighted backward-arc orderings.

Given nonnegative arc weights ``W[a, b]`` (arc a -> b), find an ordering of
a vertex subset minimizing the total weight of arcs pointing backwards.
Both Kemeny aggregation (on the majority margins) and minimum feedback arc
set (unit weights) are this problem.

The vertex set is cut into strongly connected components, which can be
ordered independently.  Components up to ``SMALL_DP`` vertices go to a
vectorized subset DP; larger ones to a memoized branch and bound over
ordering prefixes, pruned by a greedy cycle-packing lower bound.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Sequence

import numpy as np

from .errors import ResourceLimit

DP_LIMIT = 20
# strong components up to this size go to the subset DP
SMALL_DP = 12
STATE_LIMIT = 2_000_000


def subset_dp(w: np.ndarray) -> np.ndarray:
    """``g[S]`` = cheapest internal cost of ordering the local vertex set S."""
    s = w.shape[0]
    if s > DP_LIMIT:
        raise ResourceLimit(f"subset DP over {s} vertices exceeds limit {DP_LIMIT}")
    size = 1 << s
    # add[c][T] = sum of w[c, a] for a in T: cost of putting c just below T
    add = np.zeros((s, size), dtype=np.int64)
    for c in range(s):
        row = add[c]
        for j in range(s):
            row[1 << j: 2 << j] = row[: 1 << j] + w[c, j]
    states = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int8)
    for j in range(s):
        pop += ((states >> j) & 1).astype(np.int8)
    g = np.zeros(size, dtype=np.int64)
    big = np.iinfo(np.int64).max // 4
    for k in range(1, s + 1):
        layer = states[pop == k]
        best = np.full(layer.shape, big, dtype=np.int64)
        for c in range(s):
            has = ((layer >> c) & 1).astype(bool)
            t = layer[has] ^ (1 << c)
            best[has] = np.minimum(best[has], g[t] + add[c, t])
        g[layer] = best
    return g


class _PrefixSearch:
    """Memoized branch and bound over ranking prefixes for one component.

    ``solve(R, ub)`` returns the exact optimum of the vertex set ``R`` when
    that optimum is below ``ub``; otherwise it returns a lower bound that is
    at least ``ub``.
    """

    def __init__(self, w: np.ndarray, state_limit: int = STATE_LIMIT):
        s = w.shape[0]
        self.s = s
        self.inn = [[(1 << u, int(w[u, v])) for u in range(s) if w[u, v] > 0] for v in range(s)]
        self.in_mask = [sum(b for b, _ in self.inn[v]) for v in range(s)]
        self.out_mask = [sum(1 << x for x in range(s) if w[v, x] > 0) for v in range(s)]
        self.out_w = [[(x, int(w[v, x])) for x in range(s) if w[v, x] > 0] for v in range(s)]
        self.memo: dict[int, tuple[int, bool]] = {}
        self.split_cache: dict[int, list[int]] = {}
        self.state_limit = state_limit

    def incost(self, v: int, R: int) -> int:
        return sum(wt for b, wt in self.inn[v] if R & b)

    def lower_bound(self, R: int) -> int:
        """Greedy packing of cycles with residual arc weights."""
        resid = {}
        x = R
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            for u, wt in self.out_w[v]:
                if R >> u & 1:
                    resid[v, u] = wt
        total = 0
        while True:
            cycle = self._short_cycle(R, resid)
            if cycle is None:
                return total
            delta = min(resid[a] for a in cycle)
            total += delta
            for a in cycle:
                left = resid[a] - delta
                if left:
                    resid[a] = left
                else:
                    del resid[a]

    def _short_cycle(self, R, resid):
        succ: dict[int, list[int]] = {}
        for (a, b) in resid:
            succ.setdefault(a, []).append(b)
        best = None
        for start in succ:
            parent = {start: None}
            queue = [start]
            found = None
            for node in queue:
                for nb in succ.get(node, ()):
                    if nb == start:
                        found = node
                        break
                    if nb not in parent:
                        parent[nb] = node
                        queue.append(nb)
                if found is not None:
                    break
            if found is None:
                continue
            path = [found]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            if best is None or len(path) < len(best):
                best = path
                if len(best) <= 4:
                    break
        if best is None:
            return None
        return [(best[i], best[(i + 1) % len(best)]) for i in range(len(best))]

    def _closure(self, v: int, R: int, masks: list[int]) -> int:
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= masks[low.bit_length() - 1]
                frontier ^= low
            nxt &= R & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def split(self, R: int) -> list[int]:
        """Strong components of R with at least two vertices."""
        hit = self.split_cache.get(R)
        if hit is not None:
            return hit
        key = R
        comps = []
        while R:
            low = R & -R
            v = low.bit_length() - 1
            fwd = self._closure(v, R, self.out_mask)
            comp = self._closure(v, fwd, self.in_mask)
            if comp != low:
                comps.append(comp)
            R &= ~comp
        self.split_cache[key] = comps
        return comps

    def solve(self, R: int, ub: float) -> float:
        comps = self.split(R)
        if len(comps) == 1:
            return self._solve_strong(comps[0], ub)
        total = 0
        for comp in comps:
            total += self._solve_strong(comp, ub - total)
            if total >= ub:
                return total
        return total

    def _solve_strong(self, R: int, ub: float) -> float:
        hit = self.memo.get(R)
        if hit is not None:
            val, exact = hit
            if exact or val >= ub:
                return val
        if len(self.memo) > self.state_limit:
            raise ResourceLimit("ordering search exceeded its state limit")
        lb = self.lower_bound(R)
        if lb >= ub:
            self.memo[R] = (lb, False)
            return lb
        verts = []
        x = R
        while x:
            low = x & -x
            v = low.bit_length() - 1
            verts.append((self.incost(v, R), v))
            x ^= low
        verts.sort()
        best = float("inf")
        for c, v in verts:
            cap = min(best, ub)
            if c >= cap:
                break
            r = self.solve(R ^ (1 << v), cap - c)
            if c + r < best:
                best = c + r
        if best < ub:
            self.memo[R] = (best, True)
            return best
        prev = hit[0] if hit is not None else 0
        lower = max(ub, prev)
        self.memo[R] = (lower, False)
        return lower

    def optimum(self, R: int | None = None) -> int:
        if R is None:
            R = (1 << self.s) - 1
        return int(self.solve(R, float("inf")))


class _Core:
    def __init__(self, w: np.ndarray):
        self.search = _PrefixSearch(w)
        self.dp_cache: dict[int, int] = {}


# Weight matrices that are multiples of each other share one memo; the
# feedback arc set of a digraph and the Kemeny margins of its McGarvey
# election are the common case.
_CORES: OrderedDict = OrderedDict()
CORE_CACHE = 16


def _core(w: np.ndarray) -> _Core:
    key = (w.shape[0], w.tobytes())
    core = _CORES.get(key)
    if core is None:
        core = _CORES[key] = _Core(w)
        if len(_CORES) > CORE_CACHE:
            _CORES.popitem(last=False)
    else:
        _CORES.move_to_end(key)
    return core


def clear_cache():
    _CORES.clear()


class OrderingSolver:
    """Optimal internal costs of arbitrary vertex subsets.

    Deleting vertices leaves the weights among the others unchanged, so one
    solver (and its memo) serves every subset a control search tries.
    """

    def __init__(self, W: np.ndarray, dp_limit: int = DP_LIMIT):
        W = np.asarray(W, dtype=np.int64)
        self.W = W
        self.dp_limit = dp_limit
        g = int(np.gcd.reduce(W.ravel())) if W.size else 0
        self.scale = g or 1
        self.Wn = W // self.scale
        core = _core(self.Wn)
        self.search = core.search
        self.dp_cache = core.dp_cache

    def _mask(self, verts: Sequence[int]) -> int:
        mask = 0
        for v in verts:
            mask |= 1 << v
        return mask

    def _strong_opt(self, comp: int) -> int:
        size = bin(comp).count("1")
        if size > min(SMALL_DP, self.dp_limit):
            return self.search.optimum(comp)
        val = self.dp_cache.get(comp)
        if val is None:
            idx = [v for v in range(self.W.shape[0]) if comp >> v & 1]
            val = int(subset_dp(self.Wn[np.ix_(idx, idx)])[-1])
            self.dp_cache[comp] = val
        return val

    def opt(self, verts: Sequence[int]) -> int:
        comps = self.search.split(self._mask(verts))
        return self.scale * sum(self._strong_opt(c) for c in comps)

    def first_cost(self, c: int, verts: Sequence[int]) -> int:
        """Optimum over orderings of ``verts`` that put ``c`` first."""
        rest = [v for v in verts if v != c]
        return int(self.W[rest, c].sum()) + self.opt(rest)

    def is_top(self, c: int, verts: Sequence[int]) -> bool:
        """Whether some optimal ordering of ``verts`` starts with ``c``."""
        return self.first_cost(c, verts) == self.opt(verts)

    def best_order(self, verts: Sequence[int]) -> tuple[int, ...]:
        """Lexicographically smallest optimal ordering, built top-down."""
        order = []
        remaining = sorted(verts)
        target = self.opt(remaining)
        while remaining:
            for c in remaining:
                if self.first_cost(c, remaining) == target:
                    order.append(c)
                    remaining = [v for v in remaining if v != c]
                    target = self.opt(remaining)
                    break
        return tuple(order)


