"""Exact burning numbers and fixed-source scheduling at desk scale.

The exact solver searches covering families: burning completes by round L
iff there are batches S_1..S_L (at most k vertices each) whose radius
L-r balls cover every vertex.  A family found that way is massaged into a
strict-valid witness schedule, which cannot change the optimum because
extra or replaced ignitions only add fire.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .approx import lower_bound
from .burning import Schedule, _strictify, simulate
from .graph import Graph, bfs_distances


class UndeterminedError(RuntimeError):
    """Search gave up before settling on a value (round or time bound hit)."""


@dataclass
class SchedulingInstance:
    """A graph with a fixed source set: only the ignition order is free."""

    graph: Graph
    sources: tuple[int, ...]
    k: int

    def __post_init__(self):
        srcs = sorted(set(self.sources))
        if len(srcs) != len(self.sources):
            raise ValueError("sources must be distinct")
        if not srcs:
            raise ValueError("need at least one source")
        for s in srcs:
            if not (0 <= s < self.graph.n):
                raise ValueError(f"invalid source id {s}")
        if self.k < 1:
            raise ValueError("spread factor must be positive")
        self.sources = tuple(srcs)


def _ball_masks(g: Graph, max_radius: int) -> list[list[int]]:
    """ball[v][d] = bitmask of vertices within d hops of v, d = 0..max_radius."""
    masks: list[list[int]] = []
    for v in range(g.n):
        dist = bfs_distances(g, [v]).dist
        row = [0] * (max_radius + 1)
        acc = 0
        by_d: list[list[int]] = [[] for _ in range(max_radius + 1)]
        for u, d in enumerate(dist):
            if d is not None and d <= max_radius:
                by_d[d].append(u)
        for d in range(max_radius + 1):
            for u in by_d[d]:
                acc |= 1 << u
            row[d] = acc
        masks.append(row)
    return masks


def exact_burning_number(
    g: Graph,
    k: int,
    max_rounds: int | None = None,
    time_budget: float | None = None,
) -> tuple[int, Schedule]:
    """Optimal round count plus a strict-valid witness schedule.

    Iterative deepening on the round budget L, anchored at the certified
    lower bound.  Each depth runs a DFS over per-round batches in
    ascending-id order (so the witness is canonical): candidates are
    restricted to vertices whose radius-(L-r) ball still covers something
    new, and a branch dies when the uncovered count exceeds what the
    remaining rounds could possibly cover.  Intended for n up to ~20.

    Raises UndeterminedError when ``max_rounds`` or ``time_budget`` is
    exhausted first; never returns a wrong number.
    """
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if k < 1:
        raise ValueError("spread factor must be positive")
    n = g.n
    full = (1 << n) - 1
    deadline = time.monotonic() + time_budget if time_budget is not None else None
    start_l = lower_bound(g, k)
    ball = _ball_masks(g, n)
    maxball = [max(ball[v][d].bit_count() for v in range(n)) for d in range(n + 1)]

    def try_depth(limit: int) -> list[list[int]] | None:
        # cap[r] = most vertices rounds r..limit could still cover
        cap = [0] * (limit + 2)
        for r in range(limit, 0, -1):
            cap[r] = cap[r + 1] + k * maxball[min(limit - r, n)]

        def dfs(r: int, covered: int, acc: list[list[int]]) -> list[list[int]] | None:
            if covered == full:
                return acc
            if r > limit:
                return None
            if deadline is not None and time.monotonic() > deadline:
                raise UndeterminedError("time budget exhausted")
            uncovered = full & ~covered
            if uncovered.bit_count() > cap[r]:
                return None
            radius = min(limit - r, n)
            cands = [v for v in range(n) if ball[v][radius] & uncovered]
            take = min(k, len(cands))
            for batch in combinations(cands, take):
                cov = covered
                for v in batch:
                    cov |= ball[v][radius]
                found = dfs(r + 1, cov, acc + [list(batch)])
                if found is not None:
                    return found
            return None

        return dfs(1, 0, [])

    depth = start_l
    while True:
        if max_rounds is not None and depth > max_rounds:
            raise UndeterminedError(f"not determined within {max_rounds} rounds")
        batches = try_depth(depth)
        if batches is not None:
            break
        depth += 1
    witness = Schedule(k, _strictify(g, k, batches))
    report = simulate(g, witness, strict=True)
    assert report.valid and report.completion_round == depth
    return depth, witness


def naive_oracle(g: Graph, k: int, rounds: int) -> bool:
    """Brute force: does any strict schedule finish within ``rounds`` rounds?

    Enumerates every batch choice of size min(k, available) round by round
    through the real simulation state.  Batch order within a round does not
    affect burning, so unordered combinations lose nothing.  Enforced to
    n <= 9; this is the independent yardstick the exact solver is measured
    against.
    """
    if g.n > 9:
        raise ValueError("naive oracle is restricted to n <= 9")
    if g.n == 0:
        return True
    if k < 1 or rounds < 1:
        raise ValueError("k and rounds must be positive")
    n = g.n
    full = (1 << n) - 1
    neighbor_mask = [0] * n
    for v in range(n):
        for u in g.adj[v]:
            neighbor_mask[v] |= 1 << u
    memo: dict[tuple[int, int], bool] = {}

    def step(mask: int, t: int) -> bool:
        if mask == full:
            return True
        if t > rounds:
            return False
        key = (mask, t)
        got = memo.get(key)
        if got is not None:
            return got
        spread = mask
        probe = mask
        while probe:
            v = (probe & -probe).bit_length() - 1
            spread |= neighbor_mask[v]
            probe &= probe - 1
        avail = [v for v in range(n) if not (spread >> v) & 1]
        take = min(k, len(avail))
        ok = False
        if not avail:
            ok = spread == full
        else:
            for batch in combinations(avail, take):
                nxt = spread
                for v in batch:
                    nxt |= 1 << v
                if step(nxt, t + 1):
                    ok = True
                    break
        memo[key] = ok
        return ok

    return step(0, 1)


def _source_tables(inst: SchedulingInstance) -> dict[int, list[int | None]]:
    return {s: bfs_distances(inst.graph, [s]).dist for s in inst.sources}


def ordering_feasible(
    inst: SchedulingInstance, ordering: dict[int, int], rounds: int
) -> tuple[bool, str]:
    """Check a full round assignment: capacity, ignition order, coverage.

    Every source must get a round in 1..rounds with at most k per round,
    must still be unburnt when ignited (no earlier source within r'-r
    hops), and every vertex must burn by the deadline.
    """
    if sorted(ordering) != list(inst.sources):
        return False, "ordering must assign exactly the instance sources"
    per_round: dict[int, int] = {}
    for s, r in ordering.items():
        if not (1 <= r <= rounds):
            return False, f"source {s} assigned round {r} outside 1..{rounds}"
        per_round[r] = per_round.get(r, 0) + 1
        if per_round[r] > inst.k:
            return False, f"round {r} ignites more than k={inst.k} sources"
    tables = _source_tables(inst)
    items = sorted(ordering.items(), key=lambda it: it[1])
    for i, (s, r) in enumerate(items):
        for sp, rp in items[:i]:
            if rp == r:
                continue
            d = tables[sp][s]
            if d is not None and rp + d <= r:
                return False, f"source {s} is already burnt at round {r} (via {sp}@{rp})"
    for v in range(inst.graph.n):
        best = None
        for s, r in ordering.items():
            d = tables[s][v]
            if d is not None and (best is None or r + d < best):
                best = r + d
        if best is None or best > rounds:
            return False, f"vertex {v} does not burn by round {rounds}"
    return True, ""


def schedule_sources(inst: SchedulingInstance, rounds: int | None = None) -> dict[int, int] | None:
    """Assign each source a round so everything burns in time, or report infeasible.

    Searches round assignments source-by-source in ascending id with
    rounds tried smallest first, so the witness is the lexicographically
    least feasible assignment vector.  Pruning: per-round capacity,
    pairwise still-unburnt-at-ignition constraints among assigned sources,
    and an optimistic completion bound that places every unassigned source
    at the earliest round with spare capacity.
    """
    srcs = list(inst.sources)
    if len(srcs) > 24:
        raise ValueError("schedule_sources is restricted to at most 24 sources")
    if rounds is None:
        rounds = -(-len(srcs) // inst.k)
    if rounds < 1:
        raise ValueError("round budget must be positive")
    tables = _source_tables(inst)
    n = inst.graph.n
    k = inst.k
    # a vertex no source can ever reach makes every assignment infeasible
    for v in range(n):
        if all(tables[s][v] is None for s in srcs):
            return None

    capacity = [0] * (rounds + 1)
    assigned: dict[int, int] = {}

    def earliest_free_round() -> int:
        for r in range(1, rounds + 1):
            if capacity[r] < k:
                return r
        return rounds + 1

    def optimistic_ok() -> bool:
        free = earliest_free_round()
        for v in range(n):
            best = None
            for s in srcs:
                d = tables[s][v]
                if d is None:
                    continue
                r = assigned.get(s, free)
                if r > rounds:
                    continue
                t = r + d
                if best is None or t < best:
                    best = t
            if best is None or best > rounds:
                return False
        return True

    def place(i: int) -> bool:
        if i == len(srcs):
            ok, _ = ordering_feasible(inst, dict(assigned), rounds)
            return ok
        s = srcs[i]
        for r in range(1, rounds + 1):
            if capacity[r] >= k:
                continue
            conflict = False
            for sp, rp in assigned.items():
                d = tables[sp][s]  # hop distances are symmetric
                early, late = min(rp, r), max(rp, r)
                if early != late and d is not None and early + d <= late:
                    conflict = True
                    break
            if conflict:
                continue
            assigned[s] = r
            capacity[r] += 1
            if optimistic_ok() and place(i + 1):
                return True
            capacity[r] -= 1
            del assigned[s]
        return False

    if place(0):
        return dict(sorted(assigned.items()))
    return None
