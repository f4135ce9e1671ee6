"""Round semantics of the k-burning process: simulation, validation, padding.

The round order is propagate-then-ignite.  At round t >= 1:

1. every unburnt neighbor of a vertex burnt at some round < t burns, then
2. the batch listed for round t is ignited.

Strict validity demands that every batch vertex is still unburnt when its
turn comes and that every round (listed or not) ignites exactly
``min(k, unburnt-after-propagation)`` new sources; rounds past the last
listed batch are implicitly empty and are only in order once propagation
alone finishes the job that round.  A consequence of the round order:
sources ignited at rounds r < r' must sit at hop distance >= r' - r + 1,
otherwise the later one is already burning when ignited.

A lenient mode that tolerates undersized batches exists for exploratory
use (fixed-source scheduling produces such round patterns); certificates
in this package are always checked strictly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graph import Graph, bfs_distances


class ScheduleError(ValueError):
    """Structurally bad schedule: bad ids, oversized batches, reused vertices."""


class Violation(NamedTuple):
    round: int
    vertex: int  # -1 for batch-level violations with no single culprit
    reason: str


@dataclass
class Schedule:
    """Ordered ignition batches plus the spread factor k.

    ``rounds[t-1]`` is the batch ignited at round t.  Batches may be empty;
    a vertex may appear at most once across the whole schedule.
    """

    k: int
    rounds: list[list[int]]


@dataclass
class BurnReport:
    """Outcome of simulating a schedule.

    ``burn_round[v]`` is the round vertex v burnt, or None if it never did.
    ``completion_round`` is the largest burn round reached (0 when nothing
    burnt).  ``valid`` holds exactly when every vertex burnt and no
    violation was recorded.
    """

    burn_round: list[int | None]
    completion_round: int
    valid: bool
    violations: list[Violation]


def validate_schedule(g: Graph, s: Schedule) -> None:
    """Reject structurally bad schedules (raises ScheduleError)."""
    if not isinstance(s.k, int) or s.k < 1:
        raise ScheduleError(f"spread factor must be a positive integer, got {s.k!r}")
    seen: set[int] = set()
    for r, batch in enumerate(s.rounds, start=1):
        if len(batch) > s.k:
            raise ScheduleError(f"round {r}: batch of {len(batch)} exceeds k={s.k}")
        for v in batch:
            if not isinstance(v, int) or not (0 <= v < g.n):
                raise ScheduleError(f"round {r}: invalid vertex id {v!r}")
            if v in seen:
                raise ScheduleError(f"round {r}: vertex {v} ignited twice")
            seen.add(v)


def ignition_list(s: Schedule) -> list[tuple[int, int]]:
    """Flatten a schedule into (vertex, round) pairs."""
    return [(v, r) for r, batch in enumerate(s.rounds, start=1) for v in batch]


def simulate(g: Graph, s: Schedule, strict: bool = True) -> BurnReport:
    """Run the k-burning process for a schedule and judge its validity.

    Violations recorded: a batch vertex already burnt at ignition time; in
    strict mode, any round whose batch size differs from
    ``min(k, unburnt-after-propagation)``; and unburnable residue (vertices
    no listed source can ever reach).  Simulation always runs to the end:
    burnt state is reported even for invalid schedules.
    """
    validate_schedule(g, s)
    n = g.n
    adj = g.adj
    burn = [0] * n  # 0 = unburnt, else the burn round
    unburnt = n
    violations: list[Violation] = []
    frontier: list[int] = []
    completion = 0
    rounds = s.rounds
    listed = len(rounds)
    t = 0
    # keep going past completion while batches are still listed: igniting
    # into a fully burnt graph is a violation worth reporting
    while unburnt or t < listed:
        t += 1
        new: list[int] = []
        for x in frontier:
            for u in adj[x]:
                if not burn[u]:
                    burn[u] = t
                    new.append(u)
        unburnt -= len(new)
        if new:
            completion = t
        batch = rounds[t - 1] if t <= listed else ()
        ignited: list[int] = []
        for v in batch:
            if burn[v]:
                violations.append(Violation(t, v, "already burnt at ignition"))
            else:
                burn[v] = t
                ignited.append(v)
        if strict:
            required = min(s.k, unburnt)
            if len(batch) != required:
                violations.append(
                    Violation(t, -1, f"batch size {len(batch)}, expected {required}")
                )
        unburnt -= len(ignited)
        if ignited:
            completion = t
        frontier = new + ignited
        if t >= listed and not frontier and unburnt:
            first = next(v for v in range(n) if not burn[v])
            violations.append(
                Violation(t, first, f"unburnable residue: {unburnt} vertices unreachable from any source")
            )
            break
    return BurnReport(
        burn_round=[r if r else None for r in burn],
        completion_round=completion,
        valid=(unburnt == 0 and not violations),
        violations=violations,
    )


def completion_closed_form(g: Graph, ignitions: list[tuple[int, int]]) -> int:
    """Completion round by the covering formula, independent of simulation.

    A source ignited at round r reaches radius t - r by round t, so the
    process ends at ``max_v min_(s,r) (r + dist(s, v))``.  Raises ValueError
    if some vertex is unreachable from every ignition vertex.
    """
    if g.n == 0:
        return 0
    if not ignitions:
        raise ValueError("no ignitions given")
    best_round: dict[int, int] = {}
    for v, r in ignitions:
        if not (0 <= v < g.n):
            raise ValueError(f"invalid ignition vertex {v}")
        if r < 1:
            raise ValueError(f"ignition round must be positive, got {r}")
        if v not in best_round or r < best_round[v]:
            best_round[v] = r
    best = [None] * g.n
    for v, r in best_round.items():
        dist = bfs_distances(g, [v]).dist
        for u in range(g.n):
            d = dist[u]
            if d is None:
                continue
            t = r + d
            if best[u] is None or t < best[u]:
                best[u] = t
    for u in range(g.n):
        if best[u] is None:
            raise ValueError(f"vertex {u} unreachable from all ignition vertices")
    return max(best)  # type: ignore[type-var]


def _strictify(g: Graph, k: int, batches: list[list[int]]) -> list[list[int]]:
    """Re-simulate the given batches, fixing them up to strict round sizes.

    Batch vertices that are already burnt when their round comes are
    dropped; each round is then topped up to ``min(k, unburnt)`` with the
    smallest-id unburnt vertices not scheduled at a later round (falling
    back to later-scheduled ones only when nothing else remains).  Extra
    rounds are appended until every vertex has burnt.
    """
    n = g.n
    adj = g.adj
    burn = [0] * n
    sched_round = [0] * n
    for r, batch in enumerate(batches, start=1):
        for v in batch:
            sched_round[v] = r
    out: list[list[int]] = []
    frontier: list[int] = []
    unburnt = n
    cursor = 0
    t = 0
    while unburnt:
        t += 1
        new: list[int] = []
        for x in frontier:
            for u in adj[x]:
                if not burn[u]:
                    burn[u] = t
                    new.append(u)
        unburnt -= len(new)
        if not unburnt:
            break
        batch = batches[t - 1] if t <= len(batches) else ()
        kept = [v for v in batch if not burn[v]]
        need = min(k, unburnt)
        if len(kept) < need:
            chosen = set(kept)
            pad: list[int] = []
            while cursor < n and len(kept) + len(pad) < need:
                v = cursor
                if burn[v] or v in chosen or sched_round[v] > t:
                    cursor += 1
                    continue
                pad.append(v)
                cursor += 1
            if len(kept) + len(pad) < need:
                # only later-scheduled vertices are left; steal the smallest
                chosen.update(pad)
                for v in range(n):
                    if len(kept) + len(pad) >= need:
                        break
                    if not burn[v] and v not in chosen:
                        pad.append(v)
            batch_out = kept + pad
        else:
            batch_out = kept
        for v in batch_out:
            burn[v] = t
        unburnt -= len(batch_out)
        out.append(batch_out)
        frontier = new + batch_out
    return out


def pad_schedule(g: Graph, s: Schedule) -> Schedule:
    """Extend a schedule to strict batch sizes without delaying completion.

    The input must simulate without "already burnt at ignition" violations
    (undersized batches and missing trailing rounds are what padding is
    for).  Free choices go to the smallest unburnt vertex id, so the result
    is deterministic; the padded schedule is strict-valid and completes no
    later than the input.
    """
    validate_schedule(g, s)
    probe = simulate(g, s, strict=False)
    if any(v.vertex >= 0 and v.reason == "already burnt at ignition" for v in probe.violations):
        raise ScheduleError("input schedule has ignition violations; cannot pad")
    return Schedule(s.k, _strictify(g, s.k, s.rounds))


def parse_schedule(text: str) -> Schedule:
    """Parse a schedule document: line 1 ``k R``, then R batch lines."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ScheduleError("missing 'k R' header")
    head = lines[0].split()
    if len(head) != 2:
        raise ScheduleError(f"expected 'k R' header, got {lines[0].strip()!r}")
    try:
        k, r = int(head[0]), int(head[1])
    except ValueError:
        raise ScheduleError(f"expected two integers, got {lines[0].strip()!r}") from None
    if k < 1 or r < 0:
        raise ScheduleError("k must be positive and R non-negative")
    if len(lines) < 1 + r:
        raise ScheduleError(f"expected {r} batch lines, found {len(lines) - 1}")
    for extra in lines[1 + r:]:
        if extra.strip():
            raise ScheduleError(f"unexpected content after {r} batch lines: {extra.strip()!r}")
    batches: list[list[int]] = []
    for i, raw in enumerate(lines[1:1 + r], start=2):
        try:
            batches.append([int(tok) for tok in raw.split()])
        except ValueError:
            raise ScheduleError(f"line {i}: batches must be space-separated integers") from None
    return Schedule(k, batches)


def serialize_schedule(s: Schedule) -> str:
    out = [f"{s.k} {len(s.rounds)}"]
    out.extend(" ".join(str(v) for v in batch) for batch in s.rounds)
    return "\n".join(out) + "\n"
