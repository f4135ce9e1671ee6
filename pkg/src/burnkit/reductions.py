"""Hardness-reduction instance generators and their certificate mappings.

Two constructions live here.

Vertex-cover gadget: given a graph on n vertices and a cover budget q,
every edge (u, v) grows a corridor u - uv - d_1 .. d_{2nk} - vu - v plus
an n-vertex tail hanging off the lower median division vertex, and the
instance is completed with (k-1)q + k(2nk+3) isolated vertices.  Covers
of size q and strict burning schedules of q + 2nk + 3 rounds translate
into each other.  The connected variant (k = 1 only) first attaches a
pendant path v0 - w - z to the input graph, builds the gadget for that
enlarged graph with its enlarged budget, and strings the would-be
isolated vertices on a backbone path hanging off w instead.

3-SAT scheduling gadget: literal vertices are the fixed burning sources;
the i-th positive and negative literals each carry a top and a bottom
path of 2(n-i) vertices, and each clause vertex attaches to the far ends
of its literals' top paths.  An ignition order finishing within 2n
rounds exists exactly when the formula is satisfiable, with true
literals burning at odd rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .burning import Schedule, pad_schedule, simulate
from .exact import SchedulingInstance, ordering_feasible
from .graph import Graph, bfs_distances, graph_from_edges
from .paths import segment_sources


class ReductionError(ValueError):
    """Invalid reduction input, or a certificate mapping whose assertions failed."""


Role = tuple
# Role tags, one per gadget vertex:
#   ("v", x)          copy of base-graph vertex x
#   ("e", a, b)       edge endpoint vertex on a's side of base edge {a, b}
#   ("d", u, v, i)    i-th division vertex of base edge (u, v), u < v, i >= 1
#   ("tail", u, v, i) i-th tail vertex of base edge (u, v)
#   ("iso", i)        i-th isolated vertex (backbone anchor in the connected variant)
#   ("backbone", i)   i-th non-anchor backbone path vertex (connected variant only)


@dataclass
class VcInstance:
    """Burning instance produced from a vertex-cover question.

    ``n`` and ``q`` describe the graph the gadget encodes: the input graph
    itself, or — in the connected variant — the input graph plus the
    pendant vertices w and z, with the budget enlarged by one for w.
    ``roles`` is indexed by gadget vertex id.
    """

    gprime: Graph
    roles: list[Role]
    n: int
    k: int
    q: int
    connected: bool

    @property
    def original_n(self) -> int:
        return self.n - 2 if self.connected else self.n

    @property
    def original_q(self) -> int:
        return self.q - 1 if self.connected else self.q

    @property
    def round_bound(self) -> int:
        return self.q + 2 * self.n * self.k + 3


def build_vc_instance(g: Graph, k: int, q: int, connected: bool = False) -> VcInstance:
    """Materialize the cover-to-burning gadget for (g, k, q)."""
    if g.n < 1:
        raise ReductionError("input graph must have at least one vertex")
    if k < 1:
        raise ReductionError("spread factor must be positive")
    if connected and k != 1:
        raise ReductionError("connected variant requires k=1")
    if not (1 <= q <= g.n):
        raise ReductionError(f"q must be in 1..{g.n}, got {q}")

    if connected:
        w, z = g.n, g.n + 1
        base_n = g.n + 2
        base_edges = sorted(list(g.edges()) + [(0, w), (w, z)])
        budget = q + 1
    else:
        base_n = g.n
        base_edges = sorted(g.edges())
        budget = q

    roles: list[Role] = []

    def alloc(role: Role) -> int:
        roles.append(role)
        return len(roles) - 1

    for x in range(base_n):
        alloc(("v", x))

    d_count = 2 * base_n * k
    edges_out: list[tuple[int, int]] = []
    for u, v in base_edges:
        uv = alloc(("e", u, v))
        vu = alloc(("e", v, u))
        d_ids = [alloc(("d", u, v, i)) for i in range(1, d_count + 1)]
        t_ids = [alloc(("tail", u, v, i)) for i in range(1, base_n + 1)]
        chain = [u, uv, *d_ids, vu, v]
        edges_out.extend(zip(chain, chain[1:]))
        # tail hangs off the lower median division vertex d_{nk}
        chain = [d_ids[base_n * k - 1], *t_ids]
        edges_out.extend(zip(chain, chain[1:]))

    if not connected:
        iso_count = (k - 1) * budget + k * (2 * base_n * k + 3)
        for i in range(1, iso_count + 1):
            alloc(("iso", i))
    else:
        # backbone off w: a run of q + 2n + 2 spacer vertices, then 2n + 3
        # blocks of 2n + 2 spacers each ending in an anchor, so the part
        # after the first run holds exactly (2n+3)^2 vertices
        prev = w
        bb = 0
        for _ in range(budget + 2 * base_n + 2):
            bb += 1
            cur = alloc(("backbone", bb))
            edges_out.append((prev, cur))
            prev = cur
        for j in range(1, 2 * base_n + 3 + 1):
            for _ in range(2 * base_n + 2):
                bb += 1
                cur = alloc(("backbone", bb))
                edges_out.append((prev, cur))
                prev = cur
            cur = alloc(("iso", j))
            edges_out.append((prev, cur))
            prev = cur

    gprime = graph_from_edges(len(roles), edges_out)
    return VcInstance(gprime, roles, base_n, k, budget, connected)


def _role_ids(inst: VcInstance, tag: str) -> list[int]:
    return [i for i, role in enumerate(inst.roles) if role[0] == tag]


def original_edges(inst: VcInstance) -> list[tuple[int, int]]:
    """Edges of the user's input graph, recovered from the e-vertex roles."""
    limit = inst.original_n
    out = {
        (min(r[1], r[2]), max(r[1], r[2]))
        for r in inst.roles
        if r[0] == "e" and r[1] < limit and r[2] < limit
    }
    return sorted(out)


def base_edges(inst: VcInstance) -> list[tuple[int, int]]:
    """Edges of the graph the gadget encodes (includes pendant edges when connected)."""
    out = {(min(r[1], r[2]), max(r[1], r[2])) for r in inst.roles if r[0] == "e"}
    return sorted(out)


def vc_to_schedule(inst: VcInstance, cover) -> Schedule:
    """Turn a vertex cover of the input graph into a strict burning schedule.

    Cover vertices are ignited first (alongside k-1 isolated vertices per
    round when k > 1), the remaining isolated vertices follow k per round;
    the connected variant ignites w before the cover and then burns the
    backbone suffix like a standalone path.  The result is padded, checked
    strict-valid, and never exceeds q + 2nk + 3 rounds.
    """
    cov = sorted(set(cover))
    for c in cov:
        if not (0 <= c < inst.original_n):
            raise ReductionError(f"cover vertex {c} is not an input-graph vertex")
    if len(cov) > inst.original_q:
        raise ReductionError(f"cover of {len(cov)} exceeds budget {inst.original_q}")
    covered = set(cov)
    for u, v in original_edges(inst):
        if u not in covered and v not in covered:
            raise ReductionError(f"not a vertex cover: edge ({u},{v}) untouched")

    iso_ids = _role_ids(inst, "iso")
    if not inst.connected:
        batches: list[list[int]] = []
        it = iter(iso_ids)
        for c in cov:
            batch = [c]
            for _ in range(inst.k - 1):
                batch.append(next(it))
            batches.append(batch)
        rest = list(it)
        for i in range(0, len(rest), inst.k):
            batches.append(rest[i:i + inst.k])
    else:
        w = inst.n - 2
        total_rounds = inst.round_bound
        batches = [[] for _ in range(total_rounds)]
        batches[0] = [w]
        for i, c in enumerate(cov, start=1):
            batches[i] = [c]
        suffix_start = next(
            i for i, role in enumerate(inst.roles)
            if role[0] == "backbone" and role[1] == inst.q + 2 * inst.n + 3
        )
        suffix = list(range(suffix_start, inst.gprime.n))
        for vtx, r in segment_sources(len(suffix), 2 * inst.n + 3, base=suffix_start):
            batches[inst.q + r - 1] = [vtx]

    sched = pad_schedule(inst.gprime, Schedule(inst.k, batches))
    report = simulate(inst.gprime, sched, strict=True)
    if not report.valid or len(sched.rounds) > inst.round_bound:
        raise ReductionError("constructed schedule failed validation")  # pragma: no cover
    return sched


def schedule_to_vc(inst: VcInstance, s: Schedule):
    """Extract a vertex cover from a short strict burning schedule.

    For each base edge (b, c), the edge's gadget together with the
    (nk+1)-hop neighborhoods of b and c is scanned for burning sources;
    each source contributes the nearer endpoint (ties to the smaller id).
    The union is asserted to cover every edge within the budget.  In the
    connected variant the pendant vertices are stripped before returning,
    leaving a cover of the user's input graph.
    """
    report = simulate(inst.gprime, s, strict=True)
    if not report.valid:
        why = report.violations[0].reason if report.violations else "incomplete burn"
        raise ReductionError(f"schedule is not strict-valid: {why}")
    if len(s.rounds) > inst.round_bound or report.completion_round > inst.round_bound:
        raise ReductionError(f"schedule exceeds {inst.round_bound} rounds")

    radius = inst.n * inst.k + 1
    parts: dict[tuple[int, int], set[int]] = {}
    for vid, role in enumerate(inst.roles):
        if role[0] == "e":
            key = (min(role[1], role[2]), max(role[1], role[2]))
        elif role[0] in ("d", "tail"):
            key = (role[1], role[2])
        else:
            continue
        parts.setdefault(key, set()).add(vid)

    sources = [v for batch in s.rounds for v in batch]
    dist_cache: dict[int, list[int | None]] = {}

    def dist_from(v: int) -> list[int | None]:
        if v not in dist_cache:
            dist_cache[v] = bfs_distances(inst.gprime, [v]).dist
        return dist_cache[v]

    big = inst.gprime.n + 1
    cover: set[int] = set()
    for b, c in base_edges(inst):
        db, dc = dist_from(b), dist_from(c)
        members = set(parts[(b, c)])
        members.update(x for x in range(inst.gprime.n) if db[x] is not None and db[x] <= radius)
        members.update(x for x in range(inst.gprime.n) if dc[x] is not None and dc[x] <= radius)
        for src in sources:
            if src not in members:
                continue
            a = db[src] if db[src] is not None else big
            bb = dc[src] if dc[src] is not None else big
            if a < bb or (a == bb and b < c):
                cover.add(b)
            else:
                cover.add(c)

    for b, c in base_edges(inst):
        if b not in cover and c not in cover:
            raise ReductionError(f"extracted set misses edge ({b},{c}); invalid instance/schedule pair")
    if len(cover) > inst.q:
        raise ReductionError(f"extracted set has {len(cover)} vertices, budget is {inst.q}")
    if inst.connected:
        cover = {x for x in cover if x < inst.original_n}
        if len(cover) > inst.original_q:
            raise ReductionError(
                f"stripped cover has {len(cover)} vertices, budget is {inst.original_q}"
            )
    return sorted(cover)


# --- 3-SAT scheduling gadget ---------------------------------------------


@dataclass
class Cnf3:
    """3-CNF formula: clauses are triples of nonzero signed variable indices."""

    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n_vars < 1:
            raise ReductionError("formula needs at least one variable")
        clean = []
        for clause in self.clauses:
            if len(clause) != 3:
                raise ReductionError(f"clause {clause} does not have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ReductionError(f"literal {lit} out of range for {self.n_vars} variables")
            clean.append(tuple(clause))
        self.clauses = tuple(clean)


def satisfies(cnf: Cnf3, assignment: dict[int, bool]) -> bool:
    return all(
        any(assignment[abs(lit)] == (lit > 0) for lit in clause)
        for clause in cnf.clauses
    )


@dataclass
class SatInstance:
    """Scheduling instance for a 3-CNF formula.

    Sources are exactly the 2n literal vertices.  ``literal_vertex`` maps
    the signed literal (+i / -i) to its vertex; ``top_end`` maps it to the
    far end of its top path, which is where clause vertices attach (the
    literal vertex itself when the path is empty, i.e. for i = n).
    """

    inst: SchedulingInstance
    literal_vertex: dict[int, int]
    clause_vertex: tuple[int, ...]
    cnf: Cnf3
    top_end: dict[int, int]


def build_sat_instance(cnf: Cnf3) -> SatInstance:
    if not cnf.clauses:
        raise ReductionError("formula must have at least one clause")
    n = cnf.n_vars
    literal_vertex: dict[int, int] = {}
    for i in range(1, n + 1):
        literal_vertex[i] = 2 * (i - 1)
        literal_vertex[-i] = 2 * (i - 1) + 1
    next_id = 2 * n
    edges: list[tuple[int, int]] = []
    top_end: dict[int, int] = {}
    for kind in ("top", "bottom"):
        for i in range(1, n + 1):
            for lit in (i, -i):
                prev = literal_vertex[lit]
                for _ in range(2 * (n - i)):
                    edges.append((prev, next_id))
                    prev = next_id
                    next_id += 1
                if kind == "top":
                    top_end[lit] = prev
    clause_vertex: list[int] = []
    for clause in cnf.clauses:
        cid = next_id
        next_id += 1
        clause_vertex.append(cid)
        for lit in sorted(set(clause), key=lambda l: (abs(l), l < 0)):
            edges.append((top_end[lit], cid))
    graph = graph_from_edges(next_id, edges)
    inst = SchedulingInstance(graph, tuple(range(2 * n)), k=1)
    return SatInstance(inst, literal_vertex, tuple(clause_vertex), cnf, top_end)


def schedule_to_assignment(si: SatInstance, ordering: dict[int, int]) -> dict[int, bool]:
    """Read a truth assignment off a feasible ignition ordering.

    The ordering must burn everything within 2n rounds; the two literals
    of variable j are then forced into rounds 2j-1 and 2j, and the one at
    the odd round is the true one.  Violations of either fact raise.
    """
    n = si.cnf.n_vars
    rounds = 2 * n
    ok, why = ordering_feasible(si.inst, ordering, rounds)
    if not ok:
        raise ReductionError(f"ordering infeasible: {why}")
    assignment: dict[int, bool] = {}
    for j in range(1, n + 1):
        rp = ordering[si.literal_vertex[j]]
        rn = ordering[si.literal_vertex[-j]]
        if {rp, rn} != {2 * j - 1, 2 * j}:
            raise ReductionError(
                f"variable {j}: literal vertices ignite at rounds {rp} and {rn}, "
                f"expected {2 * j - 1} and {2 * j}"
            )
        assignment[j] = rp % 2 == 1
    if not satisfies(si.cnf, assignment):
        raise ReductionError("extracted assignment does not satisfy the formula")
    return assignment


def assignment_to_schedule(si: SatInstance, assignment: dict[int, bool]) -> dict[int, int]:
    """Turn a satisfying assignment into a feasible 2n-round ignition ordering.

    The true literal of variable j ignites at round 2j-1, the false one at
    2j.  The ordering is simulated before being returned and must burn the
    whole instance within 2n rounds.
    """
    n = si.cnf.n_vars
    if sorted(assignment) != list(range(1, n + 1)):
        raise ReductionError("assignment must cover variables 1..n")
    if not satisfies(si.cnf, assignment):
        raise ReductionError("assignment does not satisfy the formula")
    ordering: dict[int, int] = {}
    for j in range(1, n + 1):
        pos, neg = si.literal_vertex[j], si.literal_vertex[-j]
        first, second = (pos, neg) if assignment[j] else (neg, pos)
        ordering[first] = 2 * j - 1
        ordering[second] = 2 * j
    batches: list[list[int]] = [[] for _ in range(2 * n)]
    for v, r in ordering.items():
        batches[r - 1].append(v)
    report = simulate(si.inst.graph, Schedule(si.inst.k, batches), strict=False)
    if not report.valid or report.completion_round > 2 * n:
        raise ReductionError("constructed ordering failed validation")  # pragma: no cover
    return ordering


# --- file formats ----------------------------------------------------------


def parse_dimacs_cnf(text: str) -> Cnf3:
    """Parse DIMACS-style CNF text; every clause must have exactly 3 literals."""
    n_vars = None
    declared = None
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"bad problem line: {line!r}")
            n_vars, declared = int(parts[2]), int(parts[3])
            continue
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError:
            raise ReductionError(f"bad clause line: {line!r}") from None
    if n_vars is None:
        raise ReductionError("missing 'p cnf n m' line")
    clauses: list[tuple[int, int, int]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if len(current) != 3:
                raise ReductionError(f"clause {tuple(current)} does not have exactly 3 literals")
            clauses.append((current[0], current[1], current[2]))
            current = []
        else:
            current.append(tok)
    if current:
        raise ReductionError("last clause is not terminated by 0")
    if declared is not None and len(clauses) != declared:
        raise ReductionError(f"header declares {declared} clauses, found {len(clauses)}")
    return Cnf3(n_vars, tuple(clauses))


def vc_instance_meta(inst: VcInstance) -> dict:
    return {
        "kind": "vc-burning-instance",
        "n": inst.n,
        "k": inst.k,
        "q": inst.q,
        "connected": inst.connected,
        "roles": [list(role) for role in inst.roles],
    }


def load_vc_instance(gprime: Graph, meta: dict) -> VcInstance:
    if meta.get("kind") != "vc-burning-instance":
        raise ReductionError("metadata is not a vc-burning instance")
    roles = [tuple(role) for role in meta["roles"]]
    if len(roles) != gprime.n:
        raise ReductionError(f"{len(roles)} roles for {gprime.n} vertices")
    return VcInstance(gprime, roles, int(meta["n"]), int(meta["k"]), int(meta["q"]),
                      bool(meta["connected"]))


def sat_instance_meta(si: SatInstance) -> dict:
    return {
        "kind": "sat-scheduling-instance",
        "n_vars": si.cnf.n_vars,
        "clauses": [list(c) for c in si.cnf.clauses],
        "k": si.inst.k,
        "rounds": 2 * si.cnf.n_vars,
        "sources": list(si.inst.sources),
        "literal_vertex": {str(lit): v for lit, v in si.literal_vertex.items()},
        "clause_vertex": list(si.clause_vertex),
        "top_end": {str(lit): v for lit, v in si.top_end.items()},
    }


def load_sat_instance(graph: Graph, meta: dict) -> SatInstance:
    if meta.get("kind") != "sat-scheduling-instance":
        raise ReductionError("metadata is not a sat-scheduling instance")
    cnf = Cnf3(int(meta["n_vars"]), tuple(tuple(c) for c in meta["clauses"]))
    inst = SchedulingInstance(graph, tuple(meta["sources"]), int(meta["k"]))
    return SatInstance(
        inst,
        {int(lit): v for lit, v in meta["literal_vertex"].items()},
        tuple(meta["clause_vertex"]),
        cnf,
        {int(lit): v for lit, v in meta["top_end"].items()},
    )
