"""Detour-order path partitions of 2-connected graphs, built inductively
over an ear decomposition.

A partition certificate for target (a, b) splits V(g) into parts A, B with
tau(<A>) <= a and tau(<B>) <= b.  The constructive route mirrors the ear
induction: partition the base cycle by a consecutive split, then fold each
ear in, deciding where its internal vertices go by the shape of the ear:

  r = 0 (chord):   endpoints in different parts need nothing ("1.1");
                   endpoints in one part may force a migration of deep path
                   vertices out of that part ("1.2").
  r = 1:           the single internal vertex joins the part away from its
                   neighbours ("2.1"), or the side whose attachment point
                   does not end a bound-length path ("2.2").
  r >= 2 ("3"):    internal vertices are two-coloured against their
                   attachment endpoints, alternating along the ear.

Every step is re-verified with exact detour bounds.  The construction rules
are not sound for every instance (small bounds can defeat the two-colouring,
and the split-endpoint rule is one-sided); when a step's verification fails,
a FailureWitness records the instance and a brute-force repartition of that
level repairs the fold, so the certificate is always correct even when the
construction was not.  Certificates whose every step verified carry method
"constructed"; repaired ones carry "fallback".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .detour import (
    detour_order,
    end_vertices_of_order_paths,
    paths_of_order_at_least,
    subset_tau_at_most,
    tau_subset,
)
from .ears import Ear, ear_decompose, is_two_connected
from .errors import CapacityError, CounterexampleError, GraphError, InternalCheckError, TargetError
from .graphs import Graph, add_ear, cycle_graph, encode_graph6, ids_to_mask, is_connected, iter_bits, mask_to_ids

BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True)
class PartitionTarget:
    """Target bounds (a, b) for a two-part detour partition."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise TargetError(f"target ({self.a}, {self.b}) must have positive parts")

    @property
    def total(self) -> int:
        return self.a + self.b


@dataclass
class CaseStep:
    """One ear folded into the partition.

    `migrated` is the mask of vertices moved between parts (original ids in
    a finished certificate); `valid_after` is filled in by the caller once
    the post-step bounds are checked.
    """

    ear_index: int
    case_tag: str  # "1.1" | "1.2" | "2.1" | "2.2" | "3"
    migrated: int
    subtarget: tuple[int, int] | None
    valid_after: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "ear_index": self.ear_index,
            "case": self.case_tag,
            "migrated": mask_to_ids(self.migrated),
            "subtarget": list(self.subtarget) if self.subtarget else None,
            "valid_after": self.valid_after,
        }


@dataclass
class FailureWitness:
    """A construction step that did not do what the theory promises.

    Replay: rerun tau_partition on (graph6, a, b); the construction is
    deterministic, so the same witness reappears at the same ear.
    kinds: "bound" (a folded step broke a detour bound), "migration-audit" (a
    migrated vertex was adjacent to a long-path end it should not be near,
    or needed a path order the bounds forbid), "no-level-partition"
    (brute force found nothing at an intermediate level).
    """

    kind: str
    graph6: str
    a: int
    b: int
    ear_index: int
    case_tag: str
    level_target: tuple[int, int]
    pre_a: tuple[int, ...]
    pre_b: tuple[int, ...]
    post_a: tuple[int, ...]
    post_b: tuple[int, ...]
    detail: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "graph6": self.graph6,
            "a": self.a,
            "b": self.b,
            "ear_index": self.ear_index,
            "case": self.case_tag,
            "level_target": list(self.level_target),
            "pre_A": list(self.pre_a),
            "pre_B": list(self.pre_b),
            "post_A": list(self.post_a),
            "post_B": list(self.post_b),
            "detail": self.detail,
        }


@dataclass
class PartitionCertificate:
    """A verified (a, b) partition, with the construction trace."""

    graph6: str
    a: int
    b: int
    part_a: int
    part_b: int
    tau_a: int
    tau_b: int
    method: str  # "base-cycle" | "constructed" | "fallback"
    trace: tuple[CaseStep, ...]
    witnesses: tuple[FailureWitness, ...] = ()

    def to_json_dict(self) -> dict:
        out = {
            "graph6": self.graph6,
            "a": self.a,
            "b": self.b,
            "A": mask_to_ids(self.part_a),
            "B": mask_to_ids(self.part_b),
            "tauA": self.tau_a,
            "tauB": self.tau_b,
            "method": self.method,
            "trace": [s.to_json_dict() for s in self.trace],
        }
        if self.witnesses:
            out["witnesses"] = [w.to_json_dict() for w in self.witnesses]
        return out


def _cycle_order(g: Graph) -> list[int]:
    if g.n < 3 or not is_connected(g) or any(g.degree(v) != 2 for v in range(g.n)):
        raise GraphError("graph is not a cycle")
    seq = [0, min(g.neighbors(0))]
    while True:
        prev, cur = seq[-2], seq[-1]
        rem = g.adj[cur] & ~(1 << prev)
        nxt = (rem & -rem).bit_length() - 1
        if nxt == 0:
            break
        seq.append(nxt)
    return seq


def partition_cycle(g: Graph, t: PartitionTarget) -> tuple[int, int]:
    """Partition a cycle by a consecutive split: the first t.a vertices along
    the cycle versus the rest.  tau of a path equals its order, so both
    bounds hold with equality."""
    seq = _cycle_order(g)
    if t.total != g.n:
        raise TargetError(f"target ({t.a}, {t.b}) sums to {t.total}, detour order of the cycle is {g.n}")
    part_a = ids_to_mask(seq[:t.a])
    return part_a, g.full_mask & ~part_a


def choose_subtarget(t: PartitionTarget, tau_sub: int) -> PartitionTarget:
    """Target for the previous level, given its detour order.

    a1 = max(1, tau_sub - b), b1 = tau_sub - a1; this always satisfies
    1 <= a1 <= a and 1 <= b1 <= b when 2 <= tau_sub <= a+b.
    """
    if tau_sub < 2:
        raise GraphError(f"detour order {tau_sub} of a 2-connected level below 2")
    if tau_sub > t.total:
        raise InternalCheckError(f"level detour order {tau_sub} exceeds target sum {t.total}")
    a1 = max(1, tau_sub - t.b)
    return PartitionTarget(a1, tau_sub - a1)


def extend_r0(h: Graph, prior: tuple[int, int], edge: tuple[int, int], t: PartitionTarget,
              sub: tuple[int, int] | None = None, ear_index: int = -1) -> tuple[tuple[int, int], CaseStep]:
    """Fold a chord ear into the partition of h.

    Endpoints in different parts: nothing changes ("1.1").  Endpoints in the
    same part P with bound p: if tau(<P>) still fits, nothing moves;
    otherwise, for every orientation of every path of order >= p+1 inside
    <P>, the (p+1)-th vertex migrates to the other part ("1.2").  No bound
    is checked here; the caller verifies and repairs.
    """
    part_a, part_b = prior
    x, y = edge
    xa = bool(part_a >> x & 1)
    ya = bool(part_a >> y & 1)
    if xa != ya:
        return prior, CaseStep(ear_index, "1.1", 0, sub)
    donor, bound = (part_a, t.a) if xa else (part_b, t.b)
    if subset_tau_at_most(h, donor, bound, max_n=h.n):
        return prior, CaseStep(ear_index, "1.2", 0, sub)
    migrated = 0
    for seq in paths_of_order_at_least(h, bound + 1, within=donor):
        migrated |= 1 << seq[bound]
    if xa:
        after = (part_a & ~migrated, part_b | migrated)
    else:
        after = (part_a | migrated, part_b & ~migrated)
    return after, CaseStep(ear_index, "1.2", migrated, sub)


def extend_r1(h: Graph, prior: tuple[int, int], ear: Ear, t: PartitionTarget,
              sub: tuple[int, int] | None = None, ear_index: int = -1) -> tuple[tuple[int, int], CaseStep]:
    """Fold a one-internal-vertex ear x, v1, y into the partition.

    Same-part endpoints: v1 joins the other part ("2.1").  Split endpoints:
    v1 joins the a-side unless its attachment there already ends a path of
    order a inside that side, in which case it joins the b-side ("2.2").
    """
    part_a, part_b = prior
    (v1,) = ear.internals
    xa = bool(part_a >> ear.x & 1)
    ya = bool(part_a >> ear.y & 1)
    if xa == ya:
        if xa:
            after = (part_a, part_b | (1 << v1))
        else:
            after = (part_a | (1 << v1), part_b)
        return after, CaseStep(ear_index, "2.1", 0, sub)
    a_end = ear.x if xa else ear.y
    ends = end_vertices_of_order_paths(h, t.a, within=part_a, max_n=h.n)
    if not ends >> a_end & 1:
        after = (part_a | (1 << v1), part_b)
    else:
        after = (part_a, part_b | (1 << v1))
    return after, CaseStep(ear_index, "2.2", 0, sub)


def extend_rge2(h: Graph, prior: tuple[int, int], ear: Ear, t: PartitionTarget,
                sub: tuple[int, int] | None = None, ear_index: int = -1) -> tuple[tuple[int, int], CaseStep]:
    """Fold an ear with r >= 2 internal vertices by two-colouring them.

    The first internal vertex takes the part opposite its endpoint x, the
    run alternates from there, and the last internal vertex takes the part
    opposite y (overriding the alternation; for some small bounds that
    leaves two adjacent internals in one part, which the caller's verifier
    will catch).
    """
    part_a, part_b = prior
    r = ear.r
    side = [False] * r  # True = part A
    side[0] = not (part_a >> ear.x & 1)
    for i in range(1, r - 1):
        side[i] = not side[i - 1]
    side[r - 1] = not (part_a >> ear.y & 1)
    add_a = 0
    add_b = 0
    for v, in_a in zip(ear.internals, side):
        if in_a:
            add_a |= 1 << v
        else:
            add_b |= 1 << v
    return (part_a | add_a, part_b | add_b), CaseStep(ear_index, "3", 0, sub)


def brute_force_partition(g: Graph, t: PartitionTarget, max_n: int | None = None) -> tuple[int, int] | None:
    """Exhaustive search for an (a, b) partition; None if there is none.

    Subsets are tried by increasing size, then in lexicographic order of the
    sorted id tuple, so the returned partition is deterministic.  Requires
    t.a + t.b == tau(g); anything else is a target error.
    """
    limit = BRUTE_FORCE_MAX_N if max_n is None else max_n
    if g.n > limit:
        raise CapacityError(f"brute-force partition over {g.n} vertices exceeds the cap of {limit}")
    tau_g = detour_order(g, max_n=max(limit, g.n)).tau
    if t.total != tau_g:
        raise TargetError(f"target ({t.a}, {t.b}) sums to {t.total}, detour order is {tau_g}")
    full = g.full_mask
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            part_a = ids_to_mask(combo)
            if subset_tau_at_most(g, part_a, t.a, max_n=g.n) and \
               subset_tau_at_most(g, full & ~part_a, t.b, max_n=g.n):
                return part_a, full & ~part_a
    return None


def _audit_migration(h: Graph, receiver_pre: int, migrated: int, b: int) -> list[dict]:
    """Check the migrated vertices against the receiving part.

    For each path X induced inside the migrated set (order c) and each
    position i (1-based), with q = i-1 and q = c-i: the migration rule requires
    b >= q+1 and the vertex at position i non-adjacent to every end vertex
    of a path of order b-q in the pre-migration receiving part.  Returns
    one event per observed violation; an empty list means the rule held
    on this instance.
    """
    events: list[dict] = []
    ends_cache: dict[int, int] = {}
    for seq in paths_of_order_at_least(h, 1, within=migrated):
        if seq[0] > seq[-1]:
            continue  # audit one orientation; both q values are checked anyway
        c = len(seq)
        for idx, u in enumerate(seq):
            i = idx + 1
            for q in sorted({i - 1, c - i}):
                if b - q < 1:
                    events.append({"type": "order-bound", "vertex": u, "q": q, "bound_b": b,
                                   "path": list(seq)})
                    continue
                length = b - q
                if length not in ends_cache:
                    ends_cache[length] = end_vertices_of_order_paths(h, length, within=receiver_pre,
                                                                     max_n=h.n)
                conflicts = h.adj[u] & ends_cache[length]
                if conflicts:
                    events.append({"type": "adjacency", "vertex": u, "q": q, "path_order": c,
                                   "path": list(seq), "conflicts": mask_to_ids(conflicts)})
    return events


def tau_partition_2connected(g: Graph, t: PartitionTarget, max_n: int | None = None) -> PartitionCertificate:
    """Constructive (a, b) partition of a 2-connected graph.

    Builds the ear decomposition, derives per-level targets top-down, splits
    the base cycle, folds the ears with the case rules, verifies every step
    exactly, and repairs failed steps by brute force at that level (recording
    witnesses).  The returned certificate is always verified against g.
    """
    rec = detour_order(g, max_n=max_n)
    tau_g = rec.tau
    if t.total != tau_g:
        raise TargetError(f"target ({t.a}, {t.b}) sums to {t.total}, detour order is {tau_g}")
    g6 = encode_graph6(g)
    decomp = ear_decompose(g)

    # Rebuild level by level with local ids (base cycle = 0..c-1 in cycle order).
    levels = [cycle_graph(len(decomp.base_cycle))]
    orig_of = list(decomp.base_cycle)
    pos = {v: i for i, v in enumerate(decomp.base_cycle)}
    local_ears: list[Ear] = []
    cur = levels[0]
    for ear in decomp.ears:
        lx, ly = pos[ear.x], pos[ear.y]
        start = cur.n
        cur = add_ear(cur, lx, ly, ear.r)
        for off, ov in enumerate(ear.internals):
            pos[ov] = start + off
            orig_of.append(ov)
        local_ears.append(Ear(lx, ly, tuple(range(start, start + ear.r))))
        levels.append(cur)

    def to_orig(local_mask: int) -> int:
        out = 0
        for j in iter_bits(local_mask):
            out |= 1 << orig_of[j]
        return out

    taus = [detour_order(level, max_n=g.n).tau for level in levels]
    if taus[-1] != tau_g:
        raise InternalCheckError(f"level fold changed the detour order: {taus[-1]} != {tau_g}")
    targets: list[PartitionTarget] = [t] * len(levels)
    for i in range(len(levels) - 1, 0, -1):
        targets[i - 1] = choose_subtarget(targets[i], taus[i - 1])

    part_a, part_b = partition_cycle(levels[0], targets[0])
    method = "base-cycle" if not local_ears else "constructed"
    trace: list[CaseStep] = []
    witnesses: list[FailureWitness] = []
    final_orig: tuple[int, int] | None = None

    for i, lear in enumerate(local_ears):
        h = levels[i + 1]
        tt = targets[i + 1]
        sub = (targets[i].a, targets[i].b)
        prior = (part_a, part_b)
        if lear.r == 0:
            after, step = extend_r0(h, prior, (lear.x, lear.y), tt, sub=sub, ear_index=i)
        elif lear.r == 1:
            after, step = extend_r1(h, prior, lear, tt, sub=sub, ear_index=i)
        else:
            after, step = extend_rge2(h, prior, lear, tt, sub=sub, ear_index=i)

        if step.case_tag == "1.2" and step.migrated:
            if step.migrated & part_a:
                receiver_pre, bound_recv = part_b, tt.b
            else:
                receiver_pre, bound_recv = part_a, tt.a
            for ev in _audit_migration(h, receiver_pre, step.migrated, bound_recv):
                ev_orig = dict(ev)
                ev_orig["vertex"] = orig_of[ev["vertex"]]
                ev_orig["path"] = [orig_of[v] for v in ev["path"]]
                if "conflicts" in ev:
                    ev_orig["conflicts"] = [orig_of[v] for v in ev["conflicts"]]
                witnesses.append(FailureWitness(
                    kind="migration-audit", graph6=g6, a=t.a, b=t.b, ear_index=i, case_tag="1.2",
                    level_target=(tt.a, tt.b),
                    pre_a=tuple(sorted(orig_of[v] for v in iter_bits(prior[0]))),
                    pre_b=tuple(sorted(orig_of[v] for v in iter_bits(prior[1]))),
                    post_a=tuple(sorted(orig_of[v] for v in iter_bits(after[0]))),
                    post_b=tuple(sorted(orig_of[v] for v in iter_bits(after[1]))),
                    detail=ev_orig))

        ok_a = subset_tau_at_most(h, after[0], tt.a, max_n=g.n)
        ok_b = subset_tau_at_most(h, after[1], tt.b, max_n=g.n)
        step.valid_after = ok_a and ok_b
        step.migrated = to_orig(step.migrated)
        trace.append(step)
        if step.valid_after:
            part_a, part_b = after
            continue

        witnesses.append(FailureWitness(
            kind="bound", graph6=g6, a=t.a, b=t.b, ear_index=i, case_tag=step.case_tag,
            level_target=(tt.a, tt.b),
            pre_a=tuple(sorted(orig_of[v] for v in iter_bits(prior[0]))),
            pre_b=tuple(sorted(orig_of[v] for v in iter_bits(prior[1]))),
            post_a=tuple(sorted(orig_of[v] for v in iter_bits(after[0]))),
            post_b=tuple(sorted(orig_of[v] for v in iter_bits(after[1]))),
            detail={"tau_A": tau_subset(h, after[0], max_n=g.n),
                    "tau_B": tau_subset(h, after[1], max_n=g.n),
                    "violated": [s for s, ok in (("A", ok_a), ("B", ok_b)) if not ok]}))
        method = "fallback"
        repaired = brute_force_partition(h, tt, max_n=max(h.n, BRUTE_FORCE_MAX_N if max_n is None else max_n))
        if repaired is not None:
            part_a, part_b = repaired
            continue
        witnesses.append(FailureWitness(
            kind="no-level-partition", graph6=g6, a=t.a, b=t.b, ear_index=i,
            case_tag=step.case_tag, level_target=(tt.a, tt.b),
            pre_a=tuple(sorted(orig_of[v] for v in iter_bits(prior[0]))),
            pre_b=tuple(sorted(orig_of[v] for v in iter_bits(prior[1]))),
            post_a=(), post_b=(),
            detail={"note": f"no ({tt.a}, {tt.b}) partition of the level-{i + 1} graph"}))
        whole = brute_force_partition(g, t, max_n=max(g.n, BRUTE_FORCE_MAX_N if max_n is None else max_n))
        if whole is None:
            raise CounterexampleError(
                f"no ({t.a}, {t.b}) partition exists", g6, (t.a, t.b))
        final_orig = whole
        break

    if final_orig is None:
        final_orig = (to_orig(part_a), to_orig(part_b))
    out_a, out_b = final_orig
    tau_a = tau_subset(g, out_a, max_n=g.n)
    tau_b = tau_subset(g, out_b, max_n=g.n)
    if tau_a > t.a or tau_b > t.b or (out_a | out_b) != g.full_mask or (out_a & out_b):
        raise InternalCheckError(f"certified partition fails its own bounds on {g6}")
    return PartitionCertificate(g6, t.a, t.b, out_a, out_b, tau_a, tau_b, method,
                                tuple(trace), tuple(witnesses))


def tau_partition(g: Graph, t: PartitionTarget, max_n: int | None = None) -> PartitionCertificate:
    """(a, b) partition of any graph: 2-connected graphs go through the
    ear construction, everything else straight to brute force."""
    if is_two_connected(g):
        return tau_partition_2connected(g, t, max_n=max_n)
    got = brute_force_partition(g, t, max_n=max_n)
    if got is None:
        raise CounterexampleError(f"no ({t.a}, {t.b}) partition exists", encode_graph6(g), (t.a, t.b))
    part_a, part_b = got
    return PartitionCertificate(encode_graph6(g), t.a, t.b, part_a, part_b,
                                tau_subset(g, part_a, max_n=g.n), tau_subset(g, part_b, max_n=g.n),
                                "fallback", (), ())
