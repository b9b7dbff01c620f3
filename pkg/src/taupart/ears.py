"""Open ear decompositions of 2-connected graphs.

A decomposition is a base cycle plus an ordered list of ears; attaching the
ears in order rebuilds the graph, every prefix is 2-connected, and the ears
partition the edge set.  The default construction is the chain decomposition
from a depth-first tree: each unprocessed back edge opens a chain that runs
back up tree edges until it hits an already-covered vertex.  The first chain
is the base cycle; the rest are ears (a chain with no fresh vertices is a
chord ear).

An explicit base cycle can be forced instead, in which case ears are grown
greedily from the covered set; the partitioner uses that when it wants a
specific starting cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, InternalCheckError, NotTwoConnectedError
from .graphs import Graph, add_ear, blocks, cycle_graph, ids_to_mask, is_connected, iter_bits, pair_index


@dataclass(frozen=True)
class Ear:
    """Path x, internals..., y with both endpoints in the already-built graph."""

    x: int
    y: int
    internals: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.internals)


@dataclass(frozen=True)
class EarDecomposition:
    base_cycle: tuple[int, ...]
    ears: tuple[Ear, ...]

    def to_json_dict(self) -> dict:
        return {
            "base_cycle": list(self.base_cycle),
            "ears": [{"x": e.x, "y": e.y, "internals": list(e.internals)} for e in self.ears],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "EarDecomposition":
        ears = tuple(Ear(int(e["x"]), int(e["y"]), tuple(int(v) for v in e["internals"]))
                     for e in d["ears"])
        return EarDecomposition(tuple(int(v) for v in d["base_cycle"]), ears)


def is_two_connected(g: Graph) -> bool:
    """At least 3 vertices, connected, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    _, cut_mask = blocks(g)
    return cut_mask == 0


def _require_two_connected(g: Graph) -> None:
    if g.n < 3:
        raise NotTwoConnectedError(f"graph on {g.n} vertices is too small to be 2-connected")
    if not is_connected(g):
        raise NotTwoConnectedError("graph is disconnected")
    _, cut_mask = blocks(g)
    if cut_mask:
        v = (cut_mask & -cut_mask).bit_length() - 1
        raise NotTwoConnectedError(f"vertex {v} is a cut vertex", cut_vertex=v)


def ear_decompose(g: Graph, base_cycle: tuple[int, ...] | None = None) -> EarDecomposition:
    """Decompose a 2-connected graph into a base cycle plus ears.

    With `base_cycle` given (a cycle of g, listed once without repeating the
    first vertex), that cycle is used verbatim and ears are grown from it;
    otherwise the base cycle comes from the chain decomposition.  Output is
    deterministic for a given graph.

    Raises NotTwoConnectedError (naming a cut vertex when one exists) on
    graphs that are not 2-connected, and GraphError if a forced base cycle
    is not actually a cycle of g.
    """
    _require_two_connected(g)
    if base_cycle is not None:
        return _decompose_from_cycle(g, tuple(base_cycle))
    return _chain_decompose(g)


def _chain_decompose(g: Graph) -> EarDecomposition:
    n = g.n
    parent = [-1] * n
    dfsnum = [-1] * n
    order: list[int] = []
    # Iterative DFS from vertex 0, visiting neighbours in ascending order.
    stack = [(0, iter(g.neighbors(0)))]
    dfsnum[0] = 0
    order.append(0)
    timer = 1
    while stack:
        v, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            continue
        if dfsnum[w] == -1:
            parent[w] = v
            dfsnum[w] = timer
            timer += 1
            order.append(w)
            stack.append((w, iter(g.neighbors(w))))

    back_at: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        for w in iter_bits(g.adj[u]):
            if dfsnum[w] < dfsnum[u] and parent[u] != w:
                back_at[w].append(u)  # u descends to ancestor w

    visited = [False] * n
    chains: list[list[int]] = []
    for v in order:
        for u in sorted(back_at[v]):
            visited[v] = True
            chain = [v]
            w = u
            while not visited[w]:
                visited[w] = True
                chain.append(w)
                w = parent[w]
            chain.append(w)
            chains.append(chain)

    if not chains:
        raise InternalCheckError("2-connected graph produced no chains")
    first = chains[0]
    if first[0] != first[-1] or len(first) < 4:
        raise InternalCheckError("first chain is not a cycle")
    base = tuple(first[:-1])
    ears = tuple(Ear(c[0], c[-1], tuple(c[1:-1])) for c in chains[1:])
    return EarDecomposition(base, ears)


def _decompose_from_cycle(g: Graph, seq: tuple[int, ...]) -> EarDecomposition:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise GraphError(f"base cycle {seq} is not a simple cycle")
    for i, v in enumerate(seq):
        if not (0 <= v < g.n):
            raise GraphError(f"base cycle vertex {v} out of range")
        w = seq[(i + 1) % len(seq)]
        if not g.has_edge(v, w):
            raise GraphError(f"base cycle edge ({v}, {w}) is not an edge of g")
    s_mask = ids_to_mask(seq)
    covered = 0
    for i, v in enumerate(seq):
        covered |= 1 << pair_index(v, seq[(i + 1) % len(seq)])
    total = g.m
    ears: list[Ear] = []
    while covered.bit_count() < total:
        u = v0 = -1
        for u_cand in iter_bits(s_mask):
            for v_cand in g.neighbors(u_cand):
                if not covered >> pair_index(u_cand, v_cand) & 1:
                    u, v0 = u_cand, v_cand
                    break
            if u != -1:
                break
        if u == -1:
            raise InternalCheckError("uncovered edges but none touch the built subgraph")
        if s_mask >> v0 & 1:
            ears.append(Ear(u, v0, ()))
            covered |= 1 << pair_index(u, v0)
            continue
        walk = _attach_path(g, u, v0, s_mask)
        ears.append(Ear(u, walk[-1], tuple(walk[:-1])))
        chain = [u] + walk
        for a, b in zip(chain, chain[1:]):
            covered |= 1 << pair_index(a, b)
        s_mask |= ids_to_mask(walk[:-1])
    return EarDecomposition(seq, tuple(ears))


def _attach_path(g: Graph, u: int, v: int, s_mask: int) -> list[int]:
    """Path v, ..., t through vertices outside s_mask, ending at t in
    s_mask with t != u.  First such path in ascending depth-first order."""
    target = s_mask & ~(1 << u)

    def dfs(w: int, used: int, acc: list[int]) -> list[int] | None:
        for x in g.neighbors(w):
            if x == u or used >> x & 1:
                continue
            if target >> x & 1:
                return acc + [x]
            got = dfs(x, used | (1 << x), acc + [x])
            if got is not None:
                return got
        return None

    path = dfs(v, 1 << v, [v])
    if path is None:
        raise InternalCheckError(f"no second attachment for ear at {u}; graph not 2-connected?")
    return path


def ear_diagnostics(g: Graph, d: EarDecomposition) -> list[str]:
    """All the ways `d` fails to be an ear decomposition of g (empty = valid).

    Checks: the base really is a cycle of g, ear endpoints land on already
    covered vertices, internal vertices are fresh and induce a path of g,
    and the base plus ears partition E(g) and cover V(g) exactly.
    """
    msgs: list[str] = []
    base = d.base_cycle
    seen = 0
    covered = 0

    def cover(a: int, b: int, where: str) -> None:
        nonlocal covered
        if not g.has_edge(a, b):
            msgs.append(f"{where}: ({a}, {b}) is not an edge of g")
            return
        bit = 1 << pair_index(a, b)
        if covered & bit:
            msgs.append(f"{where}: edge ({a}, {b}) covered twice")
        covered |= bit

    if len(base) < 3:
        msgs.append(f"base cycle has {len(base)} vertices, needs at least 3")
    if len(set(base)) != len(base):
        msgs.append("base cycle repeats a vertex")
    if any(not 0 <= v < g.n for v in base):
        msgs.append("base cycle vertex out of range")
        return msgs
    for i, v in enumerate(base):
        cover(v, base[(i + 1) % len(base)], "base cycle")
    seen = ids_to_mask(base)

    for idx, ear in enumerate(d.ears):
        where = f"ear {idx}"
        pts = (ear.x, *ear.internals, ear.y)
        if any(not 0 <= v < g.n for v in pts):
            msgs.append(f"{where}: vertex out of range")
            continue
        if ear.x == ear.y:
            msgs.append(f"{where}: endpoints coincide at {ear.x}")
        for v in (ear.x, ear.y):
            if not seen >> v & 1:
                msgs.append(f"{where}: endpoint {v} not in the built prefix")
        for v in ear.internals:
            if seen >> v & 1:
                msgs.append(f"{where}: internal vertex {v} is not fresh")
        if len(set(ear.internals)) != len(ear.internals):
            msgs.append(f"{where}: internal vertices repeat")
        for a, b in zip(pts, pts[1:]):
            cover(a, b, where)
        seen |= ids_to_mask(ear.internals)

    if seen != g.full_mask:
        missing = [v for v in range(g.n) if not seen >> v & 1]
        msgs.append(f"vertices {missing} not covered")
    want = 0
    for a, b in g.edges():
        want |= 1 << pair_index(a, b)
    if covered != want:
        missing_bits = (want & ~covered).bit_count()
        if missing_bits:
            msgs.append(f"{missing_bits} edge(s) of g not covered")
    return msgs


def validate_ears(g: Graph, d: EarDecomposition) -> bool:
    """True iff `d` is a valid ear decomposition of g (see ear_diagnostics)."""
    return not ear_diagnostics(g, d)


def reconstruct_decomposition(d: EarDecomposition) -> tuple[Graph, list[int]]:
    """Rebuild the graph by folding add_ear over the decomposition.

    Returns the rebuilt graph (fresh local ids in attachment order) and the
    local->original id list.
    """
    base = d.base_cycle
    if len(base) < 3:
        raise GraphError(f"base cycle has {len(base)} vertices")
    gg = cycle_graph(len(base))
    orig = list(base)
    pos = {v: i for i, v in enumerate(base)}
    if len(pos) != len(base):
        raise GraphError("base cycle repeats a vertex")
    for ear in d.ears:
        if ear.x not in pos or ear.y not in pos:
            raise GraphError(f"ear endpoint ({ear.x}, {ear.y}) not yet present")
        start = gg.n
        gg = add_ear(gg, pos[ear.x], pos[ear.y], ear.r)
        for off, ov in enumerate(ear.internals):
            if ov in pos:
                raise GraphError(f"internal vertex {ov} reused")
            pos[ov] = start + off
            orig.append(ov)
    return gg, orig


def reconstruction_matches(g: Graph, d: EarDecomposition) -> bool:
    """Does folding the ears rebuild exactly g (under the id mapping)?"""
    try:
        gg, orig = reconstruct_decomposition(d)
    except GraphError:
        return False
    if gg.n != g.n or sorted(orig) != list(range(g.n)):
        return False
    rebuilt = {(min(orig[a], orig[b]), max(orig[a], orig[b])) for a, b in gg.edges()}
    return rebuilt == set(g.edges())
