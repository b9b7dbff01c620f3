"""Detour order (longest-path vertex count) and path queries.

Two independent engines live here on purpose.  The workhorse is a subset
dynamic program over connected vertex sets: for every reachable subset S the
table stores the mask of vertices that end some Hamiltonian path of <S>.
Levels of the DP are subsets of equal size, so queries of the form "is there
a path of order >= k" stop as soon as level k is reached.  The second engine
(`detour_order_dfs`) is a plain depth-first enumeration with reachability
pruning, sharing no code with the DP; the oracle sweeps cross-check the two
and abort loudly if they ever disagree.

All subset-taking functions accept vertex masks in the graph's own ids and
compact internally, so callers never pay for the full 2^n table when asking
about a small part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, GraphError
from .graphs import Graph, closure, iter_bits, mask_to_ids

# The DP table has an entry per connected subset; past ~20 vertices the
# table itself is the problem, not the time.  Overridable per call (the CLI
# wires TAUPART_MAX_N through).
DETOUR_DP_MAX_N = 20


@dataclass(frozen=True)
class DetourRecord:
    """Detour order together with one witness path realising it."""

    tau: int
    witness_path: tuple[int, ...]


def _compact(g: Graph, mask: int) -> tuple[list[int], list[int]]:
    """Relabel `mask` to 0..k-1; returns (local adjacency masks, local->global ids)."""
    order = mask_to_ids(mask)
    pos = {v: i for i, v in enumerate(order)}
    ladj = []
    for v in order:
        row = 0
        rem = g.adj[v] & mask
        for u in iter_bits(rem):
            row |= 1 << pos[u]
        ladj.append(row)
    return ladj, order


def _check_capacity(k: int, max_n: int | None) -> None:
    cap = DETOUR_DP_MAX_N if max_n is None else max_n
    if k > cap:
        raise CapacityError(f"subset dynamic program over {k} vertices exceeds the cap of {cap}")


def _dp_levels(ladj: list[int], stop_at: int | None = None, collect_level: int | None = None):
    """Run the endpoint DP level by level.

    Returns (tau, table, last_frontier, collected) where `table[mask]` is the
    endpoint mask of subset `mask` (0 if <mask> has no Hamiltonian path),
    `last_frontier` lists the masks of the deepest level reached, and
    `collected` is the union of endpoint masks at level `collect_level`.
    With `stop_at` the run ends as soon as tau reaches it (table is then
    partial).
    """
    k = len(ladj)
    if k == 0:
        return 0, [], [], 0
    table = [0] * (1 << k)
    frontier = []
    for i in range(k):
        table[1 << i] = 1 << i
        frontier.append(1 << i)
    tau = 1
    collected = 0
    if collect_level == 1:
        collected = (1 << k) - 1
    while frontier:
        if stop_at is not None and tau >= stop_at:
            break
        nxt: list[int] = []
        for mask in frontier:
            ends = table[mask]
            e = ends
            while e:
                low = e & -e
                v = low.bit_length() - 1
                e ^= low
                ext = ladj[v] & ~mask
                while ext:
                    lw = ext & -ext
                    ext ^= lw
                    nm = mask | lw
                    if not table[nm]:
                        nxt.append(nm)
                    table[nm] |= lw
        if not nxt:
            break
        tau += 1
        frontier = nxt
        if collect_level is not None and tau == collect_level:
            for mask in frontier:
                collected |= table[mask]
    return tau, table, frontier, collected


def detour_order(g: Graph, max_n: int | None = None) -> DetourRecord:
    """Detour order of g with a witness path, via the subset DP.

    The witness is deterministic: among maximum paths the one with the
    smallest vertex-set mask and then smallest endpoint is reconstructed.
    """
    if g.n == 0:
        raise GraphError("detour order of the empty graph is undefined")
    _check_capacity(g.n, max_n)
    ladj, order = _compact(g, g.full_mask)
    tau, table, last, _ = _dp_levels(ladj)
    best_mask = min(last)
    path_local = _reconstruct(ladj, table, best_mask)
    return DetourRecord(tau, tuple(order[v] for v in path_local))


def _reconstruct(ladj: list[int], table: list[int], mask: int) -> list[int]:
    ends = table[mask]
    v = (ends & -ends).bit_length() - 1
    path = [v]
    while mask != 1 << v:
        prev_mask = mask & ~(1 << v)
        cand = table[prev_mask] & ladj[v]
        v = (cand & -cand).bit_length() - 1
        path.append(v)
        mask = prev_mask
    path.reverse()
    return path


def tau_subset(g: Graph, mask: int, max_n: int | None = None) -> int:
    """Detour order of the induced subgraph <mask>; 0 for the empty set."""
    if mask == 0:
        return 0
    _check_capacity(mask.bit_count(), max_n)
    ladj, _ = _compact(g, mask)
    tau, _, _, _ = _dp_levels(ladj)
    return tau


def subset_has_path(g: Graph, mask: int, k: int, max_n: int | None = None) -> bool:
    """Does <mask> contain a path on at least k vertices?  Early-exits at level k."""
    if k < 1:
        raise GraphError(f"path order {k} must be positive")
    if k > mask.bit_count():
        return False
    _check_capacity(mask.bit_count(), max_n)
    ladj, _ = _compact(g, mask)
    tau, _, _, _ = _dp_levels(ladj, stop_at=k)
    return tau >= k


def subset_tau_at_most(g: Graph, mask: int, bound: int, max_n: int | None = None) -> bool:
    """tau(<mask>) <= bound, checked with early exit."""
    if bound < 0:
        return mask == 0
    if mask.bit_count() <= bound:
        return True
    return not subset_has_path(g, mask, bound + 1, max_n)


def has_path_of_order(g: Graph, k: int, max_n: int | None = None) -> bool:
    """Does g contain a path on at least k vertices?"""
    return subset_has_path(g, g.full_mask, k, max_n)


def end_vertices_of_order_paths(g: Graph, k: int, within: int | None = None,
                                max_n: int | None = None) -> int:
    """Mask of vertices that end at least one path of order exactly k in <within>.

    k = 1 returns every vertex of the set.  Vertices on longer paths still
    count only if some order-k path ends there (which always holds: any
    order-k prefix of a longer path is itself a path).
    """
    if k < 1:
        raise GraphError(f"path order {k} must be positive")
    mask = g.full_mask if within is None else within
    if k > mask.bit_count():
        return 0
    _check_capacity(mask.bit_count(), max_n)
    ladj, order = _compact(g, mask)
    _, _, _, collected = _dp_levels(ladj, stop_at=k, collect_level=k)
    out = 0
    for v in iter_bits(collected):
        out |= 1 << order[v]
    return out


def paths_of_order_at_least(g: Graph, k: int, within: int | None = None) -> list[tuple[int, ...]]:
    """All directed simple paths on >= k vertices inside <within>.

    Both orientations of every path are listed (callers that migrate "the
    (a+1)-th vertex of each orientation" rely on that).  Output order is
    deterministic: depth-first from each start vertex ascending, extending
    to neighbours ascending.
    """
    if k < 1:
        raise GraphError(f"path order {k} must be positive")
    mask = g.full_mask if within is None else within
    results: list[tuple[int, ...]] = []
    adj = g.adj
    path: list[int] = []

    def extend(v: int, used: int) -> None:
        path.append(v)
        if len(path) >= k:
            results.append(tuple(path))
        ext = adj[v] & mask & ~used
        for w in iter_bits(ext):
            extend(w, used | (1 << w))
        path.pop()

    for s in iter_bits(mask):
        extend(s, 1 << s)
    return results


def detour_order_dfs(g: Graph) -> int:
    """Independent longest-path engine: exhaustive DFS with pruning.

    Prunes a branch when even absorbing everything still reachable from the
    path head cannot beat the current best, and stops outright on a
    Hamiltonian path.  Used to cross-check the DP; shares nothing with it.
    """
    if g.n == 0:
        raise GraphError("detour order of the empty graph is undefined")
    adj = g.adj
    full = g.full_mask
    best = 1

    def grow(v: int, used: int, length: int) -> None:
        nonlocal best
        if length > best:
            best = length
        if best == g.n:
            return
        rest = full & ~used
        if length + closure(adj, adj[v] & rest, rest).bit_count() <= best:
            return
        ext = adj[v] & rest
        for w in iter_bits(ext):
            grow(w, used | (1 << w), length + 1)
            if best == g.n:
                return

    for s in range(g.n):
        grow(s, 1 << s, 1)
        if best == g.n:
            break
    return best
