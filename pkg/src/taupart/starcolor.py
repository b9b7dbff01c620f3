"""Star colourings within detour-order many colours.

A star colouring is a proper colouring in which every path on 4 vertices
carries at least 3 colours (equivalently, the union of any two colour
classes induces a star forest).  The constructive route pairs colours up:
partition the graph into parts of detour order at most 2 (so each part is a
perfect matching plus isolated vertices), give part i the colour pair
(2i, 2i+1) with matched endpoints split and isolated vertices on the first
colour, then repair the remaining bicoloured P4s one at a time, flipping a
degree-0 vertex of the offending pair or swapping a matching edge.  The
repair loop is capped; if it stalls, the residual P4 list is reported as a
witness and an exhaustive search (still within tau colours) takes over.

Verification and the exact chromatic searches are independent of the
construction and are what the certificates are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detour import detour_order
from .errors import (
    CapacityError,
    CounterexampleError,
    GraphError,
    InternalCheckError,
    StarRepairError,
)
from .graphs import Graph, closure, connected_components, encode_graph6, induced_subgraph, is_connected, iter_bits, mask_to_ids
from .multiway import EXACT_SEARCH_MAX_N, ColoringCertificate, t_partition


@dataclass(frozen=True)
class PairPartitionColoring:
    """Colouring derived from a detour-order-2 partition.

    parts[i] is a vertex mask with tau(<parts[i]>) <= 2, pair_colors[i] the
    one or two colours available to that part, colors the assignment.
    """

    parts: tuple[int, ...]
    pair_colors: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...]


def _is_proper(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


def pair_partition_coloring(g: Graph, max_n: int | None = None) -> PairPartitionColoring:
    """Initial paired colouring of a connected graph; proper but not yet
    necessarily a star colouring."""
    if g.n < 1:
        raise GraphError("pair partition colouring needs at least one vertex")
    if not is_connected(g):
        raise GraphError("pair partition colouring expects a connected graph")
    tau_g = detour_order(g, max_n=max_n).tau
    budgets = [2] * (tau_g // 2)
    if tau_g % 2:
        budgets.append(1)
    masks = t_partition(g, budgets, max_n=max_n)
    colors = [0] * g.n
    pair_colors = []
    for i, budget in enumerate(budgets):
        pc = (2 * i, 2 * i + 1) if budget == 2 else (2 * i,)
        pair_colors.append(pc)
        for v in iter_bits(masks[i]):
            inside = g.adj[v] & masks[i]
            if inside == 0:
                colors[v] = pc[0]
                continue
            if inside.bit_count() != 1 or len(pc) != 2:
                raise InternalCheckError(f"part {i} is not a matching plus isolated vertices")
            u = (inside & -inside).bit_length() - 1
            colors[v] = pc[0] if v < u else pc[1]
    if not _is_proper(g, colors):
        raise InternalCheckError("paired colouring is not proper")
    return PairPartitionColoring(tuple(masks), tuple(pair_colors), tuple(colors))


def find_bicolored_p4s(g: Graph, colors) -> list[tuple[int, int, int, int]]:
    """All paths on 4 vertices using exactly 2 colours, as canonical tuples.

    Each undirected P4 (u, v, w, z) is listed once, oriented so the tuple is
    lexicographically minimal; the list is sorted.
    """
    colors = list(colors)
    if len(colors) != g.n:
        raise GraphError("colouring must assign a colour to every vertex")
    out = []
    for v, w in g.edges():
        for u in iter_bits(g.adj[v] & ~(1 << w)):
            for z in iter_bits(g.adj[w] & ~(1 << v) & ~(1 << u)):
                if len({colors[u], colors[v], colors[w], colors[z]}) == 2:
                    quad = (u, v, w, z)
                    rev = (z, w, v, u)
                    out.append(quad if quad <= rev else rev)
    return sorted(out)


def _all_p4s(g: Graph) -> list[tuple[int, int, int, int]]:
    out = set()
    for v, w in g.edges():
        for u in iter_bits(g.adj[v] & ~(1 << w)):
            for z in iter_bits(g.adj[w] & ~(1 << v) & ~(1 << u)):
                quad = (u, v, w, z)
                rev = (z, w, v, u)
                out.add(quad if quad <= rev else rev)
    return sorted(out)


def repair_bicolored_p4s(g: Graph, ppc: PairPartitionColoring, max_iters: int | None = None,
                         events: list | None = None) -> PairPartitionColoring:
    """Remove bicoloured P4s from a paired colouring by local moves.

    Each round fixes the first (sorted) bicoloured P4: its two same-coloured
    vertices in the lower-indexed two-colour part either contain one with no
    neighbour inside the part (flip it to the part's other colour) or are
    both matched (swap the colours across the smaller vertex's matching
    edge).  Raises StarRepairError with the residual list when the iteration
    cap (default 2 n^2) is exhausted or a P4 offers no repairable side.
    Pass `events` to collect notes (e.g. a swap partner sitting in another
    live P4).
    """
    colors = list(ppc.colors)
    parts = ppc.parts
    pair_colors = ppc.pair_colors
    part_of = {}
    for i, m in enumerate(parts):
        for v in iter_bits(m):
            part_of[v] = i
    cap = 2 * g.n * g.n if max_iters is None else max_iters
    for _ in range(cap):
        p4s = find_bicolored_p4s(g, colors)
        if not p4s:
            return PairPartitionColoring(parts, pair_colors, tuple(colors))
        quad = p4s[0]
        groups: dict[int, list[int]] = {}
        for v in quad:
            groups.setdefault(part_of[v], []).append(v)
        if sorted(len(vs) for vs in groups.values()) != [2, 2]:
            raise StarRepairError(f"bicoloured P4 {quad} does not split 2+2 across parts",
                                  p4s, tuple(colors))
        repaired = False
        for pi in sorted(groups):
            if len(pair_colors[pi]) != 2:
                continue  # single-colour part cannot move; try the other side
            v1, v2 = sorted(groups[pi])
            if colors[v1] != colors[v2]:
                raise StarRepairError(f"P4 {quad} pair in part {pi} is not monochromatic",
                                      p4s, tuple(colors))
            pc = pair_colors[pi]
            other = pc[1] if colors[v1] == pc[0] else pc[0]
            loose = [v for v in (v1, v2) if g.adj[v] & parts[pi] == 0]
            if loose:
                colors[min(loose)] = other
            else:
                u = v1
                inside = g.adj[u] & parts[pi]
                if inside.bit_count() != 1:
                    raise StarRepairError(f"vertex {u} has in-part degree {inside.bit_count()}",
                                          p4s, tuple(colors))
                partner = (inside & -inside).bit_length() - 1
                if events is not None and any(partner in q for q in p4s[1:]):
                    events.append({"type": "partner-pinned", "vertex": u, "partner": partner,
                                   "p4": list(quad)})
                colors[u], colors[partner] = colors[partner], colors[u]
            repaired = True
            break
        if not repaired:
            raise StarRepairError(f"no repairable side for bicoloured P4 {quad}", p4s, tuple(colors))
        if not _is_proper(g, colors):
            raise InternalCheckError("repair broke properness")
    raise StarRepairError(f"iteration cap {cap} exhausted",
                          find_bicolored_p4s(g, colors), tuple(colors))


def verify_star_coloring(g: Graph, colors) -> bool:
    """Proper and no path on 4 vertices uses only 2 colours."""
    colors = list(colors)
    if len(colors) != g.n or any(c is None or int(c) < 0 for c in colors):
        raise GraphError("colouring must assign a non-negative colour to every vertex")
    if not _is_proper(g, colors):
        return False
    return not find_bicolored_p4s(g, colors)


def _is_forest(g: Graph, mask: int) -> bool:
    edges2 = sum((g.adj[v] & mask).bit_count() for v in iter_bits(mask))
    comps = 0
    rem = mask
    while rem:
        comp = closure(g.adj, rem & -rem, rem)
        comps += 1
        rem &= ~comp
    return edges2 // 2 == mask.bit_count() - comps


def verify_acyclic_coloring(g: Graph, colors) -> bool:
    """Proper and every union of two colour classes induces a forest."""
    colors = list(colors)
    if len(colors) != g.n or any(c is None or int(c) < 0 for c in colors):
        raise GraphError("colouring must assign a non-negative colour to every vertex")
    if not _is_proper(g, colors):
        return False
    classes: dict[int, int] = {}
    for v, c in enumerate(colors):
        classes[int(c)] = classes.get(int(c), 0) | (1 << v)
    keys = sorted(classes)
    for i, c1 in enumerate(keys):
        for c2 in keys[i + 1:]:
            if not _is_forest(g, classes[c1] | classes[c2]):
                return False
    return True


def _star_colors_with(g: Graph, k: int) -> tuple[int, ...] | None:
    """A star colouring with at most k colours, or None.  Deterministic."""
    p4s = _all_p4s(g)
    by_max: list[list[tuple[int, int, int, int]]] = [[] for _ in range(g.n)]
    for quad in p4s:
        by_max[max(quad)].append(quad)
    colors = [-1] * g.n

    def place(v: int, used: int) -> bool:
        below = (1 << v) - 1
        for c in range(min(used + 1, k)):
            ok = all(colors[u] != c for u in iter_bits(g.adj[v] & below))
            if not ok:
                continue
            colors[v] = c
            if all(len({colors[a], colors[b], colors[cc], colors[d]}) >= 3
                   for a, b, cc, d in by_max[v]):
                if v + 1 == g.n or place(v + 1, max(used, c + 1)):
                    return True
            colors[v] = -1
        return False

    if g.n == 0:
        return ()
    return tuple(colors) if place(0, 0) else None


def exact_star_chromatic(g: Graph, max_n: int | None = None) -> int:
    """Smallest number of colours in any star colouring of g."""
    limit = EXACT_SEARCH_MAX_N if max_n is None else max_n
    if g.n > limit:
        raise CapacityError(f"exact star search over {g.n} vertices exceeds the cap of {limit}")
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if _star_colors_with(g, k) is not None:
            return k
    raise InternalCheckError("rainbow colouring is always a star colouring")


def _acyclic_colors_with(g: Graph, k: int) -> tuple[int, ...] | None:
    colors = [-1] * g.n
    classes = [0] * k

    def place(v: int, used: int) -> bool:
        below = (1 << v) - 1
        for c in range(min(used + 1, k)):
            if any(colors[u] == c for u in iter_bits(g.adj[v] & below)):
                continue
            trial = classes[c] | (1 << v)
            if all(_is_forest(g, trial | classes[o]) for o in range(k) if o != c and classes[o]):
                colors[v] = c
                classes[c] = trial
                if v + 1 == g.n or place(v + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
                classes[c] ^= 1 << v
        return False

    if g.n == 0:
        return ()
    return tuple(colors) if place(0, 0) else None


def exact_acyclic_chromatic(g: Graph, max_n: int | None = None) -> int:
    """Smallest number of colours in any acyclic colouring of g."""
    limit = EXACT_SEARCH_MAX_N if max_n is None else max_n
    if g.n > limit:
        raise CapacityError(f"exact acyclic search over {g.n} vertices exceeds the cap of {limit}")
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if _acyclic_colors_with(g, k) is not None:
            return k
    raise InternalCheckError("rainbow colouring is always acyclic")


def star_coloring(g: Graph, max_n: int | None = None) -> ColoringCertificate:
    """Star colouring of g within tau(g) colours, verified.

    Components are coloured independently (colour indices are reused across
    components; no P4 crosses a component boundary).  A component whose
    repair loop stalls falls back to exhaustive search within its own detour
    order, and the stall is recorded as a witness on the certificate.
    """
    g6 = encode_graph6(g)
    if g.n == 0:
        return ColoringCertificate(g6, (), 0, 0, "star", True)
    tau_g = detour_order(g, max_n=max_n).tau
    colors = [0] * g.n
    witness: dict | None = None
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        order = mask_to_ids(comp)
        try:
            ppc = pair_partition_coloring(sub, max_n=g.n)
            ppc = repair_bicolored_p4s(sub, ppc)
            comp_colors = ppc.colors
        except StarRepairError as exc:
            tau_c = detour_order(sub, max_n=g.n).tau
            fallback = None
            for k in range(1, tau_c + 1):
                fallback = _star_colors_with(sub, k)
                if fallback is not None:
                    break
            if fallback is None:
                raise CounterexampleError(
                    f"no star colouring within {tau_c} colours", encode_graph6(sub), tau_c)
            comp_colors = fallback
            witness = {"component": order,
                       "residual_p4s": [list(q) for q in exc.residual],
                       "colors_at_failure": list(exc.colors),
                       "note": str(exc)}
        for v_local, c in enumerate(comp_colors):
            colors[order[v_local]] = c
    if not verify_star_coloring(g, colors):
        raise InternalCheckError(f"assembled star colouring failed verification on {g6}")
    used = len(set(colors))
    if used > tau_g:
        raise InternalCheckError(f"star colouring used {used} colours, bound is {tau_g}")
    return ColoringCertificate(g6, tuple(colors), used, tau_g, "star", True, witness=witness)
