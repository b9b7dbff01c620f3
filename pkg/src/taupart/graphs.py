"""Small simple undirected graphs over vertex ids 0..n-1.

Vertex sets are plain ints used as bitmasks (bit v set <=> vertex v in the
set), and adjacency is stored as one neighbourhood mask per vertex.  That
representation keeps the subset dynamic programming and the induced-subgraph
checks in the rest of the package cheap.  Graphs are immutable; editing
operations return new graphs.

The supported vertex count is capped at MAX_VERTICES (64).  Python ints would
happily go further, but everything downstream of parsing is exponential in n,
so the cap keeps capacity failures explicit instead of letting a 200-vertex
input melt the subset tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapacityError, Graph6Error, GraphError

MAX_VERTICES = 64

_G6_HEADER = ">>graph6<<"


def ids_to_mask(ids: Iterable[int]) -> int:
    """Pack an iterable of vertex ids into a bitmask."""
    m = 0
    for v in ids:
        m |= 1 << v
    return m


def mask_to_ids(mask: int) -> list[int]:
    """Unpack a bitmask into a sorted list of vertex ids."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of `mask` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def pair_index(i: int, j: int) -> int:
    """Index of the unordered pair {i, j} (i < j) in upper-triangle
    column-major order: x(0,1), x(0,2), x(1,2), x(0,3), ...

    This is the bit order used by the graph6 format and by the
    triangle-mask helpers below.
    """
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    `adj[v]` is the bitmask of neighbours of v.  Construction validates
    symmetry and absence of self-loops, so every reachable Graph value is
    a well-formed simple graph.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count {self.n} is negative")
        if self.n > MAX_VERTICES:
            raise CapacityError(f"graph on {self.n} vertices exceeds the supported maximum of {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency table has {len(self.adj)} rows for {self.n} vertices")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for v in range(self.n):
            row = self.adj[v]
            w = row
            while w:
                low = w & -w
                u = low.bit_length() - 1
                w ^= low
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on n vertices from an edge list.

        Rejects out-of-range endpoints, self-loops and repeated edges.
        """
        if n < 0:
            raise GraphError(f"vertex count {n} is negative")
        if n > MAX_VERTICES:
            raise CapacityError(f"graph on {n} vertices exceeds the supported maximum of {MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return mask_to_ids(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        out = []
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1) << (v + 1)
            for u in iter_bits(higher):
                out.append((v, u))
        return out


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def petersen_graph() -> Graph:
    """The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, 5 + i))
    return Graph.from_edges(10, edges)


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) with a fixed seed; edge pairs are sampled in sorted order."""
    rng = random.Random(seed)
    edges = [(i, j) for j in range(n) for i in range(j) if rng.random() < p]
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# graph6 (the format used by nauty/geng: 6-bit groups, printable bytes 63..126)


def parse_graph6(line: str) -> Graph:
    """Parse one graph6 string (optionally prefixed with '>>graph6<<').

    Raises Graph6Error naming the byte offset for malformed, truncated or
    trailing-garbage input.  The offset refers to the string after
    stripping surrounding whitespace.
    """
    s = line.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    data = s.encode("ascii", errors="replace")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"invalid graph6 byte {byte!r}", off)

    # Decode the order n.
    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated long-form vertex count", len(data))
        n = 0
        for k in range(1, 4):
            n = n << 6 | (data[k] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated very-long-form vertex count", len(data))
        n = 0
        for k in range(2, 8):
            n = n << 6 | (data[k] - 63)
        pos = 8
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 order {n} exceeds the supported maximum of {MAX_VERTICES}")

    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(data) - pos < ngroups:
        raise Graph6Error(f"truncated edge data for n={n}", len(data))
    if len(data) - pos > ngroups:
        raise Graph6Error("trailing garbage after edge data", pos + ngroups)

    adj = [0] * n
    bit = 0
    for k in range(ngroups):
        group = data[pos + k] - 63
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if group >> shift & 1:
                    raise Graph6Error("nonzero padding bits", pos + k)
                continue
            if group >> shift & 1:
                # invert pair_index: find column j with j*(j-1)/2 <= bit
                j = _column_of(bit)
                i = bit - j * (j - 1) // 2
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return Graph(n, tuple(adj))


def _column_of(bit: int) -> int:
    # smallest j with (j+1)*j//2 > bit
    j = 1
    while j * (j + 1) // 2 <= bit:
        j += 1
    return j


def encode_graph6(g: Graph) -> str:
    """Encode a graph as a canonical-order graph6 string (no header)."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    nbits = n * (n - 1) // 2
    groups = [0] * ((nbits + 5) // 6)
    for j in range(n):
        for i in range(j):
            if g.adj[j] >> i & 1:
                bit = pair_index(i, j)
                groups[bit // 6] |= 1 << (5 - bit % 6)
    return bytes(head + [x + 63 for x in groups]).decode("ascii")


def from_triangle_mask(n: int, mask: int) -> Graph:
    """Build a graph from its upper-triangle edge bitmask (pair_index order)."""
    adj = [0] * n
    for bit in iter_bits(mask):
        j = _column_of(bit)
        i = bit - j * (j - 1) // 2
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def to_triangle_mask(g: Graph) -> int:
    """Inverse of from_triangle_mask."""
    mask = 0
    for u, v in g.edges():
        mask |= 1 << pair_index(u, v)
    return mask


# ---------------------------------------------------------------------------
# structure helpers


def closure(adj: tuple[int, ...], seed_mask: int, allowed: int) -> int:
    """Vertices of `allowed` reachable from `seed_mask` inside `allowed`."""
    comp = seed_mask & allowed
    frontier = comp
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def connected_components(g: Graph) -> list[int]:
    """Component vertex masks, ordered by smallest member id."""
    rem = g.full_mask
    comps = []
    while rem:
        comp = closure(g.adj, rem & -rem, rem)
        comps.append(comp)
        rem &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return closure(g.adj, 1, g.full_mask) == g.full_mask


def induced_subgraph(g: Graph, vertices: int | Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the given vertex set (mask or iterable of ids).

    Returns the subgraph (vertices relabelled to 0..k-1 in ascending order
    of their original ids) together with the old->new id mapping.
    """
    mask = vertices if isinstance(vertices, int) else ids_to_mask(vertices)
    if mask & ~g.full_mask or mask < 0:
        raise GraphError(f"vertex set {mask:#x} not within 0..{g.n - 1}")
    order = mask_to_ids(mask)
    old_to_new = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        row = 0
        for u in iter_bits(g.adj[v] & mask):
            row |= 1 << old_to_new[u]
        adj.append(row)
    return Graph(len(order), tuple(adj)), old_to_new


def add_ear(g: Graph, x: int, y: int, r: int) -> Graph:
    """Attach an ear of r internal vertices between distinct vertices x and y.

    r = 0 adds the chord xy (which must not already exist); r >= 1 adds new
    vertices g.n .. g.n+r-1 forming the path x, g.n, ..., g.n+r-1, y.
    """
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise GraphError(f"ear endpoints ({x}, {y}) out of range for n={g.n}")
    if x == y:
        raise GraphError(f"ear endpoints coincide at vertex {x}")
    if r < 0:
        raise GraphError(f"ear length {r} is negative")
    if r == 0:
        if g.has_edge(x, y):
            raise GraphError(f"chord ({x}, {y}) already present")
        adj = list(g.adj)
        adj[x] |= 1 << y
        adj[y] |= 1 << x
        return Graph(g.n, tuple(adj))
    n2 = g.n + r
    if n2 > MAX_VERTICES:
        raise CapacityError(f"ear would grow the graph to {n2} > {MAX_VERTICES} vertices")
    adj = list(g.adj) + [0] * r
    chain = [x] + list(range(g.n, n2)) + [y]
    for u, v in zip(chain, chain[1:]):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n2, tuple(adj))


def random_2connected(n: int, extra_ears: int = 0, seed: int = 0) -> Graph:
    """Random 2-connected graph of order exactly n, built cycle-first.

    Starts from a random cycle and repeatedly attaches ears with fresh
    internal vertices until the order reaches n, then adds up to
    `extra_ears` random chords.  Deterministic for a fixed seed.
    """
    if n < 3:
        raise GraphError(f"2-connected graphs need at least 3 vertices, got {n}")
    rng = random.Random(seed)
    g = cycle_graph(rng.randint(3, n))
    while g.n < n:
        r = rng.randint(1, n - g.n)
        x = rng.randrange(g.n)
        y = rng.randrange(g.n - 1)
        if y >= x:
            y += 1
        g = add_ear(g, x, y, r)
    for _ in range(extra_ears):
        non_edges = [(i, j) for j in range(g.n) for i in range(j) if not g.has_edge(i, j)]
        if not non_edges:
            break
        u, v = rng.choice(non_edges)
        g = add_ear(g, u, v, 0)
    return g


def blocks(g: Graph) -> tuple[list[tuple[int, bool]], int]:
    """Biconnected components and cut vertices.

    Returns (block list, cut vertex mask) where each block is a
    (vertex mask, is_bridge) pair.  Isolated vertices appear as singleton
    non-bridge blocks so that every vertex belongs to some block.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut_mask = 0
    out: list[tuple[int, bool]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            out.append((1 << root, False))
            continue
        disc[root] = low[root] = timer
        timer += 1
        estack: list[tuple[int, int]] = []
        dfs = [(root, -1, iter(g.neighbors(root)))]
        root_children = 0
        while dfs:
            v, pv, it = dfs[-1]
            w = next(it, None)
            if w is None:
                dfs.pop()
                if not dfs:
                    continue
                u = dfs[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    # u separates the subtree at v: pop one block
                    mask = 0
                    edge_count = 0
                    while True:
                        e = estack.pop()
                        mask |= (1 << e[0]) | (1 << e[1])
                        edge_count += 1
                        if e == (u, v):
                            break
                    out.append((mask, edge_count == 1))
                    if u == root:
                        root_children += 1
                    else:
                        cut_mask |= 1 << u
                continue
            if disc[w] == -1:
                estack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                dfs.append((w, v, iter(g.neighbors(w))))
            elif w != pv and disc[w] < disc[v]:
                estack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if root_children >= 2:
            cut_mask |= 1 << root
    return out, cut_mask


def to_dot(g: Graph, name: str = "G") -> str:
    """Render as Graphviz DOT (undirected)."""
    lines = [f"graph {name} {{"]
    used = 0
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
        used |= (1 << u) | (1 << v)
    for v in range(g.n):
        if not used >> v & 1:
            lines.append(f"  {v};")
    lines.append("}")
    return "\n".join(lines)
