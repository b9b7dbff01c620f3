"""Graph container, graph6 codec, and structure helpers.

The graph6 reference values below were produced by a separate string-based
encoder written directly from the format definition (column-major upper
triangle, 6-bit groups, bytes offset by 63) and are frozen here.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taupart.errors import CapacityError, Graph6Error, GraphError
from taupart.graphs import (
    MAX_VERTICES,
    Graph,
    add_ear,
    blocks,
    closure,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    encode_graph6,
    ids_to_mask,
    induced_subgraph,
    is_connected,
    iter_bits,
    mask_to_ids,
    pair_index,
    parse_graph6,
    path_graph,
    petersen_graph,
    random_2connected,
    random_graph,
    to_dot,
)


def reference_g6(n: int, edges) -> str:
    """Independent graph6 encoder used to cross-check the real one."""
    eset = {frozenset(e) for e in edges}
    bits = ""
    for j in range(1, n):
        for i in range(j):
            bits += "1" if frozenset((i, j)) in eset else "0"
    bits += "0" * (-len(bits) % 6)
    if n <= 62:
        out = chr(n + 63)
    else:
        out = chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return out + "".join(chr(int(bits[k:k + 6], 2) + 63) for k in range(0, len(bits), 6))


# string -> (n, sorted edge list), frozen from the reference encoder
KNOWN_G6 = {
    "@": (1, []),
    "Ch": (4, [(0, 1), (1, 2), (2, 3)]),
    "C~": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "D?{": (5, [(0, 4), (1, 4), (2, 4), (3, 4)]),
    "Dhc": (5, [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]),
    "DxK": (5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
    "D~{": (5, [(i, j) for j in range(5) for i in range(j)]),
    "EhEG": (6, [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]),
    "FhCKG": (7, [(0, 1), (0, 6), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]),
}


def test_parse_known_strings():
    for s, (n, edges) in KNOWN_G6.items():
        g = parse_graph6(s)
        assert g.n == n
        assert sorted(g.edges()) == sorted(edges)


def test_parse_accepts_header():
    g = parse_graph6(">>graph6<<C~")
    assert g.n == 4
    assert g.m == 6


def test_encode_known_strings():
    assert encode_graph6(empty_graph(1)) == "@"
    assert encode_graph6(path_graph(4)) == "Ch"
    assert encode_graph6(complete_graph(4)) == "C~"
    assert encode_graph6(cycle_graph(5)) == "Dhc"
    assert encode_graph6(complete_graph(5)) == "D~{"
    assert encode_graph6(cycle_graph(7)) == "FhCKG"
    assert encode_graph6(petersen_graph()) == "IheA@GUAo"


def test_encode_matches_reference_on_generators():
    for g in (path_graph(6), cycle_graph(8), complete_graph(7),
              petersen_graph(), empty_graph(3), random_graph(11, 0.4, seed=7)):
        assert encode_graph6(g) == reference_g6(g.n, g.edges())


def test_long_form_n63():
    g = empty_graph(63)
    s = encode_graph6(g)
    assert s.startswith("~??~")
    assert len(s) == 4 + (63 * 62 // 2 + 5) // 6
    assert parse_graph6(s) == g


@given(st.integers(1, 12), st.integers(0, 2**31 - 1), st.floats(0.0, 1.0))
@settings(max_examples=150)
def test_roundtrip_and_reference_agree(n, seed, p):
    g = random_graph(n, p, seed=seed)
    s = encode_graph6(g)
    assert s == reference_g6(n, g.edges())
    assert parse_graph6(s) == g


def test_parse_rejects_truncation():
    with pytest.raises(Graph6Error):
        parse_graph6("D?")


def test_parse_rejects_trailing_bytes():
    with pytest.raises(Graph6Error, match="trailing"):
        parse_graph6("C~~")


def test_parse_rejects_nonzero_padding():
    # C5 is "Dhc"; 'c' carries group value 36, whose low two bits are padding
    bad = "Dh" + chr((36 | 1) + 63)
    with pytest.raises(Graph6Error, match="padding"):
        parse_graph6(bad)


def test_parse_rejects_bad_byte_with_offset():
    with pytest.raises(Graph6Error) as exc:
        parse_graph6("C" + chr(20))
    assert exc.value.offset == 1


def test_parse_rejects_empty():
    with pytest.raises(Graph6Error):
        parse_graph6("")


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b10))  # self-loop at 1... asymmetric too
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0b00))  # self-loop at 0
    with pytest.raises(GraphError):
        Graph(1, (0, 0))  # adj length mismatch
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])  # duplicate edge
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(CapacityError):
        Graph.from_edges(MAX_VERTICES + 1, [])


def test_bit_helpers():
    assert ids_to_mask([0, 2, 5]) == 0b100101
    assert mask_to_ids(0b100101) == [0, 2, 5]
    assert list(iter_bits(0b1010)) == [1, 3]
    assert pair_index(0, 1) == 0
    assert pair_index(1, 2) == 2
    assert pair_index(0, 3) == 3
    # column-major: index of (i, j) is j(j-1)/2 + i
    assert pair_index(2, 4) == 4 * 3 // 2 + 2


def test_generators_shapes():
    assert path_graph(1).m == 0
    assert path_graph(5).m == 4
    assert cycle_graph(3).m == 3
    assert complete_graph(6).m == 15
    pet = petersen_graph()
    assert pet.n == 10
    assert pet.m == 15
    assert all(pet.degree(v) == 3 for v in range(10))


def test_neighbors_and_degree():
    g = parse_graph6("DxK")  # bowtie
    assert g.neighbors(2) == [0, 1, 3, 4]
    assert g.degree(2) == 4
    assert g.has_edge(3, 4)
    assert not g.has_edge(0, 4)


def test_induced_subgraph_triangle_of_bowtie():
    g = parse_graph6("DxK")
    h, old_to_new = induced_subgraph(g, [2, 3, 4])
    assert h == complete_graph(3)
    assert old_to_new == {2: 0, 3: 1, 4: 2}


def test_induced_subgraph_mask_and_errors():
    g = cycle_graph(5)
    h, _ = induced_subgraph(g, 0b00111)
    assert sorted(h.edges()) == [(0, 1), (1, 2)]
    with pytest.raises(GraphError):
        induced_subgraph(g, [0, 7])


def test_add_ear_path_and_chord():
    g = add_ear(cycle_graph(3), 0, 1, 2)
    assert g.n == 5
    assert sorted(g.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 4)]
    h = add_ear(cycle_graph(4), 0, 2, 0)
    assert h.has_edge(0, 2)
    with pytest.raises(GraphError):
        add_ear(cycle_graph(3), 0, 0, 1)
    with pytest.raises(GraphError):
        add_ear(cycle_graph(3), 0, 1, 0)  # chord already present


def test_random_graph_deterministic():
    assert random_graph(9, 0.5, seed=3) == random_graph(9, 0.5, seed=3)
    assert random_graph(9, 0.5, seed=3) != random_graph(9, 0.5, seed=4)


@given(st.integers(3, 14), st.integers(0, 5), st.integers(0, 2**31 - 1))
@settings(max_examples=80)
def test_random_2connected_is_2connected(n, extra, seed):
    from taupart.ears import is_two_connected

    g = random_2connected(n, extra_ears=extra, seed=seed)
    assert g.n == n
    assert is_two_connected(g)
    assert g == random_2connected(n, extra_ears=extra, seed=seed)


def test_connectivity_helpers():
    g = Graph.from_edges(5, [(0, 1), (2, 3)])
    comps = connected_components(g)
    assert comps == [0b00011, 0b01100, 0b10000]
    assert not is_connected(g)
    assert is_connected(path_graph(4))
    assert closure(g.adj, 1, g.full_mask) == 0b00011
    assert closure(g.adj, 1, 0b11101) == 0b00001  # 1 excluded, so 0 is alone


def test_blocks_bowtie():
    block_list, cuts = blocks(parse_graph6("DxK"))
    masks = sorted(m for m, _ in block_list)
    assert masks == [ids_to_mask([0, 1, 2]), ids_to_mask([2, 3, 4])]
    assert all(not bridge for _, bridge in block_list)
    assert cuts == 1 << 2


def test_blocks_path_is_all_bridges():
    block_list, cuts = blocks(path_graph(4))
    assert sorted(m for m, _ in block_list) == [0b0011, 0b0110, 0b1100]
    assert all(bridge for _, bridge in block_list)
    assert cuts == 0b0110


def test_blocks_cycle_single():
    block_list, cuts = blocks(cycle_graph(5))
    assert block_list == [(0b11111, False)]
    assert cuts == 0


def test_blocks_isolated_vertex():
    g = Graph.from_edges(3, [(0, 1)])
    block_list, cuts = blocks(g)
    assert (0b100, False) in block_list
    assert cuts == 0


def test_to_dot_smoke():
    s = to_dot(path_graph(3), name="P3")
    assert s.startswith("graph P3 {")
    assert "0 -- 1;" in s and "1 -- 2;" in s
