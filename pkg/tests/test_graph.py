import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hubrknn import (
    Graph,
    ParseError,
    degree_ordering,
    is_connected,
    largest_connected_component,
    parse_edge_list,
    serialize_edge_list,
)

from graphgen import random_connected_graph


def test_parse_minimal_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.vertex_count == 3
    assert g.edge_count == 2
    assert g.adjacency == [[1], [0, 2], [1]]


def test_parse_drops_self_loops_and_duplicates():
    g = parse_edge_list("# c\n5 5\n5 7\n7 5")
    assert g.vertex_count == 2
    assert g.edge_count == 1
    assert g.raw_ids == [5, 7]
    assert g.dense_id(5) == 0 and g.dense_id(7) == 1


def test_parse_percent_comments_and_blank_lines():
    g = parse_edge_list("% header\n\n1 2\n")
    assert g.vertex_count == 2 and g.edge_count == 1


def test_parse_fixture_tree(tree14):
    from fixtures import TREE14_TEXT

    g = parse_edge_list(TREE14_TEXT)
    assert g == tree14
    assert g.vertex_count == 14 and g.edge_count == 13


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0 1\n0 x", "line 2"),
        ("0 1 2", "tokens"),
        ("7", "tokens"),
        ("0 -1", "negative"),
    ],
)
def test_parse_errors_carry_line_info(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_edge_list(text)
    assert fragment in str(err.value)


def test_parse_empty_input_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("# only comments\n")


def test_degree_sum_matches_edge_count():
    g = random_connected_graph(64, 100, seed=7)
    assert sum(g.degree(v) for v in range(g.vertex_count)) == 2 * g.edge_count


def test_roundtrip_fixture(tree14):
    sink = io.StringIO()
    serialize_edge_list(tree14, sink)
    assert parse_edge_list(sink.getvalue()) == tree14


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40, deadline=None)
def test_roundtrip_random_graphs(seed):
    g = random_connected_graph(2 + seed % 40, seed % 60, seed=seed)
    sink = io.StringIO()
    serialize_edge_list(g, sink)
    assert parse_edge_list(sink.getvalue()) == g


def test_roundtrip_preserves_sparse_raw_ids():
    g = parse_edge_list("100 7\n7 999999999999\n100 3")
    sink = io.StringIO()
    serialize_edge_list(g, sink)
    again = parse_edge_list(sink.getvalue())
    assert again == g
    assert again.raw_ids == [100, 7, 999999999999, 3]


def test_lcc_identity_on_connected_input():
    g = parse_edge_list("0 1\n1 2")
    assert largest_connected_component(g) is g


def test_lcc_keeps_larger_component():
    g = parse_edge_list("0 1\n1 2\n8 9")
    lcc = largest_connected_component(g)
    assert lcc.vertex_count == 3
    assert lcc.raw_ids == [0, 1, 2]
    assert is_connected(lcc)


def test_lcc_tie_goes_to_smallest_dense_id():
    # two components of size 2; the one holding dense vertex 0 must win
    g = parse_edge_list("10 11\n20 21")
    lcc = largest_connected_component(g)
    assert lcc.raw_ids == [10, 11]


def test_lcc_output_connected_on_random_multicomponent():
    # brute-force check: component chosen by the library matches max size
    text = "\n".join(
        ["0 1", "1 2", "2 3", "3 0", "50 51", "51 52", "90 91"]
    )
    g = parse_edge_list(text)
    lcc = largest_connected_component(g)
    assert lcc.vertex_count == 4
    assert is_connected(lcc)


def test_degree_ordering_star_center_first():
    g = parse_edge_list("0 1\n0 2\n0 3\n0 4")
    assert degree_ordering(g).order[0] == 0


def test_degree_ordering_fixture(tree14):
    from fixtures import TREE14_ORDER

    assert degree_ordering(tree14).order == TREE14_ORDER


def test_degree_ordering_ring_pure_id_tiebreak():
    n = 8
    g = Graph.from_edges([(i, (i + 1) % n) for i in range(n)])
    assert degree_ordering(g).order == tuple(range(n))


def test_ordering_rank_is_inverse():
    g = random_connected_graph(30, 40, seed=3)
    ordering = degree_ordering(g)
    rank = ordering.rank()
    for pos, v in enumerate(ordering.order):
        assert rank[v] == pos
