"""Tests for the text formats"""

from fractions import Fraction

import pytest

from flexcolor.exceptions import AsymmetricRotation, ParseError, PreconditionViolated
from flexcolor.formats import (
    default_lists,
    emit_graph,
    emit_lists,
    emit_request,
    emit_weights,
    parse_graph,
    parse_lists,
    parse_request,
    parse_weights,
    read_graph,
)

SQUARE = """\
# a 4-cycle
planar 4

v 0 : 1 3
v 1 : 2 0
v 2 : 3 1
v 3 : 0 2   # last vertex
"""


def test_square_parses_with_comments_and_blank_lines():
    g = parse_graph(SQUARE)
    assert len(g) == 4
    assert sorted(f.length for f in g.faces) == [4, 4]
    assert g.outer is None


def test_outer_line_designates_the_face():
    g = parse_graph(SQUARE + "outer : 0 1 2 3\n")
    assert g.outer.vertex_set == frozenset(range(4))


def test_outer_cycle_that_is_no_face(cube_graph):
    with pytest.raises(PreconditionViolated):
        parse_graph(emit_graph(cube_graph) + "outer : 0 1 5 4 7 3\n")


def test_cube_text_keeps_the_rotation(cube_graph):
    assert parse_graph(emit_graph(cube_graph)).rotation == cube_graph.rotation


def test_read_graph_from_a_file(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text(SQUARE, encoding="utf-8")
    assert read_graph(path).num_edges == 4


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("graph 4\n", 1, 1),
        ("planar\n", 1, 1),
        ("planar 2\nv x : 1\nv 1 : 0\n", 2, 3),
        ("planar 2\nv 0 1\nv 1 : 0\n", 2, 5),
        ("planar 2\nv 0 : 1\nv 5 : 0\n", 3, 3),
        ("planar 2\nv 0 : 1\nv 0 : 1\n", 3, 3),
        ("planar 2\nv 0 : 1\n  edge 1 0\n", 3, 3),
        ("planar 2\nv 0 : 1\n", 2, 1),
        ("# nothing here\n", 1, 1),
    ],
)
def test_parse_errors_point_at_the_token(text, line, column):
    with pytest.raises(ParseError) as excinfo:
        parse_graph(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)
    assert excinfo.value.message.startswith(f"line {line} column {column}")


def test_asymmetric_rotation_in_text():
    with pytest.raises(AsymmetricRotation):
        parse_graph("planar 2\nv 0 : 1\nv 1 :\n")


# ===== LISTS, REQUESTS, WEIGHTS =====

def test_lists():
    assert parse_lists("L 0 : 1 2 3 4\nL 1 : 2 5 6 7\n") == {
        0: frozenset({1, 2, 3, 4}),
        1: frozenset({2, 5, 6, 7}),
    }


def test_emitted_lists_parse_back():
    lists = {0: frozenset({4, 1}), 3: frozenset(), 1: frozenset({2})}
    text = emit_lists(lists)
    assert text == "L 0 : 1 4\nL 1 : 2\nL 3 :\n"
    assert parse_lists(text) == lists


def test_duplicate_list_is_an_error():
    with pytest.raises(ParseError) as excinfo:
        parse_lists("L 0 : 1\nL 0 : 2\n")
    assert excinfo.value.line == 2


def test_default_lists(square):
    assert default_lists(square, 4) == {v: frozenset({1, 2, 3, 4}) for v in range(4)}


def test_request():
    assert parse_request("r 0 3\nr 2 1\n").as_dict() == {0: 3, 2: 1}


def test_emitted_request_parses_back():
    request = parse_request("r 2 1\nr 0 3\n")
    assert emit_request(request) == "r 0 3\nr 2 1\n"
    assert parse_request(emit_request(request)) == request


def test_request_with_an_extra_token():
    with pytest.raises(ParseError) as excinfo:
        parse_request("r 0 3 4\n")
    assert excinfo.value.column == 5


def test_weights_accept_decimals_and_fractions():
    weights = parse_weights("w 0 1 0.5\nw 1 2 2/3\n")
    assert dict(weights.weights) == {(0, 1): Fraction(1, 2), (1, 2): Fraction(2, 3)}
    assert emit_weights(weights) == "w 0 1 1/2\nw 1 2 2/3\n"


@pytest.mark.parametrize("weight", ["1/0", "-1", "half"])
def test_bad_weights(weight):
    with pytest.raises(ParseError) as excinfo:
        parse_weights(f"w 0 1 {weight}\n")
    assert excinfo.value.column == 7
