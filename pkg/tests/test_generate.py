"""Tests for the embedded graph generators"""

import pytest
from hypothesis import given, settings, strategies as st

from flexcolor.exceptions import PreconditionViolated
from flexcolor.generate import (
    CUBE_ROTATION,
    add_chord,
    add_diagonal_vertex,
    add_ring,
    cube,
    grid,
    radial_graph,
    random_quadrangulation,
    random_radial_graph,
)
from flexcolor.configurations import find_small
from flexcolor.planar_graph import build_from_rotation, euler_characteristic, is_triangle_free


def cube_table():
    return {v: list(nbrs) for v, nbrs in CUBE_ROTATION.items()}


def test_cube():
    g = cube()
    assert len(g) == 8
    assert g.num_edges == 12
    assert all(g.degree(v) == 3 for v in g.vertices)


def test_grid_rotation_order():
    g = grid(3, 3)
    assert g.neighbors(4) == (1, 5, 7, 3)
    assert g.num_edges == 12


def test_grid_needs_positive_dimensions():
    with pytest.raises(PreconditionViolated):
        grid(0, 3)


def test_diagonal_vertex_splits_a_face():
    rotation = cube_table()
    x = add_diagonal_vertex(rotation, [0, 1, 2, 3])
    g = build_from_rotation(len(rotation), rotation)
    assert x == 8
    assert g.neighbors(x) == (0, 2)
    assert len(g.faces) == 7
    assert all(f.length == 4 for f in g.faces)


def test_ring_adds_four_faces():
    rotation = cube_table()
    ring = add_ring(rotation, [4, 7, 6, 5])
    g = build_from_rotation(len(rotation), rotation)
    assert ring == [8, 9, 10, 11]
    assert len(g.faces) == 10
    assert euler_characteristic(g) == 2
    assert is_triangle_free(g)


def test_quadrangulation_needs_the_cube():
    with pytest.raises(PreconditionViolated):
        random_quadrangulation(7)


def test_quadrangulation_is_seeded():
    assert random_quadrangulation(25, seed=5).rotation == random_quadrangulation(25, seed=5).rotation


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=8, max_value=40), st.integers(min_value=0, max_value=10_000))
def test_three_core_has_minimum_degree_three(n, seed):
    """
    Property: after stripping, every remaining vertex has degree at least three
    """
    g = random_quadrangulation(n, seed, drop_edges=0.15, three_core=True)
    assert all(g.degree(v) >= 3 for v in g.vertices)
    assert list(g.vertices) == list(range(len(g)))
    assert is_triangle_free(g)


# ===== RADIAL GRAPHS =====

def test_chord_splits_a_face_into_triangles():
    rotation = cube_table()
    add_chord(rotation, [0, 1, 2, 3])
    g = build_from_rotation(len(rotation), rotation)
    assert g.has_edge(0, 2)
    assert sorted(f.length for f in g.faces) == [3, 3, 4, 4, 4, 4, 4]
    assert euler_characteristic(g) == 2


def test_radial_graph_of_the_cube_is_the_rhombic_dodecahedron():
    g = radial_graph(cube())
    assert len(g) == 14
    assert g.num_edges == 24
    assert sorted(g.degree(v) for v in g.vertices) == [3] * 8 + [4] * 6
    assert all(f.length == 4 for f in g.faces)
    assert find_small(g) is None


def test_radial_graph_of_a_triangulated_face():
    rotation = cube_table()
    add_chord(rotation, [0, 1, 2, 3])
    g = radial_graph(build_from_rotation(8, rotation))
    assert sorted(g.degree(v) for v in range(8, len(g))) == [3, 3, 4, 4, 4, 4, 4]
    assert is_triangle_free(g)


def test_radial_graph_needs_cycle_faces():
    with pytest.raises(PreconditionViolated):
        radial_graph(grid(1, 3))


def test_radial_graph_is_seeded():
    assert random_radial_graph(24, seed=3, chords=0.5).rotation == random_radial_graph(24, seed=3, chords=0.5).rotation


@settings(max_examples=20, deadline=None)
@given(
    st.integers(min_value=8, max_value=40),
    st.integers(min_value=0, max_value=10_000),
    st.sampled_from([0.0, 0.3, 0.7]),
)
def test_radial_graphs_skip_the_small_configurations(n, seed, chords):
    """
    Property: minimum degree three, degree-3 vertices independent, every face a 4-cycle
    """
    g = random_radial_graph(n, seed, chords=chords)
    assert g.min_degree >= 3
    assert not any(g.degree(u) == 3 and g.degree(v) == 3 for u, v in g.edges)
    assert all(f.is_cycle and f.length == 4 for f in g.faces)
    assert euler_characteristic(g) == 2
    assert is_triangle_free(g)
    assert find_small(g) is None
