"""Tests for rotation systems, face tracing and disks"""

import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle_graph, embed, path_graph
from flexcolor.exceptions import AsymmetricRotation, DuplicateNeighbor, NotTriangleFree, PreconditionViolated
from flexcolor.generate import CUBE_ROTATION, add_ring, grid, random_quadrangulation
from flexcolor.planar_graph import (
    build_from_rotation,
    canonical_cycle,
    components,
    distance,
    euler_characteristic,
    find_minimal_nonface_cycle,
    first_nonfacial_short_cycle,
    induced_subgraph,
    is_d_independent,
    is_triangle_free,
    require_short_cycles_facial,
    select_outer_face,
    short_cycles,
    subgraph_in_disk,
    trace_faces,
    with_outer_face,
)


def nested_cubes():
    """The cube with a second ring of four vertices inside its inner square."""
    rotation = {v: list(nbrs) for v, nbrs in CUBE_ROTATION.items()}
    add_ring(rotation, [4, 7, 6, 5])
    return with_outer_face(build_from_rotation(len(rotation), rotation), [0, 1, 2, 3])


# ===== CONSTRUCTION =====

def test_square_has_two_faces_of_length_four(square):
    assert sorted(f.length for f in trace_faces(square)) == [4, 4]


def test_pentagon_faces(pentagon):
    assert sorted(f.length for f in trace_faces(pentagon)) == [5, 5]


def test_single_edge_walk_traverses_the_edge_twice():
    g = build_from_rotation(2, {0: [1], 1: [0]})
    assert [f.length for f in g.faces] == [2]
    assert not g.faces[0].is_cycle


def test_grid_euler(grid3):
    assert len(grid3.faces) == 5
    assert euler_characteristic(grid3) == 2


def test_two_squares_sharing_an_edge():
    g = grid(2, 3)
    assert sorted(f.length for f in g.faces) == [4, 4, 6]


def test_asymmetric_rotation_is_rejected():
    with pytest.raises(AsymmetricRotation):
        build_from_rotation(3, {0: [1, 2], 1: [0], 2: []})


def test_parallel_edge_is_rejected():
    with pytest.raises(DuplicateNeighbor):
        build_from_rotation(2, {0: [1, 1], 1: [0, 0]})


def test_self_loop_is_rejected():
    with pytest.raises(DuplicateNeighbor):
        build_from_rotation(1, {0: [0]})


def test_cube_faces_match_the_drawing(cube_graph):
    walks = {canonical_cycle(f.walk) for f in cube_graph.faces}
    assert canonical_cycle((0, 1, 2, 3)) in walks
    assert canonical_cycle((4, 5, 6, 7)) in walks
    assert len(walks) == 6


def test_angles_are_consecutive_triples(square):
    face = square.faces[0]
    assert len(face.angles()) == face.length
    for tail, tip, head in face.angles():
        assert square.has_edge(tail, tip) and square.has_edge(tip, head)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=8, max_value=40), st.integers(min_value=0, max_value=10_000))
def test_quadrangulation_face_counts(n, seed):
    """
    Property: every dart lies on one face, so face lengths sum to 2|E|, and Euler gives 2
    """
    g = random_quadrangulation(n, seed)
    assert sum(f.length for f in g.faces) == 2 * g.num_edges
    assert euler_characteristic(g) == 2
    assert all(f.length == 4 for f in g.faces)
    assert is_triangle_free(g)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=8, max_value=30), st.integers(min_value=0, max_value=10_000))
def test_euler_per_component_after_deletions(n, seed):
    """
    Property: with edges deleted, |V| - |E| + |F| counts 2 per component
    """
    g = random_quadrangulation(n, seed, drop_edges=0.3)
    assert sum(f.length for f in g.faces) == 2 * g.num_edges
    assert euler_characteristic(g) == 2 * len(components(g))


# ===== TRIANGLES AND CYCLES =====

def test_k4_has_a_triangle():
    k4 = embed([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4)
    assert not is_triangle_free(k4)


def test_dodecahedron_is_triangle_free(dodecahedron):
    assert is_triangle_free(dodecahedron)


def test_short_cycles_of_the_cube(cube_graph):
    cycles = short_cycles(cube_graph)
    assert len(cycles) == 6
    assert all(len(c) == 4 for c in cycles)


def test_dodecahedron_short_cycles_are_its_faces(dodecahedron):
    assert set(short_cycles(dodecahedron)) == dodecahedron.facial_cycles
    assert first_nonfacial_short_cycle(dodecahedron) is None


def test_outer_cycle_is_not_reported_as_nonfacial(cube_graph):
    g = with_outer_face(cube_graph, [0, 1, 2, 3])
    require_short_cycles_facial(g)


def test_grid_boundary_is_a_nonfacial_cycle():
    g = grid(2, 3)
    # the 6-cycle boundary is too long to count
    assert first_nonfacial_short_cycle(g) is None


# ===== DISTANCES =====

def test_adjacent_vertices_are_not_1_independent(square):
    assert not is_d_independent(square, [0, 1], 1)


def test_path_ends_are_1_independent():
    g = path_graph(3)
    assert distance(g, 0, 2) == 2
    assert is_d_independent(g, [0, 2], 1)
    assert not is_d_independent(g, [0, 2], 2)


def test_singleton_is_independent_for_any_distance(square):
    assert is_d_independent(square, [3], 100)


def test_distance_between_components_is_infinite():
    g = build_from_rotation(2, {0: [], 1: []})
    assert distance(g, 0, 1) == math.inf


# ===== SUBGRAPHS =====

def test_induced_subgraph_of_everything_is_the_graph(cube_graph):
    assert induced_subgraph(cube_graph, cube_graph.vertices) is cube_graph


def test_induced_subgraph_of_nothing_is_empty(cube_graph):
    assert len(induced_subgraph(cube_graph, [])) == 0


def test_induced_subgraph_of_square_is_a_path(square):
    sub = induced_subgraph(square, [0, 1, 2])
    assert sub.edges == ((0, 1), (1, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.data())
def test_induced_subgraph_is_idempotent(seed, data):
    """
    Property: restricting to Z and then to Z' within Z equals restricting to Z' directly
    """
    g = random_quadrangulation(16, seed)
    z = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1))
    z_prime = data.draw(st.sets(st.sampled_from(sorted(z))))
    assert induced_subgraph(induced_subgraph(g, z), z_prime).rotation == induced_subgraph(g, z_prime).rotation


# ===== DISKS =====

def test_select_outer_face_picks_a_short_cycle(cube_graph):
    g = select_outer_face(cube_graph)
    assert g.outer.is_cycle and g.outer.length == 4


def test_min_degree_is_required_for_disks():
    g = with_outer_face(cycle_graph(4), [0, 1, 2, 3])
    with pytest.raises(PreconditionViolated):
        find_minimal_nonface_cycle(g)


def test_triangle_is_reported_before_disks():
    k4 = select_outer_face(embed([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4))
    with pytest.raises((NotTriangleFree, PreconditionViolated)):
        find_minimal_nonface_cycle(k4)


def test_only_nonfacial_cycle_is_the_outer_one(cube_graph):
    g = with_outer_face(cube_graph, [0, 1, 2, 3])
    disk = find_minimal_nonface_cycle(g)
    assert disk.cycle == (0, 1, 2, 3)
    assert len(disk.interior_faces) == 5
    assert disk.interior_vertices == frozenset({4, 5, 6, 7})
    assert subgraph_in_disk(g, disk).rotation == g.rotation


def test_nested_cycles_give_the_innermost_disk():
    g = nested_cubes()
    disk = find_minimal_nonface_cycle(g)
    assert disk.cycle == (4, 5, 6, 7)
    assert disk.interior_vertices == frozenset({8, 9, 10, 11})
    assert len(disk.interior_faces) == 5


def test_subgraph_in_disk_drops_the_outside():
    g = nested_cubes()
    disk = find_minimal_nonface_cycle(g)
    inner = subgraph_in_disk(g, disk)
    assert inner.vertex_set == frozenset(range(4, 12))
    assert canonical_cycle(inner.outer.walk) == (4, 5, 6, 7)
    require_short_cycles_facial(inner)
    assert euler_characteristic(inner) == 2
