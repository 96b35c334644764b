"""Tests for stalks, excellent neighbors and the configuration finders"""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import embed, light_radial_graph, path_graph, with_leaves
from flexcolor.configurations import (
    Configuration,
    decompose,
    find_5redu,
    find_mainredu,
    find_reducible,
    find_small,
    find_spec4,
    find_stalks,
    good_neighbors,
    is_excellent,
    prepare_disk,
    stalk_is_valid,
)
from flexcolor.constants import CONFIGURATION_KINDS, MAX_CONFIGURATION_SIZE, ORACLE_VERTEX_CAP
from flexcolor.exceptions import NotTriangleFree, PreconditionViolated
from flexcolor.generate import random_quadrangulation, random_radial_graph
from flexcolor.planar_graph import build_from_rotation
from flexcolor.reducibility import is_reducible


def c_stalk_graph():
    """4-cycle 0 1 2 3 with deg(1) = deg(2) = 4 and deg(3) = 3."""
    return with_leaves({0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [2, 0]}, {1: 2, 2: 2, 3: 1})


def square_extension_graph():
    """Stalk 0 1 2 of kind b with the 4-cycle 1 2 3 4, deg(3) = deg(4) = 4."""
    return with_leaves({0: [1], 1: [0, 2, 4], 2: [1, 3], 3: [2, 4], 4: [3, 1]}, {1: 1, 2: 1, 3: 2, 4: 2})


def pendant_extension_graph():
    """Degree-4 vertex 1 next to 0 with two degree-3 neighbors 2 and 3."""
    return with_leaves({0: [1], 1: [0, 2, 3], 2: [1], 3: [1]}, {1: 1, 2: 2, 3: 2})


def return_extension_graph():
    """Stalk 0 1 2 of kind b and the 4-cycle 1 3 4 0 with deg(3) = 4, deg(4) = 3."""
    return with_leaves({0: [1, 4], 1: [0, 2, 3], 2: [1], 3: [1, 4], 4: [3, 0]}, {1: 1, 2: 2, 3: 2, 4: 1})


def light_face_graph():
    """Degree-5 vertex 0 on the 4-face 0 1 2 3 (degrees 3, 4, 3) with a degree-3 neighbor 4."""
    rotation = {
        0: [6, 5, 4, 3, 1],
        1: [0, 2, 7],
        2: [1, 3, 9, 8],
        3: [0, 10, 2],
        4: [0, 11, 12],
        5: [0], 6: [0], 7: [1], 8: [2], 9: [2], 10: [3], 11: [4], 12: [4],
    }
    return build_from_rotation(13, rotation)


def domino_rotation():
    """4-faces 1 0 3 4 and 2 1 4 5 sharing the edge 1 4; pendants point outward."""
    return {
        0: [7, 6, 1, 3],
        1: [4, 0, 8, 2],
        2: [5, 1, 9, 10],
        3: [11, 0, 4],
        4: [12, 3, 1, 5],
        5: [13, 4, 2, 14],
        6: [0], 7: [0], 8: [1], 9: [2], 10: [2], 11: [3], 12: [4], 13: [5], 14: [5],
    }


# ===== STALKS =====

def test_degree_three_neighbor_roots_a_stalk():
    g = c_stalk_graph()
    kinds = {(s.kind, s.root, s.bud) for s in find_stalks(g, [], 0)}
    assert ("a", 3, None) in kinds


def test_four_cycle_gives_a_c_stalk_with_bud():
    g = c_stalk_graph()
    stalks = find_stalks(g, [], 0)
    assert [(s.kind, s.root, s.bud) for s in stalks] == [("a", 3, None), ("c", 1, 3)]
    assert all(stalk_is_valid(g, [], s) for s in stalks)
    assert stalks[1].vertices == frozenset({0, 1, 2, 3})


def test_no_stalks_when_neighbors_lie_on_c():
    g = c_stalk_graph()
    assert find_stalks(g, [1, 3], 0) == []


def test_stalk_through_c_is_dropped():
    g = c_stalk_graph()
    assert find_stalks(g, [3], 0) == []


def test_good_neighbors_record_the_bud():
    g = c_stalk_graph()
    good = good_neighbors(g, [], 0)
    assert [(x, s.kind, s.bud) for x, s in good] == [(1, "c", 3), (3, "a", None)]


def test_leaf_has_no_good_neighbors():
    g = c_stalk_graph()
    assert good_neighbors(g, [], 4) == []


def test_stalk_validity_rechecks_degrees():
    g = c_stalk_graph()
    stalk = find_stalks(g, [], 0)[1]
    assert not stalk_is_valid(g, [2], stalk)
    assert not stalk_is_valid(square_extension_graph(), [], stalk)


# ===== EXCELLENT NEIGHBORS =====

def test_kind_a_neighbor_is_excellent():
    g = c_stalk_graph()
    extended = is_excellent(g, [], 0, 3)
    assert extended.stalk.kind == "a"
    assert extended.extension is None


def test_kind_c_neighbor_is_not_excellent():
    assert is_excellent(c_stalk_graph(), [], 0, 1) is None


def test_square_extension():
    g = square_extension_graph()
    extended = is_excellent(g, [], 0, 1)
    assert extended.stalk.kind == "b"
    assert extended.extension == "square"
    assert dict(extended.extension_labels) == {"v2'": 4, "v3'": 3}
    assert extended.vertices == frozenset({0, 1, 2, 3, 4})


def test_square_extension_needs_its_vertices_off_c():
    assert is_excellent(square_extension_graph(), [3], 0, 1) is None


def test_pendant_extension():
    extended = is_excellent(pendant_extension_graph(), [], 0, 1)
    assert extended.extension == "pendant"
    assert extended.stalk.label("v2") == 2
    assert extended.vertices == frozenset({0, 1, 2, 3})


def test_return_extension():
    extended = is_excellent(return_extension_graph(), [], 0, 1)
    assert extended.extension == "return"
    assert dict(extended.extension_labels) == {"v2'": 3, "v3'": 4}


def test_excellence_needs_an_edge():
    with pytest.raises(PreconditionViolated):
        is_excellent(c_stalk_graph(), [], 0, 2)


# ===== SMALL CONFIGURATIONS =====

def test_path_gives_its_leaf():
    config = find_small(path_graph(4))
    assert config.kind == "small-deg2"
    assert config.vertices == frozenset({0})


def test_cube_gives_an_adjacent_pair(cube_graph):
    config = find_small(cube_graph)
    assert config.kind == "small-33"
    u, v = sorted(config.vertices)
    assert cube_graph.has_edge(u, v)


def test_no_small_configuration_in_the_rhombic_dodecahedron(rhombic):
    assert find_small(rhombic) is None


# ===== MAINREDU =====

def test_degree_three_vertex_with_two_degree_three_neighbors():
    g = with_leaves({0: [1, 2, 3], 1: [0], 2: [0], 3: [0]}, {1: 2, 2: 2})
    config = find_mainredu(g, c=[], check=False)
    assert config.kind == "mainredu"
    assert config.vertices == frozenset({0, 1, 2})
    assert config.size_bound == 13


def test_degree_seven_vertex_with_six_degree_three_neighbors():
    spokes = list(range(1, 8))
    g = with_leaves({0: spokes, **{i: [0] for i in spokes}}, {i: 2 for i in range(1, 7)})
    config = find_mainredu(g, c=[], check=False)
    assert config.center == 0
    assert config.vertices == frozenset(range(7))
    assert len(config.stalks) == 6


def test_good_neighbors_sharing_a_bud_do_not_count():
    # 0 has neighbors 1 (degree 3), 2 and 3 (degree 4, good only through bud 1), and a leaf 4
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (2, 5), (5, 1), (3, 6), (6, 1)]
    edges += [(2, 7), (2, 8), (5, 9), (5, 10), (3, 11), (3, 12), (6, 13), (6, 14)]
    g = embed(edges, 15)
    buds = {x: s.bud for x, s in good_neighbors(g, [], 0)}
    assert buds == {1: None, 2: 1, 3: 1}
    assert find_mainredu(g, c=[], check=False) is None


def test_mainredu_avoids_the_outer_cycle():
    g = with_leaves({0: [1, 2, 3], 1: [0], 2: [0], 3: [0]}, {1: 2, 2: 2})
    assert find_mainredu(g, c=[1], check=False) is None


# ===== FIVEREDU AND SPEC4 =====

def test_light_face_with_an_excellent_neighbor():
    g = light_face_graph()
    config = find_5redu(g, c=[], check=False)
    assert config.kind == "fiveredu"
    assert config.center == 0
    assert config.vertices == frozenset({0, 1, 2, 3, 4})
    assert config.faces == ((0, 1, 2, 3),)
    assert is_reducible(g, config.vertices).reducible


def test_light_face_touching_c_is_skipped():
    assert find_5redu(light_face_graph(), c=[1], check=False) is None


def test_two_four_faces_of_degree_four_vertices():
    g = build_from_rotation(15, domino_rotation())
    config = find_spec4(g, c=[], check=False)
    assert config.kind == "spec4"
    assert config.vertices == frozenset(range(6))
    assert config.faces == ((1, 4, 3, 0), (1, 4, 5, 2))
    assert is_reducible(g, config.vertices).reducible


def test_spec4_rejects_a_degree_four_v3_without_two_degree_three_neighbors():
    rotation = domino_rotation()
    rotation[3] = [15, 11, 0, 4]
    rotation[15] = [3]
    assert find_spec4(build_from_rotation(16, rotation), c=[], check=False) is None


def test_fiveredu_on_a_radial_graph():
    g = light_radial_graph()
    config = find_5redu(g, c=[], check=False)
    assert config.kind == "fiveredu"
    assert config.center == 0
    assert g.degree(0) == 5
    assert config.size <= config.size_bound
    assert is_reducible(g, config.vertices).reducible


# ===== PIPELINE =====

def test_find_reducible_on_a_path():
    config = find_reducible(path_graph(3))
    assert config.kind == "small-deg2"


def test_find_reducible_verifies_the_cube(cube_graph):
    config = find_reducible(cube_graph, verify=True)
    assert config.kind == "small-33"
    assert config.oracle_verified is True


def test_triangle_is_rejected():
    with pytest.raises(NotTriangleFree):
        find_reducible(embed([(0, 1), (1, 2), (2, 0)], 3))


def test_unknown_configuration_kind():
    with pytest.raises(PreconditionViolated):
        Configuration(kind="triangle", vertices=frozenset({0}), size_bound=1)


def test_empty_graph_is_rejected():
    with pytest.raises(PreconditionViolated):
        find_reducible(build_from_rotation(0, {}))


def test_rhombic_dodecahedron_needs_the_disk_search(rhombic):
    disk_graph, disk = prepare_disk(rhombic)
    assert disk.length == 4
    assert len(disk_graph) == len(rhombic)

    config = find_reducible(rhombic, verify=True)
    assert config.kind == "mainredu"
    assert not config.vertices & disk.vertex_set
    assert config.size <= config.size_bound
    assert all(stalk_is_valid(rhombic, disk.vertex_set, s) for s in config.stalks)
    assert config.oracle_verified is True


def test_dodecahedron_has_adjacent_degree_three_vertices(dodecahedron):
    config = find_reducible(dodecahedron)
    assert config.kind == "small-33"
    assert config.size == 2


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=8, max_value=30), st.integers(min_value=0, max_value=10_000))
def test_configurations_are_small_and_reducible(n, seed):
    """
    Property: every graph yields a configuration of at most 31 vertices that the oracle accepts
    """
    g = random_quadrangulation(n, seed, drop_edges=0.2, three_core=True)
    if len(g) == 0:
        return
    config = find_reducible(g)
    assert config.kind in CONFIGURATION_KINDS
    assert 1 <= config.size <= MAX_CONFIGURATION_SIZE
    if config.size <= 6:
        assert is_reducible(g, config.vertices).reducible


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=8, max_value=30), st.integers(min_value=0, max_value=10_000))
def test_decomposition_partitions_the_vertices(n, seed):
    """
    Property: the peeled layers are disjoint and cover every vertex
    """
    g = random_quadrangulation(n, seed, drop_edges=0.1)
    layers = decompose(g)
    assert sum(len(layer) for layer in layers) == len(g)
    assert frozenset().union(*layers) == g.vertex_set


# ===== RADIAL GRAPHS =====

DISK_KINDS = ("mainredu", "fiveredu", "spec4")


def assert_disk_configuration(g, cycle, config, oracle_cap):
    assert config.kind in DISK_KINDS
    assert config.size <= config.size_bound
    assert not config.vertices & frozenset(cycle)
    if config.size <= oracle_cap:
        assert is_reducible(g, config.vertices).reducible


@pytest.mark.parametrize("seed", range(8))
def test_one_ring_radial_graphs_reach_mainredu_and_spec4(seed):
    g = random_radial_graph(12, seed)
    assert find_small(g) is None
    disk_graph, disk = prepare_disk(g)
    assert len(disk_graph) == len(g)
    for finder in (find_mainredu, find_spec4):
        config = finder(disk_graph, disk.cycle)
        assert config is not None
        assert_disk_configuration(disk_graph, disk.cycle, config, oracle_cap=8)
    assert find_reducible(g).kind == "mainredu"


@settings(max_examples=20, deadline=None)
@given(
    st.integers(min_value=12, max_value=32),
    st.integers(min_value=0, max_value=10_000),
    st.sampled_from([0.0, 0.4, 0.8]),
)
def test_disk_finders_on_radial_graphs(n, seed, chords):
    """
    Property: with no small configuration, each disk finder's answer is bounded, avoids C and is reducible
    """
    g = random_radial_graph(n, seed, chords=chords)
    assert find_reducible(g).kind in DISK_KINDS
    disk_graph, disk = prepare_disk(g)
    for finder in (find_mainredu, find_5redu, find_spec4):
        config = finder(disk_graph, disk.cycle, check=False)
        if config is not None:
            assert_disk_configuration(disk_graph, disk.cycle, config, oracle_cap=8)


# ===== ACCEPTANCE =====

def corpus_graph(seed):
    """Alternates stripped quadrangulations, ring-only radial graphs and radial graphs with chords."""
    family = seed % 3
    n = 10 + seed % 23
    if family == 0:
        g = random_quadrangulation(n, seed, drop_edges=0.2, three_core=True)
        return g if len(g) else random_quadrangulation(n, seed)
    return random_radial_graph(n, seed, chords=0.0 if family == 1 else 0.5)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(240))
def test_oracle_confirms_every_configuration_under_the_cap(seed):
    g = corpus_graph(seed)
    config = find_reducible(g)
    if config.size <= ORACLE_VERTEX_CAP:
        assert is_reducible(g, config.vertices).reducible


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(510))
def test_find_reducible_never_comes_back_empty(seed):
    g = corpus_graph(seed)
    config = find_reducible(g)
    assert config.kind in CONFIGURATION_KINDS
    assert 1 <= config.size <= MAX_CONFIGURATION_SIZE
    assert config.vertices <= g.vertex_set
    if seed % 3:
        assert config.kind in DISK_KINDS
