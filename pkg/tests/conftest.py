"""Shared plane-graph fixtures"""

from itertools import product
from typing import Dict, Iterable, List, Tuple

import networkx as nx
import pytest

from flexcolor.generate import CUBE_ROTATION, add_chord, add_ring, cube, grid, radial_graph, random_quadrangulation
from flexcolor.planar_graph import PlanarGraph, build_from_rotation


def embed(edges: Iterable[Tuple[int, int]], n: int) -> PlanarGraph:
    """Plane graph on 0..n-1 with the rotation networkx finds for these edges."""
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    is_planar, embedding = nx.check_planarity(graph)
    assert is_planar
    return build_from_rotation(n, {v: list(embedding.neighbors_cw_order(v)) for v in range(n)})


def cycle_graph(n: int) -> PlanarGraph:
    return build_from_rotation(n, {v: [(v + 1) % n, (v - 1) % n] for v in range(n)})


def path_graph(n: int) -> PlanarGraph:
    return embed(((v, v + 1) for v in range(n - 1)), n)


def with_leaves(rotation: Dict[int, List[int]], leaves: Dict[int, int]) -> PlanarGraph:
    """Append `leaves[v]` pendant vertices after the listed neighbors of v."""
    table = {v: list(nbrs) for v, nbrs in rotation.items()}
    nxt = len(table)
    for v in sorted(leaves):
        for _ in range(leaves[v]):
            table[v].append(nxt)
            table[nxt] = [v]
            nxt += 1
    return build_from_rotation(nxt, table)


def rhombic_dodecahedron() -> PlanarGraph:
    """Axis points 0..5 (+x -x +y -y +z -z) of degree 4, corners 6..13 of degree 3."""
    edges = []
    for i, (sx, sy, sz) in enumerate(product((1, -1), repeat=3)):
        corner = 6 + i
        edges.append((corner, 0 if sx > 0 else 1))
        edges.append((corner, 2 if sy > 0 else 3))
        edges.append((corner, 4 if sz > 0 else 5))
    return embed(edges, 14)


def light_radial_graph() -> PlanarGraph:
    """
    Radial graph of the cube with a ring in 0 1 2 3 and the chord 0 7 across 0 3 7 4

    Vertex 0 has degree 5 and lies on the 4-face 0 t 7 t' where t and t' are the
    triangles at the chord (degree 3) and 7 has degree 4.
    """
    rotation = {v: list(nbrs) for v, nbrs in CUBE_ROTATION.items()}
    add_ring(rotation, [0, 1, 2, 3])
    add_chord(rotation, [0, 3, 7, 4])
    return radial_graph(build_from_rotation(len(rotation), rotation))


@pytest.fixture
def square() -> PlanarGraph:
    return cycle_graph(4)


@pytest.fixture
def pentagon() -> PlanarGraph:
    return cycle_graph(5)


@pytest.fixture
def cube_graph() -> PlanarGraph:
    return cube()


@pytest.fixture
def dodecahedron() -> PlanarGraph:
    graph = nx.dodecahedral_graph()
    return embed(graph.edges, graph.number_of_nodes())


@pytest.fixture
def rhombic() -> PlanarGraph:
    return rhombic_dodecahedron()


@pytest.fixture
def grid3() -> PlanarGraph:
    return grid(3, 3)


@pytest.fixture
def quadrangulation() -> PlanarGraph:
    return random_quadrangulation(20, seed=7)
