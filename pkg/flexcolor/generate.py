"""Embedded test graphs: cube, grids, random triangle-free quadrangulations and radial graphs"""

import random
from typing import Dict, List

from flexcolor.exceptions import PreconditionViolated
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import PlanarGraph, build_from_rotation

logger = get_logger(__name__)

# Outer square 0 1 2 3, inner square 4 5 6 7, spokes i -- i + 4
CUBE_ROTATION = {
    0: [1, 4, 3],
    1: [2, 5, 0],
    2: [3, 6, 1],
    3: [0, 7, 2],
    4: [0, 5, 7],
    5: [6, 4, 1],
    6: [2, 7, 5],
    7: [3, 4, 6],
}


def cube() -> PlanarGraph:
    return build_from_rotation(8, CUBE_ROTATION)


def grid(rows: int, cols: int) -> PlanarGraph:
    """rows x cols grid, vertex r * cols + c, neighbors in order up, right, down, left."""
    if rows < 1 or cols < 1:
        raise PreconditionViolated(f"grid needs positive dimensions, got {rows}x{cols}")
    rotation: Dict[int, List[int]] = {}
    for r in range(rows):
        for c in range(cols):
            nbrs = []
            if r > 0:
                nbrs.append((r - 1) * cols + c)
            if c < cols - 1:
                nbrs.append(r * cols + c + 1)
            if r < rows - 1:
                nbrs.append((r + 1) * cols + c)
            if c > 0:
                nbrs.append(r * cols + c - 1)
            rotation[r * cols + c] = nbrs
    return build_from_rotation(rows * cols, rotation)


# ===== QUADRANGULATION MOVES =====

def _insert_after(rotation: Dict[int, List[int]], v: int, anchor: int, new: int) -> None:
    nbrs = rotation[v]
    nbrs.insert(nbrs.index(anchor) + 1, new)


def add_diagonal_vertex(rotation: Dict[int, List[int]], face: List[int]) -> int:
    """Split the 4-face a b c d by a new vertex joined to a and c."""
    a, b, c, d = face
    x = len(rotation)
    _insert_after(rotation, a, d, x)
    _insert_after(rotation, c, b, x)
    rotation[x] = [a, c]
    return x


def add_ring(rotation: Dict[int, List[int]], face: List[int]) -> List[int]:
    """Put a 4-cycle p q r s inside the 4-face a b c d with spokes ap, bq, cr, ds."""
    a, b, c, d = face
    p, q, r, s = range(len(rotation), len(rotation) + 4)
    _insert_after(rotation, a, d, p)
    _insert_after(rotation, b, a, q)
    _insert_after(rotation, c, b, r)
    _insert_after(rotation, d, c, s)
    rotation[p] = [q, a, s]
    rotation[q] = [b, p, r]
    rotation[r] = [c, q, s]
    rotation[s] = [d, r, p]
    return [p, q, r, s]


def _relabel(rotation: Dict[int, List[int]]) -> PlanarGraph:
    order = sorted(rotation)
    index = {v: i for i, v in enumerate(order)}
    return build_from_rotation(len(order), {index[v]: [index[u] for u in rotation[v]] for v in order})


def random_quadrangulation(
    n: int, seed: int = 0, drop_edges: float = 0.0, three_core: bool = False
) -> PlanarGraph:
    """
    Random triangle-free plane graph grown from the cube

    Args:
        n: Target number of vertices (at least 8) before edge deletion
        seed: Generator seed
        drop_edges: Probability of deleting each edge afterwards
        three_core: Strip vertices of degree below three, then relabel to 0..m-1

    Returns:
        The graph; with no deletions every face is a 4-cycle
    """
    if n < 8:
        raise PreconditionViolated(f"quadrangulations start from the cube, need n >= 8, got {n}", field="n")
    rng = random.Random(seed)
    rotation = {v: list(nbrs) for v, nbrs in CUBE_ROTATION.items()}
    while len(rotation) < n:
        faces = [face for face in PlanarGraph.from_mapping(rotation).faces if face.length == 4]
        walk = list(rng.choice(faces).walk)
        shift = rng.randrange(4)
        walk = walk[shift:] + walk[:shift]
        if n - len(rotation) >= 4 and rng.random() < 0.5:
            add_ring(rotation, walk)
        else:
            add_diagonal_vertex(rotation, walk)

    if drop_edges > 0:
        edges = sorted((u, v) for u in rotation for v in rotation[u] if u < v)
        for u, v in edges:
            if rng.random() < drop_edges:
                rotation[u].remove(v)
                rotation[v].remove(u)

    if three_core:
        changed = True
        while changed:
            low = [v for v, nbrs in rotation.items() if len(nbrs) < 3]
            changed = bool(low)
            for v in low:
                for u in rotation.pop(v):
                    if u in rotation:
                        rotation[u].remove(v)

    graph = _relabel(rotation)
    logger.debug(f"Generated graph: {len(graph)} vertices, {graph.num_edges} edges (seed {seed})")
    return graph


# ===== RADIAL GRAPHS =====

def add_chord(rotation: Dict[int, List[int]], face: List[int]) -> None:
    """Split the 4-face a b c d into triangles a b c and a c d by the edge a c."""
    a, b, c, d = face
    _insert_after(rotation, a, d, c)
    _insert_after(rotation, c, b, a)


def radial_graph(g: PlanarGraph) -> PlanarGraph:
    """
    Vertex-face incidence graph of a plane graph

    Face f of g becomes vertex len(g) + f.id, joined to the corners of f in walk
    order. Every face of g must be bounded by a cycle; the result is bipartite and
    every face of it is a 4-cycle v f u f' for an edge v u between faces f and f'.
    """
    n = len(g)
    for face in g.faces:
        if not face.is_cycle:
            raise PreconditionViolated(f"face {face.walk} is not bounded by a cycle", field="graph")
    rotation: Dict[int, List[int]] = {
        v: [n + g.dart_face[(u, v)] for u in g.neighbors(v)] for v in g.vertices
    }
    for face in g.faces:
        rotation[n + face.id] = list(reversed(face.walk))
    return build_from_rotation(n + len(g.faces), rotation)


def random_radial_graph(n: int, seed: int = 0, chords: float = 0.0) -> PlanarGraph:
    """
    Radial graph of a random quadrangulation grown from the cube by rings

    Minimum degree is three and no two degree-3 vertices are adjacent, so the
    configuration search always reaches the disk finders. Chords turn 4-faces of
    the base into pairs of triangles, which become 4-faces x 3 y 3 in the radial
    graph (light and very light faces).

    Args:
        n: Upper bound on base vertices (at least 8); rings are added while they fit
        seed: Generator seed
        chords: Probability of trying a chord in each base 4-face

    Returns:
        Triangle-free plane quadrangulation
    """
    if n < 8:
        raise PreconditionViolated(f"quadrangulations start from the cube, need n >= 8, got {n}", field="n")
    rng = random.Random(seed)
    rotation = {v: list(nbrs) for v, nbrs in CUBE_ROTATION.items()}
    while n - len(rotation) >= 4:
        faces = PlanarGraph.from_mapping(rotation).faces
        walk = list(rng.choice(faces).walk)
        shift = rng.randrange(4)
        add_ring(rotation, walk[shift:] + walk[:shift])

    if chords > 0:
        for face in PlanarGraph.from_mapping(rotation).faces:
            if rng.random() >= chords:
                continue
            walk = list(face.walk)
            if rng.random() < 0.5:
                walk = walk[1:] + walk[:1]
            a, b, c, d = walk
            # b and d keep degree >= 4 so no triangle corner ends up with degree 3
            if len(rotation[b]) < 4 or len(rotation[d]) < 4 or c in rotation[a]:
                continue
            add_chord(rotation, walk)

    base = build_from_rotation(len(rotation), rotation)
    graph = radial_graph(base)
    logger.debug(f"Generated radial graph: {len(graph)} vertices from a {len(base)}-vertex base (seed {seed})")
    return graph
