"""Plane graphs given by rotation systems

A graph is stored as a clockwise cyclic order of neighbors around every vertex.
Faces are traced from that rotation: the walk entering v along (u, v) leaves along
(v, w) where w follows u in the rotation of v. Everything here is immutable, so
graphs can be shared freely and used as cache keys.
"""

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from flexcolor.constants import MAX_SHORT_CYCLE
from flexcolor.exceptions import (
    AsymmetricRotation,
    DuplicateNeighbor,
    NotTriangleFree,
    PreconditionViolated,
    TheoremViolation,
    get_user_friendly_error,
)
from flexcolor.logging_config import get_logger

logger = get_logger(__name__)

Dart = Tuple[int, int]
Angle = Tuple[int, int, int]


def canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Smallest tuple among all rotations of the cycle and of its reversal."""
    cycle = tuple(cycle)
    n = len(cycle)
    if n == 0:
        return cycle
    reverse = tuple(reversed(cycle))
    return min(
        [cycle[i:] + cycle[:i] for i in range(n)] + [reverse[i:] + reverse[:i] for i in range(n)]
    )


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class Face:
    """A facial walk. `darts[i]` runs from `walk[i]` to `walk[i + 1]`."""

    id: int
    walk: Tuple[int, ...]
    darts: Tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.walk)

    @property
    def is_cycle(self) -> bool:
        """True when the walk is bounded by a cycle (no repeated vertex)."""
        return self.length >= 3 and len(set(self.walk)) == self.length

    def angles(self) -> List[Angle]:
        """Consecutive triples of the walk; the middle vertex is the tip."""
        n = self.length
        return [(self.darts[i][0], self.darts[i][1], self.darts[(i + 1) % n][1]) for i in range(n)]

    def face_neighbors(self, v: int) -> Set[int]:
        """Vertices adjacent to v along this walk."""
        found: Set[int] = set()
        for tail, head in self.darts:
            if tail == v:
                found.add(head)
            elif head == v:
                found.add(tail)
        return found


@dataclass(frozen=True)
class DiskCycle:
    """A cycle of length at most five with the faces and vertices strictly inside it.

    "Inside" is the side that does not contain the designated outer face.
    """

    cycle: Tuple[int, ...]
    interior_faces: FrozenSet[int]
    interior_vertices: FrozenSet[int]

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.cycle)

    @property
    def bounds_face(self) -> bool:
        return len(self.interior_faces) == 1

    @property
    def edges(self) -> FrozenSet[FrozenSet[int]]:
        n = len(self.cycle)
        return frozenset(frozenset((self.cycle[i], self.cycle[(i + 1) % n])) for i in range(n))


@dataclass(frozen=True)
class PlanarGraph:
    """Vertex ids with a clockwise rotation of neighbors, plus an optional outer face id."""

    rotation: Tuple[Tuple[int, Tuple[int, ...]], ...]
    outer_face: Optional[int] = None

    @classmethod
    def from_mapping(
        cls, rotation: Mapping[int, Sequence[int]], outer_face: Optional[int] = None
    ) -> "PlanarGraph":
        """Build without validation; callers pass rotations derived from a valid graph."""
        return cls(
            rotation=tuple((v, tuple(rotation[v])) for v in sorted(rotation)),
            outer_face=outer_face,
        )

    # ----- basic structure -----

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self.rotation)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.rotation)

    @cached_property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @cached_property
    def _positions(self) -> Dict[int, Dict[int, int]]:
        return {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in self.rotation}

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted((v, u) for v, nbrs in self.rotation for u in nbrs if v < u))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def __len__(self) -> int:
        return len(self.rotation)

    def __contains__(self, v: object) -> bool:
        return v in self.adjacency

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._positions.get(u, {})

    def successor(self, v: int, u: int) -> int:
        """Neighbor following u in the clockwise rotation at v."""
        nbrs = self.adjacency[v]
        return nbrs[(self._positions[v][u] + 1) % len(nbrs)]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def min_degree(self) -> int:
        return min((len(nbrs) for _, nbrs in self.rotation), default=0)

    # ----- faces -----

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        return tuple(_trace(self))

    @cached_property
    def dart_face(self) -> Dict[Dart, int]:
        return {dart: face.id for face in self.faces for dart in face.darts}

    @cached_property
    def facial_cycles(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(canonical_cycle(face.walk) for face in self.faces if face.is_cycle)

    @property
    def outer(self) -> Optional[Face]:
        return None if self.outer_face is None else self.faces[self.outer_face]

    def face_of_dart(self, u: int, v: int) -> Face:
        return self.faces[self.dart_face[(u, v)]]


# ===== CONSTRUCTION =====

def build_from_rotation(
    n: int, rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]
) -> PlanarGraph:
    """
    Validate a rotation system on vertices 0..n-1 and trace its faces

    Args:
        n: Number of vertices
        rotation: Clockwise neighbor list per vertex (mapping or sequence indexed by id)

    Returns:
        The plane graph

    Raises:
        DuplicateNeighbor: self-loop, parallel edge or neighbor id out of range
        AsymmetricRotation: u lists v but v does not list u
    """
    if isinstance(rotation, Mapping):
        table = {v: list(rotation.get(v, ())) for v in range(n)}
        for v in rotation:
            if not isinstance(v, int) or not 0 <= v < n:
                raise DuplicateNeighbor(v, v, reason="is not a vertex id")
    else:
        table = {v: list(rotation[v]) if v < len(rotation) else [] for v in range(n)}

    for v, nbrs in table.items():
        seen: Set[int] = set()
        for u in nbrs:
            if u == v:
                raise DuplicateNeighbor(v, u, reason="is a self-loop")
            if not 0 <= u < n:
                raise DuplicateNeighbor(v, u, reason="is not a vertex id")
            if u in seen:
                raise DuplicateNeighbor(v, u)
            seen.add(u)
    for v, nbrs in table.items():
        for u in nbrs:
            if v not in table[u]:
                raise AsymmetricRotation(v, u)

    graph = PlanarGraph.from_mapping(table)
    logger.debug(f"Built plane graph: {n} vertices, {graph.num_edges} edges, {len(graph.faces)} faces")
    return graph


def _trace(g: PlanarGraph) -> List[Face]:
    faces: List[Face] = []
    visited: Set[Dart] = set()
    for v, nbrs in g.rotation:
        if not nbrs:
            faces.append(Face(id=len(faces), walk=(v,), darts=()))
            continue
        for u in nbrs:
            if (v, u) in visited:
                continue
            walk: List[int] = []
            darts: List[Dart] = []
            dart = (v, u)
            while dart not in visited:
                visited.add(dart)
                walk.append(dart[0])
                darts.append(dart)
                tail, head = dart
                dart = (head, g.successor(head, tail))
            faces.append(Face(id=len(faces), walk=tuple(walk), darts=tuple(darts)))
    return faces


def trace_faces(g: PlanarGraph) -> List[Face]:
    """All facial walks of g; every dart lies on exactly one of them."""
    return list(g.faces)


def euler_characteristic(g: PlanarGraph) -> int:
    """|V| - |E| + |F| with faces traced per component (2 per component)."""
    return len(g) - g.num_edges + len(g.faces)


# ===== TRIANGLES AND CYCLES =====

def find_triangle(g: PlanarGraph) -> Optional[Tuple[int, int, int]]:
    for u, v in g.edges:
        common = set(g.neighbors(u)) & set(g.neighbors(v))
        if common:
            return (u, v, min(common))
    return None


def is_triangle_free(g: PlanarGraph) -> bool:
    return find_triangle(g) is None


def require_triangle_free(g: PlanarGraph) -> None:
    triangle = find_triangle(g)
    if triangle is not None:
        raise NotTriangleFree(triangle)


def short_cycles(g: PlanarGraph, max_length: int = MAX_SHORT_CYCLE) -> List[Tuple[int, ...]]:
    """
    Every cycle of length at most max_length, in canonical form

    Each cycle is found from its smallest vertex, walking only through larger ones.

    Args:
        g: Plane graph
        max_length: Longest cycle to report

    Returns:
        Sorted list of canonical vertex tuples
    """
    found: Set[Tuple[int, ...]] = set()

    def extend(path: List[int], on_path: Set[int]) -> None:
        start, current = path[0], path[-1]
        for nxt in g.neighbors(current):
            if nxt == start and len(path) >= 3:
                found.add(canonical_cycle(path))
            elif nxt > start and nxt not in on_path and len(path) < max_length:
                path.append(nxt)
                on_path.add(nxt)
                extend(path, on_path)
                on_path.discard(nxt)
                path.pop()

    for v in g.vertices:
        extend([v], {v})
    return sorted(found, key=lambda c: (len(c), c))


def is_facial(g: PlanarGraph, cycle: Sequence[int]) -> bool:
    """Whether some face of g is bounded by exactly this cycle."""
    return canonical_cycle(cycle) in g.facial_cycles


def first_nonfacial_short_cycle(g: PlanarGraph) -> Optional[Tuple[int, ...]]:
    """A cycle of length at most five that is not a face boundary, other than the outer cycle."""
    outer = g.outer
    outer_cycle = canonical_cycle(outer.walk) if outer is not None and outer.is_cycle else None
    for cycle in short_cycles(g):
        if cycle != outer_cycle and not is_facial(g, cycle):
            return cycle
    return None


def require_short_cycles_facial(g: PlanarGraph) -> None:
    cycle = first_nonfacial_short_cycle(g)
    if cycle is not None:
        raise PreconditionViolated(
            get_user_friendly_error("short_cycle_not_facial", cycle=" ".join(map(str, cycle)))
        )


# ===== COMPONENTS AND DISTANCES =====

def components(g: PlanarGraph) -> List[FrozenSet[int]]:
    """Connected components in ascending order of their smallest vertex."""
    return sorted((frozenset(c) for c in nx.connected_components(g.nx_graph)), key=min)


def is_connected(g: PlanarGraph) -> bool:
    return len(g) > 0 and nx.is_connected(g.nx_graph)


def distance(g: PlanarGraph, u: int, v: int) -> float:
    """BFS distance; math.inf when u and v lie in different components."""
    try:
        return nx.shortest_path_length(g.nx_graph, u, v)
    except nx.NetworkXNoPath:
        return math.inf


def is_d_independent(g: PlanarGraph, vertices: Iterable[int], d: int) -> bool:
    """True iff all pairwise distances in g exceed d."""
    members = sorted(set(vertices))
    for i, u in enumerate(members):
        near = nx.single_source_shortest_path_length(g.nx_graph, u, cutoff=d)
        if any(w in near for w in members[i + 1:]):
            return False
    return True


# ===== SUBGRAPHS =====

def induced_subgraph(g: PlanarGraph, vertices: Iterable[int]) -> PlanarGraph:
    """g[Z] with the rotation restricted to Z; the outer designation is dropped."""
    keep = frozenset(vertices)
    if keep == g.vertex_set:
        return g
    return PlanarGraph.from_mapping(
        {v: [u for u in g.neighbors(v) if u in keep] for v in g.vertices if v in keep}
    )


def _require_outer(g: PlanarGraph) -> Face:
    outer = g.outer
    if outer is None:
        raise PreconditionViolated(get_user_friendly_error("outer_not_designated"))
    return outer


def with_outer_face(g: PlanarGraph, cycle: Sequence[int]) -> PlanarGraph:
    """Designate the face bounded by the given cycle as the outer face."""
    target = canonical_cycle(cycle)
    for face in g.faces:
        if face.is_cycle and canonical_cycle(face.walk) == target:
            return replace(g, outer_face=face.id)
    raise PreconditionViolated(
        get_user_friendly_error("not_a_face", cycle=" ".join(map(str, cycle))), field="outer"
    )


def select_outer_face(g: PlanarGraph) -> PlanarGraph:
    """
    Designate a face of length at most five bounded by a cycle as the outer face

    A designation that already satisfies this is kept. Connected triangle-free plane
    graphs of minimum degree three always have such a face; its absence is reported
    as a TheoremViolation.
    """
    outer = g.outer
    if outer is not None and outer.is_cycle and outer.length <= MAX_SHORT_CYCLE:
        return g
    for face in g.faces:
        if face.is_cycle and face.length <= MAX_SHORT_CYCLE:
            logger.debug(f"Outer face {face.id}: {face.walk}")
            return replace(g, outer_face=face.id)
    raise TheoremViolation(
        get_user_friendly_error("missing_outer"),
        details=[{"field": "graph", "message": f"{len(g)} vertices, min degree {g.min_degree}", "type": "faces"}],
    )


def disk_of(g: PlanarGraph, cycle: Sequence[int]) -> DiskCycle:
    """
    Faces and vertices on the side of a cycle away from the outer face

    Faces are joined across every edge not on the cycle; the component that holds
    the outer face is the outside.

    Args:
        g: Connected plane graph with a designated outer face
        cycle: Vertex sequence of a cycle in g

    Returns:
        The cycle with its interior faces and interior vertices
    """
    outer = _require_outer(g)
    canonical = canonical_cycle(cycle)
    n = len(canonical)
    on_cycle = {frozenset((canonical[i], canonical[(i + 1) % n])) for i in range(n)}

    dual = nx.Graph()
    dual.add_nodes_from(face.id for face in g.faces)
    for u, v in g.edges:
        if frozenset((u, v)) not in on_cycle:
            dual.add_edge(g.dart_face[(u, v)], g.dart_face[(v, u)])

    outside = nx.node_connected_component(dual, outer.id)
    interior_faces = frozenset(face.id for face in g.faces if face.id not in outside)
    interior_vertices = frozenset(
        v for fid in interior_faces for v in g.faces[fid].walk
    ) - frozenset(canonical)
    return DiskCycle(cycle=canonical, interior_faces=interior_faces, interior_vertices=interior_vertices)


def find_minimal_nonface_cycle(g: PlanarGraph) -> Optional[DiskCycle]:
    """
    The cycle of length at most five whose open disk is not a face and holds the fewest faces

    Ties go to the lexicographically smallest canonical cycle. The outer cycle is
    itself a candidate, so it is returned when every other short cycle bounds a face.

    Raises:
        PreconditionViolated: no outer face, disconnected, or a vertex of degree at most two
        NotTriangleFree: g has a triangle
    """
    _require_outer(g)
    if not is_connected(g):
        raise PreconditionViolated("disk computations need a connected graph")
    for v in g.vertices:
        if g.degree(v) <= 2:
            raise PreconditionViolated(
                get_user_friendly_error("min_degree", vertex=v, degree=g.degree(v)), field=f"vertex {v}"
            )
    require_triangle_free(g)

    best: Optional[DiskCycle] = None
    for cycle in short_cycles(g):
        disk = disk_of(g, cycle)
        if disk.bounds_face:
            continue
        if best is None or (len(disk.interior_faces), disk.cycle) < (len(best.interior_faces), best.cycle):
            best = disk
    if best is not None:
        logger.debug(f"Minimal disk cycle {best.cycle} with {len(best.interior_faces)} faces")
    return best


def subgraph_in_disk(g: PlanarGraph, c: DiskCycle) -> PlanarGraph:
    """The part of g drawn in the closed disk of c, with c as the outer face boundary."""
    keep = c.vertex_set | c.interior_vertices
    inside_edges = {
        frozenset(dart) for fid in c.interior_faces for dart in g.faces[fid].darts
    }
    rotation = {
        v: [u for u in g.neighbors(v) if frozenset((v, u)) in inside_edges]
        for v in g.vertices
        if v in keep
    }
    disk = PlanarGraph.from_mapping(rotation)

    a, b = c.cycle[0], c.cycle[1]
    outside_dart = (a, b) if g.dart_face[(a, b)] not in c.interior_faces else (b, a)
    return replace(disk, outer_face=disk.dart_face[outside_dart])
