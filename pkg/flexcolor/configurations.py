"""Reducible configurations of triangle-free plane graphs

Search order: a vertex of degree at most two or two adjacent degree-3 vertices;
otherwise, inside the minimal disk bounded by a non-facial cycle of length at most
five, a vertex with enough good neighbors (mainredu), a degree-5 vertex on a light
4-face with an excellent neighbor (fiveredu), or two adjacent 4-faces of degree-4
vertices (spec4). Degrees are always taken in the graph being searched.
"""

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from flexcolor.constants import (
    CONFIGURATION_KINDS,
    DEFAULT_D,
    DEFAULT_K,
    EXCELLENT_KINDS,
    MAX_CONFIGURATION_SIZE,
    ORACLE_VERTEX_CAP,
    STALK_CANDIDATES_PER_NEIGHBOR,
    STALK_KINDS,
)
from flexcolor.exceptions import FlexColorError, PreconditionViolated, TheoremViolation
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import (
    DiskCycle,
    PlanarGraph,
    components,
    find_minimal_nonface_cycle,
    induced_subgraph,
    require_short_cycles_facial,
    require_triangle_free,
    select_outer_face,
    subgraph_in_disk,
)

logger = get_logger(__name__)

KIND_ORDER = {kind: i for i, kind in enumerate(STALK_KINDS)}
EXTENSION_ORDER = {None: 0, "pendant": 1, "square": 2, "return": 3}


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class Stalk:
    """A v-stalk; labels map names v1, v2, v2', v3, v3', v4, v4' to vertices."""

    kind: str
    base: int
    labels: Tuple[Tuple[str, int], ...]
    bud: Optional[int] = None

    def label(self, name: str) -> int:
        return dict(self.labels)[name]

    @property
    def root(self) -> int:
        return self.label("v1")

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset([self.base, *(w for _, w in self.labels)])

    def sort_key(self) -> Tuple:
        return (KIND_ORDER[self.kind], len(self.vertices), self.labels)


@dataclass(frozen=True)
class ExtendedStalk:
    """A witnessing stalk of an excellent neighbor, plus the extension for kind b."""

    stalk: Stalk
    extension: Optional[str] = None  # pendant, square or return
    extension_labels: Tuple[Tuple[str, int], ...] = ()

    @property
    def root(self) -> int:
        return self.stalk.root

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.stalk.vertices | frozenset(w for _, w in self.extension_labels)

    def sort_key(self) -> Tuple:
        return (
            len(self.vertices),
            KIND_ORDER[self.stalk.kind],
            EXTENSION_ORDER[self.extension],
            self.stalk.labels,
            self.extension_labels,
        )


Witness = Union[Stalk, ExtendedStalk]


@dataclass(frozen=True)
class Configuration:
    """An induced subgraph claimed (1,4)-reducible, with the structure that certifies it."""

    kind: str
    vertices: FrozenSet[int]
    size_bound: int
    center: Optional[int] = None
    stalks: Tuple[Witness, ...] = ()
    faces: Tuple[Tuple[int, ...], ...] = ()
    cycle: Tuple[int, ...] = ()
    oracle_verified: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.kind not in CONFIGURATION_KINDS:
            raise PreconditionViolated(f"unknown configuration kind '{self.kind}'", field="kind")

    @property
    def size(self) -> int:
        return len(self.vertices)


# ===== STALKS =====

def _fits(g: PlanarGraph, c: FrozenSet[int], w: int, degree: int) -> bool:
    return w not in c and g.degree(w) == degree


def find_stalks(g: PlanarGraph, c: Iterable[int], v: int) -> List[Stalk]:
    """
    Every v-stalk vertex-disjoint from C

    Args:
        g: Graph
        c: Vertices of the outer cycle C
        v: Base vertex

    Returns:
        Stalks sorted by kind, size, then labels
    """
    c = frozenset(c)
    if v in c:
        return []
    found: Dict[Tuple, Stalk] = {}

    def add(kind: str, labels: Sequence[Tuple[str, int]], bud: Optional[int] = None) -> None:
        stalk = Stalk(kind=kind, base=v, labels=tuple(labels), bud=bud)
        if len(stalk.vertices) != len(labels) + 1:
            return
        key = (kind, stalk.vertices, bud)
        if key not in found or stalk.labels < found[key].labels:
            found[key] = stalk

    for v1 in sorted(g.neighbors(v)):
        if v1 in c:
            continue
        if g.degree(v1) == 3:
            add("a", [("v1", v1)])
        if g.degree(v1) != 4:
            continue
        for v2 in sorted(g.neighbors(v1)):
            if v2 == v or v2 in c:
                continue
            if g.degree(v2) == 3:
                add("b", [("v1", v1), ("v2", v2)])
            if g.degree(v2) != 4:
                continue
            for v3 in sorted(g.neighbors(v2)):
                if v3 in (v, v1) or v3 in c:
                    continue
                if g.degree(v3) == 3:
                    if g.has_edge(v3, v):
                        add("c", [("v1", v1), ("v2", v2), ("v3", v3)], bud=v3)
                    for v3p in sorted(g.neighbors(v2)):
                        if v3p not in (v, v1, v3) and _fits(g, c, v3p, 3):
                            add("d", [("v1", v1), ("v2", v2), ("v3", v3), ("v3'", v3p)])
                    for v2p in sorted(g.neighbors(v1)):
                        if v2p not in (v, v2) and _fits(g, c, v2p, 4) and g.has_edge(v2p, v3):
                            add("e", [("v1", v1), ("v2", v2), ("v2'", v2p), ("v3", v3)])
                elif g.degree(v3) == 4:
                    for v2p in sorted(g.neighbors(v1)):
                        if v2p in (v, v2) or not _fits(g, c, v2p, 4) or not g.has_edge(v2p, v3):
                            continue
                        for v4 in sorted(g.neighbors(v3)):
                            if v4 in (v, v2, v2p) or not _fits(g, c, v4, 3):
                                continue
                            for v4p in sorted(g.neighbors(v3)):
                                if v4p not in (v, v2, v2p, v4) and _fits(g, c, v4p, 3):
                                    add(
                                        "f",
                                        [("v1", v1), ("v2", v2), ("v2'", v2p), ("v3", v3), ("v4", v4), ("v4'", v4p)],
                                    )
    return sorted(found.values(), key=Stalk.sort_key)


def stalk_is_valid(g: PlanarGraph, c: Iterable[int], stalk: Stalk) -> bool:
    """Re-check the degree pattern and adjacencies that define the stalk's kind."""
    c = frozenset(c)
    if stalk.vertices & c:
        return False
    labels = dict(stalk.labels)
    v = stalk.base

    def deg(name: str) -> int:
        return g.degree(labels[name])

    def edge(a: str, b: str) -> bool:
        x = v if a == "v" else labels[a]
        y = v if b == "v" else labels[b]
        return g.has_edge(x, y)

    if not edge("v", "v1"):
        return False
    if stalk.kind == "a":
        return deg("v1") == 3
    if stalk.kind == "b":
        return deg("v1") == 4 and deg("v2") == 3 and edge("v1", "v2")
    if stalk.kind == "c":
        return (
            deg("v1") == deg("v2") == 4
            and deg("v3") == 3
            and edge("v1", "v2")
            and edge("v2", "v3")
            and edge("v3", "v")
            and stalk.bud == labels["v3"]
        )
    if stalk.kind == "d":
        return (
            deg("v1") == deg("v2") == 4
            and deg("v3") == deg("v3'") == 3
            and edge("v1", "v2")
            and edge("v2", "v3")
            and edge("v2", "v3'")
        )
    if stalk.kind == "e":
        return (
            deg("v1") == deg("v2") == deg("v2'") == 4
            and deg("v3") == 3
            and edge("v1", "v2")
            and edge("v2", "v3")
            and edge("v1", "v2'")
            and edge("v2'", "v3")
        )
    if stalk.kind == "f":
        return (
            deg("v1") == deg("v2") == deg("v2'") == deg("v3") == 4
            and deg("v4") == deg("v4'") == 3
            and edge("v1", "v2")
            and edge("v2", "v3")
            and edge("v3", "v4")
            and edge("v1", "v2'")
            and edge("v2'", "v3")
            and edge("v3", "v4'")
        )
    return False


def stalks_by_root(g: PlanarGraph, c: Iterable[int], v: int) -> Dict[int, List[Stalk]]:
    grouped: Dict[int, List[Stalk]] = {}
    for stalk in find_stalks(g, c, v):
        grouped.setdefault(stalk.root, []).append(stalk)
    return grouped


def good_neighbors(g: PlanarGraph, c: Iterable[int], v: int) -> List[Tuple[int, Stalk]]:
    """Each (v,C)-good neighbor once, with its canonical witnessing stalk."""
    grouped = stalks_by_root(g, c, v)
    return [(x, min(grouped[x], key=Stalk.sort_key)) for x in sorted(grouped)]


def is_excellent(g: PlanarGraph, c: Iterable[int], v: int, x: int) -> Optional[ExtendedStalk]:
    """
    The smallest extended stalk showing that x is (v,C)-excellent, or None

    x is excellent when it roots a stalk of kind a, d, e or f, or a stalk v x v2 of
    kind b together with one of: a degree-3 neighbor v2' of x (pendant), a 4-cycle
    x v2 v3' v2' of degree-4 vertices (square), or a 4-cycle x v2' v3' v with
    deg(v2') = 4 and deg(v3') = 3 (return); all extension vertices off C.
    """
    c = frozenset(c)
    if not g.has_edge(v, x):
        raise PreconditionViolated(f"{x} is not a neighbor of {v}", field="x")
    options: List[ExtendedStalk] = []
    for stalk in find_stalks(g, c, v):
        if stalk.root != x:
            continue
        if stalk.kind in EXCELLENT_KINDS:
            options.append(ExtendedStalk(stalk=stalk))
            continue
        if stalk.kind != "b":
            continue
        v2 = stalk.label("v2")
        for w in sorted(g.neighbors(x)):
            if w not in (v, v2) and _fits(g, c, w, 3):
                options.append(ExtendedStalk(stalk, "pendant", (("v2'", w),)))
        for v2p in sorted(g.neighbors(x)):
            if v2p in (v, v2) or not _fits(g, c, v2p, 4):
                continue
            for v3p in sorted(g.neighbors(v2)):
                if v3p not in (v, x, v2p) and _fits(g, c, v3p, 4) and g.has_edge(v3p, v2p):
                    options.append(ExtendedStalk(stalk, "square", (("v2'", v2p), ("v3'", v3p))))
            for v3p in sorted(g.neighbors(v2p)):
                if v3p not in (v, x, v2) and _fits(g, c, v3p, 3) and g.has_edge(v3p, v):
                    options.append(ExtendedStalk(stalk, "return", (("v2'", v2p), ("v3'", v3p))))
    return min(options, key=ExtendedStalk.sort_key) if options else None


# ===== FINDERS =====

def find_small(g: PlanarGraph) -> Optional[Configuration]:
    """A vertex of degree at most two, else two adjacent degree-3 vertices."""
    for v in g.vertices:
        if g.degree(v) <= 2:
            return Configuration(kind="small-deg2", vertices=frozenset([v]), size_bound=1, center=v)
    for u, v in g.edges:
        if g.degree(u) == 3 and g.degree(v) == 3:
            return Configuration(kind="small-33", vertices=frozenset([u, v]), size_bound=2, center=u)
    return None


def _outer_cycle(g: PlanarGraph, c: Optional[Iterable[int]]) -> FrozenSet[int]:
    if c is not None:
        return frozenset(c)
    outer = g.outer
    if outer is None:
        raise PreconditionViolated("the disk graph has no designated outer face")
    return outer.vertex_set


def _stalk_options(stalks: List[Stalk]) -> List[Stalk]:
    """
    The smallest bud-free stalk plus the smallest stalk for each bud

    Only the first STALK_CANDIDATES_PER_NEIGHBOR options per root are kept, so the
    mainredu search is not exhaustive and can miss the smallest H.
    """
    by_size = sorted(stalks, key=lambda s: (len(s.vertices), KIND_ORDER[s.kind], s.labels))
    options: List[Stalk] = []
    seen: set = set()
    for stalk in by_size:
        if stalk.bud not in seen:
            seen.add(stalk.bud)
            options.append(stalk)
    return options[:STALK_CANDIDATES_PER_NEIGHBOR]


def _select_stalks(v: int, grouped: Dict[int, List[Stalk]], need: int) -> Optional[Tuple[Stalk, ...]]:
    """need stalks on distinct roots with pairwise distinct buds, smallest union first."""
    roots = sorted(grouped)
    options = {x: _stalk_options(grouped[x]) for x in roots}
    best: Optional[Tuple[int, Tuple[int, ...], Tuple[Stalk, ...]]] = None

    def search(start: int, chosen: List[Stalk], covered: FrozenSet[int], buds: FrozenSet[int]) -> None:
        nonlocal best
        if best is not None and len(covered) > best[0]:
            return
        if len(chosen) == need:
            key = (len(covered), tuple(sorted(covered)))
            if best is None or key < best[:2]:
                best = (key[0], key[1], tuple(chosen))
            return
        if len(roots) - start < need - len(chosen):
            return
        for i in range(start, len(roots)):
            for stalk in options[roots[i]]:
                if stalk.bud is not None and stalk.bud in buds:
                    continue
                chosen.append(stalk)
                search(
                    i + 1,
                    chosen,
                    covered | stalk.vertices,
                    buds | ({stalk.bud} if stalk.bud is not None else frozenset()),
                )
                chosen.pop()

    search(0, [], frozenset([v]), frozenset())
    return None if best is None else best[2]


def find_mainredu(
    g: PlanarGraph, c: Optional[Iterable[int]] = None, check: bool = True
) -> Optional[Configuration]:
    """
    A vertex v off C of degree d >= 3 with d - 1 good neighbors using distinct buds

    H is induced by the union of the chosen stalks (at most 6d - 5 vertices);
    stalks are chosen to make H as small as possible among a bounded number of
    stalk options per neighbor (a heuristic, not an exhaustive search).

    Raises:
        PreconditionViolated: some short cycle does not bound a face
    """
    cycle = _outer_cycle(g, c)
    if check:
        require_short_cycles_facial(g)
    for v in g.vertices:
        d = g.degree(v)
        if v in cycle or d < 3:
            continue
        grouped = stalks_by_root(g, cycle, v)
        if len(grouped) < d - 1:
            continue
        chosen = _select_stalks(v, grouped, d - 1)
        if chosen is None:
            logger.debug(f"Vertex {v}: good neighbors share buds")
            continue
        vertices = frozenset([v]).union(*(s.vertices for s in chosen))
        if len(vertices) > MAX_CONFIGURATION_SIZE:
            continue
        logger.debug(f"mainredu at {v} (degree {d}): {sorted(vertices)}")
        return Configuration(
            kind="mainredu",
            vertices=vertices,
            size_bound=6 * d - 5,
            center=v,
            stalks=chosen,
            cycle=tuple(sorted(cycle)),
        )
    return None


def _rotate_to(walk: Tuple[int, ...], v: int) -> Tuple[int, ...]:
    i = walk.index(v)
    return walk[i:] + walk[:i]


def _inner_four_faces(g: PlanarGraph, cycle: FrozenSet[int]):
    for face in g.faces:
        if face.id != g.outer_face and face.is_cycle and face.length == 4 and not face.vertex_set & cycle:
            yield face


def find_5redu(
    g: PlanarGraph, c: Optional[Iterable[int]] = None, check: bool = True
) -> Optional[Configuration]:
    """
    A degree-5 vertex v on a 4-face v v1 v2 v3 with degrees 3, 4, 3 plus an excellent neighbor

    H = G[{v, v1, v2, v3} + the extended stalk of the excellent neighbor], at most 10 vertices.
    """
    cycle = _outer_cycle(g, c)
    if check:
        require_short_cycles_facial(g)
    best: Optional[Tuple[Tuple, Configuration]] = None
    for face in _inner_four_faces(g, cycle):
        for v in face.walk:
            if g.degree(v) != 5:
                continue
            _, v1, v2, v3 = _rotate_to(face.walk, v)
            if not (g.degree(v1) == 3 and g.degree(v3) == 3 and g.degree(v2) == 4):
                continue
            for x in sorted(g.neighbors(v)):
                if x in (v1, v3):
                    continue
                extended = is_excellent(g, cycle, v, x)
                if extended is None:
                    continue
                vertices = frozenset([v, v1, v2, v3]) | extended.vertices
                key = (v, len(vertices), tuple(sorted(vertices)))
                if best is None or key < best[0]:
                    best = (
                        key,
                        Configuration(
                            kind="fiveredu",
                            vertices=vertices,
                            size_bound=10,
                            center=v,
                            stalks=(extended,),
                            faces=((v, v1, v2, v3),),
                            cycle=tuple(sorted(cycle)),
                        ),
                    )
    return None if best is None else best[1]


def find_spec4(
    g: PlanarGraph, c: Optional[Iterable[int]] = None, check: bool = True
) -> Optional[Configuration]:
    """
    Two 4-faces v1 v2 v3 v4 and v1 v2 v3' v4' sharing v1 v2, off C

    v1, v2, v4, v3', v4' have degree 4; v3 has degree 3, or degree 4 with two
    off-C degree-3 neighbors Z. H = G[{v1, v2, v3, v4, v3', v4'} + Z], at most 8 vertices.
    """
    cycle = _outer_cycle(g, c)
    if check:
        require_short_cycles_facial(g)
    by_edge: Dict[FrozenSet[int], List] = {}
    for face in _inner_four_faces(g, cycle):
        for u, w in face.darts:
            by_edge.setdefault(frozenset((u, w)), []).append(face)

    best: Optional[Tuple[Tuple, Configuration]] = None
    for edge in sorted(by_edge, key=sorted):
        faces = by_edge[edge]
        if len(faces) != 2 or faces[0].id == faces[1].id:
            continue
        a, b = sorted(edge)
        for v1, v2 in ((a, b), (b, a)):
            for f, fp in ((faces[0], faces[1]), (faces[1], faces[0])):
                (v3,) = f.face_neighbors(v2) - {v1}
                (v4,) = f.face_neighbors(v1) - {v2}
                (v3p,) = fp.face_neighbors(v2) - {v1}
                (v4p,) = fp.face_neighbors(v1) - {v2}
                core = (v1, v2, v3, v4, v3p, v4p)
                if len(set(core)) != 6:
                    continue
                if any(g.degree(w) != 4 for w in (v1, v2, v4, v3p, v4p)):
                    continue
                if g.degree(v3) == 3:
                    extra: Tuple[int, ...] = ()
                elif g.degree(v3) == 4:
                    extra = tuple(sorted(w for w in g.neighbors(v3) if _fits(g, cycle, w, 3)))
                    if len(extra) != 2:
                        continue
                else:
                    continue
                vertices = frozenset(core) | frozenset(extra)
                key = (len(vertices), tuple(sorted(vertices)))
                if best is None or key < best[0]:
                    best = (
                        key,
                        Configuration(
                            kind="spec4",
                            vertices=vertices,
                            size_bound=8,
                            center=v1,
                            faces=((v1, v2, v3, v4), (v1, v2, v3p, v4p)),
                            cycle=tuple(sorted(cycle)),
                        ),
                    )
    return None if best is None else best[1]


# ===== PIPELINE =====

def prepare_disk(g: PlanarGraph) -> Tuple[PlanarGraph, DiskCycle]:
    """Outer face, minimal non-facial short cycle and the closed disk it bounds."""
    g = select_outer_face(g)
    disk = find_minimal_nonface_cycle(g)
    if disk is None:
        raise TheoremViolation("no short cycle bounds a non-facial disk")
    logger.debug(f"Disk cycle {disk.cycle}: {len(disk.interior_vertices)} interior vertices")
    return subgraph_in_disk(g, disk), disk


def find_in_disk(g: PlanarGraph, cycle: Iterable[int]) -> Optional[Configuration]:
    """mainredu, then fiveredu, then spec4 inside a prepared disk."""
    c = frozenset(cycle)
    require_short_cycles_facial(g)
    for finder in (find_mainredu, find_5redu, find_spec4):
        config = finder(g, c, check=False)
        if config is not None:
            return config
    return None


def _diagnostics(g: PlanarGraph, disk: DiskCycle) -> List[Dict[str, str]]:
    from flexcolor.discharging import verify

    details = [
        {"field": "graph", "message": f"{len(g)} vertices, {g.num_edges} edges", "type": "diagnostic"},
        {"field": "cycle", "message": " ".join(map(str, disk.cycle)), "type": "diagnostic"},
    ]
    try:
        report = verify(g, check=False)
    except FlexColorError as e:
        details.append({"field": "charges", "message": e.message, "type": "diagnostic"})
        return details
    for line in report.lines():
        if line.startswith(("total", "neg", "unpaid", "audit")):
            details.append({"field": "charges", "message": line, "type": "diagnostic"})
    return details


def verify_configuration(
    g: PlanarGraph, config: Configuration, cap: int = ORACLE_VERTEX_CAP
) -> Configuration:
    """Attach the oracle verdict when H is small enough; None marks "not oracle-verified"."""
    from flexcolor.reducibility import is_reducible

    limit = cap
    if config.kind == "mainredu" and config.center is not None and g.degree(config.center) == 3:
        limit = max(cap, 13)
        if config.size > cap:
            logger.warning(f"Oracle cap raised to {limit} for degree-3 mainredu; this can take minutes")
    if config.size > limit:
        return replace(config, oracle_verified=None)
    verdict = is_reducible(g, config.vertices, DEFAULT_D, DEFAULT_K, cap=limit)
    return replace(config, oracle_verified=verdict.reducible)


def find_reducible(g0: PlanarGraph, verify: bool = False, cap: int = ORACLE_VERTEX_CAP) -> Configuration:
    """
    A (1,4)-reducible induced subgraph of at most 31 vertices

    Components go in ascending order of their smallest vertex.

    Args:
        g0: Triangle-free plane graph
        verify: Run the reducibility oracle on the result when it fits under `cap`
        cap: Oracle vertex cap

    Raises:
        NotTriangleFree: g0 has a triangle
        TheoremViolation: the search came back empty; details carry the charge ledger
    """
    require_triangle_free(g0)
    if len(g0) == 0:
        raise PreconditionViolated("the empty graph has no configuration")
    for component in components(g0):
        sub = induced_subgraph(g0, component)
        config = find_small(sub)
        if config is None:
            disk_graph, disk = prepare_disk(sub)
            config = find_in_disk(disk_graph, disk.cycle)
            if config is None:
                logger.error(f"No configuration in disk {disk.cycle} of a {len(sub)}-vertex component")
                raise TheoremViolation(
                    f"no reducible configuration inside disk cycle {' '.join(map(str, disk.cycle))}",
                    details=_diagnostics(disk_graph, disk),
                )
        logger.info(f"Configuration {config.kind} on {sorted(config.vertices)}")
        return verify_configuration(g0, config, cap) if verify else config
    raise TheoremViolation("no component produced a configuration")


@lru_cache(maxsize=64)
def decompose(g: PlanarGraph) -> Tuple[FrozenSet[int], ...]:
    """Peel configurations off until nothing is left: Y1 from G, Y2 from G - Y1, and so on."""
    layers: List[FrozenSet[int]] = []
    current = g
    while len(current):
        config = find_reducible(current)
        layers.append(config.vertices)
        current = induced_subgraph(current, current.vertex_set - config.vertices)
    logger.debug(f"Decomposed {len(g)} vertices into {len(layers)} layers")
    return tuple(layers)
