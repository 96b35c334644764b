"""List colorings: exact decision, enumeration and counting, plus the degree-list sufficient conditions"""

import random
import time
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

import networkx as nx

from flexcolor.constants import COUNTING_VERTEX_CAP, ENUMERATION_VERTEX_CAP
from flexcolor.exceptions import (
    BudgetExceeded,
    CapExceeded,
    Disconnected,
    PreconditionViolated,
    get_user_friendly_error,
)
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import PlanarGraph, components, induced_subgraph, is_connected

logger = get_logger(__name__)

ListAssignment = Mapping[int, FrozenSet[int]]
Coloring = Dict[int, int]
KernelLog = List[Tuple[str, Tuple[int, ...]]]


def _require_lists(g: PlanarGraph, lists: ListAssignment) -> None:
    for v in g.vertices:
        if v not in lists:
            raise PreconditionViolated(get_user_friendly_error("missing_list", vertex=v), field=f"vertex {v}")


def is_proper_coloring(g: PlanarGraph, lists: ListAssignment, coloring: Mapping[int, int]) -> bool:
    """Every vertex colored from its list, adjacent vertices different."""
    if set(coloring) != set(g.vertices):
        return False
    if any(coloring[v] not in lists[v] for v in g.vertices):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# ===== DECISION =====

def _solve_component(g: PlanarGraph, lists: ListAssignment, vertices: Iterable[int]) -> Optional[Coloring]:
    order = sorted(vertices, key=lambda v: (-g.degree(v), v))
    coloring: Coloring = {}

    def blocked(w: int) -> Set[int]:
        return {coloring[u] for u in g.neighbors(w) if u in coloring}

    def forward_ok(v: int) -> bool:
        for w in g.neighbors(v):
            if w not in coloring and lists[w] <= blocked(w):
                return False
        return True

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = blocked(v)
        for c in sorted(lists[v]):
            if c in used:
                continue
            coloring[v] = c
            if forward_ok(v) and assign(i + 1):
                return True
            del coloring[v]
        return False

    return coloring if assign(0) else None


def solve(g: PlanarGraph, lists: ListAssignment) -> Optional[Coloring]:
    """
    Find an L-coloring by exact backtracking

    Components are solved independently; inside a component vertices go by
    decreasing degree and colors in ascending order.

    Args:
        g: Graph
        lists: A list for every vertex of g

    Returns:
        A proper coloring from the lists, or None when none exists
    """
    _require_lists(g, lists)
    coloring: Coloring = {}
    for component in components(g):
        part = _solve_component(g, lists, component)
        if part is None:
            return None
        coloring.update(part)
    return coloring


# ===== ENUMERATION AND COUNTING =====

def iter_colorings(
    g: PlanarGraph, lists: ListAssignment, deadline: Optional[float] = None
) -> Iterator[Coloring]:
    """All L-colorings, lexicographic by vertex id then color."""
    _require_lists(g, lists)
    order = list(g.vertices)
    position = {v: i for i, v in enumerate(order)}
    earlier = [[u for u in g.neighbors(v) if position[u] < position[v]] for v in order]
    colors = [0] * len(order)
    steps = 0

    def extend(i: int) -> Iterator[Coloring]:
        nonlocal steps
        if i == len(order):
            yield dict(zip(order, colors))
            return
        steps += 1
        if deadline is not None and steps % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("coloring enumeration", max(0.0, deadline - time.monotonic()))
        used = {colors[position[u]] for u in earlier[i]}
        for c in sorted(lists[order[i]]):
            if c not in used:
                colors[i] = c
                yield from extend(i + 1)

    yield from extend(0)


def enumerate_colorings(
    g: PlanarGraph,
    lists: ListAssignment,
    cap: int = ENUMERATION_VERTEX_CAP,
    time_budget: Optional[float] = None,
) -> List[Coloring]:
    """
    Every L-coloring of g in deterministic order

    Args:
        g: Graph with at most `cap` vertices
        lists: A list for every vertex of g
        cap: Vertex cap
        time_budget: Seconds before the enumeration is aborted

    Raises:
        CapExceeded: g has more than `cap` vertices
        BudgetExceeded: the time budget ran out
    """
    if len(g) > cap:
        raise CapExceeded("coloring enumeration", len(g), cap)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    try:
        return list(iter_colorings(g, lists, deadline))
    except BudgetExceeded:
        raise BudgetExceeded("coloring enumeration", time_budget or 0.0) from None


def _bfs_order(g: PlanarGraph, component: FrozenSet[int]) -> List[int]:
    start = min(component)
    order = [start]
    order.extend(v for _, v in nx.bfs_edges(g.nx_graph, start, sort_neighbors=sorted))
    return order


def _count_component(g: PlanarGraph, lists: ListAssignment, component: FrozenSet[int]) -> int:
    order = _bfs_order(g, component)
    position = {v: i for i, v in enumerate(order)}
    last_use = {v: max([position[u] for u in g.neighbors(v)] + [position[v]]) for v in order}

    # state: colors of processed vertices that still have unprocessed neighbors
    states: Dict[Tuple[Tuple[int, int], ...], int] = {(): 1}
    for i, v in enumerate(order):
        earlier = [u for u in g.neighbors(v) if position[u] < i]
        following: Dict[Tuple[Tuple[int, int], ...], int] = defaultdict(int)
        for state, count in states.items():
            colors = dict(state)
            forbidden = {colors[u] for u in earlier}
            for c in lists[v]:
                if c in forbidden:
                    continue
                colors[v] = c
                key = tuple(sorted((u, col) for u, col in colors.items() if last_use[u] > i))
                following[key] += count
            colors.pop(v, None)
        states = following
        if not states:
            return 0
    return sum(states.values())


def count_colorings(g: PlanarGraph, lists: ListAssignment, cap: int = COUNTING_VERTEX_CAP) -> int:
    """Exact number of L-colorings, by dynamic programming over a BFS frontier."""
    _require_lists(g, lists)
    if len(g) > cap:
        raise CapExceeded("coloring count", len(g), cap)
    total = 1
    for component in components(g):
        total *= _count_component(g, lists, component)
        if total == 0:
            break
    return total


# ===== DEGREE-LIST CONDITIONS =====

def is_complete_or_odd_cycle(g: PlanarGraph, block: Iterable[int]) -> bool:
    """Shape test for a 2-connected vertex set of g (induced)."""
    members = set(block)
    k = len(members)
    m = sum(1 for v in members for u in g.neighbors(v) if u in members) // 2
    if m == k * (k - 1) // 2:
        return True
    return k % 2 == 1 and m == k


def _has_open_block(g: PlanarGraph, vertices: Iterable[int]) -> bool:
    sub = g.nx_graph.subgraph(vertices)
    return any(not is_complete_or_odd_cycle(g, block) for block in nx.biconnected_components(sub))


def gallai_condition(g: PlanarGraph, lists: ListAssignment) -> bool:
    """
    Degree-list sufficient condition for colorability of a connected graph

    True iff |L(u)| >= deg(u) everywhere and either some vertex has slack or some
    block is neither complete nor an odd cycle.

    Raises:
        Disconnected: g is not connected
    """
    if not is_connected(g):
        raise Disconnected(len(components(g)))
    _require_lists(g, lists)
    if any(len(lists[v]) < g.degree(v) for v in g.vertices):
        return False
    if any(len(lists[v]) > g.degree(v) for v in g.vertices):
        return True
    return _has_open_block(g, g.vertices)


def cor_rem_colorable(g: PlanarGraph, v: int, lists: ListAssignment) -> bool:
    """
    Whether |L(v)| exceeds the number of colors the components of g - v can block at v

    A component C_i joined to v by n_i edges blocks n_i - 1 colors when every vertex
    of C_i has |L(x)| >= deg(x) and C_i + v has a block that is neither complete
    nor an odd cycle, and n_i colors otherwise.

    Raises:
        Disconnected: g is not connected
        PreconditionViolated: g - v has no L-coloring
    """
    if not is_connected(g):
        raise Disconnected(len(components(g)))
    _require_lists(g, lists)
    rest = induced_subgraph(g, [u for u in g.vertices if u != v])
    if solve(rest, lists) is None:
        raise PreconditionViolated(f"graph minus vertex {v} is not colorable from its lists", field=f"vertex {v}")

    neighbors = set(g.neighbors(v))
    blocked = 0
    for component in components(rest):
        n_i = len(neighbors & component)
        saturated = all(len(lists[x]) >= g.degree(x) for x in component)
        if saturated and _has_open_block(g, component | {v}):
            blocked += n_i - 1
        else:
            blocked += n_i
    return len(lists[v]) > blocked


# ===== KERNEL =====

def reduce_by_capacity(
    g: PlanarGraph, capacity: Mapping[int, int], rng: Optional[random.Random] = None
) -> Tuple[FrozenSet[int], KernelLog]:
    """
    Apply the two deletion rules driven only by list sizes until neither applies

    Rule "slack" removes a vertex whose capacity exceeds its current degree; rule
    "block" removes a 2-connected set, neither a clique nor an odd cycle, whose
    vertices all have capacity at least their current degree. The surviving set
    does not depend on the order; `rng` picks among applicable steps at random.

    Returns:
        Surviving vertex set and the ordered log of removals
    """
    alive: Set[int] = set(g.vertices)
    log: KernelLog = []
    while alive:
        degree = {v: sum(1 for u in g.neighbors(v) if u in alive) for v in alive}
        slack = sorted(v for v in alive if capacity[v] > degree[v])
        if slack:
            v = rng.choice(slack) if rng is not None else slack[0]
            alive.discard(v)
            log.append(("slack", (v,)))
            continue
        eligible = [v for v in alive if capacity[v] >= degree[v]]
        blocks = sorted(
            tuple(sorted(block))
            for block in nx.biconnected_components(g.nx_graph.subgraph(eligible))
            if not is_complete_or_odd_cycle(g, block)
        )
        if not blocks:
            break
        block = rng.choice(blocks) if rng is not None else blocks[0]
        alive.difference_update(block)
        log.append(("block", block))
    return frozenset(alive), log


def reduce_kernel(
    g: PlanarGraph, lists: ListAssignment, rng: Optional[random.Random] = None
) -> Tuple[PlanarGraph, KernelLog]:
    """The kernel of g under L; it is L-colorable iff g is."""
    _require_lists(g, lists)
    survivors, log = reduce_by_capacity(g, {v: len(lists[v]) for v in g.vertices}, rng)
    logger.debug(f"Kernel: {len(g)} -> {len(survivors)} vertices in {len(log)} steps")
    return induced_subgraph(g, survivors), log
