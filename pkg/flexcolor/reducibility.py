"""(d,k)-reducibility of induced subgraphs, decided by exhaustive list-assignment search

An induced subgraph H of G is (d,k)-reducible when
  (FIX)  for every v, H is colorable from every (deg_H + delta)|v-assignment, and
  (FORB) for every d-independent I of size at most k - 2, H is colorable from
         every (deg_H + delta - 1_I)-assignment,
where delta(v) = k - deg_G(v) and f|v pins v to a single color.

The universal quantifier over assignments is decided by enumerating lists of size
exactly f(v) over a color universe of size sum(f), one canonical representative per
color renaming (a new color is always the next unused index).
"""

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from flexcolor.constants import DEFAULT_D, DEFAULT_K, ORACLE_VERTEX_CAP
from flexcolor.exceptions import BudgetExceeded, CapExceeded, PreconditionViolated
from flexcolor.list_coloring import reduce_by_capacity
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import PlanarGraph, components, induced_subgraph

logger = get_logger(__name__)

Assignment = Dict[int, FrozenSet[int]]


# ===== DEGREE BOUNDS =====

@dataclass(frozen=True)
class DegreeBound:
    """Per-vertex list-size bound; negative inputs are clamped to 0."""

    values: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, values: Mapping[int, int]) -> "DegreeBound":
        return cls(tuple((v, max(0, values[v])) for v in sorted(values)))

    @classmethod
    def for_subgraph(cls, g: PlanarGraph, h: PlanarGraph, k: int) -> "DegreeBound":
        """deg_H + delta_{G,k}."""
        slack = delta(g, h.vertices, k)
        return cls.from_mapping({v: h.degree(v) + slack[v] for v in h.vertices})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.values)

    def __getitem__(self, v: int) -> int:
        return self.as_dict()[v]

    def __iter__(self) -> Iterator[int]:
        return (v for v, _ in self.values)

    def down(self, v: int) -> "DegreeBound":
        """f|v: the same bound with v pinned to 1."""
        values = self.as_dict()
        values[v] = 1
        return DegreeBound.from_mapping(values)

    def minus(self, independent: Iterable[int]) -> "DegreeBound":
        """f - 1_I."""
        values = self.as_dict()
        for v in independent:
            values[v] -= 1
        return DegreeBound.from_mapping(values)

    def dominates(self, other: "DegreeBound") -> bool:
        mine, theirs = self.as_dict(), other.as_dict()
        return mine.keys() == theirs.keys() and all(mine[v] >= theirs[v] for v in mine)


def delta(g: PlanarGraph, h_vertices: Iterable[int], k: int) -> Dict[int, int]:
    """k - deg_G(v) on the vertices of H (negative for vertices of degree above k)."""
    return {v: k - g.degree(v) for v in sorted(h_vertices)}


# ===== VERDICTS =====

@dataclass(frozen=True)
class Witness:
    """A list assignment under which H has no coloring."""

    condition: str  # FIX or FORB
    lists: Mapping[int, FrozenSet[int]]
    vertex: Optional[int] = None
    independent_set: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    subgraph: Tuple[int, ...]
    witness: Optional[Witness] = None
    checked_bounds: int = field(default=0, compare=False)


# ===== ASSIGNMENT SEARCH =====

def _colorable(earlier: List[List[int]], lists: List[FrozenSet[int]]) -> bool:
    colors = [-1] * len(lists)

    def assign(i: int) -> bool:
        if i == len(lists):
            return True
        used = {colors[j] for j in earlier[i]}
        for c in lists[i]:
            if c not in used:
                colors[i] = c
                if assign(i + 1):
                    return True
        colors[i] = -1
        return False

    return assign(0)


class _AssignmentSearch:
    """Looks for an uncolorable f-assignment on induced subgraphs of one graph.

    With `use_kernel`, a vertex set is first shrunk by the slack/block rules (sound
    for every assignment with these sizes), split into components, and checked on
    every one-vertex-smaller set; the enumeration itself then only visits
    assignments where each color of L(v) also appears on a neighbor of v. An
    assignment with a private color at v fails only if it already fails on H - v.
    """

    def __init__(
        self,
        h: PlanarGraph,
        bound: Mapping[int, int],
        universe: Optional[int],
        use_kernel: bool,
        deadline: Optional[float],
    ):
        self.h = h
        self.bound = bound
        self.universe = universe
        self.use_kernel = use_kernel
        self.deadline = deadline
        self.nodes = 0
        self._memo: Dict[FrozenSet[int], Optional[Assignment]] = {}

    def counterexample(self, vertices: FrozenSet[int]) -> Optional[Assignment]:
        if vertices in self._memo:
            return self._memo[vertices]
        result = self._search(vertices)
        self._memo[vertices] = result
        return result

    def _search(self, vertices: FrozenSet[int]) -> Optional[Assignment]:
        if not vertices:
            return None
        sub = induced_subgraph(self.h, vertices)
        if not self.use_kernel:
            return self._enumerate(sub, private_free=False)

        kernel, _ = reduce_by_capacity(sub, self.bound)
        if not kernel:
            return None
        if kernel != vertices:
            return self.counterexample(kernel)
        parts = components(sub)
        if len(parts) > 1:
            for part in parts:
                found = self.counterexample(part)
                if found is not None:
                    return found
            return None
        for v in sorted(vertices):
            found = self.counterexample(vertices - {v})
            if found is not None:
                return found
        return self._enumerate(sub, private_free=True)

    def _enumerate(self, sub: PlanarGraph, private_free: bool) -> Optional[Assignment]:
        order: List[int] = []
        for part in components(sub):
            start = min(part)
            order.append(start)
            order.extend(v for _, v in nx.bfs_edges(sub.nx_graph, start, sort_neighbors=sorted))
        position = {v: i for i, v in enumerate(order)}
        earlier = [[position[u] for u in sub.neighbors(v) if position[u] < position[v]] for v in order]
        neighbor_index = [[position[u] for u in sub.neighbors(v)] for v in order]
        closes_at: List[List[int]] = [[] for _ in order]
        for v in order:
            closes_at[max([position[u] for u in sub.neighbors(v)] + [position[v]])].append(position[v])
        sizes = [self.bound[v] for v in order]
        universe = self.universe if self.universe is not None else sum(sizes)
        lists: List[FrozenSet[int]] = [frozenset()] * len(order)

        def closed_ok(i: int) -> bool:
            for j in closes_at[i]:
                seen = frozenset().union(*(lists[w] for w in neighbor_index[j]))
                if not lists[j] <= seen:
                    return False
            return True

        def extend(i: int, used: int) -> Optional[Assignment]:
            self.nodes += 1
            if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
                raise BudgetExceeded("reducibility oracle", 0.0)
            if i == len(order):
                if _colorable(earlier, lists):
                    return None
                return {order[j]: lists[j] for j in range(len(order))}
            size = sizes[i]
            for new in range(0, min(size, universe - used) + 1):
                reused = size - new
                if reused > used:
                    continue
                fresh = frozenset(range(used, used + new))
                for old in combinations(range(used), reused):
                    lists[i] = frozenset(old) | fresh
                    if private_free and not closed_ok(i):
                        continue
                    found = extend(i + 1, used + new)
                    if found is not None:
                        return found
            return None

        return extend(0, 0)


def _complete(h: PlanarGraph, bound: Mapping[int, int], partial: Assignment) -> Assignment:
    """Give every vertex outside `partial` its own fresh colors."""
    next_color = 1 + max((c for lst in partial.values() for c in lst), default=-1)
    full = dict(partial)
    for v in h.vertices:
        if v not in full:
            full[v] = frozenset(range(next_color, next_color + bound[v]))
            next_color += bound[v]
    return full


def colorable_for_all_assignments(
    h: PlanarGraph,
    f: DegreeBound | Mapping[int, int],
    cap: int = ORACLE_VERTEX_CAP,
    universe: Optional[int] = None,
    use_kernel: bool = True,
    time_budget: Optional[float] = None,
) -> Tuple[bool, Optional[Assignment]]:
    """
    Decide whether h is L-colorable for every assignment with |L(v)| >= f(v)

    Args:
        h: The graph H
        f: List-size bound on every vertex of h
        cap: Largest |V(H)| accepted
        universe: Number of colors available (defaults to sum of f)
        use_kernel: Use the deletion rules and the private-color shortcut
        time_budget: Seconds before the search is aborted

    Returns:
        (True, None) or (False, an assignment with |L(v)| = f(v) and no coloring)

    Raises:
        CapExceeded: |V(H)| > cap
        BudgetExceeded: time budget exhausted
    """
    bound = f.as_dict() if isinstance(f, DegreeBound) else {v: max(0, f[v]) for v in f}
    missing = [v for v in h.vertices if v not in bound]
    if missing:
        raise PreconditionViolated(f"no bound for vertex {missing[0]}", field=f"vertex {missing[0]}")
    if len(h) > cap:
        raise CapExceeded("reducibility oracle", len(h), cap)

    empty = {v: frozenset() for v in h.vertices if bound[v] == 0}
    if empty:
        return False, _complete(h, bound, empty)

    deadline = None if time_budget is None else time.monotonic() + time_budget
    search = _AssignmentSearch(h, bound, universe, use_kernel, deadline)
    try:
        found = search.counterexample(h.vertex_set)
    except BudgetExceeded:
        raise BudgetExceeded("reducibility oracle", time_budget or 0.0) from None
    logger.debug(f"Oracle on {len(h)} vertices: {search.nodes} nodes, counterexample={found is not None}")
    if found is None:
        return True, None
    return False, _complete(h, bound, found)


# ===== FIX / FORB =====

def d_independent_sets(h: PlanarGraph, d: int, max_size: int) -> List[Tuple[int, ...]]:
    """All sets of at most max_size vertices with pairwise distance in h above d, empty set first."""
    near = {v: set(dist) for v, dist in nx.all_pairs_shortest_path_length(h.nx_graph, cutoff=d)}
    found: List[Tuple[int, ...]] = [()]
    for size in range(1, max_size + 1):
        for subset in combinations(h.vertices, size):
            if all(b not in near[a] for a, b in combinations(subset, 2)):
                found.append(subset)
    return found


def _subgraph(g: PlanarGraph, h_vertices: Iterable[int], cap: int) -> PlanarGraph:
    members = frozenset(h_vertices)
    unknown = members - g.vertex_set
    if unknown:
        raise PreconditionViolated(f"vertex {min(unknown)} is not in the graph", field="subgraph")
    if len(members) > cap:
        raise CapExceeded("reducibility oracle", len(members), cap)
    return induced_subgraph(g, members)


def check_fix(
    g: PlanarGraph,
    h_vertices: Iterable[int],
    k: int = DEFAULT_K,
    cap: int = ORACLE_VERTEX_CAP,
    time_budget: Optional[float] = None,
) -> Tuple[bool, Optional[Witness]]:
    """(FIX): every single-vertex pin of deg_H + delta is colorable for all assignments."""
    h = _subgraph(g, h_vertices, cap)
    base = DegreeBound.for_subgraph(g, h, k)
    for v in h.vertices:
        ok, lists = colorable_for_all_assignments(h, base.down(v), cap=cap, time_budget=time_budget)
        if not ok:
            logger.info(f"FIX fails at vertex {v} of {h.vertices}")
            return False, Witness(condition="FIX", lists=lists or {}, vertex=v)
    return True, None


def check_forb(
    g: PlanarGraph,
    h_vertices: Iterable[int],
    k: int = DEFAULT_K,
    d: int = DEFAULT_D,
    cap: int = ORACLE_VERTEX_CAP,
    time_budget: Optional[float] = None,
) -> Tuple[bool, Optional[Witness]]:
    """(FORB): every d-independent I of size at most k - 2 leaves H colorable from deg_H + delta - 1_I."""
    h = _subgraph(g, h_vertices, cap)
    base = DegreeBound.for_subgraph(g, h, k)
    raw = {v: h.degree(v) + k - g.degree(v) for v in h.vertices}
    for v in h.vertices:
        if raw[v] < 2:
            bound = base.minus([v])
            lists = _complete(h, bound.as_dict(), {v: frozenset()})
            logger.info(f"FORB fails fast at vertex {v}: deg_H + delta = {raw[v]}")
            return False, Witness(condition="FORB", lists=lists, independent_set=(v,))

    for independent in d_independent_sets(h, d, k - 2):
        ok, lists = colorable_for_all_assignments(
            h, base.minus(independent), cap=cap, time_budget=time_budget
        )
        if not ok:
            logger.info(f"FORB fails for I = {independent} in {h.vertices}")
            return False, Witness(condition="FORB", lists=lists or {}, independent_set=independent)
    return True, None


def is_reducible(
    g: PlanarGraph,
    h_vertices: Iterable[int],
    d: int = DEFAULT_D,
    k: int = DEFAULT_K,
    cap: int = ORACLE_VERTEX_CAP,
    time_budget: Optional[float] = None,
) -> ReducibilityVerdict:
    """
    Decide (d,k)-reducibility of G[H]

    Args:
        g: The host graph G (degrees are taken here)
        h_vertices: Vertex set of the induced subgraph H
        d: Independence distance for (FORB)
        k: List size
        cap: Largest |V(H)| the oracle accepts

    Returns:
        Verdict with the first failing witness, FIX before FORB
    """
    members = tuple(sorted(set(h_vertices)))
    ok, witness = check_fix(g, members, k, cap, time_budget)
    if ok:
        ok, witness = check_forb(g, members, k, d, cap, time_budget)
    logger.info(f"Reducibility of {members}: {'yes' if ok else 'no'}")
    return ReducibilityVerdict(reducible=ok, subgraph=members, witness=witness)
