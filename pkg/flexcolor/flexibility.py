"""Random L-colorings built by peeling reducible configurations, and what they satisfy

A coloring is sampled by removing a reducible configuration Y, coloring G - Y
recursively, and then picking uniformly among the colorings of G[Y] that avoid the
colors already used on neighbors. Requests and weighted requests are scored against
such samples.
"""

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from flexcolor.configurations import decompose
from flexcolor.constants import (
    DEFAULT_B,
    DEFAULT_K,
    ENUMERATION_TIME_BUDGET,
    ENUMERATION_VERTEX_CAP,
)
from flexcolor.exceptions import (
    CapExceeded,
    InternalNoColoring,
    PreconditionViolated,
    TheoremViolation,
    get_user_friendly_error,
)
from flexcolor.list_coloring import (
    Coloring,
    ListAssignment,
    count_colorings,
    enumerate_colorings,
    is_proper_coloring,
    iter_colorings,
)
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import PlanarGraph, induced_subgraph, require_triangle_free

logger = get_logger(__name__)

Pair = Tuple[int, int]


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class Request:
    """Partial map vertex -> requested color."""

    entries: Tuple[Pair, ...] = ()

    @classmethod
    def from_mapping(cls, entries: Mapping[int, int]) -> "Request":
        return cls(tuple(sorted(entries.items())))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def validate(self, g: PlanarGraph, lists: ListAssignment) -> None:
        for v, c in self.entries:
            if v not in g:
                raise PreconditionViolated(get_user_friendly_error("unknown_vertex", vertex=v), field="request")
            if c not in lists[v]:
                raise PreconditionViolated(
                    get_user_friendly_error("color_not_in_list", color=c, vertex=v), field="request"
                )

    def honored(self, coloring: Mapping[int, int]) -> int:
        return sum(1 for v, c in self.entries if coloring.get(v) == c)


@dataclass(frozen=True)
class WeightedRequest:
    """Nonnegative weight per (vertex, color); pairs not listed weigh 0."""

    weights: Tuple[Tuple[Pair, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, weights: Mapping[Pair, Fraction]) -> "WeightedRequest":
        return cls(tuple(sorted((pair, Fraction(w)) for pair, w in weights.items())))

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def validate(self, g: PlanarGraph, lists: ListAssignment) -> None:
        for (v, c), w in self.weights:
            if v not in g:
                raise PreconditionViolated(get_user_friendly_error("unknown_vertex", vertex=v), field="weights")
            if c not in lists[v]:
                raise PreconditionViolated(
                    get_user_friendly_error("color_not_in_list", color=c, vertex=v), field="weights"
                )
            if w < 0:
                raise PreconditionViolated(f"negative weight {w} on vertex {v} color {c}", field="weights")

    def value(self, coloring: Mapping[int, int]) -> Fraction:
        return sum((w for (v, c), w in self.weights if coloring.get(v) == c), Fraction(0))

    def ratio(self, coloring: Mapping[int, int]) -> Fraction:
        total = self.total
        return Fraction(1) if total == 0 else self.value(coloring) / total


@dataclass
class SampleStats:
    """Hit counts of (vertex, color) pairs over independent samples."""

    trials: int
    pairs: Tuple[Pair, ...]
    counts: Counter = field(default_factory=Counter)

    @classmethod
    def empty(cls, lists: ListAssignment, vertices: Iterable[int]) -> "SampleStats":
        pairs = tuple((v, c) for v in sorted(vertices) for c in sorted(lists[v]))
        return cls(trials=0, pairs=pairs)

    def record(self, coloring: Mapping[int, int]) -> None:
        self.trials += 1
        self.counts.update(coloring.items())

    def merge(self, other: "SampleStats") -> "SampleStats":
        if self.pairs != other.pairs:
            raise PreconditionViolated("cannot merge statistics of different instances")
        return SampleStats(self.trials + other.trials, self.pairs, self.counts + other.counts)

    def count(self, v: int, c: int) -> int:
        return self.counts.get((v, c), 0)

    def probability(self, v: int, c: int) -> Fraction:
        return Fraction(self.count(v, c), self.trials) if self.trials else Fraction(0)

    @property
    def min_empirical_prob(self) -> Fraction:
        if not self.pairs or not self.trials:
            return Fraction(1) if not self.pairs else Fraction(0)
        return min(self.probability(v, c) for v, c in self.pairs)

    def row_sums(self) -> Dict[int, int]:
        sums: Dict[int, int] = {}
        for (v, _), n in self.counts.items():
            sums[v] = sums.get(v, 0) + n
        return sums


@dataclass(frozen=True)
class AvoidanceEstimate:
    """Empirical P[no vertex of I gets color c] next to the guaranteed p^|I|."""

    vertices: Tuple[int, ...]
    color: int
    trials: int
    hits: int
    bound: Fraction

    @property
    def probability(self) -> Fraction:
        return Fraction(self.hits, self.trials) if self.trials else Fraction(0)

    @property
    def holds(self) -> bool:
        return self.probability >= self.bound


# ===== SAMPLER =====

def theoretical_epsilon(k: int = DEFAULT_K, b: int = DEFAULT_B) -> Fraction:
    """epsilon = p^(k-1) with p = k^-b, exactly."""
    if k < 3 or b < 1:
        raise PreconditionViolated(f"need k >= 3 and b >= 1, got k={k} b={b}", field="k")
    return Fraction(1, k ** (b * (k - 1)))


def _require_list_sizes(g: PlanarGraph, lists: ListAssignment, k: int) -> None:
    for v in g.vertices:
        if v not in lists:
            raise PreconditionViolated(get_user_friendly_error("missing_list", vertex=v), field=f"vertex {v}")
        if len(lists[v]) < k:
            raise PreconditionViolated(
                get_user_friendly_error("short_list", vertex=v, size=len(lists[v]), k=k), field=f"vertex {v}"
            )


def sample_coloring(
    g: PlanarGraph,
    lists: ListAssignment,
    seed: int,
    enum_cap: int = ENUMERATION_VERTEX_CAP,
    time_budget: Optional[float] = ENUMERATION_TIME_BUDGET,
    check: bool = True,
) -> Coloring:
    """
    One random L-coloring, a deterministic function of (g, lists, seed)

    The peeling sequence Y1, Y2, ... is computed once per graph. The innermost layer
    is colored first; layer i draws from its own generator seeded "<seed>:<i>".

    Args:
        g: Triangle-free plane graph
        lists: Lists of size at least four
        seed: Sample seed
        enum_cap: Largest layer whose colorings are enumerated
        time_budget: Seconds allowed per layer enumeration
        check: Validate lists and triangle-freeness

    Raises:
        NotTriangleFree: g has a triangle
        InternalNoColoring: some layer has no coloring compatible with the outer ones
    """
    if check:
        require_triangle_free(g)
        _require_list_sizes(g, lists, DEFAULT_K)
    if len(g) == 0:
        return {}
    layers = decompose(g)
    coloring: Coloring = {}
    for i in reversed(range(len(layers))):
        layer = layers[i]
        rng = random.Random(f"{seed}:{i}")
        sub = induced_subgraph(g, layer)
        remaining = {
            y: frozenset(lists[y]) - {coloring[u] for u in g.neighbors(y) if u in coloring} for y in sub.vertices
        }
        options = enumerate_colorings(sub, remaining, cap=enum_cap, time_budget=time_budget)
        if not options:
            raise InternalNoColoring(layer)
        coloring.update(options[rng.randrange(len(options))])
    return coloring


def _sample_range(
    g: PlanarGraph, lists: ListAssignment, start: int, stop: int, enum_cap: int, time_budget: Optional[float]
) -> SampleStats:
    stats = SampleStats.empty(lists, g.vertices)
    for seed in range(start, stop):
        coloring = sample_coloring(g, lists, seed, enum_cap, time_budget, check=False)
        if not is_proper_coloring(g, lists, coloring):
            raise TheoremViolation(f"sample {seed} is not a proper list coloring")
        stats.record(coloring)
    return stats


def _chunks(start: int, trials: int, jobs: int) -> List[Tuple[int, int]]:
    size, extra = divmod(trials, jobs)
    bounds = []
    lo = start
    for j in range(jobs):
        hi = lo + size + (1 if j < extra else 0)
        if hi > lo:
            bounds.append((lo, hi))
        lo = hi
    return bounds


def estimate_probabilities(
    g: PlanarGraph,
    lists: ListAssignment,
    trials: int,
    seed: int = 0,
    jobs: int = 1,
    enum_cap: int = ENUMERATION_VERTEX_CAP,
    time_budget: Optional[float] = ENUMERATION_TIME_BUDGET,
) -> SampleStats:
    """
    Empirical Prob[phi(v) = c] from samples with seeds seed .. seed + trials - 1

    With jobs > 1 the seed range is split over worker processes and the partial
    statistics are merged; the result does not depend on the split.
    """
    require_triangle_free(g)
    _require_list_sizes(g, lists, DEFAULT_K)
    if trials < 1:
        raise PreconditionViolated("trials must be positive", field="trials")
    if len(g):
        decompose(g)
    plain = {v: frozenset(lists[v]) for v in g.vertices}
    logger.info(f"Sampling {trials} colorings of {len(g)} vertices with {jobs} job(s)")
    if jobs <= 1:
        return _sample_range(g, plain, seed, seed + trials, enum_cap, time_budget)

    stats = SampleStats.empty(plain, g.vertices)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_sample_range, g, plain, lo, hi, enum_cap, time_budget)
            for lo, hi in _chunks(seed, trials, jobs)
        ]
        for future in futures:
            stats = stats.merge(future.result())
    return stats


# ===== REQUESTS =====

def satisfy_request(
    g: PlanarGraph, lists: ListAssignment, request: Request, trials: int, seed: int = 0
) -> Tuple[Coloring, Fraction]:
    """
    Best sampled coloring for a request and the fraction of dom(r) it honors

    An empty request is vacuously satisfied: the fraction is 1.
    """
    request.validate(g, lists)
    best: Optional[Coloring] = None
    best_hits = -1
    wanted = len(request.entries)
    for s in range(seed, seed + max(1, trials)):
        coloring = sample_coloring(g, lists, s)
        hits = request.honored(coloring)
        if hits > best_hits:
            best, best_hits = coloring, hits
        if hits == wanted:
            break
    fraction = Fraction(1) if wanted == 0 else Fraction(best_hits, wanted)
    logger.info(f"Request of size {wanted}: best fraction {fraction}")
    return best or {}, fraction


def satisfy_weighted(
    g: PlanarGraph, lists: ListAssignment, weights: WeightedRequest, trials: int, seed: int = 0
) -> Tuple[Coloring, Fraction]:
    """Best sampled coloring by collected weight, with value / w(G, L)."""
    weights.validate(g, lists)
    best: Optional[Coloring] = None
    best_value = Fraction(-1)
    for s in range(seed, seed + max(1, trials)):
        coloring = sample_coloring(g, lists, s)
        value = weights.value(coloring)
        if value > best_value:
            best, best_value = coloring, value
        if value == weights.total:
            break
    best = best or {}
    return best, weights.ratio(best)


def exact_best_weighted(
    g: PlanarGraph,
    lists: ListAssignment,
    weights: WeightedRequest,
    cap: int = 12,
) -> Tuple[Optional[Coloring], Fraction]:
    """The optimum over every L-coloring; None and 0 when there is none."""
    weights.validate(g, lists)
    if len(g) > cap:
        raise CapExceeded("weighted optimum", len(g), cap)
    best: Optional[Coloring] = None
    best_value = Fraction(-1)
    for coloring in iter_colorings(g, lists):
        value = weights.value(coloring)
        if value > best_value:
            best, best_value = coloring, value
    if best is None:
        return None, Fraction(0)
    return best, weights.ratio(best)


def estimate_avoidance(
    g: PlanarGraph,
    lists: ListAssignment,
    vertices: Iterable[int],
    color: int,
    trials: int,
    seed: int = 0,
    k: int = DEFAULT_K,
    b: int = DEFAULT_B,
) -> AvoidanceEstimate:
    """
    How often no vertex of I receives color c, against p^|I| with p = k^-b

    Meant for tiny graphs: the bound is astronomically small, so the check only
    shows the event is not empirically ruled out.
    """
    members = tuple(sorted(set(vertices)))
    for v in members:
        if v not in g:
            raise PreconditionViolated(get_user_friendly_error("unknown_vertex", vertex=v), field="vertices")
    hits = 0
    for s in range(seed, seed + trials):
        coloring = sample_coloring(g, lists, s)
        if all(coloring[v] != color for v in members):
            hits += 1
    bound = Fraction(1, k ** (b * len(members)))
    return AvoidanceEstimate(vertices=members, color=color, trials=trials, hits=hits, bound=bound)


def check_counting_bound(
    g: PlanarGraph, lists: ListAssignment, b: int = DEFAULT_B, cap: Optional[int] = None
) -> Tuple[int, float, bool]:
    """Exact number of L-colorings against 2^(|V|/b)."""
    count = count_colorings(g, lists) if cap is None else count_colorings(g, lists, cap=cap)
    bound = 2 ** (len(g) / b)
    return count, bound, count >= bound
