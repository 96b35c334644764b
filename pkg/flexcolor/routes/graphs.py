"""Graph routes - JSON access to the pipeline

Every endpoint takes the graph as `n`, a clockwise `rotation` per vertex and an
optional `outer` cycle, and mirrors one CLI subcommand.
"""

from typing import Dict, FrozenSet, Optional

from fastapi import APIRouter

from flexcolor.configurations import Configuration, ExtendedStalk, find_reducible
from flexcolor.discharging import format_rational, prepare_and_verify
from flexcolor.flexibility import check_counting_bound, estimate_probabilities
from flexcolor.formats import default_lists
from flexcolor.list_coloring import solve
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import PlanarGraph, build_from_rotation, euler_characteristic, with_outer_face
from flexcolor.reducibility import is_reducible
from flexcolor.schemas import (
    ColorResponse,
    ConfigurationRequest,
    ConfigurationResponse,
    CountResponse,
    DischargeResponse,
    EstimateRequest,
    EstimateResponse,
    FaceOut,
    FacesResponse,
    GraphIn,
    HitOut,
    ListsIn,
    ReducibleRequest,
    ReducibleResponse,
    StalkOut,
)

logger = get_logger(__name__)

router = APIRouter(prefix="/api", tags=["graphs"])


def to_graph(payload: GraphIn) -> PlanarGraph:
    g = build_from_rotation(payload.n, payload.rotation)
    return with_outer_face(g, payload.outer) if payload.outer else g


def to_lists(payload: ListsIn, g: PlanarGraph) -> Dict[int, FrozenSet[int]]:
    if payload.lists is None:
        return default_lists(g, payload.k)
    return {v: frozenset(colors) for v, colors in payload.lists.items()}


def configuration_out(config: Configuration) -> ConfigurationResponse:
    stalks = []
    for witness in config.stalks:
        stalk = witness.stalk if isinstance(witness, ExtendedStalk) else witness
        stalks.append(
            StalkOut(
                kind=stalk.kind,
                root=stalk.root,
                bud=stalk.bud,
                vertices=sorted(witness.vertices),
                extension=witness.extension if isinstance(witness, ExtendedStalk) else None,
            )
        )
    return ConfigurationResponse(
        kind=config.kind,
        vertices=sorted(config.vertices),
        size_bound=config.size_bound,
        center=config.center,
        stalks=stalks,
        oracle_verified=config.oracle_verified,
    )


@router.post("/faces", response_model=FacesResponse)
async def faces(payload: GraphIn):
    """Facial walks of the embedding"""
    g = to_graph(payload)
    return FacesResponse(
        faces=[FaceOut(id=f.id, length=f.length, walk=list(f.walk)) for f in g.faces],
        outer=g.outer_face,
        euler=euler_characteristic(g),
    )


@router.post("/reducible", response_model=ReducibleResponse)
async def reducible(payload: ReducibleRequest):
    """(d,k)-reducibility of an induced subgraph, with a failing assignment when not"""
    g = to_graph(payload.graph)
    verdict = is_reducible(g, payload.subgraph, d=payload.d, k=payload.k, cap=payload.cap)
    logger.info(f"Reducibility of {sorted(payload.subgraph)}: {verdict.reducible}")
    witness = verdict.witness
    if witness is None:
        return ReducibleResponse(reducible=verdict.reducible)
    return ReducibleResponse(
        reducible=verdict.reducible,
        condition=witness.condition,
        vertex=witness.vertex,
        independent_set=list(witness.independent_set),
        lists={v: sorted(colors) for v, colors in witness.lists.items()},
    )


@router.post("/configuration", response_model=ConfigurationResponse)
async def configuration(payload: ConfigurationRequest):
    """A reducible configuration of at most 31 vertices"""
    g = to_graph(payload.graph)
    return configuration_out(find_reducible(g, verify=payload.verify, cap=payload.cap))


@router.post("/discharge", response_model=DischargeResponse)
async def discharge(payload: GraphIn):
    """Charge ledger of the minimal disk"""
    report = prepare_and_verify(to_graph(payload))
    return DischargeResponse(
        total=format_rational(report.total),
        negative=[f"{kind} {ident} {format_rational(q)}" for kind, ident, q in report.negative_elements],
        violations=report.violations(),
        lines=report.lines(),
    )


@router.post("/color", response_model=ColorResponse)
async def color(payload: ListsIn):
    """An L-coloring, or colorable=false"""
    g = to_graph(payload.graph)
    coloring: Optional[Dict[int, int]] = solve(g, to_lists(payload, g))
    return ColorResponse(colorable=coloring is not None, coloring=coloring)


@router.post("/count", response_model=CountResponse)
async def count(payload: ListsIn):
    """Exact number of L-colorings next to 2^(n/b)"""
    g = to_graph(payload.graph)
    total, bound, holds = check_counting_bound(g, to_lists(payload, g))
    return CountResponse(count=total, bound=bound, holds=holds)


@router.post("/estimate", response_model=EstimateResponse)
async def estimate(payload: EstimateRequest):
    """Empirical (vertex, color) probabilities of the recursive sampler"""
    g = to_graph(payload.graph)
    stats = estimate_probabilities(g, to_lists(payload, g), payload.trials, payload.seed)
    return EstimateResponse(
        trials=stats.trials,
        min_prob=format_rational(stats.min_empirical_prob),
        hits=[HitOut(vertex=v, color=c, count=stats.count(v, c)) for v, c in stats.pairs],
    )
