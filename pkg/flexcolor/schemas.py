"""Pydantic schemas for request/response validation"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from flexcolor.constants import DEFAULT_B, DEFAULT_D, DEFAULT_K, ORACLE_VERTEX_CAP


# ===== GRAPH SCHEMAS =====

class GraphIn(BaseModel):
    n: int = Field(..., ge=0)
    rotation: List[List[int]] = Field(..., description="Clockwise neighbors of vertex i at index i")
    outer: Optional[List[int]] = Field(None, description="Cycle bounding the outer face")

    @field_validator("rotation")
    @classmethod
    def validate_rotation(cls, v, info):
        n = info.data.get("n")
        if n is not None and len(v) != n:
            raise ValueError(f"rotation must list {n} vertices, got {len(v)}")
        return v


class FaceOut(BaseModel):
    id: int
    length: int
    walk: List[int]


class FacesResponse(BaseModel):
    faces: List[FaceOut]
    outer: Optional[int] = None
    euler: int


class ListsIn(BaseModel):
    graph: GraphIn
    lists: Optional[Dict[int, List[int]]] = Field(None, description="Defaults to {1..k} everywhere")
    k: int = Field(default=DEFAULT_K, ge=3)


# ===== REDUCIBILITY SCHEMAS =====

class ReducibleRequest(BaseModel):
    graph: GraphIn
    subgraph: List[int] = Field(..., min_length=1)
    d: int = Field(default=DEFAULT_D, ge=1)
    k: int = Field(default=DEFAULT_K, ge=3)
    cap: int = Field(default=ORACLE_VERTEX_CAP, ge=1, le=16)


class ReducibleResponse(BaseModel):
    reducible: bool
    condition: Optional[str] = None
    vertex: Optional[int] = None
    independent_set: List[int] = []
    lists: Optional[Dict[int, List[int]]] = None


# ===== CONFIGURATION SCHEMAS =====

class ConfigurationRequest(BaseModel):
    graph: GraphIn
    verify: bool = False
    cap: int = Field(default=ORACLE_VERTEX_CAP, ge=1, le=16)


class StalkOut(BaseModel):
    kind: str
    root: int
    bud: Optional[int] = None
    vertices: List[int]
    extension: Optional[str] = None


class ConfigurationResponse(BaseModel):
    kind: str
    vertices: List[int]
    size_bound: int
    center: Optional[int] = None
    stalks: List[StalkOut] = []
    oracle_verified: Optional[bool] = None


# ===== DISCHARGING SCHEMAS =====

class DischargeResponse(BaseModel):
    total: str
    negative: List[str]
    violations: List[int]
    lines: List[str]


# ===== COLORING SCHEMAS =====

class ColorResponse(BaseModel):
    colorable: bool
    coloring: Optional[Dict[int, int]] = None


class CountResponse(BaseModel):
    count: int
    bound: float
    holds: bool
    b: int = DEFAULT_B


class EstimateRequest(ListsIn):
    trials: int = Field(default=100, ge=1, le=10000)
    seed: int = 0


class HitOut(BaseModel):
    vertex: int
    color: int
    count: int


class EstimateResponse(BaseModel):
    trials: int
    min_prob: str
    hits: List[HitOut]


# ===== ERROR SCHEMAS =====

class ErrorDetail(BaseModel):
    field: Optional[str] = None
    message: str
    type: Optional[str] = None


class ErrorResponse(BaseModel):
    error: str
    code: Optional[str] = None
    details: Optional[List[ErrorDetail]] = None
    status_code: int
