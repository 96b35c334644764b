"""Error handling utilities and custom exceptions"""

import traceback
from typing import Any, Dict, Iterable, List, Optional

from fastapi import Request
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from flexcolor.constants import EXIT_INPUT_ERROR, EXIT_THEOREM_VIOLATION
from flexcolor.logging_config import get_logger
from flexcolor.schemas import ErrorDetail, ErrorResponse

logger = get_logger(__name__)


# ===== CUSTOM EXCEPTIONS =====

class FlexColorError(Exception):
    """Base exception for flexcolor"""

    code = "error"

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_INPUT_ERROR,
        status_code: int = 400,
        details: Optional[List[Dict[str, Any]]] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.status_code = status_code
        self.details = details or []
        super().__init__(self.message)

    def one_line(self) -> str:
        """Machine-readable single line: `error <code> <message>`"""
        return f"error {self.code} {' '.join(self.message.split())}"


class ParseError(FlexColorError):
    """Raised when an input file does not follow its line format"""

    code = "parse"

    def __init__(self, reason: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(
            message=f"line {line} column {column}: {reason}",
            details=[{"field": f"{line}:{column}", "message": reason, "type": "parse_error"}],
        )


class AsymmetricRotation(FlexColorError):
    """Raised when u lists v in its rotation but v does not list u"""

    code = "asymmetric-rotation"

    def __init__(self, u: int, v: int):
        super().__init__(
            message=f"vertex {u} lists {v} but {v} does not list {u}",
            details=[{"field": "rotation", "message": f"{u}->{v}", "type": "asymmetric"}],
        )


class DuplicateNeighbor(FlexColorError):
    """Raised for self-loops, repeated neighbors or unknown neighbor ids"""

    code = "duplicate-neighbor"

    def __init__(self, vertex: int, neighbor: int, reason: str = "listed twice"):
        super().__init__(
            message=f"vertex {vertex}: neighbor {neighbor} {reason}",
            details=[{"field": "rotation", "message": f"{vertex}:{neighbor}", "type": "duplicate"}],
        )


class PreconditionViolated(FlexColorError):
    """Raised when an operation is called outside its precondition"""

    code = "precondition"

    def __init__(self, message: str, field: str = "graph"):
        super().__init__(
            message=message,
            details=[{"field": field, "message": message, "type": "precondition"}],
        )


class Disconnected(FlexColorError):
    """Raised when a connected graph is required"""

    code = "disconnected"

    def __init__(self, components: int):
        super().__init__(
            message=f"graph must be connected, found {components} components",
            details=[{"field": "graph", "message": str(components), "type": "disconnected"}],
        )


class NotTriangleFree(FlexColorError):
    """Raised when the input graph contains a triangle"""

    code = "not-triangle-free"

    def __init__(self, triangle: Iterable[int]):
        vertices = " ".join(str(v) for v in triangle)
        super().__init__(
            message=f"triangle {vertices}",
            details=[{"field": "graph", "message": vertices, "type": "triangle"}],
        )


class CapExceeded(FlexColorError):
    """Raised when an exhaustive computation is asked for more vertices than its cap"""

    code = "cap-exceeded"

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(
            message=f"{what} on {size} vertices exceeds the cap of {cap}",
            status_code=422,
            details=[{"field": "cap", "message": f"{size} > {cap}", "type": "limit_exceeded"}],
        )


class BudgetExceeded(FlexColorError):
    """Raised when an enumeration runs past its wall-clock budget"""

    code = "budget-exceeded"

    def __init__(self, what: str, seconds: float):
        super().__init__(
            message=f"{what} exceeded the time budget of {seconds:g}s",
            status_code=422,
            details=[{"field": "time_budget", "message": f"{seconds:g}", "type": "limit_exceeded"}],
        )


class TheoremViolation(FlexColorError):
    """Raised when the configuration search fails where the structure theorem guarantees success"""

    code = "theorem-violation"

    def __init__(self, message: str, details: Optional[List[Dict[str, Any]]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_THEOREM_VIOLATION,
            status_code=500,
            details=details,
        )


class NoRichVertexOnNegativeFace(TheoremViolation):
    """Raised by R3 when a negatively charged 4-face has no rich vertex"""

    code = "no-rich-vertex"

    def __init__(self, face: int, charge: str):
        super().__init__(
            message=f"face {face} has charge {charge} after R0-R2 and no rich vertex",
            details=[{"field": f"face {face}", "message": charge, "type": "discharging"}],
        )


class InternalNoColoring(TheoremViolation):
    """Raised by the sampler when a removed configuration cannot be colored"""

    code = "internal-no-coloring"

    def __init__(self, vertices: Iterable[int]):
        members = " ".join(str(v) for v in sorted(vertices))
        super().__init__(
            message=f"configuration {members} has no coloring extending the rest",
            details=[{"field": "configuration", "message": members, "type": "sampler"}],
        )


# ===== ERROR HANDLERS =====

async def flexcolor_exception_handler(request: Request, exc: FlexColorError) -> JSONResponse:
    """Handle flexcolor exceptions"""
    error_details = [
        ErrorDetail(
            field=detail.get("field"),
            message=detail.get("message", ""),
            type=detail.get("type"),
        )
        for detail in exc.details
    ]

    error_response = ErrorResponse(
        error=exc.message,
        code=exc.code,
        details=error_details if error_details else None,
        status_code=exc.status_code,
    )

    if exc.exit_code == EXIT_THEOREM_VIOLATION:
        logger.error(f"{exc.code}: {exc.message}")
    else:
        logger.warning(f"{exc.code}: {exc.message} (status={exc.status_code})")

    return JSONResponse(status_code=exc.status_code, content=error_response.model_dump())


async def validation_exception_handler(request: Request, exc: ValidationError) -> JSONResponse:
    """Handle Pydantic validation errors"""
    error_details = [
        ErrorDetail(
            field=".".join(str(loc) for loc in error["loc"]),
            message=error["msg"],
            type=error["type"],
        )
        for error in exc.errors()
    ]

    error_response = ErrorResponse(
        error="Validation error",
        code="validation",
        details=error_details,
        status_code=422,
    )

    logger.warning(f"Validation error: {exc.errors()}")

    return JSONResponse(status_code=422, content=error_response.model_dump())


async def general_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """Handle unexpected errors"""
    logger.error(f"Unexpected error: {str(exc)}")
    logger.error(traceback.format_exc())

    error_response = ErrorResponse(
        error=get_user_friendly_error("server_error"),
        code="internal",
        status_code=500,
    )

    return JSONResponse(status_code=500, content=error_response.model_dump())


# ===== USER-FRIENDLY ERROR MESSAGES =====

ERROR_MESSAGES = {
    "missing_outer": "No face of length at most five bounded by a cycle; cannot choose an outer face.",
    "min_degree": "Vertex {vertex} has degree {degree}; remove small configurations first.",
    "short_cycle_not_facial": "Cycle {cycle} of length at most five does not bound a face.",
    "outer_not_designated": "The graph has no designated outer face.",
    "outer_not_a_cycle": "The outer face is not bounded by a cycle of length at most five.",
    "not_a_face": "No face is bounded by {cycle}.",
    "unknown_vertex": "Vertex {vertex} is not in the graph.",
    "avoid_needs_color": "--avoid needs --color.",
    "missing_list": "Vertex {vertex} has no list.",
    "color_not_in_list": "Color {color} is not in the list of vertex {vertex}.",
    "short_list": "Vertex {vertex} has a list of size {size}; at least {k} colors are required.",
    "server_error": "An unexpected error occurred.",
}


def get_user_friendly_error(error_key: str, **kwargs) -> str:
    """Get a user-friendly error message with optional formatting"""
    message = ERROR_MESSAGES.get(error_key, ERROR_MESSAGES["server_error"])
    return message.format(**kwargs) if kwargs else message
