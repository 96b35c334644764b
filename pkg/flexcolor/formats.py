"""Line-oriented text formats for graphs, lists, requests and weights

graph:    planar <n> / v <id> : <nbr> ... (clockwise) / outer : <v0> <v1> ...
lists:    L <vertex> : <c1> <c2> ...
request:  r <vertex> <color>
weights:  w <vertex> <color> <weight>   (decimal or p/q)

Blank lines and # comments are ignored everywhere.
"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from flexcolor.exceptions import ParseError
from flexcolor.flexibility import Request, WeightedRequest
from flexcolor.list_coloring import ListAssignment
from flexcolor.planar_graph import PlanarGraph, build_from_rotation, with_outer_face

Token = Tuple[str, int]


def _lines(text: str) -> Iterator[Tuple[int, List[Token]]]:
    """Numbered non-empty lines as (token, column) lists, comments stripped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens: List[Token] = []
        column = 0
        for word in line.split():
            column = line.index(word, column)
            tokens.append((word, column + 1))
            column += len(word)
        if tokens:
            yield number, tokens


def _int(token: Token, number: int, what: str) -> int:
    word, column = token
    try:
        value = int(word)
    except ValueError:
        raise ParseError(f"expected {what}, got '{word}'", number, column) from None
    if value < 0:
        raise ParseError(f"{what} must be nonnegative, got {value}", number, column)
    return value


def _expect(tokens: List[Token], index: int, word: str, number: int) -> None:
    if len(tokens) <= index or tokens[index][0] != word:
        column = tokens[index][1] if len(tokens) > index else tokens[-1][1] + len(tokens[-1][0])
        raise ParseError(f"expected '{word}'", number, column)


def _arity(tokens: List[Token], count: int, number: int, shape: str) -> None:
    if len(tokens) != count:
        column = tokens[min(len(tokens), count) - 1][1]
        raise ParseError(f"expected '{shape}'", number, column)


# ===== GRAPHS =====

def parse_graph(text: str) -> PlanarGraph:
    """
    Parse the graph format

    Raises:
        ParseError: malformed line (with line and column)
        AsymmetricRotation, DuplicateNeighbor: the rotation is not a simple graph
        PreconditionViolated: the outer line names no face
    """
    n: Optional[int] = None
    rotation: Dict[int, List[int]] = {}
    outer: Optional[List[int]] = None
    last = 0
    for number, tokens in _lines(text):
        last = number
        head = tokens[0][0]
        if n is None:
            if head != "planar":
                raise ParseError("expected 'planar <n>'", number, tokens[0][1])
            _arity(tokens, 2, number, "planar <n>")
            n = _int(tokens[1], number, "vertex count")
            continue
        if head == "v":
            if len(tokens) < 3:
                raise ParseError("expected 'v <id> : <neighbors>'", number, tokens[-1][1])
            v = _int(tokens[1], number, "vertex id")
            if v >= n:
                raise ParseError(f"vertex {v} out of range 0..{n - 1}", number, tokens[1][1])
            if v in rotation:
                raise ParseError(f"vertex {v} listed twice", number, tokens[1][1])
            _expect(tokens, 2, ":", number)
            rotation[v] = [_int(t, number, "neighbor id") for t in tokens[3:]]
        elif head == "outer":
            if outer is not None:
                raise ParseError("outer face given twice", number, tokens[0][1])
            _expect(tokens, 1, ":", number)
            outer = [_int(t, number, "vertex id") for t in tokens[2:]]
            if len(outer) < 3:
                raise ParseError("outer face needs at least three vertices", number, tokens[0][1])
        else:
            raise ParseError(f"unknown record '{head}'", number, tokens[0][1])

    if n is None:
        raise ParseError("empty graph file", max(last, 1))
    missing = sorted(set(range(n)) - set(rotation))
    if missing:
        raise ParseError(f"no line for vertex {missing[0]}", max(last, 1))
    g = build_from_rotation(n, rotation)
    return with_outer_face(g, outer) if outer is not None else g


def emit_graph(g: PlanarGraph) -> str:
    lines = [f"planar {len(g)}"]
    lines += [f"v {v} : {' '.join(map(str, nbrs))}".rstrip() for v, nbrs in g.rotation]
    outer = g.outer
    if outer is not None and outer.is_cycle:
        lines.append(f"outer : {' '.join(map(str, outer.walk))}")
    return "\n".join(lines) + "\n"


def read_graph(path: Path) -> PlanarGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


# ===== LISTS =====

def parse_lists(text: str) -> Dict[int, FrozenSet[int]]:
    lists: Dict[int, FrozenSet[int]] = {}
    for number, tokens in _lines(text):
        if tokens[0][0] != "L":
            raise ParseError(f"expected 'L <vertex> : <colors>', got '{tokens[0][0]}'", number, tokens[0][1])
        if len(tokens) < 3:
            raise ParseError("expected 'L <vertex> : <colors>'", number, tokens[-1][1])
        v = _int(tokens[1], number, "vertex id")
        if v in lists:
            raise ParseError(f"list for vertex {v} given twice", number, tokens[1][1])
        _expect(tokens, 2, ":", number)
        lists[v] = frozenset(_int(t, number, "color") for t in tokens[3:])
    return lists


def emit_lists(lists: ListAssignment) -> str:
    return "".join(
        f"L {v} : {' '.join(map(str, sorted(lists[v])))}".rstrip() + "\n" for v in sorted(lists)
    )


def default_lists(g: PlanarGraph, k: int) -> Dict[int, FrozenSet[int]]:
    """Every vertex gets {1, ..., k}."""
    colors = frozenset(range(1, k + 1))
    return {v: colors for v in g.vertices}


# ===== REQUESTS =====

def parse_request(text: str) -> Request:
    entries: Dict[int, int] = {}
    for number, tokens in _lines(text):
        if tokens[0][0] != "r":
            raise ParseError(f"expected 'r <vertex> <color>', got '{tokens[0][0]}'", number, tokens[0][1])
        _arity(tokens, 3, number, "r <vertex> <color>")
        v = _int(tokens[1], number, "vertex id")
        if v in entries:
            raise ParseError(f"vertex {v} requested twice", number, tokens[1][1])
        entries[v] = _int(tokens[2], number, "color")
    return Request.from_mapping(entries)


def emit_request(request: Request) -> str:
    return "".join(f"r {v} {c}\n" for v, c in request.entries)


def _weight(token: Token, number: int) -> Fraction:
    word, column = token
    try:
        value = Fraction(word)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a weight (decimal or p/q), got '{word}'", number, column) from None
    if value < 0:
        raise ParseError(f"weight must be nonnegative, got {word}", number, column)
    return value


def parse_weights(text: str) -> WeightedRequest:
    weights: Dict[Tuple[int, int], Fraction] = {}
    for number, tokens in _lines(text):
        if tokens[0][0] != "w":
            raise ParseError(
                f"expected 'w <vertex> <color> <weight>', got '{tokens[0][0]}'", number, tokens[0][1]
            )
        _arity(tokens, 4, number, "w <vertex> <color> <weight>")
        pair = (_int(tokens[1], number, "vertex id"), _int(tokens[2], number, "color"))
        if pair in weights:
            raise ParseError(f"weight for vertex {pair[0]} color {pair[1]} given twice", number, tokens[1][1])
        weights[pair] = _weight(tokens[3], number)
    return WeightedRequest.from_mapping(weights)


def emit_weights(weights: WeightedRequest) -> str:
    return "".join(f"w {v} {c} {w.numerator}/{w.denominator}\n" for (v, c), w in weights.weights)
