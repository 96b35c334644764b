"""Exact-rational discharging on disk graphs

Charges start at deg - 4 (deg - 7/3 on the outer cycle C) for vertices and |f| - 4
for inner faces. Rules R0, R1 and R2 move charge from faces; rule R3 has rich
vertices pay for 4-faces left negative. Everything is a Fraction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from flexcolor.constants import CHARGE_DENOMINATOR, MAX_SHORT_CYCLE
from flexcolor.exceptions import (
    NoRichVertexOnNegativeFace,
    PreconditionViolated,
    TheoremViolation,
    get_user_friendly_error,
)
from flexcolor.logging_config import get_logger
from flexcolor.planar_graph import (
    Face,
    PlanarGraph,
    find_minimal_nonface_cycle,
    is_connected,
    require_triangle_free,
    select_outer_face,
    subgraph_in_disk,
)

logger = get_logger(__name__)

THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)

# Token for "degree at least five, or on C"
BIG = "5+"

VERY_LIGHT_PATTERNS = ((BIG, "3", "4", "3"),)
LIGHT_PATTERNS = (
    (BIG, "3", BIG, "3"),
    (BIG, "4", "4", "3"),
    (BIG, "4", "3", "4"),
)
TWO_RICH_PATTERN = (BIG, BIG, "4", "3")

BUCKETS = ("nonneg", "very-light", "light", "good", "violation")


def format_rational(q: Fraction) -> str:
    """p/q, always with an explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


# ===== DOMAIN TYPES =====

@dataclass
class ChargeMap:
    """Charge per vertex and per face id at one stage (ch0, ch1 or ch2)."""

    vertex_charge: Dict[int, Fraction]
    face_charge: Dict[int, Fraction]
    stage: str = "ch0"

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), Fraction(0)) + sum(self.face_charge.values(), Fraction(0))

    def advanced(self, stage: str) -> "ChargeMap":
        return ChargeMap(dict(self.vertex_charge), dict(self.face_charge), stage)

    def negative_vertices(self) -> List[Tuple[int, Fraction]]:
        return sorted((v, q) for v, q in self.vertex_charge.items() if q < 0)

    def negative_faces(self) -> List[Tuple[int, Fraction]]:
        return sorted((f, q) for f, q in self.face_charge.items() if q < 0)


@dataclass(frozen=True)
class FaceClass:
    face: int
    pattern: Optional[Tuple[str, ...]] = None
    flags: FrozenSet[str] = frozenset()
    rich_vertices: FrozenSet[int] = frozenset()

    @property
    def n_r(self) -> int:
        return len(self.rich_vertices)

    @property
    def poor(self) -> bool:
        return "poor" in self.flags

    @property
    def light(self) -> bool:
        return "light" in self.flags

    @property
    def very_light(self) -> bool:
        return "very-light" in self.flags

    def tags(self) -> str:
        parts = ["/".join(self.pattern)] if self.pattern else []
        parts.extend(sorted(self.flags))
        return ",".join(parts) if parts else "-"


@dataclass
class DischargeReport:
    cycle: Tuple[int, ...]
    ch0: ChargeMap
    ch1: ChargeMap
    ch2: ChargeMap
    classes: Dict[int, FaceClass]
    audit: Dict[int, str]
    payments: List[Tuple[int, int, Fraction]] = field(default_factory=list)
    unpaid: List[int] = field(default_factory=list)
    payers: FrozenSet[int] = frozenset()
    configuration: Optional[object] = None

    @property
    def total(self) -> Fraction:
        return self.ch0.total()

    @property
    def expected_total(self) -> Fraction:
        return Fraction(-4) + Fraction(2, 3) * len(self.cycle)

    @property
    def negative_elements(self) -> List[Tuple[str, int, Fraction]]:
        return [("vertex", v, q) for v, q in self.ch2.negative_vertices()] + [
            ("face", f, q) for f, q in self.ch2.negative_faces()
        ]

    def violations(self) -> List[int]:
        return sorted(f for f, bucket in self.audit.items() if bucket == "violation")

    def lines(self) -> List[str]:
        out = [f"total {format_rational(self.total)}"]
        out += [f"neg vertex {v} {format_rational(q)}" for v, q in self.ch2.negative_vertices()]
        out += [f"neg face {f} {format_rational(q)}" for f, q in self.ch2.negative_faces()]
        for f in sorted(self.classes):
            out.append(
                f"face {f} class {self.classes[f].tags()} "
                f"ch1 {format_rational(self.ch1.face_charge[f])} ch2 {format_rational(self.ch2.face_charge[f])}"
            )
        out += [f"audit face {f} {self.audit[f]}" for f in sorted(self.audit)]
        out += [
            f"pay {v} face {f} {format_rational(q)}"
            for v, f, q in sorted(self.payments)
            if v in self.payers
        ]
        out += [f"unpaid face {f}" for f in self.unpaid]
        config = self.configuration
        if config is not None:
            out.append(f"config {config.kind} vertices: {' '.join(map(str, sorted(config.vertices)))}")
        return out


# ===== HELPERS =====

def _cycle_vertices(g: PlanarGraph) -> FrozenSet[int]:
    outer = g.outer
    if outer is None:
        raise PreconditionViolated("discharging needs a designated outer face")
    return outer.vertex_set


def _deg3_off_c(g: PlanarGraph, c: FrozenSet[int], v: int) -> int:
    return sum(1 for u in g.neighbors(v) if u not in c and g.degree(u) == 3)


def _token(g: PlanarGraph, c: FrozenSet[int], v: int) -> str:
    if v in c or g.degree(v) >= 5:
        return BIG
    return str(g.degree(v))


def _dihedral(seq: Tuple[str, ...]) -> List[Tuple[str, ...]]:
    n = len(seq)
    rev = tuple(reversed(seq))
    return [seq[i:] + seq[:i] for i in range(n)] + [rev[i:] + rev[:i] for i in range(n)]


def _arrangement(face: Face, pattern: Tuple[str, ...], tokens: Dict[int, str]) -> Optional[Tuple[int, ...]]:
    """Boundary vertices ordered to match the pattern, or None."""
    walk = face.walk
    n = len(walk)
    rev = tuple(reversed(walk))
    for seq in [walk[i:] + walk[:i] for i in range(n)] + [rev[i:] + rev[:i] for i in range(n)]:
        if tuple(tokens[v] for v in seq) == pattern:
            return seq
    return None


def _is_four_cycle(face: Face) -> bool:
    return face.is_cycle and face.length == 4


# ===== CHARGES =====

def initial_charges(g: PlanarGraph) -> ChargeMap:
    """
    ch0: deg - 4 off C, deg - 7/3 on C, |f| - 4 for inner faces, 0 for the outer face

    Args:
        g: Disk graph with the outer face bounded by C

    Returns:
        ChargeMap at stage ch0
    """
    c = _cycle_vertices(g)
    vertex_charge = {
        v: Fraction(g.degree(v)) - (Fraction(7, 3) if v in c else 4) for v in g.vertices
    }
    face_charge = {
        face.id: Fraction(0) if face.id == g.outer_face else Fraction(face.length - 4) for face in g.faces
    }
    return ChargeMap(vertex_charge, face_charge, "ch0")


def is_poor(g: PlanarGraph, c: FrozenSet[int], face: Face) -> bool:
    if not _is_four_cycle(face) or face.id == g.outer_face:
        return False
    if any(v in c or g.degree(v) > 4 for v in face.walk):
        return False
    return any(g.degree(v) == 3 or _deg3_off_c(g, c, v) >= 2 for v in face.walk)


def rich_vertices(g: PlanarGraph, c: FrozenSet[int], face: Face) -> FrozenSet[int]:
    """Counted once per distinct vertex, however many angles it has on the face."""
    rich = set()
    for v in face.vertex_set:
        if not (v in c or g.degree(v) >= 5):
            continue
        if any(u not in c and g.degree(u) <= 4 for u in face.face_neighbors(v)):
            rich.add(v)
    return frozenset(rich)


def classify_face(g: PlanarGraph, c: Iterable[int], face: Face) -> FaceClass:
    """
    Degree pattern, poor/light/very-light flags and rich vertices of a face

    Faces that are not 4-cycles get no pattern and no flags.
    """
    c = frozenset(c)
    if not _is_four_cycle(face) or face.id == g.outer_face:
        return FaceClass(face=face.id)
    tokens = {v: _token(g, c, v) for v in face.walk}
    arrangements = _dihedral(tuple(tokens[v] for v in face.walk))
    rank = {BIG: 0, "3": 1, "4": 2}
    pattern = min(arrangements, key=lambda seq: [rank.get(t, 3) for t in seq])

    flags = set()
    if is_poor(g, c, face):
        flags.add("poor")
    if any(p in arrangements for p in VERY_LIGHT_PATTERNS):
        flags.update({"very-light", "light"})
    if any(p in arrangements for p in LIGHT_PATTERNS):
        flags.add("light")
    heavy_four = _arrangement(face, (BIG, "4", BIG, "3"), tokens)
    if heavy_four is not None and _deg3_off_c(g, c, heavy_four[1]) >= 2:
        flags.add("light")
    return FaceClass(face=face.id, pattern=pattern, flags=frozenset(flags), rich_vertices=rich_vertices(g, c, face))


def classify_faces(g: PlanarGraph) -> Dict[int, FaceClass]:
    c = _cycle_vertices(g)
    return {face.id: classify_face(g, c, face) for face in g.faces if face.id != g.outer_face}


# ===== RULES =====

def apply_r0_r1_r2(g: PlanarGraph, ch0: ChargeMap) -> ChargeMap:
    """
    ch1 from ch0

    R0: a face sends 1/3 to the tip of each angle that is an off-C degree-3 vertex or
    a degree-2 vertex of C. R1: at an off-C degree-4 tip whose two other neighbors are
    off-C degree-3 vertices, the face sends 1/6 to the face of the opposite angle.
    R2: across an edge of two off-C degree-4 vertices, neither with two off-C degree-3
    neighbors, a face sends 1/6 to the other face when that face is poor.
    """
    if ch0.stage != "ch0":
        raise PreconditionViolated(f"rules R0-R2 start from ch0, got {ch0.stage}")
    c = _cycle_vertices(g)
    ch1 = ch0.advanced("ch1")
    poor = {face.id for face in g.faces if is_poor(g, c, face)}

    for face in g.faces:
        if face.id == g.outer_face:
            continue
        for tail, tip, head in face.angles():
            deg = g.degree(tip)
            if (tip not in c and deg == 3) or (tip in c and deg == 2):
                ch1.face_charge[face.id] -= THIRD
                ch1.vertex_charge[tip] += THIRD
            if tip not in c and deg == 4:
                rotation = g.neighbors(tip)
                i = rotation.index(tail)
                opposite_tail, opposite_head = rotation[(i + 2) % 4], rotation[(i + 3) % 4]
                if all(u not in c and g.degree(u) == 3 for u in (opposite_tail, opposite_head)):
                    target = g.face_of_dart(opposite_tail, tip).id
                    ch1.face_charge[face.id] -= SIXTH
                    ch1.face_charge[target] += SIXTH
        for u, v in face.darts:
            if u in c or v in c or g.degree(u) != 4 or g.degree(v) != 4:
                continue
            if _deg3_off_c(g, c, u) >= 2 or _deg3_off_c(g, c, v) >= 2:
                continue
            other = g.face_of_dart(v, u).id
            if other != face.id and other in poor:
                ch1.face_charge[face.id] -= SIXTH
                ch1.face_charge[other] += SIXTH
    return ch1


def apply_r3(
    g: PlanarGraph, ch1: ChargeMap, classes: Dict[int, FaceClass], strict: bool = True
) -> Tuple[ChargeMap, List[Tuple[int, int, Fraction]], List[int]]:
    """
    ch2 from ch1: every rich vertex of a negative 4-face sends -ch1(f)/n_r to it

    Args:
        g: Disk graph
        ch1: Charges after R0-R2
        classes: FaceClass per inner face
        strict: Raise on a negative 4-face without rich vertices instead of listing it

    Returns:
        ch2, the payments (vertex, face, amount) and the unpaid faces

    Raises:
        NoRichVertexOnNegativeFace: strict and some negative 4-face has n_r = 0
    """
    if ch1.stage != "ch1":
        raise PreconditionViolated(f"rule R3 starts from ch1, got {ch1.stage}")
    ch2 = ch1.advanced("ch2")
    payments: List[Tuple[int, int, Fraction]] = []
    unpaid: List[int] = []
    for face in g.faces:
        charge = ch1.face_charge[face.id]
        if face.id == g.outer_face or face.length != 4 or charge >= 0:
            continue
        cls = classes[face.id]
        if cls.n_r == 0:
            if strict:
                raise NoRichVertexOnNegativeFace(face.id, format_rational(charge))
            logger.warning(f"Face {face.id} has charge {charge} and no rich vertex")
            unpaid.append(face.id)
            continue
        share = -charge / cls.n_r
        for v in sorted(cls.rich_vertices):
            ch2.vertex_charge[v] -= share
            ch2.face_charge[face.id] += share
            payments.append((v, face.id, share))
    return ch2, payments, unpaid


# ===== AUDIT =====

def _good_bucket(g: PlanarGraph, c: FrozenSet[int], face: Face, cls: FaceClass) -> bool:
    from flexcolor.configurations import is_excellent, stalks_by_root

    two_rich = cls.pattern is not None and TWO_RICH_PATTERN in _dihedral(cls.pattern)
    for v in cls.rich_vertices:
        grouped = stalks_by_root(g, c, v)
        ok = False
        for x in sorted(face.face_neighbors(v)):
            if not any(stalk.bud is None for stalk in grouped.get(x, [])):
                continue
            if two_rich or is_excellent(g, c, v, x) is not None:
                ok = True
                break
        if not ok:
            return False
    return True


def audit_face(g: PlanarGraph, c: FrozenSet[int], face: Face, cls: FaceClass, charge: Fraction) -> str:
    """Which case of the first-phase face analysis a face falls into."""
    if charge >= 0:
        return "nonneg"
    if face.length != 4:
        return "violation"
    n_r = cls.n_r
    if cls.very_light and charge == Fraction(-n_r, 2):
        return "very-light"
    if cls.light and Fraction(-n_r, 3) <= charge < Fraction(-n_r, 6):
        return "light"
    if Fraction(-n_r, 6) <= charge < 0 and _good_bucket(g, c, face, cls):
        return "good"
    return "violation"


# ===== VERIFIER =====

def _check_disk(g: PlanarGraph) -> FrozenSet[int]:
    outer = g.outer
    if outer is None:
        raise PreconditionViolated(get_user_friendly_error("outer_not_designated"))
    if not outer.is_cycle or outer.length > MAX_SHORT_CYCLE:
        raise PreconditionViolated(get_user_friendly_error("outer_not_a_cycle"), field="outer")
    if not is_connected(g):
        raise PreconditionViolated("disk graph is not connected")
    require_triangle_free(g)
    c = outer.vertex_set
    for v in g.vertices:
        if v not in c and g.degree(v) < 3:
            raise PreconditionViolated(f"interior vertex {v} has degree {g.degree(v)}", field=f"vertex {v}")
    return c


def verify(g: PlanarGraph, check: bool = True) -> DischargeReport:
    """
    Run ch0 -> ch1 -> ch2 on a disk graph and audit every inner face

    Negative ch2 entries are expected output: the total is negative. R3 runs
    non-strict here, so faces it cannot pay for are listed instead of raised.

    Args:
        g: Disk graph with outer face bounded by C
        check: Validate the disk preconditions first

    Raises:
        PreconditionViolated: not a valid disk graph
        TheoremViolation: charge was created or lost by the rules, or a ch2 entry
            has a denominator not dividing CHARGE_DENOMINATOR
    """
    c = _check_disk(g) if check else _cycle_vertices(g)
    ch0 = initial_charges(g)
    ch1 = apply_r0_r1_r2(g, ch0)
    classes = classify_faces(g)
    ch2, payments, unpaid = apply_r3(g, ch1, classes, strict=False)
    if not ch0.total() == ch1.total() == ch2.total():
        raise TheoremViolation(
            "charge is not conserved",
            details=[
                {"field": stage.stage, "message": format_rational(stage.total()), "type": "total"}
                for stage in (ch0, ch1, ch2)
            ],
        )
    off_grid = sorted(
        (kind, key, q)
        for kind, charges in (("vertex", ch2.vertex_charge), ("face", ch2.face_charge))
        for key, q in charges.items()
        if CHARGE_DENOMINATOR % q.denominator
    )
    if off_grid:
        raise TheoremViolation(
            f"charges off the 1/{CHARGE_DENOMINATOR} grid",
            details=[
                {"field": f"{kind} {key}", "message": format_rational(q), "type": "denominator"}
                for kind, key, q in off_grid
            ],
        )
    audit = {
        face.id: audit_face(g, c, face, classes[face.id], ch1.face_charge[face.id])
        for face in g.faces
        if face.id != g.outer_face
    }
    payers = frozenset(v for v, _, _ in payments if v not in c and g.degree(v) == 5)
    outer = g.outer
    report = DischargeReport(
        cycle=outer.walk if outer is not None else (),
        ch0=ch0,
        ch1=ch1,
        ch2=ch2,
        classes=classes,
        audit=audit,
        payments=payments,
        unpaid=unpaid,
        payers=payers,
    )
    logger.debug(
        f"Discharged {len(g)} vertices: total {format_rational(report.total)}, "
        f"{len(report.negative_elements)} negative, {len(report.violations())} audit violations"
    )
    return report


def prepare_and_verify(g0: PlanarGraph) -> DischargeReport:
    """Pick C0, the minimal disk inside it, verify, and attach the configuration the finder returns."""
    from flexcolor.configurations import find_reducible

    require_triangle_free(g0)
    g = select_outer_face(g0)
    disk = find_minimal_nonface_cycle(g)
    if disk is None:
        raise TheoremViolation("no short cycle bounds a non-facial disk")
    report = verify(subgraph_in_disk(g, disk))
    try:
        report.configuration = find_reducible(g0)
    except TheoremViolation as e:
        logger.error(f"Charges computed but no configuration found: {e.message}")
    return report


def format_report(report: DischargeReport) -> str:
    return "\n".join(report.lines()) + "\n"
