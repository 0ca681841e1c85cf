"""Resource curves in information space.

A protocol point is an achievable (Q, I) pair: qubits of quantum
communication against bits of information. Probabilistic mixing makes the
achievable set chord-closed, so the boundary of interest is the lower convex
hull over Q. Formation resources are stored as nonnegative magnitudes; the
plotting convention that draws them in the lower-left quadrant is applied
only at render time.
"""

import bisect
import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence


class PointKind(enum.Enum):
    FORMATION_ENDPOINT_EC = "FormationEndpointEc"
    FORMATION_ENDPOINT_ER = "FormationEndpointEr"
    FORMATION_INTERMEDIATE = "FormationIntermediate"
    EXTRACTION_ZERO = "ExtractionZero"
    EXTRACTION_DISTILL = "ExtractionDistill"
    EXTRACTION_REVERSIBLE = "ExtractionReversible"
    CHORD = "Chord"
    BOUND = "Bound"


FORMATION_KINDS = frozenset(
    {
        PointKind.FORMATION_ENDPOINT_EC,
        PointKind.FORMATION_ENDPOINT_ER,
        PointKind.FORMATION_INTERMEDIATE,
    }
)
EXTRACTION_KINDS = frozenset(
    {
        PointKind.EXTRACTION_ZERO,
        PointKind.EXTRACTION_DISTILL,
        PointKind.EXTRACTION_REVERSIBLE,
    }
)

_VERTEX_SNAP = 1e-9  # distance below which a probe counts as sitting on a vertex


class CurveKind(enum.Enum):
    FORMATION = "Formation"
    EXTRACTION = "Extraction"


class DegenerateFamilyError(ValueError):
    """A family parameter where the curve collapses to a point or line."""


@dataclass(frozen=True)
class ProtocolPoint:
    """One achievable (q, i) resource pair with a role tag."""

    q: float
    i: float
    kind: PointKind
    label: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.i)):
            raise ValueError(f"protocol point coordinates must be finite, got ({self.q}, {self.i})")
        if self.kind in FORMATION_KINDS and (self.q < -1e-9 or self.i < -1e-9):
            raise ValueError(
                f"formation points are nonnegative magnitudes, got ({self.q}, {self.i})"
            )


@dataclass(frozen=True)
class InformationCurve:
    """Protocol points plus their piecewise-linear lower envelope.

    ``envelope`` is an ordered (q, i) vertex list, ascending in q.
    """

    kind: CurveKind
    points: tuple[ProtocolPoint, ...]
    envelope: tuple[tuple[float, float], ...]

    def domain(self) -> tuple[float, float]:
        return self.envelope[0][0], self.envelope[-1][0]


def formation_endpoints(
    info: float, surplus: float, ec: float, er: float
) -> tuple[ProtocolPoint, ProtocolPoint]:
    """Extreme formation points: minimal communication and reversibility.

    Returns ``(ec, info + surplus)`` and ``(er, info)``.
    """
    if surplus < 0.0:
        raise ValueError(f"information surplus must be nonnegative, got {surplus}")
    if ec > er + 1e-12:
        raise ValueError(f"cost ordering violated: ec={ec} exceeds er={er}")
    return (
        ProtocolPoint(ec, info + surplus, PointKind.FORMATION_ENDPOINT_EC, "min-communication"),
        ProtocolPoint(er, info, PointKind.FORMATION_ENDPOINT_ER, "reversible"),
    )


def _kind_family(kind: PointKind) -> CurveKind | None:
    if kind in FORMATION_KINDS:
        return CurveKind.FORMATION
    if kind in EXTRACTION_KINDS:
        return CurveKind.EXTRACTION
    return None  # Chord / Bound points attach to either curve


def chord_mix(p1: ProtocolPoint, p2: ProtocolPoint, lam: float) -> ProtocolPoint:
    """Convex combination of two protocol points (coin-weighted protocols)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    fam1, fam2 = _kind_family(p1.kind), _kind_family(p2.kind)
    if fam1 is not None and fam2 is not None and fam1 is not fam2:
        raise ValueError(f"cannot mix points of different curve kinds: {p1.kind} vs {p2.kind}")
    return ProtocolPoint(
        (1.0 - lam) * p1.q + lam * p2.q,
        (1.0 - lam) * p1.i + lam * p2.i,
        PointKind.CHORD,
        "chord",
    )


def _cross(o: tuple[float, float], a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def build_lower_envelope(
    points: Sequence[ProtocolPoint], kind: CurveKind = CurveKind.FORMATION
) -> InformationCurve:
    """Lower convex hull over q of the supplied points.

    Chords between achievable points are achievable, so this is the boundary
    of the achievable region. Points exactly on a chord stay as vertices,
    which makes re-running the construction on its own output a no-op.
    """
    if len(points) < 2:
        raise ValueError("envelope construction needs at least two protocol points")
    if kind is CurveKind.FORMATION:
        kinds = {p.kind for p in points}
        if not (
            PointKind.FORMATION_ENDPOINT_EC in kinds and PointKind.FORMATION_ENDPOINT_ER in kinds
        ):
            raise ValueError("formation envelopes need both extreme points present")
    ordered = sorted(points, key=lambda p: (p.q, p.i))
    # one candidate per q: only the lowest point can lie on a function graph
    candidates: list[tuple[float, float]] = []
    for p in ordered:
        if candidates and candidates[-1][0] == p.q:
            continue
        candidates.append((p.q, p.i))
    hull: list[tuple[float, float]] = []
    for c in candidates:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], c) < 0.0:
            hull.pop()
        hull.append(c)
    return InformationCurve(kind=kind, points=tuple(ordered), envelope=tuple(hull))


def curve_value(curve: InformationCurve, q: float) -> float:
    """Linear interpolation on the envelope; q must lie inside its domain."""
    env = curve.envelope
    lo, hi = env[0][0], env[-1][0]
    if q < lo - 1e-12 or q > hi + 1e-12:
        raise ValueError(f"q={q} outside the envelope domain [{lo}, {hi}]")
    q = min(max(q, lo), hi)
    qs = [v[0] for v in env]
    k = bisect.bisect_right(qs, q)
    if k == len(env):
        return env[-1][1]
    if k == 0:
        return env[0][1]
    (q1, i1), (q2, i2) = env[k - 1], env[k]
    if q2 == q1:
        return i1
    return i1 + (q - q1) / (q2 - q1) * (i2 - i1)


class ChiSlope(NamedTuple):
    chi: float
    slope: float


def _segment_slope(v1: tuple[float, float], v2: tuple[float, float]) -> float:
    return (v2[1] - v1[1]) / (v2[0] - v1[0])


def _chi_of_slope(slope: float) -> float:
    if slope == 0.0:
        return math.copysign(math.inf, slope)  # flat segment: divergence flagged as +/-inf
    return 1.0 / slope


def chi(curve: InformationCurve, q: float, side: str | None = None) -> ChiSlope:
    """Susceptibility along the envelope: slope dI/dQ of a segment and 1/slope.

    The envelope is piecewise linear, so the derivative is two-valued at a
    vertex; probing within 1e-9 of one requires ``side`` ('left' or 'right')
    to pick the adjacent segment.
    """
    env = curve.envelope
    if len(env) < 2:
        raise ValueError("degenerate single-point curve has no slope")
    lo, hi = env[0][0], env[-1][0]
    near = next((k for k, v in enumerate(env) if abs(q - v[0]) <= _VERTEX_SNAP), None)
    if near is None:
        if not lo < q < hi:
            raise ValueError(f"q={q} outside the open envelope domain ({lo}, {hi})")
        qs = [v[0] for v in env]
        k = bisect.bisect_right(qs, q)
        slope = _segment_slope(env[k - 1], env[k])
        return ChiSlope(_chi_of_slope(slope), slope)
    if side is None:
        raise ValueError(
            f"q={q} sits on a vertex; pass side='left' or side='right' for the one-sided value"
        )
    if side == "left":
        if near == 0:
            raise ValueError("no segment to the left of the first vertex")
        slope = _segment_slope(env[near - 1], env[near])
    elif side == "right":
        if near == len(env) - 1:
            raise ValueError("no segment to the right of the last vertex")
        slope = _segment_slope(env[near], env[near + 1])
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return ChiSlope(_chi_of_slope(slope), slope)


def pure_extraction_line(n: float, e: float) -> InformationCurve:
    """Constant-slope extraction line of a pure state with entanglement e.

    I(Q) = n - e - Q on Q in [-e, e]: using the channel e times recovers all
    n bits, channel-free extraction leaves n - e, and distilling e singlets
    leaves n - 2e alongside them. One local bit rides on each singlet, so the
    line saturates the complementarity bound with slope -1 throughout.
    """
    if e < 0.0 or e > n / 2.0 + 1e-12:
        raise ValueError(f"entanglement must lie in [0, n/2] = [0, {n / 2}], got {e}")
    pts = (
        ProtocolPoint(-e, n, PointKind.EXTRACTION_REVERSIBLE, "channel-assisted"),
        ProtocolPoint(0.0, n - e, PointKind.EXTRACTION_ZERO, "locc-extraction"),
        ProtocolPoint(e, n - 2.0 * e, PointKind.EXTRACTION_DISTILL, "distillation"),
    )
    vertices: list[tuple[float, float]] = []
    for p in pts:
        if not vertices or vertices[-1] != (p.q, p.i):
            vertices.append((p.q, p.i))
    return InformationCurve(kind=CurveKind.EXTRACTION, points=pts, envelope=tuple(vertices))


@dataclass(frozen=True)
class ComplementarityCheck:
    """Outcome of the one-bit-per-singlet extraction bound."""

    satisfied: bool
    slack: float
    excess: float


def complementarity_check(i_l_at_q: float, q: float, i_l_zero: float) -> ComplementarityCheck:
    """Check i_l(q) + q <= i_l(0): each distilled singlet forfeits one local bit.

    Only defined for q >= 0; channel-assisted extraction (q < 0) can beat the
    bound, so probing there is an error rather than a verdict.
    """
    if q < 0.0:
        raise ValueError("the extraction bound applies only to q >= 0")
    raw = i_l_zero - (i_l_at_q + q)
    return ComplementarityCheck(
        satisfied=raw >= -1e-9, slack=max(raw, 0.0), excess=max(-raw, 0.0)
    )


@dataclass(frozen=True)
class ScanSample:
    """Slope probe of one family member."""

    p: float
    q_at: float
    slope: float
    chi: float
    degenerate: bool = False


@dataclass(frozen=True)
class PhaseScanResult:
    """Per-parameter slope/chi samples with a divergence diagnostic."""

    samples: tuple[ScanSample, ...]
    divergence_flag: bool
    threshold: float


def _steepest_segment(curve: InformationCurve) -> tuple[float, float]:
    """(midpoint q, slope) of the envelope segment with the largest |slope|."""
    env = curve.envelope
    best_q = best_slope = 0.0
    best_abs = -1.0
    for v1, v2 in zip(env, env[1:]):
        slope = _segment_slope(v1, v2)
        if abs(slope) > best_abs:
            best_abs = abs(slope)
            best_slope = slope
            best_q = 0.5 * (v1[0] + v2[0])
    return best_q, best_slope


def phase_scan(
    points_for: Callable[[float], Sequence[ProtocolPoint]],
    p_grid: Sequence[float],
    probe: str | float = "steepest",
    divergence_threshold: float = 50.0,
) -> PhaseScanResult:
    """Sweep a one-parameter family and probe the formation-curve slope.

    ``points_for`` maps a parameter to the family's formation protocol
    points. Parameters where the family degenerates to a point or line yield
    slope-0 samples flagged degenerate. The divergence flag fires when the
    final |slope| exceeds the threshold and |slope| grows strictly over the
    last quartile of the grid.
    """
    samples: list[ScanSample] = []
    for p in sorted(float(x) for x in p_grid):
        try:
            pts = points_for(p)
        except DegenerateFamilyError:
            samples.append(ScanSample(p=p, q_at=0.0, slope=0.0, chi=math.inf, degenerate=True))
            continue
        curve = build_lower_envelope(pts, CurveKind.FORMATION)
        if len(curve.envelope) < 2:
            samples.append(ScanSample(p=p, q_at=curve.envelope[0][0], slope=0.0, chi=math.inf, degenerate=True))
            continue
        if probe == "steepest":
            q_at, slope = _steepest_segment(curve)
        else:
            q_at = float(probe)
            lo, hi = curve.domain()
            side = None
            if abs(q_at - lo) <= _VERTEX_SNAP:
                side = "right"
            elif abs(q_at - hi) <= _VERTEX_SNAP or any(
                abs(q_at - v[0]) <= _VERTEX_SNAP for v in curve.envelope
            ):
                side = "left"
            slope = chi(curve, q_at, side=side).slope
        samples.append(ScanSample(p=p, q_at=q_at, slope=slope, chi=_chi_of_slope(slope)))
    live = [abs(s.slope) for s in samples if not s.degenerate]
    flag = False
    if len(live) >= 2 and live[-1] > divergence_threshold:
        tail = live[(3 * len(live)) // 4 :]
        if len(tail) < 2:
            tail = live[-2:]
        flag = all(b > a for a, b in zip(tail, tail[1:]))
    return PhaseScanResult(
        samples=tuple(samples), divergence_flag=flag, threshold=float(divergence_threshold)
    )
