"""The square foliation F, the flat sphere Sigma, the map phi and the IET f."""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .numerics import DomainError, fmt

Point = Tuple[Fraction, Fraction]
F0, F1 = Fraction(0), Fraction(1)
HALF, THIRD = Fraction(1, 2), Fraction(1, 3)


class SingularPointError(DomainError):
    pass


class FrontierHit(DomainError):
    pass


# ---------------------------------------------------------------- sequences


def y_seq(N: int) -> Dict[int, Fraction]:
    ys = {-2: F1, -1: F0}
    for n in range(0, N + 1):
        ys[n] = (ys[n - 1] + ys[n - 2]) / 2
    return ys


def x_seq(N: int) -> Dict[int, Fraction]:
    ys = y_seq(N)
    xs = {0: HALF}
    for n in range(1, N + 1):
        xs[n] = (ys[n - 1] + ys[n - 3]) / 2
    return xs


@dataclass(frozen=True)
class Involution:
    side: str  # left, right, top, bottom
    center: Fraction  # coordinate along the side
    segment: Tuple[Fraction, Fraction]  # the closed range exchanged with its mirror
    label: str = ""

    def contains(self, t: Fraction) -> bool:
        lo, hi = min(self.segment), max(self.segment)
        return lo <= t <= hi

    def apply(self, t: Fraction) -> Fraction:
        return 2 * self.center - t


@dataclass
class SquareSystem:
    N: int
    kind: str  # "F" or "Sigma"
    ys: Dict[int, Fraction]
    xs: Dict[int, Fraction]
    marked: Dict[str, Point]
    involutions: List[Involution]
    _left: List[Tuple[Fraction, Fraction, int]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        # left-side pieces sorted by lower endpoint: (lo, hi, n)
        pieces = []
        for n in range(1, self.N + 1):
            a, b = self.ys[n - 1], self.ys[n - 3]
            pieces.append((min(a, b), max(a, b), n))
        pieces.sort()
        self._left = pieces
        self._left_lo = [p[0] for p in pieces]
        self._qs = {v: k for k, v in self.ys.items()}
        self._ps = {v: k for k, v in self.xs.items() if k >= 1}

    # left side -----------------------------------------------------------
    def left_piece(self, y: Fraction) -> int:
        """Index n of the left involution whose segment contains y in its interior."""
        if y in self._ps:
            raise SingularPointError(f"p{self._ps[y]}")
        if y in self._qs or y == THIRD:
            raise SingularPointError("r")
        i = bisect.bisect_right(self._left_lo, y) - 1
        if i >= 0:
            lo, hi, n = self._left[i]
            if lo < y < hi:
                return n
        raise FrontierHit(f"height {fmt(y)} lies beyond truncation level {self.N}")

    def left_map(self, y: Fraction) -> Fraction:
        return 2 * self.xs[self.left_piece(y)] - y

    @staticmethod
    def right_map(y: Fraction) -> Fraction:
        if y == HALF:
            raise SingularPointError("p0")
        return 1 - y

    def singular_name(self, side: str, y: Fraction) -> Optional[str]:
        if side == "right":
            return "p0" if y == HALF else None
        if y in self._ps:
            return f"p{self._ps[y]}"
        if y in self._qs or y == THIRD:
            return "r"
        return None


def _marked_F(N: int, ys, xs) -> Dict[str, Point]:
    m = {"p0": (F1, HALF), "r": (F0, THIRD)}
    for n in range(1, N + 1):
        m[f"p{n}"] = (F0, xs[n])
    for n in range(-2, N + 1):
        m[f"q{n}"] = (F0, ys[n])
    return m


def _involutions_F(N: int, ys, xs) -> List[Involution]:
    out = [Involution("right", HALF, (F0, HALF), "p0")]
    for n in range(1, N + 1):
        out.append(Involution("left", xs[n], (xs[n], ys[n - 1]), f"p{n}"))
    return out


def buildF(N: int) -> SquareSystem:
    if N < 3:
        raise DomainError("N must be >= 3")
    ys, xs = y_seq(N), x_seq(N)
    return SquareSystem(N, "F", ys, xs, _marked_F(N, ys, xs), _involutions_F(N, ys, xs))


def buildSigma(N: int) -> SquareSystem:
    if N < 3:
        raise DomainError("N must be >= 3")
    ys, xs = y_seq(N), x_seq(N)
    marked = _marked_F(N, ys, xs)
    marked["a0"] = (HALF, F0)
    for n in range(1, N + 1):
        marked[f"a{n}"] = (1 - xs[n], F1)
    for n in range(-2, N + 1):
        marked[f"b{n}"] = (1 - ys[n], F1)
    inv = _involutions_F(N, ys, xs)
    inv.append(Involution("bottom", HALF, (F0, HALF), "a0"))
    for n in range(1, N + 1):
        inv.append(Involution("top", 1 - xs[n], (1 - xs[n], 1 - ys[n - 1]), f"a{n}"))
    return SquareSystem(N, "Sigma", ys, xs, marked, inv)


# --------------------------------------------------------------------- phi
#
# Columns A, B, C, D of width 1/4 are scaled by diag(4, 1/4); B and D are
# turned by pi; the stack from the bottom is D, A, B, C.

Q4 = Fraction(1, 4)


def _column_rules():
    return {
        "A": lambda x, y: (4 * x, y / 4 + Q4),
        "B": lambda x, y: (2 - 4 * x, Fraction(3, 4) - y / 4),
        "C": lambda x, y: (4 * x - 2, y / 4 + Fraction(3, 4)),
        "D": lambda x, y: (4 - 4 * x, Q4 - y / 4),
    }


PHI_RULES = _column_rules()


def phi_columns(x: Fraction) -> List[str]:
    cols = []
    for name, lo in zip("ABCD", (F0, Q4, HALF, 3 * Q4)):
        if lo <= x <= lo + Q4:
            cols.append(name)
    return cols


def applyPhi(point: Point, column: Optional[str] = None) -> Point:
    """Image of a point of the closed square.

    On a column boundary the unturned column (A or C) is used unless
    ``column`` says otherwise; the two choices agree in Sigma.
    """
    x, y = Fraction(point[0]), Fraction(point[1])
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise DomainError("point outside the square")
    cols = phi_columns(x)
    if column is None:
        column = next((c for c in cols if c in "AC"), cols[0])
    elif column not in cols:
        raise DomainError(f"column {column} does not contain x={fmt(x)}")
    return PHI_RULES[column](x, y)


def phi_images(point: Point) -> List[Point]:
    return [PHI_RULES[c](Fraction(point[0]), Fraction(point[1])) for c in phi_columns(Fraction(point[0]))]


def _name_order(name: str):
    # q before b when they coincide (b_{-2} = q_{-2})
    return ({"q": 0, "p": 1, "a": 2, "b": 3, "r": 4}[name[0]], name)


def match_marked(system: SquareSystem, pt: Point) -> Optional[str]:
    names = sorted((k for k, v in system.marked.items() if v == pt), key=_name_order)
    return names[0] if names else None


def singularOrbit(system: SquareSystem, name: str, steps: int):
    """Iterate phi on a marked point; returns (names, report)."""
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if name not in system.marked:
        raise DomainError(f"unknown marked point {name}")
    pt = system.marked[name]
    out = []
    for s in range(steps):
        pt = applyPhi(pt)
        nm = match_marked(system, pt)
        if nm is None:
            return out, f"orbit left the truncation after {s} steps at ({fmt(pt[0])}, {fmt(pt[1])})"
        out.append(nm)
    return out, "ok"


def sigma_related(system: SquareSystem, P: Point, Q: Point) -> bool:
    """True if P and Q are equal or exchanged by one side involution."""
    if P == Q:
        return True
    for inv in system.involutions:
        for A, B in ((P, Q), (Q, P)):
            if inv.side in ("left", "right"):
                xv = F0 if inv.side == "left" else F1
                if A[0] == B[0] == xv and inv.contains(A[1]) and inv.apply(A[1]) == B[1]:
                    return True
            else:
                yv = F0 if inv.side == "bottom" else F1
                if A[1] == B[1] == yv and inv.contains(A[0]) and inv.apply(A[0]) == B[0]:
                    return True
    return False


def involution_partner(system: SquareSystem, P: Point) -> Optional[Point]:
    x, y = P
    for inv in system.involutions:
        if inv.side == "left" and x == 0 and inv.contains(y):
            return (x, inv.apply(y))
        if inv.side == "right" and x == 1 and inv.contains(y):
            return (x, inv.apply(y))
        if inv.side == "bottom" and y == 0 and inv.contains(x):
            return (inv.apply(x), y)
        if inv.side == "top" and y == 1 and inv.contains(x):
            return (inv.apply(x), y)
    return None


# ---------------------------------------------------------- leaves of F
#
# A leaf is followed between crossings of the transversal s = {1/2} x [0,1].
# State: (height, heading) with heading +1 (towards x=1) or -1.


@dataclass
class LeafTrace:
    heights: List[Fraction]
    terminal: str
    detail: str = ""


def _step(system: SquareSystem, y: Fraction, heading: int):
    """Cross the half-square in the given heading and come back; returns (y', heading')."""
    if heading > 0:
        return system.right_map(y), -1
    return system.left_map(y), +1


def traceSeparatrix(system: SquareSystem, i: int, maxSegments: int = 1 << 16) -> LeafTrace:
    """Follow the horizontal separatrix leaving the 1-prong p_i until a singular point."""
    if i == 0:
        y, heading = HALF, -1
    else:
        y, heading = system.xs[i], +1
    heights = [y]
    for _ in range(maxSegments):
        side = "right" if heading > 0 else "left"
        nm = system.singular_name(side, y)
        if nm is not None:
            return LeafTrace(heights, "SingularityHit", nm)
        try:
            y, heading = _step(system, y, heading)
        except FrontierHit as e:
            return LeafTrace(heights, "FrontierHit", str(e))
        heights.append(y)
    return LeafTrace(heights, "StepBudgetExhausted")


def dyadicLeafHeights(i: int) -> set:
    if i < 0:
        raise DomainError("i must be >= 0")
    d = 2 ** (i + 1)
    return {Fraction(j, d) for j in range(1, d, 2)}


def flow_crossings(system: SquareSystem, x: Fraction, heading: int, count: int):
    """Heights of the next ``count`` crossings of s starting from (1/2, x)."""
    out = []
    y = Fraction(x)
    for _ in range(count):
        y, heading = _step(system, y, heading)
        out.append(y)
    return out


def second_return(system: SquareSystem, x: Fraction, heading: int = -1) -> Fraction:
    return flow_crossings(system, x, heading, 2)[-1]


# ---------------------------------------------------------------------- IET


@dataclass
class IntervalExchange:
    N: int
    pieces: List[Tuple[Fraction, Fraction, Fraction, int]]  # (lo, hi, shift, m)

    def __post_init__(self):
        self.pieces.sort()
        self._lo = [p[0] for p in self.pieces]
        self.breakpoints = {p[0] for p in self.pieces} | {p[1] for p in self.pieces} | {THIRD}

    def apply(self, x) -> Fraction:
        x = Fraction(x)
        if x in self.breakpoints:
            raise SingularPointError(f"{fmt(x)} is a breakpoint")
        i = bisect.bisect_right(self._lo, x) - 1
        if i >= 0 and self.pieces[i][0] < x < self.pieces[i][1]:
            return x + self.pieces[i][2]
        raise FrontierHit(f"{fmt(x)} lies beyond truncation level {self.N}")

    def source_length(self) -> Fraction:
        return sum((hi - lo for lo, hi, _, _ in self.pieces), F0)

    def image_length(self) -> Fraction:
        return sum(((hi + t) - (lo + t) for lo, hi, t, _ in self.pieces), F0)

    def images(self):
        return [(lo + t, hi + t) for lo, hi, t, _ in self.pieces]

    def orientation_table(self):
        """Per piece: source, image and whether the translation keeps order (always, for a translation)."""
        return [
            {"m": m, "source": [fmt(lo), fmt(hi)], "image": [fmt(lo + t), fmt(hi + t)], "preserving": True}
            for lo, hi, t, m in self.pieces
        ]


def buildIET(N: int) -> IntervalExchange:
    """Piece m (-2 <= m <= N-2): between y_m and y_{m+2}, translated onto between 1-y_m and 1-y_{m+2}."""
    if N < 4:
        raise DomainError("N must be >= 4")
    ys = y_seq(N)
    pieces = []
    for m in range(-2, N - 1):
        a, b = ys[m], ys[m + 2]
        pieces.append((min(a, b), max(a, b), 1 - a - b, m))
    return IntervalExchange(N, pieces)


def applyIET(x, N: int = 48) -> Fraction:
    return buildIET(N).apply(x)


# ---------------------------------------------------------------- histogram


@dataclass
class Histogram:
    counts: List[int]
    visits: int
    complete: bool
    detail: str = ""


def hittingHistogram(x, returns: int, bins: int, N: int = 64, system: Optional[SquareSystem] = None) -> Histogram:
    if returns < 1 or bins < 1:
        raise DomainError("returns and bins must be >= 1")
    system = system or buildF(N)
    counts = [0] * bins
    y, heading = Fraction(x), +1
    done = 0
    try:
        for done in range(returns):
            y, heading = _step(system, y, heading)
            b = min(int(y * bins), bins - 1)
            counts[b] += 1
        done = returns
    except (SingularPointError, FrontierHit) as e:
        return Histogram(counts, done, False, str(e))
    return Histogram(counts, done, True)


def seeded_height(seed: int, denom: int = 5 * 1024) -> Fraction:
    """A height whose orbit never meets a dyadic point or 1/3 (denominator has a factor 5)."""
    rng = random.Random(seed)
    while True:
        a = rng.randrange(1, denom)
        if a % 5:
            return Fraction(a, denom)


# --------------------------------------------------------------------- SVG


def render_svg(system: SquareSystem, size: int = 400, upto: int = 8) -> str:
    def X(x):
        return 20 + float(x) * size

    def Y(y):
        return 20 + (1 - float(y)) * size

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 40}" height="{size + 40}">',
        f'<rect x="20" y="20" width="{size}" height="{size}" fill="none" stroke="black"/>',
    ]
    for name, (x, y) in sorted(system.marked.items()):
        idx = name[1:]
        if idx.lstrip("-").isdigit() and int(idx) > upto:
            continue
        color = {"p": "red", "q": "blue", "a": "green", "b": "purple", "r": "orange"}[name[0]]
        parts.append(f'<circle cx="{X(x):.2f}" cy="{Y(y):.2f}" r="3" fill="{color}"><title>{name}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts)
