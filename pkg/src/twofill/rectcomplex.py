"""Rectangle complexes G(T, w): one rectangle per branch, glued along switch intervals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .numerics import DomainError, fmt
from .traintrack import HalfEdge, TrainTrack

LEFT, RIGHT = "L", "R"


class FrontierReached(DomainError):
    pass


@dataclass(frozen=True)
class LeafState:
    """A point moving along the rectangle of `branch` at `height`, towards its finish if d > 0."""

    branch: str
    height: Fraction
    d: int


@dataclass(frozen=True)
class SingularPoint:
    switch: str
    pos: Fraction
    name: str


@dataclass
class Slot:
    he: HalfEdge
    lo: Fraction
    hi: Fraction


class RectangleComplex:
    def __init__(self, track: TrainTrack, weights: Dict[str, Fraction], namer=None):
        self.track = track
        self.w = weights
        self.slots: Dict[Tuple[str, str], List[Slot]] = {}
        self.where: Dict[HalfEdge, Tuple[str, str, Slot]] = {}
        self.length: Dict[str, Fraction] = {}
        for sw in track.switches:
            for side in ("in", "out"):
                acc = Fraction(0)
                lst = []
                for he in track.side_list(sw, side):
                    s = Slot(he, acc, acc + weights[he[0]])
                    acc = s.hi
                    lst.append(s)
                    self.where[he] = (sw, side, s)
                self.slots[(sw, side)] = lst
            self.length[sw] = max(self.slots[(sw, "in")][-1].hi if self.slots[(sw, "in")] else 0,
                                  self.slots[(sw, "out")][-1].hi if self.slots[(sw, "out")] else 0)
        self.namer = namer or default_namer(track)
        self._sing = None

    # -------------------------------------------------------------- geometry
    def _pos(self, he: HalfEdge, h: Fraction) -> Fraction:
        sw, side, s = self.where[he]
        return s.lo + (self.w[he[0]] - h if self.track.reversed_end(he) else h)

    def _height(self, he: HalfEdge, pos: Fraction) -> Fraction:
        sw, side, s = self.where[he]
        u = pos - s.lo
        return self.w[he[0]] - u if self.track.reversed_end(he) else u

    def _breakpoint(self, sw: str, side: str, t: Fraction):
        """(lower slot, upper slot) if t is an interior breakpoint of that side, else None."""
        lst = self.slots[(sw, side)]
        for a, b in zip(lst, lst[1:]):
            if a.hi == t:
                return a, b
        return None

    def _slot_at(self, sw: str, side: str, t: Fraction) -> Optional[Slot]:
        for s in self.slots[(sw, side)]:
            if s.lo <= t <= s.hi:
                return s
        return None

    def is_singular(self, sw: str, t: Fraction) -> bool:
        if sw in self.track.frontier or t <= 0 or t >= self.length[sw]:
            return False
        return bool(self._breakpoint(sw, "in", t) or self._breakpoint(sw, "out", t))

    def singular_points(self) -> List[SingularPoint]:
        if self._sing is None:
            pts = []
            for sw in self.track.switches:
                if sw in self.track.frontier:
                    continue
                ts = set()
                for side in ("in", "out"):
                    lst = self.slots[(sw, side)]
                    ts.update(a.hi for a in lst[:-1])
                for t in sorted(ts):
                    pts.append(SingularPoint(sw, t, self.namer(sw, t)))
            self._sing = pts
        return self._sing

    def singular(self, name: str) -> SingularPoint:
        for p in self.singular_points():
            if p.name == name:
                return p
        raise DomainError(f"no singular point named {name!r}")

    @staticmethod
    def _enter(he: HalfEdge) -> int:
        return 1 if he[1] == "s" else -1

    def _state_into(self, s: Slot, t: Fraction) -> LeafState:
        return LeafState(s.he[0], self._height(s.he, t), self._enter(s.he))

    def prongs(self, p: SingularPoint) -> List[Tuple[str, LeafState]]:
        """Outgoing separatrix germs at p, labelled 'a' (the lone one) or 'lo'/'hi'."""
        res = []
        for side in ("in", "out"):
            bp = self._breakpoint(p.switch, side, p.pos)
            if bp:
                res.append(("lo:" + side, self._state_into(bp[0], p.pos)))
                res.append(("hi:" + side, self._state_into(bp[1], p.pos)))
            else:
                s = self._slot_at(p.switch, side, p.pos)
                if s is not None:
                    res.append(("a:" + side, self._state_into(s, p.pos)))
        return res

    # --------------------------------------------------------------- motion
    def arrive(self, st: LeafState):
        """Follow st to the end of its rectangle; returns (switch, side, pos, half-edge)."""
        he = (st.branch, "f" if st.d > 0 else "s")
        loc = self.track.side_of(he)
        if loc is None or loc[0] in self.track.frontier:
            raise FrontierReached(f"leaf reaches the frontier through {st.branch}")
        sw, side = loc
        return sw, side, self._pos(he, st.height), he

    def cross(self, sw: str, side: str, t: Fraction, he: HalfEdge, choice: Optional[str]):
        """Continue past the switch.  Returns (new state, singular point or None).

        At a singular point a leaf coming along an edge goes straight on; a leaf
        coming from the interior of its rectangle turns by `choice` (None stops).
        """
        other = "out" if side == "in" else "in"
        sing = self.is_singular(sw, t)
        if not sing:
            return self._state_into(self._slot_at(sw, other, t), t), None
        p = SingularPoint(sw, t, self.namer(sw, t))
        if choice is None:
            return None, p
        bp_other = self._breakpoint(sw, other, t)
        if bp_other is None:
            return self._state_into(self._slot_at(sw, other, t), t), p
        if self._breakpoint(sw, side, t):
            raise DomainError(f"four-prong point at {p.name}; the leaf is ambiguous")
        # travelling from the incoming side, left is upward along the interval
        upper = (choice == LEFT) == (side == "in")
        return self._state_into(bp_other[1] if upper else bp_other[0], t), p

    def step(self, st: LeafState, choice: Optional[str]):
        sw, side, t, he = self.arrive(st)
        return self.cross(sw, side, t, he, choice)


def default_namer(track: TrainTrack):
    def name(sw: str, t: Fraction) -> str:
        if sw.startswith("K") and track.metadata.get("track") == "T":
            return "Q" + sw[1:]
        if sw.startswith("M") and track.metadata.get("track") == "T":
            return "P" + sw[1:]
        if sw in ("X", "Y") and track.metadata.get("track") == "T":
            return "E" + sw
        return f"{sw}@{fmt(t)}"

    return name


def buildComplex(track: TrainTrack, weights: Dict[str, Fraction]) -> RectangleComplex:
    return RectangleComplex(track, weights)


# ---------------------------------------------------------------- leaves


@dataclass
class LeafItinerary:
    """Steps (branch, direction, height) of a traced leaf and how the trace ended.

    terminal is "singular" (singular names the point hit), "frontier",
    "budget" or "closed" (the leaf came back to its starting state).
    """

    steps: List[Tuple[str, int, Fraction]]
    singular: List[str]
    terminal: str
    end: Optional[LeafState] = None

    @property
    def path(self) -> List[Tuple[str, int]]:
        return [(b, d) for b, d, _ in self.steps]

    def to_json(self) -> list:
        # a leaf keeps its height across a rectangle, so entry and exit agree
        return [{"branch": b, "direction": d, "entry": fmt(h), "exit": fmt(h)} for b, d, h in self.steps]


def traceLeaf(G: RectangleComplex, start, maxSteps: int = 1000, choice: Optional[str] = None,
              direction: int = 1) -> LeafItinerary:
    """Trace forward from start, a LeafState or a (branch, height) pair moving in `direction`.

    With choice None the trace stops at the first singular point it reaches;
    otherwise it turns left or right there.
    """
    if not isinstance(start, LeafState):
        b, h = start
        if b not in G.w:
            raise DomainError(f"unknown branch {b!r}")
        h = Fraction(h)
        if not 0 <= h <= G.w[b]:
            raise DomainError(f"height {fmt(h)} lies outside R({b})")
        start = LeafState(b, h, 1 if direction > 0 else -1)
    steps = [(start.branch, start.d, start.height)]
    sing: List[str] = []
    st = start
    for _ in range(maxSteps):
        try:
            nxt, p = G.step(st, choice)
        except FrontierReached:
            return LeafItinerary(steps, sing, "frontier", st)
        if p is not None:
            sing.append(p.name)
            if nxt is None:
                return LeafItinerary(steps, sing, "singular", st)
        st = nxt
        if st == start:
            return LeafItinerary(steps, sing, "closed", st)
        steps.append((st.branch, st.d, st.height))
    return LeafItinerary(steps, sing, "budget", st)


@dataclass
class SaddleConnection:
    source: str
    target: str
    prong: str
    path: List[Tuple[str, int]]


def saddleConnectionCensus(G: RectangleComplex, maxLevel: Optional[int] = None, names=None,
                           maxSteps: int = 400) -> List[SaddleConnection]:
    """Separatrices from the chosen singular points that end at a singular point.

    maxLevel keeps sources whose index is at most maxLevel; names restricts
    the sources explicitly.
    """
    out = []
    for p in G.singular_points():
        if names is not None and p.name not in names:
            continue
        if maxLevel is not None:
            i = _name_index(p.name)
            if i is not None and i > maxLevel:
                continue
        for lbl, st in G.prongs(p):
            r = traceLeaf(G, st, maxSteps)
            if r.terminal == "singular":
                out.append(SaddleConnection(p.name, r.singular[-1], lbl, r.path))
    return out


def _reverse(path):
    return [(b, -d) for b, d in reversed(path)]


@dataclass
class BoundaryLeaf:
    path: List[Tuple[str, int]]
    singular: List[str]
    ends: Tuple[str, str]
    anchor: str = ""


def _slot_eps(G, sw, side, t, e):
    """Slot containing the point t + e*eps (eps > 0 infinitesimal)."""
    for s in G.slots[(sw, side)]:
        if s.lo < t < s.hi or (t == s.lo and e > 0) or (t == s.hi and e < 0):
            return s
    return None


def _eps_half(G, st: LeafState, e: int, budget: int):
    """Trace a leaf displaced by e*eps from st, recording singular points it grazes.

    Returns (path, singular names, terminal, transits).
    """
    path = [(st.branch, st.d)]
    names, transits = [], []
    h = st.height
    b, d = st.branch, st.d
    for _ in range(budget):
        he = (b, "f" if d > 0 else "s")
        loc = G.track.side_of(he)
        if loc is None or loc[0] in G.track.frontier:
            return path, names, "frontier", transits
        sw, side = loc
        flip = G.track.reversed_end(he)
        t = G._pos(he, h)
        ee = -e if flip else e
        other = "out" if side == "in" else "in"
        s = _slot_eps(G, sw, other, t, ee)
        if s is None:
            raise DomainError(f"leaf leaves the complex at {sw}")
        nhe = s.he
        if G.is_singular(sw, t):
            nm = G.namer(sw, t)
            names.append(nm)
            transits.append((nm, frozenset([he, nhe])))
        nflip = G.track.reversed_end(nhe)
        h = G._height(nhe, t)
        e = -ee if nflip else ee
        b, d = nhe[0], G._enter(nhe)
        path.append((b, d))
    return path, names, "budget", transits


def switch_distance(track: TrainTrack, sources) -> Dict[str, int]:
    """Graph distance between switches, counting each branch as one step."""
    adj: Dict[str, set] = {sw: set() for sw in track.switches}
    for b, (u, v) in track.branches.items():
        if u in adj and v in adj:
            adj[u].add(v)
            adj[v].add(u)
    dist = {s: 0 for s in sources}
    todo = list(sources)
    while todo:
        nxt = []
        for u in todo:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        todo = nxt
    return dist


def core_points(G: RectangleComplex, radius: int, sources=None) -> List[SingularPoint]:
    sources = sources or G.track.metadata.get("core", ["X", "Y"])
    dist = switch_distance(G.track, sources)
    return [p for p in G.singular_points() if dist.get(p.switch, radius + 1) <= radius]


def boundaryPaths(G: RectangleComplex, depth: int = 32, maxIndex: Optional[int] = None,
                  radius: Optional[int] = 2) -> List[BoundaryLeaf]:
    """Singular leaves, each obtained as the limit of nonsingular leaves from one side.

    Every singular point contributes two candidates (one per side of its lone
    prong); candidates sharing a transit through a singular point are the same
    leaf.  Only leaves through the core (singular points within `radius` switch
    steps of the designated core switches) are reported; radius None uses every
    singular point.  Each half is traced for `depth` branches.  Returns one
    representative per class, anchored at the least singular name.
    """
    pts = G.singular_points() if radius is None else core_points(G, radius)
    parent: Dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    leaves = []
    for p in pts:
        idx = _name_index(p.name)
        if maxIndex is not None and idx is not None and idx > maxIndex:
            continue
        lone = [s for l, s in G.prongs(p) if l.startswith("a")]
        if len(lone) != 1:
            continue
        a = lone[0]
        for e in (1, -1):
            fwd = _eps_half(G, a, e, depth)
            bwd = _eps_half(G, LeafState(a.branch, a.height, -a.d), e, depth)
            key = ("leaf", p.name, e)
            for x in fwd[3] + bwd[3]:
                parent[find(key)] = find(x)
            path = _reverse(bwd[0]) + fwd[0][1:]
            names = list(reversed(bwd[1])) + fwd[1]
            leaves.append((key, BoundaryLeaf(path, names, (bwd[2], fwd[2]))))
    classes: Dict = {}
    for key, lf in leaves:
        classes.setdefault(find(key), []).append(lf)
    reps = []
    for lst in classes.values():
        best = max(lst, key=lambda l: len(l.singular))
        best.anchor = min(best.singular, key=_name_key) if best.singular else ""
        reps.append(best)
    reps.sort(key=lambda l: _name_key(l.anchor))
    return reps


def _name_index(name: str) -> Optional[int]:
    try:
        return int(name[1:])
    except ValueError:
        return None


def _name_key(name: str):
    i = _name_index(name)
    return (name[0], i if i is not None else -1, name)


# --------------------------------------------------------- accumulation


def _names(window) -> List[str]:
    return [x[0] if isinstance(x, tuple) else x for x in window]


def accumulates(G: Optional[RectangleComplex], windowA, windowB, subpathLength: int) -> bool:
    """Does every subpath of windowB of length <= subpathLength occur in windowA?

    Windows are sequences of branch names or (name, direction) pairs; a
    subpath also counts when it occurs reversed.  This is the finite-depth
    stand-in for accumulation of train paths.  G is accepted for symmetry
    with the other census operations and is not consulted.
    """
    a, b = _names(windowA), _names(windowB)
    k = min(subpathLength, len(b))
    seen = set()
    for n in range(1, k + 1):
        for i in range(len(a) - n + 1):
            seg = tuple(a[i:i + n])
            seen.add(seg)
            seen.add(seg[::-1])
    return all(tuple(b[i:i + n]) in seen for n in range(1, k + 1) for i in range(len(b) - n + 1))


def separatrixWindow(G: RectangleComplex, point: str, prong: str, length: int) -> List[Tuple[str, int]]:
    """First `length` branches of the ray leaving a singular point by one prong (eps-limit)."""
    st = dict(G.prongs(G.singular(point))).get(prong)
    if st is None:
        raise DomainError(f"{point} has no prong {prong!r}")
    return _eps_half(G, st, 1, max(length - 1, 0))[0]


# ----------------------------------------------------------------- unzip


def _cut_trace(G: RectangleComplex, p: SingularPoint, prong: str, maxSteps: int):
    """Heights along the separatrix of p leaving by `prong`, up to the singular point it reaches."""
    st = dict(G.prongs(p))[prong]
    cuts, marks = [], [(p.switch, p.pos)]
    for _ in range(maxSteps):
        cuts.append((st.branch, st.height))
        sw, side, t, he = G.arrive(st)
        marks.append((sw, t))
        nxt, q = G.cross(sw, side, t, he, None)
        if q is not None:
            return cuts, marks, q
        st = nxt
    raise DomainError(f"separatrix from {p.name} is not a saddle connection within {maxSteps} steps")


def unzip(G: RectangleComplex, connections, maxSteps: int = 100000):
    """Cut G along saddle connections and read off the weighted track of the result.

    `connections` holds (singular point name, prong label) pairs, e.g. the
    source and prong of a SaddleConnection.  Each rectangle crossed at height
    h is split there and each switch interval is split where the cut passes;
    switches left with a single end on each side are then erased.  The
    result is a new complex whose `pieces[b]` lists the (old branch, low,
    high) strips that make up its branch b.
    """
    bh: Dict[str, set] = {}
    sp: Dict[str, set] = {}
    for name, prong in connections:
        p = G.singular(name)
        if prong not in dict(G.prongs(p)):
            raise DomainError(f"{name} has no prong {prong!r}")
        cuts, marks, _ = _cut_trace(G, p, prong, maxSteps)
        for b, h in cuts:
            if 0 < h < G.w[b]:
                bh.setdefault(b, set()).add(h)
        for sw, t in marks:
            if 0 < t < G.length[sw]:
                sp.setdefault(sw, set()).add(t)
    tr = G.track
    cutpos = {sw: sorted(sp.get(sw, ())) for sw in tr.switches}

    def sub(sw, lo, hi):
        cs = cutpos[sw]
        if not cs:
            return sw
        mid = (lo + hi) / 2
        return f"{sw}.{sum(1 for c in cs if c < mid)}"

    pieces: Dict[str, List[Tuple[str, Fraction, Fraction]]] = {}
    where: Dict[Tuple[str, str], List[Tuple[Fraction, HalfEdge]]] = {}
    branches, weights = {}, {}
    for b, (u, v) in tr.branches.items():
        hs = [Fraction(0)] + sorted(bh.get(b, ())) + [G.w[b]]
        for i, (lo, hi) in enumerate(zip(hs, hs[1:])):
            nb = b if len(hs) == 2 else f"{b}.{i}"
            weights[nb] = hi - lo
            pieces[nb] = [(b, lo, hi)]
            ends = []
            for end in ("s", "f"):
                he = (b, end)
                loc = tr.side_of(he)
                if loc is None:
                    # an end dangling at the frontier keeps its switch
                    ends.append(tr.branches[b][0 if end == "s" else 1])
                    continue
                sw, side = loc
                a, c = sorted((G._pos(he, lo), G._pos(he, hi)))
                nsw = sub(sw, a, c)
                where.setdefault((nsw, side), []).append((a, (nb, end)))
                ends.append(nsw)
            branches[nb] = (ends[0], ends[1])
    used = {k[0] for k in where} | {x for e in branches.values() for x in e}
    sws = [x for sw in tr.switches
           for x in ([sw] if not cutpos[sw] else [f"{sw}.{i}" for i in range(len(cutpos[sw]) + 1)]) if x in used]
    inc = {sw: [he for _, he in sorted(where.get((sw, "in"), []))] for sw in sws}
    out = {sw: [he for _, he in sorted(where.get((sw, "out"), []))] for sw in sws}
    frontier = {sw for sw in sws if sw.split(".")[0] in tr.frontier}
    t, w = _erase_bivalent(sws, branches, inc, out, frontier, weights, pieces, dict(tr.metadata))
    H = RectangleComplex(t, w)
    H.pieces = pieces
    return H


def _erase_bivalent(sws, branches, inc, out, frontier, weights, pieces, metadata):
    sws = list(sws)
    for sw in list(sws):
        if sw in frontier or len(inc[sw]) != 1 or len(out[sw]) != 1:
            continue
        (x, ex), (y, ey) = inc[sw][0], out[sw][0]
        if x == y:
            continue
        # orient x into sw and y out of sw; the merged branch runs x then y
        x_far = (x, "s" if ex == "f" else "f")
        y_far = (y, "f" if ey == "s" else "s")
        z = f"{x}+{y}" if len(x) + len(y) < 40 else f"z{len(branches)}"
        while z in branches:
            z += "'"
        u = branches[x][0] if ex == "f" else branches[x][1]
        v = branches[y][1] if ey == "s" else branches[y][0]
        branches[z] = (u, v)
        weights[z] = weights[x]
        pieces[z] = pieces.pop(x) + pieces.pop(y)
        ren = {x_far: (z, "s"), y_far: (z, "f")}
        for d in (inc, out):
            for k, lst in d.items():
                d[k] = [ren.get(he, he) for he in lst]
        del branches[x], branches[y], weights[x], weights[y]
        del inc[sw], out[sw]
        sws.remove(sw)
    t = TrainTrack(sws, branches, inc, out, frontier, metadata)
    return t, weights


def ribbon_isomorphic(A: TrainTrack, wA, B: TrainTrack, wB, a0: str, b0: str, scale=Fraction(1),
                      radius: int = 6, swap: bool = False, reverse: bool = False) -> bool:
    """Does a0 in A have the same neighbourhood as b0 in B, with wA = scale * wB?

    The map sends rectangles to rectangles.  At each switch it may exchange
    the two sides and may reverse the interval; these choices are fixed at
    a0 by `swap` and `reverse` and propagate along branches.  Switches
    farther than `radius` from a0, or on either frontier, are not checked.
    """
    dist = switch_distance(A, [a0])
    m = {a0: (b0, swap, reverse)}
    bm: Dict[str, Tuple[str, bool, bool]] = {}
    todo = [a0]
    other = {"in": "out", "out": "in"}
    while todo:
        sa = todo.pop()
        sb, sg, rv = m[sa]
        if sa in A.frontier or sb in B.frontier or dist.get(sa, radius + 1) > radius:
            continue
        for side in ("in", "out"):
            la = A.side_list(sa, side)
            lb = B.side_list(sb, other[side] if sg else side)
            if rv:
                lb = list(reversed(lb))
            if len(la) != len(lb):
                return False
            for ha, hb in zip(la, lb):
                if wA[ha[0]] != scale * wB[hb[0]]:
                    return False
                flip = A.reversed_end(ha) ^ B.reversed_end(hb) ^ rv
                key = (hb[0], ha[1] == hb[1], flip)
                if bm.setdefault(ha[0], key) != key:
                    return False
                ha2 = (ha[0], "f" if ha[1] == "s" else "s")
                hb2 = (hb[0], "f" if hb[1] == "s" else "s")
                la2, lb2 = A.side_of(ha2), B.side_of(hb2)
                if la2 is None or lb2 is None:
                    continue
                img = (lb2[0], la2[1] != lb2[1], A.reversed_end(ha2) ^ B.reversed_end(hb2) ^ flip)
                if la2[0] in m:
                    if m[la2[0]] != img:
                        return False
                else:
                    m[la2[0]] = img
                    todo.append(la2[0])
    return True


def redConnections(G: RectangleComplex, level: int = 0) -> List[Tuple[str, str]]:
    """The saddle connections cut by one unzip of a complex built from T1 or a cover of it.

    On each sheet: the separatrix from the fold point of M_level, and the one
    from the upper singular point of G_(level+1) (each by its lone prong).
    """
    out = []
    pts = G.singular_points()
    sheets = sorted({sw[len(f"M{level}"):] for sw in G.track.switches
                     if sw.startswith(f"M{level}") and sw[len(f"M{level}"):len(f"M{level}") + 1] in ("", "~")})
    for sfx in sheets:
        for sw, pick in ((f"M{level}{sfx}", min), (f"G{level + 1}{sfx}", max)):
            cand = [p for p in pts if p.switch == sw]
            if not cand:
                raise DomainError(f"no singular point at {sw}")
            p = pick(cand, key=lambda q: q.pos)
            lone = [l for l, _ in G.prongs(p) if l.startswith("a")]
            out.append((p.name, lone[0]))
    return out


def _sheet(sw: str) -> int:
    if "~" not in sw:
        return 0
    return int(sw.split("~")[1].split(".")[0])


def cuspRectangles(G: RectangleComplex) -> Dict[str, int]:
    """First rectangle of the ray alpha at each X-side cusp, keyed to the cusp's sheet."""
    res = {}
    for p in G.singular_points():
        if _base(p.switch) == "X":
            for lbl, st in G.prongs(p):
                if lbl.startswith("a"):
                    res[st.branch] = _sheet(p.switch)
    return res


def alphaEntries(G: RectangleComplex, H: RectangleComplex, steps: int = 4000, count: int = 2) -> Dict[int, List[int]]:
    """For each cusp ray alpha_i of G, the sheets of the first cusp rectangles of H it passes through.

    H must come from unzip(G, ...); alpha_i is followed in G and located in H
    through the strips that make up H's branches.
    """
    rect = cuspRectangles(H)
    strip: Dict[str, List[Tuple[Fraction, Fraction, str]]] = {}
    for nb, lst in H.pieces.items():
        for b, lo, hi in lst:
            strip.setdefault(b, []).append((lo, hi, nb))
    out = {}
    for p in G.singular_points():
        if _base(p.switch) != "X":
            continue
        st = [s for l, s in G.prongs(p) if l.startswith("a")][0]
        seen: List[int] = []
        for _ in range(steps):
            hit = [nb for lo, hi, nb in strip.get(st.branch, []) if lo < st.height < hi]
            if hit and hit[0] in rect and (not seen or seen[-1] != rect[hit[0]]):
                seen.append(rect[hit[0]])
                if len(seen) >= count:
                    break
            nxt, q = G.step(st, None)
            if nxt is None:
                break
            st = nxt
        out[_sheet(p.switch)] = seen
    return out


def _base(sw: str) -> str:
    return sw.split("~")[0].split(".")[0]


def unzipIsomorphic(G: RectangleComplex, H: RectangleComplex, scale=Fraction(1, 4), radius: int = 10) -> bool:
    """Is H, around one of its bigon switches, a copy of G with every height multiplied by scale?

    The bigon switches are the descendants of Y that still take two ends in.
    """
    ha = [sw for sw in H.track.switches if _base(sw) == "Y" and len(H.track.incoming.get(sw, [])) == 2
          and sw not in H.track.frontier]
    gb = [sw for sw in G.track.switches if _base(sw) == "Y" and len(G.track.incoming.get(sw, [])) == 2]
    if not ha or not gb:
        return False
    return any(ribbon_isomorphic(H.track, H.w, G.track, G.w, ha[0], b0, scale, radius, sw, rv)
               for b0 in gb for sw in (False, True) for rv in (False, True))
