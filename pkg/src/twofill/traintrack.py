"""Weighted train tracks with ordered branch ends, and the specific tracks T, T*, T1, Tn."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .numerics import DomainError, Q, fmt

# A half-edge is (branch, end) with end "s" (start) or "f" (finish).
HalfEdge = Tuple[str, str]


@dataclass
class TrainTrack:
    switches: List[str]
    branches: Dict[str, Tuple[str, str]]  # name -> (from switch, to switch)
    incoming: Dict[str, List[HalfEdge]]
    outgoing: Dict[str, List[HalfEdge]]
    frontier: set = field(default_factory=set)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self._side = {}
        for sw in self.switches:
            for side, lst in (("in", self.incoming.get(sw, [])), ("out", self.outgoing.get(sw, []))):
                for he in lst:
                    if he in self._side:
                        raise DomainError(f"half-edge {he} listed twice")
                    self._side[he] = (sw, side)
        for b, (u, v) in self.branches.items():
            for he, sw in (((b, "s"), u), ((b, "f"), v)):
                if he not in self._side:
                    if sw in self.frontier or sw is None:
                        continue
                    raise DomainError(f"half-edge {he} is not listed at switch {sw}")
                if self._side[he][0] != sw:
                    raise DomainError(f"half-edge {he} listed at the wrong switch")
        for sw in self.switches:
            if sw in self.frontier:
                continue
            if not self.incoming.get(sw) or not self.outgoing.get(sw):
                raise DomainError(f"switch {sw} needs incoming and outgoing branches")

    def side_of(self, he: HalfEdge):
        """(switch, 'in'|'out') for a half-edge, or None if it dangles into the frontier."""
        return self._side.get(he)

    def reversed_end(self, he: HalfEdge) -> bool:
        """True when the end sits on the side opposite to the usual one (start on 'in', finish on 'out')."""
        sw_side = self._side.get(he)
        if sw_side is None:
            return False
        return (he[1] == "s") == (sw_side[1] == "in")

    def side_list(self, sw: str, side: str) -> List[HalfEdge]:
        return (self.incoming if side == "in" else self.outgoing).get(sw, [])

    def restrict(self, keep: Iterable[str]) -> "TrainTrack":
        """Subtrack on the given branches; switches that lose incident ends become frontier."""
        keep = set(keep)
        inc = {sw: [he for he in l if he[0] in keep] for sw, l in self.incoming.items()}
        out = {sw: [he for he in l if he[0] in keep] for sw, l in self.outgoing.items()}
        used = {sw for sw in self.switches if inc.get(sw) or out.get(sw)}
        frontier = {sw for sw in used
                    if len(inc.get(sw, [])) != len(self.incoming.get(sw, []))
                    or len(out.get(sw, [])) != len(self.outgoing.get(sw, []))
                    or sw in self.frontier}
        sws = [sw for sw in self.switches if sw in used]
        return TrainTrack(sws, {b: self.branches[b] for b in self.branches if b in keep},
                          {sw: inc.get(sw, []) for sw in sws}, {sw: out.get(sw, []) for sw in sws},
                          frontier, dict(self.metadata))

    # ---------------------------------------------------------------- I/O
    def half_edge_label(self, he: HalfEdge) -> str:
        b, end = he
        u, v = self.branches[b]
        if u == v:
            return f"{b}[{'start' if end == 's' else 'end'}]"
        return b

    def to_json(self, weights: Optional[Dict[str, Fraction]] = None) -> dict:
        d = {
            "switches": list(self.switches),
            "branches": [{"name": b, "from": u, "to": v} for b, (u, v) in self.branches.items()],
            "incoming": {sw: [self.half_edge_label(h) for h in self.incoming.get(sw, [])] for sw in self.switches},
            "outgoing": {sw: [self.half_edge_label(h) for h in self.outgoing.get(sw, [])] for sw in self.switches},
            "frontier": sorted(self.frontier),
        }
        if weights is not None:
            d["weights"] = {b: fmt(weights[b]) for b in self.branches}
        if self.metadata:
            d["metadata"] = self.metadata
        return d

    @classmethod
    def from_json(cls, d: dict):
        branches = {e["name"]: (e["from"], e["to"]) for e in d["branches"]}

        def parse_he(lbl: str, sw: str, side: str) -> HalfEdge:
            if lbl.endswith("[start]"):
                return (lbl[:-7], "s")
            if lbl.endswith("[end]"):
                return (lbl[:-5], "f")
            u, v = branches[lbl]
            return (lbl, "f") if (side == "in" and v == sw) else (lbl, "s")

        inc = {sw: [parse_he(x, sw, "in") for x in l] for sw, l in d["incoming"].items()}
        out = {sw: [parse_he(x, sw, "out") for x in l] for sw, l in d["outgoing"].items()}
        t = cls(list(d["switches"]), branches, inc, out, set(d.get("frontier", [])), d.get("metadata", {}))
        w = {b: Q(x) for b, x in d["weights"].items()} if "weights" in d else None
        return t, w

    def to_dot(self, weights=None) -> str:
        lines = ["digraph track {", "  rankdir=LR;"]
        for sw in self.switches:
            shape = "box" if sw in self.frontier else "point"
            lines.append(f'  "{sw}" [shape={shape}, xlabel="{sw}"];')
        for b, (u, v) in self.branches.items():
            lbl = b if weights is None else f"{b} ({fmt(weights[b])})"
            lines.append(f'  "{u}" -> "{v}" [label="{lbl}"];')
        lines.append("}")
        return "\n".join(lines)


WeightSystem = Dict[str, Fraction]


# ------------------------------------------------------------ generic checks


def checkSwitchConditions(track: TrainTrack, weights: WeightSystem) -> List[dict]:
    report = []
    for sw in track.switches:
        if sw in track.frontier:
            continue
        si = sum((weights[b] for b, _ in track.incoming.get(sw, [])), Fraction(0))
        so = sum((weights[b] for b, _ in track.outgoing.get(sw, [])), Fraction(0))
        if si != so:
            report.append({"switch": sw, "incoming": fmt(si), "outgoing": fmt(so)})
    for b, w in weights.items():
        if w < 0:
            report.append({"branch": b, "negative": fmt(w)})
    return report


def _ends(d: int) -> Tuple[str, str]:
    """(entry end, exit end) when traversing a branch in direction d."""
    return ("s", "f") if d > 0 else ("f", "s")


def connects(track: TrainTrack, a: Tuple[str, int], b: Tuple[str, int]) -> bool:
    """Does oriented branch a followed by oriented branch b form a train path?"""
    out_he = (a[0], _ends(a[1])[1])
    in_he = (b[0], _ends(b[1])[0])
    sa, sb = track.side_of(out_he), track.side_of(in_he)
    if sa is None or sb is None:
        return False
    return sa[0] == sb[0] and sa[1] != sb[1]


def orient_path(track: TrainTrack, seq: Sequence) -> Optional[List[Tuple[str, int]]]:
    """Find orientations making seq a train path; items are names or (name, +-1)."""
    items = []
    for it in seq:
        if isinstance(it, tuple):
            name, d = it
            opts = [d]
        else:
            name, opts = it, [1, -1]
        if name not in track.branches:
            raise DomainError(f"unknown branch {name!r}")
        items.append((name, opts))
    if not items:
        return []
    frontier = [[(items[0][0], d)] for d in items[0][1]]
    for name, opts in items[1:]:
        nxt = []
        for p in frontier:
            for d in opts:
                if connects(track, p[-1], (name, d)):
                    nxt.append(p + [(name, d)])
        frontier = nxt
        if not frontier:
            return None
    return frontier[0]


def isTrainPath(track: TrainTrack, seq: Sequence) -> bool:
    return orient_path(track, seq) is not None


# ------------------------------------------------------------------ track T
#
# Switches: X (b-1 into the bigon), Y (bigon into b0), K_n (b_n splits into
# b_{n+1}, c_{n+1}), M_n (c_n, or b-1 for n=0, meets the monogon d_n).


def _raw_T(N: int):
    sw = ["M0", "X", "Y"] + [f"K{n}" for n in range(N + 1)] + [f"M{n}" for n in range(1, N + 1)]
    br = {"b-1": ("M0", "X"), "e1": ("X", "Y"), "e2": ("X", "Y"), "b0": ("Y", "K0"), "d0": ("M0", "M0")}
    w = {"b-1": Fraction(1), "b0": Fraction(1), "e1": Fraction(1, 3), "e2": Fraction(2, 3), "d0": Fraction(1, 2)}
    inc = {"M0": [("d0", "f"), ("d0", "s")], "X": [("b-1", "f")], "Y": [("e1", "f"), ("e2", "f")], "K0": [("b0", "f")]}
    out = {"M0": [("b-1", "s")], "X": [("e1", "s"), ("e2", "s")], "Y": [("b0", "s")]}
    for n in range(1, N + 1):
        br[f"b{n}"] = (f"K{n - 1}", f"K{n}")
        br[f"c{n}"] = (f"K{n - 1}", f"M{n}")
        br[f"d{n}"] = (f"M{n}", f"M{n}")
        w[f"b{n}"] = w[f"c{n}"] = Fraction(1, 2 ** n)
        w[f"d{n}"] = Fraction(1, 2 ** (n + 1))
        pair = [(f"b{n}", "s"), (f"c{n}", "s")]
        out[f"K{n - 1}"] = pair if (n - 1) % 2 == 0 else pair[::-1]
        inc[f"K{n}"] = [(f"b{n}", "f")]
        inc[f"M{n}"] = [(f"c{n}", "f")]
        out[f"M{n}"] = [(f"d{n}", "s"), (f"d{n}", "f")]
    out.setdefault(f"K{N}", [])
    return sw, br, w, inc, out


def _index(name: str) -> Optional[int]:
    core = name.rstrip("*")
    digits = core[1:]
    try:
        return int(digits)
    except ValueError:
        return None


def buildT(depth: int):
    if depth < 2:
        raise DomainError("depth must be >= 2")
    sw, br, w, inc, out = _raw_T(depth + 1)
    full = TrainTrack(sw, br, inc, out, {f"K{depth + 1}"})
    keep = [b for b in br if b.startswith("e") or (_index(b) is not None and _index(b) <= depth)]
    t = full.restrict(keep)
    t.metadata = {"track": "T", "depth": depth}
    return t, {b: w[b] for b in keep}


# ----------------------------------------------------------------- track T*
#
# The line ... f_{-1} f_0 f_1 ... runs through switches J_k (f_{k-1} -> f_k).
# b1* and f_{-1}* both flow into J_0.  For k >= 1: J_k with k odd sends off
# c_{k+1}*, k even carries the monogon h_{k-1}*.  For k >= 1 on the negative
# side: J_{-k} with k odd carries h_{k+1}*, k even receives c_{k+1}*.


def _raw_TStar(N: int):
    S = "*"
    sw = ["M0", "X", "Y", "K0"] + [f"J{k}" for k in range(-N, N + 1)] + [f"M{n}" for n in range(1, N + 1)]
    br = {
        "b-1*": ("M0", "X"), "e1*": ("X", "Y"), "e2*": ("X", "Y"), "b0*": ("Y", "K0"), "d0*": ("M0", "M0"),
        "b1*": ("K0", "J0"), "c1*": ("K0", "M1"), "d1*": ("M1", "M1"),
    }
    inc = {"M0": [("d0*", "f"), ("d0*", "s")], "X": [("b-1*", "f")], "Y": [("e1*", "f"), ("e2*", "f")],
           "K0": [("b0*", "f")], "M1": [("c1*", "f")]}
    out = {"M0": [("b-1*", "s")], "X": [("e1*", "s"), ("e2*", "s")], "Y": [("b0*", "s")],
           "K0": [("b1*", "s"), ("c1*", "s")], "M1": [("d1*", "s"), ("d1*", "f")]}
    for k in range(-N, N):
        br[f"f{k}*"] = (f"J{k}", f"J{k + 1}")
    for sw_ in sw:
        inc.setdefault(sw_, [])
        out.setdefault(sw_, [])
    for k in range(-N, N + 1):
        J = f"J{k}"
        if k - 1 >= -N:
            inc[J].append((f"f{k - 1}*", "f"))
        if k < N:
            out[J].append((f"f{k}*", "s"))
    inc["J0"] = [("b1*", "f"), ("f-1*", "f")]
    for k in range(1, N + 1):
        J = f"J{k}"
        if k % 2 == 1:
            n = k + 1
            if n <= N:
                br[f"c{n}*"] = (J, f"M{n}")
                br[f"d{n}*"] = (f"M{n}", f"M{n}")
                out[J].insert(0, (f"c{n}*", "s"))
                inc[f"M{n}"] = [(f"c{n}*", "f")]
                out[f"M{n}"] = [(f"d{n}*", "s"), (f"d{n}*", "f")]
        else:
            n = k - 1
            br[f"h{n}*"] = (J, J)
            out[J] = [(f"h{n}*", "s")] + out[J] + [(f"h{n}*", "f")]
    for k in range(1, N + 1):
        J = f"J{-k}"
        if k % 2 == 1:
            n = k + 1
            if n <= N:
                br[f"h{n}*"] = (J, J)
                inc[J] = [(f"h{n}*", "f")] + inc[J] + [(f"h{n}*", "s")]
        else:
            n = k + 1
            if n <= N:
                br[f"c{n}*"] = (f"M{n}", J)
                br[f"d{n}*"] = (f"M{n}", f"M{n}")
                inc[J].append((f"c{n}*", "f"))
                out[f"M{n}"] = [(f"c{n}*", "s")]
                inc[f"M{n}"] = [(f"d{n}*", "f"), (f"d{n}*", "s")]
    return sw, br, inc, out


def tstar_listed_weights(name: str) -> Optional[Fraction]:
    """Closed forms for w* (used only as an independent oracle in tests)."""
    core = name.rstrip("*")
    kind, idx = core[0], _index(name)
    table = {"e1": Fraction(1, 3), "e2": Fraction(2, 3), "b-1": Fraction(1), "b0": Fraction(1), "b1": Fraction(1, 2)}
    if core in table:
        return table[core]
    if kind == "c":
        return Fraction(1, 2 ** idx)
    if kind == "d":
        return Fraction(1, 2 ** (idx + 1))
    if kind == "h":
        return Fraction(1, 2 ** (idx + 1))
    if kind == "f":
        if idx <= 0:
            return Fraction(1, 2 ** (-idx))
        m = (idx + 1) // 2
        return Fraction(3, 4 ** m) if idx % 2 else Fraction(1, 4 ** m)
    return None


def buildTStar(depth: int, weights: Optional[WeightSystem] = None):
    """T* truncated to branches of index <= depth in absolute value.

    Weights default to the induced weights from the carrying map.
    """
    if depth < 2:
        raise DomainError("depth must be >= 2")
    N = depth + 2
    sw, br, inc, out = _raw_TStar(N)
    full = TrainTrack(sw, br, inc, out, {f"J{-N}", f"J{N}"})
    keep = [b for b in br if b.startswith("e") or abs(_index(b)) <= depth]
    t = full.restrict(keep)
    t.metadata = {"track": "T*", "depth": depth}
    if weights is None:
        from .carrying import inducedWeights

        weights = inducedWeights(names=keep)
    return t, {b: weights[b] for b in keep}


# --------------------------------------------------------------- pieces


@dataclass
class Piece:
    name: str
    interior: List[str]  # branches wholly inside
    stubs: Dict[str, Tuple[str, str]]  # branch -> (switch inside the piece, boundary label)


def piece_V() -> Piece:
    return Piece("V", ["e1*", "e2*", "b-1*", "d0*", "b0*", "b1*"],
                 {"c1*": ("K0", "C0"), "f-1*": ("J0", "C0"), "f0*": ("J0", "C-1")})


def piece_U(m: int = 1) -> Piece:
    """The repeating piece around block 2m+2 and the monogon h_{2m+1}."""
    k = 2 * m
    return Piece("U", [f"f{k + 1}*", f"c{k + 2}*", f"d{k + 2}*", f"h{k + 1}*"],
                 {f"f{k}*": (f"J{k + 1}", f"C{-m}"), f"f{k + 2}*": (f"J{k + 2}", f"C{-m - 1}")})


@dataclass
class PiecePath:
    branches: List[Tuple[str, int]]
    entry: str
    exit: str

    @property
    def self_return(self) -> bool:
        return self.entry == self.exit


def _stub_entry(track: TrainTrack, b: str, sw: str) -> Tuple[str, int]:
    """Orientation that enters the piece through stub b at switch sw."""
    u, v = track.branches[b]
    return (b, 1) if v == sw else (b, -1)


def enumeratePathsThroughPiece(track: TrainTrack, piece, maxLen: int = 64) -> List[PiecePath]:
    if isinstance(piece, str):
        piece = {"V": piece_V, "U": piece_U}[piece]()
    inside = set(piece.interior)
    found = []
    for b, (sw, label) in piece.stubs.items():
        start = _stub_entry(track, b, sw)
        stack = [[start]]
        while stack:
            p = stack.pop()
            if len(p) > maxLen:
                raise DomainError("piece admits arbitrarily long train paths")
            for nb in list(inside) + list(piece.stubs):
                for d in (1, -1):
                    if not connects(track, p[-1], (nb, d)):
                        continue
                    if nb in piece.stubs:
                        sw2, lab2 = piece.stubs[nb]
                        if _stub_entry(track, nb, sw2) == (nb, -d):
                            found.append(PiecePath(p + [(nb, d)], label, lab2))
                    else:
                        stack.append(p + [(nb, d)])
    uniq = {}
    for pp in found:
        key = tuple(pp.branches)
        rev = tuple((b, -d) for b, d in reversed(pp.branches))
        k = min(key, rev)
        uniq.setdefault(k, pp)
    return [uniq[k] for k in sorted(uniq)]


def path_has_interior(track: TrainTrack, piece: Piece, pp: PiecePath) -> bool:
    """Does the path use an interior branch, or at least pass an interior switch between two stubs?"""
    if any(b in piece.interior for b, _ in pp.branches[1:-1]):
        return True
    return len(pp.branches) >= 2


# ------------------------------------------------------------------ track T1
#
# A bigon e1 (1/3), e2 (2/3) from X to Y.  Behind X the branch p0 (weight 1)
# runs from M0, folded by the monogon d0.  Beyond Y hangs a chain: level
# k >= 1 has a quadrivalent switch G_k where the spine s_{k-1} sheds the
# monogon g_k (weight 4^-k) and continues as t_k, then a trivalent switch K_k
# where t_k splits into s_k and c_k, and c_k ends at the monogon m_k (weight
# 1/(8 4^(k-1))).  t_k lies under g_k, and c_k under s_k.  Weights other than
# the bigon and the loops come from solving the switch conditions.


def solve_exact(rows: List[Dict[str, Fraction]], rhs: List[Fraction], unknowns: List[str]) -> Dict[str, Fraction]:
    """Gauss-Jordan elimination over the rationals; raises unless the solution is unique."""
    m = [[r.get(u, Fraction(0)) for u in unknowns] + [b] for r, b in zip(rows, rhs)]
    col_of = []
    r = 0
    for c in range(len(unknowns)):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            raise DomainError(f"weight of {unknowns[c]} is not determined by the switch conditions")
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        col_of.append(r)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            raise DomainError("switch conditions are inconsistent")
    return {u: m[col_of[j]][-1] for j, u in enumerate(unknowns)}


def _raw_T1(N: int):
    br = {"e1": ("X", "Y"), "e2": ("X", "Y"), "p0": ("M0", "X"), "d0": ("M0", "M0")}
    inc: Dict[str, List[HalfEdge]] = {"X": [("p0", "f")], "Y": [("e1", "f"), ("e2", "f")],
                                      "M0": [("d0", "f"), ("d0", "s")]}
    out: Dict[str, List[HalfEdge]] = {"X": [("e1", "s"), ("e2", "s")], "Y": [("s0", "s")], "M0": [("p0", "s")]}
    given = {"e1": Fraction(1, 3), "e2": Fraction(2, 3), "d0": Fraction(1, 2)}
    prev = "Y"
    for k in range(1, N + 1):
        G, K, M = f"G{k}", f"K{k}", f"M{k}"
        s, t, c, g, m = f"s{k - 1}", f"t{k}", f"c{k}", f"g{k}", f"m{k}"
        given[g] = Fraction(1, 4 ** k)
        given[m] = Fraction(1, 8 * 4 ** (k - 1))
        br.update({s: (prev, G), t: (G, K), c: (K, M), g: (G, G), m: (M, M)})
        inc[G], out[G] = [(s, "f")], [(t, "s"), (g, "s"), (g, "f")]
        inc[K], out[K] = [(t, "f")], [(c, "s"), (f"s{k}", "s")]
        inc[M], out[M] = [(c, "f")], [(m, "s"), (m, "f")]
        prev = K
    br[f"s{N}"] = (prev, None)
    return list(inc), br, inc, out, given


def buildT1(depth: int):
    if depth < 1:
        raise DomainError("depth must be >= 1")
    N = depth + 1
    sw, br, inc, out, given = _raw_T1(N)
    ends = {br[f"s{N}"][0]}
    cut = br[f"s{depth}"][0]
    br = {b: e for b, e in br.items() if None not in e}
    inc = {s: [h for h in l if h[0] in br] for s, l in inc.items()}
    out = {s: [h for h in l if h[0] in br] for s, l in out.items()}
    full = TrainTrack(sw, br, inc, out, ends)
    keep = [b for b in br if b in ("e1", "e2", "p0", "d0") or _index(b) < depth
            or (b[0] != "s" and _index(b) == depth)]
    t = full.restrict(keep)
    # the spine leaving the last kept level is cut off, so that switch joins the frontier
    t.frontier.add(cut)
    # sheet shifts for cyclic covers: the bigon and every handle loop advance one sheet
    deck = {"e1": 1}
    deck.update({b: 1 for b in quadrivalent_names(keep)})
    t.metadata = {"track": "T1", "depth": depth, "cycle": ["e1", "e2"], "core": ["X", "Y"], "deck": deck,
                  "assumption": "level pattern of the first levels repeated with weights scaled by 1/4"}
    unknowns = [b for b in keep if b not in given]
    rows, rhs = [], []
    for s_ in t.switches:
        if s_ in t.frontier:
            continue
        row: Dict[str, Fraction] = {}
        const = Fraction(0)
        for sign, lst in ((1, t.incoming[s_]), (-1, t.outgoing[s_])):
            for b, _ in lst:
                if b in given:
                    const -= sign * given[b]
                else:
                    row[b] = row.get(b, Fraction(0)) + sign
        rows.append(row)
        rhs.append(const)
    solved = solve_exact(rows, rhs, unknowns)
    w = {b: (given[b] if b in given else solved[b]) for b in keep}
    return t, w


def quadrivalent_names(names) -> List[str]:
    return [b for b in names if b.startswith("g") and _index(b) is not None]


def trivalent_loops(track: TrainTrack) -> List[str]:
    return [b for b, (u, v) in track.branches.items() if u == v and u not in track.frontier
            and len(track.incoming[u]) + len(track.outgoing[u]) == 3]


def quadrivalent_loops(track: TrainTrack) -> List[str]:
    return [b for b, (u, v) in track.branches.items() if u == v and u not in track.frontier
            and len(track.incoming[u]) + len(track.outgoing[u]) == 4]


# ------------------------------------------------------------- cyclic covers


def cyclicCover(base, n: int, shifts: Optional[Dict[str, int]] = None):
    """Degree-n cyclic cover unwrapping the designated bigon cycle.

    Sheets are indexed 0..n-1.  A branch b with shift k runs from sheet i to
    sheet i+k; shifts default to the track's "deck" metadata, or else to 1
    on the first branch of the cycle only.
    Branch b on sheet i is named "b~i" (n = 1 returns the base unchanged).
    """
    track, w = base
    cyc = track.metadata.get("cycle")
    if not cyc or any(b not in track.branches for b in cyc):
        raise DomainError("track has no designated cycle to unwrap")
    if n < 1:
        raise DomainError("degree must be >= 1")
    if n == 1:
        return track, dict(w)
    if shifts is None:
        shifts = track.metadata.get("deck") or {cyc[0]: 1}

    def lift_sw(sw, i):
        return f"{sw}~{i}"

    sws = [lift_sw(s, i) for i in range(n) for s in track.switches]
    br, inc, out, wn = {}, {}, {}, {}
    for i in range(n):
        for b, (u, v) in track.branches.items():
            j = (i + shifts.get(b, 0)) % n
            br[f"{b}~{i}"] = (lift_sw(u, i), lift_sw(v, j))
            wn[f"{b}~{i}"] = w[b]
    for i in range(n):
        for s in track.switches:
            for src, dst in ((track.incoming, inc), (track.outgoing, out)):
                lst = []
                for b, end in src.get(s, []):
                    # the finish of a shifted branch lands on a later sheet
                    sheet = (i - shifts.get(b, 0)) % n if end == "f" else i
                    lst.append((f"{b}~{sheet}", end))
                dst[lift_sw(s, i)] = lst
    fr = {lift_sw(s, i) for s in track.frontier for i in range(n)}
    md = dict(track.metadata)
    md.update({"track": f"T{n}" if track.metadata.get("track") == "T1" else f"cover{n}", "degree": n,
               "core": [lift_sw(s, i) for s in track.metadata.get("core", []) for i in range(n)],
               "cycle": None, "deck": None})
    return TrainTrack(sws, br, inc, out, fr, md), wn


def project(name: str) -> str:
    """Covering projection on branch or switch names."""
    return name.split("~")[0]
