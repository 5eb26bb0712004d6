"""Reduced words for loops and rays based at the puncture, with the circular order.

Words are stored as ``bytes``; generator g_k is code 2k and its inverse is 2k+1.
The loop r_i is g_{2i-2} traversed clockwise (so the inverse letter) and l_i is
g_{2i-1} traversed counterclockwise.  Bars are reversals, i.e. group inverses.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Union

from .numerics import DomainError

MAX_GEN = 127
INV = bytes((c ^ 1) for c in range(256))


class Order(enum.Enum):
    Less = "Less"
    Greater = "Greater"
    Equal = "Equal"
    UnknownAtDepth = "UnknownAtDepth"


class CancellationError(RuntimeError):
    pass


# ----------------------------------------------------------------- letters


def letter(k: int, inverse: bool = False) -> int:
    if not 0 <= k <= MAX_GEN:
        raise DomainError(f"generator index {k} out of range")
    return 2 * k + (1 if inverse else 0)


def word(*codes: int) -> bytes:
    return bytes(codes)


def inverse(w: bytes) -> bytes:
    return w[::-1].translate(INV)


reverse = inverse
bar = inverse


def is_reduced(w: bytes) -> bool:
    return all(w[i] ^ 1 != w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: bytes) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] ^ 1 != w[-1])


def reduce_word(w: Iterable[int]) -> bytes:
    out = bytearray()
    for c in w:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return bytes(out)


def concatAtInfinity(u: bytes, v: bytes):
    """Free reduction of u·v.  Returns (word, cancelled)."""
    n = 0
    m = min(len(u), len(v))
    while n < m and u[-1 - n] == v[n] ^ 1:
        n += 1
    return u[: len(u) - n] + v[n:], n > 0


def join(*parts: bytes) -> bytes:
    """Concatenate, refusing any cancellation."""
    out = parts[0]
    for p in parts[1:]:
        if out and p and out[-1] == p[0] ^ 1:
            raise CancellationError(
                f"cancellation between ...{show(out[-3:])} and {show(p[:3])}..."
            )
        out = out + p
    return out


# ------------------------------------------------------------ loop letters


def r(i: int) -> bytes:
    if i < 1:
        raise DomainError("r_i needs i >= 1")
    return bytes([letter(2 * i - 2, True)])


def l(i: int) -> bytes:
    if i < 1:
        raise DomainError("l_i needs i >= 1")
    return bytes([letter(2 * i - 1, False)])


def buildApproachingLoops(i: int):
    return r(i), l(i)


# -------------------------------------------------------------- formatting


def show(w: bytes) -> str:
    """g-alphabet form, e.g. "g0 g1' g0'"."""
    return " ".join(f"g{c >> 1}" + ("'" if c & 1 else "") for c in w)


def show_rl(w: bytes) -> str:
    """Display alphabet: r/l for the loops, capitals for their bars."""
    out = []
    for c in w:
        k, inv = c >> 1, c & 1
        if k % 2 == 0:
            out.append(("r" if inv else "R") + str(k // 2 + 1))
        else:
            out.append(("L" if inv else "l") + str((k + 1) // 2))
    return " ".join(out)


_G = re.compile(r"^g(\d+)('?)$")
_RL = re.compile(r"^([rRlL])(\d+)$")


def parse(text: str) -> bytes:
    """Parse either alphabet; tokens separated by spaces or dots."""
    codes = []
    for tok in text.replace(".", " ").replace("·", " ").split():
        m = _G.match(tok)
        if m:
            codes.append(letter(int(m.group(1)), bool(m.group(2))))
            continue
        m = _RL.match(tok)
        if not m:
            raise DomainError(f"cannot parse letter {tok!r}")
        kind, i = m.group(1), int(m.group(2))
        base = r(i) if kind in "rR" else l(i)
        codes.append(base[0] if kind.islower() else base[0] ^ 1)
    w = bytes(codes)
    if not is_reduced(w):
        raise DomainError(f"word {text!r} is not reduced")
    return w


# ------------------------------------------------------------------- order
#
# Directions at a vertex, read counterclockwise from the peripheral gap:
#   ... g5 g5' g3 g3' g1 g1' g0 g0' g2 g2' g4 g4' ...
# The same cyclic sequence (closed up through the gap) is used at every vertex.

GAP = -1


def _pos(c: int) -> int:
    k = c >> 1
    if k % 2:
        return -2 * k + (c & 1)
    return 2 * k + (c & 1)


def _key(c: int, back: int):
    if c == GAP:
        return (1, 0)
    p = _pos(c)
    if back == GAP:
        return (0, p)
    p0 = _pos(back)
    return (0, p) if p > p0 else (2, p)


def common_prefix(a: bytes, b: bytes) -> int:
    m = min(len(a), len(b))
    if a[:m] == b[:m]:
        return m
    lo, hi = 0, m  # a[:lo] == b[:lo], a[:hi] != b[:hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[lo:mid] == b[lo:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def compare_words(a: bytes, b: bytes) -> Order:
    """Exact comparison of the cusps (endpoints) of two finite reduced words."""
    if a == b:
        return Order.Equal
    n = common_prefix(a, b)
    back = GAP if n == 0 else a[n - 1] ^ 1
    ca = a[n] if n < len(a) else GAP
    cb = b[n] if n < len(b) else GAP
    return Order.Less if _key(ca, back) < _key(cb, back) else Order.Greater


@dataclass
class RayLimit:
    """Infinite reduced word given by a prefix producer.

    ``producer(n)`` returns a reduced word of length at least n when it can,
    otherwise the longest prefix it has.  Successive outputs must be prefixes
    of each other.
    """

    producer: Callable[[int], bytes]
    name: str = "ray"
    _cache: bytes = field(default=b"", repr=False)

    def prefix(self, n: int) -> bytes:
        if len(self._cache) < n:
            w = self.producer(n)
            if not w.startswith(self._cache):
                raise DomainError(f"{self.name}: producer output is not a prefix extension")
            self._cache = w
        return self._cache[:n]

    @classmethod
    def from_word(cls, w: bytes, name: str = "ray") -> "RayLimit":
        return cls(lambda n: w, name=name, _cache=w)


@dataclass
class CutRay:
    """A point of the circle known only through witnesses on either side."""

    leftWitnesses: List[bytes]
    rightWitnesses: List[bytes]
    name: str = "cut"


Item = Union[bytes, RayLimit, CutRay]


def _compare_ray_word(ray: RayLimit, w: bytes, depth: int) -> Order:
    p = ray.prefix(max(depth, len(w) + 1))
    n = common_prefix(p, w)
    if n == len(p):
        return Order.UnknownAtDepth
    back = GAP if n == 0 else p[n - 1] ^ 1
    cw = w[n] if n < len(w) else GAP
    return Order.Less if _key(p[n], back) < _key(cw, back) else Order.Greater


def _flip(o: Order) -> Order:
    return {Order.Less: Order.Greater, Order.Greater: Order.Less}.get(o, o)


def orderCompare(a: Item, b: Item, depth: int = 1024) -> Order:
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if isinstance(a, (bytes, bytearray)) and isinstance(b, (bytes, bytearray)):
        return compare_words(bytes(a), bytes(b))
    if isinstance(a, CutRay) or isinstance(b, CutRay):
        if isinstance(b, CutRay) and not isinstance(a, CutRay):
            return _flip(orderCompare(b, a, depth))
        if isinstance(b, CutRay):
            return Order.Equal if a is b else Order.UnknownAtDepth
        for w in a.leftWitnesses:
            if orderCompare(w, b, depth) in (Order.Greater, Order.Equal):
                return Order.Greater
        for w in a.rightWitnesses:
            if orderCompare(w, b, depth) in (Order.Less, Order.Equal):
                return Order.Less
        return Order.UnknownAtDepth
    if isinstance(a, RayLimit) and isinstance(b, RayLimit):
        if a is b:
            return Order.Equal
        pa, pb = a.prefix(depth), b.prefix(depth)
        n = common_prefix(pa, pb)
        if n == len(pa) or n == len(pb):
            return Order.UnknownAtDepth
        back = GAP if n == 0 else pa[n - 1] ^ 1
        return Order.Less if _key(pa[n], back) < _key(pb[n], back) else Order.Greater
    if isinstance(a, RayLimit):
        return _compare_ray_word(a, bytes(b), depth)
    return _flip(_compare_ray_word(b, bytes(a), depth))


def tau_cut(m: int = 6) -> CutRay:
    """The ray tau, approached by r_i and l_i.

    In the order read from the gap tau sits at both ends, so the r_i increase
    towards it and the l_i decrease towards it.
    """
    return CutRay([r(i) for i in range(1, m + 1)], [], name="tau")


def orderOfLoopsPattern(m: int = 6) -> List[bytes]:
    """... l2 < L2 < l1 < L1 < R1 < r1 < R2 < r2 ... up to index m."""
    seq = []
    for i in range(m, 0, -1):
        seq += [l(i), bar(l(i))]
    for i in range(1, m + 1):
        seq += [bar(r(i)), r(i)]
    return seq


# ------------------------------------------------------------ substitution


def _subst_table():
    table = {}
    r1 = r(1)[0]
    img = join(r(1), l(1), bar(r(1)), r(2), r(1), bar(l(1)), bar(r(1)))
    table[r1] = img
    table[r1 ^ 1] = inverse(img)
    return table


_F = _subst_table()


def substitutionF(w: bytes) -> bytes:
    out = bytearray()
    for c in w:
        img = _F.get(c)
        if img is None:
            if c >> 1 == 0:
                raise DomainError("letter outside the r/l alphabet")
            if c + 4 > 255:
                raise DomainError("generator index overflow")
            img = bytes([c + 4])
        if out and out[-1] == img[0] ^ 1:
            raise CancellationError("substitution produced cancellation")
        out += img
    return bytes(out)


def alphaSeq(k: int) -> bytes:
    if k < 1:
        raise DomainError("k must be >= 1")
    a = r(1)
    for m in range(2, k + 1):
        j = m // 2 if m % 2 == 0 else (m + 1) // 2
        mid = l(j) if m % 2 == 0 else r(j)
        a = join(a, mid, bar(a))
    return a


def fixed_word_prefix(n: int) -> bytes:
    w = r(1)
    while len(w) < n:
        w = substitutionF(w)
    return w[:n]


def fixed_word_ray() -> RayLimit:
    return RayLimit(lambda n: fixed_word_prefix(max(n, 1)), name="gamma")


# ------------------------------------------------------------ gamma family


def default_seq(n: int) -> Callable[[int], int]:
    return lambda k: n * k


def _check_gaps(n: int, seq: Callable[[int], int], upto: int, name: str):
    for k in range(1, upto + 1):
        if seq(k + 1) - seq(k) < n:
            raise DomainError(f"{name}: gap {name}_{k + 1} - {name}_{k} < {n}")
    if seq(1) < 1:
        raise DomainError(f"{name}_1 must be >= 1")


class GammaFamily:
    """Words alpha^{(i)}_j and gamma^{(i)}_j for 1 <= i <= n."""

    def __init__(self, n: int, p=None, q=None, ell=l, rr=r):
        if n < 1:
            raise DomainError("n must be >= 1")
        self.n = n
        self.p = p or default_seq(n)
        self.q = q or default_seq(n)
        self.ell, self.rr = ell, rr
        self.alpha = {}  # (i, j) -> word
        self.gamma = {}
        self.top = 0

    def build(self, j: int):
        n = self.n
        _check_gaps(n, self.p, (j + 1) // 2 + 1, "p")
        _check_gaps(n, self.q, (j + 1) // 2 + 1, "q")
        while self.top < j:
            m = self.top + 1
            if m % 2 == 1:
                k = (m + 1) // 2
                for i in range(1, n + 1):
                    if m == 1:
                        self.alpha[i, 1] = self.rr(self.q(1) + i - 1)
                    else:
                        g = self.gamma[i, m - 1]
                        self.alpha[i, m] = join(g, self.rr(self.q(k) + i - 1), bar(g))
                self.gamma[1, m] = self.alpha[1, m]
                for i in range(2, n + 1):
                    self.gamma[i, m] = join(self.alpha[i, m], self.gamma[i - 1, m])
            else:
                k = m // 2
                for i in range(n):
                    g = self.gamma[n - i, m - 1]
                    self.alpha[n - i, m] = join(g, self.ell(self.p(k) + i), bar(g))
                self.gamma[n, m] = self.alpha[n, m]
                for i in range(1, n):
                    self.gamma[n - i, m] = join(self.alpha[n - i, m], self.gamma[n - i + 1, m])
            if m > 1:
                for i in range(1, n + 1):
                    if not self.gamma[i, m].startswith(self.gamma[i, m - 1]):
                        raise DomainError(f"prefix chain broken at gamma^({i})_{m}")
            self.top = m
        return self

    def A(self, i: int, j: int) -> bytes:
        self.build(j)
        return self.alpha[i, j]

    def G(self, i: int, j: int) -> bytes:
        self.build(j)
        return self.gamma[i, j]


def gammaFamily(n: int, pSeq=None, qSeq=None, j: int = 1) -> List[bytes]:
    fam = GammaFamily(n, pSeq, qSeq).build(j)
    return [fam.gamma[i, j] for i in range(1, n + 1)]


# ------------------------------------------------------------ verification


@dataclass
class Inequality:
    label: str
    left: bytes
    right: bytes
    strict: bool
    status: str = ""


def _chain(label: str, items: Sequence, strict_flags: Sequence[bool]) -> List[Inequality]:
    out = []
    for t, ((na, a), (nb, b)) in enumerate(zip(items, items[1:])):
        out.append(Inequality(f"{label}: {na} {'<' if strict_flags[t] else '<='} {nb}", a, b, strict_flags[t]))
    return out


def monotonicity_inequalities(fam: GammaFamily, k: int) -> List[Inequality]:
    n = fam.n
    A, G = fam.A, fam.G
    p, q = fam.p, fam.q
    ineqs: List[Inequality] = []
    fam.build(2 * k + 1)
    for i in range(1, n + 1):
        if k > 1:
            ineqs += _chain(
                f"(2a) i={i} k={k}",
                [(f"g^{i}_{2*k-1}", G(i, 2 * k - 1)), (f"g^{i}_{2*k}", G(i, 2 * k)),
                 (f"a^{i}_{2*k}", A(i, 2 * k)), (f"A^{i}_{2*k}", bar(A(i, 2 * k))),
                 (f"g^{i}_{2*k-2}", G(i, 2 * k - 2))],
                [True, False, True, True],
            )
        else:
            ineqs += _chain(f"(2a) i={i} k={k}",
                            [(f"g^{i}_1", G(i, 1)), (f"g^{i}_2", G(i, 2)),
                             (f"a^{i}_2", A(i, 2)), (f"A^{i}_2", bar(A(i, 2)))],
                            [True, False, True])
        ineqs += _chain(
            f"(2b) i={i} k={k}",
            [(f"g^{i}_{2*k-1}", G(i, 2 * k - 1)), (f"A^{i}_{2*k+1}", bar(A(i, 2 * k + 1))),
             (f"a^{i}_{2*k+1}", A(i, 2 * k + 1)), (f"g^{i}_{2*k+1}", G(i, 2 * k + 1)),
             (f"g^{i}_{2*k}", G(i, 2 * k))],
            [True, True, False, True],
        )
    e = 2 * k
    o = 2 * k - 1
    lo_e = ("L_{p%d+n}" % k, bar(fam.ell(p(k) + n)))
    hi_e = ("R_{q%d}" % (k + 1), bar(fam.rr(q(k + 1))))
    items = [lo_e]
    for i in range(1, n + 1):
        items += [(f"a^{i}_{e}", A(i, e)), (f"A^{i}_{e}", bar(A(i, e)))]
    items.append(hi_e)
    ineqs += _chain(f"(4a) k={k}", items, [True] * (len(items) - 1))
    items = [lo_e] + [(f"g^{i}_{e}", G(i, e)) for i in range(1, n + 1)]
    items += [(f"G^{i}_{e}", bar(G(i, e))) for i in range(n, 0, -1)] + [hi_e]
    ineqs += _chain(f"(4b) k={k}", items, [True] * (len(items) - 1))
    lo_o = ("L_{p%d}" % k, bar(fam.ell(p(k))))
    hi_o = ("R_{q%d+n}" % k, bar(fam.rr(q(k) + n)))
    items = [lo_o]
    for i in range(1, n + 1):
        items += [(f"A^{i}_{o}", bar(A(i, o))), (f"a^{i}_{o}", A(i, o))]
    items.append(hi_o)
    ineqs += _chain(f"(4c) k={k}", items, [True] * (len(items) - 1))
    items = [lo_o] + [(f"G^{i}_{o}", bar(G(i, o))) for i in range(n, 0, -1)]
    items += [(f"g^{i}_{o}", G(i, o)) for i in range(1, n + 1)] + [hi_o]
    ineqs += _chain(f"(4d) k={k}", items, [True] * (len(items) - 1))
    # reversed convergence
    for i in range(1, n + 1):
        ineqs += _chain(
            f"(rc-odd) i={i} k={k}",
            [(f"g^1_{o}", G(1, o)), (f"G^{i}_{o+2}", bar(G(i, o + 2))),
             (f"G^1_{o+2}", bar(G(1, o + 2))), (f"g^1_{o+2}", G(1, o + 2))],
            [True, False, True],
        )
        if k > 1:
            ineqs += _chain(
                f"(rc-even) i={i} k={k}",
                [(f"g^{n}_{e}", G(n, e)), (f"G^{n}_{e}", bar(G(n, e))),
                 (f"G^{i}_{e}", bar(G(i, e))), (f"g^{n}_{e-2}", G(n, e - 2))],
                [True, False, True],
            )
    return ineqs


def evaluate(ineq: Inequality, depth: int = 1024) -> str:
    o = orderCompare(ineq.left, ineq.right, depth)
    if o is Order.UnknownAtDepth:
        return "UnknownAtDepth"
    if o is Order.Less or (o is Order.Equal and not ineq.strict):
        return "Verified"
    if o is Order.Equal and ineq.left == ineq.right and ineq.strict:
        # the two sides are literally the same word; not a refutation
        return "Verified"
    return "Refuted"


def monotonicityCheck(n: int, k: int, depth: int = 1024, fam: Optional[GammaFamily] = None):
    fam = fam or GammaFamily(n)
    rows = []
    for ineq in monotonicity_inequalities(fam, k):
        ineq.status = evaluate(ineq, depth)
        rows.append(ineq)
    return rows


# -------------------------------------------------------------- crossings


def crossesLoop(ray: RayLimit, loop: bytes, searchDepth: int = 64):
    """Linking test: is the ray's endpoint strictly between cusps u and u·loop?

    Returns ("Crosses", witness prefix) or ("NoCrossingFound", None).
    """
    if not loop:
        raise DomainError("loop must be nonempty")
    if not is_cyclically_reduced(loop):
        raise DomainError("loop must be cyclically reduced")
    P = ray.prefix(searchDepth + 4 * len(loop) + 64)
    for m in range(0, searchDepth + 1):
        pre = P[:m]
        for j in range(len(loop) + 1):
            u, _ = concatAtInfinity(pre, inverse(loop[:j]))
            v, _ = concatAtInfinity(u, loop)
            if not u or not v:
                continue
            a = orderCompare(ray, u, len(P))
            b = orderCompare(ray, v, len(P))
            if Order.UnknownAtDepth in (a, b):
                continue
            if a != b and Order.Equal not in (a, b):
                return "Crosses", u
    return "NoCrossingFound", None


def reduced_words(gens: int, maxlen: int) -> List[bytes]:
    out = []
    frontier = [b""]
    for _ in range(maxlen):
        nxt = []
        for w in frontier:
            for c in range(2 * gens):
                if w and w[-1] == c ^ 1:
                    continue
                nxt.append(w + bytes([c]))
        out += nxt
        frontier = nxt
    return out
