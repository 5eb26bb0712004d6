"""The carrying map from T onto T*, induced weights, and translation of train paths."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .numerics import DomainError, fmt, sumGeometricTail, tail_from_terms
from .traintrack import _index

OrientedBranch = Tuple[str, int]


def _f_run(a: int, b: int, d: int) -> List[OrientedBranch]:
    """f_a* ... f_b* traversed in direction d (the indices step by d)."""
    step = 1 if b >= a else -1
    return [(f"f{k}*", d) for k in range(a, b + step, step)]


def zeta(branch: str) -> List[OrientedBranch]:
    """Image of a branch of T, traversed forward, as an oriented train path in T*."""
    if branch in ("e1", "e2", "b-1", "b0", "c1") or branch.startswith("d"):
        if branch.startswith("d") and _index(branch) is None:
            raise DomainError(f"unknown branch {branch!r}")
        return [(branch + "*", 1)]
    n = _index(branch)
    if n is None or n < 1:
        raise DomainError(f"unknown branch {branch!r}")
    kind = branch[0]
    if kind == "b":
        if n == 1:
            return [("b1*", 1), ("f0*", 1)]
        if n % 2 == 0:
            return [(f"f{n - 1}*", 1), (f"h{n - 1}*", 1)] + _f_run(n - 1, -n + 1, -1)
        return [(f"h{n - 1}*", 1)] + _f_run(-n + 2, n - 1, 1)
    if kind == "c":
        if n % 2 == 0:
            return [(f"c{n}*", 1)]
        return [(f"f{-n + 1}*", -1), (f"c{n}*", -1)]
    raise DomainError(f"unknown branch {branch!r}")


def weight_T(branch: str) -> Fraction:
    if branch == "e1":
        return Fraction(1, 3)
    if branch == "e2":
        return Fraction(2, 3)
    n = _index(branch)
    if n is None:
        raise DomainError(f"unknown branch {branch!r}")
    if branch[0] == "b":
        return Fraction(1) if n <= 0 else Fraction(1, 2 ** n)
    if branch[0] == "c":
        return Fraction(1, 2 ** n)
    if branch[0] == "d":
        return Fraction(1, 2 ** (n + 1))
    raise DomainError(f"unknown branch {branch!r}")


def _level(n: int) -> List[str]:
    if n == -1:
        return ["b-1", "e1", "e2", "d0"]
    if n == 0:
        return ["b0"]
    return [f"b{n}", f"c{n}", f"d{n}"]


def _level_term(target: str, n: int) -> Fraction:
    tot = Fraction(0)
    for b in _level(n):
        cnt = sum(1 for x, _ in zeta(b) if x == target)
        tot += cnt * weight_T(b)
    return tot


def inducedWeight(target: str) -> Fraction:
    """Sum of w(b) times occurrences of target in zeta(b), summed in closed form.

    Levels past a cutoff contribute a geometric tail; three consecutive ratios
    are checked before the tail is summed.
    """
    if not target.endswith("*"):
        target = target + "*"
    idx = _index(target)
    if idx is None and target not in ("e1*", "e2*"):
        raise DomainError(f"unknown branch {target!r}")
    cut = abs(idx or 0) + 3
    head = sum((_level_term(target, n) for n in range(-1, cut + 1)), Fraction(0))
    tail = tail_from_terms([_level_term(target, n) for n in range(cut + 1, cut + 5)])
    if tail.firstTerm == 0:
        return head
    return head + sumGeometricTail(tail)


def inducedWeights(zetaMap=None, weights=None, names: Optional[Iterable[str]] = None) -> Dict[str, Fraction]:
    """Induced weights on T* for the given names (default: a fixed window)."""
    if zetaMap is not None or weights is not None:
        raise DomainError("only the built-in carrying map is supported")
    if names is None:
        names = ["e1*", "e2*", "b-1*", "b0*", "b1*", "d0*"] + [f"{k}{n}*" for n in range(1, 9) for k in "cdh"]
        names += [f"f{k}*" for k in range(-8, 9)]
    return {b: inducedWeight(b) for b in names}


def xiTranslate(path: Sequence) -> List[OrientedBranch]:
    """Concatenate zeta images along an oriented path in T (items are names or (name, +-1))."""
    out: List[OrientedBranch] = []
    for it in path:
        b, d = it if isinstance(it, tuple) else (it, 1)
        img = zeta(b)
        if d < 0:
            img = [(x, -e) for x, e in reversed(img)]
        out.extend(img)
    return out


def coveringIdentity(target: str, levels: int = 40) -> Tuple[Fraction, Fraction]:
    """(direct finite sum over levels, closed form) for a T* branch; they agree up to a geometric remainder."""
    if not target.endswith("*"):
        target += "*"
    direct = sum((_level_term(target, n) for n in range(-1, levels + 1)), Fraction(0))
    return direct, inducedWeight(target)


def missingPathWindow(depth: int = 8) -> List[OrientedBranch]:
    """Window of the path t_0 ... f_{-1} f_0 f_1 ... of T*; its preimage stack in T is empty.

    Every zeta image of a branch at level n touches h_{n-1}* or c_n*, so no
    finite preimage runs along more than a bounded window of f's without
    turning; the straight line is carried by no train path of T.
    """
    return [(f"f{k}*", 1) for k in range(-depth, depth + 1)]


def format_weights(ws: Dict[str, Fraction]) -> Dict[str, str]:
    return {k: fmt(v) for k, v in ws.items()}
