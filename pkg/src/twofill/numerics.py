"""Exact rational helpers shared by every other module."""

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot make a rational from {x!r}")


def fmt(x: Fraction) -> str:
    """Serialize as "p/q" (integers as "p")."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_dyadic(x: Fraction) -> bool:
    d = Q(x).denominator
    return d & (d - 1) == 0


def pow2(n: int) -> Fraction:
    return Fraction(2) ** n


@dataclass(frozen=True)
class GeometricTail:
    firstTerm: Fraction
    ratio: Fraction

    def term(self, k: int) -> Fraction:
        return self.firstTerm * self.ratio ** k


def sumGeometricTail(tail: GeometricTail) -> Fraction:
    r = Q(tail.ratio)
    if abs(r) >= 1:
        raise DomainError(f"geometric ratio {fmt(r)} has absolute value >= 1")
    return Q(tail.firstTerm) / (1 - r)


def tail_from_terms(terms) -> GeometricTail:
    """Build a tail from at least three leading terms after checking the ratio is constant."""
    terms = [Q(t) for t in terms]
    if len(terms) < 3:
        raise DomainError("need three consecutive terms to certify a geometric tail")
    if all(t == 0 for t in terms):
        return GeometricTail(Fraction(0), Fraction(0))
    if any(t == 0 for t in terms):
        raise DomainError("cannot close form: zero inside a nonzero tail")
    ratios = {terms[i + 1] / terms[i] for i in range(len(terms) - 1)}
    if len(ratios) != 1:
        raise DomainError("cannot close form: tail is not geometric")
    return GeometricTail(terms[0], ratios.pop())
