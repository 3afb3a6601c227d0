"""Group-algebra vectors over S_n.

A GroupVector is an exact sparse linear combination of permutations with
rational coefficients.  Terms are kept strictly ordered by descending
packed value of their permutation (for a fixed degree this coincides with
descending lexicographic order on the one-line maps), with no duplicates
and no zero coefficients.  The zero vector is the empty term list.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _reduce
from math import gcd, lcm
from typing import Iterable

from .perm import Perm, extend_left as _pext_left, extend_right as _pext_right, multiply


class GroupVector:
    """Sorted, compressed linear combination of permutations of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Iterable[tuple[Fraction, Perm]] = (),
                 *, _normalized: bool = False):
        self.degree = degree
        tl = tuple(terms)
        for _, p in tl:
            if p.degree != degree:
                raise ValueError(f"term degree {p.degree} != vector degree {degree}")
        if not _normalized:
            tl = _merge_terms(tl)
        self.terms = tl

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, GroupVector)
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, self.terms))

    def __repr__(self):
        if not self.terms:
            return f"GroupVector({self.degree}, 0)"
        body = " + ".join(f"{c}*e{p}" for c, p in self.terms)
        return f"GroupVector({self.degree}, {body})"

    def coeff(self, p: Perm) -> Fraction:
        for c, q in self.terms:
            if q == p:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[Perm, Fraction]:
        return {p: c for c, p in self.terms}


def _merge_terms(tl) -> tuple:
    acc: dict[Perm, Fraction] = {}
    for c, p in tl:
        acc[p] = acc.get(p, Fraction(0)) + c
    out = [(c, p) for p, c in acc.items() if c != 0]
    out.sort(key=lambda t: t[1].map, reverse=True)
    return tuple(out)


def zero(degree: int) -> GroupVector:
    return GroupVector(degree, (), _normalized=True)


def unit(p: Perm, c=1) -> GroupVector:
    """The single-term vector c*e_p."""
    c = Fraction(c)
    if c == 0:
        return zero(p.degree)
    return GroupVector(p.degree, ((c, p),), _normalized=True)


def from_dict(degree: int, d: dict[Perm, Fraction]) -> GroupVector:
    terms = sorted(((c, p) for p, c in d.items() if c != 0),
                   key=lambda t: t[1].map, reverse=True)
    return GroupVector(degree, tuple(terms), _normalized=True)


def add(u: GroupVector, v: GroupVector) -> GroupVector:
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} != {v.degree}")
    if not u.terms:
        return v
    if not v.terms:
        return u
    acc = {p: c for c, p in u.terms}
    for c, p in v.terms:
        x = acc.get(p)
        if x is None:
            acc[p] = c
        else:
            x = x + c
            if x:
                acc[p] = x
            else:
                del acc[p]
    return from_dict(u.degree, acc)


def scale(c, v: GroupVector) -> GroupVector:
    c = Fraction(c)
    if c == 0:
        return zero(v.degree)
    if c == 1:
        return v
    return GroupVector(v.degree, tuple((c * a, p) for a, p in v.terms),
                       _normalized=True)


def negate(v: GroupVector) -> GroupVector:
    return scale(-1, v)


def sort(v: GroupVector) -> GroupVector:
    """Re-sort a (possibly unnormalized) term list into descending order.

    Unlike compress, preserves the multiset of (coeff, perm) pairs.
    """
    terms = sorted(v.terms, key=lambda t: t[1].map, reverse=True)
    return GroupVector(v.degree, tuple(terms), _normalized=True)


def compress(v: GroupVector) -> GroupVector:
    """Merge duplicate permutations and drop zero coefficients."""
    return GroupVector(v.degree, _merge_terms(v.terms), _normalized=True)


def renorm(v: GroupVector) -> GroupVector:
    """Scale to coprime integer coefficients with positive leading term.

    Rational coefficients are first cleared to a common denominator.  The
    zero vector passes through unchanged.
    """
    if not v.terms:
        return v
    den = _reduce(lcm, (c.denominator for c, _ in v.terms), 1)
    nums = [int(c * den) for c, _ in v.terms]
    g = _reduce(gcd, (abs(x) for x in nums))
    if nums[0] < 0:
        g = -g
    return GroupVector(v.degree,
                       tuple((Fraction(x // g) if x % g == 0 else Fraction(x, g), p)
                             for x, (_, p) in zip(nums, v.terms)),
                       _normalized=True)


def translate_left(p: Perm, v: GroupVector) -> GroupVector:
    """Replace every term permutation q by p∘q."""
    if p.degree != v.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {v.degree}")
    terms = sorted(((c, multiply(p, q)) for c, q in v.terms),
                   key=lambda t: t[1].map, reverse=True)
    return GroupVector(v.degree, tuple(terms), _normalized=True)


def translate_right(v: GroupVector, p: Perm) -> GroupVector:
    """Replace every term permutation q by q∘p."""
    if p.degree != v.degree:
        raise ValueError(f"degree mismatch: {v.degree} != {p.degree}")
    terms = sorted(((c, multiply(q, p)) for c, q in v.terms),
                   key=lambda t: t[1].map, reverse=True)
    return GroupVector(v.degree, tuple(terms), _normalized=True)


def lift_right(v: GroupVector, d: int) -> GroupVector:
    """Extend every term permutation to the right by d fixed slots."""
    if d == 0:
        return v
    terms = tuple((c, _pext_right(p, d)) for c, p in v.terms)
    return GroupVector(v.degree + d, terms, _normalized=True)


def lift_left(v: GroupVector, d: int) -> GroupVector:
    """Extend every term permutation to the left by d fixed slots."""
    if d == 0:
        return v
    terms = sorted(((c, _pext_left(p, d)) for c, p in v.terms),
                   key=lambda t: t[1].map, reverse=True)
    return GroupVector(v.degree + d, terms, _normalized=True)


def leading(v: GroupVector) -> tuple[Fraction, Perm]:
    """First term under the global descending order."""
    if not v.terms:
        raise ValueError("leading term of the zero vector")
    return v.terms[0]
