"""Triangle bases over the group algebra and the canonical sieve.

A KBasis is a set of renormalized GroupVectors with pairwise distinct
leading ("pivot") permutations, kept fully reduced against each other:
no row carries a nonzero coefficient on another row's pivot.  Sieving a
vector eliminates every pivot coefficient, projecting it onto the
complementary subspace of canonical representatives.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import galg
from .galg import GroupVector
from .perm import Perm, pack


class PivotCollisionError(ValueError):
    """Raised when an inserted vector's pivot already belongs to the basis."""


def reduce(v: GroupVector, row: GroupVector) -> GroupVector:
    """Eliminate row's pivot from v: v - (v[pivot]/row[pivot]) * row."""
    if row.is_zero():
        raise ValueError("cannot reduce by the zero vector")
    pc, pp = galg.leading(row)
    c = v.coeff(pp)
    if c == 0:
        return v
    return galg.add(v, galg.scale(-c / pc, row))


class KBasis:
    """Triangle basis; mutable while being built, then effectively frozen."""

    def __init__(self, degree: int):
        self.degree = degree
        # pivot map-tuple -> row; dicts preserve insertion order
        self._rows: dict[tuple[int, ...], GroupVector] = {}

    @property
    def rows(self) -> list[GroupVector]:
        return list(self._rows.values())

    def dim(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[Perm]:
        return [galg.leading(r)[1] for r in self._rows.values()]

    def sieve(self, v: GroupVector) -> GroupVector:
        """Eliminate every pivot of the basis from v, to fixpoint.

        With fully reduced rows one pass suffices; the rescan keeps the
        result independent of row bookkeeping.
        """
        if v.degree != self.degree:
            raise ValueError(f"degree mismatch: {v.degree} != {self.degree}")
        rows = self._rows
        acc = {p.map: (c, p) for c, p in v.terms}
        changed = True
        while changed:
            changed = False
            for key in list(acc):
                if key not in acc:
                    continue
                row = rows.get(key)
                if row is None:
                    continue
                c, _ = acc.pop(key)
                ratio = c / row.terms[0][0]
                for rc, rp in row.terms[1:]:
                    k = rp.map
                    old = acc.get(k)
                    x = (old[0] if old else 0) - ratio * rc
                    if x:
                        acc[k] = (x, rp)
                    else:
                        acc.pop(k, None)
                changed = True
        return galg.from_dict(self.degree, {p: c for c, p in acc.values()})

    def sieve_trace(self, v: GroupVector) -> tuple[GroupVector, GroupVector]:
        """Like sieve, but also return the fewest-term intermediate form.

        The input form and every elimination step compete; ties go to the
        earliest occurrence.
        """
        shortest = v
        while True:
            hit = None
            for c, p in v.terms:
                row = self._rows.get(p.map)
                if row is not None:
                    hit = (c, row)
                    break
            if hit is None:
                return v, shortest
            c, row = hit
            v = galg.add(v, galg.scale(-c / row.terms[0][0], row))
            if len(v.terms) < len(shortest.terms):
                shortest = v

    def insert(self, v: GroupVector):
        """Renorm v, add it as a row and reduce all other rows by it."""
        if v.is_zero():
            raise ValueError("cannot insert the zero vector")
        v = galg.renorm(v)
        pc, pp = galg.leading(v)
        key = pp.map
        if key in self._rows:
            raise PivotCollisionError(f"pivot {pp} already present (missed sieve?)")
        for rkey, row in self._rows.items():
            c = row.coeff(pp)
            if c != 0:
                self._rows[rkey] = galg.add(row, galg.scale(-c / pc, v))
        self._rows[key] = v

    def build(self, relations: Iterable[GroupVector]) -> "KBasis":
        """Sieve each relation and insert the nonzero residues.  Returns self."""
        for rel in relations:
            s = self.sieve(rel)
            if not s.is_zero():
                self.insert(s)
        return self

    def check_reduced(self) -> bool:
        """Invariant check: no row touches another row's pivot."""
        for key, row in self._rows.items():
            for _, p in row.terms[1:]:
                if p.map in self._rows:
                    return False
            if galg.leading(row)[1].map != key:
                return False
        return True

    # -- export --------------------------------------------------------

    def dump_text(self) -> str:
        """One row per line as a signed integer combination of permutations."""
        lines = []
        for row in self._rows.values():
            parts = []
            for c, p in row.terms:
                s = "+" if c >= 0 else "-"
                parts.append(f"{s} {abs(c)}*{p}")
            lines.append(" ".join(parts).lstrip("+ "))
        lines.append(str(self.dim()))
        return "\n".join(lines) + "\n"

    def dump_json(self) -> str:
        obj = {
            "degree": self.degree,
            "dimension": self.dim(),
            "rows": [
                {
                    "coeffs": [str(c) if c.denominator != 1 else str(c.numerator)
                               for c, _ in row.terms],
                    "perms": [list(p.map) for _, p in row.terms],
                }
                for row in self._rows.values()
            ],
        }
        return json.dumps(obj, indent=2) + "\n"


def build(relations: Iterable[GroupVector], initial: KBasis) -> KBasis:
    """Extend `initial` in place by the given relation vectors."""
    return initial.build(relations)


# -- packed storage ----------------------------------------------------
#
# Stored K0 bases may be kept in packed form (integer coefficient plus
# packed permutation) as a space trade; semantics are identical.

PackedRows = tuple[int, tuple[tuple[int, int], ...]]


def dump_packed(b: KBasis) -> PackedRows:
    rows = []
    for row in b.rows:
        rows.append(tuple((int(c), pack(p).value) for c, p in row.terms))
    return b.degree, tuple(rows)


def load_packed(pr: PackedRows) -> KBasis:
    from .perm import PackedPerm, unpack

    degree, rows = pr
    b = KBasis(degree)
    for row in rows:
        terms = tuple((Fraction(c), unpack(PackedPerm(v, degree))) for c, v in row)
        gv = GroupVector(degree, terms, _normalized=True)
        b._rows[galg.leading(gv)[1].map] = gv
    return b
