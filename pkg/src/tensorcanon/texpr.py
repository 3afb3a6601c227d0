"""Tensor expressions and their canonicalization.

A tensor expression is a linear combination of products of declared basic
tensors sharing one header (factor list plus reference index slots).  Each
term corresponds to a permutation of the reference slots, so the whole
expression is a GroupVector in the group algebra of S_n.

The registry stores, per basic tensor, a triangle basis of its symmetry
and linear-identity relations.  Simplification builds the full relation
basis for an expression (per-factor relations lifted onto the product
slots, commutativity of identical factors, dummy renamings) and sieves
the expression vector to its canonical representative.  Per-expression
bases are always rebuilt, never cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations as _permutations
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

from . import galg, kbasis, perm
from .galg import GroupVector
from .kbasis import KBasis
from .perm import Perm

# A raw term is (coefficient, factors); a factor is (tensor name, index names).
RawFactor = tuple[str, tuple[str, ...]]
RawTerm = tuple[Fraction | int, tuple[RawFactor, ...]]


class TensorError(ValueError):
    pass


class DegreeLimitError(TensorError):
    """Expression degree exceeds the configured factorial-growth guard."""


@dataclass(frozen=True)
class IndexSlot:
    """One reference slot: a free index or half of a dummy pair."""

    kind: str                  # "free" | "dummy"
    name: str                  # free name, or the pair's original name
    pair: int = 0              # 1-based dummy pair id
    member: int = 0            # 1 | 2
    occ: int = 0               # >0 for 3rd+ occurrences kept free


@dataclass(frozen=True)
class TensorHeader:
    factors: tuple[tuple[str, int], ...]     # (name, arity), canonical order
    slots: tuple[IndexSlot, ...]

    @property
    def degree(self) -> int:
        return len(self.slots)

    @property
    def npairs(self) -> int:
        return sum(1 for s in self.slots if s.kind == "dummy" and s.member == 1)

    def offsets(self) -> list[int]:
        out, off = [], 0
        for _, a in self.factors:
            out.append(off)
            off += a
        return out


@dataclass(frozen=True)
class TensorExpr:
    header: TensorHeader
    vec: GroupVector

    def is_zero(self) -> bool:
        return self.vec.is_zero()


@dataclass
class SimplifyResult:
    canonical: TensorExpr
    shortest: TensorExpr
    basis_dim: int


@dataclass
class BasicTensor:
    name: str
    arity: Optional[int] = None
    display: Optional[tuple[str, ...]] = None
    _k0: Optional[KBasis] = None
    _k0_packed: Optional[kbasis.PackedRows] = None

    def k0_basis(self) -> KBasis:
        if self._k0 is not None:
            return self._k0
        if self._k0_packed is not None:
            return kbasis.load_packed(self._k0_packed)
        if self.arity is None:
            raise TensorError(f"arity of {self.name} is not fixed yet")
        return KBasis(self.arity)

    def store_k0(self, b: KBasis, packed: bool):
        if packed:
            self._k0, self._k0_packed = None, kbasis.dump_packed(b)
        else:
            self._k0, self._k0_packed = b, None


def all_perms(n: int):
    """All elements of S_n in lexicographic order."""
    for m in _permutations(range(1, n + 1)):
        yield Perm._trusted(m)


def estimate_memory(n: int) -> tuple[float, float]:
    """Storage estimate for a full relation basis at degree n.

    Assumes 4 cells per stored term, an average of 2 terms per basis row
    and 8-byte cells; returns (million cells, MByte) with the MByte column
    using a 1024*1000 divisor for table fidelity.
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    cells = factorial(n) * 4 * 2
    return cells / 10**6, cells * 8 / (1024 * 1000)


def split(term: RawTerm) -> list[RawTerm]:
    """Split a product term into single-factor terms (coefficient on the first)."""
    c, facs = term
    if not facs:
        return [term]
    return [(c if i == 0 else 1, (f,)) for i, f in enumerate(facs)]


def fuse(parts: Sequence[RawTerm]) -> RawTerm:
    """Recombine factor parts into one term with factors in canonical order."""
    coeff = Fraction(1)
    facs: list[RawFactor] = []
    for c, fs in parts:
        coeff *= Fraction(c)
        facs.extend(fs)
    return coeff, tuple(sorted(facs, key=lambda f: f[0]))


class Registry:
    """Declared basic tensors, their stored bases and the global switches."""

    def __init__(self, diag: Optional[Callable[[str], None]] = None,
                 max_rank: int = 8):
        self.tensors: dict[str, BasicTensor] = {}
        self.switches = {"dummypri": False, "shortest": False, "packed": True}
        self.max_rank = max_rank
        self.messages: list[str] = []
        self._diag = diag

    def note(self, msg: str):
        self.messages.append(msg)
        if self._diag is not None:
            self._diag(msg)

    # -- declarations --------------------------------------------------

    def declare(self, name: str):
        if name in self.tensors:
            self.note(f"+++ {name} is already declared as tensor.")
            return
        self.tensors[name] = BasicTensor(name)

    def undeclare(self, name: str):
        if name not in self.tensors:
            self.note(f"+++ {name} is not a tensor.")
            return
        del self.tensors[name]

    def _fix_arity(self, name: str, arity: int) -> BasicTensor:
        t = self.tensors.get(name)
        if t is None:
            raise TensorError(f"{name} is not declared as tensor")
        if t.arity is None:
            if arity < 1:
                raise TensorError(f"{name} must have at least one index")
            t.arity = arity
        elif t.arity != arity:
            raise TensorError(
                f"{name} takes {t.arity} indices, given {arity}")
        return t

    def declare_symmetry(self, terms: Sequence[RawTerm]):
        """Add one relation (a vanishing combination of one basic tensor)
        to that tensor's stored basis."""
        if not terms:
            raise TensorError("empty symmetry relation")
        name = None
        parsed = []
        for c, facs in terms:
            if len(facs) != 1:
                raise TensorError("symmetry relations must be single products"
                                  " of one basic tensor")
            fname, idx = facs[0]
            if name is None:
                name = fname
            elif fname != name:
                raise TensorError("symmetry relation mixes different tensors")
            if len(set(idx)) != len(idx):
                raise TensorError("dummy indices are not allowed in symmetry"
                                  " relations")
            parsed.append((Fraction(c), idx))
        tensor = self._fix_arity(name, len(parsed[0][1]))
        ref = parsed[0][1]
        if tensor.display is None:
            tensor.display = tuple(ref)
        n = len(ref)
        acc: dict[Perm, Fraction] = {}
        for c, idx in parsed:
            if sorted(idx) != sorted(ref):
                raise TensorError("symmetry relation terms must use the same"
                                  " index names")
            pi = _term_perm(idx, ref)
            acc[pi] = acc.get(pi, Fraction(0)) + c
        g = galg.from_dict(n, acc)
        if g.is_zero():
            return
        b = tensor.k0_basis()
        b.build(galg.translate_right(g, rho) for rho in all_perms(n))
        tensor.store_k0(b, self.switches["packed"])

    # -- expression construction ---------------------------------------

    def normalize(self, terms: Sequence[RawTerm]) -> TensorExpr:
        """Canonical factor order, dummy detection and the shared header.

        Repeated index names pair up by their first two occurrences; any
        further occurrence stays free, with a diagnostic.
        """
        if not terms:
            raise TensorError("empty tensor expression")
        norm = []
        for c, facs in terms:
            if not facs:
                raise TensorError("term without tensor factors")
            facs = tuple(sorted(facs, key=lambda f: f[0]))
            for fname, idx in facs:
                self._fix_arity(fname, len(idx))
            names = [x for _, idx in facs for x in idx]
            counts: dict[str, int] = {}
            for x in names:
                counts[x] = counts.get(x, 0) + 1
            keys: list[tuple] = []
            pair_of: dict[str, int] = {}
            pair_names: dict[int, str] = {}
            seen: dict[str, int] = {}
            for x in names:
                occ = seen.get(x, 0)
                seen[x] = occ + 1
                if counts[x] >= 2 and occ < 2:
                    if occ == 0:
                        pid = len(pair_names) + 1
                        pair_of[x] = pid
                        pair_names[pid] = x
                        keys.append(("d", pid, 1))
                    else:
                        keys.append(("d", pair_of[x], 2))
                else:
                    if occ >= 2:
                        self.note(f"+++ index {x} appears more than twice;"
                                  " extra occurrences are kept free")
                    keys.append(("f", x, occ))
            norm.append((Fraction(c), tuple(f[0] for f in facs),
                         tuple(len(f[1]) for f in facs), keys, pair_names))

        _, names0, arities0, keys0, pairs0 = norm[0]
        ref_keys = [("d", k, m) for k in range(1, len(pairs0) + 1)
                    for m in (1, 2)]
        ref_keys += sorted(k for k in keys0 if k[0] == "f")
        refset = sorted(ref_keys)
        slots = []
        for kind, a, b in ref_keys:
            if kind == "d":
                slots.append(IndexSlot("dummy", pairs0[a], pair=a, member=b))
            else:
                slots.append(IndexSlot("free", a, occ=b))
        header = TensorHeader(tuple(zip(names0, arities0)), tuple(slots))

        n = header.degree
        acc: dict[Perm, Fraction] = {}
        for c, names, _, keys, _ in norm:
            if names != names0:
                raise TensorError("terms of one expression must share the"
                                  " same product of basic tensors")
            if sorted(keys) != refset:
                raise TensorError("terms of one expression must carry the"
                                  " same free indices")
            pi = _term_perm(keys, ref_keys)
            acc[pi] = acc.get(pi, Fraction(0)) + c
        return TensorExpr(header, galg.from_dict(n, acc))

    # -- relation generation -------------------------------------------

    def product_relations(self, header: TensorHeader) -> list[GroupVector]:
        """Relations of the product: per-factor basis rows embedded onto
        their slot block and closed under right translation, plus the
        block-swap commutativity of identical factors."""
        n = header.degree
        rels: list[GroupVector] = []
        rhos = list(all_perms(n))
        for (fname, arity), off in zip(header.factors, header.offsets()):
            t = self.tensors.get(fname)
            if t is None:
                raise TensorError(f"{fname} is not declared as tensor")
            for row in t.k0_basis().rows:
                lifted = galg.lift_right(galg.lift_left(row, off),
                                         n - off - arity)
                rels.extend(galg.translate_right(lifted, rho) for rho in rhos)
        offs = header.offsets()
        for i in range(len(header.factors)):
            for j in range(i + 1, len(header.factors)):
                if header.factors[i][0] != header.factors[j][0]:
                    continue
                a = header.factors[i][1]
                m = list(range(1, n + 1))
                for s in range(a):
                    m[offs[i] + s], m[offs[j] + s] = m[offs[j] + s], m[offs[i] + s]
                sigma = Perm._trusted(tuple(m))
                rels.extend(
                    galg.add(galg.unit(perm.multiply(sigma, rho)),
                             galg.unit(rho, -1))
                    for rho in rhos)
        return rels

    def dummy_relations(self, header: TensorHeader) -> list[GroupVector]:
        """Renaming relations: swap the two names of each pair, and swap
        adjacent whole pairs (these generate the full renaming group)."""
        n = header.degree
        p = header.npairs
        gens: list[Perm] = []
        for k in range(1, p + 1):
            m = list(range(1, n + 1))
            m[2 * k - 2], m[2 * k - 1] = m[2 * k - 1], m[2 * k - 2]
            gens.append(Perm._trusted(tuple(m)))
        for k in range(1, p):
            m = list(range(1, n + 1))
            m[2 * k - 2], m[2 * k] = m[2 * k], m[2 * k - 2]
            m[2 * k - 1], m[2 * k + 1] = m[2 * k + 1], m[2 * k - 1]
            gens.append(Perm._trusted(tuple(m)))
        rels: list[GroupVector] = []
        for g in gens:
            rels.extend(
                galg.add(galg.unit(perm.multiply(pi, g)), galg.unit(pi, -1))
                for pi in all_perms(n))
        return rels

    def expression_basis(self, header: TensorHeader,
                         with_dummies: bool = True) -> KBasis:
        """Build the full (transient) relation basis for a header."""
        n = header.degree
        if n > self.max_rank:
            mc, mb = estimate_memory(n)
            raise DegreeLimitError(
                f"expression has {n} indices; the group algebra of S_{n} "
                f"needs about {mc:.1f} Mcells ({mb:.1f} MByte) and grows "
                f"factorially -- raise the rank limit to proceed")
        b = KBasis(n)
        b.build(self.product_relations(header))
        if with_dummies:
            b.build(self.dummy_relations(header))
        return b

    # -- simplification ------------------------------------------------

    def simplify(self, expr: TensorExpr) -> SimplifyResult:
        b = self.expression_basis(expr.header)
        canonical, shortest = b.sieve_trace(expr.vec)
        return SimplifyResult(TensorExpr(expr.header, canonical),
                              TensorExpr(expr.header, shortest),
                              b.dim())

    def equal(self, a: TensorExpr, b) -> bool:
        """Do two expressions agree under all declared relations?"""
        if b == 0:
            return self.simplify(a).canonical.is_zero()
        if not _compatible(a.header, b.header):
            raise TensorError("expressions have incompatible headers")
        diff = TensorExpr(a.header, galg.add(a.vec, galg.negate(b.vec)))
        return self.simplify(diff).canonical.is_zero()


def _compatible(h1: TensorHeader, h2: TensorHeader) -> bool:
    if h1.factors != h2.factors:
        return False
    free1 = sorted((s.name, s.occ) for s in h1.slots if s.kind == "free")
    free2 = sorted((s.name, s.occ) for s in h2.slots if s.kind == "free")
    return free1 == free2 and h1.npairs == h2.npairs


def _term_perm(keys: Sequence, ref: Sequence) -> Perm:
    """Permutation of a term relative to the reference slot list.

    With sigma the selection with keys = apply(sigma, ref), the term's
    permutation is sigma^{-1}; symmetry relations then close under right
    translation and dummy renamings act by right factors.
    """
    where = {k: i + 1 for i, k in enumerate(ref)}
    if len(where) != len(ref):
        raise TensorError("reference slots are not distinct")
    try:
        sigma = tuple(where[k] for k in keys)
    except KeyError as e:
        raise TensorError(f"index {e.args[0]!r} not present in the reference"
                          " slots") from None
    return perm.inverse(Perm(sigma))
