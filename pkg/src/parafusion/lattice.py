"""Integral lattices inside the weight space and their finite quotients."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import _rational as rl
from .errors import InputError
from .liealg import RootSystem, WeightVec
from .smith import diagonal, smith_normal_form


def _ip(form, x: WeightVec, y: WeightVec) -> Fraction:
    n = len(form)
    return sum((x[i] * form[i][j] * y[j] for i in range(n) for j in range(n)
                if x[i] and y[j] and form[i][j]), Fraction(0))


@dataclass(frozen=True, eq=False)
class Lattice:
    """A lattice given by a basis of ambient vectors and the ambient form."""

    basis: tuple[WeightVec, ...]
    form: tuple[tuple[Fraction, ...], ...]

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(_ip(self.form, a, b) for b in self.basis) for a in self.basis)

    @cached_property
    def _gram_inv(self) -> list[list[Fraction]]:
        try:
            return rl.inverse(self.gram)
        except ZeroDivisionError:
            raise InputError("degenerate Gram matrix: basis is not independent") from None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def combine(self, coords: Sequence) -> WeightVec:
        out = WeightVec.zero(len(self.form))
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b * c
        return out

    def coordinates(self, v: WeightVec) -> tuple[Fraction, ...] | None:
        """Coordinates of ``v`` in this basis, or None if ``v`` is outside the span."""
        pairings = [_ip(self.form, b, v) for b in self.basis]
        coords = tuple(rl.vecmat(pairings, self._gram_inv))
        return coords if self.combine(coords) == v else None

    def __contains__(self, v: WeightVec) -> bool:
        c = self.coordinates(v)
        return c is not None and rl.is_integral(c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lattice) and self.rank == other.rank
                and all(b in self for b in other.basis)
                and all(b in other for b in self.basis))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, basis={list(self.basis)!r})"


def _from_generators(rs: RootSystem, gens: Sequence[Sequence[int]]) -> Lattice:
    """Lattice spanned by integer combinations (in simple-root coordinates) of simple roots."""
    d, _, v = smith_normal_form(gens)
    vinv = rl.inverse(v)
    basis = []
    for i, di in enumerate(diagonal(d)):
        if di:
            basis.append(rs.from_simple([di * int(x) for x in vinv[i]]))
    return Lattice(tuple(basis), rs.gram_form)


@lru_cache(maxsize=None)
def root_lattice(rs: RootSystem) -> Lattice:
    return Lattice(rs.simple_roots, rs.gram_form)


@lru_cache(maxsize=None)
def long_root_lattice(rs: RootSystem) -> Lattice:
    long_norm = rs.long_root_norm
    gens = [c for c, r in zip(rs.positive_roots_simple, rs.positive_roots)
            if rs_inner(rs, r, r) == long_norm]
    return _from_generators(rs, gens)


@lru_cache(maxsize=None)
def weight_lattice(rs: RootSystem) -> Lattice:
    return Lattice(rs.fundamental_weights, rs.gram_form)


def rs_inner(rs: RootSystem, x: WeightVec, y: WeightVec) -> Fraction:
    return _ip(rs.gram_form, x, y)


def scale(lat: Lattice, m: int) -> Lattice:
    if m < 1:
        raise InputError(f"scale factor must be a positive integer, got {m}")
    return Lattice(tuple(b * m for b in lat.basis), lat.form)


def dual_lattice(lat: Lattice) -> Lattice:
    """``{x in span(L) : <x, y> in Z for all y in L}``."""
    inv = lat._gram_inv
    n = lat.rank
    return Lattice(tuple(lat.combine([inv[i][j] for j in range(n)]) for i in range(n)), lat.form)


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """The finite group ``ambient / sub`` with SNF structure.

    In ambient-basis coordinates ``x`` (row vectors), ``x @ transform`` has
    i-th entry defined modulo ``snf_diag[i]``; those residues are the SNF
    coordinates of the coset.  Cosets are indexed in lexicographic order of
    their SNF coordinates, so index 0 is the zero coset.
    """

    ambient: Lattice
    sub: Lattice
    snf_diag: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]
    transform_inv: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return math.prod(self.snf_diag)

    @cached_property
    def factors(self) -> tuple[int, ...]:
        """Positions of nontrivial invariant factors."""
        return tuple(i for i, d in enumerate(self.snf_diag) if d > 1)

    @cached_property
    def rep_coords(self) -> tuple[tuple[int, ...], ...]:
        """Coset representatives in ambient-basis coordinates, by coset index."""
        out = []
        n = len(self.snf_diag)
        for c in itertools.product(*(range(self.snf_diag[i]) for i in self.factors)):
            full = [0] * n
            for i, ci in zip(self.factors, c):
                full[i] = ci
            out.append(tuple(sum(full[i] * self.transform_inv[i][j] for i in range(n))
                             for j in range(n)))
        return tuple(out)

    @cached_property
    def reps(self) -> tuple[WeightVec, ...]:
        return tuple(self.ambient.combine(c) for c in self.rep_coords)

    def snf_coords(self, x: Sequence[int]) -> tuple[int, ...]:
        n = len(self.snf_diag)
        y = [sum(x[i] * self.transform[i][j] for i in range(n)) for j in range(n)]
        return tuple(y[i] % self.snf_diag[i] for i in self.factors)

    def index_of_snf(self, c: Sequence[int]) -> int:
        if len(c) != len(self.factors):
            raise InputError(f"coset needs {len(self.factors)} SNF coordinates, got {len(c)}")
        idx = 0
        for i, ci in zip(self.factors, c):
            d = self.snf_diag[i]
            if not 0 <= ci < d:
                raise InputError(f"SNF coordinate {ci} out of range [0, {d})")
            idx = idx * d + ci
        return idx

    def snf_of_index(self, idx: int) -> tuple[int, ...]:
        out = []
        for i in reversed(self.factors):
            d = self.snf_diag[i]
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def coset_of_coords(self, x: Sequence[int]) -> int:
        return self.index_of_snf(self.snf_coords(x))


def quotient(l1: Lattice, l2: Lattice) -> QuotientGroup:
    """``l1 / l2`` for a full-rank sublattice ``l2`` of ``l1``."""
    if l1.rank != l2.rank:
        raise InputError(f"sublattice rank {l2.rank} differs from lattice rank {l1.rank}")
    rows = []
    for b in l2.basis:
        c = l1.coordinates(b)
        if c is None or not rl.is_integral(c):
            raise InputError(f"sublattice vector {b!r} is not in the ambient lattice")
        rows.append([int(x) for x in c])
    d, _, v = smith_normal_form(rows)
    vinv = rl.inverse(v)
    return QuotientGroup(
        ambient=l1,
        sub=l2,
        snf_diag=tuple(diagonal(d)),
        transform=tuple(tuple(r) for r in v),
        transform_inv=tuple(tuple(int(x) for x in r) for r in vinv),
    )


def coset_of(q: QuotientGroup, v: WeightVec) -> int:
    """Index of the coset of ``v``; ``coset_of(q, q.reps[i]) == i``."""
    c = q.ambient.coordinates(v)
    if c is None or not rl.is_integral(c):
        raise InputError(f"{v!r} is not in the ambient lattice")
    return q.coset_of_coords([int(x) for x in c])


def _fmt(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def quotient_to_json(q: QuotientGroup, rs: RootSystem) -> dict:
    reps = []
    for r in q.reps:
        simple = rs.dynkin_to_simple(rs.to_dynkin(r))
        reps.append([_fmt(x) for x in simple])
    return {"snf_diag": list(q.snf_diag), "order": q.order, "reps": reps}


@lru_cache(maxsize=None)
def index(rs: RootSystem, which: str, k: int = 1) -> int:
    """Orders used throughout: ``P/Q``, ``Q/Q_L``, ``Q/kQ_L``, ``P/kQ_L``."""
    pairs = {
        "P/Q": (weight_lattice, root_lattice, 1),
        "Q/Q_L": (root_lattice, long_root_lattice, 1),
        "Q/kQ_L": (root_lattice, long_root_lattice, k),
        "P/kQ_L": (weight_lattice, long_root_lattice, k),
    }
    if which not in pairs:
        raise InputError(f"unknown quotient {which!r}; expected one of {sorted(pairs)}")
    top, bottom, m = pairs[which]
    return quotient(top(rs), scale(bottom(rs), m)).order
