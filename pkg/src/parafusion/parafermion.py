"""Irreducible modules of the parafermion algebra K(g, k) and their fusion.

A raw label ``(Lambda, i)`` names the module ``M^{Lambda, Lambda + beta_i}``
where ``beta_i`` runs over coset representatives of ``Q / kQ_L``.  Two kinds
of identification act on raw labels:

* ``lambda`` only matters modulo ``kQ_L`` (built into the coset index), and
* for every node ``s`` with mark 1, ``(Lambda, lambda) ~ (Lambda^(s), lambda + k Lambda_s)``
  where ``L(k, Lambda^(s)) = L(k, k Lambda_s) x L(k, Lambda)``.

The canonical representative of a class is the lexicographic minimum of its
orbit.  Every orbit is expected to have exactly ``|P/Q|`` elements; anything
else raises :class:`ConsistencyError`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import mpmath

from .affine import (DEFAULT_DPS, FusionTable, check_label, check_level, enumerate_Pk,
                     fusion_affine, glob_affine, qdim_affine, simple_current_action)
from .errors import ConsistencyError, InputError
from .lattice import QuotientGroup, index, long_root_lattice, quotient, root_lattice, scale
from .liealg import RootSystem
from .repdata import Weight


class ParaLabel(NamedTuple):
    """``(Lambda, coset index in Q/kQ_L)``; tuple order is the canonical ordering."""

    weight: Weight
    coset: int


@dataclass(frozen=True)
class _Level:
    rs: RootSystem
    k: int
    cosets: QuotientGroup
    weights: tuple[Weight, ...]
    p_mod_q: int


@lru_cache(maxsize=None)
def _level(rs: RootSystem, k: int) -> _Level:
    cosets = quotient(root_lattice(rs), scale(long_root_lattice(rs), k))
    return _Level(rs, k, cosets, tuple(enumerate_Pk(rs, k)), index(rs, "P/Q"))


def coset_group(rs: RootSystem, k: int) -> QuotientGroup:
    """``Q / kQ_L``; representatives are in simple-root coordinates."""
    return _level(rs, check_level(k)).cosets


def check_para(rs: RootSystem, k: int, p: ParaLabel) -> ParaLabel:
    w = check_label(rs, k, p.weight)
    order = _level(rs, k).cosets.order
    if not isinstance(p.coset, int) or not 0 <= p.coset < order:
        raise InputError(f"coset index {p.coset!r} out of range for |Q/kQ_L| = {order}")
    return ParaLabel(w, p.coset)


def enumerate_raw(rs: RootSystem, k: int) -> list[ParaLabel]:
    lv = _level(rs, check_level(k))
    return [ParaLabel(w, i) for w in lv.weights for i in range(lv.cosets.order)]


def _root_coords(rs: RootSystem, labels: Sequence[int], what: str) -> list[int]:
    """Simple-root coordinates of a weight that must lie in Q."""
    coords = rs.dynkin_to_simple(labels)
    if any(c.denominator != 1 for c in coords):
        raise ConsistencyError("root lattice membership", f"{what} = {tuple(labels)} is not in Q")
    return [int(c) for c in coords]


def _shift_coset(lv: _Level, coset: int, delta_dynkin: Sequence[int], what: str) -> int:
    """Coset of ``beta_coset + delta`` where ``delta`` is given in Dynkin labels."""
    base = lv.cosets.rep_coords[coset]
    d = _root_coords(lv.rs, delta_dynkin, what)
    return lv.cosets.coset_of_coords([x + y for x, y in zip(base, d)])


def sigma(rs: RootSystem, k: int, i: int, p: ParaLabel) -> ParaLabel:
    """``(Lambda, lambda) -> (Lambda^(i), lambda + k Lambda_i)``."""
    p = check_para(rs, k, p)
    return _sigma(rs, k, i, p)


def _sigma(rs: RootSystem, k: int, i: int, p: ParaLabel) -> ParaLabel:
    lv = _level(rs, k)
    image = simple_current_action(rs, k, i, p.weight)
    # lambda + k Lambda_i - Lambda^(i) = beta + (Lambda + k Lambda_i - Lambda^(i))
    delta = [w + (k if j == i - 1 else 0) - v for j, (w, v) in enumerate(zip(p.weight, image))]
    return ParaLabel(image, _shift_coset(lv, p.coset, delta, "Lambda + k Lambda_i - Lambda^(i)"))


@lru_cache(maxsize=None)
def _orbit(rs: RootSystem, k: int, p: ParaLabel) -> tuple[ParaLabel, ...]:
    seen = {p}
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for i in rs.set_I:
                r = _sigma(rs, k, i, q)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    orbit = tuple(sorted(seen))
    expected = _level(rs, k).p_mod_q
    if len(orbit) != expected:
        raise ConsistencyError("orbit regularity",
                               f"orbit of {p} has {len(orbit)} elements, |P/Q| = {expected}: {orbit}")
    return orbit


def orbit(rs: RootSystem, k: int, p: ParaLabel) -> tuple[ParaLabel, ...]:
    """Identification class of ``p``, sorted."""
    return _orbit(rs, k, check_para(rs, k, p))


def canonicalize(rs: RootSystem, k: int, p: ParaLabel) -> ParaLabel:
    return orbit(rs, k, p)[0]


def is_canonical(rs: RootSystem, k: int, p: ParaLabel) -> bool:
    return canonicalize(rs, k, p) == tuple(p)


@lru_cache(maxsize=None)
def _classify(rs: RootSystem, k: int) -> tuple[ParaLabel, ...]:
    lv = _level(rs, k)
    labels = sorted({_orbit(rs, k, p)[0] for p in enumerate_raw(rs, k)})
    raw = len(lv.weights) * lv.cosets.order
    if raw % lv.p_mod_q or len(labels) != raw // lv.p_mod_q:
        raise ConsistencyError("count identity",
                               f"{len(labels)} classes, expected {raw}/{lv.p_mod_q}")
    return tuple(labels)


def classify(rs: RootSystem, k: int) -> list[ParaLabel]:
    """Canonical labels of the inequivalent irreducible modules."""
    return list(_classify(rs, check_level(k)))


def expected_count(rs: RootSystem, k: int) -> int:
    lv = _level(rs, check_level(k))
    return len(lv.weights) * lv.cosets.order // lv.p_mod_q


def qdim_para(rs: RootSystem, k: int, p: ParaLabel, dps: int = DEFAULT_DPS):
    """Quantum dimension of ``M^{Lambda, lambda}``: that of ``L(k, Lambda)``."""
    p = check_para(rs, k, p)
    return qdim_affine(rs, k, p.weight, dps)


def simple_current_labels(rs: RootSystem, k: int) -> list[ParaLabel]:
    """Distinct canonical forms of ``(0, beta_i)`` over all cosets."""
    zero = (0,) * rs.rank
    order = coset_group(rs, k).order
    return sorted({canonicalize(rs, k, ParaLabel(zero, i)) for i in range(order)})


def fusion_para(rs: RootSystem, k: int, p1: ParaLabel, p2: ParaLabel) -> FusionTable:
    """Fusion product of two modules as a table over canonical labels.

    Each ``Lambda3`` in ``L(k, Lambda1) x L(k, Lambda2)`` contributes
    ``M^{Lambda3, Lambda1 + Lambda2 + beta_i + beta_j}`` with the affine
    multiplicity; contributions from distinct ``Lambda3`` must land in
    distinct classes.
    """
    p1 = check_para(rs, k, p1)
    p2 = check_para(rs, k, p2)
    return dict(_fusion_para(rs, k, p1, p2))


@lru_cache(maxsize=None)
def _fusion_para(rs: RootSystem, k: int, p1: ParaLabel, p2: ParaLabel):
    lv = _level(rs, k)
    beta = [x + y for x, y in zip(lv.cosets.rep_coords[p1.coset], lv.cosets.rep_coords[p2.coset])]
    base = lv.cosets.coset_of_coords(beta)
    out: dict[ParaLabel, int] = {}
    source: dict[ParaLabel, Weight] = {}
    for w3, m in fusion_affine(rs, k, p1.weight, p2.weight).items():
        delta = [a + b - c for a, b, c in zip(p1.weight, p2.weight, w3)]
        raw = ParaLabel(w3, _shift_coset(lv, base, delta, "Lambda1 + Lambda2 - Lambda3"))
        canon = _orbit(rs, k, raw)[0]
        if canon in out:
            raise ConsistencyError(
                "fusion outputs distinct",
                f"{p1} x {p2}: Lambda3 = {source[canon]} and {w3} both give {canon}")
        out[canon] = m
        source[canon] = w3
    return tuple(sorted(out.items()))


def glob_para(rs: RootSystem, k: int, dps: int = DEFAULT_DPS):
    with mpmath.workdps(dps):
        return mpmath.fsum(qdim_para(rs, k, p, dps) ** 2 for p in classify(rs, k))


def verify_glob_identity(rs: RootSystem, k: int, tol: float = 1e-6, dps: int = DEFAULT_DPS) -> dict:
    """Check ``|P/kQ_L| glob(K) = glob(L(k,0)) |Q/kQ_L|^2`` and the derived ratio form."""
    with mpmath.workdps(dps):
        g_para = glob_para(rs, k, dps)
        g_aff = glob_affine(rs, k, dps)
        p_kql = index(rs, "P/kQ_L", k)
        q_kql = index(rs, "Q/kQ_L", k)
        p_q = index(rs, "P/Q")
        lhs = p_kql * g_para
        rhs = g_aff * q_kql**2
        ratio = g_aff * q_kql / p_q
        identity_ok = abs(lhs - rhs) <= tol * abs(rhs)
        ratio_ok = abs(g_para - ratio) <= tol * abs(ratio)
        return {
            "type": str(rs.type), "level": k,
            "glob_para": float(g_para), "glob_affine": float(g_aff),
            "P/kQ_L": p_kql, "Q/kQ_L": q_kql, "P/Q": p_q,
            "lhs": float(lhs), "rhs": float(rhs),
            "identity": bool(identity_ok), "ratio": bool(ratio_ok),
            "passed": bool(identity_ok and ratio_ok),
        }


def orbit_sizes(rs: RootSystem, k: int) -> dict[int, int]:
    """Histogram of identification-orbit sizes over all raw labels."""
    hist: dict[int, int] = defaultdict(int)
    for p in classify(rs, k):
        hist[len(_orbit(rs, k, p))] += 1
    return dict(hist)


def label_to_json(rs: RootSystem, k: int, p: ParaLabel) -> dict:
    return {"Lambda": list(p.weight), "coset": list(coset_group(rs, k).snf_of_index(p.coset))}


def label_from_snf(rs: RootSystem, k: int, weight: Sequence[int], snf: Sequence[int]) -> ParaLabel:
    return check_para(rs, k, ParaLabel(tuple(weight), coset_group(rs, k).index_of_snf(snf)))


def format_label(rs: RootSystem, k: int, p: ParaLabel) -> str:
    snf = coset_group(rs, k).snf_of_index(p.coset)
    return ",".join(map(str, p.weight)) + "@" + ",".join(map(str, snf))
