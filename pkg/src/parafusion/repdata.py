"""Weight multiplicities and tensor products of finite-dimensional irreducibles.

Weights are tuples of integer Dynkin labels throughout.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConsistencyError, InputError
from .liealg import RootSystem, dominant_dynkin

Weight = tuple[int, ...]


def check_dominant(rs: RootSystem, labels: Sequence[int]) -> Weight:
    labels = tuple(labels)
    if len(labels) != rs.rank:
        raise InputError(f"weight {labels} needs {rs.rank} Dynkin labels for {rs.type}")
    if any(not isinstance(c, int) or c < 0 for c in labels):
        raise InputError(f"weight {labels} is not dominant integral")
    return labels


def _rho(rs: RootSystem) -> Weight:
    return (1,) * rs.rank


def _add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def weyl_dim(rs: RootSystem, hw: Sequence[int]) -> int:
    hw = check_dominant(rs, hw)
    shifted = _add(hw, _rho(rs))
    num = den = 1
    for alpha in rs.positive_roots_dynkin:
        num *= rs.dynkin_inner_scaled(shifted, alpha)
        den *= rs.dynkin_inner_scaled(_rho(rs), alpha)
    value = Fraction(num, den)
    if value.denominator != 1:
        raise ConsistencyError("Weyl dimension", f"non-integral value {value} for {hw}")
    return int(value)


def _below(rs: RootSystem, hw: Weight, mu: Weight) -> bool:
    """True iff ``hw - mu`` is a nonnegative integer combination of simple roots."""
    coords = rs.dynkin_to_simple(_sub(hw, mu))
    return all(c.denominator == 1 and c >= 0 for c in coords)


@lru_cache(maxsize=None)
def _multiplicities(rs: RootSystem, hw: Weight) -> dict[Weight, int]:
    # Freudenthal's recursion, one depth layer at a time; a candidate is kept
    # only if its dominant conjugate lies below the highest weight, which
    # keeps the denominator positive.
    ip = rs.dynkin_inner_scaled
    roots = rs.positive_roots_dynkin
    simple = rs.cartan
    top = _add(hw, _rho(rs))
    top_norm = ip(top, top)
    mult = {hw: 1}
    layer = [hw]
    while layer:
        candidates = set()
        for mu in layer:
            for a in simple:
                nu = _sub(mu, a)
                if nu not in mult and nu not in candidates:
                    dom, _ = dominant_dynkin(rs, nu)
                    if _below(rs, hw, dom):
                        candidates.add(nu)
        new_layer = []
        for nu in sorted(candidates, reverse=True):
            total = 0
            for alpha in roots:
                step = _add(nu, alpha)
                while step in mult:
                    total += mult[step] * ip(step, alpha)
                    step = _add(step, alpha)
            shifted = _add(nu, _rho(rs))
            den = top_norm - ip(shifted, shifted)
            m, rem = divmod(2 * total, den)
            if rem or m <= 0:
                raise ConsistencyError("Freudenthal recursion",
                                       f"multiplicity {Fraction(2 * total, den)} at {nu} in L{hw}")
            mult[nu] = m
            new_layer.append(nu)
        layer = new_layer
    return mult


def weight_multiplicities(rs: RootSystem, hw: Sequence[int]) -> dict[Weight, int]:
    """All weights of ``L(hw)`` with multiplicities, keyed by Dynkin labels."""
    return dict(_multiplicities(rs, check_dominant(rs, hw)))


@lru_cache(maxsize=None)
def _tensor(rs: RootSystem, a: Weight, b: Weight) -> tuple[tuple[Weight, int], ...]:
    # Racah-Speiser: run over the weights of the smaller factor.
    if weyl_dim(rs, b) > weyl_dim(rs, a):
        a, b = b, a
    rho = _rho(rs)
    acc: dict[Weight, int] = defaultdict(int)
    for nu, m in _multiplicities(rs, b).items():
        dom, sign = dominant_dynkin(rs, _add(_add(a, nu), rho))
        if sign:
            acc[_sub(dom, rho)] += sign * m
    out = []
    for w, m in sorted(acc.items()):
        if m < 0:
            raise ConsistencyError("tensor product", f"negative multiplicity {m} for {w}")
        if m:
            out.append((w, m))
    return tuple(out)


def tensor_decompose(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> dict[Weight, int]:
    """Multiplicities of irreducibles in ``L(a) (x) L(b)``."""
    return dict(_tensor(rs, check_dominant(rs, a), check_dominant(rs, b)))
