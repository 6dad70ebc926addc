"""Level-k integrable highest weights and the affine fusion ring.

Fusion coefficients are computed exactly by the Kac-Walton algorithm
(finite tensor product, then signed reflection into the level alcove), with
a floating-point Verlinde computation kept as an independent oracle.
"""

from __future__ import annotations

import itertools
import json
import os
import threading
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .errors import ConsistencyError, InputError
from .liealg import DEFAULT_WEYL_BOUND, RootSystem, dominant_dynkin, weyl_group_elements
from .repdata import Weight, check_dominant, tensor_decompose

DEFAULT_DPS = 50
VERLINDE_TOL = 1e-6

FusionTable = dict[Weight, int]


@dataclass(frozen=True)
class AffineLabel:
    rs: RootSystem
    level: int
    weight: Weight

    def __post_init__(self):
        check_label(self.rs, self.level, self.weight)


def check_level(k) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError(f"level must be a positive integer, got {k!r}")
    return k


def check_label(rs: RootSystem, k: int, weight: Sequence[int]) -> Weight:
    check_level(k)
    weight = check_dominant(rs, weight)
    if rs.level(weight) > k:
        raise InputError(f"weight {weight} has <Lambda, theta> = {rs.level(weight)} > level {k}")
    return weight


@lru_cache(maxsize=None)
def _pk(rs: RootSystem, k: int) -> tuple[Weight, ...]:
    out = []
    ranges = [range(k // m + 1) for m in rs.comarks]
    for labels in itertools.product(*ranges):
        if rs.level(labels) <= k:
            out.append(tuple(labels))
    return tuple(sorted(out))


def enumerate_Pk(rs: RootSystem, k: int) -> list[Weight]:
    """Dominant weights with ``<Lambda, theta> <= k``, lexicographically ordered."""
    return list(_pk(rs, check_level(k)))


def conformal_weight(rs: RootSystem, k: int, weight: Sequence[int]) -> Fraction:
    weight = check_label(rs, k, weight)
    two_rho = (2,) * rs.rank
    shifted = tuple(a + b for a, b in zip(weight, two_rho))
    return rs.dynkin_inner(shifted, weight) / (2 * (k + rs.dual_coxeter))


def qdim_affine(rs: RootSystem, k: int, weight: Sequence[int], dps: int = DEFAULT_DPS):
    """``prod_{alpha>0} sin(pi <Lambda+rho, alpha>/kappa) / sin(pi <rho, alpha>/kappa)``."""
    weight = check_label(rs, k, weight)
    kappa = k + rs.dual_coxeter
    rho = (1,) * rs.rank
    shifted = tuple(a + 1 for a in weight)
    with mpmath.workdps(dps):
        value = mpmath.mpf(1)
        for alpha in rs.positive_roots_dynkin:
            x = rs.dynkin_inner(shifted, alpha)
            y = rs.dynkin_inner(rho, alpha)
            value *= (mpmath.sin(mpmath.pi * x.numerator / (x.denominator * kappa))
                      / mpmath.sin(mpmath.pi * y.numerator / (y.denominator * kappa)))
        return +value


def glob_affine(rs: RootSystem, k: int, dps: int = DEFAULT_DPS):
    with mpmath.workdps(dps):
        return mpmath.fsum(qdim_affine(rs, k, w, dps) ** 2 for w in enumerate_Pk(rs, k))


def alcove_reduce(rs: RootSystem, k: int, shifted: Sequence[int]) -> tuple[Weight, int]:
    """Bring a rho-shifted weight into the open level ``k + h`` alcove.

    Returns the image (still rho-shifted) and the sign of the affine Weyl
    element used; the sign is 0 when the weight lies on an alcove wall.
    """
    kappa = k + rs.dual_coxeter
    theta = rs.theta_dynkin
    mu = tuple(shifted)
    sign = 1
    while True:
        mu, s = dominant_dynkin(rs, mu)
        if s == 0:
            return mu, 0
        sign *= s
        t = rs.level(mu)
        if t == kappa:
            return mu, 0
        if t < kappa:
            return mu, sign
        # affine reflection in the wall <mu, theta> = kappa
        mu = tuple(m - (t - kappa) * th for m, th in zip(mu, theta))
        sign = -sign


@lru_cache(maxsize=None)
def _fusion(rs: RootSystem, k: int, a: Weight, b: Weight) -> tuple[tuple[Weight, int], ...]:
    acc: dict[Weight, int] = defaultdict(int)
    for w, m in tensor_decompose(rs, a, b).items():
        mu, sign = alcove_reduce(rs, k, tuple(x + 1 for x in w))
        if sign:
            acc[tuple(x - 1 for x in mu)] += sign * m
    out = []
    for w, m in sorted(acc.items()):
        if m < 0:
            raise ConsistencyError("Kac-Walton", f"negative fusion coefficient {m} for {a} x {b} -> {w}")
        if m:
            out.append((w, m))
    return tuple(out)


_disk_lock = threading.Lock()
_cache_dir: str | None = None


def set_cache_dir(path: str | None) -> None:
    """Persist full fusion rings as JSON under ``path`` (None disables)."""
    global _cache_dir
    _cache_dir = path


def fusion_affine(rs: RootSystem, k: int, a: Sequence[int], b: Sequence[int]) -> FusionTable:
    """``N_{a,b}^c`` for all ``c`` in ``P_+^k`` (zero entries omitted)."""
    a = check_label(rs, k, a)
    b = check_label(rs, k, b)
    if _cache_dir is not None:
        return dict(fusion_ring(rs, k)[a, b])
    return dict(_fusion(rs, k, a, b))


def _ring_path(rs: RootSystem, k: int) -> str:
    return os.path.join(_cache_dir, f"fusion_{rs.type.family}{rs.rank}_k{k}.json")


@lru_cache(maxsize=None)
def _ring(rs: RootSystem, k: int, cache_dir: str | None):
    labels = _pk(rs, k)
    if cache_dir is not None:
        path = _ring_path(rs, k)
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            ring = {}
            for entry in data:
                a, b = (tuple(x) for x in entry["inputs"])
                ring[a, b] = {tuple(o["label"]): o["mult"] for o in entry["outputs"]}
            return ring
    ring = {(a, b): dict(_fusion(rs, k, a, b)) for a in labels for b in labels}
    if cache_dir is not None:
        with _disk_lock:
            os.makedirs(cache_dir, exist_ok=True)
            tmp = _ring_path(rs, k) + ".tmp"
            with open(tmp, "w") as fh:
                json.dump([table_to_json([a, b], t) for (a, b), t in ring.items()], fh)
            os.replace(tmp, _ring_path(rs, k))
    return ring


def fusion_ring(rs: RootSystem, k: int) -> dict[tuple[Weight, Weight], FusionTable]:
    """Full fusion table of ``P_+^k``, computed once per ``(type, k)``."""
    return _ring(rs, check_level(k), _cache_dir)


def fusion_matrix(rs: RootSystem, k: int, a: Sequence[int]) -> np.ndarray:
    """``(N_{a,b}^c)_{b,c}`` with rows and columns in ``enumerate_Pk`` order."""
    labels = enumerate_Pk(rs, k)
    pos = {w: i for i, w in enumerate(labels)}
    mat = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for i, b in enumerate(labels):
        for c, m in fusion_affine(rs, k, a, b).items():
            mat[i, pos[c]] = m
    return mat


def perron_eigenvalue(mat: np.ndarray, tol: float = 1e-13, max_iter: int = 200000) -> float:
    """Largest eigenvalue of a nonnegative matrix by power iteration.

    Iterates on ``mat + I`` so the Perron root is strictly dominant in modulus
    even when ``mat`` has other eigenvalues of equal modulus.
    """
    shifted = mat.astype(float) + np.eye(mat.shape[0])
    v = np.ones(mat.shape[0])
    value = 0.0
    for _ in range(max_iter):
        w = shifted @ v
        new = float(np.linalg.norm(w) / np.linalg.norm(v))
        v = w / np.linalg.norm(w)
        if abs(new - value) < tol * max(1.0, new):
            return new - 1.0
        value = new
    return value - 1.0


@lru_cache(maxsize=None)
def _s_matrix(rs: RootSystem, k: int, bound: int) -> np.ndarray:
    labels = _pk(rs, k)
    kappa = k + rs.dual_coxeter
    weyl = weyl_group_elements(rs, bound)
    shifted = [rs.from_dynkin(tuple(x + 1 for x in w)) for w in labels]
    g = rs.gram_form
    dim = rs.dim
    s = np.zeros((len(labels), len(labels)), dtype=complex)
    for i, lam in enumerate(shifted):
        orbit = [(w(lam), w.det) for w in weyl]
        for j, mu in enumerate(shifted):
            gm = [sum(g[r][c] * mu[c] for c in range(dim)) for r in range(dim)]
            total = 0j
            for v, det in orbit:
                x = sum(v[r] * gm[r] for r in range(dim))
                total += det * np.exp(-2j * np.pi * float(x) / kappa)
            s[i, j] = total
    s /= np.linalg.norm(s[0])
    return s


def verlinde_oracle(rs: RootSystem, k: int, a: Sequence[int], b: Sequence[int],
                    bound: int = DEFAULT_WEYL_BOUND, tol: float = VERLINDE_TOL) -> FusionTable:
    """Fusion coefficients from the Verlinde formula, rounded to integers."""
    a = check_label(rs, k, a)
    b = check_label(rs, k, b)
    labels = _pk(rs, k)
    s = _s_matrix(rs, k, bound)
    ia, ib = labels.index(a), labels.index(b)
    values = (s[ia] * s[ib] / s[0]) @ s.conj().T
    out = {}
    for c, v in zip(labels, values):
        n = round(v.real)
        if abs(v - n) > tol:
            raise ConsistencyError("Verlinde oracle", f"N_{{{a},{b}}}^{c} = {v} is not an integer")
        if n:
            out[c] = n
    return out


def simple_current_action(rs: RootSystem, k: int, i: int, weight: Sequence[int]) -> Weight:
    """``Lambda^(i)``: the unique label in ``L(k, k Lambda_i) x L(k, Lambda)``."""
    if i not in rs.set_I:
        raise InputError(f"node {i} is not in I = {list(rs.set_I)} for {rs.type}")
    current = tuple(k if j == i - 1 else 0 for j in range(rs.rank))
    table = fusion_affine(rs, k, current, weight)
    if len(table) != 1 or next(iter(table.values())) != 1:
        raise ConsistencyError("simple current fusion",
                               f"k*Lambda_{i} x {tuple(weight)} = {table} is not a single label")
    return next(iter(table))


def table_to_json(inputs, table: FusionTable) -> dict:
    return {"inputs": [list(x) for x in inputs],
            "outputs": [{"label": list(w), "mult": m} for w, m in sorted(table.items())]}
