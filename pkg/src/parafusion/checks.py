"""Named verification checks used by ``parafusion verify``.

Each check returns a :class:`Check`; nothing here raises on a failed identity
except where the underlying computation itself raises ``ConsistencyError``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from . import affine, parafermion as pf
from .lattice import dual_lattice, index, long_root_lattice, weight_lattice
from .liealg import (DEFAULT_WEYL_BOUND, MARK_ONE_TABLE, RootSystem, inner, root_system,
                     weyl_group_order)
from .errors import ConsistencyError
from .repdata import weyl_dim

DUALITY_TYPES = ([("A", l) for l in range(1, 7)] + [("B", l) for l in range(2, 7)]
               + [("C", l) for l in range(2, 7)] + [("D", l) for l in range(4, 7)]
               + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])

CLASSIFY_MATRIX = ([("A", 1, k) for k in range(1, 7)] + [("A", 2, k) for k in (1, 2, 3)]
                   + [("B", 2, k) for k in (1, 2, 3)] + [("C", 3, k) for k in (1, 2)]
                   + [("D", 4, 1), ("G", 2, 1), ("G", 2, 2), ("F", 4, 1), ("E", 6, 1)])

VERLINDE_MATRIX = ([("A", 2, k) for k in (1, 2, 3)] + [("B", 2, k) for k in (1, 2, 3)]
                   + [("G", 2, k) for k in (1, 2)] + [("A", 3, k) for k in (1, 2)])

PARA_ASSOC_MATRIX = ([("A", 1, k) for k in range(1, 5)] + [("A", 2, k) for k in (1, 2)]
                     + [("B", 2, k) for k in (1, 2)])


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _guard(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except ConsistencyError as exc:
        return Check(name, False, str(exc))
    return Check(name, ok, detail)


def sl2_fusion(k: int, a: int, b: int, c: int) -> int:
    return int(abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0)


def is_permutation(table_rows: list[dict]) -> bool:
    targets = []
    for row in table_rows:
        if len(row) != 1 or next(iter(row.values())) != 1:
            return False
        targets.append(next(iter(row)))
    return len(set(targets)) == len(targets)


def _combine(rs, k, table, right, fuse):
    acc = {}
    for p, m in table.items():
        for q, n in fuse(rs, k, p, right).items():
            acc[q] = acc.get(q, 0) + m * n
    return acc


def _lcombine(rs, k, left, table, fuse):
    acc = {}
    for p, m in table.items():
        for q, n in fuse(rs, k, left, p).items():
            acc[q] = acc.get(q, 0) + m * n
    return acc


def associative(rs: RootSystem, k: int, labels, fuse) -> bool:
    for a, b, c in itertools.product(labels, repeat=3):
        left = _combine(rs, k, fuse(rs, k, a, b), c, fuse)
        right = _lcombine(rs, k, a, fuse(rs, k, b, c), fuse)
        if left != right:
            return False
    return True


# -- per-case checks -------------------------------------------------------

def check_duality(rs: RootSystem) -> Check:
    ok = dual_lattice(long_root_lattice(rs)) == weight_lattice(rs)
    return Check("dual(Q_L)=P", ok, str(rs.type))


def check_marks(rs: RootSystem) -> list[Check]:
    expected = MARK_ONE_TABLE[rs.type.family](rs.rank)
    p_q = index(rs, "P/Q")
    return [
        Check("marks/I table", list(rs.set_I) == expected, f"{rs.type}: I = {list(rs.set_I)}"),
        Check("|I|+1=|P/Q|", len(rs.set_I) + 1 == p_q, f"{rs.type}: |P/Q| = {p_q}"),
        Check("h=1+<rho,theta>", rs.dual_coxeter == 1 + inner(rs, rs.rho, rs.highest_root),
              f"{rs.type}: h = {rs.dual_coxeter}"),
    ]


def check_count(rs: RootSystem, k: int) -> Check:
    def run():
        n = len(pf.classify(rs, k))
        raw = len(affine.enumerate_Pk(rs, k)) * index(rs, "Q/kQ_L", k)
        return n * index(rs, "P/Q") == raw, f"{rs.type} k={k}: {n} modules"
    return _guard("count identity", run)


def check_orbits(rs: RootSystem, k: int) -> Check:
    def run():
        hist = pf.orbit_sizes(rs, k)
        return set(hist) == {index(rs, "P/Q")}, f"{rs.type} k={k}: sizes {sorted(hist)}"
    return _guard("orbit regularity", run)


def check_glob(rs: RootSystem, k: int, tol: float) -> Check:
    def run():
        rep = pf.verify_glob_identity(rs, k, tol)
        return rep["passed"], f"{rs.type} k={k}: {rep['lhs']:.10g} vs {rep['rhs']:.10g}"
    return _guard("glob identity", run)


def check_para_fusion(rs: RootSystem, k: int, tol: float) -> list[Check]:
    """Distinct outputs, qdim multiplicativity and commutativity over all pairs."""
    labels = pf.classify(rs, k)
    qd = {p: float(pf.qdim_para(rs, k, p)) for p in labels}
    worst = 0.0
    commutative = True
    try:
        for a, b in itertools.product(labels, repeat=2):
            t = pf.fusion_para(rs, k, a, b)
            worst = max(worst, abs(qd[a] * qd[b] - sum(m * qd[p] for p, m in t.items())))
            if a < b and t != pf.fusion_para(rs, k, b, a):
                commutative = False
    except ConsistencyError as exc:
        return [Check("fusion outputs distinct", False, str(exc))]
    where = f"{rs.type} k={k}"
    return [
        Check("fusion outputs distinct", True, where),
        Check("qdim multiplicativity", worst < tol, f"{where}: max error {worst:.2e}"),
        Check("fusion commutative", commutative, where),
    ]


def check_simple_currents(rs: RootSystem, k: int, tol: float = 1e-9) -> Check:
    def run():
        labels = pf.classify(rs, k)
        for c in pf.simple_current_labels(rs, k):
            if abs(float(pf.qdim_para(rs, k, c)) - 1) > tol:
                return False, f"qdim of {c} is not 1"
            if not is_permutation([pf.fusion_para(rs, k, c, p) for p in labels]):
                return False, f"fusion with {c} is not a permutation"
        return True, f"{rs.type} k={k}: {len(pf.simple_current_labels(rs, k))} currents"
    return _guard("simple currents", run)


def check_qdim_orbits(rs: RootSystem, k: int, tol: float = 1e-9) -> Check:
    def run():
        worst = 0.0
        for w in affine.enumerate_Pk(rs, k):
            ref = affine.qdim_affine(rs, k, w)
            for i in range(pf.coset_group(rs, k).order):
                p = pf.ParaLabel(w, i)
                for q in pf.orbit(rs, k, p):
                    worst = max(worst, float(abs(pf.qdim_para(rs, k, q) - ref)))
        return worst < tol, f"{rs.type} k={k}: max deviation {worst:.1e}"
    return _guard("qdim constant on orbits", run)


def check_verlinde(rs: RootSystem, k: int) -> Check:
    def run():
        labels = affine.enumerate_Pk(rs, k)
        for a, b in itertools.product(labels, repeat=2):
            if affine.fusion_affine(rs, k, a, b) != affine.verlinde_oracle(rs, k, a, b):
                return False, f"{rs.type} k={k}: mismatch at {a} x {b}"
        return True, f"{rs.type} k={k}"
    return _guard("Kac-Walton = Verlinde", run)


def run_case(family: str, rank: int, k: int, tol: float = 1e-6) -> list[Check]:
    rs = root_system(family, rank)
    out = [check_duality(rs), *check_marks(rs), check_count(rs, k), check_orbits(rs, k),
           check_glob(rs, k, tol), check_qdim_orbits(rs, k), check_simple_currents(rs, k),
           *check_para_fusion(rs, k, tol)]
    if weyl_group_order(family, rank) <= DEFAULT_WEYL_BOUND and len(affine.enumerate_Pk(rs, k)) <= 30:
        out.append(check_verlinde(rs, k))
    return out


# -- the full acceptance matrix -------------------------------------------

def _all(checks) -> tuple[bool, str]:
    checks = list(checks)
    bad = [c for c in checks if not c.passed]
    return not bad, (f"{len(checks)} cases" if not bad else bad[0].line())


def acceptance(tol: float = 1e-6) -> Iterator[Check]:
    """Criteria 1-10 of the acceptance gate, one :class:`Check` each."""
    systems = [root_system(f, l) for f, l in DUALITY_TYPES]
    matrix = [(root_system(f, l), k) for f, l, k in CLASSIFY_MATRIX]

    yield Check("1 dual(Q_L)=P", *_all(check_duality(rs) for rs in systems))
    yield Check("2 marks/I table", *_all(c for rs in systems for c in check_marks(rs)[:2]))

    def qdims():
        a1 = root_system("A", 1)
        for k in range(1, 21):
            for m in range(k + 1):
                want = math.sin((m + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))
                got = float(affine.qdim_affine(a1, k, (m,)))
                if abs(got - want) > 1e-9 * want:
                    return False, f"A1 k={k} m={m}: {got} vs {want}"
        for rs in systems:
            if affine.qdim_affine(rs, 1, (0,) * rs.rank) != 1:
                return False, f"qdim(0) != 1 for {rs.type}"
        for f, l in (("A", 2), ("B", 2), ("G", 2)):
            rs = root_system(f, l)
            for w in affine.enumerate_Pk(rs, 3):
                d = weyl_dim(rs, w)
                rel = abs(float(affine.qdim_affine(rs, 1000, w)) - d) / d
                if rel >= 1e-3:
                    return False, f"classical limit {rs.type} {w}: {rel}"
        return True, "A1 k<=20, qdim(0), classical limit"
    yield _guard("3 quantum dimensions", qdims)

    def fusion():
        a1 = root_system("A", 1)
        for k in range(1, 11):
            for a, b in itertools.product(range(k + 1), repeat=2):
                t = affine.fusion_affine(a1, k, (a,), (b,))
                for c in range(k + 1):
                    if t.get((c,), 0) != sl2_fusion(k, a, b, c):
                        return False, f"A1 k={k}: N_{a},{b}^{c}"
        return _all(check_verlinde(root_system(f, l), k) for f, l, k in VERLINDE_MATRIX)
    yield _guard("4 affine fusion", fusion)

    def perron():
        worst = 0.0
        for f, l, kmax in (("A", 1, 6), ("A", 2, 3)):
            rs = root_system(f, l)
            for k in range(1, kmax + 1):
                for w in affine.enumerate_Pk(rs, k):
                    ev = affine.perron_eigenvalue(affine.fusion_matrix(rs, k, w))
                    worst = max(worst, abs(ev - float(affine.qdim_affine(rs, k, w))))
        return worst < 1e-6, f"max error {worst:.1e}"
    yield _guard("5 max eigenvalue = qdim", perron)

    yield Check("6 module count", *_all(check_count(rs, k) for rs, k in matrix))
    yield Check("7 orbit regularity", *_all(check_orbits(rs, k) for rs, k in matrix))
    yield Check("8 glob identity", *_all(check_glob(rs, k, tol) for rs, k in matrix))

    def para_fusion():
        ok, detail = _all(c for rs, k in matrix for c in check_para_fusion(rs, k, tol))
        if not ok:
            return ok, detail
        for f, l, k in PARA_ASSOC_MATRIX:
            rs = root_system(f, l)
            if not associative(rs, k, pf.classify(rs, k), pf.fusion_para):
                return False, f"associativity fails for {rs.type} k={k}"
        return True, detail + ", associativity"
    yield _guard("9 parafermion fusion", para_fusion)
    yield Check("10 simple currents", *_all(check_simple_currents(rs, k) for rs, k in matrix))
