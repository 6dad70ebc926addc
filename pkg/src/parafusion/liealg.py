"""Root systems of the simple Lie algebras, realized with exact rationals.

Every root system lives in an ambient coordinate space carrying a diagonal
rational form ``c * I``.  The scale ``c`` is chosen per family so that all
coordinates are rational and the highest root has squared length 2.  Simple
roots are numbered as in Kac's tables (so e.g. the E_6 nodes with mark 1 are
1 and 5, and for E_7 it is node 6).

Weights are handled in two interchangeable forms: :class:`WeightVec` in the
ambient space, and tuples of integer Dynkin labels (coefficients on the
fundamental weights), which the representation-theory code uses for speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import _rational as rl
from .errors import InputError

FAMILIES = "ABCDEFG"

DEFAULT_WEYL_BOUND = 2000

# E-series simple roots are taken from the Bourbaki realization of E_8; these
# tables give the Bourbaki node for each Kac node (both 1-based).
_E_KAC_TO_BOURBAKI = {
    6: (1, 3, 4, 5, 6, 2),
    7: (1, 3, 4, 5, 6, 7, 2),
    8: (8, 7, 6, 5, 4, 3, 1, 2),
}

# Nodes with mark 1, Kac labeling.
MARK_ONE_TABLE = {
    "A": lambda l: list(range(1, l + 1)),
    "B": lambda l: [1],
    "C": lambda l: [l],
    "D": lambda l: [1, l - 1, l],
    "E": lambda l: {6: [1, 5], 7: [6], 8: []}[l],
    "F": lambda l: [],
    "G": lambda l: [],
}

DUAL_COXETER_TABLE = {
    "A": lambda l: l + 1,
    "B": lambda l: 2 * l - 1,
    "C": lambda l: l + 1,
    "D": lambda l: 2 * l - 2,
    "E": lambda l: {6: 12, 7: 18, 8: 30}[l],
    "F": lambda l: 9,
    "G": lambda l: 4,
}


def weyl_group_order(family: str, rank: int) -> int:
    l = rank
    if family == "A":
        return math.factorial(l + 1)
    if family in "BC":
        return 2**l * math.factorial(l)
    if family == "D":
        return 2 ** (l - 1) * math.factorial(l)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[family, l]


class SimpleType(NamedTuple):
    family: str
    rank: int

    def validate(self) -> "SimpleType":
        f, l = self.family, self.rank
        if f not in FAMILIES:
            raise InputError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
        if not isinstance(l, int) or isinstance(l, bool):
            raise InputError(f"rank must be an integer, got {l!r}")
        rules = {"A": (l >= 1, "rank >= 1"), "B": (l >= 2, "rank >= 2"),
                 "C": (l >= 2, "rank >= 2"), "D": (l >= 4, "rank >= 4"),
                 "E": (l in (6, 7, 8), "rank in {6, 7, 8}"),
                 "F": (l == 4, "rank == 4"), "G": (l == 2, "rank == 2")}
        ok, rule = rules[f]
        if not ok:
            raise InputError(f"type {f}{l} is invalid: family {f} requires {rule}")
        return self

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


class WeightVec:
    """Exact rational vector in the ambient space of a root system."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(Fraction(c) for c in coords)

    @classmethod
    def zero(cls, dim: int) -> "WeightVec":
        return cls((0,) * dim)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "WeightVec") -> None:
        if len(other.coords) != len(self.coords):
            raise InputError(f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other: "WeightVec") -> "WeightVec":
        self._check(other)
        return WeightVec(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        self._check(other)
        return WeightVec(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "WeightVec":
        return WeightVec(-a for a in self.coords)

    def __mul__(self, s) -> "WeightVec":
        s = Fraction(s)
        return WeightVec(s * a for a in self.coords)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightVec) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: "WeightVec") -> bool:
        return self.coords < other.coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return "WeightVec(" + ", ".join(str(c) for c in self.coords) + ")"


def _unit(dim: int, i: int, scale=1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(scale)
    return v


def _realize(t: SimpleType) -> tuple[list[list[Fraction]], Fraction]:
    """Simple roots (Kac order) in ambient coordinates and the form scale."""
    f, l = t
    half = Fraction(1, 2)
    if f == "A":
        dim = l + 1
        return [[Fraction(int(j == i) - int(j == i + 1)) for j in range(dim)]
                for i in range(l)], Fraction(1)
    if f in "BCD":
        roots = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(l)]
                 for i in range(l - 1)]
        if f == "B":
            roots.append(_unit(l, l - 1))
            return roots, Fraction(1)
        if f == "C":
            # the long root sqrt(2) e_l becomes 2 e_l after rescaling by sqrt(2)
            roots.append(_unit(l, l - 1, 2))
            return roots, half
        last = _unit(l, l - 1)
        last[l - 2] = Fraction(1)
        roots.append(last)
        return roots, Fraction(1)
    if f == "E":
        bourbaki = [[half * s for s in (1, -1, -1, -1, -1, -1, -1, 1)],
                    _unit(8, 0)]
        bourbaki[1][1] = Fraction(1)
        for i in range(6):
            v = [Fraction(0)] * 8
            v[i + 1], v[i] = Fraction(1), Fraction(-1)
            bourbaki.append(v)
        return [bourbaki[b - 1] for b in _E_KAC_TO_BOURBAKI[l]], Fraction(1)
    if f == "F":
        return [[Fraction(x) for x in (0, 1, -1, 0)],
                [Fraction(x) for x in (0, 0, 1, -1)],
                [Fraction(x) for x in (0, 0, 0, 1)],
                [half * s for s in (1, -1, -1, -1)]], Fraction(1)
    # G_2 in the plane x+y+z=0, all coordinates scaled by sqrt(3)
    return [[Fraction(x) for x in (-2, 1, 1)],
            [Fraction(x) for x in (1, -1, 0)]], Fraction(1, 3)


def _positive_roots_simple(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots as simple-root coordinates, sorted by height then lexicographically."""
    l = len(cartan)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(l):
                pairing = sum(beta[j] * cartan[j][i] for j in range(l))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = list(nxt)
    return sorted(roots, key=lambda r: (sum(r), r))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Exact data of a simple root system (Kac node numbering, 1-based in ``set_I``)."""

    type: SimpleType
    simple_roots: tuple[WeightVec, ...]
    positive_roots: tuple[WeightVec, ...]
    highest_root: WeightVec
    fundamental_weights: tuple[WeightVec, ...]
    rho: WeightVec
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    set_I: tuple[int, ...]
    dual_coxeter: int
    gram_form: tuple[tuple[Fraction, ...], ...]
    positive_roots_simple: tuple[tuple[int, ...], ...] = field(repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and self.type == other.type

    def __hash__(self) -> int:
        return hash(self.type)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def dim(self) -> int:
        return len(self.gram_form)

    # -- integer views used by the representation code -------------------

    @cached_property
    def cartan_inverse(self) -> list[list[Fraction]]:
        return rl.inverse(self.cartan)

    @cached_property
    def quad_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """``<Lambda_i, Lambda_j>``."""
        w = self.fundamental_weights
        return tuple(tuple(inner(self, a, b) for b in w) for a in w)

    @cached_property
    def _qf_scaled(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        den = math.lcm(*(x.denominator for row in self.quad_form for x in row))
        return den, tuple(tuple(int(x * den) for x in row) for row in self.quad_form)

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        """``<Lambda_i, theta>``, so that ``<Lambda, theta> = sum(labels * comarks)``."""
        return tuple(int(inner(self, w, self.highest_root)) for w in self.fundamental_weights)

    @cached_property
    def positive_roots_dynkin(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.simple_to_dynkin(r) for r in self.positive_roots_simple)

    @cached_property
    def simple_roots_dynkin(self) -> tuple[tuple[int, ...], ...]:
        return self.cartan

    @cached_property
    def theta_dynkin(self) -> tuple[int, ...]:
        return self.simple_to_dynkin(self.marks)

    @cached_property
    def long_root_norm(self) -> Fraction:
        return inner(self, self.highest_root, self.highest_root)

    def simple_to_dynkin(self, coords: Sequence[int]) -> tuple[int, ...]:
        l = self.rank
        return tuple(sum(coords[j] * self.cartan[j][i] for j in range(l)) for i in range(l))

    def dynkin_to_simple(self, labels: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(rl.vecmat(list(labels), self.cartan_inverse))

    def dynkin_inner_scaled(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``den * <a, b>`` for Dynkin-label vectors; ``den`` is ``self.form_denominator``."""
        _, q = self._qf_scaled
        l = self.rank
        return sum(a[i] * q[i][j] * b[j] for i in range(l) for j in range(l) if a[i] and b[j])

    @property
    def form_denominator(self) -> int:
        return self._qf_scaled[0]

    def dynkin_inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        return Fraction(self.dynkin_inner_scaled(a, b), self.form_denominator)

    def from_dynkin(self, labels: Sequence) -> WeightVec:
        out = WeightVec.zero(self.dim)
        for c, w in zip(labels, self.fundamental_weights):
            if c:
                out = out + w * c
        return out

    def from_simple(self, coords: Sequence) -> WeightVec:
        out = WeightVec.zero(self.dim)
        for c, a in zip(coords, self.simple_roots):
            if c:
                out = out + a * c
        return out

    def to_dynkin(self, v: WeightVec) -> tuple[Fraction, ...]:
        return tuple(2 * inner(self, v, a) / inner(self, a, a) for a in self.simple_roots)

    def level(self, labels: Sequence[int]) -> int:
        return sum(c * m for c, m in zip(labels, self.comarks))

    def __repr__(self) -> str:
        return f"RootSystem({self.type})"


def inner(rs: RootSystem, x: WeightVec, y: WeightVec) -> Fraction:
    """Exact value of the normalized invariant form on ambient vectors."""
    if len(x) != rs.dim or len(y) != rs.dim:
        raise InputError(f"vector dimension does not match ambient dimension {rs.dim}")
    g = rs.gram_form
    return sum((x[i] * g[i][j] * y[j] for i in range(rs.dim) for j in range(rs.dim)
                if x[i] and y[j] and g[i][j]), Fraction(0))


@lru_cache(maxsize=None)
def _build(t: SimpleType) -> RootSystem:
    simple, scale = _realize(t)
    dim = len(simple[0])
    gram = tuple(tuple(scale if i == j else Fraction(0) for j in range(dim)) for i in range(dim))

    def ip(x, y):
        return scale * sum(a * b for a, b in zip(x, y))

    l = t.rank
    cartan = tuple(tuple(int(2 * ip(simple[i], simple[j]) / ip(simple[j], simple[j]))
                         for j in range(l)) for i in range(l))
    pos_simple = _positive_roots_simple(cartan)

    def combo(coeffs):
        return WeightVec(sum(Fraction(c) * simple[j][d] for j, c in enumerate(coeffs))
                         for d in range(dim))

    positive = tuple(combo(r) for r in pos_simple)
    marks = pos_simple[-1]
    theta = positive[-1]
    inv = rl.inverse(cartan)
    fundamental = tuple(combo(inv[i]) for i in range(l))
    rho = WeightVec.zero(dim)
    for w in fundamental:
        rho = rho + w
    h_dual = 1 + ip(rho.coords, theta.coords)
    if h_dual.denominator != 1:
        raise AssertionError(f"non-integral dual Coxeter number for {t}")
    set_I = tuple(i + 1 for i, a in enumerate(marks) if a == 1)
    return RootSystem(
        type=t,
        simple_roots=tuple(WeightVec(a) for a in simple),
        positive_roots=positive,
        highest_root=theta,
        fundamental_weights=fundamental,
        rho=rho,
        cartan=cartan,
        marks=tuple(marks),
        set_I=set_I,
        dual_coxeter=int(h_dual),
        gram_form=gram,
        positive_roots_simple=tuple(pos_simple),
    )


def build_root_system(t: SimpleType | tuple[str, int]) -> RootSystem:
    """Construct (and cache) the root system of type ``t``."""
    t = SimpleType(str(t[0]).upper(), t[1]).validate()
    return _build(t)


def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(SimpleType(family, rank))


def _is_root(rs: RootSystem, alpha: WeightVec) -> bool:
    return alpha in rs.positive_roots or -alpha in rs.positive_roots


def reflect(rs: RootSystem, alpha: WeightVec, v: WeightVec) -> WeightVec:
    """Reflection of ``v`` in the hyperplane orthogonal to the root ``alpha``."""
    if not _is_root(rs, alpha):
        raise InputError(f"{alpha!r} is not a root of {rs.type}")
    return v - alpha * (2 * inner(rs, v, alpha) / inner(rs, alpha, alpha))


def reflect_dynkin(rs: RootSystem, i: int, labels: Sequence[int]) -> tuple[int, ...]:
    """Simple reflection ``s_i`` (0-based) on Dynkin labels."""
    c = labels[i]
    if not c:
        return tuple(labels)
    row = rs.cartan[i]
    return tuple(x - c * a for x, a in zip(labels, row))


def dominant_dynkin(rs: RootSystem, labels: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Dominant Weyl image of an integral weight and the sign of the element used.

    Repeatedly reflects in the first simple root with a negative label.  The
    sign is 0 when the dominant image has a zero label, i.e. the input is
    fixed by some reflection; rho-shifted algorithms drop such terms.
    """
    v = list(labels)
    sign = 1
    cartan = rs.cartan
    n = len(v)
    while True:
        for i in range(n):
            c = v[i]
            if c < 0:
                row = cartan[i]
                for j in range(n):
                    v[j] -= c * row[j]
                sign = -sign
                break
        else:
            break
    if 0 in v:
        return tuple(v), 0
    return tuple(v), sign


def dominant_shifted(rs: RootSystem, v: WeightVec) -> tuple[WeightVec, int]:
    """Strictly dominant Weyl image of ``v`` and ``det(w)``; sign 0 if ``v`` lies on a wall."""
    if len(v) != rs.dim:
        raise InputError(f"vector dimension does not match ambient dimension {rs.dim}")
    if any(inner(rs, v, a) == 0 for a in rs.positive_roots):
        return v, 0
    sign = 1
    while True:
        for a in rs.simple_roots:
            if inner(rs, v, a) < 0:
                v = v - a * (2 * inner(rs, v, a) / inner(rs, a, a))
                sign = -sign
                break
        else:
            return v, sign


@dataclass(frozen=True)
class WeylElement:
    """Exact matrix acting on ambient column vectors, with its determinant."""

    matrix: tuple[tuple[Fraction, ...], ...]
    det: int

    def __call__(self, v: WeightVec) -> WeightVec:
        return WeightVec(sum(m * x for m, x in zip(row, v.coords)) for row in self.matrix)


def simple_reflection_matrix(rs: RootSystem, i: int) -> tuple[tuple[Fraction, ...], ...]:
    a = rs.simple_roots[i]
    ga = [sum(rs.gram_form[r][c] * a[c] for c in range(rs.dim)) for r in range(rs.dim)]
    f = 2 / inner(rs, a, a)
    return tuple(tuple(Fraction(int(r == c)) - f * a[r] * ga[c] for c in range(rs.dim))
                 for r in range(rs.dim))


@lru_cache(maxsize=None)
def _weyl_elements(rs: RootSystem) -> tuple[WeylElement, ...]:
    dim = rs.dim
    gens = [simple_reflection_matrix(rs, i) for i in range(rs.rank)]
    ident = tuple(tuple(Fraction(int(r == c)) for c in range(dim)) for r in range(dim))
    seen = {ident: 1}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = tuple(tuple(sum(g[r][t] * m[t][c] for t in range(dim) if g[r][t])
                                   for c in range(dim)) for r in range(dim))
                if prod not in seen:
                    seen[prod] = -seen[m]
                    nxt.append(prod)
        frontier = nxt
    return tuple(WeylElement(m, d) for m, d in sorted(seen.items()))


def weyl_group_elements(rs: RootSystem, bound: int = DEFAULT_WEYL_BOUND) -> tuple[WeylElement, ...]:
    """All Weyl group elements by breadth-first closure over simple reflections."""
    order = weyl_group_order(*rs.type)
    if order > bound:
        raise InputError(f"|W({rs.type})| = {order} exceeds the Weyl group bound {bound}")
    elements = _weyl_elements(rs)
    if len(elements) != order:
        raise AssertionError(f"enumerated {len(elements)} Weyl elements, expected {order}")
    return elements


def rootsystem_to_json(rs: RootSystem) -> dict:
    return {
        "type": rs.type.family,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots_simple],
        "theta": list(rs.marks),
        "marks": list(rs.marks),
        "I": list(rs.set_I),
        "dual_coxeter": rs.dual_coxeter,
    }
