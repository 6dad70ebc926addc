import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from parafusion.errors import InputError
from parafusion.lattice import (Lattice, coset_of, dual_lattice, index, long_root_lattice, quotient,
                                quotient_to_json, root_lattice, scale, weight_lattice)
from parafusion.liealg import WeightVec, root_system

CENTER_TYPES = [("A", 1), ("A", 4), ("B", 3), ("C", 4), ("D", 4), ("D", 5), ("E", 6), ("E", 7),
                ("E", 8), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("family,rank", oracles.ALL_TYPES)
def test_dual_of_long_root_lattice_is_weight_lattice(family, rank):
    rs = root_system(family, rank)
    assert oracles.long_root_pairings_unimodular(family, rank)
    assert dual_lattice(long_root_lattice(rs)) == weight_lattice(rs)


@pytest.mark.parametrize("family,rank", oracles.ALL_TYPES)
def test_indices_against_oracle(family, rank):
    rs = root_system(family, rank)
    assert index(rs, "P/Q") == oracles.CENTER_ORDER[family](rank)
    assert index(rs, "P/Q") == len(rs.set_I) + 1
    assert index(rs, "Q/Q_L") == oracles.long_root_index(family, rank)


@pytest.mark.parametrize("family,rank", [("A", 1), ("B", 2), ("C", 3), ("G", 2), ("F", 4), ("D", 4)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_scaled_index_formula(family, rank, k):
    rs = root_system(family, rank)
    assert index(rs, "Q/kQ_L", k) == k**rank * index(rs, "Q/Q_L")
    assert index(rs, "P/kQ_L", k) == index(rs, "P/Q") * index(rs, "Q/kQ_L", k)


def test_lattice_examples():
    a1 = root_system("A", 1)
    assert long_root_lattice(a1) == root_lattice(a1)
    assert weight_lattice(a1) == Lattice((a1.simple_roots[0] * Fraction(1, 2),), a1.gram_form)
    assert index(root_system("B", 2), "Q/Q_L") == 2
    assert index(root_system("G", 2), "Q/Q_L") == 3


def test_scale_examples():
    rs = root_system("B", 2)
    q = root_lattice(rs)
    assert scale(q, 1) == q
    a1 = root_system("A", 1)
    assert quotient(root_lattice(a1), scale(root_lattice(a1), 2)).order == 2
    lat = long_root_lattice(rs)
    assert scale(lat, 3).gram == tuple(tuple(9 * x for x in row) for row in lat.gram)
    with pytest.raises(InputError):
        scale(q, 0)


@pytest.mark.parametrize("family,rank", CENTER_TYPES)
def test_dual_is_involution(family, rank):
    rs = root_system(family, rank)
    for lat in (root_lattice(rs), long_root_lattice(rs), weight_lattice(rs), scale(root_lattice(rs), 2)):
        assert dual_lattice(dual_lattice(lat)) == lat


def test_degenerate_gram_rejected():
    rs = root_system("A", 2)
    a = rs.simple_roots[0]
    with pytest.raises(InputError):
        dual_lattice(Lattice((a, a * 2), rs.gram_form))


def test_quotient_requires_sublattice():
    rs = root_system("A", 2)
    with pytest.raises(InputError, match="not in the ambient"):
        quotient(root_lattice(rs), weight_lattice(rs))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_cyclic_quotient_a1(k):
    rs = root_system("A", 1)
    (alpha,) = rs.simple_roots
    q = quotient(root_lattice(rs), scale(root_lattice(rs), k))
    assert q.order == k
    assert {coset_of(q, alpha * j) for j in range(k)} == set(range(k))
    assert q.reps[0] == WeightVec.zero(rs.dim)
    if k == 2:
        assert coset_of(q, alpha) == 1


def test_quotient_orders():
    assert quotient(root_lattice(root_system("B", 2)),
                    scale(long_root_lattice(root_system("B", 2)), 2)).order == 8
    for family, rank in CENTER_TYPES:
        rs = root_system(family, rank)
        assert quotient(weight_lattice(rs), root_lattice(rs)).order == oracles.CENTER_ORDER[family](rank)


@pytest.mark.parametrize("family,rank,k", [("B", 2, 2), ("C", 3, 2), ("G", 2, 2), ("A", 3, 2), ("D", 4, 1)])
def test_coset_representatives(family, rank, k):
    rs = root_system(family, rank)
    sub = scale(long_root_lattice(rs), k)
    q = quotient(root_lattice(rs), sub)
    assert q.order == math.prod(q.snf_diag)
    assert q.reps[0] == WeightVec.zero(rs.dim)
    assert [coset_of(q, r) for r in q.reps] == list(range(q.order))
    for i, r in enumerate(q.reps):
        for b in sub.basis:
            assert coset_of(q, r + b) == i
            assert coset_of(q, r - b * 3) == i
    for i in range(len(q.reps)):
        for j in range(i):
            assert (q.reps[i] - q.reps[j]) not in sub


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2), st.lists(st.integers(-6, 6), min_size=2, max_size=2))
def test_coset_of_is_additive_mod_sub(x, y):
    rs = root_system("B", 2)
    sub = scale(long_root_lattice(rs), 3)
    q = quotient(root_lattice(rs), sub)
    vx, vy = rs.from_simple(x), rs.from_simple(y)
    same = (vx - vy) in sub
    assert (coset_of(q, vx) == coset_of(q, vy)) == same


def test_coset_of_rejects_outside():
    rs = root_system("A", 1)
    q = quotient(root_lattice(rs), scale(root_lattice(rs), 2))
    with pytest.raises(InputError):
        coset_of(q, rs.fundamental_weights[0])


def test_quotient_json_is_deterministic():
    rs = root_system("B", 2)
    sub = scale(long_root_lattice(rs), 2)
    a = quotient_to_json(quotient(root_lattice(rs), sub), rs)
    b = quotient_to_json(quotient(root_lattice(rs), sub), rs)
    assert a == b
    assert a["order"] == 8
    assert a["reps"][0] == [0, 0]
    assert len(a["reps"]) == 8
    p = quotient_to_json(quotient(weight_lattice(rs), root_lattice(rs)), rs)
    assert p["order"] == 2
    assert any(isinstance(x, str) for x in p["reps"][1])


def test_unknown_index_name():
    with pytest.raises(InputError):
        index(root_system("A", 1), "P/P")
