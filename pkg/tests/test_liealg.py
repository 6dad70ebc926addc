from fractions import Fraction

import pytest

import oracles
from parafusion.errors import InputError
from parafusion.liealg import (SimpleType, WeightVec, dominant_dynkin, dominant_shifted, inner,
                               reflect, root_system, rootsystem_to_json, weyl_group_elements)

ALL_TYPES = oracles.ALL_TYPES

SET_I = {"A": lambda l: tuple(range(1, l + 1)), "B": lambda l: (1,), "C": lambda l: (l,),
         "D": lambda l: (1, l - 1, l), "E": lambda l: {6: (1, 5), 7: (6,), 8: ()}[l],
         "F": lambda l: (), "G": lambda l: ()}


def simple_combination(rs, coeffs):
    total = WeightVec.zero(rs.dim)
    for c, a in zip(coeffs, rs.simple_roots):
        total = total + a * c
    return total


class TestExamples:
    def test_a1(self):
        rs = root_system("A", 1)
        (alpha,) = rs.simple_roots
        assert rs.positive_roots == (alpha,)
        assert inner(rs, alpha, alpha) == 2
        assert rs.fundamental_weights[0] == alpha * Fraction(1, 2)
        assert rs.rho == rs.fundamental_weights[0]
        assert rs.dual_coxeter == 2
        assert rs.marks == (1,)
        assert rs.set_I == (1,)

    def test_b2(self):
        rs = root_system("B", 2)
        a1, a2 = rs.simple_roots
        assert set(rs.positive_roots) == {a1, a2, a1 + a2, a1 + a2 * 2}
        assert inner(rs, a2, a2) == 1
        assert rs.highest_root == a1 + a2 * 2
        assert rs.marks == (1, 2)
        assert rs.set_I == (1,)

    def test_g2(self):
        rs = root_system("G", 2)
        assert len(rs.positive_roots) == 6
        assert rs.set_I == ()
        assert rs.dual_coxeter == 4
        assert rs.marks == (2, 3)

    def test_inner_zero(self):
        rs = root_system("F", 4)
        assert inner(rs, WeightVec.zero(rs.dim), rs.highest_root) == 0

    def test_reflect_examples(self):
        rs = root_system("A", 1)
        (alpha,) = rs.simple_roots
        lam = rs.fundamental_weights[0]
        assert reflect(rs, alpha, lam) == -lam
        b2 = root_system("B", 2)
        a1, a2 = b2.simple_roots
        assert reflect(b2, a2, a1) == a1 + a2 * 2
        for rs in (b2, root_system("G", 2)):
            for a in rs.positive_roots:
                assert reflect(rs, a, a) == -a

    def test_reflect_rejects_non_root(self):
        rs = root_system("A", 2)
        with pytest.raises(InputError):
            reflect(rs, rs.rho * 2, rs.rho)

    def test_dominant_shifted(self):
        rs = root_system("A", 1)
        lam = rs.fundamental_weights[0]
        assert dominant_shifted(rs, lam) == (lam, 1)
        assert dominant_shifted(rs, WeightVec.zero(rs.dim))[1] == 0
        assert dominant_shifted(rs, -lam) == (lam, -1)

    @pytest.mark.parametrize("family,rank,order", [("A", 1, 2), ("B", 2, 8), ("G", 2, 12),
                                                   ("A", 3, 24), ("F", 4, 1152)])
    def test_weyl_group_order(self, family, rank, order):
        elements = weyl_group_elements(root_system(family, rank))
        assert len(elements) == order
        assert sum(w.det for w in elements) == 0
        assert {w.det for w in elements} == {1, -1}

    def test_weyl_group_bound(self):
        with pytest.raises(InputError, match="2000"):
            weyl_group_elements(root_system("E", 6))

    def test_weyl_group_closed(self):
        rs = root_system("B", 2)
        elements = weyl_group_elements(rs)
        mats = {w.matrix for w in elements}
        for x in elements:
            for y in elements:
                prod = tuple(tuple(sum(x.matrix[i][m] * y.matrix[m][j] for m in range(rs.dim))
                                   for j in range(rs.dim)) for i in range(rs.dim))
                assert prod in mats


@pytest.mark.parametrize("family,rank", ALL_TYPES)
class TestInvariants:
    def test_cartan_matches_diagram(self, family, rank):
        assert root_system(family, rank).cartan == oracles.cartan(family, rank)

    def test_positive_roots(self, family, rank):
        rs = root_system(family, rank)
        assert tuple(rs.positive_roots_simple) == tuple(oracles.positive_roots(family, rank))

    def test_theta_norm_and_marks(self, family, rank):
        rs = root_system(family, rank)
        assert inner(rs, rs.highest_root, rs.highest_root) == 2
        assert tuple(rs.marks) == oracles.highest_root(family, rank)
        assert simple_combination(rs, rs.marks) == rs.highest_root

    def test_sum_of_positive_roots_is_two_rho(self, family, rank):
        rs = root_system(family, rank)
        total = WeightVec.zero(rs.dim)
        for a in rs.positive_roots:
            total = total + a
        assert total == rs.rho * 2

    def test_fundamental_weights_dual_to_coroots(self, family, rank):
        rs = root_system(family, rank)
        for i, lam in enumerate(rs.fundamental_weights):
            for j, a in enumerate(rs.simple_roots):
                assert 2 * inner(rs, lam, a) / inner(rs, a, a) == (i == j)

    def test_set_I(self, family, rank):
        assert root_system(family, rank).set_I == SET_I[family](rank)

    def test_dual_coxeter(self, family, rank):
        rs = root_system(family, rank)
        assert rs.dual_coxeter == oracles.DUAL_COXETER[family](rank)
        assert rs.dual_coxeter == 1 + inner(rs, rs.rho, rs.highest_root)

    def test_simple_reflection_permutes_other_roots(self, family, rank):
        rs = root_system(family, rank)
        for a in rs.simple_roots:
            rest = set(rs.positive_roots) - {a}
            assert {reflect(rs, a, b) for b in rest} == rest

    def test_dominant_dynkin_orbit(self, family, rank):
        if rank > 6:
            pytest.skip("orbit too large")
        rs = root_system(family, rank)
        rho = (1,) * rank
        for w, sign in oracles.weyl_orbit_dynkin(family, rank, rho).items():
            assert dominant_dynkin(rs, w) == (rho, sign)


@pytest.mark.parametrize("family,rank", [("A", 0), ("B", 1), ("C", 1), ("D", 3), ("E", 5),
                                         ("E", 9), ("F", 3), ("G", 3), ("H", 2)])
def test_invalid_types_rejected(family, rank):
    with pytest.raises(InputError):
        root_system(family, rank)


def test_rank_rule_named():
    with pytest.raises(InputError, match=">= 4"):
        SimpleType("D", 3).validate()


def test_json_fields():
    data = rootsystem_to_json(root_system("B", 2))
    assert set(data) == {"type", "rank", "cartan", "positive_roots", "theta", "marks", "I", "dual_coxeter"}
    assert data["theta"] == [1, 2]
    assert data["I"] == [1]
    assert data["positive_roots"] == [[0, 1], [1, 0], [1, 1], [1, 2]]


def test_root_system_is_cached_and_hashable():
    assert root_system("C", 3) is root_system("C", 3)
    assert hash(root_system("C", 3)) == hash(root_system("C", 3))
