import random

import pytest

from charsum.characters import char, octic_M8, quadratic_char, restrict_to_base, trivial_char
from charsum.classical_sums import (
    check_hasse_davenport_product,
    check_lifted_gauss,
    check_quartic_gauss,
    eisenstein_E,
    eisenstein_E2,
    eisenstein_gauss_deviation,
    eisenstein_shift_deviation,
    gauss,
    gauss_literal,
    jacobi,
)
from charsum.finite_field import FieldError, build_tower, construct_field

TOL = 1e-10


class TestGauss:
    def test_trivial_gauss_sum(self):
        assert abs(gauss(trivial_char(construct_field(7))) + 1) < TOL
        assert abs(gauss(trivial_char(build_tower(7).top)) + 1) < TOL

    @pytest.mark.parametrize("q", [7, 11])
    def test_conjugate_product(self, q):
        field = construct_field(q)
        for k in range(1, q - 1):
            a = char(field, k)
            assert abs(gauss(a) * gauss(a.conj) - a(-1) * q) < TOL
            assert abs(abs(gauss(a)) ** 2 - q) < TOL

    def test_memoization(self):
        field = construct_field(11)
        a = char(field, 3)
        v1 = gauss(a)
        assert 3 in field._gauss_memo
        assert gauss(a) == v1
        assert abs(gauss_literal(a) - v1) < TOL


class TestJacobi:
    def test_trivial_pair(self):
        field = construct_field(7)
        eps = trivial_char(field)
        assert abs(jacobi(eps, eps) - 5) < TOL

    def test_inverse_pair_and_trivial(self):
        field = construct_field(7)
        eps = trivial_char(field)
        for k in range(1, 6):
            a = char(field, k)
            assert abs(jacobi(a, a.conj) + a(-1)) < TOL
            assert abs(jacobi(eps, a) + 1) < TOL

    @pytest.mark.parametrize("q", [7, 11])
    def test_gauss_jacobi_bridge(self, q):
        field = construct_field(q)
        for i in range(q - 1):
            for j in range(q - 1):
                a, b = char(field, i), char(field, j)
                if (a * b).is_trivial:
                    continue
                assert abs(jacobi(a, b) - gauss(a) * gauss(b) / gauss(a * b)) < TOL

    def test_reflection(self):
        field = construct_field(7)
        for i in range(6):
            for j in range(1, 6):
                a, c = char(field, i), char(field, j)
                assert abs(jacobi(a, c.conj) - a(-1) * jacobi(a, a.conj * c)) < TOL

    def test_field_mismatch(self):
        with pytest.raises(FieldError):
            jacobi(char(construct_field(7), 1), char(construct_field(11), 1))


class TestHasseDavenport:
    @pytest.mark.parametrize("q", [7, 11, 19])
    def test_product_relation_all_characters(self, q):
        field = construct_field(q)
        assert all(check_hasse_davenport_product(char(field, k)) for k in range(q - 1))

    def test_product_relation_trivial_case(self):
        # both sides reduce to G(phi) * G(eps) = -G(phi)
        field = construct_field(7)
        phi = quadratic_char(field)
        eps = trivial_char(field)
        lhs = eps(4) * gauss(eps) * gauss(phi)
        assert abs(lhs - gauss(eps) * gauss(phi)) < TOL
        assert check_hasse_davenport_product(eps)

    @pytest.mark.parametrize("p,t", [(3, 1), (7, 1), (11, 1)])
    def test_lifted_gauss_all_characters(self, p, t):
        tower = build_tower(p, t)
        assert all(check_lifted_gauss(tower, char(tower.base, k)) for k in range(tower.q - 1))

    def test_frobenius_conjugation_random_characters(self):
        tower = build_tower(7)
        rng = random.Random(7)
        for _ in range(20):
            b = char(tower.top, rng.randrange(48))
            assert abs(gauss(b) - gauss(b**7)) < TOL

    @pytest.mark.parametrize("p", [7, 11])
    def test_quartic_gauss_all_characters(self, p):
        tower = build_tower(p)
        assert all(check_quartic_gauss(tower, char(tower.base, k)) for k in range(p - 1))

    def test_quartic_gauss_phi_at_q19(self):
        tower = build_tower(19)
        assert check_quartic_gauss(tower, quadratic_char(tower.base))


class TestEisenstein:
    def test_trivial_values(self):
        tower = build_tower(7)
        triv = trivial_char(tower.top)
        assert abs(eisenstein_E2(tower, triv) - 7) < TOL
        assert abs(eisenstein_E(tower, triv) - 7) < TOL

    def test_shift_relation_all_characters(self):
        tower = build_tower(7)
        for k in range(48):
            assert eisenstein_shift_deviation(tower, char(tower.top, k)) < TOL

    def test_gauss_ratio_all_nontrivial(self):
        tower = build_tower(7)
        trivial_restriction = 0
        for k in range(1, 48):
            beta = char(tower.top, k)
            if restrict_to_base(tower, beta).is_trivial:
                trivial_restriction += 1
            assert eisenstein_gauss_deviation(tower, beta) < TOL
        assert trivial_restriction > 0  # both branches of the evaluation exercised

    def test_octic_case_both_routes(self):
        # beta = M8 at q = 7 restricts trivially: E2 = -G2(M8)/q
        tower = build_tower(7)
        m8 = octic_M8(tower)
        assert restrict_to_base(tower, m8).is_trivial
        lhs = eisenstein_E2(tower, m8)
        assert abs(lhs + gauss(m8) / 7) < TOL

    def test_requires_top_field_character(self):
        tower = build_tower(7)
        with pytest.raises(FieldError):
            eisenstein_E2(tower, char(tower.base, 1))
