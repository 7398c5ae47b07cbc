from fractions import Fraction

import pytest

from hecketrace.algebra import I, ONE, PI_S, PI_U, S, U, U2, ProjMatrix, RingElement, pairing
from hecketrace.classnumbers import sigma
from hecketrace.descriptors import DESCRIPTORS
from hecketrace.elements import (
    T_infinity, alpha_element, alpha_weight, build_F, build_G, build_wTn, build_wTn_alt, chi,
    chi_minus, chi_plus, corner_term, elliptic_in_F, fixed_point_data, intro_wT1, intro_wT2,
)


def test_small_totals():
    assert pairing(build_wTn(1)) == -1
    assert pairing(build_wTn(2)) == -3
    assert build_wTn(4).coeff(ProjMatrix(2, 0, 0, 2)) == Fraction(1, 6)


def test_first_element_is_intro():
    assert build_wTn(1) == intro_wT1() == ONE - PI_S - PI_U
    assert intro_wT1().coeff(I) == Fraction(1, 6)


def test_second_intro_differs():
    assert intro_wT2() != build_wTn(2)
    assert pairing(intro_wT2()) == -3


def test_two_constructions_small():
    for n in range(1, 8):
        assert build_wTn(n) == build_wTn_alt(n)


def test_bad_n():
    with pytest.raises(ValueError):
        build_wTn(0)
    with pytest.raises(ValueError):
        T_infinity(-1)


def test_T_infinity():
    assert T_infinity(1) == ONE
    assert T_infinity(2) == RingElement.sum_of(
        [ProjMatrix(1, 0, 0, 2), ProjMatrix(1, 1, 0, 2), ProjMatrix(2, 0, 0, 1)])
    for n in range(1, 20):
        assert len(T_infinity(n)) == sigma(1, n)


def test_F_G_corner_small():
    F1 = build_F(1)
    assert S not in F1
    assert U in corner_term(1)
    for n in range(1, 8):
        G = build_G(n)
        for m, x in G.items():
            a, b, c, d = m
            if a - d == c == -b:
                assert x == Fraction(1, 4)
        assert all(x == 1 for _, x in corner_term(n).items())


def test_fixed_points_and_chi():
    z = fixed_point_data(S)
    assert z.at_i and not z.at_rho
    rho = ProjMatrix(1, -1, 1, 0)  # a-d = c = -b
    assert fixed_point_data(rho).at_rho and chi(rho) == Fraction(1, 3)
    assert chi(S) == Fraction(1, 2)
    assert chi_plus(S) == chi_minus(S) == Fraction(1, 4)
    assert alpha_weight(S) == Fraction(1, 2)
    assert alpha_weight(U) + alpha_weight(U2) == Fraction(1, 2)
    assert alpha_weight(ProjMatrix(1, 0, 0, 2)) == 0
    with pytest.raises(ValueError):
        fixed_point_data(ProjMatrix(1, 0, 0, 2))


def test_alpha_is_T3_plus_T4():
    from hecketrace.descriptors import enumerate_term
    for n in range(1, 15):
        assert alpha_element(n) == enumerate_term("T3", n) + enumerate_term("T4", n)


def test_elliptic_in_F_closed():
    for n in range(1, 10):
        for m in elliptic_in_F(n):
            assert m.det == n and chi(m) > 0
