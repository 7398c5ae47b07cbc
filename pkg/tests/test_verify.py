from fractions import Fraction

import pytest

from hecketrace.algebra import I, ONE, PI_S, PI_U, S, T, U, U2, ProjMatrix, RingElement
from hecketrace.elements import T_infinity, build_wTn, intro_wT1, intro_wT2
from hecketrace.forms import SPLIT, conjugacy_key
from hecketrace.verify import (
    J_perturbation, NotInA, in_A, in_ideal_1mT, in_ideal_I, project_to_B, verify_A,
    verify_A_merel, verify_B, verify_class_sums, verify_coset_sums, verify_eq14, verify_eq18,
    verify_prop5,
)

M = ProjMatrix(2, 1, 1, 3)
mat = RingElement.from_matrix


def test_ideal_1mT():
    assert in_ideal_1mT((ONE - T) * mat(M))
    assert not in_ideal_1mT(mat(M))
    assert not in_ideal_1mT(T_infinity(2) * (ONE - S))


def test_ideal_I():
    assert in_ideal_I(PI_S * mat(M))
    assert in_ideal_I(PI_U * mat(M))
    assert not in_ideal_I(mat(M))


def test_verify_A_examples():
    assert verify_A(intro_wT1(), 1).passed
    assert verify_A(intro_wT2(), 2).passed
    bad = verify_A(mat(ProjMatrix(1, 0, 0, 2)) + mat(ProjMatrix(1, 1, 0, 2)), 2)
    assert not bad.passed and bad.witness["orbit"]
    with pytest.raises(ValueError):
        verify_A(intro_wT1() + intro_wT2(), 2)


def test_merel_examples():
    assert verify_A_merel(intro_wT1()).passed
    assert verify_A_merel(build_wTn(2)).passed
    assert not verify_A_merel(RingElement()).passed


def test_verify_B_examples():
    assert verify_B(ONE - PI_S - PI_U).passed
    assert not verify_B(ONE).passed
    for n in range(1, 6):
        assert verify_B(build_wTn(n)).passed


def test_coset_examples():
    rep = verify_coset_sums(intro_wT2(), 2)
    assert rep.passed and rep.details["cosets"] == 3
    assert not verify_coset_sums(PI_S - PI_U, 1).passed


def test_class_examples():
    x = build_wTn(1)
    sums = {}
    for m, c in x.items():
        k = conjugacy_key(m)
        sums[k] = sums.get(k, 0) + c
    assert sums[conjugacy_key(I)] == Fraction(1, 6)
    assert sums[conjugacy_key(S)] == Fraction(-1, 2)
    assert sums[conjugacy_key(U)] == Fraction(-1, 3)
    assert sums[conjugacy_key(U2)] == Fraction(-1, 3)
    x2 = build_wTn(2)
    split3 = {}
    for m, c in x2.items():
        k = conjugacy_key(m)
        if k.kind == SPLIT and abs(k.trace) == 3:
            split3[k] = split3.get(k, 0) + c
    assert list(split3.values()) == [1]
    x4 = build_wTn(4)
    assert sum(c for m, c in x4.items() if conjugacy_key(m).kind == "scalar") == Fraction(1, 6)
    for n in (1, 2, 4, 7):
        assert verify_class_sums(build_wTn(n), n).passed


def test_class_sums_detect_damage():
    x = build_wTn(3) + mat(ProjMatrix(1, 0, 0, 3))
    rep = verify_class_sums(x, 3)
    assert not rep.passed and "class" in rep.witness


def test_projection():
    xs, xu, p = project_to_B(ONE)
    assert p == ONE - PI_S - PI_U
    for n in (1, 2, 3, 6):
        assert project_to_B(build_wTn(n))[2] == build_wTn(n)
    with pytest.raises(NotInA):
        project_to_B(mat(ProjMatrix(1, 0, 0, 2)))


def test_projection_of_A_member_outside_B():
    eta = mat(ProjMatrix(1, 2, 0, 3))
    xi = build_wTn(3) + PI_S * eta + PI_U * mat(ProjMatrix(3, 1, 0, 1))
    assert in_A(xi) and not verify_B(xi).passed
    xs, xu, p = project_to_B(xi)
    assert verify_B(p).passed
    assert in_ideal_I(p - xi)
    assert p == project_to_B(p)[2]


def test_eq14_prop5_eq18_small():
    for n in range(1, 6):
        assert verify_eq14(n).passed
        assert verify_prop5(n).passed
        assert verify_eq18(n).passed
    assert verify_eq18(1).details["alpha_total"] == 1
    assert verify_eq18(2).details["alpha_total"] == 3


def test_alpha_is_minus_beta():
    for n in range(1, 13):
        a = verify_A(build_wTn(n), n).alpha
        b = verify_coset_sums(build_wTn(n), n).beta
        assert set(a) == set(b)
        assert all(a[k] == -b[k] for k in a)


def test_J_perturbation_invariance():
    base = build_wTn(4)
    eta, eta2 = mat(ProjMatrix(2, 1, 0, 2)), mat(ProjMatrix(1, 3, 1, 7))
    x = base + J_perturbation(eta, eta2)
    assert x != base
    for f in (lambda y: verify_A(y, 4), verify_B, lambda y: verify_coset_sums(y, 4),
              lambda y: verify_class_sums(y, 4)):
        assert f(x).passed


def test_report_json_shape():
    obj = verify_coset_sums(build_wTn(4), 4).to_json_obj()
    assert obj["check"] == "coset" and obj["n"] == 4 and obj["pass"] is True
    assert "witness" in obj and "beta" in obj
