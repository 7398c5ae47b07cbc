from fractions import Fraction

import pytest

from hecketrace.algebra import I, ONE, PI_S, PI_U, S, U, U2, ProjMatrix, RingElement
from hecketrace.classnumbers import sigma
from hecketrace.elements import build_wTn
from hecketrace.forms import conjugacy_key
from hecketrace.periods import (
    HomogeneousPolynomial as HP, act_poly, eisenstein_eigen_check, eisenstein_period,
    gegenbauer_p, operator_matrix, trace_formula_rhs, trace_on_Vw, trace_on_Ww, ww_basis,
)
from hecketrace.qexp import dim_Mk, dim_Sk


def test_act_poly_examples():
    w = 6
    Yw = HP.monomial(w, w)
    assert act_poly(Yw, ProjMatrix(2, 5, 0, 3)) == Yw.scale(3 ** w)
    P = HP([1, 2, 3, 4, 5, 6, 7])
    assert act_poly(P, I) == P
    assert act_poly(HP.monomial(2, 0), S) == HP.monomial(2, 2)


def test_action_is_right_action(rng):
    P = HP([rng.randint(-5, 5) for _ in range(9)])
    for _ in range(20):
        g = ProjMatrix(rng.randint(1, 4), rng.randint(-3, 3), 0, rng.randint(1, 4)) * S
        h = U * ProjMatrix(1, rng.randint(-3, 3), 0, rng.randint(1, 3))
        assert act_poly(act_poly(P, g), h) == act_poly(P, g * h)


def test_operator_matrix_product():
    a, b = ProjMatrix(2, 1, 1, 1), ProjMatrix(1, -2, 3, 1)
    A, B, AB = operator_matrix(a, 4), operator_matrix(b, 4), operator_matrix(a * b, 4)
    prod = [[sum(A[i][k] * B[k][j] for k in range(5)) for j in range(5)] for i in range(5)]
    assert prod == AB


def test_trace_of_single_matrix(rng):
    for _ in range(500):
        while True:
            a, b, c, d = (rng.randint(-8, 8) for _ in range(4))
            if 0 < a * d - b * c <= 50:
                break
        m = ProjMatrix(a, b, c, d)
        w = rng.choice(range(2, 22, 2))
        assert trace_on_Vw(RingElement.from_matrix(m), w) == gegenbauer_p(w, m.trace, m.det)


def test_trace_examples():
    assert trace_on_Vw(ONE, 8) == 9
    assert trace_on_Vw(build_wTn(1), 10) == 3


def test_weight_rejected():
    for w in (0, 3, -2):
        with pytest.raises(ValueError):
            trace_on_Vw(ONE, w)
        with pytest.raises(ValueError):
            trace_formula_rhs(w, 2)
    with pytest.raises(ValueError):
        trace_on_Ww(ONE, 10)  # fails (B)


def test_gegenbauer():
    assert gegenbauer_p(0, 5, 3) == 1
    assert gegenbauer_p(1, 5, 3) == 5
    for t in range(-5, 6):
        for n in range(1, 5):
            assert gegenbauer_p(2, t, n) == t * t - n
            assert gegenbauer_p(8, t, n) == gegenbauer_p(8, -t, n)
    assert gegenbauer_p(10, 2, 1) == 11
    assert gegenbauer_p(10, 0, 1) == -1 and gegenbauer_p(10, 1, 1) == -1


def test_trace_formula_values():
    assert trace_formula_rhs(10, 1) == 3
    assert trace_formula_rhs(10, 2) == 2001
    assert trace_formula_rhs(10, 3) == 177652


def test_ww_dims():
    assert len(ww_basis(2)) == 1
    assert len(ww_basis(10)) == 3
    assert len(ww_basis(22)) == 5
    for w in range(2, 30, 2):
        assert len(ww_basis(w)) == dim_Mk(w + 2) + dim_Sk(w + 2)
        for P in ww_basis(w):
            assert act_poly(P, ONE + S) == HP([0] * (w + 1))
            assert act_poly(P, ONE + U + U2) == HP([0] * (w + 1))


def test_class_closure():
    for n in (1, 2, 5, 6):
        for w in (2, 6, 12):
            by_class = {}
            for m, x in build_wTn(n).items():
                k = conjugacy_key(m)
                by_class[k] = by_class.get(k, 0) + x
            total = sum((v * gegenbauer_p(w, k.trace, n) for k, v in by_class.items()), Fraction(0))
            assert total == trace_on_Vw(build_wTn(n), w)


def test_Vw_equals_Ww_small():
    for n in (1, 2, 3, 4):
        for w in (2, 10, 12):
            assert trace_on_Ww(build_wTn(n), w) == trace_on_Vw(build_wTn(n), w)


def test_eisenstein():
    assert eisenstein_period(4) == HP([1, 0, 0, 0, -1])
    assert eisenstein_eigen_check(1, 10).details["eigenvalue"] == 1
    rep = eisenstein_eigen_check(2, 10)
    assert rep.passed and rep.details["eigenvalue"] == 2049
    assert sigma(11, 6) == sigma(11, 2) * sigma(11, 3)
    assert eisenstein_eigen_check(6, 10).passed
