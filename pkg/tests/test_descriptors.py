from fractions import Fraction

import pytest

from hecketrace.algebra import I, S, U, U2, ProjMatrix, RingElement
from hecketrace.descriptors import (
    DESCRIPTORS, Descriptor, LinearForm, enumerate_naive, enumerate_term, weight_c,
)
from hecketrace.elements import E_from_chi, chi


def test_linear_form_parse():
    f = LinearForm.parse("a-d")
    assert f((5, 0, 0, 2)) == 3
    assert LinearForm.parse("-b-c")((0, 2, 3, 0)) == -5
    assert LinearForm.parse("2a+1")((3, 0, 0, 0)) == 7
    assert str(LinearForm.parse("-b")) == "-b"


def test_weight_examples():
    H = DESCRIPTORS["H"]
    assert weight_c((3, 0, 0, 3), H) == Fraction(1, 6)
    assert weight_c((1, 0, 0, 2), H) == Fraction(1, 2)
    E = DESCRIPTORS["E"]
    m = (1, -3, 4, 0)  # 0 < 1 < 3, 1 < 4
    assert E.contains(m) and weight_c(m, E) == 1


def test_weight_patterns():
    d = Descriptor("t", "0 <= a-d <= c; -b <= c", "")
    assert weight_c((1, -1, 1, 0), d) == Fraction(1, 3)   # a-d = c and -b = c share the rhs
    d2 = Descriptor("t", "0 <= a-d; -b <= c", "")
    assert weight_c((1, -1, 1, 1), d2) == Fraction(1, 4)  # independent
    G = DESCRIPTORS["G"]
    assert weight_c((0, -1, 1, -1), G) == Fraction(1, 4)
    assert DESCRIPTORS["corner"].mode == "plain"


def test_weighted_lines_reject_strict():
    with pytest.raises(ValueError):
        Descriptor("bad", "a < d", "")
    with pytest.raises(ValueError):
        Descriptor("bad", "a <= d", "", mode="fancy")


def test_enumerate_examples():
    assert enumerate_term("H", 1) == RingElement({I: Fraction(1, 6)})
    assert enumerate_term("E", 1) == E_from_chi(1)
    with pytest.raises(ValueError):
        enumerate_term("E", 0)
    with pytest.raises(KeyError):
        enumerate_term("nope", 1)


def test_T4_on_the_principal_coset():
    # inside [1,0;0,m]Gamma only [a,-1;m,0] with a in {0,1} survive, each weighted 1/2
    from hecketrace.forms import right_coset_key
    for m in (2, 3, 5, 6):
        key = ProjMatrix(1, 0, 0, m)
        part = enumerate_term("T4", m).restrict(lambda x: right_coset_key(x) == key)
        assert part == RingElement({ProjMatrix(0, -1, m, 0): Fraction(1, 2),
                                    ProjMatrix(1, -1, m, 0): Fraction(1, 2)})
        assert not enumerate_term("T3", m).restrict(lambda x: right_coset_key(x) == key)


def test_E_weights_match_chi():
    for n in range(1, 13):
        E = enumerate_term("E", n)
        assert E == E_from_chi(n)
        for m, x in E.items():
            assert x == chi(m)


def test_support_finite_and_det():
    for name in DESCRIPTORS:
        for n in (1, 2, 6):
            x = enumerate_term(name, n)
            assert not x or x.dets() == {n}


@pytest.mark.parametrize("name", sorted(DESCRIPTORS))
def test_against_naive_small(name):
    for n in (1, 2, 3):
        assert enumerate_term(name, n) == enumerate_naive(name, n, 4 * n)
