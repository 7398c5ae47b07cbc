import pytest

from hecketrace.classnumbers import sigma
from hecketrace.qexp import (
    PrecisionError, QExpansion, basis_Mk, basis_Sk, delta, dim_Mk, dim_Sk, eisenstein_E,
    hecke_matrix, hecke_on_qexp, trace_oracle,
)


def test_dimensions():
    assert dim_Mk(12) == 2 and dim_Sk(12) == 1
    for k in (4, 6, 8, 10, 14):
        assert dim_Sk(k) == 0 and len(basis_Sk(k, 10)) == 0
    for k in range(4, 40, 2):
        assert len(basis_Mk(k, 10)) == dim_Mk(k)


def test_delta():
    D = basis_Sk(12, 6)[0]
    assert D == delta(6)
    assert D.coeffs[:4] == (0, 1, -24, 252)


def test_hecke_on_delta():
    D = delta(30)
    assert hecke_on_qexp(D, 2).coeffs == tuple(-24 * x for x in D.coeffs[:16])
    t2 = hecke_on_qexp(hecke_on_qexp(D, 3), 2)
    t6 = hecke_on_qexp(D, 6)
    assert t2.coeffs[:4] == t6.coeffs[:4]


def test_eisenstein_eigenvalue():
    for k in (4, 6):
        E = eisenstein_E(k, 60)
        for n in (2, 3, 5):
            assert hecke_on_qexp(E, n) == E.truncate(60 // n).scale(sigma(k - 1, n))


def test_hecke_commute():
    for k in (24, 26):
        A = hecke_matrix(k, 2, cusp=True)
        B = hecke_matrix(k, 3, cusp=True)
        d = len(A)
        AB = [[sum(A[i][l] * B[l][j] for l in range(d)) for j in range(d)] for i in range(d)]
        BA = [[sum(B[i][l] * A[l][j] for l in range(d)) for j in range(d)] for i in range(d)]
        assert AB == BA


def test_trace_oracle_values():
    assert trace_oracle(12, 2) == (-24, 2025)
    assert trace_oracle(12, 3)[0] == 252
    assert trace_oracle(16, 2)[0] == 216
    for k in (4, 12, 24):
        assert trace_oracle(k, 1) == (dim_Sk(k), dim_Mk(k))


def test_precision_is_enforced():
    f = QExpansion(4, [1, 240, 2160])
    with pytest.raises(PrecisionError):
        f[3]
    with pytest.raises(PrecisionError):
        basis_Mk(24, 1)
    with pytest.raises(ValueError):
        trace_oracle(11, 2)
