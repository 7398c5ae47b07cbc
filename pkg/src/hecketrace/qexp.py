"""Level-one modular forms as exact truncated q-expansions."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .classnumbers import divisors, sigma

__all__ = [
    "PrecisionError",
    "QExpansion",
    "eisenstein_E",
    "delta",
    "dim_Mk",
    "dim_Sk",
    "basis_Mk",
    "basis_Sk",
    "hecke_on_qexp",
    "hecke_matrix",
    "trace_oracle",
]


class PrecisionError(ValueError):
    pass


class QExpansion:
    """a_0 + a_1 q + ... + a_N q^N + O(q^(N+1)) of weight k."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs):
        self.k = k
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("empty expansion")

    @property
    def prec(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int):
        if m < 0:
            raise IndexError(m)
        if m > self.prec:
            raise PrecisionError(f"coefficient q^{m} requested, expansion known to q^{self.prec}")
        return self.coeffs[m]

    def truncate(self, N: int) -> "QExpansion":
        if N > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {N}")
        return QExpansion(self.k, self.coeffs[: N + 1])

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("weight mismatch")
        N = min(self.prec, other.prec)
        return QExpansion(self.k, (x + y for x, y in zip(self.coeffs[: N + 1], other.coeffs)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QExpansion(self.k, (c * x for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        N = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * (N + 1)
        for i in range(N + 1):
            if a[i]:
                for j in range(N + 1 - i):
                    out[i + j] += a[i] * b[j]
        return QExpansion(self.k + other.k, out)

    def __pow__(self, e: int):
        out = QExpansion(0, [1] + [0] * self.prec)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, QExpansion) and self.k == other.k and self.coeffs == other.coeffs

    def __repr__(self):
        return f"QExpansion(k={self.k}, {list(self.coeffs)[:8]}{'...' if self.prec > 7 else ''})"


def eisenstein_E(k: int, N: int) -> QExpansion:
    """Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m, for k = 4, 6."""
    factor = {4: 240, 6: -504}.get(k)
    if factor is None:
        raise ValueError("only E4 and E6 are provided")
    return QExpansion(k, [1] + [factor * sigma(k - 1, m) for m in range(1, N + 1)])


def delta(N: int) -> QExpansion:
    """q prod (1 - q^m)^24."""
    c = [0] * (N + 1)
    if N >= 1:
        c[1] = 1
    for m in range(1, N + 1):
        for _ in range(24):
            for i in range(N, m - 1, -1):
                c[i] -= c[i - m]
    return QExpansion(12, c)


def dim_Mk(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k == 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def dim_Sk(k: int) -> int:
    if k < 12 or k % 2:
        return 0
    return dim_Mk(k) - 1


def _check_k(k):
    if not isinstance(k, int) or k % 2 or k < 0 or k == 2:
        raise ValueError(f"k must be an even integer >= 4 (or 0), got {k!r}")


@lru_cache(maxsize=None)
def basis_Mk(k: int, N: int) -> tuple[QExpansion, ...]:
    """Reduced echelon basis of M_k to precision N; element i starts at q^i."""
    _check_k(k)
    dim = dim_Mk(k)
    if N < dim:
        raise PrecisionError(f"precision {N} too small for dim M_{k} = {dim}")
    if k == 0:
        return (QExpansion(0, [1] + [0] * N),)
    E4, E6 = eisenstein_E(4, N), eisenstein_E(6, N)
    rows = []
    for b in range(k // 6 + 1):
        rest = k - 6 * b
        if rest % 4 == 0:
            f = (E4 ** (rest // 4)) * (E6 ** b)
            rows.append([Fraction(x) for x in f.coeffs])
    # reduced row echelon form
    piv_rows, r = [], 0
    for col in range(N + 1):
        p = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append(col)
        r += 1
        if r == len(rows):
            break
    assert r == dim, f"rank {r} != dim M_{k} = {dim}"
    assert piv_rows == list(range(dim)), "echelon pivots are not 0..dim-1"
    return tuple(QExpansion(k, [x.numerator if x.denominator == 1 else x for x in row])
                 for row in rows[:dim])


def basis_Sk(k: int, N: int) -> tuple[QExpansion, ...]:
    return tuple(f for f in basis_Mk(k, N) if f[0] == 0)


def hecke_on_qexp(f: QExpansion, n: int) -> QExpansion:
    """a_m(f|T_n) = sum over d | gcd(m, n) of d^(k-1) a_(mn/d^2)(f), known to q^(N // n)."""
    if n < 1:
        raise ValueError("n must be positive")
    k = f.k
    M = f.prec // n
    out = []
    for m in range(M + 1):
        g = n if m == 0 else _gcd(m, n)
        out.append(sum(d ** (k - 1) * f[m * n // (d * d)] for d in divisors(g)))
    return QExpansion(k, out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def hecke_matrix(k: int, n: int, cusp: bool = False) -> list[list[Fraction]]:
    """Matrix of T_n on the echelon basis (rows are images)."""
    _check_k(k)
    dim = dim_Mk(k)
    N = n * (dim + 1) + 1
    basis = basis_Sk(k, N) if cusp else basis_Mk(k, N)
    pivots = [next(i for i, x in enumerate(f.coeffs) if x) for f in basis]
    mat = []
    for f in basis:
        g = hecke_on_qexp(f, n)
        if g.prec < max(pivots, default=0):
            raise PrecisionError("insufficient precision for the Hecke matrix")
        row = [g[p] for p in pivots]
        # the image must be the stated combination on every known coefficient
        for m in range(g.prec + 1):
            assert g[m] == sum((c * b[m] for c, b in zip(row, basis)), 0), "image not in span"
        mat.append(row)
    return mat


def trace_oracle(k: int, n: int) -> tuple[Fraction, Fraction]:
    """(tr(T_n, S_k), tr(T_n, M_k)), each computed from its own Hecke matrix."""
    _check_k(k)
    if k == 0:
        raise ValueError("k must be >= 4")
    trS = sum((r[i] for i, r in enumerate(hecke_matrix(k, n, cusp=True))), Fraction(0))
    trM = sum((r[i] for i, r in enumerate(hecke_matrix(k, n))), Fraction(0))
    if trM - trS != sigma(k - 1, n):
        raise AssertionError(f"tr M_k - tr S_k = {trM - trS} != sigma_(k-1)(n)")
    return trS, trM
