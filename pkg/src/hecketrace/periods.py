"""Homogeneous polynomials of degree w, the period subspace W_w, and traces.

Basis of V_w: X^w, X^(w-1) Y, ..., Y^w.  Matrices act on the right by
P|M (X, Y) = P(aX + bY, cX + dY); with row vectors this reads p -> p R(M)
and R(MN) = R(M) R(N).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

import sympy

from .algebra import ONE, S, U, U2, ProjMatrix, RingElement
from .classnumbers import hurwitz_H, sigma
from .elements import build_wTn
from .report import CheckReport
from .verify import verify_B

__all__ = [
    "HomogeneousPolynomial",
    "act_poly",
    "operator_matrix",
    "trace_on_Vw",
    "ww_basis",
    "trace_on_Ww",
    "gegenbauer_p",
    "trace_formula_rhs",
    "eisenstein_eigen_check",
    "eisenstein_period",
]


class HomogeneousPolynomial:
    __slots__ = ("w", "coeffs")

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(x) for x in coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        self.coeffs = coeffs
        self.w = len(coeffs) - 1

    @classmethod
    def monomial(cls, w: int, i: int, coeff=1) -> "HomogeneousPolynomial":
        """coeff * X^(w-i) Y^i."""
        c = [0] * (w + 1)
        c[i] = coeff
        return cls(c)

    def __add__(self, other):
        self._same(other)
        return HomogeneousPolynomial(x + y for x, y in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return HomogeneousPolynomial(x - y for x, y in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return HomogeneousPolynomial(-x for x in self.coeffs)

    def scale(self, k):
        return HomogeneousPolynomial(k * x for x in self.coeffs)

    def _same(self, other):
        if self.w != other.w:
            raise ValueError("degree mismatch")

    def __eq__(self, other):
        return isinstance(other, HomogeneousPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x, y):
        w = self.w
        return sum(c * x ** (w - i) * y ** i for i, c in enumerate(self.coeffs))

    def __or__(self, g):
        return act_poly(self, g)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*X^{self.w - i}*Y^{i}")
        return " + ".join(terms) or "0"


def _linear_powers(p: int, q: int, w: int) -> list[list[int]]:
    """Coefficient lists of (pX + qY)^j for j = 0..w, indexed by Y-degree."""
    out = [[1]]
    for j in range(1, w + 1):
        prev = out[-1]
        cur = [0] * (j + 1)
        for r, v in enumerate(prev):
            cur[r] += p * v
            cur[r + 1] += q * v
        out.append(cur)
    return out


@lru_cache(maxsize=4096)
def _rho(m: ProjMatrix, w: int) -> tuple[tuple[int, ...], ...]:
    a, b, c, d = m
    A = _linear_powers(a, b, w)
    C = _linear_powers(c, d, w)
    rows = []
    for i in range(w + 1):
        x, y = A[w - i], C[i]
        row = [0] * (w + 1)
        for r, u in enumerate(x):
            if u:
                for s, v in enumerate(y):
                    row[r + s] += u * v
        rows.append(tuple(row))
    return tuple(rows)


def _as_element(g) -> RingElement:
    if isinstance(g, RingElement):
        return g
    if isinstance(g, ProjMatrix):
        return RingElement.from_matrix(g)
    return RingElement.from_matrix(ProjMatrix(*g))


def act_poly(P: HomogeneousPolynomial, g) -> HomogeneousPolynomial:
    """P | g for a matrix or a ring element (extended linearly)."""
    w = P.w
    out = [Fraction(0)] * (w + 1)
    for m, x in _as_element(g).items():
        R = _rho(m, w)
        for i, p in enumerate(P.coeffs):
            if p:
                k = x * p
                for j, v in enumerate(R[i]):
                    if v:
                        out[j] += k * v
    return HomogeneousPolynomial(out)


def _check_weight(w):
    if not isinstance(w, int) or w < 2 or w % 2:
        raise ValueError(f"weight w must be an even integer >= 2, got {w!r}")


def operator_matrix(xi, w: int) -> list[list[Fraction]]:
    """Exact (w+1) x (w+1) matrix of P -> P|xi acting on row vectors."""
    _check_weight(w)
    M = [[Fraction(0)] * (w + 1) for _ in range(w + 1)]
    for m, x in _as_element(xi).items():
        R = _rho(m, w)
        for i in range(w + 1):
            row, Mi = R[i], M[i]
            for j in range(w + 1):
                if row[j]:
                    Mi[j] += x * row[j]
    return M


def _diag_trace(m: ProjMatrix, w: int) -> int:
    a, b, c, d = m
    tot = 0
    for i in range(w + 1):
        for r in range(min(i, w - i) + 1):
            tot += comb(w - i, r) * a ** (w - i - r) * b ** r * comb(i, r) * c ** r * d ** (i - r)
    return tot


def trace_on_Vw(xi, w: int) -> Fraction:
    _check_weight(w)
    return sum((x * _diag_trace(m, w) for m, x in _as_element(xi).items()), Fraction(0))


def _to_sympy(M) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])


@lru_cache(maxsize=None)
def _ww_rref(w: int):
    _check_weight(w)
    a = _to_sympy(operator_matrix(ONE + S, w))
    b = _to_sympy(operator_matrix(ONE + U + U2, w))
    # row vectors p with p A = 0 and p B = 0
    stacked = a.T.col_join(b.T)
    null = stacked.nullspace()
    if not null:
        return (), ()
    basis = sympy.Matrix.hstack(*null).T.rref()[0]
    rows, pivots = [], []
    for k in range(basis.rows):
        row = [Fraction(int(v.p), int(v.q)) for v in basis.row(k)]
        rows.append(HomogeneousPolynomial(row))
        pivots.append(next(j for j, v in enumerate(row) if v))
    return tuple(rows), tuple(pivots)


def ww_basis(w: int) -> list[HomogeneousPolynomial]:
    """Echelon basis of ker(1+S) and ker(1+U+U^2) inside V_w."""
    return list(_ww_rref(w)[0])


def trace_on_Ww(xi: RingElement, w: int) -> Fraction:
    """Trace of P -> P|xi restricted to W_w; xi must satisfy property (B)."""
    _check_weight(w)
    rep = verify_B(xi)
    if not rep.passed:
        raise ValueError(f"element fails property (B); W_w is not stable: {rep.witness}")
    basis, pivots = _ww_rref(w)
    tr = Fraction(0)
    for P, p in zip(basis, pivots):
        img = act_poly(P, xi)
        coords = [img.coeffs[q] for q in pivots]
        recon = [sum((c * B.coeffs[j] for c, B in zip(coords, basis)), Fraction(0))
                 for j in range(w + 1)]
        assert tuple(recon) == img.coeffs, "image left W_w"
        tr += img.coeffs[p]
    return tr


def gegenbauer_p(w: int, t: int, n: int) -> int:
    """Coefficient of X^w in 1 / (1 - tX + nX^2)."""
    if w < 0:
        raise ValueError("w must be >= 0")
    prev, cur = 1, t
    if w == 0:
        return 1
    for _ in range(w - 1):
        prev, cur = cur, t * cur - n * prev
    return cur


def trace_formula_rhs(w: int, n: int) -> Fraction:
    """-sum over t of p_w(t, n) H(4n - t^2); zero terms beyond |t| = n + 1."""
    _check_weight(w)
    if n < 1:
        raise ValueError("n must be positive")
    return -sum((gegenbauer_p(w, t, n) * hurwitz_H(4 * n - t * t) for t in range(-(n + 1), n + 2)),
                Fraction(0))


def eisenstein_period(w: int) -> HomogeneousPolynomial:
    """X^w - Y^w."""
    c = [0] * (w + 1)
    c[0], c[w] = 1, -1
    return HomogeneousPolynomial(c)


def eisenstein_eigen_check(n: int, w: int) -> CheckReport:
    _check_weight(w)
    P = eisenstein_period(w)
    img = act_poly(P, build_wTn(n))
    lam = sigma(w + 1, n)
    ok = img == P.scale(lam)
    return CheckReport("eisenstein", n, ok, None if ok else {"w": w, "image": list(img.coeffs)},
                       details={"w": w, "eigenvalue": lam})
