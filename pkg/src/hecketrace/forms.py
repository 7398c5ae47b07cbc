"""Binary quadratic forms, proper equivalence, and orbit keys on matrices.

A matrix M = [a, b; c, d] corresponds to the form
Q_M(x, y) = c x^2 + (d - a) x y - b y^2 = det[(x, y), M (x, y)],
so that Q_{g^-1 M g} = Q_M o g.  Conjugacy of matrices of the same trace is
therefore proper equivalence of forms, which is what the canonical forms
below decide.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

from .algebra import I, S, ProjMatrix, mat_inverse, mat_mul

__all__ = [
    "BinaryQuadraticForm",
    "ConjClassKey",
    "form_of_matrix",
    "matrix_of_form",
    "canonical_form",
    "conjugacy_key",
    "class_type",
    "class_weight",
    "are_conjugate",
    "right_coset_key",
    "gamma_inf_orbit_key",
    "double_coset_key",
    "right_coset_reps",
    "Cusp",
    "INFINITY",
    "ZERO",
    "act_on_cusp",
    "act_on_divisor",
]

SCALAR = "scalar"
ELLIPTIC = "elliptic"
SPLIT = "splitHyperbolic"
NONSPLIT = "nonsplitHyperbolic"
PARABOLIC = "parabolic"


class BinaryQuadraticForm(NamedTuple):
    A: int
    B: int
    C: int

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def content(self) -> int:
        return gcd(gcd(self.A, self.B), self.C)

    def __neg__(self):
        return BinaryQuadraticForm(-self.A, -self.B, -self.C)

    def scale(self, k: int) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(k * self.A, k * self.B, k * self.C)

    def divide(self, k: int) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(self.A // k, self.B // k, self.C // k)

    def act(self, g) -> "BinaryQuadraticForm":
        """(Q o g)(x, y) = Q(p x + q y, r x + s y) for g = [p, q; r, s]."""
        p, q, r, s = g
        A, B, C = self
        return BinaryQuadraticForm(
            A * p * p + B * p * r + C * r * r,
            2 * A * p * q + B * (p * s + q * r) + 2 * C * r * s,
            A * q * q + B * q * s + C * s * s,
        )

    def __call__(self, x, y):
        return self.A * x * x + self.B * x * y + self.C * y * y


BQF = BinaryQuadraticForm


def form_of_matrix(m: ProjMatrix) -> BinaryQuadraticForm:
    a, b, c, d = m
    return BQF(c, d - a, -b)


def matrix_of_form(t: int, q: BinaryQuadraticForm) -> ProjMatrix:
    """The matrix with trace t whose form is q (inverse of form_of_matrix)."""
    A, B, C = q
    if (t - B) % 2:
        raise ValueError("trace and middle coefficient must have equal parity")
    return ProjMatrix((t - B) // 2, -C, A, (t + B) // 2)


# -- SL2(Z) helpers on raw 4-tuples ------------------------------------------

def _mul(g, h):
    a, b, c, d = g
    e, f, k, l = h
    return (a * e + b * k, a * f + b * l, c * e + d * k, c * f + d * l)


def _tpow(k):
    return (1, k, 0, 1)


_S = (0, -1, 1, 0)
_ID = (1, 0, 0, 1)


def _xgcd(a, b):
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _complete(p, q):
    """An SL2(Z) matrix with first column (p, q), gcd(p, q) = 1."""
    g, x, y = _xgcd(p, q)
    assert g == 1
    # p x + q y = 1  ->  [p, -y; q, x] has det p x + q y = 1
    return (p, -y, q, x)


# -- canonical forms -----------------------------------------------------------

def _gauss_reduce(q: BQF):
    """Reduce a positive definite form; returns (reduced, g) with q o g = reduced."""
    g = _ID
    A, B, C = q
    while True:
        # bring B into (-A, A]
        k = (A - B) // (2 * A)
        if k:
            q = q.act(_tpow(k))
            g = _mul(g, _tpow(k))
            A, B, C = q
        if A > C or (A == C and B < 0):
            q = q.act(_S)
            g = _mul(g, _S)
            A, B, C = q
            continue
        return q, g


def _lt_sqrt(x, D):
    """x < sqrt(D) for a non-square D > 0."""
    return x < 0 or x * x < D


def _gt_sqrt(y, D):
    return y > 0 and y * y > D


def _is_reduced_indef(q: BQF, D: int) -> bool:
    A, B, C = q
    a = abs(A)
    return _lt_sqrt(B, D) and _lt_sqrt(2 * a - B, D) and _gt_sqrt(2 * a + B, D)


def _normalize_indef(q: BQF, D: int, r: int):
    A, B, _ = q
    a = abs(A)
    if a > r:
        lo = -a + 1
    else:
        lo = r - 2 * a + 1
    # B' = B + 2 A k in [lo, lo + 2a)
    k = (lo - B + 2 * a - 1) // (2 * a)
    if A < 0:
        k = -k
    t = _tpow(k)
    return q.act(t), t


def _rho(q: BQF, D: int, r: int):
    q1 = q.act(_S)
    q2, t = _normalize_indef(q1, D, r)
    return q2, _mul(_S, t)


def _indefinite_canonical(q: BQF):
    D = q.disc
    r = isqrt(D)
    q, g = _normalize_indef(q, D, r)
    steps = 0
    while not _is_reduced_indef(q, D):
        q, h = _rho(q, D, r)
        g = _mul(g, h)
        steps += 1
        assert steps < 10 * (D + 10), "indefinite reduction did not terminate"
    start = q
    best, best_g = q, g
    while True:
        q, h = _rho(q, D, r)
        g = _mul(g, h)
        if q == start:
            break
        if tuple(q) < tuple(best):
            best, best_g = q, g
    return best, best_g


def _square_canonical(q: BQF, u: int):
    """Primitive q of discriminant u^2 -> ([0, u, e], g), 0 <= e < u."""
    A, B, C = q
    roots = []
    if A == 0:
        roots.append((1, 0))
        roots.append((-C, B))
    else:
        for sgn in (1, -1):
            roots.append((-B + sgn * u, 2 * A))
    for p, s in roots:
        h = gcd(p, s)
        p, s = p // h, s // h
        g = _complete(p, s)
        q1 = q.act(g)
        assert q1.A == 0
        if q1.B > 0:
            k = -(q1.C // q1.B)
            g = _mul(g, _tpow(k))
            q1 = q.act(g)
            return q1, g
    raise AssertionError(f"no root of {q} with positive middle coefficient")


def _degenerate_canonical(q: BQF):
    """Nonzero primitive q of discriminant 0: q = s (p x + q y)^2 -> [s, 0, 0]."""
    A, B, C = q
    s = 1 if (A > 0 or (A == 0 and C > 0)) else -1
    p, r = isqrt(abs(A)), isqrt(abs(C))
    if 2 * p * r != s * B:
        r = -r
    assert s * (p * p) == A and s * (r * r) == C and 2 * s * p * r == B
    g, x, y = _xgcd(p, r)
    # [x, -r; y, p]: first coordinate of the image form is p x + r y = 1
    cert = (x, -r, y, p)
    return BQF(s, 0, 0), cert


def canonical_form(q: BinaryQuadraticForm):
    """Canonical representative of the proper SL2(Z)-class of ``q``.

    Returns ``(canon, g)`` with ``q.act(g) == canon`` and det g = 1.
    Definite forms are Gauss reduced, indefinite forms with non-square
    discriminant give the least form of their reduction cycle, square
    discriminants u^2 give content * [0, u/content, e] with 0 <= e < u/content,
    and discriminant 0 gives [+-content, 0, 0].
    """
    q = BQF(*q)
    g0 = q.content
    if g0 == 0:
        return q, _ID
    p = q.divide(g0)
    D = p.disc
    if D < 0:
        if p.A > 0:
            red, g = _gauss_reduce(p)
        else:
            red, g = _gauss_reduce(-p)
            red = -red
    elif D == 0:
        red, g = _degenerate_canonical(p)
    else:
        u = isqrt(D)
        if u * u == D:
            red, g = _square_canonical(p, u)
        else:
            red, g = _indefinite_canonical(p)
    canon = red.scale(g0)
    assert q.act(g) == canon and g[0] * g[3] - g[1] * g[2] == 1
    return canon, g


# -- conjugacy classes ----------------------------------------------------------

class ConjClassKey(NamedTuple):
    kind: str
    trace: int
    form: BinaryQuadraticForm

    def to_json_obj(self):
        return [self.kind, self.trace, list(self.form)]


def class_type(m: ProjMatrix) -> str:
    t, n = m.trace, m.det
    D = t * t - 4 * n
    if D < 0:
        return ELLIPTIC
    if D == 0:
        a, b, c, d = m
        return SCALAR if (b == 0 and c == 0) else PARABOLIC
    u = isqrt(D)
    return SPLIT if u * u == D else NONSPLIT


def _presentations(m: ProjMatrix):
    q = form_of_matrix(m)
    t = m.trace
    return [(t, q), (-t, -q)]


def conjugacy_key(m: ProjMatrix) -> ConjClassKey:
    kind = class_type(m)
    best = min((t, canonical_form(q)[0]) for t, q in _presentations(m))
    return ConjClassKey(kind, best[0], BQF(*best[1]))


def centralizer_order(key: ConjClassKey) -> int | None:
    """|Gamma_M| for elliptic classes (1, 2 or 3); None when infinite."""
    if key.kind != ELLIPTIC:
        return 1 if key.kind == SPLIT else None
    f = key.form
    prim = f.divide(f.content)
    if prim.A < 0:
        prim = -prim
    if prim == (1, 0, 1):
        return 2
    if prim == (1, 1, 1):
        return 3
    return 1


def class_weight(key: ConjClassKey) -> Fraction:
    if key.kind == SCALAR:
        return Fraction(1, 6)
    if key.kind == ELLIPTIC:
        return Fraction(-1, centralizer_order(key))
    if key.kind == SPLIT:
        return Fraction(1)
    return Fraction(0)


def are_conjugate(m: ProjMatrix, n: ProjMatrix) -> ProjMatrix | None:
    """g in PSL2(Z) with g^-1 m g = n, or None when m and n are not conjugate."""
    if m.det != n.det:
        return None
    tn, qn = n.trace, form_of_matrix(n)
    cn, gn = canonical_form(qn)
    for tm, qm in _presentations(m):
        if tm != tn:
            continue
        cm, gm = canonical_form(qm)
        if cm != cn:
            continue
        gm_p = ProjMatrix(*gm)
        gn_p = ProjMatrix(*gn)
        g = mat_mul(gm_p, mat_inverse(gn_p))
        assert mat_mul(mat_mul(mat_inverse(g), m), g) == n
        return g
    return None


# -- coset keys ----------------------------------------------------------------

def right_coset_key(m: ProjMatrix) -> ProjMatrix:
    """Lower-triangular Hermite representative [g, 0; c, n/g], 0 <= c < n/g, of m*Gamma."""
    a, b, c, d = m
    n = a * d - b * c
    g, x, y = _xgcd(a, b)
    # column operation [x, -b/g; y, a/g]
    c1 = c * x + d * y
    dd = n // g
    return ProjMatrix._trusted(g, 0, c1 % dd, dd)


def right_coset_reps(n: int) -> list[ProjMatrix]:
    """All sigma_1(n) keys of right cosets in det n, sorted."""
    out = []
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            out.extend(ProjMatrix._trusted(a, 0, c, d) for c in range(d))
    return sorted(out, key=ProjMatrix.sort_key)


def gamma_inf_orbit_key(m: ProjMatrix) -> tuple[int, int, int, int]:
    """Representative of {+-T^k m}: (c, d) sign-normalized, then first row reduced."""
    a, b, c, d = m
    if c < 0 or (c == 0 and d < 0):
        a, b, c, d = -a, -b, -c, -d
    if c:
        k = a // c
    else:
        k = b // d
    return (a - k * c, b - k * d, c, d)


def double_coset_key(m: ProjMatrix) -> tuple[int, int]:
    e1 = gcd(gcd(m[0], m[1]), gcd(m[2], m[3]))
    return (e1, m.det // e1)


def double_coset_keys(n: int) -> list[tuple[int, int]]:
    return [(e, n // e) for e in range(1, n + 1)
            if n % (e * e) == 0]


# -- cusps ------------------------------------------------------------------------

class Cusp(NamedTuple):
    p: int
    q: int

    @classmethod
    def make(cls, p: int, q: int) -> "Cusp":
        h = gcd(p, q)
        if h == 0:
            raise ValueError("(0:0) is not a cusp")
        p, q = p // h, q // h
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    def __repr__(self):
        return "[oo]" if self.q == 0 else f"[{Fraction(self.p, self.q)}]"


INFINITY = Cusp(1, 0)
ZERO = Cusp(0, 1)


def act_on_cusp(m: ProjMatrix, x: Cusp) -> Cusp:
    a, b, c, d = m
    return Cusp.make(a * x.p + b * x.q, c * x.p + d * x.q)


def act_on_divisor(xi, div: dict) -> dict:
    """Apply a matrix or ring element to a cusp divisor {Cusp: coefficient}."""
    out: dict[Cusp, Fraction] = {}
    items = [(xi, Fraction(1))] if isinstance(xi, ProjMatrix) else xi.items()
    for m, x in items:
        for cusp, y in div.items():
            k = act_on_cusp(m, cusp)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}
