"""Integer 2x2 matrices modulo +-1 and the rational group ring on them.

A :class:`ProjMatrix` is stored through its canonical representative
(lower-left entry positive, or lower-left zero and upper-left positive).
A :class:`RingElement` is a finite formal Q-linear combination of such
matrices, kept as a sparse dict with no zero coefficients.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Mapping, Union

__all__ = [
    "ProjMatrix",
    "RingElement",
    "mat_normalize",
    "mat_mul",
    "mat_adjoint",
    "mat_inverse",
    "ring_act",
    "pairing",
    "word_in_SU",
    "evaluate_word",
    "I",
    "S",
    "U",
    "U2",
    "T",
    "T_INV",
    "T_PRIME",
    "ONE",
    "PI_S",
    "PI_U",
]


class ProjMatrix(tuple):
    """A matrix [a, b; c, d] of positive determinant, taken modulo +-1.

    Construction normalizes the sign, so ``ProjMatrix(0, 1, -1, 0)`` and
    ``ProjMatrix(0, -1, 1, 0)`` are the same object up to equality.
    """

    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int, d: int) -> "ProjMatrix":
        if a * d - b * c <= 0:
            raise ValueError(f"determinant must be positive: [{a},{b};{c},{d}]")
        if c < 0 or (c == 0 and a < 0):
            a, b, c, d = -a, -b, -c, -d
        return tuple.__new__(cls, (a, b, c, d))

    @classmethod
    def _trusted(cls, a, b, c, d):
        return tuple.__new__(cls, (a, b, c, d))

    a = property(lambda self: self[0])
    b = property(lambda self: self[1])
    c = property(lambda self: self[2])
    d = property(lambda self: self[3])

    @property
    def det(self) -> int:
        a, b, c, d = self
        return a * d - b * c

    @property
    def trace(self) -> int:
        return self[0] + self[3]

    def __mul__(self, other):
        if isinstance(other, ProjMatrix):
            return mat_mul(self, other)
        if isinstance(other, RingElement):
            return RingElement.from_matrix(self) * other
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, RingElement):
            return other * RingElement.from_matrix(self)
        return NotImplemented

    def adjoint(self) -> "ProjMatrix":
        return mat_adjoint(self)

    def inverse(self) -> "ProjMatrix":
        return mat_inverse(self)

    def sort_key(self):
        return (self.det,) + tuple(self)

    def __repr__(self):
        a, b, c, d = self
        return f"[{a},{b};{c},{d}]"


def mat_normalize(a: int, b: int, c: int, d: int) -> ProjMatrix:
    """Canonical representative of {M, -M}; rejects det <= 0."""
    return ProjMatrix(a, b, c, d)


def _mul_raw(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _canon(a, b, c, d):
    if c < 0 or (c == 0 and a < 0):
        return ProjMatrix._trusted(-a, -b, -c, -d)
    return ProjMatrix._trusted(a, b, c, d)


def mat_mul(m: ProjMatrix, n: ProjMatrix) -> ProjMatrix:
    return _canon(*_mul_raw(m, n))


def mat_adjoint(m: ProjMatrix) -> ProjMatrix:
    a, b, c, d = m
    return _canon(d, -b, -c, a)


def mat_inverse(m: ProjMatrix) -> ProjMatrix:
    if m.det != 1:
        raise ValueError(f"{m!r} is not invertible in PSL2(Z)")
    return mat_adjoint(m)


I = ProjMatrix(1, 0, 0, 1)
S = ProjMatrix(0, -1, 1, 0)
U = ProjMatrix(1, -1, 1, 0)
U2 = mat_mul(U, U)
T = ProjMatrix(1, 1, 0, 1)
T_INV = ProjMatrix(1, -1, 0, 1)
T_PRIME = ProjMatrix(1, 0, 1, 1)

Scalar = Union[int, Fraction]


class RingElement:
    """Finite Q-linear combination of :class:`ProjMatrix` values.

    Multiplication is the group-ring product (matrix products on the
    support, coefficients multiplied).  Equality is structural.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[ProjMatrix, Scalar] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[ProjMatrix, Fraction] = {}
        for m, x in items:
            if not isinstance(m, ProjMatrix):
                m = ProjMatrix(*m)
            v = c.get(m, 0) + Fraction(x)
            if v:
                c[m] = v
            else:
                c.pop(m, None)
        self._c = c

    @classmethod
    def _wrap(cls, c: dict) -> "RingElement":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def from_matrix(cls, m: ProjMatrix, coeff: Scalar = 1) -> "RingElement":
        return cls._wrap({m: Fraction(coeff)} if coeff else {})

    @classmethod
    def sum_of(cls, mats: Iterable[ProjMatrix]) -> "RingElement":
        return cls((m, 1) for m in mats)

    # container protocol
    def __iter__(self) -> Iterator[ProjMatrix]:
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __contains__(self, m):
        return m in self._c

    def items(self):
        return self._c.items()

    def coeff(self, m: ProjMatrix) -> Fraction:
        return self._c.get(m, Fraction(0))

    def __getitem__(self, m):
        return self.coeff(m)

    @property
    def support(self) -> list[ProjMatrix]:
        return sorted(self._c, key=ProjMatrix.sort_key)

    def dets(self) -> set[int]:
        return {m.det for m in self._c}

    def restrict(self, pred: Callable[[ProjMatrix], bool]) -> "RingElement":
        return RingElement._wrap({m: x for m, x in self._c.items() if pred(m)})

    def restrict_det(self, n: int) -> "RingElement":
        return self.restrict(lambda m: m.det == n)

    # linear structure
    def __add__(self, other):
        if isinstance(other, ProjMatrix):
            other = RingElement.from_matrix(other)
        elif not isinstance(other, RingElement):
            if other == 0:
                return self
            return NotImplemented
        c = dict(self._c)
        for m, x in other._c.items():
            v = c.get(m, 0) + x
            if v:
                c[m] = v
            else:
                del c[m]
        return RingElement._wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._wrap({m: -x for m, x in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, ProjMatrix):
            other = RingElement.from_matrix(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: Scalar) -> "RingElement":
        k = Fraction(k)
        if not k:
            return RingElement()
        return RingElement._wrap({m: k * x for m, x in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, ProjMatrix):
            return RingElement._wrap({mat_mul(m, other): x for m, x in self._c.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        c: dict[ProjMatrix, Fraction] = {}
        for m, x in self._c.items():
            for n, y in other._c.items():
                p = _canon(*_mul_raw(m, n))
                c[p] = c.get(p, 0) + x * y
        return RingElement._wrap({m: x for m, x in c.items() if x})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, ProjMatrix):
            return RingElement._wrap({mat_mul(other, m): x for m, x in self._c.items()})
        return NotImplemented

    def __truediv__(self, k):
        return self.scale(Fraction(1) / Fraction(k))

    def __eq__(self, other):
        if isinstance(other, ProjMatrix):
            other = RingElement.from_matrix(other)
        if isinstance(other, int) and other == 0:
            return not self._c
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def adjoint(self) -> "RingElement":
        return RingElement._wrap({mat_adjoint(m): x for m, x in self._c.items()})

    def conjugate(self, g: ProjMatrix) -> "RingElement":
        """g^{-1} xi g, coefficient-wise."""
        gi = mat_inverse(g)
        return RingElement._wrap({mat_mul(mat_mul(gi, m), g): x for m, x in self._c.items()})

    def total(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    # serialization
    def to_json_obj(self) -> dict:
        entries = []
        for m in self.support:
            q = self._c[m]
            entries.append({"m": list(m), "q": [q.numerator, q.denominator]})
        return {"format": "ringelt-v1", "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RingElement":
        if obj.get("format") != "ringelt-v1":
            raise ValueError("not a ringelt-v1 object")
        c = {}
        for e in obj["entries"]:
            a, b, cc, d = e["m"]
            m = ProjMatrix(a, b, cc, d)
            if tuple(m) != (a, b, cc, d):
                raise ValueError(f"non-canonical matrix {e['m']}")
            num, den = e["q"]
            if den <= 0 or gcd(num, den) != 1 or num == 0:
                raise ValueError(f"non-reduced coefficient {e['q']}")
            if m in c:
                raise ValueError(f"duplicate matrix {e['m']}")
            c[m] = Fraction(num, den)
        return cls._wrap(c)

    @classmethod
    def from_json(cls, text: str) -> "RingElement":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        if not self._c:
            return "RingElement(0)"
        terms = " + ".join(f"{self._c[m]}*{m!r}" for m in self.support)
        return f"RingElement({terms})"


ONE = RingElement.from_matrix(I)
PI_S = RingElement({I: Fraction(1, 2), S: Fraction(1, 2)})
PI_U = RingElement({I: Fraction(1, 3), U: Fraction(1, 3), U2: Fraction(1, 3)})


def ring_act(xi: RingElement, g, side: str = "left") -> RingElement:
    """Left multiplication g*xi, right multiplication xi*g, or conjugation g^-1 xi g."""
    if side == "left":
        return g * xi
    if side == "right":
        return xi * g
    if side == "conjugation":
        if not isinstance(g, ProjMatrix):
            raise TypeError("conjugation needs a single matrix")
        return xi.conjugate(g)
    raise ValueError(f"unknown side {side!r}")


def pairing(xi: RingElement, pred: Callable[[ProjMatrix], bool] | None = None) -> Fraction:
    """Sum of the coefficients of support members satisfying ``pred``."""
    if pred is None:
        return xi.total()
    return sum((x for m, x in xi.items() if pred(m)), Fraction(0))


_LETTERS = {"S": S, "U": U, "U2": U2}


def evaluate_word(word: Iterable[str]) -> ProjMatrix:
    m = I
    for letter in word:
        m = mat_mul(m, _LETTERS[letter])
    return m


def _free_reduce(word: list[str]) -> list[str]:
    out: list[str] = []
    for letter in word:
        out.append(letter)
        while True:
            if len(out) >= 2 and out[-1] == out[-2] == "S":
                del out[-2:]
            elif len(out) >= 2 and {out[-1], out[-2]} == {"U", "U2"}:
                del out[-2:]
            elif len(out) >= 2 and out[-1] == out[-2] == "U2":
                out[-2:] = ["U"]
            elif len(out) >= 3 and out[-1] == out[-2] == out[-3] == "U":
                del out[-3:]
            else:
                break
    return out


def word_in_SU(g: ProjMatrix) -> list[str]:
    """A word in S, U, U2 evaluating to g (det 1), via continued fractions.

    Writes g = T^q1 S T^q2 S ... T^qk with T = U S and T^-1 = S U2.
    """
    if g.det != 1:
        raise ValueError("word_in_SU needs a determinant-1 matrix")
    a, b, c, d = g
    powers: list[int] = []
    while c != 0:
        q = a // c
        # T^-q g, then S applied on the left swaps the columns' roles
        a, b = a - q * c, b - q * d
        powers.append(q)
        a, b, c, d = -c, -d, a, b
    # now g' = +-[1, b; 0, 1]
    powers.append(b * a)  # a = +-1, d = a
    raw: list[str] = []
    for i, q in enumerate(powers):
        tw = ["U", "S"] * q if q > 0 else ["S", "U2"] * (-q)
        raw.extend(tw)
        if i < len(powers) - 1:
            raw.append("S")
    return _free_reduce(raw)
