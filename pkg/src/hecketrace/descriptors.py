"""Weighted sums of matrices cut out by two lines of linear inequalities.

A descriptor has a *first line* of chained non-strict inequalities between
integer linear forms in (a, b, c, d) -- these decide the boundary weight --
and a *second line* of further conditions that never affect the weight.
Three summation modes exist:

``bracket``
    weight 1 with no first-line equality, 1/2 with one, and with two
    equalities 1/4, 1/3 or 1/6 for independent, overlapping (shared
    endpoint) or nested (chained A <= B <= C) pairs.
``star``
    1/2 as soon as a first-line inequality is an equality, except the
    listed exception patterns, which get 1/4.
``plain``
    unweighted.

Matrices are read through their representative with c >= 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterator

from .algebra import ProjMatrix, RingElement

__all__ = [
    "LinearForm",
    "Descriptor",
    "DESCRIPTORS",
    "weight_c",
    "enumerate_term",
    "enumerate_naive",
    "get_descriptor",
]

_VARS = "abcd"


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[int, int, int, int]
    const: int = 0

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty expression")
        co = [0, 0, 0, 0]
        const = 0
        for sign, num, var in re.findall(r"([+-]?)(\d*)([abcd]?)", text):
            if not num and not var:
                if sign:
                    raise ValueError(f"dangling sign in {text!r}")
                continue
            k = int(num) if num else 1
            if sign == "-":
                k = -k
            if var:
                co[_VARS.index(var)] += k
            else:
                const += k
        return cls(tuple(co), const)

    def __call__(self, m) -> int:
        a, b, c, d = m
        x, y, z, w = self.coeffs
        return x * a + y * b + z * c + w * d + self.const

    def __str__(self):
        parts = []
        for k, v in zip(self.coeffs, _VARS):
            if k:
                parts.append(("-" if k < 0 else "+") + (str(abs(k)) if abs(k) != 1 else "") + v)
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+") + str(abs(self.const)))
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class Relation:
    lhs: LinearForm
    op: str  # '<', '<=', '='
    rhs: LinearForm

    def holds(self, m) -> bool:
        x, y = self.lhs(m), self.rhs(m)
        if self.op == "<":
            return x < y
        if self.op == "<=":
            return x <= y
        return x == y

    def is_equality(self, m) -> bool:
        return self.lhs(m) == self.rhs(m)

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"


def parse_line(text: str) -> tuple[Relation, ...]:
    """Parse ``"0 <= a-d <= c; a-d <= -b"`` into pairwise relations."""
    rels = []
    for chain in text.split(";"):
        chain = chain.strip()
        if not chain:
            continue
        tokens = re.split(r"(<=|<|=)", chain)
        exprs = [LinearForm.parse(t) for t in tokens[0::2]]
        ops = tokens[1::2]
        if len(exprs) != len(ops) + 1:
            raise ValueError(f"malformed chain {chain!r}")
        for lhs, op, rhs in zip(exprs, ops, exprs[1:]):
            rels.append(Relation(lhs, op, rhs))
    return tuple(rels)


@dataclass(frozen=True)
class Descriptor:
    name: str
    first: str
    second: str
    mode: str = "bracket"
    exceptions: tuple[str, ...] = ()
    box: str = "elliptic"
    first_rel: tuple[Relation, ...] = field(init=False, repr=False, compare=False)
    second_rel: tuple[Relation, ...] = field(init=False, repr=False, compare=False)
    exception_rel: tuple[tuple[Relation, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "first_rel", parse_line(self.first))
        object.__setattr__(self, "second_rel", parse_line(self.second))
        object.__setattr__(self, "exception_rel", tuple(parse_line(e) for e in self.exceptions))
        if self.mode not in ("bracket", "star", "plain"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode != "plain" and any(r.op != "<=" for r in self.first_rel):
            raise ValueError("weighted first lines use only non-strict inequalities")

    def contains(self, m) -> bool:
        return all(r.holds(m) for r in self.first_rel) and all(r.holds(m) for r in self.second_rel)

    def to_json_obj(self) -> dict:
        return {"name": self.name, "first": self.first, "second": self.second,
                "mode": self.mode, "exceptions": list(self.exceptions), "box": self.box}

    def __str__(self):
        return f"<{self.first} / {self.second}>" + ("*" if self.mode == "star" else "")


def _pair_weight(r1: Relation, r2: Relation) -> Fraction:
    if r1.rhs == r2.lhs or r2.rhs == r1.lhs:
        return Fraction(1, 6)
    if r1.lhs == r2.lhs or r1.rhs == r2.rhs:
        return Fraction(1, 3)
    return Fraction(1, 4)


def weight_c(m, desc: Descriptor) -> Fraction:
    """Boundary weight of a matrix already known to satisfy ``desc``."""
    if desc.mode == "plain":
        return Fraction(1)
    eqs = [r for r in desc.first_rel if r.is_equality(m)]
    if desc.mode == "star":
        if not eqs:
            return Fraction(1)
        if any(all(r.holds(m) for r in pat) for pat in desc.exception_rel):
            return Fraction(1, 4)
        return Fraction(1, 2)
    if not eqs:
        return Fraction(1)
    if len(eqs) == 1:
        return Fraction(1, 2)
    if len(eqs) == 2:
        return _pair_weight(*eqs)
    raise AssertionError(f"{len(eqs)} simultaneous first-line equalities for {m} in {desc.name}")


# Transcribed constant table: every sum used by the construction.
DESCRIPTORS: dict[str, Descriptor] = {d.name: d for d in [
    Descriptor("E", "0 <= a-d <= -b; a-d <= c", "b < 0 < c"),
    Descriptor("H", "a-d <= -b <= c", "c = 0 < a", box="H"),
    Descriptor("X", "0 <= a-d; -b <= c", "b < 0 < d", box="X"),
    Descriptor("Y", "a-d <= -b <= c", "0 < c < a", box="T1"),
    Descriptor("Z", "a-d <= c <= -b", "0 < a; 0 < c", box="Z"),
    Descriptor("T1", "a-d <= -b <= c", "0 <= c < a", box="T1"),
    Descriptor("T2", "-b <= a-d <= c", "b < d <= 0", box="T2"),
    Descriptor("T3", "0 <= a-d <= c <= -b", "a <= 0 < c"),
    Descriptor("T4", "0 <= a-d <= -b <= c", "d <= 0 < -b"),
    Descriptor("F", "0 <= a-d <= c; a-d <= -b", "d <= b < 0 < c"),
    Descriptor("G", "0 <= a-d <= c; a-d <= -b; a <= -b-c", "a <= 0; b < 0 < c", mode="star",
               exceptions=("a-d = c = -b", "a = d = -b-c")),
    Descriptor("corner", "a-d = c = -b", "d <= 0 < a", mode="plain"),
]}


def get_descriptor(desc) -> Descriptor:
    if isinstance(desc, Descriptor):
        return desc
    try:
        return DESCRIPTORS[desc]
    except KeyError:
        raise KeyError(f"unknown descriptor {desc!r}") from None


# -- enumeration --------------------------------------------------------------
#
# Every matrix is parametrized by its form coefficients (c, b, u = a - d):
# the trace t then satisfies t^2 = 4n + u^2 + 4bc.  Each box yields the
# (c, b, u) triples that can possibly occur at det n.

def _box_elliptic(n):
    # 0 <= u <= min(c, -b) and 4n >= 4c(-b) - u^2 >= 3c(-b)
    cmax = 4 * n // 3
    for c in range(1, cmax + 1):
        for mb in range(1, 4 * n // (3 * c) + 1):
            for u in range(0, min(c, mb) + 1):
                yield c, -mb, u


def _box_T1(n):
    # 0 <= c < a, d > 0, |b| <= n, |u| < n
    for c in range(0, n + 1):
        for b in range(-n, n + 1):
            for u in range(-n, min(-b, n) + 1):
                yield c, b, u


def _box_T2(n):
    # 1 <= -b <= u <= c <= n
    for c in range(1, n + 1):
        for mb in range(1, c + 1):
            for u in range(mb, c + 1):
                yield c, -mb, u


def _box_X(n):
    # a >= d >= 1 so 0 <= u < n; 1 <= -b <= c, c(-b) < n
    for c in range(1, n):
        for mb in range(1, min(c, (n - 1) // c) + 1):
            for u in range(0, n):
                yield c, -mb, u


def _box_Z(n):
    # u >= 0: elliptic box; u < 0: a, d > 0 and c(-b) < n
    for c in range(1, 4 * n // 3 + 1):
        for mb in range(c, 4 * n // (3 * c) + 1):
            for u in range(-n, c + 1):
                yield c, -mb, u


def _box_H(n):
    for b in range(0, n + 1):
        for u in range(-n, -b + 1):
            yield 0, b, u


_BOXES: dict[str, Callable[[int], Iterator[tuple[int, int, int]]]] = {
    "elliptic": _box_elliptic,
    "T1": _box_T1,
    "T2": _box_T2,
    "X": _box_X,
    "Z": _box_Z,
    "H": _box_H,
}


def _matrices_from_box(desc: Descriptor, n: int):
    box = _BOXES[desc.box]
    for c, b, u in box(n):
        sq = 4 * n + u * u + 4 * b * c
        if sq < 0:
            continue
        s = isqrt(sq)
        if s * s != sq or (s - u) % 2:
            continue
        for t in ((s, -s) if s else (0,)):
            m = ((t + u) // 2, b, c, (t - u) // 2)
            if desc.contains(m):
                yield m


@lru_cache(maxsize=512)
def _enumerate_cached(desc: Descriptor, n: int) -> RingElement:
    coeffs: dict[ProjMatrix, Fraction] = {}
    for m in _matrices_from_box(desc, n):
        key = ProjMatrix(*m)
        if key in coeffs:
            raise AssertionError(f"{desc.name}: both sign representatives of {key} enumerated")
        coeffs[key] = weight_c(m, desc)
    return RingElement(coeffs)


def enumerate_term(desc, n: int) -> RingElement:
    """Exact weighted sum of all det-n matrices satisfying the descriptor."""
    if n <= 0:
        raise ValueError("n must be positive")
    return _enumerate_cached(get_descriptor(desc), n)


def enumerate_naive(desc, n: int, bound: int) -> RingElement:
    """Same sum by scanning every matrix with c >= 0 and entries bounded by ``bound``."""
    desc = get_descriptor(desc)
    coeffs = {}
    rng = range(-bound, bound + 1)
    for c in range(0, bound + 1):
        for a in rng:
            for b in rng:
                if a == 0:
                    if -b * c != n:
                        continue
                    ds = rng
                else:
                    num = n + b * c
                    if num % a:
                        continue
                    d = num // a
                    if abs(d) > bound:
                        continue
                    ds = (d,)
                for d in ds:
                    m = (a, b, c, d)
                    if desc.contains(m):
                        key = ProjMatrix(*m)
                        assert key not in coeffs
                        coeffs[key] = weight_c(m, desc)
    return RingElement(coeffs)
