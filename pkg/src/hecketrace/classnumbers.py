"""Hurwitz class numbers H(D), extended to every integer D."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import NamedTuple

from .forms import BinaryQuadraticForm
from .report import CheckReport

__all__ = [
    "HurwitzValue",
    "reduced_forms",
    "hurwitz_value",
    "hurwitz_H",
    "sigma",
    "divisors",
    "kronecker_hurwitz_check",
]


class HurwitzValue(NamedTuple):
    D: int
    value: Fraction
    witness_forms: tuple[BinaryQuadraticForm, ...]


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


@lru_cache(maxsize=None)
def reduced_forms(D: int) -> tuple[BinaryQuadraticForm, ...]:
    """Reduced positive definite forms [A, B, C] of discriminant -D.

    Reduced means -A < B <= A <= C, with B >= 0 when A = C.
    """
    if D <= 0:
        raise ValueError("reduced_forms needs D > 0")
    if D % 4 in (1, 2):
        return ()
    out = []
    amax = isqrt(D // 3)
    for A in range(1, amax + 1):
        for B in range(-A + 1, A + 1):
            num = B * B + D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            out.append(BinaryQuadraticForm(A, B, C))
    return tuple(out)


def _multiplicity(f: BinaryQuadraticForm) -> Fraction:
    A, B, C = f
    if B == 0 and A == C:
        return Fraction(1, 2)
    if B == A == C:
        return Fraction(1, 3)
    return Fraction(1)


@lru_cache(maxsize=None)
def hurwitz_value(D: int) -> HurwitzValue:
    if D > 0:
        forms = reduced_forms(D)
        return HurwitzValue(D, sum((_multiplicity(f) for f in forms), Fraction(0)), forms)
    if D == 0:
        return HurwitzValue(0, Fraction(-1, 12), ())
    u = isqrt(-D)
    if u * u == -D:
        return HurwitzValue(D, Fraction(-u, 2), ())
    return HurwitzValue(D, Fraction(0), ())


def hurwitz_H(D: int) -> Fraction:
    return hurwitz_value(D).value


def kronecker_hurwitz_check(n: int) -> CheckReport:
    """Both class number relations for det n, exactly."""
    lhs_inner = sum((hurwitz_H(4 * n - t * t) for t in range(-isqrt(4 * n), isqrt(4 * n) + 1)),
                    Fraction(0))
    rhs_inner = sum(max(a, n // a) for a in divisors(n))
    # for |t| > n + 1, 4n - t^2 is never minus a square
    lhs_all = sum((hurwitz_H(4 * n - t * t) for t in range(-(n + 2), n + 3)), Fraction(0))
    rhs_all = sigma(1, n)
    ok = lhs_inner == rhs_inner and lhs_all == rhs_all
    witness = None if ok else {"inner": [lhs_inner, rhs_inner], "all": [lhs_all, rhs_all]}
    return CheckReport("kh", n, ok, witness,
                       details={"inner": lhs_inner, "all": lhs_all})
