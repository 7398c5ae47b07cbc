"""The explicit Hecke elements and the fundamental-domain weights.

``build_wTn(n)`` is the det-n slice of the simplified four-term element,
``build_wTn_alt(n)`` the same slice assembled from the elliptic/hyperbolic
representatives plus conjugation corrections; the two must coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .algebra import I, ONE, PI_S, PI_U, S, U, U2, ProjMatrix, RingElement
from .descriptors import enumerate_term

__all__ = [
    "build_wTn",
    "build_wTn_alt",
    "build_F",
    "build_G",
    "corner_term",
    "T_infinity",
    "intro_wT1",
    "intro_wT2",
    "FixedPointData",
    "fixed_point_data",
    "chi",
    "chi_plus",
    "chi_minus",
    "alpha_weight",
    "elliptic_in_F",
    "E_from_chi",
    "alpha_element",
]


def _check_n(n):
    if not isinstance(n, int) or n <= 0:
        raise ValueError(f"n must be a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def build_wTn(n: int) -> RingElement:
    _check_n(n)
    t = lambda name: enumerate_term(name, n)
    return t("T1") - t("T2") - t("T3") - t("T4")


@lru_cache(maxsize=None)
def build_wTn_alt(n: int) -> RingElement:
    _check_n(n)
    t = lambda name: enumerate_term(name, n)
    X, Y, Z = t("X"), t("Y"), t("Z")
    return (-t("E") + t("H")
            + X - S * X * S
            + Y - U2 * Y * U
            + Z - U2 * Z * U)


def build_F(n: int) -> RingElement:
    _check_n(n)
    return enumerate_term("F", n)


def build_G(n: int) -> RingElement:
    _check_n(n)
    return enumerate_term("G", n)


def corner_term(n: int) -> RingElement:
    """Unweighted sum over a-d = c = -b, d <= 0 < a."""
    _check_n(n)
    return enumerate_term("corner", n)


def T_infinity(n: int) -> RingElement:
    """Sum of the upper-triangular representatives [a, b; 0, d], 0 <= b < d."""
    _check_n(n)
    mats = []
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            mats.extend(ProjMatrix(a, b, 0, d) for b in range(d))
    return RingElement.sum_of(mats)


def intro_wT1() -> RingElement:
    return ONE - PI_S - PI_U


def intro_wT2() -> RingElement:
    h = Fraction(1, 2)
    return RingElement([
        (ProjMatrix(2, 0, 0, 1), 1),
        (ProjMatrix(1, 1, -1, 1), -h),
        (ProjMatrix(1, -1, 1, 1), -h),
        (ProjMatrix(1, -1, 2, 0), -1),
        (ProjMatrix(0, 2, -1, 1), -1),
        (ProjMatrix(0, -2, 1, 0), -1),
    ])


# -- fixed points and weights ----------------------------------------------------

@dataclass(frozen=True)
class FixedPointData:
    """Exact location data of the fixed point z_M in the upper half plane."""
    re: Fraction          # Re z
    abs2: Fraction        # |z|^2
    abs2_minus_1: Fraction  # |z - 1|^2

    @property
    def at_i(self):
        return self.re == 0 and self.abs2 == 1

    @property
    def at_rho(self):
        return self.re == Fraction(1, 2) and self.abs2 == 1


def fixed_point_data(m: ProjMatrix) -> FixedPointData:
    a, b, c, d = m
    if (a + d) ** 2 >= 4 * m.det:
        raise ValueError(f"{m!r} is not elliptic")
    # canonical representative has c > 0, so z = ((a-d) + sqrt(disc)) / 2c
    return FixedPointData(Fraction(a - d, 2 * c), Fraction(-b, c), Fraction(-b - a + d + c, c))


def _in_F(z: FixedPointData) -> bool:
    return 0 <= z.re <= Fraction(1, 2) and z.abs2_minus_1 >= 1


def chi(m: ProjMatrix) -> Fraction:
    """Normalized angle subtended by the fundamental domain at z_M."""
    z = fixed_point_data(m)
    if not _in_F(z):
        return Fraction(0)
    if z.at_rho:
        return Fraction(1, 3)
    on = (z.re == 0) + (z.re == Fraction(1, 2)) + (z.abs2_minus_1 == 1)
    return Fraction(1) if on == 0 else Fraction(1, 2)


def chi_plus(m: ProjMatrix) -> Fraction:
    """Same, for the half |z| >= 1 of the fundamental domain."""
    z = fixed_point_data(m)
    if not (_in_F(z) and z.abs2 >= 1):
        return Fraction(0)
    if z.at_i:
        return Fraction(1, 4)
    if z.at_rho:
        return Fraction(1, 6)
    on = (z.re == 0) + (z.re == Fraction(1, 2)) + (z.abs2 == 1)
    return Fraction(1) if on == 0 else Fraction(1, 2)


def chi_minus(m: ProjMatrix) -> Fraction:
    """Same, for the half |z| <= 1 of the fundamental domain."""
    z = fixed_point_data(m)
    if not (_in_F(z) and z.abs2 <= 1):
        return Fraction(0)
    if z.at_i:
        return Fraction(1, 4)
    if z.at_rho:
        return Fraction(1, 6)
    on = (z.re == 0) + (z.abs2 == 1) + (z.abs2_minus_1 == 1)
    return Fraction(1) if on == 0 else Fraction(1, 2)


def alpha_weight(m: ProjMatrix) -> Fraction:
    a, b, c, d = m
    if (a + d) ** 2 >= 4 * m.det:
        return Fraction(0)
    return chi_plus(m) * (a <= 0) + chi_minus(m) * (d <= 0)


def elliptic_in_F(n: int) -> list[ProjMatrix]:
    """All elliptic det-n matrices whose fixed point lies in the closed domain.

    Found by scanning positive definite forms [c, -u, -b] with
    0 <= u <= min(c, -b), which bounds 3 c (-b) <= 4n.
    """
    _check_n(n)
    out = []
    for c in range(1, 4 * n // 3 + 1):
        for mb in range(1, 4 * n // (3 * c) + 1):
            for u in range(0, min(c, mb) + 1):
                sq = 4 * n + u * u - 4 * mb * c
                if sq < 0:
                    continue
                s = isqrt(sq)
                if s * s != sq or (s - u) % 2:
                    continue
                for t in ((s, -s) if s else (0,)):
                    m = ProjMatrix((t + u) // 2, -mb, c, (t - u) // 2)
                    if chi(m):
                        out.append(m)
    return out


def E_from_chi(n: int) -> RingElement:
    return RingElement((m, chi(m)) for m in elliptic_in_F(n))


def alpha_element(n: int) -> RingElement:
    return RingElement((m, alpha_weight(m)) for m in elliptic_in_F(n))
