"""Number-theoretic lower bounds for ball filling numbers.

Minimal Pell solutions by the continued-fraction expansion of sqrt(N), the
exact Seshadri values and filling bounds for abelian surfaces of type (1, d),
the d = 1..30 table, the general and higher-dimensional bounds, and the
width <-> filling-number conversion.  nth roots are never materialized: every
comparison happens on nth powers, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt

from .surd import SurdScalar, rat, scalar


class SeshadriError(ValueError):
    pass


@dataclass(frozen=True)
class PellSolution:
    """Minimal positive solution of l^2 - N k^2 = 1."""

    N: int
    k0: int
    l0: int

    def __post_init__(self):
        if self.l0 * self.l0 - self.N * self.k0 * self.k0 != 1:
            raise SeshadriError(f"({self.k0}, {self.l0}) does not solve Pell for N={self.N}")


def pell_min(N: int) -> PellSolution:
    """Fundamental Pell solution via the continued fraction of sqrt(N)."""
    if N < 2:
        raise SeshadriError("N must be at least 2")
    a0 = isqrt(N)
    if a0 * a0 == N:
        raise SeshadriError(f"N={N} is a perfect square")
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - N * q * q != 1:
        m = d * a - m
        d = (N - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return PellSolution(N, k0=q, l0=p)


@dataclass(frozen=True)
class SeshadriBound:
    """Exact Seshadri value and filling lower bound for type (1, d).

    When 2d is a perfect square, epsilon = sqrt(2d) and the bound is 1 (no
    Pell pair); otherwise epsilon = 2d k0 / l0 and the bound is
    (l0^2 - 1) / l0^2 = epsilon^2 / (2d).
    """

    d: int
    epsilon: SurdScalar
    p_lower: Fraction
    pell: PellSolution | None

    def __post_init__(self):
        if self.p_lower != (self.epsilon * self.epsilon / (2 * self.d)).as_fraction():
            raise SeshadriError("internal identity p = eps^2 / 2d violated")


def surface_bound(d: int) -> SeshadriBound:
    if d < 1:
        raise SeshadriError("d must be a positive integer")
    n = 2 * d
    root = isqrt(n)
    if root * root == n:
        return SeshadriBound(d, rat(root), Fraction(1), None)
    pell = pell_min(n)
    eps = Fraction(n * pell.k0, pell.l0)
    return SeshadriBound(d, rat(eps), Fraction(pell.l0 ** 2 - 1, pell.l0 ** 2), pell)


def table(d_max: int) -> list[SeshadriBound]:
    if d_max < 1:
        raise SeshadriError("d_max must be at least 1")
    return [surface_bound(d) for d in range(1, d_max + 1)]


def general_bounds(type_: tuple[int, ...]) -> tuple[int, int]:
    """(lower, upper^n) for epsilon of a polarization of the given type.

    lower is d1 (so lower^n = d1^n); the upper bound is reported as its nth
    power n! * d1 * ... * dn, avoiding the nth root.
    """
    if not type_ or any(d < 1 for d in type_):
        raise SeshadriError("type must be positive integers")
    for a, b in zip(type_, type_[1:]):
        if b % a:
            raise SeshadriError(f"divisibility chain violated: {a} does not divide {b}")
    n = len(type_)
    upper_nth = factorial(n)
    for d in type_:
        upper_nth *= d
    return type_[0], upper_nth


def special_values(n: int, hyperelliptic: bool) -> tuple[Fraction, Fraction]:
    """Known principal Seshadri constants from Jacobians in dimensions 3, 4.

    Returns (epsilon, p_lower) for the unit-volume principal torus, with
    p_lower = epsilon^n / n!.
    """
    known = {
        (3, True): Fraction(3, 2),
        (3, False): Fraction(12, 7),
        (4, False): Fraction(2),
    }
    if (n, hyperelliptic) not in known:
        raise SeshadriError(f"unsupported combination n={n}, hyperelliptic={hyperelliptic}")
    eps = known[(n, hyperelliptic)]
    return eps, eps ** n / factorial(n)


def buser_sarnak(n: int, type_: tuple[int, ...] | None = None) -> Fraction:
    """Existence bound: some polarized torus of any type has
    epsilon^n >= (1/4)^n * 2 * n! * d1...dn, i.e. filling fraction 2/4^n."""
    if n < 1:
        raise SeshadriError("n must be a positive integer")
    if type_ is not None:
        general_bounds(type_)  # validates the chain
    return Fraction(2, 4 ** n)


def width_filling_convert(c, n: int, vol) -> SurdScalar:
    """Ball filling fraction p = c^n / (n! * vol) from a width c."""
    c, vol = scalar(c), scalar(vol)
    if c.sign() <= 0 or vol.sign() <= 0:
        raise SeshadriError("width and volume must be positive")
    return c ** n / (factorial(n) * vol)
