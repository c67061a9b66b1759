"""Exact arithmetic in the ring of rational combinations of square roots.

A scalar is a finite sum  sum_i  c_i * sqrt(n_i)  with rational c_i and
pairwise distinct squarefree positive integers n_i (n_i = 1 is the rational
part).  Square roots of distinct squarefree integers are linearly independent
over the rationals, so the canonical form is unique and structural equality
coincides with equality of real values.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class SurdError(ArithmeticError):
    """Raised on operations that leave the ring (e.g. division by zero)."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s*s * t with t squarefree; returns (s, t).  Requires n >= 1."""
    if n < 1:
        raise ValueError(f"radicand must be positive, got {n}")
    s, t, m, d = 1, 1, n, 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                t *= d
        d += 1 if d == 2 else 2
    return s, t * m


def _prime_factors(n: int) -> frozenset[int]:
    out, m, d = set(), n, 2
    while d * d <= m:
        if m % d == 0:
            out.add(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.add(m)
    return frozenset(out)


def _sqrt_interval(n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of sqrt(n) with denominator 2**prec."""
    lo = isqrt(n << (2 * prec))
    return Fraction(lo, 1 << prec), Fraction(lo + 1, 1 << prec)


class SurdScalar:
    """Immutable exact scalar: a rational combination of square roots."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[int, Fraction] | None = None):
        # terms must already be canonical: squarefree keys, nonzero Fractions
        self._terms: dict[int, Fraction] = terms or {}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, value) -> SurdScalar:
        q = Fraction(value)
        return cls({1: q} if q else {})

    @classmethod
    def sqrt_int(cls, n: int) -> SurdScalar:
        """sqrt(n) for a positive integer n, reduced to s*sqrt(t)."""
        s, t = squarefree_decompose(n)
        return cls({t: Fraction(s)})

    @classmethod
    def from_terms(cls, pairs) -> SurdScalar:
        """Canonicalize arbitrary (radicand, coefficient) pairs."""
        acc: dict[int, Fraction] = {}
        for rad, coeff in pairs:
            c = Fraction(coeff)
            if not c:
                continue
            s, t = squarefree_decompose(int(rad))
            acc[t] = acc.get(t, Fraction(0)) + c * s
        return cls({t: c for t, c in acc.items() if c})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def radicands(self) -> frozenset[int]:
        return frozenset(self._terms)

    def coefficient(self, radicand: int) -> Fraction:
        return self._terms.get(radicand, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(r == 1 for r in self._terms)

    def is_irrational(self) -> bool:
        return not self.is_rational()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise SurdError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def is_integer(self) -> bool:
        return self.is_rational() and self.as_fraction().denominator == 1

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> SurdScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for rad, c in other._terms.items():
            s = acc.get(rad, Fraction(0)) + c
            if s:
                acc[rad] = s
            else:
                acc.pop(rad, None)
        return SurdScalar(acc)

    __radd__ = __add__

    def __neg__(self) -> SurdScalar:
        return SurdScalar({r: -c for r, c in self._terms.items()})

    def __sub__(self, other) -> SurdScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> SurdScalar:
        return (-self) + other

    def __mul__(self, other) -> SurdScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for r1, c1 in self._terms.items():
            for r2, c2 in other._terms.items():
                # sqrt(r1)*sqrt(r2) = g*sqrt(t) where r1*r2 = g*g*t
                s, t = squarefree_decompose(r1 * r2)
                v = acc.get(t, Fraction(0)) + c1 * c2 * s
                if v:
                    acc[t] = v
                else:
                    acc.pop(t, None)
        return SurdScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SurdScalar:
        if n < 0:
            return self.inverse() ** (-n)
        out = SurdScalar.rational(1)
        base, k = self, n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> SurdScalar:
        """Multiplicative inverse, by rationalization with conjugates.

        Division by a rational is the trivial case; a single-radical scalar
        p + q*sqrt(n) is rationalized against p - q*sqrt(n); scalars with more
        radicals are rationalized against all sign-flip conjugates.
        """
        if self.is_zero():
            raise SurdError("division by zero scalar")
        if self.is_rational():
            return SurdScalar.rational(1 / self.as_fraction())
        primes = sorted(set().union(*(_prime_factors(r) for r in self._terms if r > 1)))
        prod = SurdScalar.rational(1)
        for mask in range(1, 1 << len(primes)):
            flip = {primes[i] for i in range(len(primes)) if mask >> i & 1}
            conj = SurdScalar({
                r: -c if len(flip & _prime_factors(r)) % 2 else c
                for r, c in self._terms.items()
            })
            prod = prod * conj
        norm = prod * self
        if not norm.is_rational() or norm.is_zero():
            raise SurdError(f"rationalization failed for {self}")
        return prod * SurdScalar.rational(1 / norm.as_fraction())

    def __truediv__(self, other) -> SurdScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            if other.is_zero():
                raise SurdError("division by zero scalar")
            return self * SurdScalar.rational(1 / other.as_fraction())
        return self * other.inverse()

    def __rtruediv__(self, other) -> SurdScalar:
        return _coerce(other) / self

    # -- ordering and sign ---------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}.

        Zero is decided by the canonical form; otherwise refine an interval
        enclosure, doubling the precision until it excludes zero (guaranteed
        to terminate since a nonzero canonical scalar is a nonzero real).
        """
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            ((rad, c),) = self._terms.items()
            return 1 if c > 0 else -1
        prec = 16
        while True:
            lo, hi = self._interval(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def _interval(self, prec: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for rad, c in self._terms.items():
            if rad == 1:
                lo += c
                hi += c
                continue
            slo, shi = _sqrt_interval(rad, prec)
            if c > 0:
                lo += c * slo
                hi += c * shi
            else:
                lo += c * shi
                hi += c * slo
        return lo, hi

    def approx(self, digits: int = 30) -> Fraction:
        """A rational within 10**-digits of the true value."""
        bound = Fraction(1, 10 ** digits)
        prec = 32
        while True:
            lo, hi = self._interval(prec)
            if hi - lo < bound:
                return (lo + hi) / 2
            prec *= 2

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    def __abs__(self) -> SurdScalar:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __float__(self) -> float:
        return float(self.approx(20))

    def floor(self) -> int:
        """Exact integer floor."""
        if self.is_rational():
            return self.as_fraction().numerator // self.as_fraction().denominator
        prec = 32
        while True:
            lo, hi = self._interval(prec)
            flo = lo.numerator // lo.denominator
            if flo == hi.numerator // hi.denominator:
                return flo
            prec *= 2

    def ceil(self) -> int:
        return -((-self).floor())

    # -- serialization and display -------------------------------------------

    def to_triples(self) -> list[list[int]]:
        """Canonical [radicand, numerator, denominator] triples, sorted."""
        return [
            [r, c.numerator, c.denominator]
            for r, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_triples(cls, triples) -> SurdScalar:
        return cls.from_terms((r, Fraction(num, den)) for r, num, den in triples)

    def decimal(self, digits: int = 30) -> str:
        """Deterministic fixed-point decimal rendering (round half away)."""
        scaled = self.approx(digits + 5) * 10 ** digits
        n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
        sign, n = ("-", -n) if n < 0 else ("", n)
        whole, frac = divmod(n, 10 ** digits)
        return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"

    def __repr__(self) -> str:
        return f"SurdScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in sorted(self._terms.items()):
            body = str(c) if r == 1 else (f"{c}*v{r}" if c not in (1, -1) else f"{'-' if c < 0 else ''}v{r}")
            parts.append(body if not parts or body.startswith("-") else "+" + body)
        return "".join(parts).replace("v", "√")


def _coerce(value) -> SurdScalar:
    if isinstance(value, SurdScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return SurdScalar.rational(value)
    return NotImplemented


def scalar(value) -> SurdScalar:
    """Strict conversion: SurdScalar, int or Fraction only (no floats)."""
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")
    return out


# Module-level conveniences used throughout the geometry layer.
ZERO = SurdScalar.rational(0)
ONE = SurdScalar.rational(1)


def rat(value) -> SurdScalar:
    return SurdScalar.rational(value)


def sqrt(n: int) -> SurdScalar:
    return SurdScalar.sqrt_int(n)


def rationally_independent(values: list[SurdScalar]) -> bool:
    """True iff no nonzero rational combination of the values vanishes.

    Equivalent to the coefficient matrix (rows = values, columns = radicands)
    having rank equal to the number of values, by the linear independence of
    square roots of distinct squarefree integers.
    """
    if not values:
        raise ValueError("rationally_independent needs a nonempty list")
    rows = [v.terms for v in values]
    cols = sorted(set().union(*[set(r) for r in rows]) or {1})
    matrix = [[row.get(c, Fraction(0)) for c in cols] for row in rows]
    return _rank(matrix) == len(values)


def _rank(matrix: list[list[Fraction]]) -> int:
    m = [row[:] for row in matrix]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def decimal_sqrt(x: SurdScalar, digits: int = 50) -> str:
    """Decimal rendering of sqrt(x) for a nonnegative scalar x (display only)."""
    if x.sign() < 0:
        raise SurdError("decimal_sqrt of a negative scalar")
    scale = 10 ** (digits + 4)
    approx = x.approx(2 * digits + 10)
    n = isqrt((approx.numerator * scale * scale) // approx.denominator)
    n = (n + 5000) // 10 ** 4
    whole, frac = divmod(n, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"
