"""Linear symplectic forms on lattices.

Covers four jobs: the polarization type of an integral alternating form
(divisor chain d1 | d2 | ... with a unimodular base change to standard
blocks), the SL(4,Z) normalization of an irrational surd-valued form, the
construction of a period lattice whose complex torus carries the form as a
Kaehler form with no nonconstant compact holomorphic curves, and the
symplectic-cone / Kaehler-cone predicates for the one-point blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .surd import SurdScalar, decimal_sqrt, rat, rationally_independent, scalar


class LatticeFormError(ValueError):
    pass


class SearchExhausted(LatticeFormError):
    """The implemented normalization branches did not apply."""


# -- integer alternating matrices and polarization type -----------------------


def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class AlternatingIntMatrix:
    """Antisymmetric nondegenerate integer matrix of even size."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        m = [list(map(int, row)) for row in entries]
        self.n = len(m)
        if self.n % 2 or any(len(row) != self.n for row in m):
            raise LatticeFormError("need a square matrix of even size")
        for i in range(self.n):
            for j in range(self.n):
                if m[i][j] != -m[j][i]:
                    raise LatticeFormError("matrix is not antisymmetric")
        self.entries = m
        if not self._nondegenerate():
            raise LatticeFormError("matrix is degenerate")

    def _nondegenerate(self) -> bool:
        m = [[Fraction(x) for x in row] for row in self.entries]
        det = Fraction(1)
        for col in range(self.n):
            piv = next((r for r in range(col, self.n) if m[r][col]), None)
            if piv is None:
                return False
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, self.n):
                f = m[r][col] * inv
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return det != 0

    @classmethod
    def from_blocks(cls, diag: list[int]) -> "AlternatingIntMatrix":
        n = 2 * len(diag)
        m = [[0] * n for _ in range(n)]
        for i, d in enumerate(diag):
            m[2 * i][2 * i + 1] = d
            m[2 * i + 1][2 * i] = -d
        return cls(m)

    def conjugated(self, u: list[list[int]]) -> "AlternatingIntMatrix":
        n = self.n
        bu = [[sum(self.entries[i][k] * u[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        return AlternatingIntMatrix(
            [[sum(u[k][i] * bu[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)])


def polarization_type(b: AlternatingIntMatrix) -> tuple[tuple[int, ...], list[list[int]]]:
    """Divisor chain d1 | d2 | ... | dn and a unimodular base change.

    The returned matrix U satisfies U^T B U = blockdiag([[0, d_j], [-d_j, 0]]).
    Classical gcd reduction: bring the minimal positive value to a fixed pair,
    shrink it by transvections while any value it must divide resists, then
    split off the hyperbolic pair and recurse.
    """
    n = b.n
    m = [row[:] for row in b.entries]
    u = _ident(n)

    def basis_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        m[i], m[j] = m[j], m[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def basis_add(i, j, t):
        # lambda_i += t * lambda_j
        for row in m:
            row[i] += t * row[j]
        m[i] = [a + t * c for a, c in zip(m[i], m[j])]
        for row in u:
            row[i] += t * row[j]

    pairs: list[tuple[int, int, int]] = []
    active = list(range(n))
    while active:
        while True:
            i, j = min(
                ((i, j) for i in active for j in active if m[i][j]),
                key=lambda ij: abs(m[ij[0]][ij[1]]),
            )
            if m[i][j] < 0:
                i, j = j, i
            d = m[i][j]
            restart = False
            for k in active:
                if k in (i, j):
                    continue
                if m[i][k] % d:
                    basis_add(k, j, -(m[i][k] // d))
                    restart = True
                    break
                if m[j][k] % d:
                    basis_add(k, i, m[j][k] // d)
                    restart = True
                    break
            if restart:
                continue
            for k in active:
                if k in (i, j):
                    continue
                basis_add(k, j, -(m[i][k] // d))
                basis_add(k, i, m[j][k] // d)
            rest = [k for k in active if k not in (i, j)]
            off = next(
                ((k, l) for k in rest for l in rest if m[k][l] % d),
                None,
            )
            if off is None:
                pairs.append((d, i, j))
                active = rest
                break
            basis_add(i, off[0], 1)

    order = [idx for _, i, j in pairs for idx in (i, j)]
    perm = [[int(order[c] == r) for c in range(n)] for r in range(n)]
    u_final = [[sum(u[r][k] * perm[k][c] for k in range(n)) for c in range(n)]
               for r in range(n)]
    divisors = tuple(d for d, _, _ in pairs)
    check = b.conjugated(u_final)
    expect = AlternatingIntMatrix.from_blocks(list(divisors))
    if check.entries != expect.entries:
        raise LatticeFormError("internal error: base change does not normalize")
    for a, c in zip(divisors, divisors[1:]):
        if c % a:
            raise LatticeFormError("internal error: divisor chain violated")
    return divisors, u_final


# -- surd alternating 4x4 matrices ---------------------------------------------

UPPER_INDEX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class AlternatingSurdMatrix:
    """Antisymmetric 4x4 matrix with surd entries, nondegenerate."""

    __slots__ = ("m",)

    def __init__(self, upper):
        up = [scalar(x) for x in upper]
        if len(up) != 6:
            raise LatticeFormError("need the 6 strict upper-triangle entries")
        self.m = [[rat(0) for _ in range(4)] for _ in range(4)]
        for (i, j), x in zip(UPPER_INDEX, up):
            self.m[i][j] = x
            self.m[j][i] = -x
        if self.volume_coefficient().is_zero():
            raise LatticeFormError("form is degenerate")

    def entry(self, i: int, j: int) -> SurdScalar:
        return self.m[i][j]

    @property
    def upper(self) -> list[SurdScalar]:
        return [self.m[i][j] for i, j in UPPER_INDEX]

    def volume_coefficient(self) -> SurdScalar:
        """Coefficient of omega^wedge^2 against l1* ^ l3* ^ l2* ^ l4*."""
        b = self.m
        return b[0][2] * b[1][3] - b[0][3] * b[1][2] - b[0][1] * b[2][3]

    def is_irrational(self) -> bool:
        """True iff the six entries do not all lie on a single rational ray."""
        nonzero = [x for x in self.upper if not x.is_zero()]
        if not nonzero:
            return False
        if len(nonzero) == 1:
            return False
        return any(rationally_independent([nonzero[0], other])
                   for other in nonzero[1:])

    def conjugated(self, u: list[list[int]]) -> "AlternatingSurdMatrix":
        bu = [[sum((self.m[i][k] * u[k][j] for k in range(4)), rat(0))
               for j in range(4)] for i in range(4)]
        full = [[sum((rat(u[k][i]) * bu[k][j] for k in range(4)), rat(0))
                 for j in range(4)] for i in range(4)]
        return AlternatingSurdMatrix([full[i][j] for i, j in UPPER_INDEX])

    def to_json(self):
        return {"n": 2, "upper": [x.to_triples() for x in self.upper]}

    @classmethod
    def from_json(cls, data):
        return cls([SurdScalar.from_triples(x) for x in data["upper"]])


def _mat_mul_int(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _det_int(a) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    n = len(m)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return int(det)


def _perm_matrix(perm) -> list[list[int]]:
    # column j of the matrix is e_{perm[j]}: new basis vector j = old perm[j]
    return [[int(perm[j] == i) for j in range(4)] for i in range(4)]


def _transvection(target: int, source: int, k: int) -> list[list[int]]:
    # lambda_target += k * lambda_source
    u = _ident(4)
    u[source][target] = k
    return u


@dataclass
class NormalizationResult:
    matrix: AlternatingSurdMatrix
    base_change: list[list[int]]
    determinant: int


def _condition_i(b: AlternatingSurdMatrix) -> bool:
    b12, b34 = b.entry(0, 1), b.entry(2, 3)
    if b12.is_zero() and b34.is_zero():
        return True
    if b12.is_zero() or b34.is_zero():
        return False
    return (b12.sign() > 0 and b34.sign() > 0
            and rationally_independent([b12, b34]))


def _condition_ii(b: AlternatingSurdMatrix) -> bool:
    vec = [b.entry(0, 2), b.entry(0, 3), b.entry(1, 2), b.entry(1, 3)]
    nonzero = [x for x in vec if not x.is_zero()]
    if not nonzero:
        return False
    return any(rationally_independent([nonzero[0], other]) for other in nonzero[1:])


def _postconditions_hold(b: AlternatingSurdMatrix) -> bool:
    return (_condition_i(b) and _condition_ii(b)
            and b.volume_coefficient().sign() > 0
            and (b.entry(0, 2) * b.entry(1, 3) - b.entry(0, 3) * b.entry(1, 2)).sign() > 0)


def normalize_basis(b: AlternatingSurdMatrix, k_range: int = 10) -> NormalizationResult:
    """Normalize an irrational form per the two-condition contract.

    After a unimodular base change the returned matrix B' has (i) b'_12 and
    b'_34 either both zero or rationally independent and positive, and (ii)
    (b'_13, b'_14, b'_23, b'_24) not a multiple of a rational vector, with
    b'_13 b'_24 - b'_14 b'_23 > 0.  The base change has determinant +1 except
    when the input orientation (sign of the omega^2 coefficient) must be
    reversed first, in which case a single determinant -1 relabeling is
    absorbed into the returned matrix.
    """
    if not b.is_irrational():
        raise LatticeFormError("form is rational; normalization needs an irrational form")

    candidates: list[list[list[int]]] = []
    for perm in permutations(range(4)):
        candidates.append(_perm_matrix(perm))

    transvections: list[list[list[int]]] = [_ident(4)]
    for target, source in ((1, 2), (1, 3), (3, 0), (2, 0), (3, 1), (2, 1), (0, 2), (0, 3)):
        for k in range(-k_range, k_range + 1):
            if k:
                transvections.append(_transvection(target, source, k))

    # pass 1: permutation only; pass 2: permutation then one transvection;
    # pass 3: permutation then two transvections (condition fixes compose)
    for u0 in candidates:
        b0 = b.conjugated(u0)
        if b0.volume_coefficient().sign() <= 0:
            continue
        if _postconditions_hold(b0):
            return NormalizationResult(b0, u0, _det_int(u0))
    for u0 in candidates:
        b0 = b.conjugated(u0)
        if b0.volume_coefficient().sign() <= 0:
            continue
        for t1 in transvections[1:]:
            b1 = b0.conjugated(t1)
            if _postconditions_hold(b1):
                return NormalizationResult(b1, _mat_mul_int(u0, t1), _det_int(u0))
    for u0 in candidates:
        b0 = b.conjugated(u0)
        if b0.volume_coefficient().sign() <= 0:
            continue
        for t1 in transvections:
            b1 = b0.conjugated(t1)
            if not _condition_i(b1):
                continue
            for t2 in transvections[1:]:
                b2 = b1.conjugated(t2)
                if _postconditions_hold(b2):
                    u = _mat_mul_int(_mat_mul_int(u0, t1), t2)
                    return NormalizationResult(b2, u, _det_int(u0))
    raise SearchExhausted(
        "no combination of the implemented permutation/transvection branches "
        f"normalized the form (search range {k_range})")


# -- period lattice construction ----------------------------------------------


def _fresh_prime(used_radicands) -> int:
    primes_used: set[int] = set()
    for r in used_radicands:
        rr, d = r, 2
        while d * d <= rr:
            if rr % d == 0:
                primes_used.add(d)
                while rr % d == 0:
                    rr //= d
            d += 1
        if rr > 1:
            primes_used.add(rr)
    p = 2
    while True:
        if p not in primes_used and all(p % q for q in range(2, p)):
            return p
        p += 1


def _rational_relations(values: list[SurdScalar]) -> list[list[Fraction]]:
    """Basis of the rational left-kernel: vectors n with sum n_i * values_i = 0."""
    cols = sorted(set().union(*[v.radicands for v in values]) or {1})
    rows = [[v.coefficient(c) for c in cols] for v in values]
    # kernel of rows^T * n = 0  <=>  n in null space of the matrix with
    # columns indexed by radicands
    m = [[rows[i][j] for i in range(len(values))] for j in range(len(cols))]
    n = len(values)
    # gaussian elimination on m (len(cols) x n), find the null space
    mat = [row[:] for row in m]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * bb for a, bb in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


@dataclass
class PeriodLatticeSolution:
    """Unscaled solution of the period-lattice equations.

    The actual lattice coefficients are rho * (p, q, r, s) with
    rho = sqrt(rho_sq); rho itself may leave the surd ring, so all stored
    quantities are rho-squared expressible.
    """

    b: AlternatingSurdMatrix
    p: SurdScalar
    q: SurdScalar
    r: SurdScalar
    s: SurdScalar
    x: SurdScalar
    y: SurdScalar
    u: SurdScalar
    v: SurdScalar
    rho_sq: SurdScalar
    zero_case: bool  # True when b12 = b34 = 0 (v = 0)
    fresh_radicals: list[int] = field(default_factory=list)

    @property
    def det(self) -> SurdScalar:
        return self.p * self.s - self.q * self.r

    def rho_decimal(self, digits: int = 50) -> str:
        return decimal_sqrt(self.rho_sq, digits)

    def to_json(self):
        return {
            "p": self.p.to_triples(), "q": self.q.to_triples(),
            "r": self.r.to_triples(), "s": self.s.to_triples(),
            "x": self.x.to_triples(), "y": self.y.to_triples(),
            "u": self.u.to_triples(), "v": self.v.to_triples(),
            "rho_sq": self.rho_sq.to_triples(),
            "rho_decimal_50": self.rho_decimal(50),
            "zero_case": self.zero_case,
            "fresh_radicals": self.fresh_radicals,
            "D": self.det.to_triples(),
        }


def build_period_lattice(b: AlternatingSurdMatrix, max_rounds: int = 8) -> PeriodLatticeSolution:
    """Solve the six period equations for a normalized form.

    Starts from the feasible base point (p, q, r, s) = (b13, b23, b14, b24),
    perturbs it inside the compatibility hyperplane with fresh-radical
    directions until the quadruple is rationally independent, then reads off
    (x, y, u) by the closed formulas and fixes v and rho^2 by case.
    """
    b12, b13, b14 = b.entry(0, 1), b.entry(0, 2), b.entry(0, 3)
    b23, b24, b34 = b.entry(1, 2), b.entry(1, 3), b.entry(2, 3)
    if not _condition_i(b) or not _condition_ii(b):
        raise LatticeFormError("input must satisfy the normalization contract")

    p, q, r, s = b13, b23, b14, b24
    used = set()
    for val in (b12, b13, b14, b23, b24, b34):
        used |= val.radicands
    fresh_used: list[int] = []

    def in_open_set(pp, qq, rr, ss) -> bool:
        return ((ss * b13 - qq * b14).sign() > 0
                and (pp * ss - qq * rr).sign() > 0)

    if not in_open_set(p, q, r, s):
        raise LatticeFormError("base point violates the open-set conditions")

    directions = [
        (b13, rat(0), b14, rat(0)),
        (rat(0), b23, rat(0), b24),
        (b24, -b14, rat(0), rat(0)),
        (rat(0), rat(0), b23, -b13),
        (b23, rat(0), rat(0), b14),
        (rat(0), b13, b24, rat(0)),
    ]

    rounds = 0
    while not rationally_independent([p, q, r, s]):
        rounds += 1
        if rounds > max_rounds:
            raise SearchExhausted("perturbation search exhausted")
        relations = _rational_relations([p, q, r, s])
        moved = False
        for rel in relations:
            for w in directions:
                pairing = sum((rat(c) * wi for c, wi in zip(rel, w)), rat(0))
                if pairing.is_zero():
                    continue
                prime = _fresh_prime(used)
                radical = SurdScalar.sqrt_int(prime)
                t = rat(1)
                for _ in range(64):
                    cand = [old + t * radical * wi
                            for old, wi in zip((p, q, r, s), w)]
                    if in_open_set(*cand):
                        break
                    t = t / 2
                else:
                    continue
                p, q, r, s = cand
                used.add(prime)
                fresh_used.append(prime)
                moved = True
                break
            if moved:
                break
        if not moved:
            raise SearchExhausted("no perturbation direction kills the relations")

    d = p * s - q * r
    x = (s * b13 - q * b14) / d
    y = (p * b24 - r * b23) / d
    u = (p * b14 - r * b13) / d
    if u != (s * b23 - q * b24) / d:
        raise LatticeFormError("compatibility violated after perturbation")

    if b12.is_zero() and b34.is_zero():
        prime = _fresh_prime(used)
        rho_sq = SurdScalar.sqrt_int(prime)
        fresh_used.append(prime)
        if not (rho_sq * d).is_irrational():
            raise LatticeFormError("fresh radical failed to make rho^2 * D irrational")
        return PeriodLatticeSolution(b, p, q, r, s, x, y, u, rat(0), rho_sq,
                                     True, fresh_used)
    v = b12
    rho_sq = b34 / (b12 * d)
    return PeriodLatticeSolution(b, p, q, r, s, x, y, u, v, rho_sq,
                                 False, fresh_used)


@dataclass
class NoCurvesCertificate:
    conditions: dict[str, bool]
    search_bound: int

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]

    def to_json(self):
        return {"ok": self.ok, "conditions": self.conditions,
                "search_bound": self.search_bound}


def _integer_relation_exists(values: list[SurdScalar], bound: int) -> bool:
    """Any nonzero integer vector n with |n_i| <= bound and sum n_i v_i = 0?

    The coefficient matrix over the radicand basis is cleared to integers and
    the full grid is scanned with vectorized exact integer arithmetic.
    """
    cols = sorted(set().union(*[v.radicands for v in values]) or {1})
    rows = [[v.coefficient(c) for c in cols] for v in values]
    mat = []
    for j in range(len(cols)):
        column = [rows[i][j] for i in range(len(values))]
        denom = 1
        for f in column:
            denom = denom * f.denominator // np.gcd(denom, f.denominator)
        mat.append([int(f * denom) for f in column])
    max_entry = max((abs(int(e)) for row in mat for e in row), default=0)
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    if max_entry * bound * len(values) < 2 ** 62:
        mask = None
        for col in mat:
            acc = (col[0] * rng[:, None, None, None]
                   + col[1] * rng[None, :, None, None]
                   + col[2] * rng[None, None, :, None]
                   + col[3] * rng[None, None, None, :])
            zero = acc == 0
            mask = zero if mask is None else (mask & zero)
            if not mask.any():
                return False
        mask[bound, bound, bound, bound] = False
        return bool(mask.any())
    # exact fallback for oversized coefficients
    for n1 in rng:
        for n2 in rng:
            for n3 in rng:
                for n4 in rng:
                    if not (n1 or n2 or n3 or n4):
                        continue
                    if all(int(n1) * mat_c[0] + int(n2) * mat_c[1]
                           + int(n3) * mat_c[2] + int(n4) * mat_c[3] == 0
                           for mat_c in mat):
                        return True
    return False


def verify_no_curves(sol: PeriodLatticeSolution, bound: int = 20) -> NoCurvesCertificate:
    """Certify the no-holomorphic-curves conditions for a solution.

    Named checks: rational independence of (p, q, r, s); irrationality of
    p s - q r (in its rho^2-scaled form); positivity x > 0 and
    x y - u^2 - v^2 > 0 (checked rho^2-exactly); the compatibility equation;
    and a bounded brute-force integer-relation search on the elimination
    identity -n1 r + n2 p - n3 s + n4 q = 0 that any integral class would
    have to satisfy.
    """
    b = sol.b
    b13, b14 = b.entry(0, 2), b.entry(0, 3)
    b23, b24 = b.entry(1, 2), b.entry(1, 3)
    conditions = {
        "rationally_independent": rationally_independent([sol.p, sol.q, sol.r, sol.s]),
        "ps_qr_irrational": (sol.rho_sq * sol.det).is_irrational(),
        "x_positive": sol.x.sign() > 0,
        "positivity": ((sol.x * sol.y - sol.u * sol.u) / sol.rho_sq
                       - sol.v * sol.v).sign() > 0,
        "compatibility": sol.r * b13 - sol.p * b14 == sol.q * b24 - sol.s * b23,
        "integer_search": not _integer_relation_exists(
            [-sol.r, sol.p, -sol.s, sol.q], bound),
    }
    return NoCurvesCertificate(conditions, bound)


# -- blow-up cone predicates ---------------------------------------------------


@dataclass
class BlowupClass:
    """Class pi* beta - a * PD(E) on the one-point blow-up, via beta^2 and a."""

    beta_square: SurdScalar
    a: SurdScalar

    def __post_init__(self):
        self.beta_square = scalar(self.beta_square)
        self.a = scalar(self.a)


def cone_contains(c: BlowupClass) -> bool:
    """Symplectic-cone membership: alpha^2 > 0 and alpha(E) != 0."""
    return (not c.a.is_zero()) and (c.beta_square - c.a * c.a).sign() > 0


def kahler_excluded(c: BlowupClass) -> bool:
    """No Kaehler representative on the blow-up of the standard torus.

    Only meaningful for the principal class (beta^2 = 2): the Seshadri bound
    caps the exceptional coefficient of a Kaehler class at 4/3.
    """
    if c.beta_square != rat(2):
        raise LatticeFormError("kahler_excluded applies to the beta^2 = 2 class")
    return (c.a - rat(Fraction(4, 3))).sign() > 0
