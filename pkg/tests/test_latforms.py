import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from torusfill.latforms import (
    AlternatingIntMatrix,
    AlternatingSurdMatrix,
    BlowupClass,
    LatticeFormError,
    build_period_lattice,
    cone_contains,
    kahler_excluded,
    normalize_basis,
    polarization_type,
    verify_no_curves,
    _det_int,
    _integer_relation_exists,
)
from torusfill.surd import rat, rationally_independent, sqrt


def snf_paired_divisors(entries) -> tuple[int, ...]:
    """Independent oracle: elementary divisors of an antisymmetric integer
    matrix pair up as (d1, d1, d2, d2, ...); returns (d1, d2, ...)."""
    s = smith_normal_form(sympy.Matrix(entries), domain=sympy.ZZ)
    diag = sorted(abs(int(s[i, i])) for i in range(s.rows))
    assert all(d > 0 for d in diag)
    assert diag[0::2] == diag[1::2], "divisors did not pair up"
    return tuple(diag[0::2])


def random_alternating(rng, n, bound=20) -> AlternatingIntMatrix:
    while True:
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = rng.randint(-bound, bound)
                m[j][i] = -m[i][j]
        try:
            return AlternatingIntMatrix(m)
        except LatticeFormError:
            continue


def random_unimodular(rng, n) -> list[list[int]]:
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(12):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        for row in u:
            row[i] += k * row[j]
    return u


def test_polarization_examples():
    assert polarization_type(AlternatingIntMatrix.from_blocks([2, 3]))[0] == (1, 6)
    assert polarization_type(AlternatingIntMatrix.from_blocks([2, 4]))[0] == (2, 4)
    for n in (1, 2, 3):
        blocks = [1] * n
        assert polarization_type(AlternatingIntMatrix.from_blocks(blocks))[0] == tuple(blocks)


def test_polarization_matches_snf_oracle():
    rng = random.Random(20260810)
    for _ in range(40):
        b = random_alternating(rng, 4)
        divisors, u = polarization_type(b)
        assert abs(_det_int(u)) == 1
        assert divisors == snf_paired_divisors(b.entries)
    for _ in range(10):
        b = random_alternating(rng, 6)
        divisors, u = polarization_type(b)
        assert abs(_det_int(u)) == 1
        assert divisors == snf_paired_divisors(b.entries)


def test_polarization_conjugation_invariant():
    rng = random.Random(7)
    for _ in range(15):
        b = random_alternating(rng, 4)
        u = random_unimodular(rng, 4)
        conj = b.conjugated(u)
        assert polarization_type(b)[0] == polarization_type(conj)[0]


def test_alternating_matrix_validation():
    with pytest.raises(LatticeFormError):
        AlternatingIntMatrix([[0, 1], [1, 0]])
    with pytest.raises(LatticeFormError):
        AlternatingIntMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    with pytest.raises(LatticeFormError):  # degenerate
        AlternatingIntMatrix([[0, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 0]])


def test_surd_matrix_basics():
    b = AlternatingSurdMatrix([1, sqrt(2), 0, 0, 1, 1])
    assert b.entry(0, 1) == rat(1)
    assert b.entry(1, 0) == rat(-1)
    assert b.is_irrational()
    rational = AlternatingSurdMatrix([1, 2, 0, 0, 1, 1])
    assert not rational.is_irrational()
    ray = AlternatingSurdMatrix([sqrt(2), 2 * sqrt(2), 0, 0, sqrt(2), sqrt(2)])
    assert not ray.is_irrational()
    with pytest.raises(LatticeFormError):
        AlternatingSurdMatrix([1, 0, 0, 0, 0, 0])  # omega^2 = 0


def test_normalize_zero_pair_branch():
    b = AlternatingSurdMatrix([0, 1, sqrt(2), -1, -1, 0])
    res = normalize_basis(b)
    assert res.matrix.entry(0, 1).is_zero() and res.matrix.entry(2, 3).is_zero()
    assert res.matrix.volume_coefficient().sign() > 0


def test_normalize_transvection_mechanism():
    # b12 = 1, b34 = 1, b13 = sqrt 2: the transvection lambda2 += k lambda3
    # turns b12 into 1 + k sqrt 2 (k = 1 suffices) and leaves b34 alone
    b = AlternatingSurdMatrix([1, sqrt(2), 0, 0, 0, 1])
    u = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
    conj = b.conjugated(u)
    assert conj.entry(0, 1) == rat(1) + sqrt(2)
    assert conj.entry(2, 3) == rat(1)
    assert rationally_independent([conj.entry(0, 1), conj.entry(2, 3)])


def test_normalize_without_zero_pairing():
    # no pairing of indices has both entries zero, so the normalizer must
    # run the transvection branch of the general case
    b = AlternatingSurdMatrix([1, sqrt(2), 1, 5, 7, 1])
    res = normalize_basis(b)
    m = res.matrix
    b12, b34 = m.entry(0, 1), m.entry(2, 3)
    assert b12.sign() > 0 and b34.sign() > 0
    assert rationally_independent([b12, b34])
    vec = [m.entry(0, 2), m.entry(0, 3), m.entry(1, 2), m.entry(1, 3)]
    nonzero = [x for x in vec if not x.is_zero()]
    assert any(rationally_independent([nonzero[0], o]) for o in nonzero[1:])


def random_surd_matrix(rng) -> AlternatingSurdMatrix:
    rads = [1, 2, 3, 5]
    upper = []
    for _ in range(6):
        terms = []
        for r in rads:
            if rng.random() < 0.4:
                terms.append((r, Fraction(rng.randint(-4, 4))))
        upper.append(sum((rat(c) * sqrt(r) for r, c in terms), rat(0)))
    try:
        m = AlternatingSurdMatrix(upper)
    except LatticeFormError:
        return random_surd_matrix(rng)
    if not m.is_irrational():
        return random_surd_matrix(rng)
    return m


def test_normalize_postconditions_random():
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        b = random_surd_matrix(rng)
        res = normalize_basis(b)
        m = res.matrix
        assert m.volume_coefficient().sign() > 0
        assert (m.entry(0, 2) * m.entry(1, 3) - m.entry(0, 3) * m.entry(1, 2)).sign() > 0
        b12, b34 = m.entry(0, 1), m.entry(2, 3)
        assert (b12.is_zero() and b34.is_zero()) or (
            b12.sign() > 0 and b34.sign() > 0 and rationally_independent([b12, b34]))
        # conjugation really relates input and output
        assert b.conjugated(res.base_change).upper == m.upper
        assert abs(_det_int(res.base_change)) == 1
        checked += 1


def test_normalize_rejects_rational_input():
    with pytest.raises(LatticeFormError):
        normalize_basis(AlternatingSurdMatrix([1, 2, 0, 0, 1, 1]))


def test_volume_coefficient_sign_sl_invariant():
    rng = random.Random(3)
    b = random_surd_matrix(rng)
    for _ in range(10):
        u = random_unimodular(rng, 4)
        assert b.conjugated(u).volume_coefficient().sign() == \
            b.volume_coefficient().sign()


def test_period_lattice_base_point_identities():
    # independent off-block entries: the base point itself already works
    b = AlternatingSurdMatrix([0, 1 + sqrt(2), sqrt(3), -sqrt(6), 1, 0])
    res = normalize_basis(b)
    sol = build_period_lattice(res.matrix)
    m = res.matrix
    b13, b14 = m.entry(0, 2), m.entry(0, 3)
    b23, b24 = m.entry(1, 2), m.entry(1, 3)
    # compatibility holds by construction
    assert sol.r * b13 - sol.p * b14 == sol.q * b24 - sol.s * b23
    if (sol.p, sol.q, sol.r, sol.s) == (b13, b23, b14, b24):
        # first-shot base point: x = (b24 b13 - b23 b14) / D = 1
        assert sol.x == rat(1)
    assert sol.det.sign() > 0


def test_period_lattice_scaling_identity():
    b = AlternatingSurdMatrix([1, 1 + sqrt(2), sqrt(3), -sqrt(6), 1, sqrt(5)])
    res = normalize_basis(b)
    m = res.matrix
    if m.entry(0, 1).is_zero():
        pytest.skip("normalization chose the zero-pair branch")
    sol = build_period_lattice(m)
    assert not sol.zero_case
    # rho^2 D = b34 / b12, so the scaled quadruple satisfies ps - qr = b34/b12
    assert sol.rho_sq * sol.det == m.entry(2, 3) / m.entry(0, 1)
    assert sol.v == m.entry(0, 1)


def test_period_lattice_zero_case_rho():
    b = AlternatingSurdMatrix([0, 1, sqrt(2), -1, -1, 0])
    res = normalize_basis(b)
    sol = build_period_lattice(res.matrix)
    assert sol.zero_case and sol.v.is_zero()
    assert (sol.rho_sq * sol.det).is_irrational()
    assert len(sol.rho_decimal(50).split(".")[1]) == 50


def test_verify_no_curves_conditions():
    b = AlternatingSurdMatrix([0, 1, sqrt(2), -1, -1, 0])
    sol = build_period_lattice(normalize_basis(b).matrix)
    cert = verify_no_curves(sol)
    assert cert.ok
    assert set(cert.conditions) == {
        "rationally_independent", "ps_qr_irrational", "x_positive",
        "positivity", "compatibility", "integer_search"}
    assert cert.failed() == []


def test_integer_relation_search():
    assert _integer_relation_exists([rat(1), rat(2), rat(3), rat(-1)], 20)
    assert not _integer_relation_exists([rat(1), sqrt(2), sqrt(3), sqrt(6)], 20)
    # a zero value admits the obvious relation
    assert _integer_relation_exists([rat(21), rat(1), rat(0), sqrt(2)], 20)
    # relation with larger coefficients is invisible below its size
    assert not _integer_relation_exists([rat(21), rat(1), sqrt(2), sqrt(3)], 20)
    assert _integer_relation_exists([rat(21), rat(1), sqrt(2), sqrt(3)], 21)


def test_cone_predicates():
    c = BlowupClass(2, Fraction(7, 5))
    assert cone_contains(c)           # 1.96 < 2
    assert kahler_excluded(c)         # 7/5 > 4/3
    assert not cone_contains(BlowupClass(2, 0))
    assert not cone_contains(BlowupClass(2, sqrt(2)))  # boundary, not strict
    assert not kahler_excluded(BlowupClass(2, Fraction(4, 3)))
    with pytest.raises(LatticeFormError):
        kahler_excluded(BlowupClass(3, 1))
