from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusfill.fillings import (
    DistortedDiamond,
    FillingError,
    cube_filling,
    diamond,
    distorted_diamond,
    example_T2k2,
    example_eight_ninths,
    example_fortynine_fiftieths,
    family_filling,
    polydisc_filling,
    theorem1_constants,
    theorem1_filling,
)
from torusfill.geom import (
    AffineMap2,
    ConvexPolygon,
    Region,
    pt,
    region_overlap_area,
    symmetric_difference_area,
)
from torusfill.shears import ShearSequence, check_composable
from torusfill.surd import rat, sqrt
from torusfill.torus import Lattice2, injects


def test_diamond_basics():
    assert diamond(2).area() == rat(2)
    assert diamond(Fraction(4, 3)).area() == rat(Fraction(8, 9))
    assert diamond(sqrt(2)).area() == rat(1)
    verts = diamond(2).pieces[0].vertices
    assert pt(1, 0) in verts and pt(0, 1) in verts and pt(-1, 0) in verts
    with pytest.raises(FillingError):
        diamond(0)


def test_distorted_diamond_area_and_validation():
    sym = DistortedDiamond.symmetric(2)
    assert distorted_diamond(sym).area() == rat(2)
    b = rat(3) - 2 * sqrt(2)
    spec = DistortedDiamond(
        sqrt(2),
        h_top=rat(1) - sqrt(2) / 2, h_bot=3 * sqrt(2) / 2 - 2,
        w_left=(1 + b) / 2, w_right=(1 - b) / 2,
    )
    assert spec.w_right == (1 - b) / 2
    assert distorted_diamond(spec).area() == rat(1)  # a^2/2 for a = sqrt 2
    with pytest.raises(FillingError):
        DistortedDiamond(2, h_top=1, h_bot=1, w_left=1, w_right=1)
    with pytest.raises(FillingError):
        DistortedDiamond(2, h_top=2, h_bot=-1, w_left=Fraction(1, 2),
                         w_right=Fraction(1, 2))


@given(st.integers(2, 8), st.integers(0, 10), st.integers(0, 10))
@settings(max_examples=30, deadline=None)
def test_distorted_diamond_area_formula(a_num, t_part, w_part):
    a = Fraction(a_num, 2) + Fraction(1, 2)  # sizes in (1, 9/2]
    h_total = a - 1
    h_top = h_total * Fraction(t_part, 10)
    w_left = Fraction(w_part, 10)
    spec = DistortedDiamond(a, h_top=h_top, h_bot=h_total - h_top,
                            w_left=w_left, w_right=1 - w_left)
    region = spec.region()
    region.validate()
    assert region.area() == rat(a) * rat(a) / 2


def test_example1_k1_parallelogram():
    cert = example_T2k2(1)
    expected = ConvexPolygon([pt(-1, 0), pt(1, 1), pt(1, 0), pt(-1, -1)])
    assert symmetric_difference_area(cert.final, Region([expected])).is_zero()
    assert cert.valid and cert.fraction == rat(1) and cert.is_fundamental_domain


def test_example1_k3_vertices_and_fraction():
    cert = example_T2k2(3)
    verts = cert.final.pieces[0].vertices
    for v in (pt(-3, 0), pt(3, 0), pt(15, 3), pt(-15, -3)):
        assert v in verts
    assert cert.fraction == rat(1)
    assert cert.lattice.covolume() == rat(18)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_example1_long_edges_vertical_distance_one(k):
    cert = example_T2k2(k)
    verts = set(cert.final.pieces[0].vertices)
    # top edge through (-k, 0) and (2k^2-k, k); bottom edge through
    # (-2k^2+k, -k) and (k, 0); at x1 = 0 their heights differ by exactly 1
    top = [pt(-k, 0), pt(2 * k * k - k, k)]
    bot = [pt(-2 * k * k + k, -k), pt(k, 0)]
    assert all(v in verts for v in top + bot)
    slope = (top[1].x2 - top[0].x2) / (top[1].x1 - top[0].x1)
    top_at0 = top[0].x2 - slope * top[0].x1
    bot_at0 = bot[0].x2 - slope * bot[0].x1
    assert top_at0 - bot_at0 == rat(1)


@pytest.mark.parametrize("orientation", ["++", "+-", "-+", "--"])
def test_example2_schematic(orientation):
    cert = example_eight_ninths(0, orientation)
    assert cert.valid
    assert cert.fraction == rat(Fraction(8, 9))
    uncovered = rat(1) - cert.fraction
    assert uncovered == 4 * rat(Fraction(1, 6)) ** 2


def test_example2_point_reflection_pair():
    plus = example_eight_ninths(0, "++").final
    minus = example_eight_ninths(0, "--").final
    reflect = AffineMap2(((-1, 0), (0, -1)), pt(0, 0))
    assert symmetric_difference_area(reflect.apply_region(plus), minus).is_zero()


def test_example2_eps_variants():
    cert = example_eight_ninths(Fraction(1, 100), "++")
    assert cert.valid
    assert cert.fraction >= rat(Fraction(83, 100))
    eps = Fraction(1, 100)
    assert cert.fraction == rat((Fraction(4, 3) - eps) ** 2 / 2)
    assert cert.fraction >= rat(Fraction(8, 9) - 5 * eps)
    with pytest.raises(FillingError):
        example_eight_ninths(Fraction(1, 10), "++")
    with pytest.raises(FillingError):
        example_eight_ninths(0, "+*")


def test_example3_schematic():
    cert = example_fortynine_fiftieths(0)
    assert cert.valid
    assert cert.fraction == rat(Fraction(49, 50))
    assert rat(1) - cert.fraction == rat(Fraction(1, 50))
    # ball-volume consistency: a^2/2 equals the covered fraction
    assert cert.source_area == rat(Fraction(49, 50))


def test_example3_fitting_and_freed_triangles():
    cert = example_fortynine_fiftieths(0)
    # the sheared top triangle: width 2/5, height 1/5 (the "fitting" one)
    fitting = ConvexPolygon([pt(Fraction(-2, 5), 1), pt(0, 1),
                             pt(Fraction(-1, 10), Fraction(6, 5))])
    assert any(p == fitting for p in cert.final.pieces)
    # the uncovered set is exactly two triangle-pairs of total area 1/50:
    # each pair is (freed width 1/2) minus (fitting width 2/5) at height 1/5
    gap_bottom = ConvexPolygon([pt(Fraction(1, 2), 0), pt(Fraction(3, 5), 0),
                                pt(Fraction(9, 10), Fraction(1, 5))])
    gap_top = ConvexPolygon([pt(Fraction(4, 5), 1), pt(Fraction(9, 10), 1),
                             pt(Fraction(1, 2), Fraction(4, 5))])
    gaps = Region([gap_bottom, gap_top])
    assert gaps.area() == rat(Fraction(1, 50))
    lattice = Lattice2.rectangular(1, 1)
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            shifted = cert.final.translate(lattice.vector(a, b))
            assert region_overlap_area(gaps, shifted).is_zero()


def test_example3_eps_variant_and_bounds():
    cert = example_fortynine_fiftieths(Fraction(1, 100))
    assert cert.valid
    assert cert.fraction == rat((Fraction(7, 5) - Fraction(1, 100)) ** 2 / 2)
    with pytest.raises(FillingError):
        example_fortynine_fiftieths(Fraction(1, 20))


def test_theorem1_identities():
    c = theorem1_constants()
    b = c["b"]
    assert (b * b - 6 * b + 1).is_zero()
    assert c["h_t"] == rat(1) - sqrt(2) / 2
    assert c["h_b"] == 3 * sqrt(2) / 2 - 2
    assert c["h_t"] + c["h_b"] == (1 - b) / 2
    assert c["h_t"] + c["h_b"] == 2 * b / (1 - b)
    assert rat(1) - c["ell"] == 2 * b / (1 - b)
    # numeric spot checks of the closed forms
    assert c["h_t"].decimal(5) == "0.29289"
    assert c["h_b"].decimal(5) == "0.12132"
    assert (c["h_t"] + c["h_b"]).decimal(5) == "0.41421"


def test_theorem1_schematic_full_filling():
    cert = theorem1_filling(0)
    assert cert.valid
    assert all(cert.identities.values())
    assert cert.fraction == rat(1)
    assert cert.is_fundamental_domain
    assert cert.source_area == rat(1)  # a^2/2 for a = sqrt 2
    # re-checkable: the recorded final region still injects and tiles
    assert injects(cert.final, cert.lattice).ok
    assert check_composable(cert.sequence).ok


def test_theorem1_eps_sequence():
    fractions = []
    for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        cert = theorem1_filling(eps)
        assert cert.valid
        fractions.append(cert.fraction)
    assert fractions[0] < fractions[1] < fractions[2]
    assert fractions[2] >= rat(Fraction(99, 100))
    with pytest.raises(FillingError):
        theorem1_filling(Fraction(1, 4))


def test_theorem1_ball_volume_consistency():
    for eps in (0, Fraction(1, 100)):
        cert = theorem1_filling(eps)
        assert cert.fraction * cert.lattice.covolume() == cert.source_area


@pytest.mark.parametrize("k", [1, 2, 3])
def test_family_full_fillings(k):
    cert = family_filling(k)
    assert cert.valid
    assert cert.fraction == rat(1)
    assert cert.is_fundamental_domain
    mu = Fraction((2 * k + 1) ** 2, 2 * (k + 1) ** 2)
    assert cert.lattice.covolume() == rat(mu)
    assert cert.source_area == rat(mu)


def test_family_k1_is_the_nine_eighths_filling():
    cert = family_filling(1)
    assert cert.lattice.covolume() == rat(Fraction(9, 8))


def test_family_k2_slice_heights():
    cert = family_filling(2)
    x1 = next(s for s in cert.sequence.shears if s.axis == "x1")
    tops = [b for b in x1.f.breakpoints if b >= rat(1)]
    # slice boundaries above x2 = 1 at cumulative heights 1/9, then the apex
    assert tops == [rat(1), rat(1) + rat(Fraction(1, 9))]
    heights = [Fraction(1, 9), Fraction(2, 9)]
    assert sum(heights, Fraction(0)) == Fraction(1, 3)  # triangle height d/2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cube_fillings(k):
    cert = cube_filling(k)
    assert cert.valid
    assert cert.is_fundamental_domain
    assert cert.lattice.covolume() == rat(k * k)


def test_cube_k2_span():
    cert = cube_filling(2)
    x_lo, x_hi, _, _ = cert.final.bounding_box()
    assert (x_lo, x_hi) == (rat(-3), rat(3))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_polydisc_fillings(k):
    cert = polydisc_filling(k)
    assert cert.valid
    assert cert.fraction == rat(1)
    assert cert.lattice.covolume() == rat(1)


def test_eps_monotonicity_within_ranges():
    for ctor, eps_values in [
        (example_eight_ninths, (Fraction(1, 20), Fraction(1, 100), Fraction(1, 1000))),
        (example_fortynine_fiftieths, (Fraction(1, 30), Fraction(1, 100), Fraction(1, 1000))),
    ]:
        fracs = [ctor(eps).fraction for eps in eps_values]
        assert fracs[0] < fracs[1] < fracs[2]


def test_certificate_json_round_trip():
    cert = example_fortynine_fiftieths(0)
    blob = cert.to_json()
    assert blob["valid"] and blob["is_fundamental_domain"] is False
    seq = ShearSequence.from_json({"shears": blob["shears"], "source": blob["source"]})
    final = seq.final_region()
    assert symmetric_difference_area(final, cert.final).is_zero()
    again = Region.from_json(blob["final"])
    assert symmetric_difference_area(again, cert.final).is_zero()


def test_invalid_parameters():
    for ctor in (example_T2k2, family_filling, cube_filling, polydisc_filling):
        with pytest.raises(FillingError):
            ctor(0)


@pytest.mark.parametrize("ctor,eps", [
    (example_eight_ninths, Fraction(99, 1000)),
    (example_fortynine_fiftieths, Fraction(1, 21)),
    (theorem1_filling, Fraction(1, 8)),
])
def test_constructions_valid_at_domain_edges(ctor, eps):
    cert = ctor(eps)
    assert cert.valid


def test_family_generalizes_beyond_small_k():
    cert = family_filling(5)
    assert cert.valid and cert.is_fundamental_domain
    assert cert.lattice.covolume() == rat(Fraction(121, 72))
