"""Exact constructions and verification of symplectic fillings of 4-tori.

Exact surd arithmetic, planar regions and PL shears, lattice-quotient
injectivity certificates, the explicit ball/cube fillings, lattice normal
forms and period lattices, and the Pell/Seshadri filling bounds.
"""

from .surd import SurdScalar, rat, sqrt, rationally_independent
from .geom import AffineMap2, ConvexPolygon, Point2, Region, clip, pt
from .shears import PLFunction, Shear, ShearSequence, check_composable, induced_4d_check
from .torus import Lattice2, covered_fraction, injects, is_fundamental_domain
from .fillings import (
    DistortedDiamond,
    FillingCertificate,
    cube_filling,
    diamond,
    distorted_diamond,
    example_T2k2,
    example_eight_ninths,
    example_fortynine_fiftieths,
    family_filling,
    polydisc_filling,
    theorem1_filling,
)
from .latforms import (
    AlternatingIntMatrix,
    AlternatingSurdMatrix,
    BlowupClass,
    build_period_lattice,
    cone_contains,
    kahler_excluded,
    normalize_basis,
    polarization_type,
    verify_no_curves,
)
from .seshadri import (
    PellSolution,
    SeshadriBound,
    buser_sarnak,
    general_bounds,
    pell_min,
    special_values,
    surface_bound,
    table,
    width_filling_convert,
)

__version__ = "0.1.0"
