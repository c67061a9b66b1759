"""Piecewise-linear shears of the plane and their 4-dimensional lifts.

An x1-shear (x1, x2) -> (x1 + f(x2), x2) lifts to the cotangent map
(x1, x2, y1, y2) -> (x1 + f(x2), x2, y1, y2 - f'(x2) y1), which is a
symplectomorphism on every slab where f is affine; the x2-shear
(x1, x2) -> (x1, x2 + g(x1)) lifts to (x1, x2 + g(x1), y1 - g'(x1) y2, y2).

Profiles are piecewise linear.  In schematic mode a profile may carry jump
discontinuities at breakpoints (the width-zero limit of a steep ramp band);
regions are open and pieces are split along breakpoint lines, so every piece
is mapped by a single affine map and the per-slab symplecticity of the lift
is unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .surd import SurdScalar, rat, scalar
from .geom import (
    AffineMap2,
    ConvexPolygon,
    Point2,
    Region,
    clip_halfplane,
    pt,
)


class ShearError(ValueError):
    pass


class PLFunction:
    """Piecewise-linear function given by breakpoints, slopes and an anchor.

    slopes has one more entry than breakpoints; slab i is the open interval
    (breakpoints[i-1], breakpoints[i]).  jumps[i] is the discontinuity
    f(b_i+) - f(b_i-) at breakpoint i (all zero for a genuine PL function).
    The anchor (x0, f(x0)) fixes the additive constant; x0 must not be a
    breakpoint.
    """

    __slots__ = ("breakpoints", "slopes", "jumps", "anchor", "_consts")

    def __init__(self, breakpoints, slopes, anchor=(0, 0), jumps=None):
        self.breakpoints = [scalar(b) for b in breakpoints]
        self.slopes = [scalar(s) for s in slopes]
        self.jumps = [scalar(j) for j in (jumps or [0] * len(self.breakpoints))]
        x0, y0 = anchor
        self.anchor = (scalar(x0), scalar(y0))
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ShearError("need exactly one more slope than breakpoints")
        if len(self.jumps) != len(self.breakpoints):
            raise ShearError("need exactly one jump per breakpoint")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if (b - a).sign() <= 0:
                raise ShearError("breakpoints must be strictly increasing")
        self._consts = self._build_consts()

    @classmethod
    def constant(cls, value) -> "PLFunction":
        return cls([], [0], anchor=(0, value))

    @classmethod
    def linear(cls, slope, value_at_zero=0) -> "PLFunction":
        return cls([], [slope], anchor=(0, value_at_zero))

    def _build_consts(self) -> list[SurdScalar]:
        x0, y0 = self.anchor
        k = self._slab_index(x0)
        if any(x0 == b for b in self.breakpoints):
            raise ShearError("anchor must not sit on a breakpoint")
        consts: list[SurdScalar | None] = [None] * len(self.slopes)
        consts[k] = y0 - self.slopes[k] * x0
        for i in range(k, len(self.breakpoints)):
            b = self.breakpoints[i]
            left = consts[i] + self.slopes[i] * b
            consts[i + 1] = left + self.jumps[i] - self.slopes[i + 1] * b
        for i in range(k - 1, -1, -1):
            b = self.breakpoints[i]
            right = consts[i + 1] + self.slopes[i + 1] * b
            consts[i] = right - self.jumps[i] - self.slopes[i] * b
        return consts

    def _slab_index(self, x: SurdScalar) -> int:
        lo, hi = 0, len(self.breakpoints)
        while lo < hi:
            mid = (lo + hi) // 2
            if (x - self.breakpoints[mid]).sign() < 0:
                hi = mid
            else:
                lo = mid + 1
        return lo

    @property
    def num_slabs(self) -> int:
        return len(self.slopes)

    def slab_bounds(self, i: int):
        lo = self.breakpoints[i - 1] if i > 0 else None
        hi = self.breakpoints[i] if i < len(self.breakpoints) else None
        return lo, hi

    def slab_affine(self, i: int) -> tuple[SurdScalar, SurdScalar]:
        """(constant, slope) of f on slab i."""
        return self._consts[i], self.slopes[i]

    def slab_is_identity(self, i: int) -> bool:
        return self._consts[i].is_zero() and self.slopes[i].is_zero()

    def value(self, x) -> SurdScalar:
        """f(x); at a breakpoint the right-hand slab is used."""
        x = scalar(x)
        i = self._slab_index(x)
        c, s = self.slab_affine(i)
        return c + s * x

    def is_continuous(self) -> bool:
        return all(j.is_zero() for j in self.jumps)

    def is_unit_profile(self) -> bool:
        """Continuous and nondecreasing with slopes in [0, 1] (a u+/v+ profile)."""
        return self.is_continuous() and all(
            s.sign() >= 0 and (s - 1).sign() <= 0 for s in self.slopes)

    def to_json(self):
        data = {
            "breakpoints": [b.to_triples() for b in self.breakpoints],
            "slopes": [s.to_triples() for s in self.slopes],
            "anchor": [self.anchor[0].to_triples(), self.anchor[1].to_triples()],
        }
        if not self.is_continuous():
            data["jumps"] = [j.to_triples() for j in self.jumps]
        return data

    @classmethod
    def from_json(cls, data) -> "PLFunction":
        return cls(
            [SurdScalar.from_triples(b) for b in data["breakpoints"]],
            [SurdScalar.from_triples(s) for s in data["slopes"]],
            anchor=(
                SurdScalar.from_triples(data["anchor"][0]),
                SurdScalar.from_triples(data["anchor"][1]),
            ),
            jumps=[SurdScalar.from_triples(j) for j in data.get("jumps", [])] or None,
        )


@dataclass
class Shear:
    """A planar PL shear along one axis, with its induced 4D symplectomorphism."""

    axis: str  # "x1": x1 += f(x2);  "x2": x2 += f(x1)
    f: PLFunction

    def __post_init__(self):
        if self.axis not in ("x1", "x2"):
            raise ShearError(f"axis must be 'x1' or 'x2', got {self.axis!r}")

    def slab_plane_map(self, i: int) -> AffineMap2:
        c, s = self.f.slab_affine(i)
        if self.axis == "x1":
            return AffineMap2(((1, s), (0, 1)), pt(c, 0))
        return AffineMap2(((1, 0), (s, 1)), pt(0, c))

    def _coord(self, p: Point2) -> SurdScalar:
        return p.x2 if self.axis == "x1" else p.x1

    def _clip_to_slab(self, poly: ConvexPolygon, i: int) -> ConvexPolygon | None:
        lo, hi = self.f.slab_bounds(i)
        out = poly
        if self.axis == "x1":  # slab in the x2 coordinate
            if lo is not None:
                out = clip_halfplane(out, pt(0, lo), pt(1, lo))
            if out is not None and hi is not None:
                out = clip_halfplane(out, pt(1, hi), pt(0, hi))
        else:
            if lo is not None:
                out = clip_halfplane(out, pt(lo, 1), pt(lo, 0))
            if out is not None and hi is not None:
                out = clip_halfplane(out, pt(hi, 0), pt(hi, 1))
        return out

    def reflect_x1(self) -> "Shear":
        """Conjugate by (x1, x2) -> (-x1, x2)."""
        f = self.f
        if self.axis == "x1":
            g = PLFunction(f.breakpoints, [-s for s in f.slopes],
                           anchor=(f.anchor[0], -f.anchor[1]),
                           jumps=[-j for j in f.jumps])
        else:
            g = _precompose_neg(f)
        return Shear(self.axis, g)

    def reflect_x2(self) -> "Shear":
        """Conjugate by (x1, x2) -> (x1, -x2)."""
        f = self.f
        if self.axis == "x2":
            g = PLFunction(f.breakpoints, [-s for s in f.slopes],
                           anchor=(f.anchor[0], -f.anchor[1]),
                           jumps=[-j for j in f.jumps])
        else:
            g = _precompose_neg(f)
        return Shear(self.axis, g)

    def to_json(self):
        return {"axis": self.axis, **self.f.to_json()}

    @classmethod
    def from_json(cls, data) -> "Shear":
        return cls(data["axis"], PLFunction.from_json(data))


def _precompose_neg(f: PLFunction) -> PLFunction:
    """The PL function x -> f(-x)."""
    bps = [-b for b in reversed(f.breakpoints)]
    slopes = [-s for s in reversed(f.slopes)]
    jumps = [-j for j in reversed(f.jumps)]
    x0 = f.anchor[0]
    return PLFunction(bps, slopes, anchor=(-x0, f.anchor[1]), jumps=jumps)


def plane_image(shear: Shear, region: Region) -> Region:
    """Image of a region, split along slab boundaries; exact and area-preserving."""
    out: list[ConvexPolygon] = []
    for piece in region.pieces:
        for i in range(shear.f.num_slabs):
            part = shear._clip_to_slab(piece, i)
            if part is not None:
                out.append(shear.slab_plane_map(i).apply_polygon(part))
    return Region(out)


def moved_set(shear: Shear, region: Region) -> Region:
    """Sub-region of `region` on which the planar shear is not the identity.

    Computed at slab granularity: all slabs whose local offset function is not
    identically zero, clipped to the region.
    """
    out: list[ConvexPolygon] = []
    for piece in region.pieces:
        for i in range(shear.f.num_slabs):
            if shear.f.slab_is_identity(i):
                continue
            part = shear._clip_to_slab(piece, i)
            if part is not None:
                out.append(part)
    return Region(out)


@dataclass
class Violation:
    first: int
    second: int
    overlap: SurdScalar

    def __str__(self):
        return (f"shear {self.second} moves part of the image of the set moved "
                f"by shear {self.first} (overlap area {self.overlap})")


@dataclass
class ComposabilityReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)

    def to_json(self):
        return {
            "ok": self.ok,
            "violations": [
                {"first": v.first, "second": v.second, "overlap": v.overlap.to_triples()}
                for v in self.violations
            ],
        }


@dataclass
class ShearSequence:
    shears: list[Shear]
    source: Region

    def final_region(self) -> Region:
        cur = self.source
        for s in self.shears:
            cur = plane_image(s, cur)
        return cur

    def stages(self) -> list[Region]:
        out = [self.source]
        for s in self.shears:
            out.append(plane_image(s, out[-1]))
        return out

    def to_json(self):
        return {"shears": [s.to_json() for s in self.shears],
                "source": self.source.to_json()}

    @classmethod
    def from_json(cls, data) -> "ShearSequence":
        return cls([Shear.from_json(s) for s in data["shears"]],
                   Region.from_json(data["source"]))


def check_composable(seq: ShearSequence) -> ComposabilityReport:
    """Every point of the source may be moved by at most one shear.

    For i < j the j-th shear must act as the identity on the image (under
    shears i..j-1) of the set moved by shear i; violations are reported as
    the overlapping area, found exactly.
    """
    violations: list[Violation] = []
    carried: list[tuple[int, Region]] = []  # moved sets, pushed to current stage
    cur = seq.source
    for j, shear in enumerate(seq.shears):
        moved_j = moved_set(shear, cur)
        for i, img in carried:
            hit = moved_set(shear, img)
            a = hit.area()
            if a.sign() > 0:
                violations.append(Violation(i, j, a))
        carried = [(i, plane_image(shear, img)) for i, img in carried]
        carried.append((j, plane_image(shear, moved_j)))
        cur = plane_image(shear, cur)
    return ComposabilityReport(not violations, violations)


# -- induced 4D symplectomorphism ------------------------------------------

# Standard symplectic Gram matrix on coordinates (x1, x2, y1, y2).
OMEGA0 = (
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
)


def _mat4(rows):
    return tuple(tuple(scalar(e) for e in row) for row in rows)


def _mat4_mul(a, b):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(4)), rat(0)) for j in range(4))
        for i in range(4)
    )


def _mat4_transpose(a):
    return tuple(tuple(a[j][i] for j in range(4)) for i in range(4))


def jacobian_4d(axis: str, slope) -> tuple:
    s = scalar(slope)
    if axis == "x1":
        return _mat4(((1, s, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -s, 1)))
    return _mat4(((1, 0, 0, 0), (s, 1, 0, 0), (0, 0, 1, -s), (0, 0, 0, 1)))


def is_symplectic_4d(j) -> bool:
    return _mat4_mul(_mat4_transpose(j), _mat4_mul(_mat4(OMEGA0), j)) == _mat4(OMEGA0)


@dataclass
class SlabSymplecticity:
    slab: int
    slope: SurdScalar
    ok: bool


@dataclass
class SymplecticityRecord:
    axis: str
    slabs: list[SlabSymplecticity]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.slabs)

    def to_json(self):
        return {
            "axis": self.axis,
            "ok": self.ok,
            "slabs": [{"slab": s.slab, "slope": s.slope.to_triples(), "ok": s.ok}
                      for s in self.slabs],
        }


def induced_4d_check(shear: Shear) -> SymplecticityRecord:
    """Exact check J^T Omega0 J = Omega0 for every affine piece of the lift."""
    slabs = []
    for i in range(shear.f.num_slabs):
        slope = shear.f.slopes[i]
        j = jacobian_4d(shear.axis, slope)
        slabs.append(SlabSymplecticity(i, slope, is_symplectic_4d(j)))
    return SymplecticityRecord(shear.axis, slabs)


def fiber_parallelogram(shear: Shear, at: Point2) -> AffineMap2:
    """The y-plane map over `at`; at a breakpoint the right-hand slab is used."""
    x = shear._coord(at)
    i = shear.f._slab_index(x)
    s = shear.f.slopes[i]
    if shear.axis == "x1":
        return AffineMap2(((1, 0), (-s, 1)), pt(0, 0))
    return AffineMap2(((1, -s), (0, 1)), pt(0, 0))
