"""Exact planar geometry over the surd ring.

Convex polygons with surd coordinates, finite unions of interior-disjoint
convex pieces (regions), affine images and convex clipping.  All predicates
are decided by exact sign computations; regions follow the open-set
convention, so degenerate (zero-area) intersections count as empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surd import SurdScalar, rat, scalar


class GeometryError(ValueError):
    """Raised on invalid polygons, degenerate maps, or bad region data."""


@dataclass(frozen=True)
class Point2:
    x1: SurdScalar
    x2: SurdScalar

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "Point2":
        return Point2(-self.x1, -self.x2)

    def scale(self, factor) -> "Point2":
        f = scalar(factor)
        return Point2(self.x1 * f, self.x2 * f)

    def cross(self, other: "Point2") -> SurdScalar:
        return self.x1 * other.x2 - self.x2 * other.x1

    def to_json(self):
        return [self.x1.to_triples(), self.x2.to_triples()]

    @classmethod
    def from_json(cls, data) -> "Point2":
        return cls(SurdScalar.from_triples(data[0]), SurdScalar.from_triples(data[1]))


def pt(x1, x2) -> Point2:
    """Point from ints/Fractions/SurdScalars."""
    return Point2(scalar(x1), scalar(x2))


def _orient(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the signed area of triangle abc (+1 = counterclockwise)."""
    return (b - a).cross(c - a).sign()


class ConvexPolygon:
    """Strictly convex polygon, vertices stored counterclockwise.

    Canonical form: consecutive collinear vertices merged, vertex list rotated
    to start at the lexicographically smallest vertex, positive area required.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: list[Point2]):
        vs = _canonicalize(vertices)
        if vs is None:
            raise GeometryError(f"degenerate polygon: {[str(v.x1)+','+str(v.x2) for v in vertices]}")
        self.vertices = vs

    @classmethod
    def maybe(cls, vertices: list[Point2]) -> "ConvexPolygon | None":
        """Canonicalize, returning None for zero-area (point/segment) input."""
        vs = _canonicalize(vertices)
        return None if vs is None else _raw(vs)

    def area(self) -> SurdScalar:
        return shoelace(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def translate(self, v: Point2) -> "ConvexPolygon":
        return _raw([p + v for p in self.vertices])

    def bounding_box(self):
        xs = [p.x1 for p in self.vertices]
        ys = [p.x2 for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def contains(self, p: Point2) -> bool:
        """True iff p is interior (open polygon)."""
        return all(_orient(a, b, p) > 0 for a, b in self.edges())

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(tuple(self.vertices))

    def __repr__(self):
        pts = ", ".join(f"({v.x1},{v.x2})" for v in self.vertices)
        return f"ConvexPolygon[{pts}]"

    def to_json(self):
        return [v.to_json() for v in self.vertices]

    @classmethod
    def from_json(cls, data) -> "ConvexPolygon":
        return cls([Point2.from_json(p) for p in data])


def _raw(vertices: list[Point2]) -> ConvexPolygon:
    """Construct trusting the input (already canonical counterclockwise)."""
    poly = object.__new__(ConvexPolygon)
    poly.vertices = vertices
    return poly


def _canonicalize(vertices: list[Point2]) -> list[Point2] | None:
    vs = [vertices[0]]
    for p in vertices[1:]:
        if p != vs[-1]:
            vs.append(p)
    while len(vs) > 1 and vs[0] == vs[-1]:
        vs.pop()
    if len(vs) < 3:
        return None
    if shoelace(vs).sign() < 0:
        vs.reverse()
    # drop vertices collinear with their neighbours
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        for i in range(len(vs)):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % len(vs)]
            if _orient(a, b, c) == 0:
                vs.pop(i)
                changed = True
                break
    if len(vs) < 3 or shoelace(vs).sign() <= 0:
        return None
    for i in range(len(vs)):
        a, b, c = vs[i - 1], vs[i], vs[(i + 1) % len(vs)]
        if _orient(a, b, c) <= 0:
            return None  # not strictly convex
    start = min(range(len(vs)), key=lambda i: (vs[i].x1, vs[i].x2))
    return vs[start:] + vs[:start]


def shoelace(vertices: list[Point2]) -> SurdScalar:
    """Signed area (positive for counterclockwise order)."""
    total = rat(0)
    for i in range(len(vertices)):
        total = total + vertices[i].cross(vertices[(i + 1) % len(vertices)])
    return total / 2


def clip_halfplane(poly: ConvexPolygon, a: Point2, b: Point2) -> ConvexPolygon | None:
    """Clip to the closed half-plane on the left of the directed line a->b."""
    d = b - a
    out: list[Point2] = []
    vs = poly.vertices
    sides = [d.cross(p - a).sign() for p in vs]
    if all(s >= 0 for s in sides):
        return poly
    for i in range(len(vs)):
        p, q = vs[i], vs[(i + 1) % len(vs)]
        sp, sq = sides[i], sides[(i + 1) % len(vs)]
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            # intersection of segment pq with the line through a, b
            t = d.cross(a - p) / d.cross(q - p)
            out.append(p + (q - p).scale(t))
    return ConvexPolygon.maybe(out) if len(out) >= 3 else None


def clip(a: ConvexPolygon, b: ConvexPolygon) -> ConvexPolygon | None:
    """Exact intersection of two convex polygons; None when it has zero area."""
    ax1, ax2, ay1, ay2 = a.bounding_box()
    bx1, bx2, by1, by2 = b.bounding_box()
    if (ax2 - bx1).sign() <= 0 or (bx2 - ax1).sign() <= 0:
        return None
    if (ay2 - by1).sign() <= 0 or (by2 - ay1).sign() <= 0:
        return None
    result: ConvexPolygon | None = a
    for p, q in b.edges():
        result = clip_halfplane(result, p, q)
        if result is None:
            return None
    return result


def overlap_area(a: ConvexPolygon, b: ConvexPolygon) -> SurdScalar:
    c = clip(a, b)
    return rat(0) if c is None else c.area()


class Region:
    """Finite union of convex polygons whose pairwise overlaps have zero area."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: list[ConvexPolygon], validate: bool = False):
        self.pieces = list(pieces)
        if validate:
            self.validate()

    def validate(self) -> None:
        for i in range(len(self.pieces)):
            for j in range(i + 1, len(self.pieces)):
                if overlap_area(self.pieces[i], self.pieces[j]).sign() != 0:
                    raise GeometryError(f"region pieces {i} and {j} overlap")

    def area(self) -> SurdScalar:
        total = rat(0)
        for p in self.pieces:
            total = total + p.area()
        return total

    def translate(self, v: Point2) -> "Region":
        return Region([p.translate(v) for p in self.pieces])

    def bounding_box(self):
        boxes = [p.bounding_box() for p in self.pieces]
        return (
            min(b[0] for b in boxes),
            max(b[1] for b in boxes),
            min(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def __repr__(self):
        return f"Region({len(self.pieces)} pieces, area {self.area()})"

    def to_json(self):
        return {"polygons": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, data) -> "Region":
        return cls([ConvexPolygon.from_json(p) for p in data["polygons"]])


def region_area(r: Region) -> SurdScalar:
    return r.area()


def region_overlap_area(a: Region, b: Region) -> SurdScalar:
    total = rat(0)
    for p in a.pieces:
        px1, px2, py1, py2 = p.bounding_box()
        for q in b.pieces:
            qx1, qx2, qy1, qy2 = q.bounding_box()
            if (px2 - qx1).sign() <= 0 or (qx2 - px1).sign() <= 0:
                continue
            if (py2 - qy1).sign() <= 0 or (qy2 - py1).sign() <= 0:
                continue
            total = total + overlap_area(p, q)
    return total


def symmetric_difference_area(a: Region, b: Region) -> SurdScalar:
    """area(a) + area(b) - 2*overlap; zero iff the regions agree a.e."""
    return a.area() + b.area() - rat(2) * region_overlap_area(a, b)


class AffineMap2:
    """Affine map x -> linear*x + translation with exact entries."""

    __slots__ = ("linear", "translation")

    def __init__(self, linear, translation: Point2):
        self.linear = tuple(tuple(scalar(e) for e in row) for row in linear)
        self.translation = translation
        if self.det().is_zero():
            raise GeometryError("degenerate affine map")

    def det(self) -> SurdScalar:
        (a, b), (c, d) = self.linear
        return a * d - b * c

    def is_area_preserving(self) -> bool:
        return self.det() == rat(1)

    def apply(self, p: Point2) -> Point2:
        (a, b), (c, d) = self.linear
        return Point2(
            a * p.x1 + b * p.x2 + self.translation.x1,
            c * p.x1 + d * p.x2 + self.translation.x2,
        )

    def apply_polygon(self, poly: ConvexPolygon) -> ConvexPolygon:
        return ConvexPolygon([self.apply(v) for v in poly.vertices])

    def apply_region(self, r: Region) -> Region:
        return Region([self.apply_polygon(p) for p in r.pieces])

    def compose(self, inner: "AffineMap2") -> "AffineMap2":
        (a, b), (c, d) = self.linear
        (e, f), (g, h) = inner.linear
        lin = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return AffineMap2(lin, self.apply(inner.translation))

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(((1, 0), (0, 1)), pt(0, 0))

    def __repr__(self):
        (a, b), (c, d) = self.linear
        return f"AffineMap2([[{a},{b}],[{c},{d}]] + ({self.translation.x1},{self.translation.x2}))"


def apply_affine(m: AffineMap2, r: Region) -> Region:
    return m.apply_region(r)


def translate(r: Region, v: Point2) -> Region:
    return r.translate(v)


def rectangle(x_lo, x_hi, y_lo, y_hi) -> ConvexPolygon:
    return ConvexPolygon([pt(x_lo, y_lo), pt(x_hi, y_lo), pt(x_hi, y_hi), pt(x_lo, y_hi)])
