"""Command-line interface: construct, verify, render and report.

Exit codes: 0 = success / verified, 1 = verification failed (a report is
still printed), 2 = malformed input.  Exact scalars are serialized as
[radicand, numerator, denominator] triples; decimals appear only in
human-readable report fields (TORUSFILL_PRECISION digits, default 30).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .surd import SurdScalar, rat
from .geom import Region
from .torus import Lattice2, injects
from .fillings import CONSTRUCTORS, FillingError
from .latforms import (
    AlternatingIntMatrix,
    AlternatingSurdMatrix,
    LatticeFormError,
    build_period_lattice,
    normalize_basis,
    polarization_type,
    verify_no_curves,
)
from .seshadri import SeshadriError, pell_min, table


class InputError(ValueError):
    pass


def _precision() -> int:
    try:
        return max(1, int(os.environ.get("TORUSFILL_PRECISION", "30")))
    except ValueError:
        return 30


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _dump(data, path: str | None):
    text = json.dumps(data, indent=2, sort_keys=False)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _lattice_from_args(args) -> Lattice2:
    if args.lattice:
        mu1, mu2 = (_parse_rational(x) for x in args.lattice)
        return Lattice2.rectangular(mu1, mu2)
    if getattr(args, "lattice_file", None):
        return Lattice2.from_json(_load_json(args.lattice_file))
    raise InputError("a lattice is required (--lattice MU1 MU2 or --lattice-file)")


# -- construct ----------------------------------------------------------------


def cmd_construct(args) -> int:
    name = args.name
    if name not in CONSTRUCTORS:
        raise InputError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTORS)}")
    kwargs = {}
    if name in ("example1", "family", "cube", "polydisc"):
        kwargs["k"] = args.k
    if name in ("example2", "example3", "theorem1"):
        kwargs["eps"] = _parse_rational(args.eps)
    if name == "example2":
        kwargs["orientation"] = args.orientation
    cert = CONSTRUCTORS[name](**kwargs)
    _dump(cert.to_json(), args.cert_out)
    if args.out:
        _dump(cert.final.to_json(), args.out)
    return 0 if cert.valid else 1


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    region = Region.from_json(_load_json(args.region))
    region.validate()
    lattice = _lattice_from_args(args)
    verdict = injects(region, lattice)
    area = region.area()
    covol = lattice.covolume()
    fraction = area / covol if verdict.ok else None
    digits = _precision()
    report = {
        "input": args.region,
        "lattice": lattice.to_json(),
        "verdicts": {
            "injective": verdict.ok,
            "fundamental_domain": verdict.ok and area == covol,
        },
        "area": area.to_triples(),
        "covolume": covol.to_triples(),
        "covered_fraction": fraction.to_triples() if fraction is not None else None,
        "covered_fraction_decimal": fraction.decimal(digits) if fraction is not None else None,
        "collisions": verdict.to_json()["collisions"],
        "timings": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    _dump(report, args.out)
    return 0 if verdict.ok else 1


# -- lattice forms ---------------------------------------------------------------


def _matrix_from_json(data):
    if "upper" not in data or "n" not in data:
        raise InputError("matrix JSON needs fields 'n' and 'upper'")
    n = data["n"]
    upper = data["upper"]
    if len(upper) != n * (2 * n - 1):
        raise InputError(f"n={n} needs {n * (2 * n - 1)} upper entries, got {len(upper)}")
    if all(isinstance(x, int) for x in upper):
        dim = 2 * n
        m = [[0] * dim for _ in range(dim)]
        it = iter(upper)
        for i in range(dim):
            for j in range(i + 1, dim):
                m[i][j] = next(it)
                m[j][i] = -m[i][j]
        return AlternatingIntMatrix(m)
    if n != 2:
        raise InputError("surd-valued matrices are supported only for n=2 (4x4)")

    def entry(x):
        if isinstance(x, int):
            return SurdScalar.rational(x)
        try:
            return SurdScalar.from_triples(x)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad matrix entry {x!r}: {exc}") from exc

    return AlternatingSurdMatrix([entry(x) for x in upper])


def cmd_type(args) -> int:
    matrix = _matrix_from_json(_load_json(args.matrix))
    if not isinstance(matrix, AlternatingIntMatrix):
        raise InputError("polarization type needs an integer matrix")
    divisors, base_change = polarization_type(matrix)
    _dump({"type": list(divisors), "base_change": base_change}, args.out)
    return 0


def cmd_period_lattice(args) -> int:
    matrix = _matrix_from_json(_load_json(args.matrix))
    if not isinstance(matrix, AlternatingSurdMatrix):
        raise InputError("period-lattice needs a surd-valued 4x4 matrix")
    result = normalize_basis(matrix)
    solution = build_period_lattice(result.matrix)
    certificate = verify_no_curves(solution, bound=args.bound)
    report = {
        "normalized": result.matrix.to_json(),
        "base_change": result.base_change,
        "base_change_determinant": result.determinant,
        "solution": solution.to_json(),
        "no_curves": certificate.to_json(),
    }
    _dump(report, args.out)
    return 0 if certificate.ok else 1


# -- seshadri / pell -------------------------------------------------------------


def cmd_seshadri(args) -> int:
    rows = table(args.dmax)
    if args.format == "json":
        _dump([
            {
                "d": r.d,
                "k0": r.pell.k0 if r.pell else None,
                "l0": r.pell.l0 if r.pell else None,
                "epsilon": str(r.epsilon.as_fraction()),
                "p_lower": str(r.p_lower),
            }
            for r in rows
        ], args.out)
        return 0
    lines = []
    if args.format == "csv":
        lines.append("d,k0,l0,p_lower")
        for r in rows:
            k0 = r.pell.k0 if r.pell else ""
            l0 = r.pell.l0 if r.pell else ""
            lines.append(f"{r.d},{k0},{l0},{r.p_lower}")
    else:
        lines.append(f"{'d':>3} {'k0':>6} {'l0':>8} {'p(T(1,d)) >=':>24}")
        for r in rows:
            k0 = str(r.pell.k0) if r.pell else "-"
            l0 = str(r.pell.l0) if r.pell else "-"
            lines.append(f"{r.d:>3} {k0:>6} {l0:>8} {str(r.p_lower):>24}")
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_pell(args) -> int:
    sol = pell_min(args.N)
    _dump({"N": sol.N, "k0": sol.k0, "l0": sol.l0}, args.out)
    return 0


# -- svg -------------------------------------------------------------------------

PALETTE = ["#4878a8", "#e49444", "#d1615d", "#85b6b2", "#6a9f58",
           "#e7ca60", "#a87c9f", "#967662", "#b8b0ac", "#7b848f"]


def _svg_coords(p, scale, origin):
    x = (p.x1 * scale).decimal(3)
    y = ((origin - p.x2) * scale).decimal(3)
    return f"{x},{y}"


def render_svg(region: Region, lattice: Lattice2, translate_ring: bool = True) -> str:
    """Deterministic SVG: the region, the fundamental cell, one translate ring."""
    from .geom import pt as _pt

    scale = rat(200) / max(
        abs(lattice.g1.x1), abs(lattice.g1.x2), abs(lattice.g2.x1), abs(lattice.g2.x2),
        rat(1),
    )
    ring = [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)]
    cells = [region]
    if translate_ring:
        cells += [region.translate(lattice.vector(a, b)) for a, b in ring]
    boxes = [reg.bounding_box() for reg in cells]
    margin = rat(Fraction(1, 4))
    x_lo = min(b[0] for b in boxes) - margin
    x_hi = max(b[1] for b in boxes) + margin
    y_lo = min(b[2] for b in boxes) - margin
    y_hi = max(b[3] for b in boxes) + margin
    width = ((x_hi - x_lo) * scale).decimal(3)
    height = ((y_hi - y_lo) * scale).decimal(3)
    shift = _pt(x_lo, 0)

    def poly_tag(vertices, fill, opacity, stroke="#222222"):
        pts = " ".join(_svg_coords(v - shift, scale, y_hi) for v in vertices)
        return (f'<polygon points="{pts}" fill="{fill}" fill-opacity="{opacity}" '
                f'stroke="{stroke}" stroke-width="0.75" />')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="#ffffff" />',
    ]
    cell = [_pt(0, 0), lattice.g1, lattice.g1 + lattice.g2, lattice.g2]
    cell_pts = " ".join(_svg_coords(v - shift, scale, y_hi) for v in cell)
    parts.append(f'<polygon points="{cell_pts}" fill="none" '
                 f'stroke="#000000" stroke-width="1.5" stroke-dasharray="6,3" />')
    if translate_ring:
        for idx, (a, b) in enumerate(ring):
            shifted = region.translate(lattice.vector(a, b))
            for piece in shifted.pieces:
                parts.append(poly_tag(piece.vertices, PALETTE[idx % len(PALETTE)],
                                      "0.18", "#999999"))
    for idx, piece in enumerate(region.pieces):
        parts.append(poly_tag(piece.vertices, PALETTE[idx % len(PALETTE)], "0.85"))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_svg(args) -> int:
    region = Region.from_json(_load_json(args.region))
    lattice = _lattice_from_args(args)
    svg = render_svg(region, lattice, translate_ring=not args.no_ring)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return 0


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusfill",
        description="Exact constructions and verification of symplectic torus fillings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named filling and emit its certificate")
    p.add_argument("name", choices=sorted(CONSTRUCTORS))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--eps", default="0", help="rational like 1/100")
    p.add_argument("--orientation", default="++", choices=["++", "+-", "-+", "--"])
    p.add_argument("--out", help="write the final Region JSON here")
    p.add_argument("--cert-out", help="certificate output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recheck a region file against a lattice")
    p.add_argument("region")
    p.add_argument("--lattice", nargs=2, metavar=("MU1", "MU2"))
    p.add_argument("--lattice-file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("type", help="polarization type of an integer alternating matrix")
    p.add_argument("matrix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("period-lattice", help="normalize a surd form and build its period lattice")
    p.add_argument("matrix")
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_period_lattice)

    p = sub.add_parser("seshadri", help="Seshadri / Pell filling bounds for types (1, d)")
    p.add_argument("--dmax", type=int, default=30)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seshadri)

    p = sub.add_parser("pell", help="minimal solution of l^2 - N k^2 = 1")
    p.add_argument("N", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("svg", help="render a region and its lattice translates")
    p.add_argument("region")
    p.add_argument("--lattice", nargs=2, metavar=("MU1", "MU2"))
    p.add_argument("--lattice-file")
    p.add_argument("--no-ring", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_svg)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FillingError, LatticeFormError, SeshadriError,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
