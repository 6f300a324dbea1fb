"""Command-line harness.

Subcommands cover the library surface: body algebra, metric realization,
certified approximation lemmas, moduli invariants and distances, the
classification table, the acceptance suite, and parameter sweeps.  All
reports are deterministic for a fixed seed and are written atomically;
the sweep and verify paths can additionally render figures next to the
delimited output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import acceptance, approx
from .bodies import (
    ConvexBody,
    body_from_json,
    body_to_json,
    hausdorff_distance,
    hull_reduce,
    minkowski_combine,
    steiner_point,
)
from .classify import admissible, canonical_name, classify, table_json
from .errors import GeometryError, HypothesisError
from .moduli import (
    ConcaveDensity,
    FlatStructure,
    LatticeBasis,
    cd_density_check,
    cstar_distance,
    cstar_quotient_distance,
    flat_quotient_distance,
    lattice_reduce,
    structure_invariants,
)
from .sampling import cube, icosahedron, icosphere, regular_polygon, slab
from .surfaces import boundary_metric, double_metric, realize_disc, realize_sphere
from .tolerances import MESH_ALLOWANCE

PLOT_COLUMNS = ("parameter", "case", "measured", "bound", "allowance")


# -- output plumbing -----------------------------------------------------------


def _write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit_plotdata(report: dict) -> str:
    """Long-format CSV of a report's rows; header-only when there are none."""
    lines = [",".join(PLOT_COLUMNS)]
    for row in report.get("rows", []):
        lines.append(",".join(str(row.get(c, "")) for c in PLOT_COLUMNS))
    return "\n".join(lines) + "\n"


def _deliver(report: dict, out, fmt: str):
    text = emit_plotdata(report) if fmt == "csv" else render_json(report)
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _render_figures(report: dict, out: str, tag: str) -> list:
    """One PNG of measured-vs-bound rows per criterion, next to ``out``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = report.get("rows", [])
    stem = os.path.splitext(out)[0]
    groups = {}
    for row in rows:
        groups.setdefault(row.get("criterion", tag), []).append(row)
    written = []
    for key in sorted(groups, key=str):
        sub = groups[key]
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        cases = sorted({str(r["case"]) for r in sub})
        for case in cases:
            pts = [r for r in sub if str(r["case"]) == case]
            xs = np.arange(len(pts))
            ax.plot(xs, [r["measured"] for r in pts], "o-", label=f"{case} measured")
            ax.plot(xs, [r["bound"] + r["allowance"] for r in pts], "--",
                    label=f"{case} bound+allowance")
        ax.set_xlabel("row (ordered by parameter)")
        ax.set_ylabel("value")
        ax.set_title(f"{tag} {key}")
        ax.legend(fontsize=7)
        fig.tight_layout()
        name = f"{stem}_{tag}_{key}.png"
        fig.savefig(name, dpi=110)
        plt.close(fig)
        written.append(name)
    return written


# -- input plumbing ------------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise GeometryError("bad-input", f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise GeometryError("bad-input", f"{path} is not valid JSON: {e}")


def _load_body(path: str) -> ConvexBody:
    obj = _load_json(path)
    if "points" in obj and "vertices" not in obj:
        obj = {"vertices": obj["points"]}
    return body_from_json(obj)


def _load_density(path: str) -> ConcaveDensity:
    obj = _load_json(path)
    try:
        return ConcaveDensity.from_json(obj)
    except (KeyError, TypeError) as e:
        raise GeometryError("bad-input", f"{path} is not a density file: {e}")


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise GeometryError("bad-input", f"expected comma-separated numbers, got {text!r}")


def _vector3(text: str) -> np.ndarray:
    v = _floats(text)
    if len(v) != 3:
        raise GeometryError("bad-input", f"expected three coordinates, got {text!r}")
    return np.array(v)


# -- body ----------------------------------------------------------------------


_SHAPES = ("cube", "icosahedron", "icosphere", "regular-polygon", "segment")


def _make_shape(args) -> ConvexBody:
    if args.shape == "cube":
        return cube(args.size)
    if args.shape == "icosahedron":
        return hull_reduce(args.size * icosahedron().vertices)
    if args.shape == "icosphere":
        return hull_reduce(args.size * icosphere(args.level).vertices)
    if args.shape == "regular-polygon":
        return regular_polygon(args.n, radius=args.size)
    return hull_reduce([[-0.5 * args.size, 0, 0], [0.5 * args.size, 0, 0]])


def _cmd_body(args) -> dict:
    needs_a = args.op != "make"
    needs_b = args.op in ("hausdorff", "minkowski")
    if (needs_a and args.a is None) or (needs_b and args.b is None):
        raise GeometryError("bad-input", f"body {args.op} needs --a"
                            + (" and --b" if needs_b else ""))
    if args.op == "make":
        body = _make_shape(args)
    elif args.op == "hull":
        body = _load_body(args.a)
    elif args.op == "steiner":
        body = _load_body(args.a)
        return {"steiner": steiner_point(body).tolist()}
    elif args.op == "hausdorff":
        a, b = _load_body(args.a), _load_body(args.b)
        return {"hausdorff_distance": hausdorff_distance(a, b)}
    else:  # minkowski
        a, b = _load_body(args.a), _load_body(args.b)
        body = minkowski_combine(args.ca, a, args.cb, b)
    out = body_to_json(body)
    out.update({"dim": body.dim, "diameter": body.diameter})
    return out


# -- metric ---------------------------------------------------------------------


def _sample_kwargs(args) -> dict:
    kw = {}
    for name in ("mesh_level", "sample_level", "boundary_target", "boundary_res",
                 "rings", "ring_stride", "n_nodes"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    return kw


def _cmd_metric(args) -> dict:
    body = _load_body(args.body)
    kw = _sample_kwargs(args)
    if args.op == "realize-sphere":
        sample = realize_sphere(body, **kw)
    elif args.op == "realize-disc":
        if args.axis is None:
            raise GeometryError("bad-input", "realize-disc needs --axis x,y,z")
        sample = realize_disc(body, _vector3(args.axis), **kw)
    elif args.op == "boundary":
        sample = boundary_metric(body, **kw)
    else:  # double
        sample = double_metric(body, **kw)
    return sample.to_json()


# -- approx ----------------------------------------------------------------------


LEMMAS = ("3to3", "3to2", "2to2", "1to1", "3to1", "2to1")


def _cmd_approx(args) -> dict:
    a = _load_body(args.a)
    if args.lemma in ("3to3", "2to2", "1to1"):
        if args.b is None:
            raise GeometryError("bad-input", f"lemma {args.lemma} needs --b")
        b = _load_body(args.b)
        if args.lemma == "3to3":
            _, cert = approx.approx_boundaries(a, b, mesh_level=args.mesh_level,
                                               sample_level=args.sample_level)
        elif args.lemma == "2to2":
            _, cert = approx.approx_doubles(a, b, boundary_target=args.boundary_target)
        else:
            _, cert = approx.approx_segments(a, b)
    else:
        if args.axis is None:
            raise GeometryError("bad-input", f"lemma {args.lemma} needs --axis")
        v = _vector3(args.axis)
        if args.lemma == "3to2":
            _, cert = approx.approx_flatten(a, v, mesh_level=args.mesh_level,
                                            sample_level=args.sample_level)
        else:
            _, cert = approx.approx_to_segment(a, v, mesh_level=args.mesh_level,
                                               sample_level=args.sample_level)
    return cert.to_json()


# -- moduli -----------------------------------------------------------------------


def _structure(args) -> FlatStructure:
    if args.kind is None or args.params is None:
        raise GeometryError("bad-input", "this operation needs --kind and --params")
    params = _floats(args.params)
    if args.kind == "circle":
        if len(params) != 1:
            raise GeometryError("bad-input", "circle takes one parameter (perimeter)")
        return FlatStructure("circle", args.mass_scale, params[0])
    if args.kind == "torus":
        if len(params) != 4:
            raise GeometryError("bad-input", "torus takes four parameters (x1,y1,x2,y2)")
        return FlatStructure("torus", args.mass_scale,
                             LatticeBasis(params[:2], params[2:]))
    if len(params) != 2:
        raise GeometryError("bad-input", f"{args.kind} takes two parameters")
    return FlatStructure(args.kind, args.mass_scale, tuple(params))


def _cmd_moduli(args) -> dict:
    if args.op == "invariants":
        st = _structure(args)
        return {"kind": st.kind, "invariants": structure_invariants(st).tolist()}
    if args.op == "reduce":
        if args.basis is None:
            raise GeometryError("bad-input", "reduce needs --basis x1,y1,x2,y2")
        nums = _floats(args.basis)
        if len(nums) != 4:
            raise GeometryError("bad-input", "basis needs four numbers x1,y1,x2,y2")
        red = lattice_reduce(LatticeBasis(nums[:2], nums[2:]))
        return {"v1": red.v1.tolist(), "v2": red.v2.tolist()}
    if args.op == "density-check":
        if args.density is None:
            raise GeometryError("bad-input", "density-check needs --density FILE")
        return cd_density_check(_load_density(args.density)).to_json()
    # distances
    if args.kind == "cstar":
        if args.f is None or args.g is None:
            raise GeometryError("bad-input", "cstar distance needs --f and --g density files")
        f, g = _load_density(args.f), _load_density(args.g)
        d = cstar_distance(f, g) if args.raw else cstar_quotient_distance(f, g)
        return {"kind": "cstar", "raw": bool(args.raw), "distance": d}
    st = _structure(args)
    if args.p is None or args.q is None:
        raise GeometryError("bad-input", "distances needs --p and --q chart points")
    p, q = _floats(args.p), _floats(args.q)
    want = 1 if st.kind == "circle" else 2
    if len(p) != want or len(q) != want:
        raise GeometryError("bad-input", f"{st.kind} chart points need {want} coordinate(s)")
    if st.kind == "circle":
        p, q = p[0], q[0]
    return {"kind": st.kind, "distance": flat_quotient_distance(st, p, q)}


# -- classify ----------------------------------------------------------------------


def _cmd_classify(args) -> dict:
    if args.table:
        return json.loads(table_json())
    if args.name is not None:
        canon = canonical_name(args.name)
        return {"input": args.name, "canonical": canon,
                "admissible": admissible(args.name)}
    if args.dim is None or args.k is None:
        raise GeometryError("bad-input", "classify needs --dim and --k, or --name, or --table")
    cell = classify(args.dim, args.k)
    return {"dim": args.dim, "k": args.k, "surfaces": sorted(cell)}


# -- verify ------------------------------------------------------------------------


def _cmd_verify(args) -> tuple:
    if args.criteria:
        numbers = sorted({int(x) for x in args.criteria.split(",")})
    else:
        numbers = [num for num, _, _, _ in acceptance.CRITERIA]
    results = []
    for num in numbers:
        r = acceptance.run_criterion(num, seed=args.seed)
        sys.stdout.write(r.line() + "\n")
        results.append(r)
    passed = all(r.passed for r in results)
    sys.stdout.write(f"{'PASS' if passed else 'FAIL'}: {sum(r.passed for r in results)}"
                     f"/{len(results)} criteria passed (seed {args.seed})\n")
    rows = [row for r in results for row in r.rows]
    report = {
        "seed": args.seed,
        "passed": passed,
        "criteria": [r.to_json() for r in results],
        "rows": rows,
    }
    return report, passed


# -- sweep -------------------------------------------------------------------------


def _sweep_mesh(args) -> dict:
    levels = [int(x) for x in _floats(args.levels)]
    box = cube(1.0)
    pairs = [
        ("opposite-centers", np.array([1.0, 0, 0]), np.array([-1.0, 0, 0])),
        ("adjacent-centers", np.array([1.0, 0, 0]), np.array([0, 1.0, 0])),
        ("antipodal-corners", np.array([1.0, 1.0, 1.0]), np.array([-1.0, -1.0, -1.0])),
    ]
    rows = []
    for level in levels:
        sample = boundary_metric(box, mesh_level=level,
                                 basepoints=[p for _, p, _ in pairs] + [q for _, _, q in pairs])
        for name, p, q in pairs:
            measured = float(sample.dist[sample.find_node(p), sample.find_node(q)])
            oracle = acceptance.unfold_cube_distance(p, q)
            rows.append({"criterion": "mesh", "case": name, "parameter": level,
                         "measured": round(measured, 9), "bound": round(oracle, 9),
                         "allowance": round(MESH_ALLOWANCE * oracle, 9)})
    return {"sweep": "mesh-convergence", "levels": levels, "rows": rows}


def _sweep_flatten(args) -> dict:
    hs = _floats(args.thicknesses)
    square = regular_polygon(4, radius=1.0)
    rows = []
    for h in hs:
        body = slab(square, h)
        _, cert = approx.approx_flatten(body, (0.0, 0.0, 1.0),
                                        mesh_level=args.mesh_level, sample_level=1)
        rows.append({"criterion": "flatten", "case": "3to2", "parameter": h,
                     "measured": round(cert.dis_f, 9), "bound": round(cert.nu, 9),
                     "allowance": round(MESH_ALLOWANCE * body.diameter, 9)})
    return {"sweep": "flatten", "thicknesses": hs, "rows": rows}


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="report file path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--figures", action="store_true",
                        help="render PNG figures next to --out (verify and sweep)")

    p = argparse.ArgumentParser(prog="curvmoduli",
                                description="Convex-body metric geometry toolbox")
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    b = add_parser("body", help="convex-body algebra")
    b.add_argument("op", choices=("make", "hull", "steiner", "hausdorff", "minkowski"))
    b.add_argument("--a", help="body JSON file")
    b.add_argument("--b", help="second body JSON file")
    b.add_argument("--ca", type=float, default=1.0, help="first Minkowski coefficient")
    b.add_argument("--cb", type=float, default=1.0, help="second Minkowski coefficient")
    b.add_argument("--shape", choices=_SHAPES, default="icosahedron")
    b.add_argument("--level", type=int, default=1, help="icosphere subdivision level")
    b.add_argument("--n", type=int, default=6, help="regular polygon vertex count")
    b.add_argument("--size", type=float, default=1.0,
                   help="half-side / radius / length of a made shape")

    m = add_parser("metric", help="realize metric samples")
    m.add_argument("op", choices=("realize-sphere", "realize-disc", "boundary", "double"))
    m.add_argument("--body", required=True)
    m.add_argument("--axis", help="x,y,z symmetry axis (realize-disc)")
    m.add_argument("--mesh-level", type=int, dest="mesh_level")
    m.add_argument("--sample-level", type=int, dest="sample_level")
    m.add_argument("--boundary-target", type=int, dest="boundary_target")
    m.add_argument("--boundary-res", type=int, dest="boundary_res")
    m.add_argument("--rings", type=int)
    m.add_argument("--ring-stride", type=int, dest="ring_stride")
    m.add_argument("--n-nodes", type=int, dest="n_nodes")

    a = add_parser("approx", help="run an approximation lemma")
    a.add_argument("lemma", choices=LEMMAS)
    a.add_argument("--a", required=True, help="body JSON file")
    a.add_argument("--b", help="second body JSON file (3to3, 2to2, 1to1)")
    a.add_argument("--axis", help="x,y,z direction (3to2, 3to1, 2to1)")
    a.add_argument("--mesh-level", type=int, default=3, dest="mesh_level")
    a.add_argument("--sample-level", type=int, default=None, dest="sample_level")
    a.add_argument("--boundary-target", type=int, default=64, dest="boundary_target")

    mo = add_parser("moduli", help="flat/interval moduli computations")
    mo.add_argument("op", choices=("invariants", "reduce", "distances", "density-check"))
    mo.add_argument("--kind", choices=("circle", "torus", "klein", "mobius",
                                       "cylinder", "cstar"))
    mo.add_argument("--mass-scale", type=float, default=1.0, dest="mass_scale")
    mo.add_argument("--params", help="comma-separated structure parameters")
    mo.add_argument("--basis", help="x1,y1,x2,y2 lattice basis (reduce)")
    mo.add_argument("--p", help="first point, comma-separated chart coordinates")
    mo.add_argument("--q", help="second point, comma-separated chart coordinates")
    mo.add_argument("--f", help="first density JSON file (cstar)")
    mo.add_argument("--g", help="second density JSON file (cstar)")
    mo.add_argument("--raw", action="store_true",
                    help="skip the flip quotient in the cstar distance")
    mo.add_argument("--density", help="density JSON file (density-check)")

    c = add_parser("classify", help="surface classification table")
    c.add_argument("--dim", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--name", help="surface name to canonicalize")
    c.add_argument("--table", action="store_true", help="emit the whole table")

    v = add_parser("verify", help="run the acceptance suite")
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")

    s = add_parser("sweep", help="parameter sweeps for plotting")
    s.add_argument("kind", choices=("mesh-convergence", "flatten"))
    s.add_argument("--levels", default="2,3,4,5", help="mesh levels (mesh-convergence)")
    s.add_argument("--thicknesses", default="0.4,0.3,0.2,0.1,0.05",
                   help="slab half-thicknesses (flatten)")
    s.add_argument("--mesh-level", type=int, default=3, dest="mesh_level")

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    exit_code = 0
    try:
        if args.command == "verify":
            report, passed = _cmd_verify(args)
            if not passed:
                exit_code = 4
        elif args.command == "sweep":
            report = _sweep_mesh(args) if args.kind == "mesh-convergence" else _sweep_flatten(args)
        elif args.command == "body":
            report = _cmd_body(args)
        elif args.command == "metric":
            report = _cmd_metric(args)
        elif args.command == "approx":
            report = _cmd_approx(args)
        elif args.command == "moduli":
            report = _cmd_moduli(args)
        else:
            report = _cmd_classify(args)
    except HypothesisError as e:
        sys.stderr.write(f"error: {e}\n")
        return 3
    except GeometryError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    _deliver(report, args.out, args.format)
    if args.figures:
        if not args.out:
            sys.stderr.write("error: --figures requires --out\n")
            return 2
        for name in _render_figures(report, args.out, args.command):
            sys.stdout.write(f"figure: {name}\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
