"""Command-line front end.

Jobs come from flags or from a YAML document (see ``docs/job_schema.md``)
and produce one record per line as JSON, or CSV for tabular modes.

Exit codes: 0 success, 1 invalid input, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Iterable

import numpy as np
import yaml

from . import bures, hopf, transport, triangle
from .config import Tolerances, thread_count
from .errors import NumericalError, ValidationError
from .mat2q import mat_to_quat, quat_distance

MODES = ("triangle", "polygon", "geodesic-refine", "pure-limit", "compare-slater", "hopf-check", "sweep")
FORMATS = ("json-lines", "csv")
ANGLE_FIELDS = {"phase", "delta", "alpha", "omega", "phase_pure", "phase_uhlmann", "phase_slater", "phase_interferometric"}
OCTANT = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
NEAR_PURE = 1.0 - 1e-6


class JobError(ValidationError):
    """Malformed or invalid job description."""


@dataclass
class JobSpec:
    mode: str
    points: list = field(default_factory=list)
    subdivisions: int = 64
    radius_grid: tuple = (0.1, 0.9, 0.1)
    tolerance: float = 1e-10
    seed: int = 0
    samples: int = 100
    format: str = "json-lines"
    degrees: bool = False


# -- parsing -----------------------------------------------------------------


def parse_vector(text: str, name: str) -> list:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise JobError(f"--{name}: expected three comma-separated numbers, got {text!r}") from None
    if len(vals) != 3:
        raise JobError(f"--{name}: expected three components, got {len(vals)}")
    return vals


def parse_grid(text) -> tuple:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    try:
        a, b, step = (float(x) for x in parts)
    except (TypeError, ValueError):
        raise JobError(f"radius_grid: expected 'start:stop:step', got {text!r}") from None
    if step <= 0 or b < a:
        raise JobError("radius_grid: need step > 0 and stop >= start")
    return a, b, step


def radius_values(grid) -> np.ndarray:
    a, b, step = grid
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return np.round(a + step * np.arange(n), 12)


def load_job_document(text: str, source: str = "<input>") -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
        raise JobError(f"{where}: could not parse job document: {getattr(exc, 'problem', exc)}") from None
    if not isinstance(doc, dict):
        raise JobError(f"{source}: job document must be a mapping of keys to values")
    return doc


_DOC_KEYS = {"mode", "points", "subdivisions", "radius_grid", "tolerance", "seed", "samples", "format", "degrees"}


def spec_from_document(doc: dict, source: str = "<input>") -> JobSpec:
    unknown = set(doc) - _DOC_KEYS
    if unknown:
        raise JobError(f"{source}: unknown field(s): {', '.join(sorted(unknown))}")
    kw: dict[str, Any] = {}
    for key in ("mode", "format"):
        if key in doc:
            kw[key] = str(doc[key])
    if "points" in doc:
        pts = doc["points"]
        if not isinstance(pts, list):
            raise JobError(f"{source}: field 'points' must be a list of [x, y, z]")
        for i, p in enumerate(pts):
            if not (isinstance(p, list) and len(p) == 3 and all(isinstance(x, (int, float)) for x in p)):
                raise JobError(f"{source}: field 'points[{i}]' must be three numbers, got {p!r}")
        kw["points"] = [[float(x) for x in p] for p in pts]
    for key, typ in (("subdivisions", int), ("seed", int), ("samples", int), ("tolerance", float)):
        if key in doc:
            try:
                kw[key] = typ(doc[key])
            except (TypeError, ValueError):
                raise JobError(f"{source}: field '{key}' must be {typ.__name__}, got {doc[key]!r}") from None
    if "degrees" in doc:
        kw["degrees"] = bool(doc["degrees"])
    if "radius_grid" in doc:
        kw["radius_grid"] = parse_grid(doc["radius_grid"])
    if "mode" not in kw:
        raise JobError(f"{source}: field 'mode' is required")
    return JobSpec(**kw)


def validate(spec: JobSpec) -> None:
    if spec.mode not in MODES:
        raise JobError(f"mode: unknown mode {spec.mode!r}; expected one of {', '.join(MODES)}")
    if spec.format not in FORMATS:
        raise JobError(f"format: expected one of {', '.join(FORMATS)}")
    if spec.subdivisions < 1:
        raise JobError("subdivisions: must be a positive integer")
    n = len(spec.points)
    need = {"triangle": 3, "pure-limit": 3, "geodesic-refine": 2}
    if spec.mode in need and n != need[spec.mode]:
        raise JobError(f"points: mode {spec.mode} needs exactly {need[spec.mode]} points, got {n}")
    if spec.mode == "polygon" and n < 2:
        raise JobError("points: polygon needs at least two vertices")
    if spec.mode in ("compare-slater", "sweep", "hopf-check") and n not in (0, 3):
        raise JobError(f"points: mode {spec.mode} takes three points or none")
    if spec.mode in ("triangle", "polygon", "geodesic-refine", "hopf-check"):
        for i, p in enumerate(spec.points):
            if np.linalg.norm(p) >= 1.0:
                raise JobError(f"points[{i}]: mode {spec.mode} needs interior states (|u| < 1)")
    if spec.mode in ("pure-limit", "compare-slater", "sweep"):
        for i, p in enumerate(spec.points):
            if abs(np.linalg.norm(p) - 1.0) > spec.tolerance:
                raise JobError(f"points[{i}]: mode {spec.mode} needs unit direction vectors")
    a, b, _ = spec.radius_grid
    if spec.mode in ("compare-slater", "sweep") and (a <= 0.0 or b > 1.0):
        raise JobError("radius_grid: radii must lie in (0, 1]")


# -- jobs --------------------------------------------------------------------


def _vec(x) -> list:
    return [float(c) for c in np.asarray(x).ravel()]


def _triangle_record(pts) -> dict:
    u, v, w = (np.asarray(p) for p in pts)
    res = triangle.triangle_rotation(u, v, w)
    hol = transport.polygon_holonomy([u, v, w])
    oracle = transport.thomas_rotation_oracle(u, w) @ transport.thomas_rotation_oracle(w, v) @ transport.thomas_rotation_oracle(v, u)
    return {
        "phase": float(res.phase),
        "tan_phase": float(np.tan(res.phase)),
        "visibility": float(res.visibility),
        "delta": float(res.delta),
        "axis": _vec(res.axis),
        "volume": float(res.volume),
        "diagnostics": {
            "closed_form_vs_product": float(np.max(np.abs(res.rotation - hol.rotation))),
            "closed_form_vs_oracle": float(np.max(np.abs(res.rotation - oracle))),
            "phase_vs_trace": abs(float(res.phase) - hol.phase),
        },
    }


def job_triangle(spec: JobSpec) -> list:
    return [_triangle_record(spec.points)]


def job_polygon(spec: JobSpec) -> list:
    hol = transport.polygon_holonomy(spec.points)
    return [
        {
            "phase": hol.phase,
            "visibility": hol.visibility,
            "alpha": hol.angle_axis.alpha,
            "axis": _vec(hol.angle_axis.axis),
            "n_vertices": len(spec.points),
        }
    ]


def job_geodesic_refine(spec: JobSpec) -> list:
    u, v = (np.asarray(p) for p in spec.points)
    out = []
    n = 1
    while n <= spec.subdivisions:
        out.append({"n_subdiv": n, "deviation": transport.refined_geodesic_holonomy(u, v, n).deviation})
        n *= 2
    return out


def job_pure_limit(spec: JobSpec) -> list:
    n1, n2, n3 = (np.asarray(p) for p in spec.points)
    phase, omega = triangle.solid_angle_phase(n1, n2, n3)
    near = triangle.triangle_rotation(NEAR_PURE * n1, NEAR_PURE * n2, NEAR_PURE * n3)
    return [
        {
            "phase": float(phase),
            "omega": float(omega),
            "visibility": float(triangle.pure_visibility(n1, n2, n3)),
            "diagnostics": {
                "radius": NEAR_PURE,
                "phase_near_pure": float(near.phase),
                "visibility_near_pure": float(near.visibility),
                "delta_near_pure": float(near.delta),
            },
        }
    ]


def _directions(spec: JobSpec):
    return [np.asarray(p) for p in (spec.points or OCTANT)]


def job_compare_slater(spec: JobSpec) -> list:
    n1, n2, n3 = _directions(spec)
    mu = float(triangle.solid_angle_mu(n1, n2, n3))
    _, omega = triangle.solid_angle_phase(n1, n2, n3)
    out = []
    for r in radius_values(spec.radius_grid):
        out.append(
            {
                "r": float(r),
                "mu": mu,
                "tan_uhlmann": float(np.tan(triangle.fixed_radius_phase(n1, n2, n3, r))),
                "tan_slater": float(triangle.slater_tan(n1, n2, n3, r)),
                "tan_interferometric": float(np.tan(triangle.interferometric_phase(omega, r))),
                "ratio": float(triangle.phase_ratio(mu, r)),
            }
        )
    return out


def job_sweep(spec: JobSpec) -> list:
    n1, n2, n3 = _directions(spec)

    def one(r):
        if r >= 1.0:
            phase, omega = triangle.solid_angle_phase(n1, n2, n3)
            return {"r": float(r), "phase": float(phase), "visibility": float(triangle.pure_visibility(n1, n2, n3)), "delta": float(abs(omega))}
        res = triangle.triangle_rotation(r * n1, r * n2, r * n3)
        return {"r": float(r), "phase": float(res.phase), "visibility": float(res.visibility), "delta": float(res.delta)}

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        # map preserves input order
        return list(pool.map(one, radius_values(spec.radius_grid)))


def _random_interior(rng, n) -> np.ndarray:
    out = []
    while len(out) < n:
        x = rng.uniform(-1.0, 1.0, 3)
        if x @ x < 1.0:
            out.append(x)
    return np.array(out)


def _hopf_record(pts, subdivisions) -> dict:
    u, v, w = pts
    qR = mat_to_quat(triangle.triangle_rotation(u, v, w).rotation)
    qP = hopf.quaternionic_pancharatnam(hopf.bloch_section(np.array(pts)))
    qW = hopf.wilson_loop(np.array(pts), subdivisions)
    return {
        "points": [_vec(p) for p in pts],
        "pancharatnam_vs_closed_form": float(quat_distance(qR, qP)),
        "wilson_vs_closed_form": float(quat_distance(qR, qW)),
        "n_steps": subdivisions,
    }


def job_hopf_check(spec: JobSpec) -> list:
    if spec.points:
        return [_hopf_record([np.asarray(p) for p in spec.points], spec.subdivisions)]
    rng = np.random.default_rng(spec.seed)
    return [_hopf_record(_random_interior(rng, 3), spec.subdivisions) for _ in range(spec.samples)]


JOBS = {
    "triangle": job_triangle,
    "polygon": job_polygon,
    "geodesic-refine": job_geodesic_refine,
    "pure-limit": job_pure_limit,
    "compare-slater": job_compare_slater,
    "hopf-check": job_hopf_check,
    "sweep": job_sweep,
}


def run_job(spec: JobSpec) -> list:
    """Validate ``spec`` and return its result records (angles in radians)."""
    validate(spec)
    return JOBS[spec.mode](spec)


# -- output ------------------------------------------------------------------


def _to_degrees(rec):
    out = {}
    for k, v in rec.items():
        if isinstance(v, dict):
            out[k] = _to_degrees(v)
        elif k in ANGLE_FIELDS or k.startswith("delta") or k.startswith("phase"):
            out[k] = math.degrees(v)
        else:
            out[k] = v
    return out


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return '"%s"' % x
    return "%.17g" % x


def to_json(obj) -> str:
    """JSON with floats written at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f'"{k}": {to_json(v)}' for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    return '"' + str(obj).replace('"', '\\"') + '"'


def _flatten(rec, prefix=""):
    flat = {}
    for k, v in rec.items():
        key = prefix + k
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, list) and v and not isinstance(v[0], list):
            for i, x in enumerate(v):
                flat[f"{key}_{i}"] = x
        else:
            flat[key] = v
    return flat


def write_records(records: Iterable[dict], fmt: str, stream) -> None:
    records = list(records)
    if fmt == "json-lines":
        for rec in records:
            stream.write(to_json(rec) + "\n")
        return
    rows = [_flatten(r) for r in records]
    if not rows:
        return
    writer = csv.writer(stream, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow(["%.17g" % row[h] if isinstance(row[h], float) else row[h] for h in header])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uhlmann", description="Uhlmann holonomy, phase and visibility for one-qubit states.")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--input", help="YAML job document")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--subdivisions", type=int)
    p.add_argument("--radius-grid", help="start:stop:step, inclusive")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--degrees", action="store_true", default=None)
    p.add_argument("--u", help="x,y,z of the first vertex")
    p.add_argument("--v", help="x,y,z of the second vertex")
    p.add_argument("--w", help="x,y,z of the third vertex")
    p.add_argument("--output", help="write records here instead of stdout")
    return p


def spec_from_args(args) -> JobSpec:
    if args.input:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise JobError(f"{args.input}: {exc.strerror}") from None
        spec = spec_from_document(load_job_document(text, args.input), args.input)
    else:
        if not args.mode:
            raise JobError("either --input or --mode is required")
        spec = JobSpec(mode=args.mode, tolerance=Tolerances.from_env().hermitian)
    overrides: dict[str, Any] = {}
    if args.mode:
        overrides["mode"] = args.mode
    for key in ("format", "subdivisions", "tolerance", "seed", "samples", "degrees"):
        val = getattr(args, key)
        if val is not None:
            overrides[key] = val
    if args.radius_grid:
        overrides["radius_grid"] = parse_grid(args.radius_grid)
    pts = [parse_vector(getattr(args, k), k) for k in ("u", "v", "w") if getattr(args, k)]
    if pts:
        overrides["points"] = pts
    return replace(spec, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
        records = run_job(spec)
    except ValidationError as exc:
        print(f"uhlmann: invalid input: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"uhlmann: numerical failure: {exc}", file=sys.stderr)
        return 2
    if spec.degrees:
        records = [_to_degrees(r) for r in records]
    if args.output:
        with open(args.output, "w", newline="") as fh:
            write_records(records, spec.format, fh)
    else:
        buf = io.StringIO()
        write_records(records, spec.format, buf)
        sys.stdout.write(buf.getvalue())
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
