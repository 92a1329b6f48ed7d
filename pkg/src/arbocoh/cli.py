"""Batch command-line interface with deterministic machine-readable output.

Subcommands: classify, spectrum, shapes-enumerate, chartab, flip-demo,
spherical-check, verify.  Global flags: --config PATH, --seed N, --depth N,
--format json|csv; the ARBOCOH_CONFIG environment variable supplies a
default config path.

Output is byte-deterministic for identical inputs and config: dict keys
are emitted in a fixed order, floats are rounded to 12 significant digits
before serialization, and every randomized report embeds its seed.

Descriptor JSON: {"tag": "spherical"|"special"|"cuspidal",
                  "z": "a+bi", "sign": "+"|"-",
                  "shape": {q, vertices, edges},
                  "irrep": row index or spectrum fingerprint,
                  "q": branching parameter}.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import verify as verify_mod
from .catalog import enumerate_complete_shapes
from .chartab import character_table
from .config import Config, load_config
from .errors import ArbocohError, InvalidDescriptor, UnknownSuite
from .flip import find_flip, check_flip_witness
from .perm import shape_automorphism_group
from .reptheory import RepDescriptor, classify_bounded_cohomology, enumerate_nondegenerate
from .shapes import Shape, classify_shape
from .spherical import eigen_residual, gram_psd_check, is_admissible, mu_of_z, phi_values
from .tree import Vertex
from .verify import random_rays, random_flip_instance


# -- deterministic emission ----------------------------------------------------


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, complex):
        return {"re": float(f"{obj.real:.12g}"), "im": float(f"{obj.imag:.12g}")}
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def emit(data, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    data = _round_floats(data)
    if fmt == "csv" and isinstance(data, dict) and "rows" in data and "columns" in data:
        cols = data["columns"]
        print(",".join(str(c) for c in cols), file=stream)
        for row in data["rows"]:
            print(",".join(str(row[c]) for c in cols), file=stream)
        return
    print(json.dumps(data, indent=2), file=stream)


def parse_complex(text: str) -> complex:
    return complex(str(text).replace(" ", "").replace("i", "j"))


def format_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def descriptor_from_json(data: dict) -> RepDescriptor:
    tag = data.get("tag")
    if tag == "spherical":
        return RepDescriptor.spherical(int(data.get("q", 2)), parse_complex(data["z"]))
    if tag == "special":
        sign = {"−": "-"}.get(data["sign"], data["sign"])
        return RepDescriptor.special(int(data.get("q", 2)), sign)
    if tag == "cuspidal":
        shape = Shape.from_json(data["shape"])
        return RepDescriptor.cuspidal(shape, _resolve_row(shape, data["irrep"]))
    raise InvalidDescriptor(f"unknown descriptor tag {tag!r}")


def _resolve_row(shape: Shape, irrep) -> int:
    """Row index from either an integer or a character fingerprint as
    printed by the spectrum command."""
    if isinstance(irrep, int) or (isinstance(irrep, str) and irrep.lstrip("-").isdigit()):
        return int(irrep)
    table = character_table(shape_automorphism_group(shape))
    for row in range(table.n_rows):
        if _fingerprint(table.degrees[row], table.characters[row]) == irrep:
            return row
    raise InvalidDescriptor(f"no character row with fingerprint {irrep!r}")


def _shape_arg(text: str) -> Shape:
    return Shape.from_json(json.loads(text))


def _fingerprint(degree: int, values) -> str:
    parts = ",".join(
        format_complex(complex(v)) if abs(complex(v).imag) > 1e-12 else f"{complex(v).real:.6g}"
        for v in values
    )
    return f"deg{degree}[{parts}]"


# -- subcommands ----------------------------------------------------------------


def cmd_classify(args, cfg: Config) -> int:
    data = json.loads(args.descriptor)
    try:
        desc = descriptor_from_json(data)
        dim = classify_bounded_cohomology(desc, args.n)
    except InvalidDescriptor as exc:
        emit({"error": "InvalidDescriptor", "message": str(exc)}, "json")
        return 2
    emit({"descriptor": data, "n": args.n, "dim": dim}, "json")
    return 0


def cmd_spectrum(args, cfg: Config) -> int:
    shape = _shape_arg(args.shape)
    table = character_table(shape_automorphism_group(shape, cfg.group_order_bound))
    rows = []
    for row, degree, h2 in enumerate_nondegenerate(shape):
        rows.append(
            {
                "row": row,
                "degree": degree,
                "fingerprint": _fingerprint(degree, table.characters[row]),
                "h2_dim": h2,
            }
        )
    emit(
        {
            "shape": shape.to_json(),
            "group_order": table.group.order,
            "columns": ["row", "degree", "fingerprint", "h2_dim"],
            "rows": rows,
        },
        cfg.output_format,
    )
    return 0


def cmd_shapes_enumerate(args, cfg: Config) -> int:
    shapes = enumerate_complete_shapes(args.q, args.max_diameter)
    rows = []
    for s in shapes:
        cls = classify_shape(s)
        rows.append(
            {
                "vertices": len(s.vertices),
                "diameter": s.diameter(),
                "class": cls.tag if cls.tag != "centipede" else f"centipede({cls.k})",
                "json": json.dumps(s.to_json(), separators=(",", ":")),
            }
        )
    emit(
        {
            "q": args.q,
            "max_diameter": args.max_diameter,
            "count": len(rows),
            "columns": ["vertices", "diameter", "class", "json"],
            "rows": rows,
        },
        cfg.output_format,
    )
    return 0


def cmd_chartab(args, cfg: Config) -> int:
    shape = _shape_arg(args.shape)
    table = character_table(shape_automorphism_group(shape, cfg.group_order_bound))
    data = table.to_json()
    data["row_orthogonality_residual"] = table.row_orthogonality_residual()
    data["column_orthogonality_residual"] = table.column_orthogonality_residual()
    emit(data, "json")
    return 0


def cmd_flip_demo(args, cfg: Config) -> int:
    import numpy as np

    rng = np.random.default_rng(cfg.seed)
    q = args.q
    depth = args.depth or cfg.default_depth
    if args.rays:
        rays = random_rays(rng, q, args.rays, depth)
        s = None
    else:
        rays, s = random_flip_instance(rng, q, depth)
    w = find_flip(q, rays, s, depth)
    fails = check_flip_witness(q, rays, s, w)
    emit(
        {
            "seed": cfg.seed,
            "q": q,
            "depth": depth,
            "rays": [list(r.word) for r in rays],
            "subtree": sorted(list(x) for x in s.image_words()) if s else None,
            "swapped": [w.i, w.j],
            "certified_depth": w.certified_depth,
            "isometry_domain_size": len(w.h.mapping),
            "checks_passed": not fails,
            "failures": fails,
        },
        "json",
    )
    return 0 if not fails else 1


def cmd_spherical_check(args, cfg: Config) -> int:
    q = args.q
    z = parse_complex(args.z)
    depth = args.depth or 8
    phi = phi_values(q, z, depth)
    rows = [
        {"d": d, "re_phi": float(phi[d].real), "im_phi": float(phi[d].imag)}
        for d in range(depth + 1)
    ]
    gram_vertices = [Vertex((0,) * d) for d in range(6)]
    emit(
        {
            "q": q,
            "z": format_complex(z),
            "mu": format_complex(mu_of_z(q, z)),
            "admissible": is_admissible(q, z),
            "eigen_residual": eigen_residual(q, z, depth),
            "gram_min_eigenvalue_path6": gram_psd_check(q, z, gram_vertices),
            "columns": ["d", "re_phi", "im_phi"],
            "rows": rows,
        },
        cfg.output_format,
    )
    return 0


def cmd_verify(args, cfg: Config) -> int:
    try:
        report = verify_mod.run_suite(args.suite, cfg)
    except UnknownSuite as exc:
        emit({"error": "UnknownSuite", "message": str(exc)}, "json")
        return 3
    emit(report, "json")
    return 0 if report["passed"] else 1


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="arbocoh",
        description="bounded-cohomology dimensions for tree automorphism groups",
    )
    p.add_argument("--config", help="config JSON path (overrides ARBOCOH_CONFIG)")
    p.add_argument("--seed", type=int, help="seed for randomized suites")
    p.add_argument("--depth", type=int, help="default ray-prefix depth")
    p.add_argument("--format", choices=["json", "csv"], help="output format")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="dimension of H^n_cb for a descriptor")
    c.add_argument("descriptor", help="descriptor JSON")
    c.add_argument("-n", type=int, required=True, help="cohomology degree")
    c.set_defaults(fn=cmd_classify)

    c = sub.add_parser("spectrum", help="non-degenerate irreducibles of a shape")
    c.add_argument("shape", help="shape JSON")
    c.set_defaults(fn=cmd_spectrum)

    c = sub.add_parser("shapes-enumerate", help="complete shapes up to a diameter")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--max-diameter", type=int, required=True)
    c.set_defaults(fn=cmd_shapes_enumerate)

    c = sub.add_parser("chartab", help="character table of a shape's automorphisms")
    c.add_argument("shape", help="shape JSON")
    c.set_defaults(fn=cmd_chartab)

    c = sub.add_parser("flip-demo", help="random branch-swap witness")
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--rays", type=int, help="ray count (omit for a random subtree too)")
    c.set_defaults(fn=cmd_flip_demo)

    c = sub.add_parser("spherical-check", help="radial table and residuals")
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--z", required=True, help='complex parameter, e.g. "0.5+0.7i"')
    c.set_defaults(fn=cmd_spherical_check)

    c = sub.add_parser("verify", help="run an invariant suite")
    c.add_argument("suite", help="geometry | flip | groups | reps | spherical | all")
    c.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.depth is not None:
        updates["default_depth"] = args.depth
    if args.format is not None:
        updates["output_format"] = args.format
    if updates:
        cfg = dataclasses.replace(cfg, **updates)
    try:
        return args.fn(args, cfg)
    except ArbocohError as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, "json")
        return 1


if __name__ == "__main__":
    sys.exit(main())
