"""Command-line front end: certify states, scan families, search bounds,
generate state files.

Exit codes: 0 success (no verdict claimed), 3 entangled verdict,
1 usage error, 2 validation/parse error.  Error paths print a single
machine-parsable line ``error[<code>]: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .linalg import InvalidParameterError, LurcertError, Tolerances, ensure_hermitian
from .lur import (
    JointOperatorSet,
    RELATION_KINDS,
    build_joint,
    certify,
    joint_from_catalog,
    white_noise_two_component_violation,
    white_noise_violation,
)
from .bound_search import SearchConfig, minimize_sum_uncertainty
from .spin_ops import OperatorSet, SpinQuantum, spin_subset, stokes_subset
from .states import (
    DensityMatrix,
    bell_mixture,
    min_uncertainty_state_n3,
    read_state,
    singlet_state,
    white_noise_mixture,
    write_state,
    x_decoherence_mixture,
)
from .uncertainty import CATALOG_KINDS, catalog_bound

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_ENTANGLED = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser with the documented usage exit code."""

    def error(self, message):
        print(f"error[usage]: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"grid must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise InvalidParameterError(f"grid values must be numbers, got {spec!r}") from exc
    if step <= 0:
        raise InvalidParameterError("grid step must be positive")
    if stop < start:
        raise InvalidParameterError("grid stop must not be below start")
    count = int(round((stop - start) / step))
    values = [start + k * step for k in range(count + 1)]
    # snap float accumulation onto the endpoint so p = stop stays in range
    values = [stop if abs(v - stop) < 1e-12 else v for v in values]
    return [v for v in values if v <= stop]


def _load_relation_side(doc: dict, what: str) -> tuple[OperatorSet, float, str]:
    for key in ("label", "bound", "provenance", "operators"):
        if key not in doc:
            raise InvalidParameterError(f"{what} is missing key {key!r}")
    ops = [_matrix_from_rows(rows, f"{what} operator {k}") for k, rows in enumerate(doc["operators"])]
    ops = [ensure_hermitian(op, what=f"{what} operator {k}") for k, op in enumerate(ops)]
    op_set = OperatorSet(label=str(doc["label"]), operators=tuple(ops))
    bound = float(doc["bound"])
    if bound < 0:
        raise InvalidParameterError(f"{what} bound must be nonnegative")
    return op_set, bound, str(doc["provenance"])


def _matrix_from_rows(rows, what: str) -> np.ndarray:
    try:
        arr = np.array([[complex(c[0], c[1]) for c in row] for row in rows])
    except (TypeError, IndexError, ValueError) as exc:
        raise InvalidParameterError(f"{what} must be a matrix of [re, im] pairs") from exc
    return arr


def _matrix_to_rows(m: np.ndarray) -> list:
    return [[[z.real, z.imag] for z in row] for row in m]


def _resolve_joint(relation: str, rho: DensityMatrix) -> JointOperatorSet:
    """Catalog kind token, or path to a bound file written by search-bound."""
    if relation in RELATION_KINDS:
        return joint_from_catalog(relation, rho.dim_a, rho.dim_b)
    path = Path(relation)
    if not path.is_file():
        raise InvalidParameterError(
            f"relation {relation!r} is neither a catalog kind {RELATION_KINDS} nor a bound file"
        )
    doc = json.loads(path.read_text(encoding="utf-8"))
    if "side_a" in doc or "side_b" in doc:
        if not ("side_a" in doc and "side_b" in doc):
            raise InvalidParameterError("asymmetric bound file needs both side_a and side_b")
        set_a, u_a, prov_a = _load_relation_side(doc["side_a"], "side_a")
        set_b, u_b, prov_b = _load_relation_side(doc["side_b"], "side_b")
    else:
        set_a, u_a, prov_a = _load_relation_side(doc, "bound file")
        set_b, u_b, prov_b = set_a, u_a, prov_a
    return build_joint(
        set_a, u_a, set_b, u_b, provenance=(prov_a, prov_b), label=str(path)
    )


def cmd_certify(args) -> int:
    tolerances = Tolerances.from_env()
    rho = read_state(args.state, tolerances)
    if not rho.is_bipartite:
        raise InvalidParameterError(
            f"certification needs a bipartite state file (two dims), got dims {list(rho.dims)}"
        )
    cert = certify(rho, _resolve_joint(args.relation, rho))
    print(f"state:    {args.state} (dims {rho.dim_a}x{rho.dim_b}, digest {cert.state_digest[:16]})")
    print(f"relation: {cert.relation_label} (bounds {cert.bound_provenance[0]}, {cert.bound_provenance[1]})")
    print(f"per-component uncertainty: [{', '.join(_fmt(v) for v in cert.per_component)}]")
    print(f"total:                     {_fmt(cert.total)}")
    print(f"local limit:               {_fmt(cert.local_limit)}")
    print(f"relative violation C:      {_fmt(cert.relative_violation)}")
    print(f"verdict: {'ENTANGLED' if cert.entangled else 'no violation (not a separability proof)'}")
    if args.json:
        Path(args.json).write_text(json.dumps(cert.to_json_dict(), indent=2) + "\n", encoding="utf-8")
    return EXIT_ENTANGLED if cert.entangled else EXIT_OK


def _closed_form(kind: str, relation: str, spin: SpinQuantum, value: float) -> float | None:
    if kind == "white":
        if relation in ("l3", "s3"):
            return white_noise_violation(spin, value)
        if relation in ("l2n3", "s2n3"):
            return white_noise_two_component_violation(value)
    elif kind == "xdecoherence":
        if relation in ("l3", "s3"):
            return 1.0 - 4.0 * value / 3.0
        if relation in ("l2n3", "s2n3"):
            return 1.0 - 32.0 * value / 21.0
    elif kind == "bell":
        if relation in ("l3", "s3"):
            return 2.0 * value - 1.0
        if relation in ("l2n2", "s2n2"):
            # sweep keeps p_3 = 0, so C_S2 = 2 p_S - 1
            return 2.0 * value - 1.0
    return None


def _family_state(kind: str, spin: SpinQuantum | None, value: float) -> DensityMatrix:
    tolerances = Tolerances.from_env()
    if kind == "white":
        return white_noise_mixture(spin, value, tolerances)
    if kind == "xdecoherence":
        return x_decoherence_mixture(value, tolerances)
    return bell_mixture(value, 1.0 - value, 0.0, 0.0, tolerances)


def cmd_family(args) -> int:
    grid = _parse_grid(args.grid)
    spin = None
    if args.kind == "white":
        if args.two_l is None:
            raise InvalidParameterError("family white needs --two-l to fix the level number")
        spin = SpinQuantum(args.two_l)
    elif args.two_l is not None:
        expected = {"xdecoherence": 2, "bell": 1}[args.kind]
        if args.two_l != expected:
            raise InvalidParameterError(
                f"family {args.kind} is fixed at two_l={expected}, got --two-l {args.two_l}"
            )
    lines = ["parameter,total,local_limit,C,closed_form_C,abs_difference"]
    joint = None
    for value in grid:
        rho = _family_state(args.kind, spin, value)
        if joint is None:
            joint = joint_from_catalog(args.relation, rho.dim_a, rho.dim_b)
        cert = certify(rho, joint)
        closed = _closed_form(args.kind, args.relation, spin, value)
        if closed is None:
            closed_s, diff_s = "", ""
        else:
            closed_s = _fmt(closed)
            diff_s = _fmt(abs(cert.relative_violation - closed))
        lines.append(
            f"{_fmt(value)},{_fmt(cert.total)},{_fmt(cert.local_limit)},"
            f"{_fmt(cert.relative_violation)},{closed_s},{diff_s}"
        )
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(grid)} rows to {args.out}")
    return EXIT_OK


def _parse_operator_spec(spec: str, two_l: int | None) -> OperatorSet:
    if spec.startswith("spin:"):
        if two_l is None:
            raise InvalidParameterError("builtin spin sets need --two-l")
        return spin_subset(SpinQuantum(two_l), spec[len("spin:"):])
    if spec.startswith("stokes:"):
        if two_l is None:
            raise InvalidParameterError("builtin stokes sets need --two-l (photon number n = 2l)")
        return stokes_subset(two_l, spec[len("stokes:"):])
    path = Path(spec)
    if not path.is_file():
        raise InvalidParameterError(
            f"operator set {spec!r} is neither spin:<xyz>, stokes:<123>, nor a JSON file"
        )
    doc = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(doc, dict) or "operators" not in doc:
        raise InvalidParameterError('operator file must be an object with an "operators" key')
    ops = [_matrix_from_rows(rows, f"operator {k}") for k, rows in enumerate(doc["operators"])]
    ops = [ensure_hermitian(op, what=f"operator {k}") for k, op in enumerate(ops)]
    return OperatorSet(label=str(doc.get("label", path.name)), operators=tuple(ops))


def cmd_search_bound(args) -> int:
    op_set = _parse_operator_spec(args.set, args.two_l)
    config = SearchConfig(restarts=args.restarts, rng_seed=args.seed)
    result = minimize_sum_uncertainty(op_set, config)
    print(f"set:      {op_set.label} (dimension {op_set.dim}, {len(op_set)} operators)")
    print(f"minimum:  {_fmt(result.minimum)}")
    print(
        f"restarts: {config.restarts}  agreeing: {result.restarts_agreeing}"
        f"  converged: {result.converged_count}"
    )
    print(f"confidence: {'LOW (few restarts agree)' if result.low_confidence else 'ok'}")
    if not result.any_converged:
        print("warning: no restart converged; minimum is the best value found")
    if result.minimum < 1e-8:
        print("note: minimum is ~0, a common eigenstate exists; no usable uncertainty limit")
    if args.emit_state:
        write_state(result.argmin.projector(), args.emit_state)
        print(f"wrote argmin state to {args.emit_state}")
    if args.emit_bound:
        doc = {
            "label": op_set.label,
            "dim": op_set.dim,
            "bound": result.minimum,
            "provenance": "numerically-certified",
            "operators": [_matrix_to_rows(op) for op in op_set],
        }
        Path(args.emit_bound).write_text(json.dumps(doc) + "\n", encoding="utf-8")
        print(f"wrote bound file to {args.emit_bound}")
    return EXIT_OK


def cmd_state_gen(args) -> int:
    tolerances = Tolerances.from_env()
    kind = args.kind
    if kind == "singlet":
        if args.two_l is None:
            raise InvalidParameterError("state-gen singlet needs --two-l")
        state = singlet_state(SpinQuantum(args.two_l), tolerances)
    elif kind == "minuncert3":
        state = min_uncertainty_state_n3(args.phi).projector(tolerances=tolerances)
    elif kind == "white":
        if args.two_l is None or args.p is None:
            raise InvalidParameterError("state-gen white needs --two-l and --p")
        state = white_noise_mixture(SpinQuantum(args.two_l), args.p, tolerances)
    elif kind == "xdecoherence":
        if args.p is None:
            raise InvalidParameterError("state-gen xdecoherence needs --p")
        state = x_decoherence_mixture(args.p, tolerances)
    else:
        weights = (args.ps, args.p1, args.p2, args.p3)
        if any(w is None for w in weights):
            raise InvalidParameterError("state-gen bell needs --ps --p1 --p2 --p3")
        state = bell_mixture(*weights, tolerances)
    write_state(state, args.out)
    print(f"wrote {kind} state (dims {'x'.join(str(d) for d in state.dims)}) to {args.out}")
    return EXIT_OK


def cmd_bound(args) -> int:
    kind = args.kind
    size = SpinQuantum(args.two_l) if kind.startswith("spin") else args.two_l
    relation = catalog_bound(kind, size)
    exact = Fraction(relation.bound).limit_denominator(10**6)
    print(f"set:   {relation.operator_set.label}")
    print(f"bound: {_fmt(relation.bound)} (= {exact})")
    print(f"provenance: {relation.provenance}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lurcert", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="evaluate a local uncertainty relation on a state file")
    p.add_argument("--state", required=True, help="JSON state file")
    p.add_argument(
        "--relation",
        required=True,
        help=f"catalog kind {RELATION_KINDS} or path to a search-bound file",
    )
    p.add_argument("--json", help="also write the certificate as JSON to this path")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("family", help="scan a state family and write a CSV curve")
    p.add_argument("--kind", required=True, choices=("white", "xdecoherence", "bell"))
    p.add_argument("--grid", required=True, help="parameter grid start:stop:step")
    p.add_argument("--relation", required=True, choices=RELATION_KINDS)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--two-l", type=int, dest="two_l", help="level number as 2l (white family)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search-bound", help="numerically certify an uncertainty limit")
    p.add_argument("--set", required=True, help="spin:<xyz> | stokes:<123> | operator JSON file")
    p.add_argument("--two-l", type=int, dest="two_l", help="2l for spin sets, n for stokes sets")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-state", dest="emit_state", help="write the argmin state file here")
    p.add_argument("--emit-bound", dest="emit_bound", help="write a certified bound file here")
    p.set_defaults(func=cmd_search_bound)

    p = sub.add_parser("state-gen", help="write a built-in state family member to a file")
    p.add_argument("--kind", required=True, choices=("singlet", "minuncert3", "white", "xdecoherence", "bell"))
    p.add_argument("--two-l", type=int, dest="two_l")
    p.add_argument("--phi", type=float, default=0.0, help="phase of the three-level minimal-uncertainty family")
    p.add_argument("--p", type=float, help="noise weight for white/xdecoherence")
    p.add_argument("--ps", type=float)
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--p3", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_state_gen)

    p = sub.add_parser("bound", help="print a catalog bound")
    p.add_argument("--kind", required=True, choices=CATALOG_KINDS)
    p.add_argument("--two-l", type=int, dest="two_l", required=True,
                   help="2l for spin kinds, n for stokes kinds")
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except LurcertError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
