"""Command-line entry point.

Exit codes: 0 computed/verified, 1 a verification check failed,
2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cohomology import MAX_ENTRIES, h1, h1_loc
from .errors import CapExceeded, SylowError
from .matgroup import (DEFAULT_CAP, enumerate_group, reduce_mod,
                       reduction_preserves_order, sylow_p)
from .modring import IntMatrix, ModMatrix, Modulus, is_prime
from .torus import VerificationReport, verify_counterexample

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int_matrix(obj, r: int, what: str) -> list[list[int]]:
    if not isinstance(obj, list) or len(obj) != r:
        raise InputError(f"{what} must be a list of {r} rows")
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != r:
            raise InputError(f"{what} must be {r} x {r}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InputError(f"{what} entries must be integers")
        rows.append(list(row))
    return rows


@dataclass
class GroupSpec:
    """A subgroup of GL_r(Z/p^nZ) given by generators (entries reduced on load)."""

    p: int
    n: int
    dimension: int
    generators: list[list[list[int]]]
    label: str | None = None

    @classmethod
    def from_dict(cls, data) -> "GroupSpec":
        if not isinstance(data, dict):
            raise InputError("group spec must be a JSON object")
        try:
            p, n = data["modulus"]["p"], data["modulus"]["n"]
            r = data["dimension"]
            gens = data["generators"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"missing field: {exc}") from None
        if not (isinstance(p, int) and is_prime(p) and p != 2):
            raise InputError(f"p must be an odd prime, got {p!r}")
        if not (isinstance(n, int) and n >= 1):
            raise InputError(f"n must be a positive integer, got {n!r}")
        if not (isinstance(r, int) and r >= 1):
            raise InputError(f"dimension must be a positive integer, got {r!r}")
        if not isinstance(gens, list):
            raise InputError("generators must be a list of matrices")
        label = data.get("label")
        if label is not None and not isinstance(label, str):
            raise InputError("label must be a string")
        q = p**n
        mats = [[[x % q for x in row] for row in _int_matrix(g, r, f"generator {i}")]
                for i, g in enumerate(gens)]
        spec = cls(p, n, r, mats, label)
        modulus = spec.modulus()
        for i, g in enumerate(mats):
            if not ModMatrix(modulus, g).is_invertible():
                raise InputError(f"generator {i} is not invertible mod {p}")
        return spec

    def modulus(self) -> Modulus:
        try:
            return Modulus(self.p, self.n)
        except CapExceeded:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None

    def to_dict(self) -> dict:
        out = {"modulus": {"p": self.p, "n": self.n}, "dimension": self.dimension,
               "generators": self.generators}
        if self.label is not None:
            out["label"] = self.label
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "GroupSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def build(self, cap: int = DEFAULT_CAP):
        m = self.modulus()
        return enumerate_group(m, self.dimension, [ModMatrix(m, g) for g in self.generators], cap=cap)


@dataclass
class IntegerGroupSpec:
    """A finite subgroup of GL_r(Z) given by generators."""

    dimension: int
    generators: list[list[list[int]]]
    cap: int = DEFAULT_CAP
    label: str | None = None

    @classmethod
    def from_dict(cls, data) -> "IntegerGroupSpec":
        if not isinstance(data, dict):
            raise InputError("integer group spec must be a JSON object")
        r = data.get("dimension")
        gens = data.get("generators")
        cap = data.get("cap", DEFAULT_CAP)
        if not (isinstance(r, int) and r >= 1):
            raise InputError(f"dimension must be a positive integer, got {r!r}")
        if not isinstance(gens, list):
            raise InputError("generators must be a list of matrices")
        if not (isinstance(cap, int) and cap >= 1):
            raise InputError("cap must be a positive integer")
        mats = [_int_matrix(g, r, f"generator {i}") for i, g in enumerate(gens)]
        for i, g in enumerate(mats):
            if IntMatrix.from_rows(g).det() not in (1, -1):
                raise InputError(f"generator {i} is not invertible over Z")
        return cls(r, mats, cap, data.get("label"))

    @classmethod
    def loads(cls, text: str) -> "IntegerGroupSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {"dimension": self.dimension, "generators": self.generators, "cap": self.cap}
        if self.label is not None:
            out["label"] = self.label
        return out


# ---------------------------------------------------------------------------
# commands; each returns (exit code, JSON-ready payload)


def cmd_verify_counterexample(p: int, cap: int = DEFAULT_CAP, jobs: int = 1):
    if not (is_prime(p) and p != 2):
        raise InputError(f"p must be an odd prime, got {p}")
    report = verify_counterexample(p, cap=cap, jobs=jobs)
    return (EXIT_OK if report.verdict else EXIT_FAILED), report.to_dict()


def _cohomology_payload(command: str, spec: GroupSpec, result, G, basis: bool) -> dict:
    out = {"schema": 1, "command": command, "label": spec.label,
           "modulus": {"p": spec.p, "n": spec.n}, "dimension": spec.dimension,
           "group_order": len(G), "invariant_factors": list(result.invariant_factors),
           "order": result.order}
    if basis:
        out["elements"] = G.elements.tolist()
        out["basis"] = [z.tolist() for z in result.basis]
    return out


def cmd_h1(spec: GroupSpec, basis: bool = False, cap: int = DEFAULT_CAP, matrix_cap: int = MAX_ENTRIES):
    G = spec.build(cap)
    return EXIT_OK, _cohomology_payload("h1", spec, h1(G, max_entries=matrix_cap), G, basis)


def cmd_h1loc(spec: GroupSpec, basis: bool = False, cap: int = DEFAULT_CAP, matrix_cap: int = MAX_ENTRIES):
    G = spec.build(cap)
    return EXIT_OK, _cohomology_payload("h1loc", spec, h1_loc(G, max_entries=matrix_cap), G, basis)


def cmd_sylow(spec: GroupSpec, cap: int = DEFAULT_CAP):
    G = spec.build(cap)
    S = sylow_p(G)
    members = set(int(i) for i in G.lookup(S.elements))
    levels = []
    for j in range(1, spec.n):
        red = reduce_mod(G, j)
        image_of_sylow = {int(red.projection[i]) for i in members}
        image_sylow = sylow_p(red.image_group)
        levels.append({
            "level": j,
            "image_order": len(red.image_group),
            "kernel_order": len(red.kernel_indices),
            "kernel_in_sylow": set(red.kernel_indices) <= members,
            "sylow_image_order": len(image_of_sylow),
            "image_sylow_order": len(image_sylow),
        })
    return EXIT_OK, {"schema": 1, "command": "sylow", "label": spec.label,
                     "modulus": {"p": spec.p, "n": spec.n}, "dimension": spec.dimension,
                     "group_order": len(G), "sylow_order": len(S),
                     "sylow_generators": [g.tolist() for g in S.generators],
                     "reductions": levels}


def cmd_check_injectivity(spec: IntegerGroupSpec, p: int, cap: int | None = None):
    if not (is_prime(p) and p != 2):
        raise InputError(f"p must be an odd prime, got {p}")
    cap = spec.cap if cap is None else cap
    gens = [IntMatrix.from_rows(g) for g in spec.generators]
    integer_order, image_order = reduction_preserves_order(gens, p, cap)
    report = VerificationReport("check-injectivity",
                                {"p": p, "dimension": spec.dimension, "label": spec.label})
    report.add("orders_equal", integer_order == image_order,
               integer_order=integer_order, reduction_order=image_order)
    return (EXIT_OK if report.verdict else EXIT_FAILED), report.to_dict()


# ---------------------------------------------------------------------------
# formatting and argument parsing


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def render_text(payload: dict) -> str:
    lines = []
    if "checks" in payload:
        lines.append(f"scenario: {payload['scenario']}")
        lines.append("parameters: " + json.dumps(payload["parameters"]))
        for c in payload["checks"]:
            tag = _color("PASS", "32") if c["passed"] else _color("FAIL", "31")
            lines.append(f"  {tag} {c['name']}")
        lines.append("verdict: " + ("verified" if payload["verdict"] else "FAILED"))
        return "\n".join(lines)
    for key, value in payload.items():
        if key in ("schema", "elements", "basis"):
            continue
        lines.append(f"{key}: {json.dumps(value)}")
    if "basis" in payload:
        for i, table in enumerate(payload["basis"]):
            lines.append(f"basis[{i}]: {json.dumps(table)}")
    return "\n".join(lines)


def emit(payload: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(render_text(payload) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group order")
    common.add_argument("--matrix-cap", type=int, default=MAX_ENTRIES,
                        help="maximum entries of a cocycle constraint matrix")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")

    parser = argparse.ArgumentParser(prog="localcoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-counterexample", parents=[common],
                       help="verify the norm-one torus counterexample at a prime p")
    v.add_argument("-p", type=int, required=True)

    for name in ("h1", "h1loc"):
        c = sub.add_parser(name, parents=[common], help=f"compute {name} of a group spec file")
        c.add_argument("--input", required=True, type=Path)
        c.add_argument("--basis", action="store_true", help="print basis cocycle tables")

    s = sub.add_parser("sylow", parents=[common], help="Sylow subgroup and reductions mod p^j")
    s.add_argument("--input", required=True, type=Path)

    i = sub.add_parser("check-injectivity", parents=[common],
                       help="compare an integer matrix group with its reduction mod p")
    i.add_argument("--input", required=True, type=Path)
    i.add_argument("-p", type=int, required=True)
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def run(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    err = sys.stderr
    try:
        if args.cap < 1 or args.jobs < 1 or args.matrix_cap < 1:
            raise InputError("--cap, --matrix-cap and --jobs must be positive")
        if args.command == "verify-counterexample":
            code, payload = cmd_verify_counterexample(args.p, cap=args.cap, jobs=args.jobs)
        elif args.command in ("h1", "h1loc"):
            spec = GroupSpec.loads(_read(args.input))
            fn = cmd_h1 if args.command == "h1" else cmd_h1loc
            code, payload = fn(spec, basis=args.basis, cap=args.cap, matrix_cap=args.matrix_cap)
        elif args.command == "sylow":
            code, payload = cmd_sylow(GroupSpec.loads(_read(args.input)), cap=args.cap)
        else:
            spec = IntegerGroupSpec.loads(_read(args.input))
            cap = args.cap if args.cap != DEFAULT_CAP else None
            code, payload = cmd_check_injectivity(spec, args.p, cap=cap)
    except CapExceeded as exc:
        err.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except SylowError as exc:
        err.write(f"sylow: {exc}\n")
        return EXIT_FAILED
    except ValueError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    emit(payload, args.format, out)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
