"""Command-line front end: ``intgrr constants | class | verify``.

Exit codes for ``verify``: 0 when every instance passes, 1 when any
instance fails, 2 on schema errors or hypothesis violations.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

import jsonschema

from .arith import bernoulli, factorial, jam_constant
from .chow import VarietyModel, product_model, projective_space
from .grrcheck import (
    LIMITATION,
    base_model,
    composed_instance,
    embedding_instance,
    graded_parts,
    projection_instance,
    verify_instance,
    verify_single_tl,
    verify_pappas_graded,
    zero_section_instance,
)
from .ktheory import KClass, chern_character_map
from .orbitcat import KMCorrespondence, diagonal_k_class, verify_phi_functoriality
from .report import PreconditionError, VerificationReport
from .symring import chern_character, todd_class, todd_inverse

MAX_CONSTANTS = 64

_int = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_dims = {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 6}, "maxItems": 3}
_term = {
    "type": "object",
    "properties": {"twist": {"type": "array", "items": {"type": "integer"}}, "coeff": _int},
    "required": ["twist", "coeff"],
    "additionalProperties": False,
}
_kclass_schema = {"type": "array", "items": _term}
_checks = {
    "type": "array",
    "items": {"enum": ["grr", "pappas", "single_tl"]},
    "uniqueItems": True,
    "minItems": 1,
}
_common = {"id": {"type": "string"}, "l": {"type": "integer", "minimum": 0}, "checks": _checks, "expect": _kclass_schema}


def _kind(name, props, required):
    return {
        "type": "object",
        "properties": {"kind": {"const": name}, **_common, **props},
        "required": ["kind", "l", *required],
        "additionalProperties": False,
    }


INSTANCE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "instances": {
            "type": "array",
            "items": {
                "oneOf": [
                    _kind(
                        "zero_section",
                        {
                            "base": _dims,
                            "twists": {
                                "type": "array",
                                "items": {"oneOf": [{"type": "integer"}, {"type": "array", "items": {"type": "integer"}}]},
                                "maxItems": 3,
                            },
                            "E": _kclass_schema,
                        },
                        ["base", "twists"],
                    ),
                    _kind("projection", {"base": _dims, "m": {"type": "integer", "minimum": 0}, "x": _kclass_schema}, ["base", "m"]),
                    _kind(
                        "linear_embedding",
                        {"k": {"type": "integer", "minimum": 0}, "n": {"type": "integer", "minimum": 0}, "E": _kclass_schema},
                        ["k", "n"],
                    ),
                    _kind(
                        "composed",
                        {
                            "k": {"type": "integer", "minimum": 0},
                            "n": {"type": "integer", "minimum": 0},
                            "e": {"type": "integer", "minimum": 0},
                            "degree": {"enum": [0, 1]},
                            "E": _kclass_schema,
                        },
                        ["k", "n", "e"],
                    ),
                    {
                        "type": "object",
                        "properties": {
                            "kind": {"const": "phi"},
                            "id": {"type": "string"},
                            "l": {"type": "integer", "minimum": 0},
                            "X": _dims,
                            "Y": _dims,
                            "Z": _dims,
                            "a": {"oneOf": [{"const": "diagonal"}, _kclass_schema]},
                            "b": {"oneOf": [{"const": "diagonal"}, _kclass_schema]},
                        },
                        "required": ["kind", "l", "X", "Y", "Z", "a", "b"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
    },
    "required": ["version", "instances"],
    "additionalProperties": False,
}


class SchemaError(ValueError):
    pass


def validate_document(doc) -> None:
    try:
        jsonschema.validate(doc, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"schema error at '{path}': {exc.message}") from None


def _terms(spec) -> dict | None:
    if spec is None:
        return None
    out: dict = {}
    for t in spec:
        key = tuple(t["twist"])
        out[key] = out.get(key, 0) + int(t["coeff"])
    return out


def _kclass(model: VarietyModel, spec) -> KClass:
    terms = _terms(spec) or {}
    for key in terms:
        if len(key) != model.ngens:
            raise SchemaError(f"twist {list(key)} needs {model.ngens} entries on {model}")
    return KClass.from_t(model, terms)


def build_instance(item: dict):
    kind = item["kind"]
    l = item["l"]
    if kind == "zero_section":
        return zero_section_instance(tuple(item["base"]), item["twists"], l, _terms(item.get("E")))
    if kind == "projection":
        return projection_instance(tuple(item["base"]), item["m"], l, _terms(item.get("x")))
    if kind == "linear_embedding":
        return embedding_instance(item["k"], item["n"], l, _terms(item.get("E")))
    if kind == "composed":
        return composed_instance(item["k"], item["n"], item["e"], l, item.get("degree", 1), _terms(item.get("E")))
    raise SchemaError(f"unknown kind {kind}")


def _correspondence(spec, X: VarietyModel, Y: VarietyModel, dims) -> KMCorrespondence:
    if spec == "diagonal":
        if X != Y or len(dims) > 1:
            raise SchemaError("'diagonal' needs equal projective-space endpoints")
        return diagonal_k_class(dims[0] if dims else 0)
    return KMCorrespondence(X, Y, _kclass(product_model(X, Y), spec))


def _instance_key(item: dict) -> str:
    if "id" in item:
        return item["id"]
    return json.dumps({k: v for k, v in item.items() if k != "expect"}, sort_keys=True)


def _expect_report(inst, fx: KClass, spec) -> list[str]:
    expected = _kclass(fx.model, spec)
    if expected == fx:
        return []
    diff = chern_character_map(fx - expected)
    diags = [f"expected f_*x = {expected}, computed {fx}"]
    diags += [f"degree {k}: ch(computed - expected) = {diff.part(k)}" for k in diff.degrees()]
    return diags


def run_item(item: dict, explore: bool = False) -> list[VerificationReport]:
    """Run one instance description; raises PreconditionError/SchemaError."""
    key = _instance_key(item)
    if item["kind"] == "phi":
        Xd, Yd, Zd = (tuple(item[k]) for k in ("X", "Y", "Z"))
        X, Y, Z = base_model(Xd), base_model(Yd), base_model(Zd)
        try:
            a = _correspondence(item["a"], X, Y, Xd)
            b = _correspondence(item["b"], Y, Z, Yd)
        except ValueError as exc:
            raise SchemaError(f"{key}: {exc}") from None
        rep = verify_phi_functoriality(X, Y, Z, a, b, item["l"], explore=explore)
        rep.name = key
        return [rep]
    try:
        inst = build_instance(item)
    except PreconditionError:
        raise
    except ValueError as exc:
        raise SchemaError(f"{key}: {exc}") from None
    if not explore:
        inst.check_hypothesis()
    reports = []
    for check in item.get("checks", ["grr"]):
        if check == "grr":
            rep = verify_instance(inst, explore=explore)
            if "expect" in item:
                extra = _expect_report(inst, rep.details["f_*x"], item["expect"])
                if extra:
                    rep.equal = False
                    rep.diagnostics.extend(extra)
        elif check == "pappas":
            rep = verify_pappas_graded(inst)
        else:
            rep = verify_single_tl(inst)
        rep.name = f"{key} {check}"
        reports.append(rep)
    return reports


def run_document(doc: dict, explore: bool = False, jobs: int = 1, timing: bool = False):
    """Validate and run; returns ``(reports, timings)`` sorted by name."""
    validate_document(doc)
    items = doc["instances"]
    timings = {}

    def one(item):
        t0 = time.perf_counter()
        reps = run_item(item, explore)
        dt = time.perf_counter() - t0
        return reps, dt

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(item) for item in items]
    reports = []
    for reps, dt in results:
        reports.extend(reps)
        if timing:
            for r in reps:
                timings[r.name] = dt
    reports.sort(key=lambda r: r.name)
    return reports, timings


def format_reports(reports, timings=None, as_json: bool = False) -> str:
    passed = sum(r.passed for r in reports)
    failed = len(reports) - passed
    if as_json:
        doc = {
            "limitation": LIMITATION,
            "summary": {"passed": str(passed), "failed": str(failed)},
            "results": [],
        }
        for r in reports:
            entry = r.to_json()
            if timings:
                entry["seconds"] = f"{timings.get(r.name, 0.0):.3f}"
            doc["results"].append(entry)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = [f"# {LIMITATION}", f"# {passed} passed, {failed} failed"]
    width = max((len(r.name) for r in reports), default=0)
    for r in reports:
        integ = "yes" if all(r.integrality.values()) else "NO"
        oracle = {True: "yes", False: "NO", None: "-"}[r.oracle]
        row = f"{r.status}  {r.name.ljust(width)}  integral={integ}  oracle={oracle}"
        if "explore_min_l" in r.details:
            row += f"  explore_min_l={r.details['explore_min_l']}"
        if timings:
            row += f"  {timings.get(r.name, 0.0):.3f}s"
        lines.append(row)
        if not r.passed:
            bad = [k for k, v in sorted(r.integrality.items()) if not v]
            if bad:
                lines.append(f"    non-integral: {', '.join(bad)}")
            lines.extend(f"    {d}" for d in r.diagnostics)
    return "\n".join(lines) + "\n"


def fixture_dir() -> Path:
    env = os.environ.get("GRR_FIXTURES")
    if env:
        return Path(env)
    return Path(str(resources.files("intgrr") / "fixtures"))


def fixture_files() -> list[Path]:
    return sorted(fixture_dir().glob("*.json"))


# --- class subcommand ---------------------------------------------------------


_VARIETY = re.compile(r"^(pt|P\d+(x P\d+)*)$".replace(" ", ""))


def parse_variety(text: str) -> tuple[VarietyModel, tuple]:
    text = text.strip()
    if not _VARIETY.match(text):
        raise ValueError(f"unsupported variety '{text}' (use pt, P2, P1xP2)")
    if text == "pt":
        return projective_space(0), ()
    dims = tuple(int(p[1:]) for p in text.split("x"))
    return base_model(dims), dims


def parse_bundle(text: str, model: VarietyModel) -> list[tuple[int, ...]]:
    out = []
    for part in text.replace(" ", "").split("+"):
        m = re.fullmatch(r"O\((-?\d+(?:,-?\d+)*)\)", part)
        if not m:
            raise ValueError(f"cannot parse line bundle '{part}'")
        vec = tuple(int(x) for x in m.group(1).split(","))
        if model.ngens == 0:
            vec = ()
        elif len(vec) != model.ngens:
            raise ValueError(f"line bundle {part} needs {model.ngens} degrees on {model}")
        out.append(vec)
    return out


def _scale(kind: str, l: int) -> int:
    return {"none": 1, "T": jam_constant(l), "factorial": factorial(l)}[kind]


def cmd_class(args) -> str:
    if args.which in ("ch", "td", "tdinv"):
        if args.rank is None or args.deg is None:
            raise ValueError(f"class {args.which} needs --rank and --deg")
        l = args.deg if args.l is None else args.l
        fn = {"ch": chern_character, "td": todd_class, "tdinv": todd_inverse}[args.which]
        cls = fn(args.rank, args.deg) * _scale(args.scale, l)
        rows = [str(cls)]
        for k in range(args.deg + 1):
            part = cls.part(k)
            rows.append(f"  degree {k}: {part}  [{'integral' if part.is_integral() else 'not integral'}]")
        return "\n".join(rows) + "\n"
    if args.variety is None:
        raise ValueError(f"class {args.which} needs --variety")
    model, _ = parse_variety(args.variety)
    bundle = parse_bundle(args.bundle or "O(0)", model)
    parts = graded_parts(bundle, model)
    family, label = {"ct": (parts.ct, "CT"), "s": (parts.s, "s"), "tdm": (parts.td, "Td")}[args.which]
    rows = []
    for m, c in enumerate(family):
        rows.append(f"{label}_{m} = {c}  [{'integral' if c.is_integral() else 'not integral'}]")
    return "\n".join(rows) + "\n"


def cmd_constants(n: int, as_json: bool) -> str:
    if n < 0 or n > MAX_CONSTANTS:
        raise ValueError(f"range must be between 0 and {MAX_CONSTANTS}")
    rows = [(m, factorial(m), jam_constant(m), jam_constant(m) // factorial(m), bernoulli(m)) for m in range(n + 1)]
    if as_json:
        data = [dict(zip(("m", "factorial", "T", "T_over_factorial", "bernoulli"), map(str, r))) for r in rows]
        return json.dumps(data, indent=2) + "\n"
    header = ("m", "m!", "T_m", "T_m/m!", "B_m")
    cells = [header] + [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(5)]
    return "\n".join("  ".join(c[i].rjust(widths[i]) for i in range(5)) for c in cells) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intgrr", description="Integral Riemann-Roch calculus and verification.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="table of m!, T_m, T_m/m!, B_m")
    c.add_argument("range", type=int, nargs="?", default=10)
    c.add_argument("--json", action="store_true")
    c.add_argument("--out")

    k = sub.add_parser("class", help="print a characteristic class")
    k.add_argument("which", choices=["ch", "td", "tdinv", "ct", "s", "tdm"])
    k.add_argument("--rank", type=int)
    k.add_argument("--deg", type=int)
    k.add_argument("--scale", choices=["none", "T", "factorial"], default="none")
    k.add_argument("--l", type=int, help="scaling level (default: --deg)")
    k.add_argument("--variety", help="pt, Pn or a product such as P1xP2")
    k.add_argument("--bundle", help="sum of line bundles, e.g. O(1)+O(-2) or O(1,0)")
    k.add_argument("--out")

    v = sub.add_parser("verify", help="run instance files (default: bundled fixtures)")
    v.add_argument("files", nargs="*")
    v.add_argument("--json", action="store_true")
    v.add_argument("--out")
    v.add_argument("--explore", action="store_true", help="run below the hypothesis bound and report the smallest integral l")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timing", action="store_true")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "constants":
        try:
            text = cmd_constants(args.range, args.json)
        except ValueError as exc:
            parser.error(str(exc))
        _emit(text, args.out)
        return 0
    if args.command == "class":
        try:
            text = cmd_class(args)
        except ValueError as exc:
            parser.error(str(exc))
        _emit(text, args.out)
        return 0

    paths = [Path(f) for f in args.files] or fixture_files()
    if not paths:
        print(f"no instance files found in {fixture_dir()}", file=sys.stderr)
        return 2
    reports = []
    timings = {}
    try:
        for path in paths:
            try:
                doc = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise SchemaError(f"{path}: {exc}") from None
            reps, tms = run_document(doc, explore=args.explore, jobs=args.jobs, timing=args.timing)
            reports.extend(reps)
            timings.update(tms)
    except (SchemaError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports.sort(key=lambda r: r.name)
    _emit(format_reports(reports, timings if args.timing else None, args.json), args.out)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
