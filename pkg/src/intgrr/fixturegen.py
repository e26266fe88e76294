"""Deterministic generator for the bundled fixture files.

``python -m intgrr.fixturegen [DIR]`` rewrites ``grr.json`` and ``phi.json``.
The test suite checks that the shipped files equal this output.
"""
from __future__ import annotations

import itertools
import json
import random
import sys
from pathlib import Path

TWISTS = range(-3, 4)
PHI_LEVEL = 6


def _term(twist, coeff=1):
    return {"twist": list(twist), "coeff": coeff}


def grr_instances() -> list[dict]:
    checks = ["grr", "pappas", "single_tl"]
    out = []
    for base in [(), (1,), (2,)]:
        d = sum(base)
        normals = [()] + [(a,) for a in TWISTS] + list(itertools.combinations_with_replacement(TWISTS, 2))
        for N in normals:
            Es = [None] if not base else [None, [_term((1,)), _term((-2,), 2)]]
            for j, E in enumerate(Es):
                item = {
                    "id": f"zs base={list(base)} N={list(N)} E{j}",
                    "kind": "zero_section",
                    "base": list(base),
                    "twists": list(N),
                    "l": len(N) + d,
                    "checks": checks,
                }
                if E is not None:
                    item["E"] = E
                out.append(item)
    for base in [(), (1,), (2,)]:
        for m in range(4):
            for a in (TWISTS if base else [0]):
                for b in TWISTS:
                    twist = ((a,) if base else ()) + ((b,) if m else ())
                    out.append({
                        "id": f"proj base={list(base)} m={m} x=O{list(twist)}",
                        "kind": "projection",
                        "base": list(base),
                        "m": m,
                        "x": [_term(twist)],
                        "l": sum(base) + m,
                        "checks": checks,
                    })
                    if not m:
                        break
    for n in range(5):
        for k in range(n + 1):
            for a in TWISTS:
                item = {
                    "id": f"emb P{k}<P{n} E=O({a})",
                    "kind": "linear_embedding",
                    "k": k,
                    "n": n,
                    "l": n,
                    "checks": checks,
                }
                if k:
                    item["E"] = [_term((a,))]
                out.append(item)
                if not k:
                    break
    for k in range(3):
        for n in range(3):
            for e in range(k, 3):
                for degree in (0, 1):
                    if degree == 1 and (k > n or n == 0):
                        continue
                    for E in ([None, [_term((1,))], [_term((-1,), 3)]] if k else [None]):
                        item = {
                            "id": f"comp P{k}->P{n} via P{e} deg={degree} E{0 if E is None else E[0]['twist'][0]}",
                            "kind": "composed",
                            "k": k,
                            "n": n,
                            "e": e,
                            "degree": degree,
                            "l": max(k, n) + e,
                            "checks": checks,
                        }
                        if E is not None:
                            item["E"] = E
                        out.append(item)
    return out


def _random_class(rng: random.Random, dims: tuple) -> list[dict]:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        twist = tuple(rng.randint(-2, 2) for _ in dims)
        terms[twist] = terms.get(twist, 0) + rng.choice([-2, -1, 1, 2, 3])
    return [_term(t, c) for t, c in sorted(terms.items()) if c]


def phi_instances() -> list[dict]:
    rng = random.Random(20240601)
    spaces = [(), (1,), (2,)]
    out = []
    for X, Y, Z in itertools.product(spaces, repeat=3):
        for j in range(2):
            a = _random_class(rng, X + Y) or [_term((0,) * len(X + Y))]
            b = _random_class(rng, Y + Z) or [_term((0,) * len(Y + Z))]
            out.append({
                "id": f"phi X={list(X)} Y={list(Y)} Z={list(Z)} #{j}",
                "kind": "phi", "X": list(X), "Y": list(Y), "Z": list(Z),
                "a": a, "b": b, "l": PHI_LEVEL,
            })
        if Y == Z:
            out.append({
                "id": f"phi X={list(X)} Y={list(Y)} Z={list(Z)} b=diagonal",
                "kind": "phi", "X": list(X), "Y": list(Y), "Z": list(Z),
                "a": _random_class(rng, X + Y) or [_term((0,) * len(X + Y))],
                "b": "diagonal", "l": PHI_LEVEL,
            })
    return out


def documents() -> dict[str, str]:
    docs = {
        "grr.json": {"version": 1, "instances": grr_instances()},
        "phi.json": {"version": 1, "instances": phi_instances()},
    }
    return {name: json.dumps(doc, indent=1, sort_keys=True) + "\n" for name, doc in docs.items()}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    target = Path(argv[0]) if argv else Path(__file__).with_name("fixtures")
    target.mkdir(parents=True, exist_ok=True)
    for name, text in documents().items():
        (target / name).write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
