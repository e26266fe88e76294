"""Sparse polynomials as ``{exponent_tuple: coefficient}`` dicts.

Zero coefficients are never stored.  Degree truncation is done by a weight
vector: a monomial survives a product iff ``sum(w_i * e_i) <= bound``.
"""
from __future__ import annotations

from typing import Dict, Iterable, Tuple

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, object]


def clean(p: Poly) -> Poly:
    return {m: c for m, c in p.items() if c != 0}


def add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def add_into(acc: Poly, q: Poly, scale=1) -> None:
    for m, c in q.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return {}
    return {m: c * v for m, v in p.items()}


def weighted_degree(m: Monomial, weights: Iterable[int]) -> int:
    return sum(w * e for w, e in zip(weights, m))


def mul(p: Poly, q: Poly, weights=None, bound=None) -> Poly:
    out: Poly = {}
    if not p or not q:
        return out
    if bound is not None:
        wp = {m: weighted_degree(m, weights) for m in p}
        wq = {m: weighted_degree(m, weights) for m in q}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            if bound is not None and wp[m1] + wq[m2] > bound:
                continue
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def truncate(p: Poly, weights, bound: int) -> Poly:
    return {m: c for m, c in p.items() if weighted_degree(m, weights) <= bound}


def substitute(p: Poly, images: list, one, zero):
    """Evaluate ``p`` with variable ``i`` replaced by ``images[i]``.

    ``one`` and ``zero`` are elements of the target ring, which must support
    ``+``, ``*`` and multiplication by scalars.  Powers are cached.
    """
    powers = [[one] for _ in images]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    total = zero
    for m, c in p.items():
        term = one
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = total + term * c
    return total


def format_poly(coeffs, names, degree) -> str:
    """Render as ``12 + 6·c1 + c1^2``, ordered by ``degree`` then exponents."""
    if not coeffs:
        return "0"
    terms = sorted(coeffs.items(), key=lambda mc: (degree(mc[0]), tuple(-e for e in mc[0])))
    pieces = []
    for m, c in terms:
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, m) if e
        )
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}·{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
