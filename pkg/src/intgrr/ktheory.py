"""``K_0`` of the tower models in :mod:`intgrr.chow`.

Internally a class is a polynomial in ``u_g = [O_g(1)] - 1`` in normal form.
The public basis is the line-bundle basis: monomials
``t^i = prod_g [O_g(1)]^(i_g)`` with ``0 <= i_g < rank V_g``, which on
``P^n`` is ``[O], [O(1)], ..., [O(n)]``.  The change of basis is triangular
and unimodular, so integrality is the same in either basis.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import _poly
from .chow import (
    ChowClass,
    Morphism,
    ProjectiveBundleModel,
    VarietyModel,
    _TowerElement,
    factor_projection,
    point,
    projective_space,
    pullback,
    ring,
)

__all__ = [
    "KClass",
    "chern_character_map",
    "chern_character_by_twists",
    "euler_characteristic",
    "euler_characteristic_class",
    "k_product",
    "koszul_pushforward_zero_section",
    "pushforward_linear_embedding_k",
    "pushforward_projection_k",
    "structure_sheaf_linear_subspace",
]


class KClass(_TowerElement):
    kind = "k"
    __slots__ = ()

    @classmethod
    def line_bundle(cls, model: VarietyModel, degrees: Sequence[int]):
        """``[O(degrees)]``; on a point every line bundle is ``[O]``."""
        degrees = tuple(degrees)
        if len(degrees) != model.ngens:
            raise ValueError(f"need {model.ngens} degrees on {model}, got {degrees}")
        return cls(model, ring(model, "k").unipotent_power(degrees))

    @classmethod
    def from_t(cls, model: VarietyModel, coeffs: dict):
        """Class with the given coefficients on line bundles ``t^i``; any
        integer twists are allowed and reduced to normal form."""
        r = ring(model, "k")
        out: dict = {}
        for m, c in coeffs.items():
            if len(m) != model.ngens:
                raise ValueError(f"twist {m} needs {model.ngens} entries on {model}")
            _poly.add_into(out, r.unipotent_power(m), Fraction(c))
        return cls(model, out)

    def t_coeffs(self) -> dict:
        """Coefficients in the line-bundle basis."""
        out: dict = {}
        for m, c in self.coeffs.items():
            choices = [
                [(i, math.comb(j, i) * (-1) ** (j - i)) for i in range(j + 1)] for j in m
            ]
            for combo in itertools.product(*choices):
                coef = c
                for _, s in combo:
                    coef *= s
                key = tuple(i for i, _ in combo)
                v = out.get(key, 0) + coef
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def rank(self) -> Fraction:
        return self.coeffs.get((0,) * self.model.ngens, Fraction(0))

    def __str__(self) -> str:
        t = self.t_coeffs()
        if not t:
            return "0"
        pieces = []
        for m in sorted(t):
            c = t[m]
            if not any(m):
                name = "[O]"
            elif len(m) == 1:
                name = f"[O({m[0]})]"
            else:
                name = f"[O({','.join(map(str, m))})]"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for s, b in pieces[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self) -> str:
        return f"KClass({self.model}: {self})"


def k_product(x: KClass, y: KClass) -> KClass:
    return x * y


def euler_characteristic(n: int, k: int) -> int:
    """``chi(P^n, O(k)) = (k+1)(k+2)...(k+n)/n!`` for every integer ``k``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return num // math.factorial(n)


@lru_cache(maxsize=None)
def _fiber_pushforwards(model: VarietyModel, g: int) -> tuple:
    """``p_*(u_g^j)`` for ``j < rank V_g`` as raw polynomials on ``model``.

    ``p_* O_g(i) = Sym^i(V_g^dual)``, the complete homogeneous polynomial in
    the inverse summands.
    """
    r = ring(model, "k")
    b = model.bounds[g]
    inverses = [r.reduce(r.unipotent_power([-a for a in v])) for v in model.padded(g)]
    h = [r.unit()] + [{} for _ in range(b - 1)]
    for y in inverses:
        powers = [r.unit()]
        for _ in range(b - 1):
            powers.append(r.mul(powers[-1], y))
        new = []
        for i in range(b):
            acc: dict = {}
            for j in range(i + 1):
                _poly.add_into(acc, r.mul(powers[j], h[i - j]))
            new.append(acc)
        h = new
    out = []
    for j in range(b):
        acc = {}
        for i in range(j + 1):
            _poly.add_into(acc, h[i], math.comb(j, i) * (-1) ** (j - i))
        out.append(acc)
    return tuple(out)


def pushforward_projection_k(x: KClass, f: Morphism | None = None) -> KClass:
    """Push a K class along a projection that forgets generators.

    Forgotten generators are integrated out from the top down.  On a factor
    ``P^m`` this sends ``E x O(k)`` to ``chi(P^m, O(k)) E``.
    """
    if f is None:
        if len(x.model.factors) < 2:
            raise ValueError(f"{x.model} is not a fibered model; pass the projection")
        f = factor_projection(x.model, range(len(x.model.factors) - 1))
    if f.keep is None:
        raise ValueError("pushforward_projection_k needs a projection morphism")
    if x.model != f.source:
        raise ValueError(f"class lives on {x.model}, projection source is {f.source}")
    r = ring(x.model, "k")
    coeffs = dict(x.coeffs)
    for g in sorted(f.dropped, reverse=True):
        pushed = _fiber_pushforwards(x.model, g)
        out: dict = {}
        for m, c in coeffs.items():
            rest = list(m)
            j = rest[g]
            rest[g] = 0
            _poly.add_into(out, r.mul({tuple(rest): c}, pushed[j]))
        coeffs = out
    return KClass(f.target, {tuple(m[g] for g in f.keep): c for m, c in coeffs.items()}, reduced=True)


def euler_characteristic_class(x: KClass) -> Fraction:
    """``chi(X, x)``: the pushforward to a point."""
    f = Morphism.projection(x.model, point(), ())
    return pushforward_projection_k(x, f).rank()


def koszul_lambda(bundle: ProjectiveBundleModel) -> list[KClass]:
    """``[Lambda^p Q^dual]`` for ``p = 0 .. r+1`` on ``P_X(N + 1)``.

    From ``0 -> Q^dual -> p^*(N+1)^dual -> O(1) -> 0``,
    ``lambda_t(Q^dual) = prod (1 + L_i^-1 t) / (1 + xi t)``.
    """
    model = bundle.model
    r = bundle.rank
    xi = KClass.line_bundle(model, [int(i == bundle.zeta_index) for i in range(model.ngens)])
    poly = [KClass.one(model)] + [KClass.zero(model) for _ in range(r + 1)]
    for v in model.padded(bundle.zeta_index):
        inv = KClass.line_bundle(model, [-a for a in v])
        poly = [poly[p] + (inv * poly[p - 1] if p else 0) for p in range(r + 2)]
    out = []
    for p in range(r + 2):
        acc = KClass.zero(model)
        power = KClass.one(model)
        for k in range(p + 1):
            acc = acc + poly[p - k] * power * (-1) ** k
            power = power * xi
        out.append(acc)
    return out


def koszul_pushforward_zero_section(E: KClass, bundle: ProjectiveBundleModel) -> KClass:
    """``f_*[E] = sum_p (-1)^p [Lambda^p Q^dual] p^*[E]`` for the zero section."""
    if E.model != bundle.base:
        raise ValueError(f"class lives on {E.model}, bundle base is {bundle.base}")
    pulled = pullback(E, bundle.projection)
    lam = koszul_lambda(bundle)
    out = KClass.zero(bundle.model)
    for p in range(bundle.rank + 1):
        out = out + lam[p] * pulled * (-1) ** p
    return out


def structure_sheaf_linear_subspace(k: int, n: int) -> KClass:
    """``[O_{P^k}] = sum_j (-1)^j C(n-k, j) [O(-j)]`` on ``P^n``."""
    if k > n:
        raise ValueError(f"cannot embed P{k} linearly in P{n}")
    model = projective_space(n)
    if n == 0:
        return KClass.one(model)
    return KClass.from_t(model, {(-j,): (-1) ** j * math.comb(n - k, j) for j in range(n - k + 1)})


def pushforward_linear_embedding_k(x: KClass, n: int) -> KClass:
    """``f_*(f^* y) = y [O_{P^k}]``: lift each ``[O(i)]`` and multiply."""
    k = x.model.dim
    if x.model != projective_space(k):
        raise ValueError(f"{x.model} is not a projective space")
    target = projective_space(n)
    struct = structure_sheaf_linear_subspace(k, n)
    if n == 0:
        return struct * x.rank()
    lifted = {}
    for m, c in x.t_coeffs().items():
        key = (m[0] if m else 0,)
        lifted[key] = lifted.get(key, 0) + c
    return KClass.from_t(target, lifted) * struct


def _exp_minus_one(x: ChowClass, order: int) -> ChowClass:
    out = ChowClass.zero(x.model)
    term = ChowClass.one(x.model)
    for n in range(1, order + 1):
        term = term * x / n
        if term.is_zero():
            break
        out = out + term
    return out


def chern_character_map(x: KClass, d: int | None = None) -> ChowClass:
    """Ring homomorphism ``ch``: ``u_g -> exp(x_g) - 1``, truncated at ``d``."""
    model = x.model
    d = model.dim if d is None else d
    images = [_exp_minus_one(ChowClass.generator(model, g), d) for g in range(model.ngens)]
    out = _poly.substitute(x.coeffs, images, ChowClass.one(model), ChowClass.zero(model))
    return out._new({m: c for m, c in out.coeffs.items() if sum(m) <= d})


def chern_character_by_twists(x: KClass) -> ChowClass:
    """``ch`` computed as ``sum a_i exp(i . x)`` from line-bundle coefficients."""
    model = x.model
    out = ChowClass.zero(model)
    for m, c in x.t_coeffs().items():
        lin = ChowClass.linear(model, m)
        term = ChowClass.one(model)
        acc = ChowClass.one(model)
        for n in range(1, model.dim + 1):
            term = term * lin / n
            acc = acc + term
        out = out + acc * c
    return out
