"""Chow rings of projective spaces, their products and split projective
bundles over them.

Every supported variety is modelled as a *tower*: an ordered list of
generators, where generator ``g`` is ``c_1(O(1))`` of a projective bundle
``P(V_g)`` (lines in ``V_g``) over the variety built from the generators
before it.  ``V_g`` is a sum of line bundles, each recorded as a degree
vector over the earlier generators.

* ``P^n`` is one generator with ``V = O^(n+1)``.
* A product concatenates the generator lists.
* ``P_X(N + 1)`` appends one generator with ``V = N + O``.

The Chow ring is then ``Z[x_0..x_{k-1}]`` modulo, for each ``g``,
``sum_i c_i(V_g) x_g^(rank - i) = 0``.  Normal forms use monomials with
``x_g``-exponent below ``rank V_g``; the top monomial is the point class.
Grading is by codimension throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import Matrix, Rational

from . import _poly
from .arith import jam_constant, todd_series
from .symring import ChernBasisClass

__all__ = [
    "ChowClass",
    "Morphism",
    "ProjectiveBundleModel",
    "TowerRing",
    "VarietyModel",
    "degree0",
    "evaluate_chern_class",
    "factor_projection",
    "generic_pushforward",
    "linear_embedding",
    "point",
    "product_model",
    "projective_bundle",
    "projective_space",
    "pullback",
    "pushforward_linear_embedding",
    "pushforward_projection",
    "pushforward_zero_section",
    "scaled_todd_tangent",
    "tangent_chern",
    "todd_tangent",
]

DegreeVector = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class VarietyModel:
    """A tower of projective bundles of split bundles.

    ``bundles[g]`` lists the summands of ``V_g`` as degree vectors of length
    ``g``.  Equality and hashing only look at ``bundles``; names, labels and
    factor bookkeeping are presentation.
    """

    bundles: tuple
    names: tuple = field(default=(), compare=False)
    label: str = field(default="", compare=False)
    factors: tuple = field(default=(), compare=False)
    embedding_dim: int | None = field(default=None, compare=False)

    def __post_init__(self):
        for g, summands in enumerate(self.bundles):
            if not summands:
                raise ValueError(f"generator {g} has an empty bundle")
            for v in summands:
                if len(v) != g:
                    raise ValueError(f"degree vector {v} of generator {g} must have length {g}")
        if len(self.names) != len(self.bundles):
            object.__setattr__(self, "names", tuple(f"x{g}" for g in range(len(self.bundles))))

    @property
    def ngens(self) -> int:
        return len(self.bundles)

    @property
    def bounds(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.bundles)

    @property
    def dim(self) -> int:
        return sum(b - 1 for b in self.bounds)

    @property
    def point_monomial(self) -> tuple[int, ...]:
        return tuple(b - 1 for b in self.bounds)

    def padded(self, g: int) -> list[tuple[int, ...]]:
        """Summands of ``V_g`` as full-length degree vectors."""
        pad = (0,) * (self.ngens - g)
        return [tuple(v) + pad for v in self.bundles[g]]

    @property
    def tangent_roots(self) -> list[tuple[int, ...]]:
        """Chern roots of ``T`` (up to trivial summands), from the relative
        Euler sequences ``0 -> O -> V_g(1) -> T_g -> 0``."""
        roots = []
        for g in range(self.ngens):
            for v in self.padded(g):
                r = list(v)
                r[g] += 1
                roots.append(tuple(r))
        return roots

    def depends_on(self, g: int) -> set[int]:
        return {h for v in self.bundles[g] for h, a in enumerate(v) if a}

    def __str__(self) -> str:
        return self.label or f"tower{self.bounds}"


def point() -> VarietyModel:
    return VarietyModel((), (), "pt", embedding_dim=0)


def projective_space(n: int) -> VarietyModel:
    if n < 0:
        raise ValueError(f"projective space needs n >= 0, got {n}")
    if n == 0:
        return point()
    return VarietyModel((((),) * (n + 1),), ("h",), f"P{n}", embedding_dim=n)


def _shift(v: DegreeVector, before: int) -> DegreeVector:
    return (0,) * before + tuple(v)


def product_model(*models: VarietyModel) -> VarietyModel:
    """Product of models; generators are concatenated in factor order."""
    bundles, names, factors = [], [], []
    all_names = [n for m in models for n in m.names]
    clash = len(set(all_names)) != len(all_names)
    offset = 0
    for pos, m in enumerate(models, start=1):
        for g, summands in enumerate(m.bundles):
            bundles.append(tuple(_shift(v, offset) for v in summands))
        names.extend(f"{n}{pos}" if clash else n for n in m.names)
        factors.append((m, offset, offset + m.ngens))
        offset += m.ngens
    emb = None
    if all(m.embedding_dim is not None for m in models):
        total = 1
        for m in models:
            total *= m.embedding_dim + 1
        emb = total - 1
    label = " x ".join(str(m) for m in models) if models else "pt"
    return VarietyModel(tuple(bundles), tuple(names), label, tuple(factors), emb)


def _normalize_twist(base: VarietyModel, a) -> tuple[int, ...]:
    if isinstance(a, int):
        if base.ngens == 0:
            return ()
        if base.ngens == 1:
            return (a,)
        raise ValueError(
            f"integer twist {a} is ambiguous on {base}; give a degree vector of length {base.ngens}"
        )
    v = tuple(int(x) for x in a)
    if len(v) != base.ngens:
        raise ValueError(f"twist {v} must have length {base.ngens} on {base}")
    return v


@dataclass(frozen=True)
class ProjectiveBundleModel:
    """``P_X(N + 1)`` for ``N`` a sum of line bundles on ``X``.

    ``model`` is the total space; its last generator is ``zeta``, the first
    Chern class of ``O(1)`` on the space of lines.  The zero section is the
    line ``0 + 1``, so ``zeta`` restricts to zero there.
    """

    base: VarietyModel
    twists: tuple
    model: VarietyModel

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def zeta_index(self) -> int:
        return self.base.ngens

    @property
    def zeta(self) -> "ChowClass":
        return ChowClass.generator(self.model, self.zeta_index)

    @property
    def projection(self) -> "Morphism":
        return Morphism.projection(self.model, self.base, tuple(range(self.base.ngens)))

    @property
    def zero_section(self) -> "Morphism":
        n = self.base.ngens
        images = tuple(tuple(int(i == g) for i in range(n)) for g in range(n)) + ((0,) * n,)
        return Morphism(self.base, self.model, images, "zero section")

    def bundle_chern(self) -> "ChowClass":
        """``c(p^*(N + 1))`` on the total space."""
        out = ChowClass.one(self.model)
        for v in self.model.bundles[self.zeta_index]:
            out = out * (ChowClass.one(self.model) + ChowClass.linear(self.model, v))
        return out

    @property
    def quotient_chern(self) -> "ChowClass":
        """``c(Q) = c(p^*(N + 1)) / (1 - zeta)`` for ``Q = p^*(N+1)/O(-1)``."""
        z = self.zeta
        geom = ChowClass.one(self.model)
        power = ChowClass.one(self.model)
        for _ in range(self.model.dim):
            power = power * z
            geom = geom + power
        return self.bundle_chern() * geom

    def top_quotient_chern(self) -> "ChowClass":
        return self.quotient_chern.part(self.rank)


def projective_bundle(base: VarietyModel, twists: Sequence) -> ProjectiveBundleModel:
    """``P_X(N + 1)`` with ``N = sum O(a_i)``.

    An integer twist is allowed on a point (where every line bundle is
    trivial) and on a single projective space; on products give one degree
    per generator.
    """
    vecs = tuple(_normalize_twist(base, a) for a in twists)
    summands = vecs + ((0,) * base.ngens,)
    name = "z"
    k = 2
    while name in base.names:
        name = f"z{k}"
        k += 1
    tw = ", ".join(str(v[0]) if len(v) == 1 else str(v) for v in vecs) if vecs else ""
    model = VarietyModel(
        base.bundles + (summands,),
        base.names + (name,),
        f"P_{base}(N+1), N=[{tw}]",
        base.factors,
        None,
    )
    return ProjectiveBundleModel(base, vecs, model)


# --- rings ----------------------------------------------------------------


def _binom_general(k: int, j: int) -> int:
    out = Fraction(1)
    for i in range(j):
        out = out * (k - i) / (i + 1)
    return int(out)


class TowerRing:
    """Normal-form arithmetic for the Chow ring (``kind='chow'``) or for
    ``K_0`` in the basis ``u_g = [O_g(1)] - 1`` (``kind='k'``).

    Both rings are generated in degree one and vanish above degree ``dim``
    (for ``K_0`` this is the topological filtration), so products are
    truncated eagerly before reduction.
    """

    def __init__(self, model: VarietyModel, kind: str):
        if kind not in ("chow", "k"):
            raise ValueError(kind)
        self.model = model
        self.kind = kind
        self.n = model.ngens
        self.bounds = model.bounds
        self.dim = model.dim
        self.ones = (1,) * self.n
        self._relations: dict[int, dict] = {}
        self._memo: dict[tuple, dict] = {}

    def unit(self) -> dict:
        return {(0,) * self.n: Fraction(1)}

    def var(self, g: int) -> dict:
        m = [0] * self.n
        m[g] = 1
        return {tuple(m): Fraction(1)}

    def raw_mul(self, p, q):
        return _poly.mul(p, q, self.ones, self.dim)

    def raw_power(self, p, e: int):
        out = self.unit()
        for _ in range(e):
            out = self.raw_mul(out, p)
        return out

    def unipotent_power(self, v: Sequence[int]) -> dict:
        """``prod_h (1 + u_h) ** v_h`` with generalized binomials, raw."""
        out = self.unit()
        for h, a in enumerate(v):
            if not a:
                continue
            series = {}
            for j in range(self.dim + 1):
                c = _binom_general(a, j)
                if c:
                    m = [0] * self.n
                    m[h] = j
                    series[tuple(m)] = Fraction(c)
            out = self.raw_mul(out, series)
        return out

    def linear(self, v: Sequence[int]) -> dict:
        """Chow class ``sum v_h x_h`` (raw)."""
        out = {}
        for h, a in enumerate(v):
            if a:
                _poly.add_into(out, self.var(h), a)
        return out

    def line_bundle_k(self, v: Sequence[int]) -> dict:
        return self.unipotent_power(v)

    def relation(self, g: int) -> dict:
        """Raw polynomial equal to ``x_g ** rank(V_g)`` in the ring."""
        if g in self._relations:
            return self._relations[g]
        b = self.bounds[g]
        vs = self.model.padded(g)
        xg = self.var(g)
        if self.kind == "chow":
            total = self.unit()
            for v in vs:
                total = self.raw_mul(total, _poly.add(self.unit(), self.linear(v)))
            rel: dict = {}
            for i in range(1, b + 1):
                ci = {m: c for m, c in total.items() if sum(m) == i}
                _poly.add_into(rel, self.raw_mul(ci, self.raw_power(xg, b - i)), -1)
        else:
            # prod_j (L_j (1 + u) - 1) = 0; its u^b coefficient is prod_j L_j
            one_plus_u = _poly.add(self.unit(), xg)
            total = self.unit()
            shift = [0] * self.n
            for v in vs:
                factor = _poly.add(self.raw_mul(self.unipotent_power(v), one_plus_u), self.unit(), -1)
                total = self.raw_mul(total, factor)
                for h, a in enumerate(v):
                    shift[h] += a
            rest = {m: c for m, c in total.items() if m[g] < b}
            inv_lead = self.unipotent_power([-a for a in shift])
            rel = _poly.scale(self.raw_mul(inv_lead, rest), Fraction(-1))
        self._relations[g] = rel
        return rel

    def reduce_monomial(self, m: tuple) -> dict:
        if sum(m) > self.dim:
            return {}
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        top = None
        for g in range(self.n - 1, -1, -1):
            if m[g] >= self.bounds[g]:
                top = g
                break
        if top is None:
            out = {m: Fraction(1)}
        else:
            b = self.bounds[top]
            rest = list(m)
            rest[top] -= b
            out = {}
            for t, c in self.relation(top).items():
                mm = tuple(a + e for a, e in zip(rest, t))
                _poly.add_into(out, self.reduce_monomial(mm), c)
        self._memo[m] = out
        return out

    def reduce(self, p: dict) -> dict:
        out: dict = {}
        for m, c in p.items():
            if sum(m) <= self.dim:
                _poly.add_into(out, self.reduce_monomial(m), c)
        return out

    def mul(self, p, q):
        return self.reduce(self.raw_mul(p, q))

    def basis(self) -> list[tuple[int, ...]]:
        ranges = [range(b) for b in self.bounds]
        return sorted(itertools.product(*ranges), key=lambda m: (sum(m), tuple(-e for e in m)))


@lru_cache(maxsize=None)
def ring(model: VarietyModel, kind: str = "chow") -> TowerRing:
    return TowerRing(model, kind)


class _TowerElement:
    """Value in a :class:`TowerRing`; coefficients are always normal form."""

    kind = ""
    __slots__ = ("model", "coeffs")

    def __init__(self, model: VarietyModel, coeffs=None, *, reduced: bool = False):
        self.model = model
        raw = {tuple(m): Fraction(c) for m, c in (coeffs or {}).items() if c != 0}
        self.coeffs = raw if reduced else ring(model, self.kind).reduce(raw)

    @property
    def ring(self) -> TowerRing:
        return ring(self.model, self.kind)

    def _new(self, coeffs):
        return type(self)(self.model, coeffs, reduced=True)

    @classmethod
    def one(cls, model):
        return cls(model, {(0,) * model.ngens: 1}, reduced=True)

    @classmethod
    def zero(cls, model):
        return cls(model, {}, reduced=True)

    @classmethod
    def generator(cls, model, g: int):
        return cls(model, ring(model, cls.kind).var(g))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.model != self.model:
            raise ValueError(f"model mismatch: {self.model} vs {other.model}")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.one(self.model) * other
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return self._new(_poly.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._new(_poly.add(self.coeffs, other.coeffs, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._new(_poly.scale(self.coeffs, Fraction(-1)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new(_poly.scale(self.coeffs, Fraction(other)))
        self._check(other)
        return self._new(self.ring.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, e: int):
        out = self.one(self.model)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one(self.model) * other
        if type(other) is not type(self):
            return NotImplemented
        return self.model == other.model and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def denominators(self) -> set[int]:
        return {c.denominator for c in self.coeffs.values()}

    def to_json(self):
        return str(self)


class ChowClass(_TowerElement):
    """Element of ``CH^*(X)`` with rational coefficients."""

    kind = "chow"
    __slots__ = ()

    @classmethod
    def linear(cls, model, v: Sequence[int]):
        return cls(model, ring(model, "chow").linear(v))

    @classmethod
    def point_class(cls, model):
        return cls(model, {model.point_monomial: 1}, reduced=True)

    def part(self, k: int) -> "ChowClass":
        return self._new({m: c for m, c in self.coeffs.items() if sum(m) == k})

    def degrees(self) -> list[int]:
        return sorted({sum(m) for m in self.coeffs})

    def is_homogeneous(self, k: int) -> bool:
        return all(sum(m) == k for m in self.coeffs)

    def degree0(self) -> Fraction:
        return self.coeffs.get(self.model.point_monomial, Fraction(0))

    def __str__(self) -> str:
        return _poly.format_poly(self.coeffs, list(self.model.names), sum)

    def __repr__(self) -> str:
        return f"ChowClass({self.model}: {self})"


def degree0(x: ChowClass) -> Fraction:
    """Degree of the zero-dimensional part of ``x``."""
    return x.degree0()


# --- morphisms ------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """A morphism determined by the pullbacks of the target generators.

    ``images[g]`` is the degree vector (over source generators) of the
    pullback of ``O_g(1)``.  ``keep`` is set for projections that forget
    some generators: source generator ``keep[i]`` maps to target
    generator ``i``.
    """

    source: VarietyModel
    target: VarietyModel
    images: tuple
    name: str = field(default="", compare=False)
    keep: tuple | None = None

    def __post_init__(self):
        if len(self.images) != self.target.ngens:
            raise ValueError("one image per target generator is required")
        for v in self.images:
            if len(v) != self.source.ngens:
                raise ValueError(f"image {v} must have length {self.source.ngens}")

    @classmethod
    def projection(cls, source: VarietyModel, target: VarietyModel, keep: Sequence[int]):
        keep = tuple(keep)
        kept = set(keep)
        for g in keep:
            if not source.depends_on(g) <= kept:
                raise ValueError(f"generator {g} depends on forgotten generators")
        index = {g: i for i, g in enumerate(keep)}
        expected = tuple(
            tuple(tuple(v[h] for h in keep[: index[g]]) for v in source.bundles[g]) for g in keep
        )
        if expected != target.bundles:
            raise ValueError(f"{target} is not the image of {source} under keeping {keep}")
        images = tuple(tuple(int(h == g) for h in range(source.ngens)) for g in keep)
        return cls(source, target, images, f"{source} -> {target}", keep)

    @property
    def dropped(self) -> tuple[int, ...]:
        if self.keep is None:
            raise ValueError("not a projection")
        return tuple(g for g in range(self.source.ngens) if g not in self.keep)

    @property
    def relative_dim(self) -> int:
        return self.source.dim - self.target.dim

    def check_relations(self) -> bool:
        """Whether the pullback respects every target relation, in Chow and K."""
        for kind in ("chow", "k"):
            tr = ring(self.target, kind)
            for g in range(self.target.ngens):
                rel = _poly.add(tr.raw_power(tr.var(g), self.target.bounds[g]), tr.relation(g), -1)
                cls = ChowClass if kind == "chow" else _k_class_type()
                if not pullback(cls(self.target, rel, reduced=True), self).is_zero():
                    return False
        return True


def _k_class_type():
    from .ktheory import KClass

    return KClass


def factor_projection(model: VarietyModel, keep_factors: Sequence[int]) -> Morphism:
    """Projection from a product model onto the product of some factors."""
    if not model.factors:
        raise ValueError(f"{model} has no product structure")
    keep = []
    targets = []
    for i in keep_factors:
        m, lo, hi = model.factors[i]
        keep.extend(range(lo, hi))
        targets.append(m)
    target = product_model(*targets) if len(targets) != 1 else targets[0]
    return Morphism.projection(model, target, keep)


def linear_embedding(k: int, n: int) -> Morphism:
    if k > n:
        raise ValueError(f"cannot embed P{k} linearly in P{n}")
    src, tgt = projective_space(k), projective_space(n)
    images = ((1,) if k > 0 else (),) if n > 0 else ()
    return Morphism(src, tgt, images, f"P{k} -> P{n}")


def pullback(x, f: Morphism):
    """Pull a Chow or K class back along ``f``."""
    cls = type(x)
    if x.model != f.target:
        raise ValueError(f"class lives on {x.model}, morphism target is {f.target}")
    src = f.source
    if cls.kind == "chow":
        images = [ChowClass.linear(src, v) for v in f.images]
    else:
        images = [cls(src, ring(src, "k").unipotent_power(v)) - 1 for v in f.images]
    return _poly.substitute(x.coeffs, images, cls.one(src), cls.zero(src))


def _reindex(coeffs: dict, keep: Sequence[int]) -> dict:
    return {tuple(m[g] for g in keep): c for m, c in coeffs.items()}


def pushforward_projection(x: ChowClass, f: Morphism | None = None) -> ChowClass:
    """Fiber integration along a projection that forgets generators.

    Without ``f``, a class on a product is pushed to the product of all
    factors but the last.
    """
    if f is None:
        if len(x.model.factors) < 2:
            raise ValueError(f"{x.model} is not a fibered model; pass the projection")
        f = factor_projection(x.model, range(len(x.model.factors) - 1))
    if f.keep is None:
        raise ValueError("pushforward_projection needs a projection morphism")
    if x.model != f.source:
        raise ValueError(f"class lives on {x.model}, projection source is {f.source}")
    drop = f.dropped
    tops = {g: x.model.bounds[g] - 1 for g in drop}
    kept = {m: c for m, c in x.coeffs.items() if all(m[g] == tops[g] for g in drop)}
    return ChowClass(f.target, _reindex(kept, f.keep), reduced=True)


def pushforward_zero_section(beta: ChowClass, bundle: ProjectiveBundleModel) -> ChowClass:
    """``f_* beta = p^* beta * c_r(Q)`` for the zero section ``f``."""
    if beta.model != bundle.base:
        raise ValueError(f"class lives on {beta.model}, bundle base is {bundle.base}")
    return pullback(beta, bundle.projection) * bundle.top_quotient_chern()


def pushforward_linear_embedding(x: ChowClass, n: int) -> ChowClass:
    """``h^i -> h^(i + n - k)`` for ``P^k`` linearly embedded in ``P^n``."""
    k = x.model.dim
    if x.model != projective_space(k):
        raise ValueError(f"{x.model} is not a projective space")
    if k > n:
        raise ValueError(f"cannot embed P{k} linearly in P{n}")
    target = projective_space(n)
    out = {}
    for m, c in x.coeffs.items():
        e = (m[0] if m else 0) + n - k
        out[(e,) if n > 0 else ()] = c
    return ChowClass(target, out, reduced=True)


@lru_cache(maxsize=None)
def _inverse_gram(model: VarietyModel, kind: str):
    """Basis and inverse Gram matrix of the degree (or Euler characteristic)
    pairing on ``model``."""
    basis = ring(model, kind).basis()
    if kind == "chow":
        elems = [ChowClass(model, {b: 1}, reduced=True) for b in basis]
        pair = lambda a, b: degree0(a * b)  # noqa: E731
    else:
        from .ktheory import KClass, euler_characteristic_class

        elems = [KClass(model, {b: 1}, reduced=True) for b in basis]
        pair = lambda a, b: euler_characteristic_class(a * b)  # noqa: E731
    gram = Matrix(len(basis), len(basis), lambda i, j: Rational(str(pair(elems[i], elems[j]))))
    inv = gram.inv()
    rows = [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(len(basis))] for i in range(len(basis))]
    return basis, elems, rows


def generic_pushforward(x, f: Morphism):
    """``f_* x`` from the projection formula: the pairing of ``f_* x`` with
    every target basis class ``b`` equals the source pairing of ``x`` with
    ``f^* b``.  Works in Chow (degree pairing) and K (Euler pairing)."""
    cls = type(x)
    if x.model != f.source:
        raise ValueError(f"class lives on {x.model}, morphism source is {f.source}")
    basis, elems, inv = _inverse_gram(f.target, cls.kind)
    if cls.kind == "chow":
        pair = lambda y: degree0(y)  # noqa: E731
    else:
        from .ktheory import euler_characteristic_class

        pair = euler_characteristic_class
    mu = [pair(x * pullback(b, f)) for b in elems]
    coeffs = {}
    for i, m in enumerate(basis):
        v = sum((inv[i][j] * mu[j] for j in range(len(basis))), Fraction(0))
        if v:
            coeffs[m] = v
    return cls(f.target, coeffs, reduced=True)


# --- tangent data ---------------------------------------------------------


def tangent_chern(model: VarietyModel) -> ChowClass:
    """Total Chern class of ``T_X`` as a product over the Euler-sequence roots."""
    out = ChowClass.one(model)
    for r in model.tangent_roots:
        out = out * (ChowClass.one(model) + ChowClass.linear(model, r))
    return out


def _series_of(x, coeffs, one):
    out = one * coeffs[0]
    power = one
    for c in coeffs[1:]:
        power = power * x
        if power.is_zero():
            break
        out = out + power * c
    return out


def todd_tangent(model: VarietyModel) -> ChowClass:
    """``Td(T_X)`` as ``prod td(root)`` using the one-variable Todd series."""
    series = todd_series(model.dim)
    one = ChowClass.one(model)
    out = one
    for r in model.tangent_roots:
        out = out * _series_of(ChowClass.linear(model, r), series, one)
    return out


def evaluate_chern_class(cls: ChernBasisClass, cherns: Sequence[Sequence[ChowClass]], model: VarietyModel) -> ChowClass:
    """Substitute Chow classes for the formal Chern classes of ``cls``.

    ``cherns[b][i-1]`` is the value of ``c_i`` in block ``b``.
    """
    images = []
    for b, r in enumerate(cls.ranks):
        if len(cherns[b]) < r:
            raise ValueError(f"block {b} needs {r} Chern classes")
        images.extend(cherns[b][:r])
    return _poly.substitute(cls.coeffs, images, ChowClass.one(model), ChowClass.zero(model))


def chern_classes(total: ChowClass, rank: int) -> list[ChowClass]:
    return [total.part(i) for i in range(1, rank + 1)]


def scaled_todd_tangent(model: VarietyModel, l: int) -> ChowClass:
    """``T_l * Td(T_X)`` from the universal class in the Chern basis."""
    from .symring import todd_class

    rank = len(model.tangent_roots)
    univ = todd_class(rank, model.dim) * jam_constant(l)
    return evaluate_chern_class(univ, [chern_classes(tangent_chern(model), rank)], model)
