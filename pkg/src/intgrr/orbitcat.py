"""K-motive correspondences, orbit-category morphisms and the functor Phi.

A correspondence ``X -> Y`` is a class on ``X x Y``; composition is
``p13_*(p12^* a . p23^* b)``.  An orbit morphism is a finite family of Chow
correspondences, component ``i`` having codimension ``dim Y + i``.
``Phi(a) = ch(a) . p2^* Td(T_Y)``, split into those components.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chow import (
    ChowClass,
    Morphism,
    VarietyModel,
    _inverse_gram,
    product_model,
    projective_space,
    pushforward_projection,
    todd_tangent,
)
from .ktheory import KClass, chern_character_map, pushforward_projection_k
from .report import PreconditionError, VerificationReport

__all__ = [
    "KMCorrespondence",
    "OrbitMorphism",
    "chow_diagonal",
    "compose_chow",
    "compose_km",
    "compose_orbit",
    "diagonal_k_class",
    "dual_basis_diagonal_k",
    "external",
    "identity_orbit",
    "phi",
    "phi_denominator_diagnostics",
    "verify_phi_functoriality",
]


def external(x, y):
    """Exterior product ``x ⊠ y`` on ``product_model(x.model, y.model)``.

    Normal forms of independent generators multiply to normal forms, so the
    monomials are simply concatenated.
    """
    if type(x) is not type(y):
        raise TypeError("exterior product needs two classes of the same kind")
    model = product_model(x.model, y.model)
    coeffs = {m1 + m2: c1 * c2 for m1, c1 in x.coeffs.items() for m2, c2 in y.coeffs.items()}
    return type(x)(model, coeffs, reduced=True)


def _lift(x, model: VarietyModel, offset: int):
    """Pull back from a block of consecutive factors of ``model``."""
    n = model.ngens
    k = x.model.ngens
    coeffs = {(0,) * offset + m + (0,) * (n - offset - k): c for m, c in x.coeffs.items()}
    return type(x)(model, coeffs, reduced=True)


def _compose(a, b, X: VarietyModel, Y: VarietyModel, Z: VarietyModel):
    triple = product_model(X, Y, Z)
    left = _lift(a, triple, 0)
    right = _lift(b, triple, X.ngens)
    keep = tuple(range(X.ngens)) + tuple(range(X.ngens + Y.ngens, triple.ngens))
    f = Morphism.projection(triple, product_model(X, Z), keep)
    prod = left * right
    if isinstance(prod, KClass):
        return pushforward_projection_k(prod, f)
    return pushforward_projection(prod, f)


@dataclass
class KMCorrespondence:
    source: VarietyModel
    target: VarietyModel
    cls: KClass

    def __post_init__(self):
        if self.cls.model != product_model(self.source, self.target):
            raise ValueError(f"class must live on {self.source} x {self.target}")

    @classmethod
    def external(cls, x: KClass, y: KClass) -> "KMCorrespondence":
        return cls(x.model, y.model, external(x, y))

    def __add__(self, other):
        self._check(other)
        return KMCorrespondence(self.source, self.target, self.cls + other.cls)

    def __mul__(self, c):
        return KMCorrespondence(self.source, self.target, self.cls * c)

    __rmul__ = __mul__

    def _check(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("correspondences between different varieties")

    def __eq__(self, other):
        if not isinstance(other, KMCorrespondence):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.cls == other.cls

    __hash__ = None

    def __str__(self):
        return f"{self.source} -> {self.target}: {self.cls}"


def compose_km(a: KMCorrespondence, b: KMCorrespondence) -> KMCorrespondence:
    """``b ∘ a = p13_*(p12^* a . p23^* b)`` for ``a: X -> Y`` and ``b: Y -> Z``."""
    if a.target != b.source:
        raise ValueError(f"cannot compose {a.source}->{a.target} with {b.source}->{b.target}")
    cls = _compose(a.cls, b.cls, a.source, a.target, b.target)
    return KMCorrespondence(a.source, b.target, cls)


def _omega_twisted(n: int, i: int) -> dict:
    """``[Omega^i(i)]`` on ``P^n`` in line-bundle coefficients.

    The Euler sequence gives ``lambda_s(Omega) (1 + s) = (1 + s t^-1)^(n+1)``,
    so ``Lambda^i Omega = sum_j C(n+1, j) (-1)^(i-j) t^-j``.
    """
    return {(i - j,): math.comb(n + 1, j) * (-1) ** (i - j) for j in range(i + 1)}


def diagonal_k_class(n: int) -> KMCorrespondence:
    """``[Delta_* O]`` on ``P^n x P^n`` from the Beilinson resolution:
    ``sum_i (-1)^i [O(-i)] ⊠ [Omega^i(i)]``."""
    if n < 0 or n > 3:
        raise ValueError(f"diagonal class is provided for 0 <= n <= 3, got {n}")
    P = projective_space(n)
    if n == 0:
        return KMCorrespondence(P, P, KClass.one(product_model(P, P)))
    total = None
    for i in range(n + 1):
        left = KClass.from_t(P, {(-i,): (-1) ** i})
        right = KClass.from_t(P, _omega_twisted(n, i))
        term = external(left, right)
        total = term if total is None else total + term
    return KMCorrespondence(P, P, total)


def _dual_basis_diagonal(X: VarietyModel, kind: str):
    basis, elems, inv = _inverse_gram(X, kind)
    total = None
    for a, b in enumerate(elems):
        dual = None
        for c, e in enumerate(elems):
            if inv[c][a]:
                term = e * inv[c][a]
                dual = term if dual is None else dual + term
        if dual is None:
            continue
        term = external(b, dual)
        total = term if total is None else total + term
    return total


def dual_basis_diagonal_k(X: VarietyModel) -> KMCorrespondence:
    """``sum_a b_a ⊠ b_a^dual`` for the Euler-characteristic pairing."""
    return KMCorrespondence(X, X, _dual_basis_diagonal(X, "k"))


def chow_diagonal(X: VarietyModel) -> ChowClass:
    """The class of the diagonal, ``sum_a b_a ⊠ b_a^dual`` for the degree pairing."""
    return _dual_basis_diagonal(X, "chow")


def compose_chow(alpha: ChowClass, beta: ChowClass, X, Y, Z) -> ChowClass:
    return _compose(alpha, beta, X, Y, Z)


@dataclass
class OrbitMorphism:
    """Components ``i -> ChowClass`` on ``source x target`` of codimension
    ``dim target + i``.  Zero components are dropped."""

    source: VarietyModel
    target: VarietyModel
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        model = product_model(self.source, self.target)
        clean = {}
        for i, c in self.components.items():
            if c.model != model:
                raise ValueError(f"component {i} does not live on {model}")
            if not c.is_homogeneous(self.target.dim + i):
                raise ValueError(f"component {i} is not of codimension {self.target.dim + i}")
            if not c.is_zero():
                clean[i] = c
        self.components = dict(sorted(clean.items()))

    @classmethod
    def from_class(cls, source, target, c: ChowClass) -> "OrbitMorphism":
        comps = {k - target.dim: c.part(k) for k in c.degrees()}
        return cls(source, target, comps)

    def total(self) -> ChowClass:
        out = ChowClass.zero(product_model(self.source, self.target))
        for c in self.components.values():
            out = out + c
        return out

    def __add__(self, other):
        return OrbitMorphism.from_class(self.source, self.target, self.total() + other.total())

    def __eq__(self, other):
        if not isinstance(other, OrbitMorphism):
            return NotImplemented
        return (
            (self.source, self.target) == (other.source, other.target)
            and self.components.keys() == other.components.keys()
            and all(self.components[i] == other.components[i] for i in self.components)
        )

    __hash__ = None

    def to_json(self):
        return {str(i): str(c) for i, c in self.components.items()}

    def __str__(self):
        inner = ", ".join(f"{i}: {c}" for i, c in self.components.items())
        return f"{self.source} -> {self.target} {{{inner}}}"


def identity_orbit(X: VarietyModel) -> OrbitMorphism:
    return OrbitMorphism(X, X, {0: chow_diagonal(X)})


def compose_orbit(f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
    """Component ``k`` of ``g ∘ f`` is ``sum_{i+j=k} g_j ∘ f_i``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    X, Y, Z = f.source, f.target, g.target
    comps: dict = {}
    for i, fi in f.components.items():
        for j, gj in g.components.items():
            c = compose_chow(fi, gj, X, Y, Z)
            comps[i + j] = comps[i + j] + c if i + j in comps else c
    return OrbitMorphism(X, Z, comps)


def phi(a: KMCorrespondence, l: int) -> OrbitMorphism:
    """``Phi(a) = ch(a) . p2^* Td(T_Y)`` split by Tate twist.

    ``l`` is the level whose coefficient ring ``Z[1/(l+1)!]`` the output is
    checked against by :func:`phi_denominator_diagnostics`.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    td = external(ChowClass.one(a.source), todd_tangent(a.target))
    return OrbitMorphism.from_class(a.source, a.target, chern_character_map(a.cls) * td)


def phi_denominator_diagnostics(m: OrbitMorphism, l: int) -> list[str]:
    bound = math.factorial(l + 1)
    out = []
    for i, c in m.components.items():
        bad = sorted(d for d in c.denominators() if bound % d)
        if bad:
            out.append(f"component {i}: denominators {bad} do not divide (l+1)! = {bound}")
    return out


def phi_bound(*models: VarietyModel) -> int:
    """``2 max(dim) + max(e)`` with ``e`` the projective embedding dimension."""
    dims = [m.dim for m in models]
    embs = [m.embedding_dim for m in models]
    if any(e is None for e in embs):
        raise ValueError("every model needs a known projective embedding")
    return 2 * max(dims) + max(embs)


def verify_phi_functoriality(
    X: VarietyModel,
    Y: VarietyModel,
    Z: VarietyModel,
    a: KMCorrespondence,
    b: KMCorrespondence,
    l: int,
    explore: bool = False,
) -> VerificationReport:
    """``Phi(b ∘ a) = Phi(b) ∘ Phi(a)`` component-wise, with every output
    denominator dividing ``(l+1)!``."""
    if (a.source, a.target, b.source, b.target) != (X, Y, Y, Z):
        raise ValueError("correspondences do not match X -> Y -> Z")
    bound = phi_bound(X, Y, Z)
    if l < bound and not explore:
        raise PreconditionError(f"Phi needs l >= {bound}, got l={l}")
    lhs = phi(compose_km(a, b), l)
    pa, pb = phi(a, l), phi(b, l)
    rhs = compose_orbit(pa, pb)
    diags = []
    for name, m in (("Phi(b∘a)", lhs), ("Phi(a)", pa), ("Phi(b)", pb), ("Phi(b)∘Phi(a)", rhs)):
        diags.extend(f"{name} {d}" for d in phi_denominator_diagnostics(m, l))
    if lhs != rhs:
        for i in sorted(set(lhs.components) | set(rhs.components)):
            li = lhs.components.get(i)
            ri = rhs.components.get(i)
            if li is None or ri is None or li != ri:
                diags.append(f"component {i}: {li} != {ri}")
    return VerificationReport(
        name=f"phi {X} -> {Y} -> {Z} l={l}",
        equal=lhs == rhs,
        left=lhs,
        right=rhs,
        integrality={"denominators divide (l+1)!": not any("denominators" in d for d in diags)},
        diagnostics=diags,
        details={"a": str(a.cls), "b": str(b.cls)},
    )
