"""Truncated symmetric-function calculus in the Chern-class basis.

A vector bundle of rank ``r`` is modelled by formal Chern roots
``a_1..a_r``; symmetric expressions in the roots are stored in the basis of
Chern monomials ``c_1**e_1 ... c_r**e_r`` (``c_i`` the elementary symmetric
polynomials), truncated above weighted degree ``d`` where ``deg c_i = i``.

Several bundles at once are handled with *blocks*: ``ranks=(2, 1)`` means a
rank-2 bundle with classes ``c1, c2`` and a line bundle with class ``d1``.

Two independent routes exist for the standard classes.  The Chern-basis
route (``chern_character``, ``todd_class``) goes through power sums and
Newton's identities; the root route expands products over the roots in a
:class:`SplitRingElement` and rewrites the result with
:func:`express_in_elementary`.  Tests compare them.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import _poly
from .arith import factorial, jam_constant, todd_series
from .report import PreconditionError, VerificationReport

__all__ = [
    "ChernBasisClass",
    "SplitRingElement",
    "chern_character",
    "dual_chern",
    "embed_block",
    "exp_truncated",
    "expand_roots",
    "express_in_elementary",
    "exterior_chern",
    "power_sums",
    "tensor_chern_character",
    "todd_class",
    "todd_inverse",
    "total_chern_class",
    "verify_additivity",
    "verify_exp_product_rule",
    "verify_exterior_identity",
    "verify_multiplicativity",
    "verify_todd_inverse",
    "whitney_product",
    "whitney_pullback",
]

_BLOCK_NAMES = "cdefgh"


class _Truncated:
    """Shared arithmetic for the two truncated polynomial rings."""

    __slots__ = ("ranks", "trunc_degree", "coeffs")

    def __init__(self, ranks, trunc_degree: int, coeffs=None):
        self.ranks = tuple(ranks)
        self.trunc_degree = trunc_degree
        w = self.weights
        self.coeffs = {
            tuple(m): Fraction(c)
            for m, c in (coeffs or {}).items()
            if c != 0 and _poly.weighted_degree(m, w) <= trunc_degree
        }

    # subclasses supply ``weights``
    weights: tuple[int, ...]

    @property
    def nvars(self) -> int:
        return sum(self.ranks)

    def _new(self, coeffs):
        out = object.__new__(type(self))
        out.ranks = self.ranks
        out.trunc_degree = self.trunc_degree
        out.coeffs = coeffs
        return out

    @classmethod
    def constant(cls, ranks, trunc_degree: int, value=1):
        return cls(ranks, trunc_degree, {(0,) * sum(ranks): value})

    def one(self):
        return type(self).constant(self.ranks, self.trunc_degree, 1)

    def zero(self):
        return self._new({})

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ranks != self.ranks:
            raise ValueError(f"block ranks differ: {self.ranks} vs {other.ranks}")
        if other.trunc_degree != self.trunc_degree:
            raise ValueError(
                f"truncation degrees differ: {self.trunc_degree} vs {other.trunc_degree}"
            )

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self).constant(self.ranks, self.trunc_degree, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return self._new(_poly.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        return self._new(_poly.add(self.coeffs, other.coeffs, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new(_poly.scale(self.coeffs, Fraction(other)))
        self._check(other)
        return self._new(_poly.mul(self.coeffs, other.coeffs, self.weights, self.trunc_degree))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int):
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(self.ranks, self.trunc_degree, other)
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.ranks == other.ranks
            and self.trunc_degree == other.trunc_degree
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def degree(self, m) -> int:
        return _poly.weighted_degree(m, self.weights)

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def part(self, k: int):
        """Homogeneous component of degree ``k``."""
        return self._new({m: c for m, c in self.coeffs.items() if self.degree(m) == k})

    def degrees(self) -> list[int]:
        return sorted({self.degree(m) for m in self.coeffs})

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, d: int):
        out = type(self)(self.ranks, d, self.coeffs)
        return out

    def _var_names(self) -> list[str]:
        raise NotImplementedError

    def __str__(self) -> str:
        return _poly.format_poly(self.coeffs, self._var_names(), self.degree)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(ranks={self.ranks}, d={self.trunc_degree}: {self})"

    def to_json(self):
        return str(self)


class ChernBasisClass(_Truncated):
    """Symmetric class in the Chern-monomial basis, ``deg c_i = i``."""

    __slots__ = ()

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(i for r in self.ranks for i in range(1, r + 1))

    @property
    def rank(self) -> int:
        if len(self.ranks) != 1:
            raise AttributeError("rank is only defined for single-block classes")
        return self.ranks[0]

    @classmethod
    def chern(cls, ranks, trunc_degree: int, i: int, block: int = 0):
        """The class ``c_i`` of bundle ``block`` (``c_0 = 1``, ``c_i = 0`` for i > rank)."""
        ranks = tuple(ranks)
        if i == 0:
            return cls.constant(ranks, trunc_degree, 1)
        if i > ranks[block]:
            return cls(ranks, trunc_degree)
        m = [0] * sum(ranks)
        m[sum(ranks[:block]) + i - 1] = 1
        return cls(ranks, trunc_degree, {tuple(m): 1})

    def _var_names(self) -> list[str]:
        return [f"{_BLOCK_NAMES[b]}{i}" for b, r in enumerate(self.ranks) for i in range(1, r + 1)]


class SplitRingElement(_Truncated):
    """Polynomial in Chern roots, truncated by total degree."""

    __slots__ = ()

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * sum(self.ranks)

    @classmethod
    def root(cls, ranks, trunc_degree: int, i: int, block: int = 0):
        m = [0] * sum(ranks)
        m[sum(tuple(ranks)[:block]) + i] = 1
        return cls(ranks, trunc_degree, {tuple(m): 1})

    def roots(self, block: int = 0) -> list["SplitRingElement"]:
        return [
            SplitRingElement.root(self.ranks, self.trunc_degree, i, block)
            for i in range(self.ranks[block])
        ]

    def is_symmetric(self) -> bool:
        offsets = _offsets(self.ranks)
        for m, c in self.coeffs.items():
            for b, r in enumerate(self.ranks):
                lo = offsets[b]
                for i in range(r - 1):
                    swapped = list(m)
                    swapped[lo + i], swapped[lo + i + 1] = swapped[lo + i + 1], swapped[lo + i]
                    if self.coeffs.get(tuple(swapped), 0) != c:
                        return False
        return True

    def _var_names(self) -> list[str]:
        return [f"{'ab'[b] if b < 2 else _BLOCK_NAMES[b]}{i}" for b, r in enumerate(self.ranks) for i in range(1, r + 1)]


def _offsets(ranks) -> list[int]:
    out, acc = [], 0
    for r in ranks:
        out.append(acc)
        acc += r
    return out


# --- roots <-> Chern basis -------------------------------------------------


@lru_cache(maxsize=None)
def _elementary_power(r: int, exps: tuple[int, ...], d: int) -> tuple:
    """Expansion of ``prod e_i**exps[i]`` in ``r`` roots, truncated at ``d``."""
    p = {(0,) * r: Fraction(1)}
    ones = (1,) * r
    for i, e in enumerate(exps, start=1):
        if not e:
            continue
        ei = {m: Fraction(1) for m in _subset_monomials(r, i)}
        for _ in range(e):
            p = _poly.mul(p, ei, ones, d)
    return tuple(p.items())


def _subset_monomials(r: int, k: int):
    for subset in itertools.combinations(range(r), k):
        m = [0] * r
        for i in subset:
            m[i] = 1
        yield tuple(m)


def expand_roots(c: ChernBasisClass) -> SplitRingElement:
    """Substitute ``c_i = e_i(roots)`` in every block."""
    out: dict = {}
    offsets = _offsets(c.ranks)
    for m, coeff in c.coeffs.items():
        term = {(): Fraction(coeff)}
        for b, r in enumerate(c.ranks):
            exps = m[offsets[b]:offsets[b] + r]
            block = dict(_elementary_power(r, tuple(exps), c.trunc_degree))
            term = {m1 + m2: v1 * v2 for m1, v1 in term.items() for m2, v2 in block.items()}
        _poly.add_into(out, term)
    return SplitRingElement(c.ranks, c.trunc_degree, out)


def express_in_elementary(s: SplitRingElement) -> ChernBasisClass:
    """Rewrite a block-symmetric root polynomial in Chern monomials.

    Leading-monomial elimination in lexicographic order: the lex-largest
    monomial of a symmetric polynomial has non-increasing exponents inside
    every block, ``lam``, and is the leading monomial of
    ``prod_k e_k**(lam_k - lam_{k+1})``.  Subtracting and repeating ends at
    zero exactly when the input is symmetric; otherwise a leading monomial
    with increasing exponents shows up and :class:`ValueError` is raised.
    """
    ranks = s.ranks
    offsets = _offsets(ranks)
    remaining = dict(s.coeffs)
    out: dict = {}
    while remaining:
        lead = max(remaining)
        coeff = remaining[lead]
        cmono = []
        for b, r in enumerate(ranks):
            lam = lead[offsets[b]:offsets[b] + r]
            if any(lam[i] < lam[i + 1] for i in range(r - 1)):
                raise ValueError(f"input is not symmetric in block {b} (leading monomial {lead})")
            cmono.extend(lam[i] - (lam[i + 1] if i + 1 < r else 0) for i in range(r))
        cmono = tuple(cmono)
        out[cmono] = out.get(cmono, 0) + coeff
        expansion = expand_roots(ChernBasisClass(ranks, s.trunc_degree, {cmono: 1}))
        _poly.add_into(remaining, expansion.coeffs, -coeff)
    return ChernBasisClass(ranks, s.trunc_degree, out)


def embed_block(x: ChernBasisClass, ranks, block: int) -> ChernBasisClass:
    """View a single-block class as living on bundle ``block`` of ``ranks``."""
    ranks = tuple(ranks)
    if x.ranks != (ranks[block],):
        raise ValueError(f"class of ranks {x.ranks} does not fit block {block} of {ranks}")
    before = sum(ranks[:block])
    after = sum(ranks[block + 1:])
    coeffs = {(0,) * before + m + (0,) * after: c for m, c in x.coeffs.items()}
    return ChernBasisClass(ranks, x.trunc_degree, coeffs)


def embed_roots(x: SplitRingElement, ranks, block: int) -> SplitRingElement:
    ranks = tuple(ranks)
    before = sum(ranks[:block])
    after = sum(ranks[block + 1:])
    coeffs = {(0,) * before + m + (0,) * after: c for m, c in x.coeffs.items()}
    return SplitRingElement(ranks, x.trunc_degree, coeffs)


# --- standard classes -------------------------------------------------------


def total_chern_class(r: int, d: int) -> ChernBasisClass:
    out = ChernBasisClass.constant((r,), d, 1)
    for i in range(1, r + 1):
        out = out + ChernBasisClass.chern((r,), d, i)
    return out


@lru_cache(maxsize=None)
def power_sums(r: int, d: int) -> tuple[ChernBasisClass, ...]:
    """``p_0 .. p_d`` (with ``p_0 = r``) via Newton's identities."""
    e = [ChernBasisClass.chern((r,), d, i) for i in range(d + 1)]
    p = [ChernBasisClass.constant((r,), d, r)]
    for k in range(1, d + 1):
        acc = ChernBasisClass((r,), d)
        for i in range(1, k):
            acc = acc + e[i] * p[k - i] * (-1) ** (i - 1)
        acc = acc + e[k] * ((-1) ** (k - 1) * k)
        p.append(acc)
    return tuple(p)


@lru_cache(maxsize=None)
def chern_character(r: int, d: int) -> ChernBasisClass:
    """``ch`` of the universal rank-``r`` bundle, truncated at degree ``d``."""
    p = power_sums(r, d)
    out = ChernBasisClass.constant((r,), d, r)
    for k in range(1, d + 1):
        out = out + p[k] / factorial(k)
    return out


def _series_log(a: tuple[Fraction, ...]) -> list[Fraction]:
    """Coefficients of ``log f`` for ``f = sum a_k x^k`` with ``a_0 = 1``."""
    n = len(a) - 1
    b = [Fraction(0)] * (n + 1)
    # f' = f * (log f)'  =>  k a_k = sum_{j=1}^{k} j b_j a_{k-j}
    for k in range(1, n + 1):
        b[k] = (k * a[k] - sum(j * b[j] * a[k - j] for j in range(1, k))) / k
    return b


def _exp_nilpotent(y: ChernBasisClass) -> ChernBasisClass:
    out = y.one()
    term = y.one()
    for n in range(1, y.trunc_degree + 1):
        term = term * y / n
        if term.is_zero():
            break
        out = out + term
    return out


@lru_cache(maxsize=None)
def _log_todd(r: int, d: int) -> ChernBasisClass:
    alpha = _series_log(todd_series(d))
    p = power_sums(r, d)
    out = ChernBasisClass((r,), d)
    for k in range(1, d + 1):
        out = out + p[k] * alpha[k]
    return out


@lru_cache(maxsize=None)
def todd_class(r: int, d: int) -> ChernBasisClass:
    """Universal Todd class ``prod a_i / (1 - exp(-a_i))`` truncated at ``d``.

    Computed as ``exp(sum_k alpha_k p_k)`` where ``sum alpha_k x^k`` is the
    logarithm of the one-variable Todd series.
    """
    return _exp_nilpotent(_log_todd(r, d))


@lru_cache(maxsize=None)
def todd_inverse(r: int, d: int) -> ChernBasisClass:
    return _exp_nilpotent(-_log_todd(r, d))


def exp_truncated(x, l: int):
    """Partial exponential ``sum_{n<=l} x**n / n!`` in the truncated ring."""
    if x.constant_term() != 0:
        raise ValueError("exp_truncated needs a class with zero constant term")
    out = x.one()
    term = x.one()
    for n in range(1, l + 1):
        term = term * x / n
        if term.is_zero():
            break
        out = out + term
    return out


def dual_chern(c: ChernBasisClass) -> ChernBasisClass:
    """``c_i(E^dual) = (-1)**i c_i(E)``: flip the sign of odd-degree terms."""
    return c._new({m: (-v if c.degree(m) % 2 else v) for m, v in c.coeffs.items()})


def whitney_product(c1: ChernBasisClass, c2: ChernBasisClass) -> ChernBasisClass:
    """Total Chern class of ``E' + E''`` from those of the summands.

    The summands are independent bundles, so the result lives on the
    concatenated blocks ``c1.ranks + c2.ranks``.
    """
    if c1.trunc_degree != c2.trunc_degree:
        raise ValueError(
            f"truncation degrees differ: {c1.trunc_degree} vs {c2.trunc_degree}"
        )
    for c in (c1, c2):
        if c.constant_term() != 1:
            raise ValueError("whitney_product expects total Chern classes (constant term 1)")
    ranks = c1.ranks + c2.ranks
    n1 = c1.nvars
    coeffs: dict = {}
    for m1, v1 in c1.coeffs.items():
        for m2, v2 in c2.coeffs.items():
            if c1.degree(m1) + c2.degree(m2) <= c1.trunc_degree:
                coeffs[m1 + m2] = coeffs.get(m1 + m2, 0) + v1 * v2
    out = ChernBasisClass(ranks, c1.trunc_degree, coeffs)
    assert out.nvars == n1 + c2.nvars
    return out


def whitney_pullback(x: ChernBasisClass, ranks) -> ChernBasisClass:
    """Rewrite a class of ``E = E_1 + ... + E_k`` in the Chern classes of
    the summands, using ``c(E) = prod c(E_b)``."""
    ranks = tuple(ranks)
    if x.ranks != (sum(ranks),):
        raise ValueError(f"class of ranks {x.ranks} cannot split as {ranks}")
    d = x.trunc_degree
    total = ChernBasisClass.constant(ranks, d, 1)
    for b, r in enumerate(ranks):
        cb = ChernBasisClass.constant(ranks, d, 1)
        for i in range(1, r + 1):
            cb = cb + ChernBasisClass.chern(ranks, d, i, b)
        total = total * cb
    images = [total.part(k) for k in range(1, sum(ranks) + 1)]
    return _poly.substitute(
        x.coeffs, images, ChernBasisClass.constant(ranks, d, 1), ChernBasisClass(ranks, d)
    )


# --- universal formulas over several bundles -------------------------------


def _sum_exp(roots, l: int):
    out = None
    for a in roots:
        term = exp_truncated(a, l)
        out = term if out is None else out + term
    return out


@lru_cache(maxsize=None)
def tensor_ch(r: int, r2: int, d: int, l: int) -> ChernBasisClass:
    """``sum_{i,j} exp^(l)(a_i + b_j)`` rewritten in ``c_i(E), d_j(E')``."""
    ranks = (r, r2)
    zero = SplitRingElement(ranks, d)
    total = zero
    for i in range(r):
        for j in range(r2):
            a = SplitRingElement.root(ranks, d, i, 0)
            b = SplitRingElement.root(ranks, d, j, 1)
            total = total + exp_truncated(a + b, l)
    return express_in_elementary(total)


def tensor_chern_character(r: int, r2: int, d: int, l: int) -> VerificationReport:
    """Check ``l!^2 ch(E x E') = (l! ch E)(l! ch E')`` up to degree ``d``."""
    if l < d:
        raise PreconditionError(f"tensor formula needs l >= d, got l={l}, d={d}")
    fl = factorial(l)
    ranks = (r, r2)
    lhs = tensor_ch(r, r2, d, l) * fl ** 2
    ch1 = chern_character(r, d) * fl
    ch2 = chern_character(r2, d) * fl
    rhs = embed_block(ch1, ranks, 0) * embed_block(ch2, ranks, 1)
    return VerificationReport(
        name=f"tensor r={r} r'={r2} d={d} l={l}",
        equal=lhs == rhs,
        left=lhs,
        right=rhs,
        integrality={"l!ch(E)": ch1.is_integral(), "l!ch(E')": ch2.is_integral(),
                     "lhs": lhs.is_integral(), "rhs": rhs.is_integral()},
        diagnostics=_degree_diff(lhs, rhs),
    )


@lru_cache(maxsize=None)
def exterior_chern(p: int, r: int, d: int) -> ChernBasisClass:
    """Total Chern class of the ``p``-th exterior power of a rank-``r`` bundle."""
    if not 0 <= p <= r:
        raise ValueError(f"exterior power {p} of a rank-{r} bundle is not supported")
    roots = SplitRingElement((r,), d).roots()
    total = SplitRingElement.constant((r,), d, 1)
    for subset in itertools.combinations(range(r), p):
        s = SplitRingElement((r,), d)
        for i in subset:
            s = s + roots[i]
        total = total * (s + 1)
    return express_in_elementary(total)


@lru_cache(maxsize=None)
def _alternating_dual_exterior_ch(r: int, d: int, l: int) -> ChernBasisClass:
    roots = SplitRingElement((r,), d).roots()
    total = SplitRingElement((r,), d)
    for p in range(r + 1):
        for subset in itertools.combinations(range(r), p):
            s = SplitRingElement((r,), d)
            for i in subset:
                s = s - roots[i]
            total = total + exp_truncated(s, l) * (-1) ** p
    return express_in_elementary(total)


def verify_exterior_identity(r: int, d: int, l: int) -> VerificationReport:
    """``T_l sum_p (-1)^p ch(wedge^p E^dual) = T_l Td(E)^{-1} c_r(E)``.

    Both sides equal ``prod (1 - exp(-a_i))`` as power series, so the check
    is meaningful for every ``d``; the intended application has ``d = r``.
    """
    if l < d:
        raise PreconditionError(f"exterior identity needs l >= d, got l={l}, d={d}")
    t = jam_constant(l)
    lhs = _alternating_dual_exterior_ch(r, d, l) * t
    rhs = todd_inverse(r, d) * ChernBasisClass.chern((r,), d, r) * t
    return VerificationReport(
        name=f"exterior r={r} d={d} l={l}",
        equal=lhs == rhs,
        left=lhs,
        right=rhs,
        integrality={"lhs": lhs.is_integral(), "rhs": rhs.is_integral()},
        diagnostics=_degree_diff(lhs, rhs),
    )


def _denominator_primes_at_most(q: Fraction, bound: int) -> bool:
    den = q.denominator
    for p in range(2, bound + 1):
        while den % p == 0:
            den //= p
    return den == 1


def verify_exp_product_rule(l: int, d: int) -> VerificationReport:
    """``exp^(l)(a) exp^(l)(b) - exp^(l)(a+b)`` lives in degrees ``>= l+1``
    and has coefficients in ``Z[1/l!]``."""
    ranks = (1, 1)
    a = SplitRingElement.root(ranks, d, 0, 0)
    b = SplitRingElement.root(ranks, d, 0, 1)
    left = exp_truncated(a, l) * exp_truncated(b, l)
    right = exp_truncated(a + b, l)
    err = left - right
    low = [k for k in err.degrees() if k <= l]
    ring_ok = all(_denominator_primes_at_most(c, l) for c in err.coeffs.values())
    diags = [f"error term in degree {k}: {err.part(k)}" for k in low]
    return VerificationReport(
        name=f"exp product rule l={l} d={d}",
        equal=not low,
        left=left,
        right=right,
        integrality={"error in Z[1/l!]": ring_ok},
        diagnostics=diags,
        details={"error": err, "error_degrees": err.degrees()},
    )


def verify_additivity(r1: int, r2: int, d: int, l: int) -> VerificationReport:
    """``l! ch(E1 + E2) = l! ch(E1) + l! ch(E2)``, compared on Chern roots."""
    if l < d:
        raise PreconditionError(f"additivity needs l >= d, got l={l}, d={d}")
    fl = factorial(l)
    ranks = (r1, r2)
    whole = chern_character(r1 + r2, d) * fl
    lhs = expand_roots(whitney_pullback(whole, ranks))
    rhs = expand_roots(
        embed_block(chern_character(r1, d) * fl, ranks, 0)
        + embed_block(chern_character(r2, d) * fl, ranks, 1)
    )
    return VerificationReport(
        name=f"additivity r1={r1} r2={r2} d={d} l={l}",
        equal=lhs == rhs,
        left=lhs,
        right=rhs,
        integrality={"lhs": lhs.is_integral(), "rhs": rhs.is_integral()},
        diagnostics=_degree_diff(lhs, rhs),
    )


def verify_multiplicativity(r1: int, r2: int, d: int, l: int) -> VerificationReport:
    """``T_l^2 Td(E1 + E2) = (T_l Td E1)(T_l Td E2)``, compared on roots."""
    if l < d:
        raise PreconditionError(f"multiplicativity needs l >= d, got l={l}, d={d}")
    t = jam_constant(l)
    ranks = (r1, r2)
    lhs = expand_roots(whitney_pullback(todd_class(r1 + r2, d) * t * t, ranks))
    rhs = expand_roots(
        embed_block(todd_class(r1, d) * t, ranks, 0) * embed_block(todd_class(r2, d) * t, ranks, 1)
    )
    return VerificationReport(
        name=f"multiplicativity r1={r1} r2={r2} d={d} l={l}",
        equal=lhs == rhs,
        left=lhs,
        right=rhs,
        integrality={"lhs": lhs.is_integral(), "rhs": rhs.is_integral()},
        diagnostics=_degree_diff(lhs, rhs),
    )


def verify_todd_inverse(r: int, d: int, l: int) -> VerificationReport:
    """``(T_l Td E)(T_l Td(E)^{-1}) = T_l^2``."""
    t = jam_constant(l)
    a = todd_class(r, d) * t
    b = todd_inverse(r, d) * t
    prod = a * b
    return VerificationReport(
        name=f"todd inverse r={r} d={d} l={l}",
        equal=prod == t * t,
        left=prod,
        right=t * t,
        integrality={"T_l Td": a.is_integral(), "T_l Td^-1": b.is_integral()},
    )


def _degree_diff(lhs, rhs) -> list[str]:
    diff = lhs - rhs
    return [f"degree {k}: lhs - rhs = {diff.part(k)}" for k in diff.degrees()]
