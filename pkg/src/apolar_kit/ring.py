"""The polynomial ring T = k[x_0..x_n] and the divided power algebra R = k_DP[y_0..y_n].

Both are graded with the same monomial bookkeeping: a monomial is an exponent
tuple, and inside each degree monomials are ordered lexicographically with
x_0 > x_1 > ... (so ``x_0^d`` is column 0).  That order is the column order of
every matrix built downstream.

``T`` acts on ``R`` by contraction, ``x^a (y^[b]) = y^[b-a]`` when ``b >= a``
and 0 otherwise.  In the monomial bases this makes the degree-d pairing the
identity matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .exact import FieldMismatch, FieldSpec
from .linalg import Basis, Echelon

Monomial = tuple


class VariableCountMismatch(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


# -- monomial bookkeeping ---------------------------------------------------


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple:
    """All exponent tuples of degree ``d`` in ``nvars`` variables, canonical order."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, d))}


def num_monomials(nvars: int, d: int) -> int:
    return len(monomials(nvars, d))


def unit(nvars: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(nvars))


def mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_geq(a: Monomial, b: Monomial) -> bool:
    return all(x >= y for x, y in zip(a, b))


def multinomial(a: Monomial, b: Monomial) -> int:
    """``(a+b)! / (a! b!)`` as an exact integer (a product of binomials)."""
    out = 1
    for x, y in zip(a, b):
        if x and y:
            out *= factorial(x + y) // (factorial(x) * factorial(y))
    return out


# -- forms --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class _Homogeneous:
    nvars: int
    degree: int
    coeffs: dict
    spec: FieldSpec

    var = "?"

    def __post_init__(self):
        clean = {}
        for m, c in self.coeffs.items():
            if len(m) != self.nvars or sum(m) != self.degree:
                raise ValueError(f"monomial {m} is not of degree {self.degree} in {self.nvars} variables")
            c = self.spec.coerce(c)
            if c:
                clean[tuple(m)] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def n(self) -> int:
        return self.nvars - 1

    @classmethod
    def zero(cls, nvars: int, degree: int, spec: FieldSpec):
        return cls(nvars, degree, {}, spec)

    @classmethod
    def monomial(cls, exps: Sequence[int], spec: FieldSpec, coeff=1):
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff}, spec)

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec, spec: FieldSpec):
        mons = monomials(nvars, degree)
        if isinstance(vec, dict):
            return cls(nvars, degree, {mons[i]: c for i, c in vec.items()}, spec)
        return cls(nvars, degree, {mons[i]: c for i, c in enumerate(vec) if c}, spec)

    def vector(self) -> dict:
        """Sparse coordinate vector in the canonical monomial order."""
        idx = monomial_index(self.nvars, self.degree)
        return {idx[m]: c for m, c in self.coeffs.items()}

    def dense(self) -> list:
        z = self.spec.zero
        return [self.coeffs.get(m, z) for m in monomials(self.nvars, self.degree)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        if other.nvars != self.nvars:
            raise VariableCountMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.nvars, self.degree, self.spec, self.coeffs) == (
            other.nvars, other.degree, other.spec, other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.nvars, self.degree, self.spec,
                     frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._compatible(other)
        if other.degree != self.degree and other and self:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        deg = self.degree if self else other.degree
        spec = self.spec
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = spec.add(out.get(m, spec.zero), c)
        return type(self)(self.nvars, deg, out, spec)

    def __neg__(self):
        spec = self.spec
        return type(self)(self.nvars, self.degree, {m: spec.neg(c) for m, c in self.coeffs.items()}, spec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        spec = self.spec
        c = spec.coerce(c)
        return type(self)(self.nvars, self.degree, {m: spec.mul(c, v) for m, v in self.coeffs.items()}, spec)

    def coefficient(self, exps: Sequence[int]):
        return self.spec.element(self.coeffs.get(tuple(exps), self.spec.zero))

    def leading_coefficient(self):
        """Coefficient of the first monomial (canonical order) in the support."""
        for m in monomials(self.nvars, self.degree):
            if m in self.coeffs:
                return self.coeffs[m]
        return self.spec.zero

    def normalized(self):
        """Scalar multiple whose first nonzero coefficient is 1."""
        if not self:
            return self
        return self.scale(self.spec.inv(self.leading_coefficient()))

    def terms(self):
        """``(monomial, raw coefficient)`` pairs in canonical order."""
        return [(m, self.coeffs[m]) for m in monomials(self.nvars, self.degree) if m in self.coeffs]

    def __str__(self):
        from .parser import format_form

        return format_form(self)

    def __repr__(self):
        return f"{type(self).__name__}({self}, nvars={self.nvars}, field={self.spec.name})"


class Form(_Homogeneous):
    """A homogeneous element of the polynomial ring T."""

    var = "x"

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        self._compatible(other)
        spec = self.spec
        out: dict = {}
        for a, c in self.coeffs.items():
            for b, e in other.coeffs.items():
                m = mono_add(a, b)
                out[m] = spec.add(out.get(m, spec.zero), spec.mul(c, e))
        return Form(self.nvars, self.degree + other.degree, out, spec)

    __rmul__ = __mul__

    def times_variable(self, i: int) -> "Form":
        out = {}
        for m, c in self.coeffs.items():
            m = list(m)
            m[i] += 1
            out[tuple(m)] = c
        return Form(self.nvars, self.degree + 1, out, self.spec)

    def evaluate(self, point: Sequence):
        """Value of the polynomial at a coordinate tuple (raw values)."""
        spec = self.spec
        pt = [spec.coerce(a) for a in point]
        if len(pt) != self.nvars:
            raise VariableCountMismatch(f"point has {len(pt)} coordinates, form has {self.nvars} variables")
        s = spec.zero
        for m, c in self.coeffs.items():
            t = c
            for a, k in zip(pt, m):
                if k:
                    t = spec.mul(t, spec.power(a, k))
            s = spec.add(s, t)
        return s

    def __call__(self, f: "DividedForm") -> "DividedForm":
        return contract(self, f)


class DividedForm(_Homogeneous):
    """A homogeneous element of the divided power algebra R (basis y^[a])."""

    var = "y"

    def __mul__(self, other):
        if not isinstance(other, DividedForm):
            return self.scale(other)
        return dp_mul(self, other)

    __rmul__ = __mul__


def _check_pair(a, b):
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    if a.nvars != b.nvars:
        raise VariableCountMismatch(f"{a.nvars} vs {b.nvars} variables")


def x(i: int, nvars: int, spec: FieldSpec) -> Form:
    return Form.monomial(unit(nvars, i), spec)


def y(i: int, nvars: int, spec: FieldSpec) -> DividedForm:
    return DividedForm.monomial(unit(nvars, i), spec)


@dataclass(frozen=True)
class LinearForm:
    """``sum a_i y_i`` in R_1; the coefficient tuple doubles as a point of the dual space."""

    coeffs: tuple
    spec: FieldSpec

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.spec.coerce(a) for a in self.coeffs))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> "LinearForm":
        """Projective representative with first nonzero coordinate 1."""
        for a in self.coeffs:
            if a:
                inv = self.spec.inv(a)
                return LinearForm(tuple(self.spec.mul(inv, b) for b in self.coeffs), self.spec)
        return self

    def as_divided(self) -> DividedForm:
        return DividedForm(self.nvars, 1, {unit(self.nvars, i): a for i, a in enumerate(self.coeffs)}, self.spec)

    def __str__(self):
        return str(self.as_divided())


# -- the operations ---------------------------------------------------------------


def dp_mul(f: DividedForm, g: DividedForm) -> DividedForm:
    """Divided power product: ``y^[a] y^[b] = ((a+b)!/(a!b!)) y^[a+b]``."""
    _check_pair(f, g)
    spec = f.spec
    out: dict = {}
    for a, c in f.coeffs.items():
        for b, e in g.coeffs.items():
            k = spec.embed(multinomial(a, b))
            if not k:
                continue
            m = mono_add(a, b)
            out[m] = spec.add(out.get(m, spec.zero), spec.mul(k, spec.mul(c, e)))
    return DividedForm(f.nvars, f.degree + g.degree, out, spec)


def contract(q: Form, f: DividedForm) -> DividedForm:
    """The apolarity action ``q(f)``; zero when ``deg q > deg f``."""
    _check_pair(q, f)
    spec = f.spec
    deg = f.degree - q.degree
    if deg < 0:
        return DividedForm(f.nvars, 0, {}, spec)
    out: dict = {}
    for a, c in q.coeffs.items():
        for b, e in f.coeffs.items():
            if all(u >= v for u, v in zip(b, a)):
                m = tuple(u - v for u, v in zip(b, a))
                out[m] = spec.add(out.get(m, spec.zero), spec.mul(c, e))
    return DividedForm(f.nvars, deg, out, spec)


def divided_power(l: LinearForm, d: int) -> DividedForm:
    """``l^[d] = sum_{|b|=d} a^b y^[b]`` (no factorials, valid in every characteristic)."""
    if d < 0:
        raise ValueError("negative degree")
    spec = l.spec
    out = {}
    for b in monomials(l.nvars, d):
        c = spec.one
        for a, k in zip(l.coeffs, b):
            if k:
                c = spec.mul(c, spec.power(a, k))
                if not c:
                    break
        if c:
            out[b] = c
    return DividedForm(l.nvars, d, out, spec)


def eval_identity_check(q: Form, l: LinearForm, d: int):
    """Compare ``q(l^[d])`` with ``q(a) l^[d-e]``; returns ``(lhs, rhs, equal)``."""
    if q.degree > d:
        raise DegreeMismatch(f"form degree {q.degree} exceeds {d}")
    lhs = contract(q, divided_power(l, d))
    rhs = divided_power(l, d - q.degree).scale(q.evaluate(l.coeffs))
    return lhs, rhs, lhs == rhs


def pairing_value(q: Form, f: DividedForm):
    """The perfect pairing T_d x R_d -> k, as a raw scalar."""
    if q.degree != f.degree:
        raise DegreeMismatch(f"pairing needs equal degrees, got {q.degree} and {f.degree}")
    r = contract(q, f)
    return r.coeffs.get(tuple([0] * f.nvars), f.spec.zero)


# -- graded pieces -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedPiece:
    """A subspace of T_e (coordinates in the canonical monomial order)."""

    nvars: int
    degree: int
    basis: Basis

    @classmethod
    def span(cls, forms: Iterable[Form], nvars: int, degree: int, spec: FieldSpec) -> "GradedPiece":
        vecs = []
        for f in forms:
            if f.nvars != nvars:
                raise VariableCountMismatch(f"{f.nvars} vs {nvars} variables")
            if f and f.degree != degree:
                raise DegreeMismatch(f"form of degree {f.degree} in a degree-{degree} piece")
            vecs.append(f.vector())
        return cls(nvars, degree, Basis.span(vecs, num_monomials(nvars, degree), spec))

    @classmethod
    def zero(cls, nvars: int, degree: int, spec: FieldSpec) -> "GradedPiece":
        return cls(nvars, degree, Basis.zero(num_monomials(nvars, degree), spec))

    @classmethod
    def full(cls, nvars: int, degree: int, spec: FieldSpec) -> "GradedPiece":
        return cls(nvars, degree, Basis.full(num_monomials(nvars, degree), spec))

    @property
    def spec(self) -> FieldSpec:
        return self.basis.spec

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def ambient_dim(self) -> int:
        return self.basis.ambient_dim

    @property
    def codim(self) -> int:
        return self.basis.ambient_dim - self.basis.dim

    def __eq__(self, other):
        if not isinstance(other, GradedPiece):
            return NotImplemented
        return (self.nvars, self.degree, self.basis) == (other.nvars, other.degree, other.basis)

    def forms(self) -> list:
        return [Form.from_vector(self.nvars, self.degree, r, self.spec) for r in self.basis.rows]

    def contains(self, q: Form) -> bool:
        if not q:
            return True
        if q.degree != self.degree:
            return False
        return self.basis.contains(q.vector())

    def contains_piece(self, other: "GradedPiece") -> bool:
        from .linalg import subspace_contains

        return subspace_contains(self.basis, other.basis)

    def times_linear(self) -> "GradedPiece":
        """``T_1 . V`` inside T_{e+1}."""
        return self.times_monomials(1)

    def times_monomials(self, k: int) -> "GradedPiece":
        """``T_k . V`` inside T_{e+k}."""
        nv, e = self.nvars, self.degree
        src = monomials(nv, e)
        idx = monomial_index(nv, e + k)
        ech = Echelon(len(idx), self.spec)
        for mu in monomials(nv, k):
            for row in self.basis.rows:
                ech.add({idx[mono_add(src[j], mu)]: c for j, c in row.items()})
        return GradedPiece(nv, e + k, ech.basis())

    def times_form(self, q: Form) -> "GradedPiece":
        """``q . V`` inside T_{e + deg q}."""
        ech = Echelon(num_monomials(self.nvars, self.degree + q.degree), self.spec)
        for f in self.forms():
            ech.add((f * q).vector())
        return GradedPiece(self.nvars, self.degree + q.degree, ech.basis())

    def __add__(self, other: "GradedPiece") -> "GradedPiece":
        from .linalg import subspace_sum

        return GradedPiece(self.nvars, self.degree, subspace_sum(self.basis, other.basis))

    def intersection(self, other: "GradedPiece") -> "GradedPiece":
        from .linalg import subspace_intersection

        return GradedPiece(self.nvars, self.degree, subspace_intersection(self.basis, other.basis))


def ideal_piece_from_generators(generators: Sequence[Form], e: int, nvars: int, spec: FieldSpec) -> GradedPiece:
    """Degree-e piece of the ideal generated by homogeneous ``generators``."""
    idx = monomial_index(nvars, e)
    ech = Echelon(len(idx), spec)
    for g in generators:
        if not g or g.degree > e:
            continue
        for mu in monomials(nvars, e - g.degree):
            ech.add({idx[mono_add(m, mu)]: c for m, c in g.coeffs.items()})
    return GradedPiece(nvars, e, ech.basis())
