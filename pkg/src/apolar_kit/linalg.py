"""Exact sparse linear algebra over Q and F_p.

Vectors are ``dict[int, raw]`` maps from column index to a nonzero raw field
value.  Subspaces are stored as :class:`Basis` objects in reduced row echelon
form, which is canonical: two subspaces are equal iff their bases compare
equal.

Over Q the elimination is fraction-free: rows are kept as primitive integer
vectors and combined by cross-multiplication followed by content removal, so
no ``Fraction`` arithmetic happens inside the hot loop.  Over F_p it is plain
Gauss-Jordan with residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exact import FieldMismatch, FieldSpec

Vector = dict


class NotInSpan(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _primitive(row: dict) -> dict:
    """Scale an integer row so its content is 1 and its leading entry is positive."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def _to_integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = _lcm(den, v.denominator)
    out = {}
    for k, v in row.items():
        if v:
            out[k] = int(v * den) if den != 1 else int(v)
    return _primitive(out)


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Pivot choice is the first nonzero column of the reduced incoming row, so
    the final form is the canonical RREF of the span regardless of row order.
    """

    def __init__(self, ncols: int, spec: FieldSpec):
        self.ncols = ncols
        self.spec = spec
        self.p = spec.p
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prepare(self, row) -> dict:
        if self.p == 0:
            return _to_integer_row(row)
        p = self.p
        out = {}
        for k, v in row.items():
            v = int(v) % p if not isinstance(v, Fraction) else self.spec.coerce(v)
            if v:
                out[k] = v
        return out

    def _reduce(self, r: dict) -> dict:
        piv = self.pivots
        hits = [c for c in r if c in piv]
        if not hits:
            return r
        if self.p == 0:
            for c in hits:
                P = piv[c]
                a, b = P[c], r[c]
                g = gcd(a, b)
                a //= g
                b //= g
                if a != 1:
                    r = {k: a * v for k, v in r.items()}
                for k, v in P.items():
                    w = r.get(k, 0) - b * v
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
                r = _primitive(r)
            return r
        p = self.p
        for c in hits:
            P = piv[c]
            b = r[c]
            for k, v in P.items():
                w = (r.get(k, 0) - b * v) % p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return r

    def reduce(self, row) -> dict:
        """Remainder of ``row`` after eliminating every pivot column (raw scale)."""
        return self._reduce(self._prepare(row))

    def add(self, row) -> bool:
        """Insert ``row``; return True when it enlarges the span."""
        r = self._reduce(self._prepare(row))
        if not r:
            return False
        lead = min(r)
        if self.p == 0:
            if r[lead] < 0:
                r = {k: -v for k, v in r.items()}
            a = r[lead]
            for c, P in self.pivots.items():
                b = P.get(lead)
                if b is None:
                    continue
                g = gcd(a, b)
                aa, bb = a // g, b // g
                new = {k: aa * v for k, v in P.items()}
                for k, v in r.items():
                    w = new.get(k, 0) - bb * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                self.pivots[c] = _primitive(new)
        else:
            p = self.p
            inv = pow(r[lead], -1, p)
            if inv != 1:
                r = {k: v * inv % p for k, v in r.items()}
            for c, P in self.pivots.items():
                b = P.get(lead)
                if b is None:
                    continue
                for k, v in r.items():
                    w = (P.get(k, 0) - b * v) % p
                    if w:
                        P[k] = w
                    else:
                        P.pop(k, None)
        self.pivots[lead] = r
        return True

    def extend(self, rows: Iterable) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def basis(self) -> "Basis":
        cols = sorted(self.pivots)
        rows = []
        if self.p == 0:
            for c in cols:
                P = self.pivots[c]
                a = P[c]
                rows.append({k: Fraction(v, a) for k, v in sorted(P.items())})
        else:
            for c in cols:
                rows.append(dict(sorted(self.pivots[c].items())))
        return Basis(self.ncols, tuple(rows), tuple(cols), self.spec)


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Row-major sparse matrix; no stored zeros, unique positions."""

    nrows: int
    ncols: int
    rows: tuple
    spec: FieldSpec

    @classmethod
    def from_entries(cls, nrows, ncols, entries, spec: FieldSpec) -> "SparseMatrix":
        rows = [dict() for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            if j in rows[i]:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            v = spec.coerce(v)
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, tuple(rows), spec)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], spec: FieldSpec, ncols=None) -> "SparseMatrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            row = {}
            for j, v in enumerate(r):
                v = spec.coerce(v)
                if v:
                    row[j] = v
            rows.append(row)
        return cls(len(rows), ncols, tuple(rows), spec)

    @classmethod
    def from_rows(cls, rows: Iterable[dict], ncols: int, spec: FieldSpec) -> "SparseMatrix":
        clean = tuple({k: v for k, v in r.items() if v} for r in rows)
        return cls(len(clean), ncols, clean, spec)

    def entries(self):
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                yield i, j, r[j]

    def to_dense(self) -> list:
        z = self.spec.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return SparseMatrix(self.ncols, self.nrows, tuple(cols), self.spec)

    def apply(self, v: dict) -> dict:
        """Matrix-vector product ``m . v`` for a sparse vector."""
        out = {}
        spec = self.spec
        for i, r in enumerate(self.rows):
            s = spec.zero
            for j, a in r.items():
                b = v.get(j)
                if b:
                    s = spec.add(s, spec.mul(a, b))
            if s:
                out[i] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.spec, self.rows) == (
            other.nrows, other.ncols, other.spec, other.rows)


@dataclass(frozen=True, eq=False)
class Basis:
    """A subspace of k^ambient_dim, held as its canonical RREF rows."""

    ambient_dim: int
    rows: tuple
    pivots: tuple
    spec: FieldSpec

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int, spec: FieldSpec) -> "Basis":
        return Echelon(ambient_dim, spec).extend(vectors).basis()

    @classmethod
    def zero(cls, ambient_dim: int, spec: FieldSpec) -> "Basis":
        return cls(ambient_dim, (), (), spec)

    @classmethod
    def full(cls, ambient_dim: int, spec: FieldSpec) -> "Basis":
        one = spec.one
        rows = tuple({i: one} for i in range(ambient_dim))
        return cls(ambient_dim, rows, tuple(range(ambient_dim)), spec)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Basis):
            return NotImplemented
        return (self.ambient_dim, self.spec, self.pivots, self.rows) == (
            other.ambient_dim, other.spec, other.pivots, other.rows)

    def matrix(self) -> SparseMatrix:
        return SparseMatrix(len(self.rows), self.ambient_dim, self.rows, self.spec)

    def dense(self) -> list:
        return self.matrix().to_dense()

    def echelon(self) -> Echelon:
        """A fresh :class:`Echelon` seeded with these rows (for greedy extension)."""
        return Echelon(self.ambient_dim, self.spec).extend(self.rows)

    def coefficients(self, v) -> list:
        return in_span(v, self)

    def contains(self, v) -> bool:
        try:
            in_span(v, self)
        except NotInSpan:
            return False
        return True


def _as_sparse(v, spec: FieldSpec) -> dict:
    if isinstance(v, dict):
        return {k: spec.coerce(x) for k, x in v.items() if x}
    out = {}
    for i, x in enumerate(v):
        x = spec.coerce(x)
        if x:
            out[i] = x
    return out


def rref(m: SparseMatrix):
    """Return ``(basis of the row space, pivot columns, rank)``."""
    b = Echelon(m.ncols, m.spec).extend(m.rows).basis()
    return b, b.pivots, b.dim


def rank(m: SparseMatrix) -> int:
    return Echelon(m.ncols, m.spec).extend(m.rows).rank


def kernel_basis(m: SparseMatrix) -> Basis:
    """Basis of ``{v : m . v = 0}`` (right kernel), canonicalized."""
    spec = m.spec
    ech = Echelon(m.ncols, spec).extend(m.rows).basis()
    pivset = set(ech.pivots)
    by_col: dict = {}
    for piv, row in zip(ech.pivots, ech.rows):
        for j, v in row.items():
            if j != piv:
                by_col.setdefault(j, []).append((piv, v))
    one = spec.one
    vecs = []
    for j in range(m.ncols):
        if j in pivset:
            continue
        v = {j: one}
        for piv, a in by_col.get(j, ()):
            v[piv] = spec.neg(a)
        vecs.append(v)
    return Basis.span(vecs, m.ncols, spec)


def left_kernel(m: SparseMatrix) -> Basis:
    """Basis of ``{c : c . m = 0}``: linear relations among the rows of ``m``."""
    return kernel_basis(m.transpose())


def in_span(v, b: Basis) -> list:
    """Coefficients ``c`` with ``sum c_i b_i == v``; raises NotInSpan otherwise."""
    spec = b.spec
    v = _as_sparse(v, spec)
    if v and max(v) >= b.ambient_dim:
        raise AmbientMismatch("vector longer than the ambient space")
    coeffs = [v.get(piv, spec.zero) for piv in b.pivots]
    res = dict(v)
    for c, row in zip(coeffs, b.rows):
        if not c:
            continue
        for k, a in row.items():
            w = spec.sub(res.get(k, spec.zero), spec.mul(c, a))
            if w:
                res[k] = w
            else:
                res.pop(k, None)
    if res:
        raise NotInSpan(f"vector not in span (residual support {sorted(res)[:5]})")
    return coeffs


def _check(a: Basis, b: Basis):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dims {a.ambient_dim} != {b.ambient_dim}")
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")


def subspace_sum(a: Basis, b: Basis) -> Basis:
    _check(a, b)
    return a.echelon().extend(b.rows).basis()


def orthogonal_complement(a: Basis) -> Basis:
    """``{v : <v, w> = 0 for all w in a}`` for the standard bilinear form."""
    return kernel_basis(a.matrix())


def subspace_intersection(a: Basis, b: Basis) -> Basis:
    """``a & b`` computed as ``(a^perp + b^perp)^perp``."""
    _check(a, b)
    if a.dim == 0 or b.dim == 0:
        return Basis.zero(a.ambient_dim, a.spec)
    s = subspace_sum(orthogonal_complement(a), orthogonal_complement(b))
    return orthogonal_complement(s)


def subspace_contains(big: Basis, small: Basis) -> bool:
    """True when ``small`` is a subspace of ``big``."""
    _check(big, small)
    if small.dim > big.dim:
        return False
    return subspace_sum(big, small).dim == big.dim
