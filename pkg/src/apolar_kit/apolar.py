"""Apolar ideals of divided power forms (Macaulay inverse systems).

For ``f`` in R_d the apolar ideal ``f^perp`` collects every ``q`` in T with
``q(f) = 0``.  Its degree-e piece is the kernel of the catalecticant
``T_e -> R_{d-e}``, and ``T/f^perp`` is Artinian Gorenstein with socle in
degree d.  :func:`dual_socle_generator` runs the correspondence backwards.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping

from .exact import FieldSpec
from .linalg import Basis, Echelon, SparseMatrix, kernel_basis, rank
from .ring import (
    DividedForm,
    Form,
    GradedPiece,
    contract,
    monomial_index,
    monomials,
    num_monomials,
)


class ZeroForm(ValueError):
    pass


class NotGorenstein(ValueError):
    pass


def catalecticant(f: DividedForm, e: int) -> SparseMatrix:
    """Matrix of ``q -> q(f)`` from T_e to R_{d-e}; column j is the contraction of monomial j."""
    d = f.degree
    nv = f.nvars
    if not 0 <= e <= d:
        raise ValueError(f"catalecticant degree {e} outside 0..{d}")
    src = monomials(nv, e)
    tgt = monomial_index(nv, d - e)
    rows = [dict() for _ in range(len(tgt))]
    for j, a in enumerate(src):
        for b, c in f.coeffs.items():
            if all(u >= v for u, v in zip(b, a)):
                rows[tgt[tuple(u - v for u, v in zip(b, a))]][j] = c
    return SparseMatrix(len(tgt), len(src), tuple(rows), f.spec)


def perp_piece(f: DividedForm, e: int) -> GradedPiece:
    """The degree-e piece of ``f^perp`` as a canonical basis inside T_e."""
    if e < 0:
        raise ValueError("negative degree")
    if e > f.degree:
        return GradedPiece.full(f.nvars, e, f.spec)
    return GradedPiece(f.nvars, e, kernel_basis(catalecticant(f, e)))


@dataclass(frozen=True)
class HilbertFunction:
    values: tuple

    def __getitem__(self, e: int) -> int:
        return self.values[e] if 0 <= e < len(self.values) else 0

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 1

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def as_list(self) -> list:
        return list(self.values)


def hilbert_function(f: DividedForm) -> HilbertFunction:
    """``h_e = rank`` of the degree-e catalecticant, for ``0 <= e <= deg f``."""
    if not f:
        raise ZeroForm("the apolar algebra of the zero form is not Gorenstein")
    return HilbertFunction(tuple(rank(catalecticant(f, e)) for e in range(f.degree + 1)))


@dataclass(frozen=True)
class GeneratorDegree:
    degree: int
    count: int
    new: GradedPiece

    def forms(self) -> list:
        return self.new.forms()


def complement_generators(piece: GradedPiece, lower: GradedPiece) -> GradedPiece:
    """Rows of ``piece``'s canonical basis that are new modulo ``lower``.

    ``lower`` must be contained in ``piece``; the returned subspace is a
    complement of it, chosen greedily in RREF order.
    """
    ech = lower.basis.echelon()
    picked = []
    for row in piece.basis.rows:
        if ech.add(row):
            picked.append(row)
    return GradedPiece(piece.nvars, piece.degree, Basis.span(picked, piece.ambient_dim, piece.spec))


def minimal_generators(f: DividedForm, up_to: int | None = None) -> list:
    """Minimal generators of ``f^perp`` degree by degree.

    ``beta_{1,j} = dim f^perp_j - dim (T_1 . f^perp_{j-1})``; the new
    generators are a canonical complement of the product subspace.
    """
    if up_to is None:
        up_to = f.degree + 1
    if up_to > f.degree + 1:
        raise ValueError("generators of f^perp live in degrees <= deg f + 1")
    out = []
    prev = None
    for j in range(1, up_to + 1):
        cur = perp_piece(f, j)
        lower = prev.times_linear() if prev is not None else GradedPiece.zero(f.nvars, j, f.spec)
        new = complement_generators(cur, lower)
        out.append(GeneratorDegree(j, new.dim, new))
        prev = cur
    return out


def generator_counts(f: DividedForm, up_to: int | None = None) -> dict:
    return {g.degree: g.count for g in minimal_generators(f, up_to)}


def dual_socle_generator(pieces: Mapping[int, GradedPiece], nvars: int, d: int, spec: FieldSpec) -> DividedForm:
    """Recover the form ``f`` in R_d with ``I_e`` annihilating ``f`` for every given piece.

    Each ``q`` in a degree-e piece and each monomial ``x^m`` of degree ``d-e``
    give the linear condition ``<x^m q, f> = 0``; the pairing is the identity
    in the monomial bases, so the solutions are the orthogonal complement of
    the degree-d part of the generated ideal.  A one-dimensional solution
    space is required.
    """
    idx = monomial_index(nvars, d)
    ech = Echelon(len(idx), spec)
    for e, piece in pieces.items():
        if e > d or piece.dim == 0:
            continue
        if piece.nvars != nvars or piece.degree != e:
            raise ValueError(f"piece for degree {e} has the wrong shape")
        src = monomials(nvars, e)
        for mu in monomials(nvars, d - e):
            for row in piece.basis.rows:
                ech.add({idx[tuple(a + b for a, b in zip(src[j], mu))]: c for j, c in row.items()})
    sol = kernel_basis(ech.basis().matrix())
    if sol.dim != 1:
        raise NotGorenstein(f"annihilated subspace of R_{d} has dimension {sol.dim}, expected 1")
    f = DividedForm.from_vector(nvars, d, sol.rows[0], spec)
    return f.normalized()


def is_apolar(q: Form, f: DividedForm) -> bool:
    return contract(q, f).is_zero()


class ApolarIdeal:
    """Lazily computed graded pieces of ``f^perp``.

    Pieces are computed on first access; a lock makes concurrent readers
    trigger at most one computation per degree.
    """

    def __init__(self, f: DividedForm):
        if not f:
            raise ZeroForm("zero form")
        self.f = f
        self._pieces: dict = {}
        self._lock = threading.Lock()

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def socle_degree(self) -> int:
        return self.f.degree

    def piece(self, e: int) -> GradedPiece:
        got = self._pieces.get(e)
        if got is not None:
            return got
        with self._lock:
            got = self._pieces.get(e)
            if got is None:
                got = perp_piece(self.f, e)
                self._pieces[e] = got
        return got

    __getitem__ = piece

    def pieces(self, up_to: int) -> dict:
        return {e: self.piece(e) for e in range(up_to + 1)}

    def hilbert_function(self) -> HilbertFunction:
        return HilbertFunction(tuple(
            num_monomials(self.nvars, e) - self.piece(e).dim for e in range(self.socle_degree + 1)))

    def contains(self, q: Form) -> bool:
        return self.piece(q.degree).contains(q)

    def generators(self, up_to: int | None = None) -> list:
        """All canonical basis forms of the pieces up to ``up_to`` (default ``d+1``); not minimal."""
        if up_to is None:
            up_to = self.socle_degree + 1
        out = []
        for e in range(1, up_to + 1):
            out.extend(self.piece(e).forms())
        return out
