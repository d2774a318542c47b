"""Finite point sets, their ideals, and Waring decompositions.

A point of the dual projective space is stored as a :class:`LinearForm`
``l = sum a_i y_i``; its coordinates ``a`` are where elements of T are
evaluated.  The degree-e piece of the (saturated) ideal of a point set is the
kernel of the evaluation matrix, so no saturation step is needed.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .apolar import perp_piece
from .exact import FieldSpec
from .linalg import SparseMatrix, kernel_basis, rank
from .ring import DividedForm, Form, GradedPiece, LinearForm, divided_power, monomials


class NotRepresentable(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NoneFound(LookupError):
    pass


def _proportional(a: LinearForm, b: LinearForm) -> bool:
    spec = a.spec
    n = len(a.coeffs)
    for i in range(n):
        for j in range(i + 1, n):
            if spec.sub(spec.mul(a.coeffs[i], b.coeffs[j]), spec.mul(a.coeffs[j], b.coeffs[i])):
                return False
    return True


@dataclass(frozen=True)
class PointSet:
    """Pairwise non-proportional nonzero points of the dual projective space."""

    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            return
        nv = pts[0].nvars
        spec = pts[0].spec
        for p in pts:
            if p.nvars != nv or p.spec != spec:
                raise ValueError("points live in different spaces")
            if p.is_zero():
                raise ValueError("the zero vector is not a projective point")
        for a, b in itertools.combinations(pts, 2):
            if _proportional(a, b):
                raise ValueError(f"points {a.coeffs} and {b.coeffs} are proportional")

    @classmethod
    def from_coordinates(cls, coords: Iterable[Sequence], spec: FieldSpec) -> "PointSet":
        return cls(tuple(LinearForm(tuple(c), spec) for c in coords))

    @property
    def nvars(self) -> int:
        return self.points[0].nvars

    @property
    def spec(self) -> FieldSpec:
        return self.points[0].spec

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def read_points(text: str, spec: FieldSpec) -> PointSet:
    """One point per line, comma-separated coordinates, ``#`` starts a comment."""
    coords = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        coords.append([spec.coerce(c.strip()) for c in line.split(",")])
    if not coords:
        raise ValueError("no points given")
    if len({len(c) for c in coords}) != 1:
        raise ValueError("points have different numbers of coordinates")
    return PointSet.from_coordinates(coords, spec)


def evaluation_matrix(points: PointSet, e: int) -> SparseMatrix:
    """Rows are points, columns are degree-e monomials, entries are monomial values."""
    spec = points.spec
    mons = monomials(points.nvars, e)
    rows = []
    for pt in points:
        row = {}
        for j, m in enumerate(mons):
            v = spec.one
            for a, k in zip(pt.coeffs, m):
                if k:
                    v = spec.mul(v, spec.power(a, k))
                    if not v:
                        break
            if v:
                row[j] = v
        rows.append(row)
    return SparseMatrix(len(rows), len(mons), tuple(rows), spec)


def point_ideal_piece(points: PointSet, e: int) -> GradedPiece:
    """Degree-e piece of the ideal of ``points`` inside T."""
    return GradedPiece(points.nvars, e, kernel_basis(evaluation_matrix(points, e)))


def ideal_piece(generators: Sequence[Form], e: int, nvars: int | None = None, spec: FieldSpec | None = None) -> GradedPiece:
    """Degree-e piece of the ideal generated by ``generators``: span of ``x^m g``."""
    from .ring import ideal_piece_from_generators

    if nvars is None:
        nvars = generators[0].nvars
        spec = generators[0].spec
    return ideal_piece_from_generators(generators, e, nvars, spec)


def check_apolarity_lemma(points: PointSet, f: DividedForm) -> bool:
    """True when ``I_points`` is contained in ``f^perp``.

    Checking degrees ``1..deg f`` is enough: ``f^perp`` contains all of T_e
    for ``e > deg f``, and ``I_0 = 0``.
    """
    if points.nvars != f.nvars:
        raise ValueError("point set and form have different numbers of variables")
    for e in range(1, f.degree + 1):
        if not perp_piece(f, e).contains_piece(point_ideal_piece(points, e)):
            return False
    return True


def span_dim(ls: Sequence[LinearForm]) -> int:
    if not ls:
        return 0
    spec = ls[0].spec
    return rank(SparseMatrix.from_dense([l.coeffs for l in ls], spec))


def waring_coefficients(f: DividedForm, ls: Sequence[LinearForm]) -> list:
    """Raw ``lambda`` with ``f = sum lambda_i l_i^[d]``; entries may be zero.

    Solved through the kernel of the augmented matrix ``[l_1^[d] ... l_n^[d] | f]``:
    the first canonical kernel row touching the last column, rescaled so that
    entry is -1.  Raises :class:`NotRepresentable` when no such row exists.
    """
    if not ls:
        raise ValueError("need at least one linear form")
    spec = f.spec
    d = f.degree
    n = len(ls)
    width = len(monomials(f.nvars, d))
    rows = [dict() for _ in range(width)]
    for j, l in enumerate(ls):
        for i, c in divided_power(l, d).vector().items():
            rows[i][j] = c
    for i, c in f.vector().items():
        rows[i][n] = c
    ker = kernel_basis(SparseMatrix(width, n + 1, tuple(rows), spec))
    for r in ker.rows:
        if n in r:
            scale = spec.neg(spec.inv(r[n]))
            return [spec.mul(scale, r.get(j, spec.zero)) for j in range(n)]
    raise NotRepresentable("f is not a combination of the given divided powers")


@dataclass(frozen=True)
class WaringDecomposition:
    """``target = sum lambda_i l_i^[d]`` with every ``lambda_i`` nonzero (checked on construction)."""

    terms: tuple
    target: DividedForm

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.verify():
            raise ValueError("decomposition does not sum to its target")

    @property
    def degree(self) -> int:
        return self.target.degree

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def span_dim(self) -> int:
        return span_dim([l for _, l in self.terms])

    def verify(self) -> bool:
        spec = self.target.spec
        total = DividedForm.zero(self.target.nvars, self.target.degree, spec)
        for lam, l in self.terms:
            if not spec.coerce(lam):
                return False
            total = total + divided_power(l, self.target.degree).scale(lam)
        return total == self.target

    def to_json(self) -> dict:
        from .parser import format_form

        return {
            "target": format_form(self.target),
            "terms": [{"lambda": str(lam), "point": [str(a) for a in l.coeffs]} for lam, l in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict, spec: FieldSpec, nvars: int | None = None) -> "WaringDecomposition":
        from .parser import parse_form

        terms = tuple((spec.coerce(t["lambda"]), LinearForm(tuple(spec.coerce(a) for a in t["point"]), spec))
                      for t in data["terms"])
        if nvars is None and terms:
            nvars = terms[0][1].nvars
        target = parse_form(data["target"], spec, nvars=nvars, kind="y")
        return cls(terms, target)


def projective_points(nvars: int, spec: FieldSpec) -> list:
    """All points of P^{nvars-1}(F_p), first nonzero coordinate 1, lexicographic order."""
    if spec.p == 0:
        raise ValueError("projective point enumeration needs a finite field")
    p = spec.p
    out = []
    for lead in range(nvars):
        for tail in itertools.product(range(p), repeat=nvars - lead - 1):
            out.append(LinearForm(tuple([0] * lead + [1] + list(tail)), spec))
    return out


def _search_subsets(args):
    """Worker: first t-subset (lex order) whose first index lies in ``firsts`` and spans f."""
    target, powers, t, firsts, p = args
    n = len(powers)
    for first in firsts:
        for rest in itertools.combinations(range(first + 1, n), t - 1):
            idx = (first,) + rest
            lam = _solve_mod_p([powers[i] for i in idx], target, p)
            if lam is not None and all(lam):
                return idx, lam
    return None


def _solve_mod_p(cols: list, target: list, p: int):
    """Solve ``sum lam_i cols_i = target`` over F_p on dense integer vectors; None if unsolvable."""
    m = len(target)
    t = len(cols)
    rows = [[cols[j][i] for j in range(t)] + [target[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(t):
        pr = None
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [(a - k * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][t]:
            return None
    lam = [0] * t
    for i, c in enumerate(piv_cols):
        lam[c] = rows[i][t]
    return lam


def waring_rank_bruteforce(f: DividedForm, t_max: int, budget: int = 2_000_000, workers: int = 1):
    """Smallest t <= t_max with ``f = sum_{i<t} lambda_i l_i^[d]``, all ``lambda_i != 0``, over F_p.

    Enumerates t-subsets of the projective points (lexicographic) and returns
    ``(t, WaringDecomposition)`` for the first hit.  The answer concerns F_p
    only; nothing is claimed about the algebraic closure.
    """
    spec = f.spec
    if spec.p == 0:
        raise ValueError("brute force search runs over a prime field")
    if not f:
        raise ValueError("the zero form has Waring rank 0")
    pts = projective_points(f.nvars, spec)
    npts = len(pts)
    need = sum(comb(npts, t) for t in range(1, t_max + 1))
    if need > budget:
        raise BudgetExceeded(f"{need} subsets to scan exceeds the budget {budget}")
    d = f.degree
    powers = [divided_power(l, d).dense() for l in pts]
    target = f.dense()
    for t in range(1, t_max + 1):
        if workers > 1 and npts > 1:
            chunks = [list(range(w, npts, workers)) for w in range(workers)]
            with ProcessPoolExecutor(workers) as ex:
                found = [r for r in ex.map(_search_subsets,
                                           [(target, powers, t, c, spec.p) for c in chunks]) if r]
            hit = min(found) if found else None
        else:
            hit = _search_subsets((target, powers, t, range(npts), spec.p))
        if hit:
            idx, lam = hit
            terms = tuple((lam[k], pts[i]) for k, i in enumerate(idx))
            return t, WaringDecomposition(terms, f)
    raise NoneFound(f"no decomposition with at most {t_max} terms over {spec}")
