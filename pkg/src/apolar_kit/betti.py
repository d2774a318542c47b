"""Graded Betti numbers of homogeneous ideals, computed degree by degree.

``betti_table`` builds a minimal free resolution one homological step at a
time.  At step p the kernel of ``F_p -> F_{p-1}`` is computed in each internal
degree q as an exact linear kernel; the minimal generators in degree q are a
complement of ``T_1 . K_{q-1}`` inside ``K_q``, and their number is
``beta_{p+1,q}``.  Everything is exact for ``q <= q_max``.

``koszul_betti`` computes the same numbers as Koszul homology of the
quotient ``T/I`` and serves as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .exact import FieldSpec
from .linalg import Basis, Echelon, SparseMatrix, kernel_basis
from .ring import Form, GradedPiece, monomial_index, monomials, num_monomials


class TruncationTooDeep(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class NotASyzygy(ValueError):
    pass


MAX_P = 3
MAX_Q = 8


@dataclass
class BettiTable:
    """``beta[(p, q)]``: rank of the degree-q summand of the p-th free module.

    ``p = 0`` is the ring itself (``beta_{0,0} = 1``), ``p = 1`` the minimal
    generators of the ideal.  Entries with ``p <= p_max`` and ``q <= q_max``
    are exact; missing keys inside that window are zero.
    """

    beta: dict
    p_max: int
    q_max: int
    source: str = ""

    def __getitem__(self, key) -> int:
        p, q = key
        if p > self.p_max or q > self.q_max:
            raise KeyError(f"beta_{{{p},{q}}} lies outside the computed window")
        return self.beta.get((p, q), 0)

    def get(self, p: int, q: int, default=None):
        if p > self.p_max or q > self.q_max:
            return default
        return self.beta.get((p, q), 0)

    def row(self, p: int) -> dict:
        return {q: b for (pp, q), b in sorted(self.beta.items()) if pp == p and b}

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.beta.items()) if v}

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "p_max": self.p_max,
            "q_max": self.q_max,
            "entries": [{"p": p, "q": q, "beta": b} for (p, q), b in sorted(self.beta.items()) if b],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        beta = {(e["p"], e["q"]): e["beta"] for e in data["entries"]}
        return cls(beta, data["p_max"], data["q_max"], data.get("source", ""))

    def display(self) -> str:
        """Macaulay2-style table: columns are p, rows are q - p."""
        cols = range(self.p_max + 1)
        rows = sorted({q - p for (p, q), b in self.beta.items() if b} or {0})
        width = max([len(str(b)) for b in self.beta.values()] + [1]) + 1
        lines = ["       " + "".join(str(p).rjust(width) for p in cols)]
        totals = [sum(b for (pp, _), b in self.beta.items() if pp == p) for p in cols]
        lines.append("total: " + "".join(str(t).rjust(width) for t in totals))
        for r in rows:
            cells = []
            for p in cols:
                b = self.beta.get((p, p + r), 0)
                cells.append((str(b) if b else ".").rjust(width))
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)

    def hilbert_consistency(self, hilbert: Sequence[int], nvars: int) -> list:
        """Compare ``sum_p (-1)^p beta_{p,q}`` with the Hilbert series numerator.

        ``hilbert[e]`` is ``dim (T/I)_e`` for ``e <= q_max``.  Only degrees where
        every possibly nonzero ``beta_{p,q}`` was computed are reported.
        """
        out = []
        for q in range(self.q_max + 1):
            if min(q, nvars) > self.p_max:
                continue
            num = sum((-1) ** i * comb(nvars, i) * (hilbert[q - i] if q - i < len(hilbert) else 0)
                      for i in range(min(q, nvars) + 1))
            alt = sum((-1) ** p * self.beta.get((p, q), 0) for p in range(self.p_max + 1))
            out.append({"q": q, "alternating_sum": alt, "numerator": num, "passed": alt == num})
        return out


class _FreeModule:
    """Graded free module ``sum_j T(-degs[j])``; degree-q basis keys are ``(j, monomial)``."""

    def __init__(self, nvars: int, degs: Sequence[int]):
        self.nvars = nvars
        self.degs = list(degs)
        self._keys: dict = {}

    def keys(self, q: int) -> list:
        got = self._keys.get(q)
        if got is None:
            got = [(j, m) for j, d in enumerate(self.degs) if d <= q for m in monomials(self.nvars, q - d)]
            self._keys[q] = (got, {k: i for i, k in enumerate(got)})
            return got
        return got[0]

    def index(self, q: int) -> dict:
        self.keys(q)
        return self._keys[q][1]


def _shift(elem: dict, mu) -> dict:
    return {(j, tuple(a + b for a, b in zip(m, mu))): c for (j, m), c in elem.items()}


def _times_var(elem: dict, i: int) -> dict:
    out = {}
    for (j, m), c in elem.items():
        m = list(m)
        m[i] += 1
        out[(j, tuple(m))] = c
    return out


@dataclass
class SyzygyLayer:
    """Minimal generators of one step of the resolution.

    ``target_degrees`` are the generator degrees of the free module the
    elements live in (``[0]`` for the ideal itself); each element of
    ``generators`` is ``(degree, {(j, monomial): coeff})``.  ``previous`` is the
    layer whose generators index ``j``.
    """

    step: int
    target_degrees: list
    generators: list
    previous: "SyzygyLayer | None" = None
    spec: FieldSpec | None = None
    nvars: int = 0

    @property
    def degrees(self) -> list:
        return [d for d, _ in self.generators]

    def image(self, elem: dict) -> dict:
        """Apply the differential of this step's target module to ``elem``."""
        if self.previous is None:
            raise ValueError("the first layer maps into T; use polynomial()")
        spec = self.spec
        out: dict = {}
        imgs = self.previous.generators
        for (j, mu), c in elem.items():
            for key, v in _shift(imgs[j][1], mu).items():
                w = spec.add(out.get(key, spec.zero), spec.mul(c, v))
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def polynomial(self, elem: dict, degree: int) -> Form:
        """For the first layer: the element of T represented by ``elem``."""
        coeffs = {m: c for (_, m), c in elem.items()}
        return Form(self.nvars, degree, coeffs, self.spec)

    def verify(self) -> bool:
        """Every stored syzygy maps to exactly zero under the previous differential."""
        if self.previous is None:
            return True
        return all(not self.image(e) for _, e in self.generators)


def _kernel_in_degree(source: _FreeModule, target: _FreeModule, images: list, q: int, spec: FieldSpec) -> list:
    src_keys = source.keys(q)
    tgt_index = target.index(q)
    rows = [dict() for _ in range(len(tgt_index))]
    for col, (k, mu) in enumerate(src_keys):
        for key, c in _shift(images[k], mu).items():
            rows[tgt_index[key]][col] = c
    ker = kernel_basis(SparseMatrix(len(rows), len(src_keys), tuple(rows), spec))
    return [{src_keys[i]: c for i, c in r.items()} for r in ker.rows]


def _as_vector(elem: dict, index: dict) -> dict:
    return {index[k]: c for k, c in elem.items()}


def resolve(generators: Sequence[Form], p_max: int = 2, q_max: int | None = None, nvars: int | None = None,
            spec: FieldSpec | None = None, source: str = ""):
    """Betti table plus the explicit syzygy layers of the ideal generated by ``generators``."""
    gens = [g for g in generators if g]
    if nvars is None or spec is None:
        if not generators:
            raise ValueError("cannot infer the ring from an empty generator list")
        nvars = generators[0].nvars
        spec = generators[0].spec
    if p_max > MAX_P:
        raise TruncationTooDeep(f"p_max = {p_max} exceeds the supported depth {MAX_P}")
    if q_max is None:
        q_max = max((g.degree for g in gens), default=0) + 2
    if q_max > MAX_Q:
        raise TruncationTooDeep(f"q_max = {q_max} exceeds the supported degree {MAX_Q}")
    for g in gens:
        if g.nvars != nvars or g.spec != spec:
            raise ValueError("generators live in different rings")

    beta = {(0, 0): 1}
    layers = []
    f0 = _FreeModule(nvars, [0])

    # step 1: minimal generators of the ideal itself
    prev_basis = None
    mingens = []
    by_deg: dict = {}
    for g in gens:
        by_deg.setdefault(g.degree, []).append(g)
    for q in range(1, q_max + 1):
        idx = f0.index(q)
        ech = Echelon(len(idx), spec)
        if prev_basis is not None:
            for elem in prev_basis:
                for i in range(nvars):
                    ech.add(_as_vector(_times_var(elem, i), idx))
        count = 0
        for g in by_deg.get(q, ()):
            elem = {(0, m): c for m, c in g.coeffs.items()}
            if ech.add(_as_vector(elem, idx)):
                mingens.append((q, elem))
                count += 1
        beta[(1, q)] = count
        keys = f0.keys(q)
        prev_basis = [{keys[i]: c for i, c in r.items()} for r in ech.basis().rows]
    layer = SyzygyLayer(1, [0], mingens, None, spec, nvars)
    layers.append(layer)

    target = f0
    for p in range(1, p_max):
        if not layer.generators:
            break
        src_mod = _FreeModule(nvars, layer.degrees)
        images = [e for _, e in layer.generators]
        new = []
        prev_ker = None
        for q in range(min(layer.degrees), q_max + 1):
            ker = _kernel_in_degree(src_mod, target, images, q, spec)
            idx = src_mod.index(q)
            ech = Echelon(len(idx), spec)
            if prev_ker:
                for elem in prev_ker:
                    for i in range(nvars):
                        ech.add(_as_vector(_times_var(elem, i), idx))
            count = 0
            for elem in ker:
                if ech.add(_as_vector(elem, idx)):
                    new.append((q, elem))
                    count += 1
            beta[(p + 1, q)] = count
            prev_ker = ker
        layer = SyzygyLayer(p + 1, layer.degrees, new, layer, spec, nvars)
        layers.append(layer)
        target = src_mod

    table = BettiTable({k: v for k, v in beta.items() if k[1] <= q_max}, p_max, q_max, source)
    return table, layers


def betti_table(generators: Sequence[Form], p_max: int = 2, q_max: int | None = None, nvars: int | None = None,
                spec: FieldSpec | None = None, source: str = "") -> BettiTable:
    return resolve(generators, p_max, q_max, nvars, spec, source)[0]


def apolar_betti(f, p_max: int = 2, q_max: int | None = None) -> BettiTable:
    """Betti table of ``f^perp`` (generators taken from its minimal generator pieces)."""
    from .apolar import minimal_generators

    if q_max is None:
        q_max = f.degree + 1
    gens = []
    for g in minimal_generators(f, min(q_max, f.degree + 1)):
        gens.extend(g.forms())
    return betti_table(gens, p_max, q_max, f.nvars, f.spec, source=f"apolar ideal of {f}")


def koszul_betti(piece: Callable[[int], GradedPiece], nvars: int, spec: FieldSpec, p_max: int, q_max: int,
                 source: str = "") -> BettiTable:
    """Betti numbers of ``T/I`` as Koszul homology ``H_p(x; T/I)_q``.

    ``piece(e)`` must return ``I_e``.  The quotient ``A_e`` is represented by
    the standard monomials (non-pivot columns of ``I_e``'s RREF).
    """
    reds = {}
    std = {}
    for e in range(q_max + 2):
        b = piece(e).basis if e > 0 else Basis.zero(1, spec)
        pivs = set(b.pivots)
        reds[e] = b
        std[e] = [i for i in range(num_monomials(nvars, e)) if i not in pivs]
    std_index = {e: {c: i for i, c in enumerate(cols)} for e, cols in std.items()}

    def normal_form(e: int, vec: dict) -> dict:
        b = reds[e]
        res = dict(vec)
        for piv, row in zip(b.pivots, b.rows):
            c = res.get(piv)
            if not c:
                continue
            for k, a in row.items():
                w = spec.sub(res.get(k, spec.zero), spec.mul(c, a))
                if w:
                    res[k] = w
                else:
                    res.pop(k, None)
        return {std_index[e][k]: c for k, c in res.items()}

    def subsets(p):
        return list(combinations(range(nvars), p))

    def diff_rank(p: int, j: int) -> int:
        """Rank of d: wedge^p (x) A_j -> wedge^{p-1} (x) A_{j+1}."""
        if p <= 0 or p > nvars or j < 0 or not std.get(j):
            return 0
        src_mons = monomials(nvars, j)
        tgt_idx = monomial_index(nvars, j + 1)
        lower = {s: i for i, s in enumerate(subsets(p - 1))}
        width = len(std[j + 1])
        ech = Echelon(len(lower) * max(width, 1), spec)
        for S in subsets(p):
            for col in std[j]:
                m = src_mons[col]
                out: dict = {}
                for t, s in enumerate(S):
                    mm = list(m)
                    mm[s] += 1
                    nf = normal_form(j + 1, {tgt_idx[tuple(mm)]: spec.one})
                    base = lower[S[:t] + S[t + 1:]] * width
                    sign = spec.one if t % 2 == 0 else spec.neg(spec.one)
                    for k, c in nf.items():
                        w = spec.add(out.get(base + k, spec.zero), spec.mul(sign, c))
                        if w:
                            out[base + k] = w
                        else:
                            out.pop(base + k, None)
                ech.add(out)
        return ech.rank

    beta = {}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            j = q - p
            if j < 0 or j > q_max:
                continue
            dim = comb(nvars, p) * len(std[j])
            b = dim - diff_rank(p, j) - diff_rank(p + 1, j - 1)
            if b:
                beta[(p, q)] = b
    return BettiTable(beta, p_max, q_max, source)


def gamma(g: int, i: int) -> int:
    """``i (g-3-i) / (g-2) * C(g-1, i+1)``, the Betti numbers of g-1 points in general position."""
    if g < 5 or not 1 <= i <= g - 3:
        raise OutOfRange(f"gamma({g}, {i}) needs g >= 5 and 1 <= i <= g-3")
    num = i * (g - 3 - i) * comb(g - 1, i + 1)
    if num % (g - 2):
        raise ArithmeticError(f"gamma({g}, {i}) is not an integer")
    return num // (g - 2)


def betti_difference(g: int, p: int) -> int:
    """``p C(g-2, p+1) - (g-1-p) C(g-2, g-p)``."""
    return p * comb(g - 2, p + 1) - (g - 1 - p) * comb(g - 2, g - p)


def betti_difference_check(table: BettiTable, g: int) -> list:
    """Measured ``beta_{p,p+1} - beta_{p-1,p+1}`` against the closed form, per computable p."""
    out = []
    for p in range(1, table.p_max + 1):
        if p + 1 > table.q_max:
            break
        measured = table[p, p + 1] - table[p - 1, p + 1]
        expected = betti_difference(g, p)
        out.append({"p": p, "measured": measured, "expected": expected, "passed": measured == expected})
    return out


def koszul_syzygy_certificate(point_ideal_gens: Sequence[Form], q_f: Form) -> list:
    """The syzygies ``(0,..,0,-q_f,0,..,0,q_i)`` of ``(q_1, .., q_r, q_f)``.

    Each vector has ``-q_f`` in slot i and ``q_i`` in the last slot; each is
    checked to annihilate the generator tuple.
    """
    gens = list(point_ideal_gens) + [q_f]
    r = len(point_ideal_gens)
    out = []
    for i, qi in enumerate(point_ideal_gens):
        vec = [None] * (r + 1)
        vec[i] = -q_f
        vec[r] = qi
        total = apply_syzygy(vec, gens)
        if total is None or total:
            raise NotASyzygy(f"certificate {i} does not annihilate the generators")
        out.append(vec)
    return out


def apply_syzygy(vec: Sequence, gens: Sequence[Form]):
    """``sum vec_i * gens_i`` with ``None`` entries read as zero."""
    total = None
    for c, g in zip(vec, gens):
        if c is None:
            continue
        t = c * g
        total = t if total is None else total + t
    return total
