"""Explicit forms, point sets and identities in genus-indexed families.

Throughout, ``g`` is the genus parameter and ``m = g - 2`` the number of
variables: forms live in R = k[y_0..y_{g-3}] (divided powers) and annihilators
in T = k[x_0..x_{g-3}].  Two families matter:

* the Fermat cubic ``sum y_i^[3]``, whose apolar ideal has cubic generators;
* the almost-minimal form ``sum lambda_i^{-1} y_i^[3] + (sum y_i)^[3]``,
  whose apolar ideal is the ideal of the standard frame plus one quadric.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .apolar import HilbertFunction, ZeroForm, hilbert_function, is_apolar, perp_piece
from .betti import BettiTable, OutOfRange, apolar_betti, gamma
from .exact import FieldSpec
from .ring import DividedForm, Form, GradedPiece, LinearForm, divided_power, ideal_piece_from_generators, x
from .points import (
    BudgetExceeded,
    NoneFound,
    PointSet,
    WaringDecomposition,
    point_ideal_piece,
    waring_rank_bruteforce,
)


class ZeroLambda(ValueError):
    pass


def _check_g(g: int, least: int, what: str):
    if not isinstance(g, int) or g < least:
        raise OutOfRange(f"{what} needs g >= {least}, got {g}")


def _lambdas(g: int, lam: Sequence, spec: FieldSpec) -> list:
    m = g - 2
    if len(lam) != m:
        raise ValueError(f"expected {m} lambda values for g={g}, got {len(lam)}")
    out = [spec.coerce(v) for v in lam]
    for i, v in enumerate(out):
        if not v:
            raise ZeroLambda(f"lambda_{i} vanishes; every lambda_i must be nonzero")
    return out


def fermat(g: int, spec: FieldSpec) -> DividedForm:
    """``y_0^[3] + ... + y_{g-3}^[3]`` in g-2 variables."""
    _check_g(g, 3, "fermat")
    m = g - 2
    coeffs = {tuple(3 if j == i else 0 for j in range(m)): spec.one for i in range(m)}
    return DividedForm(m, 3, coeffs, spec)


def fermat_perp_generators(g: int, spec: FieldSpec) -> list:
    """The quadrics ``x_i x_j`` (i<j) followed by the cubics ``x_i^3 - x_{g-3}^3``."""
    _check_g(g, 4, "fermat_perp_generators")
    m = g - 2
    xs = [x(i, m, spec) for i in range(m)]
    quads = [xs[i] * xs[j] for i in range(m) for j in range(i + 1, m)]
    last = xs[m - 1] * xs[m - 1] * xs[m - 1]
    cubics = [xs[i] * xs[i] * xs[i] - last for i in range(m - 1)]
    return quads + cubics


def almost_minimal_form(g: int, lam: Sequence, spec: FieldSpec) -> DividedForm:
    """``sum lambda_i^{-1} y_i^[3] + (y_0 + ... + y_{g-3})^[3]``."""
    _check_g(g, 5, "almost_minimal_form")
    lam = _lambdas(g, lam, spec)
    m = g - 2
    coeffs = {tuple(3 if j == i else 0 for j in range(m)): spec.inv(lam[i]) for i in range(m)}
    f = DividedForm(m, 3, coeffs, spec)
    return f + divided_power(LinearForm(tuple([1] * m), spec), 3)


def frame_points(g: int, spec: FieldSpec, include_unit: bool = True) -> PointSet:
    """Coordinate points of the (g-3)-dimensional dual space, optionally with the all-ones point."""
    _check_g(g, 4, "frame_points")
    m = g - 2
    coords = [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    if include_unit:
        coords.append([1] * m)
    return PointSet.from_coordinates(coords, spec)


def q_prime(g: int, lam: Sequence, spec: FieldSpec) -> Form:
    """The extra quadric ``x_{g-4}x_{g-3} - sum lambda_i (x_i^2 - x_{g-4}x_{g-3})``.

    It annihilates :func:`almost_minimal_form` and takes the value
    ``-lambda_0`` at the first coordinate point, so it is not in the frame ideal.
    """
    _check_g(g, 5, "q_prime")
    lam = _lambdas(g, lam, spec)
    m = g - 2
    xs = [x(i, m, spec) for i in range(m)]
    mixed = xs[m - 2] * xs[m - 1]
    q = mixed
    for i in range(m):
        q = q - (xs[i] * xs[i] - mixed).scale(lam[i])
    return q


def frame_ideal_generators(g: int, spec: FieldSpec) -> list:
    """Quadrics spanning the degree-2 frame ideal: ``x_h x_i - x_h x_j`` for distinct h, i, j.

    With h restricted to ``h < i < j`` the span falls short, so all
    ordered triples of distinct indices are used and the list is pruned to a
    basis in canonical order.
    """
    _check_g(g, 5, "frame_ideal_generators")
    m = g - 2
    xs = [x(i, m, spec) for i in range(m)]
    cand = []
    for h in range(m):
        for i in range(m):
            for j in range(i + 1, m):
                if h not in (i, j):
                    cand.append(xs[h] * xs[i] - xs[h] * xs[j])
    return GradedPiece.span(cand, m, 2, spec).forms()


# -- the matrix of cubic syzygies ------------------------------------------------------


def _x_tuple(i: int, m: int, spec: FieldSpec) -> list:
    """``X_i``: the variables from ``x_{m-1}`` down to ``x_0`` with ``x_i`` left out.

    The last index ``i = m-2`` also drops ``x_{m-1}``.
    """
    top = m - 1 if i < m - 2 else m - 2
    return [x(k, m, spec) for k in range(top, -1, -1) if k != i]


def cubic_syzygy_matrix(g: int, spec: FieldSpec | None = None) -> list:
    """The ``(g-4)(g-2) x (g-3)`` matrix of linear forms relating the cubics ``x_q^3 - x_{g-3}^3``.

    Entry ``[p-1][q-1]`` follows the three index families:

    * ``(-1)^{q+j} (X_{q-1})_j`` for ``p = (q-1)(g-3) + j``, ``q <= g-4``, ``j <= g-3``;
    * ``(-1)^{g-3+j} (X_{g-4})_j`` for ``p = (g-4)(g-3) + j``, ``q = g-3``, ``j <= g-4``;
    * ``(-1)^{i+1} x_{g-3}`` for ``p = i(g-3) + 1``, ``q = g-3``, ``0 <= i <= g-5``;

    and zero elsewhere.
    """
    _check_g(g, 6, "cubic_syzygy_matrix")
    spec = spec or FieldSpec(0)
    m = g - 2
    n = g - 3
    rows = (g - 4) * (g - 2)
    zero = Form.zero(m, 1, spec)
    mat = [[zero] * n for _ in range(rows)]

    def put(p, q, form, sign):
        mat[p - 1][q - 1] = form if sign > 0 else -form

    for q in range(1, g - 3):
        xs = _x_tuple(q - 1, m, spec)
        for j in range(1, n + 1):
            put((q - 1) * n + j, q, xs[j - 1], (-1) ** (q + j))
    xs = _x_tuple(g - 4, m, spec)
    for j in range(1, g - 3):
        put((g - 4) * n + j, n, xs[j - 1], (-1) ** (n + j))
    last = x(m - 1, m, spec)
    for i in range(0, g - 4):
        put(i * n + 1, n, last, (-1) ** (i + 1))
    return mat


def _reduce_mod_products(f: Form) -> Form:
    """Drop every monomial divisible by some ``x_i x_j`` with i != j."""
    keep = {mono: c for mono, c in f.coeffs.items() if sum(1 for k in mono if k) <= 1}
    return Form(f.nvars, f.degree, keep, f.spec)


@dataclass(frozen=True)
class SyzygyRowCheck:
    row: int
    passed: bool
    residual: str
    exact_in_T: bool


@dataclass(frozen=True)
class CubicSyzygyReport:
    g: int
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def count(self) -> int:
        return len(self.rows)

    def failures(self) -> list:
        return [r.row for r in self.rows if not r.passed]


def verify_cubic_syzygies(g: int, matrix: list | None = None, spec: FieldSpec | None = None) -> CubicSyzygyReport:
    """Check every row of the matrix against the cubics ``c_q = x_{q-1}^3 - x_{g-3}^3``.

    The combination ``sum_q M[p][q] c_q`` is reduced modulo the monomial ideal
    ``(x_i x_j : i < j)`` of the coordinate points, where the relations hold;
    ``exact_in_T`` additionally records whether it vanishes before reduction.
    """
    _check_g(g, 6, "verify_cubic_syzygies")
    spec = spec or FieldSpec(0)
    m = g - 2
    if matrix is None:
        matrix = cubic_syzygy_matrix(g, spec)
    xs = [x(i, m, spec) for i in range(m)]
    cube = lambda v: v * v * v  # noqa: E731
    cubics = [cube(xs[q]) - cube(xs[m - 1]) for q in range(g - 3)]
    out = []
    for p, row in enumerate(matrix, start=1):
        total = Form.zero(m, 4, spec)
        for entry, c in zip(row, cubics):
            if entry:
                total = total + entry * c
        red = _reduce_mod_products(total)
        out.append(SyzygyRowCheck(p, red.is_zero(), str(red), total.is_zero()))
    return CubicSyzygyReport(g, tuple(out))


# -- identities around the almost-minimal form -----------------------------------------


def frame_ideal_piece(g: int, e: int, spec: FieldSpec) -> GradedPiece:
    return point_ideal_piece(frame_points(g, spec, include_unit=True), e)


def quadric_lift_check(g: int, lam: Sequence, spec: FieldSpec) -> dict:
    """Membership facts for ``q'``: in ``f^perp``, nonzero at ``E_0``, and completes ``I_{Gamma,2}``."""
    f = almost_minimal_form(g, lam, spec)
    q = q_prime(g, lam, spec)
    m = g - 2
    e0 = [1] + [0] * (m - 1)
    ig = frame_ideal_piece(g, 2, spec)
    fp = perp_piece(f, 2)
    filled = ig + GradedPiece.span([q], m, 2, spec)
    return {
        "q_in_perp": is_apolar(q, f),
        "q_at_E0": q.evaluate(e0),
        "q_not_in_frame_ideal": bool(q.evaluate(e0)),
        "frame_ideal_codim_in_perp": fp.dim - ig.dim,
        "frame_ideal_in_perp": fp.contains_piece(ig),
        "sum_equals_perp": filled == fp,
    }


def product_intersection_check(g: int, lam: Sequence, spec: FieldSpec, max_degree: int = 6) -> list:
    """Per degree e: ``(I_Gamma ∩ (q')) _e == (I_Gamma . q')_e`` and the Hilbert function relation.

    The second check is ``dim (T/f^perp)_e = dim T(Gamma)_e - dim T(Gamma)_{e-2}``.
    """
    f = almost_minimal_form(g, lam, spec)
    q = q_prime(g, lam, spec)
    m = g - 2
    hf = hilbert_function(f)
    out = []
    for e in range(0, max_degree + 1):
        ig = frame_ideal_piece(g, e, spec)
        if e >= 2:
            principal = GradedPiece.full(m, e - 2, spec).times_form(q)
            product = frame_ideal_piece(g, e - 2, spec).times_form(q)
            inter = ig.intersection(principal)
            same = inter == product
            coord_prev = frame_ideal_piece(g, e - 2, spec).codim
        else:
            same = True
            coord_prev = 0
        out.append({
            "degree": e,
            "intersection_equals_product": same,
            "hilbert_lhs": hf[e],
            "hilbert_rhs": ig.codim - coord_prev,
        })
    return out


def dropped_variable_check(f: DividedForm) -> dict:
    """For ``f = f_0(y_0..y_{m-2}) + c y_{m-1}^[3]``: perp quadrics vanish at ``(0,..,0,1)``?

    Also reports whether ``f^perp`` has a minimal cubic generator.
    """
    m = f.nvars
    pt = [0] * (m - 1) + [1]
    quads = perp_piece(f, 2).forms()
    vanish = all(not q.evaluate(pt) for q in quads)
    beta = apolar_betti(f, p_max=1, q_max=f.degree + 1)
    cubic_or_higher = sum(beta.get(1, q, 0) for q in range(3, f.degree + 2))
    return {"quadrics_vanish": vanish, "beta_1_ge3": cubic_or_higher}


# -- instances and classification -------------------------------------------------------


@dataclass(frozen=True)
class StandardInstance:
    """A Fermat or almost-minimal form for a given g (and lambda)."""

    g: int
    kind: str
    spec: FieldSpec
    lam: tuple = ()

    def __post_init__(self):
        if self.kind not in ("Fermat", "AlmostMinimal"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "Fermat":
            _check_g(self.g, 3, "Fermat instance")
        else:
            _check_g(self.g, 5, "AlmostMinimal instance")
            object.__setattr__(self, "lam", tuple(_lambdas(self.g, self.lam, self.spec)))

    @property
    def m(self) -> int:
        return self.g - 2

    def form(self) -> DividedForm:
        if self.kind == "Fermat":
            return fermat(self.g, self.spec)
        return almost_minimal_form(self.g, self.lam, self.spec)


VERDICTS = ("FermatType_ap_g_minus_2", "AlmostMinimal_ap_g_minus_1_candidate", "Degenerate", "Other")


@dataclass
class ClassificationReport:
    hilbert: HilbertFunction
    beta_1: dict
    beta_2: dict
    verdict: str
    evidence: list = field(default_factory=list)
    certificate: WaringDecomposition | None = None

    def to_json(self) -> dict:
        out = {
            "hilbert": self.hilbert.as_list(),
            "beta_1": {str(k): v for k, v in sorted(self.beta_1.items())},
            "beta_2": {str(k): v for k, v in sorted(self.beta_2.items())},
            "verdict": self.verdict,
            "evidence": list(self.evidence),
        }
        out["certificate"] = self.certificate.to_json() if self.certificate else None
        return out


def expected_beta_24(g: int) -> int:
    """``beta_{2,4}`` of ``f^perp`` for a general almost-minimal form.

    For g >= 6 this is ``gamma_1 = C(g-2,2) - 1``.  At g = 5 the apolar ideal is
    a complete intersection of three quadrics, which has three quartic syzygies.
    """
    return 3 if g == 5 else gamma(g, 1)


def classify_form(f: DividedForm, budget: int = 200_000) -> ClassificationReport:
    """Algebraic type of a cubic from its Hilbert function and low Betti numbers."""
    if not f:
        raise ZeroForm("cannot classify the zero form")
    if f.degree != 3:
        raise ValueError("classification applies to cubics")
    m = f.nvars
    g = m + 2
    hf = hilbert_function(f)
    evidence = [f"hilbert function {hf.as_list()}"]
    lin = perp_piece(f, 1).dim
    if lin or hf.as_list() != [1, m, m, 1]:
        if lin:
            evidence.append(f"{lin} linear form(s) annihilate f, so fewer variables suffice")
        else:
            evidence.append(f"hilbert function differs from (1,{m},{m},1)")
        return ClassificationReport(hf, {}, {}, "Degenerate", evidence)
    table = apolar_betti(f, p_max=2, q_max=4)
    b1 = {q: table.get(1, q, 0) for q in range(1, 5)}
    b2 = {q: table.get(2, q, 0) for q in range(2, 5)}
    evidence.append(f"beta_1 by degree {b1}, beta_2 by degree {b2}")
    if b1[3] > 0:
        evidence.append(f"beta_1,3 = {b1[3]} > 0: cubic minimal generator, Fermat type "
                        f"(apolarity g-2; trigonal or plane quintic curve)")
        return ClassificationReport(hf, b1, b2, "FermatType_ap_g_minus_2", evidence)
    if b1[2] == comb(m, 2) and b2[4] == expected_beta_24(g):
        evidence.append(f"beta_1,3 = 0, beta_1,2 = {b1[2]}, beta_2,4 = {b2[4]}: almost-minimal pattern "
                        f"(apolarity g-1 candidate)")
        report = ClassificationReport(hf, b1, b2, "AlmostMinimal_ap_g_minus_1_candidate", evidence)
        if f.spec.p:
            try:
                t, dec = waring_rank_bruteforce(f, g - 1, budget=budget)
                report.certificate = dec
                evidence.append(f"decomposition with {t} terms found over {f.spec.name}")
            except BudgetExceeded as exc:
                evidence.append(f"point search skipped: {exc}")
            except NoneFound:
                evidence.append(f"no decomposition with at most {g - 1} terms over {f.spec.name}")
        return report
    evidence.append("Betti numbers match neither pattern")
    return ClassificationReport(hf, b1, b2, "Other", evidence)


def apolar_table(inst: StandardInstance, p_max: int = 2) -> BettiTable:
    return apolar_betti(inst.form(), p_max=p_max, q_max=4)


def coordinate_point_generators(g: int, spec: FieldSpec) -> list:
    """``x_i x_j`` for i < j: the ideal of the coordinate points."""
    _check_g(g, 4, "coordinate_point_generators")
    m = g - 2
    xs = [x(i, m, spec) for i in range(m)]
    return [xs[i] * xs[j] for i in range(m) for j in range(i + 1, m)]


def ideal_pieces_match(gens: Sequence[Form], f: DividedForm, degrees: Sequence[int]) -> dict:
    """Degree by degree: does the ideal generated by ``gens`` equal ``f^perp`` exactly?"""
    m = f.nvars
    return {e: ideal_piece_from_generators(gens, e, m, f.spec) == perp_piece(f, e) for e in degrees}
