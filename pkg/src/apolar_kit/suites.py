"""Seeded check suites over the standard families.

Each suite returns a plain dict (JSON-ready, deterministic for a given seed)
with a list of individual checks, each carrying a short anchor naming the
identity it tests.  The CLI ``verify`` verb and the acceptance tests both run
these.
"""

from __future__ import annotations

import random
from math import comb

from .apolar import dual_socle_generator, hilbert_function, perp_piece
from .betti import apolar_betti, betti_difference, betti_difference_check, betti_table, gamma, koszul_betti
from .constructs import (
    almost_minimal_form,
    coordinate_point_generators,
    dropped_variable_check,
    fermat,
    fermat_perp_generators,
    ideal_pieces_match,
    product_intersection_check,
    quadric_lift_check,
    verify_cubic_syzygies,
)
from .exact import FieldSpec
from .points import (
    NoneFound,
    PointSet,
    check_apolarity_lemma,
    point_ideal_piece,
    span_dim,
    waring_coefficients,
    waring_rank_bruteforce,
)
from .ring import DividedForm, LinearForm, divided_power, monomials


def check(name: str, anchor: str, expected, observed, passed: bool | None = None) -> dict:
    if passed is None:
        passed = expected == observed
    return {"name": name, "anchor": anchor, "expected": expected, "observed": observed, "passed": bool(passed)}


def _result(suite: str, seed: int, checks: list, **extra) -> dict:
    out = {"suite": suite, "seed": seed, "passed": all(c["passed"] for c in checks), "checks": checks}
    out.update(extra)
    return out


def random_nonzero(spec: FieldSpec, rng: random.Random, hi: int = 10 ** 6):
    if spec.p:
        return rng.randrange(1, spec.p)
    return spec.coerce(rng.randint(1, hi))


def random_element(spec: FieldSpec, rng: random.Random, bound: int = 20):
    if spec.p:
        return rng.randrange(spec.p)
    return spec.coerce(rng.randint(-bound, bound))


def generic_lambda(g: int, spec: FieldSpec, rng: random.Random, draws: list) -> list:
    """Nonzero lambda for which the almost-minimal form is nondegenerate.

    A draw whose Hilbert function is not ``(1,m,m,1)`` is resampled once;
    every draw is appended to ``draws`` for the log.
    """
    m = g - 2
    for attempt in range(2):
        lam = [random_nonzero(spec, rng) for _ in range(m)]
        draws.append({"g": g, "field": spec.name, "lambda": [str(v) for v in lam], "attempt": attempt})
        if hilbert_function(almost_minimal_form(g, lam, spec)).as_list() == [1, m, m, 1]:
            return lam
    return lam


def random_cubic(nvars: int, spec: FieldSpec, rng: random.Random, density: float = 0.6) -> DividedForm:
    while True:
        coeffs = {}
        for mono in monomials(nvars, 3):
            if rng.random() < density:
                c = random_element(spec, rng)
                if c:
                    coeffs[mono] = c
        f = DividedForm(nvars, 3, coeffs, spec)
        if f:
            return f


# -- suites -------------------------------------------------------------------------------


def fermat_perp_suite(seed: int = 0, genera=range(4, 11), fields=("q", "f2", "f3", "f5")) -> dict:
    checks = []
    for name in fields:
        spec = FieldSpec.parse(name)
        for g in genera:
            got = ideal_pieces_match(fermat_perp_generators(g, spec), fermat(g, spec), (2, 3, 4))
            checks.append(check(f"g={g} {name} degrees 2,3,4", "Fermat apolar ideal generators",
                                True, all(got.values())))
    return _result("fermat-perp", seed, checks)


def hilbert_suite(seed: int = 0, genera=range(5, 11), draws: int = 20, fields=("q", "f101")) -> dict:
    rng = random.Random(seed)
    checks, log = [], []
    for name in fields:
        spec = FieldSpec.parse(name)
        for g in genera:
            m = g - 2
            bad = 0
            for _ in range(draws):
                lam = generic_lambda(g, spec, rng, log)
                if hilbert_function(almost_minimal_form(g, lam, spec)).as_list() != [1, m, m, 1]:
                    bad += 1
            checks.append(check(f"g={g} {name} {draws} draws", "Hilbert function (1,g-2,g-2,1)", 0, bad))
    return _result("hilbert", seed, checks, draws=log)


def measured_tables(seed: int = 0, genera=range(5, 9)) -> tuple:
    rng = random.Random(seed)
    spec = FieldSpec(0)
    log, tables = [], {}
    for g in genera:
        lam = generic_lambda(g, spec, rng, log)
        tables[g] = apolar_betti(almost_minimal_form(g, lam, spec), p_max=2, q_max=4)
    return tables, log


def betti_pattern_suite(seed: int = 0, genera=range(5, 9), oracle: bool = False) -> dict:
    tables, log = measured_tables(seed, genera)
    checks = []
    for g, t in tables.items():
        m = g - 2
        anchor = "almost-minimal Betti pattern"
        checks.append(check(f"g={g} beta_1,2", anchor + ": beta_1,2 = C(g-2,2)", comb(m, 2), t.get(1, 2, 0)))
        checks.append(check(f"g={g} beta_1,3", anchor + ": beta_1,3 = 0", 0, t.get(1, 3, 0)))
        checks.append(check(f"g={g} beta_2,3", anchor + ": beta_2,3 = (g-1)(g-3)(g-5)/3",
                            (g - 1) * (g - 3) * (g - 5) // 3, t.get(2, 3, 0)))
        checks.append(check(f"g={g} beta_2,4", anchor + ": beta_2,4 = C(g-2,2)-1", comb(m, 2) - 1, t.get(2, 4, 0)))
        if oracle:
            spec = FieldSpec(0)
            lam = [spec.coerce(v) for v in next(d for d in reversed(log) if d["g"] == g)["lambda"]]
            f = almost_minimal_form(g, lam, spec)
            k = koszul_betti(lambda e: perp_piece(f, e), m, spec, 2, 4)
            same = all(k.get(p, q, 0) == t.get(p, q, 0) for p in (1, 2) for q in range(5))
            checks.append(check(f"g={g} koszul", "Koszul homology agrees with the syzygy computation", True, same))
    return _result("betti-pattern", seed, checks, draws=log,
                   tables={str(g): t.to_json() for g, t in tables.items()})


def closed_forms_suite(seed: int = 0, genera=range(5, 13), measured=range(5, 9)) -> dict:
    checks = []
    for g in genera:
        checks.append(check(f"g={g} gamma_1", "gamma_1 = C(g-2,2)-1", comb(g - 2, 2) - 1, gamma(g, 1)))
        checks.append(check(f"g={g} gamma_2", "gamma_2 = (g-1)(g-3)(g-5)/3",
                            (g - 1) * (g - 3) * (g - 5) // 3, gamma(g, 2)))
    tables, log = measured_tables(seed, measured)
    for g, t in tables.items():
        for row in betti_difference_check(t, g):
            checks.append(check(f"g={g} p={row['p']}", "linear-strand difference formula",
                                row["expected"], row["measured"]))
    return _result("closed-forms", seed, checks, draws=log)


def cubic_syzygy_suite(seed: int = 0, genera=(6, 7, 8), tails=(5, 6)) -> dict:
    checks = []
    for g in genera:
        rep = verify_cubic_syzygies(g)
        checks.append(check(f"g={g} rows", "matrix rows are syzygies of x_i^3 - x_(g-3)^3 modulo the point ideal",
                            (g - 4) * (g - 2), sum(r.passed for r in rep.rows)))
    spec = FieldSpec(0)
    for g in tails:
        t = betti_table(coordinate_point_generators(g, spec), p_max=g - 3, q_max=g - 2)
        checks.append(check(f"g={g} tail", "coordinate points: last module has rank g-3 in degree g-2",
                            g - 3, t.get(g - 3, g - 2, 0)))
    return _result("cubic-syzygies", seed, checks)


def _random_points(nvars: int, size: int, spec: FieldSpec, rng: random.Random) -> PointSet:
    pts = []
    while len(pts) < size:
        cand = LinearForm(tuple(random_element(spec, rng, 5) for _ in range(nvars)), spec)
        if cand.is_zero():
            continue
        try:
            PointSet(tuple(pts) + (cand,))
        except ValueError:
            continue
        pts.append(cand)
    return PointSet(tuple(pts))


def apolarity_lemma_suite(seed: int = 0, trials: int = 50, fields=("q", "f101")) -> dict:
    """Both directions: sums of cubes of Gamma pass the containment test, and passing forms decompose."""
    rng = random.Random(seed)
    checks = []
    for name in fields:
        spec = FieldSpec.parse(name)
        fwd = back = tried_back = 0
        for _ in range(trials):
            nvars = rng.randint(2, 6)
            size = rng.randint(2, 8)
            gamma_set = _random_points(nvars, size, spec, rng)
            f = DividedForm.zero(nvars, 3, spec)
            for l in gamma_set:
                f = f + divided_power(l, 3).scale(random_nonzero(spec, rng))
            if not check_apolarity_lemma(gamma_set, f):
                fwd += 1
            # converse: a random element of the annihilated space of I_Gamma in degree 3
            g = _random_apolar_form(gamma_set, spec, rng)
            if check_apolarity_lemma(gamma_set, g):
                tried_back += 1
                try:
                    lam = waring_coefficients(g, list(gamma_set))
                    total = DividedForm.zero(nvars, 3, spec)
                    for c, l in zip(lam, gamma_set):
                        total = total + divided_power(l, 3).scale(c)
                    if total != g:
                        back += 1
                except ValueError:
                    back += 1
        checks.append(check(f"{name} forward", "sum of cubes of Gamma is annihilated by I_Gamma", 0, fwd))
        checks.append(check(f"{name} converse", "I_Gamma inside f^perp gives a decomposition", 0, back))
        checks.append(check(f"{name} converse exercised", "converse trials ran", trials, tried_back))
    return _result("apolarity-lemma", seed, checks)


def _random_apolar_form(points: PointSet, spec: FieldSpec, rng: random.Random) -> DividedForm:
    """Random cubic killed by ``I_{Gamma,3}``: the orthogonal complement of the ideal piece."""
    from .linalg import orthogonal_complement

    nvars = points.nvars
    comp = orthogonal_complement(point_ideal_piece(points, 3).basis)
    while True:
        vec = {}
        for row in comp.rows:
            c = random_element(spec, rng, 9)
            if not c:
                continue
            for k, a in row.items():
                vec[k] = spec.add(vec.get(k, spec.zero), spec.mul(c, a))
        f = DividedForm.from_vector(nvars, 3, {k: v for k, v in vec.items() if v}, spec)
        if f:
            return f


def quadric_lift_suite(seed: int = 0, genera=range(5, 10), draws: int = 10) -> dict:
    rng = random.Random(seed)
    spec = FieldSpec(0)
    checks, log = [], []
    for g in genera:
        bad = {"q_in_perp": 0, "q_not_in_frame_ideal": 0, "sum_equals_perp": 0}
        for _ in range(draws):
            lam = generic_lambda(g, spec, rng, log)
            got = quadric_lift_check(g, lam, spec)
            for k in bad:
                bad[k] += not got[k]
            if got["q_at_E0"] != -lam[0]:
                bad["q_not_in_frame_ideal"] += 1
        checks.append(check(f"g={g} q' in f^perp", "q' annihilates the almost-minimal form", 0, bad["q_in_perp"]))
        checks.append(check(f"g={g} q'(E_0)", "q'(E_0) = -lambda_0, nonzero", 0, bad["q_not_in_frame_ideal"]))
        checks.append(check(f"g={g} I_2 + <q'>", "frame ideal plus q' fills f^perp in degree 2", 0,
                            bad["sum_equals_perp"]))
    return _result("quadric-lift", seed, checks, draws=log)


def product_intersection_suite(seed: int = 0, genera=range(5, 9), max_degree: int = 6) -> dict:
    rng = random.Random(seed)
    spec = FieldSpec(0)
    checks, log = [], []
    for g in genera:
        lam = generic_lambda(g, spec, rng, log)
        rows = product_intersection_check(g, lam, spec, max_degree)
        checks.append(check(f"g={g} intersection", "frame ideal meets (q') in the product", 0,
                            sum(not r["intersection_equals_product"] for r in rows)))
        checks.append(check(f"g={g} hilbert", "h_e = hT(Gamma)_e - hT(Gamma)_(e-2)",
                            [r["hilbert_rhs"] for r in rows], [r["hilbert_lhs"] for r in rows]))
    return _result("product-intersection", seed, checks, draws=log)


def dropped_variable_suite(seed: int = 0, genera=range(5, 9), trials: int = 20) -> dict:
    """``f_0(y_0..y_{g-4}) + c y_{g-3}^[3]``: quadrics of f^perp vanish at the last coordinate point."""
    rng = random.Random(seed)
    spec = FieldSpec(0)
    checks = []
    for g in genera:
        m = g - 2
        vanish_bad = cubic_bad = 0
        for _ in range(trials):
            f0 = random_cubic(m - 1, spec, rng)
            f = DividedForm(m, 3, {mono + (0,): c for mono, c in f0.coeffs.items()}, spec)
            f = f + DividedForm(m, 3, {tuple([0] * (m - 1) + [3]): random_nonzero(spec, rng, 100)}, spec)
            got = dropped_variable_check(f)
            vanish_bad += not got["quadrics_vanish"]
            cubic_bad += got["beta_1_ge3"] == 0
        checks.append(check(f"g={g} quadrics vanish", "perp quadrics vanish at (0,..,0,1)", 0, vanish_bad))
        checks.append(check(f"g={g} higher generator", "f^perp needs a generator of degree >= 3", 0, cubic_bad))
    return _result("dropped-variable", seed, checks)


def macaulay_suite(seed: int = 0, trials: int = 50, fields=("q", "f101")) -> dict:
    rng = random.Random(seed)
    checks = []
    for name in fields:
        spec = FieldSpec.parse(name)
        bad = 0
        for _ in range(trials):
            nvars = rng.randint(1, 7)
            f = random_cubic(nvars, spec, rng)
            pieces = {e: perp_piece(f, e) for e in range(1, 5)}
            back = dual_socle_generator(pieces, nvars, 3, spec)
            bad += back != f.normalized()
        checks.append(check(f"{name} roundtrip", "inverse system recovers f up to scalar", 0, bad))
    return _result("macaulay", seed, checks)


def oracle_suite(seed: int = 0, fields=("f3", "f5"), t_max: int = 5, randoms: int = 3,
                 budget: int = 2_000_000) -> dict:
    """Brute-force ranks in three variables re-verify through the linear solve and the containment test."""
    rng = random.Random(seed)
    checks, found = [], []
    for name in fields:
        spec = FieldSpec.parse(name)
        forms = [("fermat", fermat(5, spec)),
                 ("two cubes", DividedForm(3, 3, {(3, 0, 0): 1, (0, 3, 0): 1}, spec)),
                 ("almost-minimal", almost_minimal_form(5, [1] * 3, spec))]
        forms += [(f"random {i}", random_cubic(3, spec, rng)) for i in range(randoms)]
        for label, f in forms:
            try:
                t, dec = waring_rank_bruteforce(f, t_max, budget=budget)
            except NoneFound:
                found.append({"field": name, "form": label, "rank": None})
                continue
            ls = [l for _, l in dec.terms]
            lam = waring_coefficients(f, ls)
            total = DividedForm.zero(3, 3, spec)
            for c, l in zip(lam, ls):
                total = total + divided_power(l, 3).scale(c)
            ok = total == f and check_apolarity_lemma(PointSet(tuple(ls)), f)
            found.append({"field": name, "form": label, "rank": t, "span": span_dim(ls)})
            checks.append(check(f"{name} {label}", "decomposition re-verifies", True, ok))
        try:
            waring_rank_bruteforce(fermat(5, spec), 2, budget=budget)
            none = False
        except NoneFound:
            none = True
        checks.append(check(f"{name} fermat t_max=2", "spanning obstruction: no 2-term decomposition", True, none))
    return _result("oracle", seed, checks, ranks=found)


SUITES = {
    "fermat-perp": fermat_perp_suite,
    "hilbert": hilbert_suite,
    "betti-pattern": betti_pattern_suite,
    "closed-forms": closed_forms_suite,
    "cubic-syzygies": cubic_syzygy_suite,
    "apolarity-lemma": apolarity_lemma_suite,
    "quadric-lift": quadric_lift_suite,
    "product-intersection": product_intersection_suite,
    "dropped-variable": dropped_variable_suite,
    "macaulay": macaulay_suite,
    "oracle": oracle_suite,
}

__all__ = ["SUITES", "check", "generic_lambda", "random_cubic", "betti_difference"]
