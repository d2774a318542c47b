import random

import pytest

from apolar_kit.apolar import (
    ApolarIdeal,
    NotGorenstein,
    ZeroForm,
    catalecticant,
    dual_socle_generator,
    generator_counts,
    hilbert_function,
    is_apolar,
    perp_piece,
)
from apolar_kit.constructs import almost_minimal_form, fermat, q_prime
from apolar_kit.linalg import rank
from apolar_kit.parser import parse_form
from apolar_kit.ring import DividedForm, GradedPiece, contract, num_monomials
from apolar_kit.suites import random_cubic

from conftest import F101, Q


def test_catalecticant_fermat_binary():
    c = catalecticant(parse_form("y0^[3] + y1^[3]", Q), 1)
    # columns x0, x1; rows y0^[2], y0*y1, y1^[2]
    assert c.to_dense() == [[1, 0], [0, 0], [0, 1]]


def test_catalecticant_zero_and_rank_one():
    assert not list(catalecticant(DividedForm.zero(2, 3, Q), 1).entries())
    f = parse_form("y0^[3] + y0^[2]*y1 + y0*y1^[2] + y1^[3]", Q)  # (y0+y1)^[3]
    assert rank(catalecticant(f, 2)) == 1


def test_perp_fermat_three_variables():
    p = perp_piece(fermat(5, Q), 2)
    assert [str(q) for q in p.forms()] == ["x0*x1", "x0*x2", "x1*x2"]


def test_perp_degree_zero_and_top():
    f = random_cubic(3, Q, random.Random(1))
    assert perp_piece(f, 0).dim == 0
    one = parse_form("y0^[3]", Q)
    assert perp_piece(one, 3).dim == num_monomials(1, 3) - 1
    assert perp_piece(one, 5) == GradedPiece.full(1, 5, Q)


def test_hilbert_examples():
    rng = random.Random(6)
    lam = [rng.randint(1, 10**6) for _ in range(4)]
    assert hilbert_function(almost_minimal_form(6, lam, Q)).as_list() == [1, 4, 4, 1]
    for n in (1, 3, 5):
        f = DividedForm(n, 3, {tuple([3] + [0] * (n - 1)): 1}, Q)
        assert hilbert_function(f).as_list() == [1, 1, 1, 1]
    assert hilbert_function(parse_form("y0^[2]*y1", Q)).as_list() == [1, 2, 2, 1]
    with pytest.raises(ZeroForm):
        hilbert_function(DividedForm.zero(2, 3, Q))


@pytest.mark.parametrize("g, counts", [(4, {2: 1, 3: 1}), (5, {2: 3, 3: 2}), (6, {2: 6, 3: 3}), (7, {2: 10, 3: 4})])
def test_fermat_generator_counts(g, counts):
    got = {k: v for k, v in generator_counts(fermat(g, Q)).items() if v}
    assert got == counts


def test_almost_minimal_generators():
    counts = generator_counts(almost_minimal_form(6, [3, 5, 7, 11], Q))
    assert counts[2] == 6 and counts[3] == 0 and counts[4] == 0


def test_dropped_variable_has_cubic_generator():
    f = parse_form("y0^[2]*y1 + y1^[3] + 2*y2^[3]", Q)
    assert sum(v for k, v in generator_counts(f).items() if k >= 3) >= 1


def test_dual_socle_examples():
    f = fermat(5, Q)
    pieces = {e: perp_piece(f, e) for e in (1, 2, 3)}
    assert dual_socle_generator(pieces, 3, 3, Q) == f
    with pytest.raises(NotGorenstein):
        dual_socle_generator({e: GradedPiece.full(3, e, Q) for e in (1, 2, 3)}, 3, 3, Q)
    # only a codimension-1 piece in degree 3: recovers its annihilated direction
    g = parse_form("y0^[2]*y1 - y2^[3]", Q)
    back = dual_socle_generator({1: GradedPiece.zero(3, 1, Q), 2: GradedPiece.zero(3, 2, Q),
                                 3: perp_piece(g, 3)}, 3, 3, Q)
    assert back == g.normalized()


def test_is_apolar_examples():
    f = parse_form("y0^[3]", Q, nvars=2)
    assert is_apolar(parse_form("x0*x1", Q), f)
    assert not is_apolar(parse_form("x0", Q, nvars=2), f)
    lam = [1, 2, 3]
    assert is_apolar(q_prime(5, lam, Q), almost_minimal_form(5, lam, Q))


@pytest.mark.parametrize("spec", [Q, F101], ids=lambda s: s.name)
def test_random_cubic_properties(spec):
    rng = random.Random(99 + spec.p)
    for _ in range(50):
        n = rng.randint(1, 7)
        f = random_cubic(n, spec, rng)
        ideal = ApolarIdeal(f)
        hf = ideal.hilbert_function()
        assert hf == hilbert_function(f) and hf.is_symmetric()
        for e in range(0, 4):
            assert ideal.piece(e + 1).contains_piece(ideal.piece(e).times_linear())
        back = dual_socle_generator(ideal.pieces(4), n, 3, spec)
        assert back == f.normalized()
        g = random_cubic(n, spec, rng)
        q = next(p.forms()[0] for p in (ideal.piece(e) for e in (1, 2, 3, 4)) if p.dim)
        assert contract(q, f + g) == contract(q, f) + contract(q, g)
