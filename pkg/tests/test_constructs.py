import random
from fractions import Fraction

import pytest

from apolar_kit.apolar import ZeroForm, is_apolar
from apolar_kit.betti import OutOfRange
from apolar_kit.constructs import (
    StandardInstance,
    ZeroLambda,
    almost_minimal_form,
    classify_form,
    cubic_syzygy_matrix,
    expected_beta_24,
    fermat,
    fermat_perp_generators,
    frame_ideal_generators,
    frame_points,
    q_prime,
    verify_cubic_syzygies,
)
from apolar_kit.parser import parse_form
from apolar_kit.points import point_ideal_piece
from apolar_kit.ring import DividedForm, GradedPiece, x

from conftest import F5, Q


def test_fermat_examples():
    assert fermat(5, Q) == parse_form("y0^[3] + y1^[3] + y2^[3]", Q)
    assert fermat(3, Q) == parse_form("y0^[3]", Q)
    assert fermat(4, Q) == parse_form("y0^[3] + y1^[3]", Q)


def test_fermat_perp_generator_lists():
    assert [str(q) for q in fermat_perp_generators(5, Q)] == [
        "x0*x1", "x0*x2", "x1*x2", "x0^3 - x2^3", "x1^3 - x2^3"]
    assert [str(q) for q in fermat_perp_generators(4, Q)] == ["x0*x1", "x0^3 - x1^3"]
    assert len(fermat_perp_generators(8, Q)) == 20


def test_almost_minimal_examples():
    f = almost_minimal_form(5, [1, 1, 1], Q)
    want = parse_form("y0^[3] + y1^[3] + y2^[3]", Q)
    from apolar_kit.ring import LinearForm, divided_power

    assert f == want + divided_power(LinearForm((1, 1, 1), Q), 3)
    with pytest.raises(ZeroLambda):
        almost_minimal_form(5, [1, 0, 1], Q)
    f = almost_minimal_form(6, [1, 2, 3, 4], Q)
    for i, lam in enumerate((1, 2, 3, 4)):
        mono = tuple(3 if j == i else 0 for j in range(4))
        assert f.coefficient(mono).value == 1 + Fraction(1, lam)
    assert all(c == 1 for m, c in f.coeffs.items() if max(m) < 3)


def test_frame_points_examples():
    assert [p.coeffs for p in frame_points(5, Q, include_unit=False)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [p.coeffs for p in frame_points(5, Q)][-1] == (1, 1, 1)
    assert [p.coeffs for p in frame_points(4, Q)] == [(1, 0), (0, 1), (1, 1)]


def test_q_prime_examples():
    assert str(q_prime(5, [1, 1, 1], Q)) == "-x0^2 - x1^2 + 4*x1*x2 - x2^2"
    rng = random.Random(3)
    for g in range(5, 9):
        lam = [rng.randint(1, 50) for _ in range(g - 2)]
        q = q_prime(g, lam, Q)
        assert q.evaluate([1] + [0] * (g - 3)) == -lam[0]
        assert is_apolar(q, almost_minimal_form(g, lam, Q))
    assert is_apolar(q_prime(6, [1] * 4, Q), almost_minimal_form(6, [1] * 4, Q))
    with pytest.raises(ZeroLambda):
        q_prime(6, [1, 1, 0, 1], Q)


def test_frame_ideal_generators_span():
    for g in range(5, 9):
        assert GradedPiece.span(frame_ideal_generators(g, Q), g - 2, 2, Q) == point_ideal_piece(frame_points(g, Q), 2)


def test_matrix_g6():
    m = cubic_syzygy_matrix(6)
    assert len(m) == 8 and all(len(r) == 3 for r in m)
    assert m[0][0] == x(3, 4, Q)
    # third family: alternating x_{g-3} in the last column at rows i(g-3)+1
    assert m[0][2] == -x(3, 4, Q) and m[3][2] == x(3, 4, Q)
    nonzero = sum(1 for r in m for e in r if e)
    assert nonzero == 2 * 3 + 2 + 2
    with pytest.raises(OutOfRange):
        cubic_syzygy_matrix(5)


@pytest.mark.parametrize("g", [6, 7, 8])
def test_matrix_rows_are_syzygies(g):
    rep = verify_cubic_syzygies(g)
    assert rep.count == (g - 4) * (g - 2) and rep.passed


def test_corrupted_matrix_fails():
    m = [list(r) for r in cubic_syzygy_matrix(6)]
    m[0][2] = -m[0][2]
    rep = verify_cubic_syzygies(6, m)
    assert not rep.passed and rep.failures() == [1]


def test_classify_examples():
    rep = classify_form(fermat(6, Q))
    assert rep.verdict == "FermatType_ap_g_minus_2" and rep.beta_1[3] == 3
    rep = classify_form(almost_minimal_form(6, [12345, 678, 91011, 2], Q))
    assert rep.verdict == "AlmostMinimal_ap_g_minus_1_candidate"
    assert rep.beta_1[3] == 0 and rep.beta_2[4] == 5
    assert classify_form(parse_form("y0^[3]", Q, nvars=4)).verdict == "Degenerate"
    with pytest.raises(ZeroForm):
        classify_form(DividedForm.zero(3, 3, Q))


def test_classify_certificate_over_prime_field():
    rep = classify_form(almost_minimal_form(5, [1, 2, 3], F5))
    assert rep.verdict == "AlmostMinimal_ap_g_minus_1_candidate"
    assert rep.certificate is not None and rep.certificate.length <= 4


def test_expected_beta_24():
    assert expected_beta_24(5) == 3 and expected_beta_24(6) == 5


def test_instances():
    assert StandardInstance(6, "Fermat", Q).form() == fermat(6, Q)
    inst = StandardInstance(6, "AlmostMinimal", Q, (1, 2, 3, 4))
    assert inst.m == 4 and inst.form() == almost_minimal_form(6, [1, 2, 3, 4], Q)
    with pytest.raises(ZeroLambda):
        StandardInstance(6, "AlmostMinimal", Q, (1, 0, 3, 4))
    with pytest.raises(OutOfRange):
        StandardInstance(4, "AlmostMinimal", Q, (1, 2))
