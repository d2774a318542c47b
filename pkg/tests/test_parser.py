import random
from fractions import Fraction

import pytest

from apolar_kit.parser import (
    FormSyntaxError,
    InhomogeneousError,
    MixedNamespaceError,
    PlainPowerAmbiguity,
    format_form,
    parse_expression,
    parse_form,
)
from apolar_kit.ring import DividedForm, Form

from conftest import F3, F5, F7, Q


def test_fermat_g4():
    f = parse_form("y0^[3] + y1^[3]", Q)
    assert f == DividedForm(2, 3, {(3, 0): 1, (0, 3): 1}, Q)


def test_quadric():
    q = parse_form("x0*x1 - x2^2", Q)
    assert isinstance(q, Form) and q == Form(3, 2, {(1, 1, 0): 1, (0, 0, 2): -1}, Q)


def test_plain_power_in_char_3():
    with pytest.raises(PlainPowerAmbiguity):
        parse_form("y0^3", F3)


def test_plain_power_conversion():
    assert parse_form("y0^3", Q) == DividedForm(1, 3, {(3,): 6}, Q)
    # 3! = 6 = 1 in F_5
    assert parse_form("y0^3", F5) == DividedForm(1, 3, {(3,): 1}, F5)
    # y0*y0 is the ordinary square 2*y0^[2]
    assert parse_form("y0*y0", Q) == DividedForm(1, 2, {(2,): 2}, Q)
    # divided factors combine with multinomial weights
    assert parse_form("y0^[1]*y0^[1]", Q) == DividedForm(1, 2, {(2,): 2}, Q)


def test_errors():
    with pytest.raises(InhomogeneousError):
        parse_form("x0 + x1^2", Q)
    with pytest.raises(MixedNamespaceError):
        parse_form("x0*y1", Q)
    with pytest.raises(FormSyntaxError) as exc:
        parse_form("x0 + * x1", Q)
    assert exc.value.pos == 5
    with pytest.raises(FormSyntaxError):
        parse_form("x0 $ x1", Q)
    with pytest.raises(FormSyntaxError):
        parse_form("1/0*x0", Q)
    with pytest.raises(ValueError):
        parse_form("x0^[2]", Q)


def test_coefficients_and_signs():
    f = parse_form("-3/4*y0^[2]*y1 + 2 y1^[3]", Q)
    assert f.coefficient((2, 1)).value == Fraction(-3, 4) and f.coefficient((0, 3)).value == 2
    assert parse_expression("x0*x1 - x2^2").degree == 2


def test_format():
    assert format_form(parse_form("y0^[2]*y1 - y1^[3]", Q)) == "y0^[2]*y1 - y1^[3]"
    assert format_form(DividedForm.zero(2, 3, Q)) == "0"


def _random_expression(rng, var):
    nvars = rng.randint(1, 4)
    d = rng.randint(0, 4)
    terms = []
    for _ in range(rng.randint(1, 5)):
        exps = [0] * nvars
        for _ in range(d):
            exps[rng.randrange(nvars)] += 1
        factors = []
        for i, k in enumerate(exps):
            if not k:
                continue
            if var == "y":
                factors.append(f"y{i}^[{k}]" if (k > 1 or rng.random() < 0.5) else f"y{i}")
            else:
                factors.append(f"x{i}^{k}" if k > 1 else f"x{i}")
        num, den = rng.randint(-9, 9), rng.randint(1, 4)
        coeff = f"{abs(num)}/{den}" if den > 1 else str(abs(num))
        body = "*".join(([coeff] if rng.random() < 0.7 or not factors else []) + factors)
        terms.append(("-" if num < 0 else "+", body))
    text = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text, nvars


@pytest.mark.parametrize("spec", [Q, F7], ids=lambda s: s.name)
def test_roundtrip_random(spec):
    rng = random.Random(2024)
    for _ in range(500):
        var = rng.choice("xy")
        text, nvars = _random_expression(rng, var)
        f = parse_form(text, spec, nvars=nvars, kind=var)
        again = parse_form(format_form(f), spec, nvars=nvars, kind=var)
        if f.is_zero():
            # "0" carries no degree
            assert again.is_zero(), text
        else:
            assert again == f, text
