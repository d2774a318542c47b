"""Text syntax for forms.

Grammar (whitespace insensitive)::

    expr   := sign? term (('+'|'-') term)*
    term   := coeff? ('*'? factor)*
    factor := var ('^' int | '^[' int ']')?
    coeff  := int | int '/' int
    var    := 'x' int | 'y' int

``x`` variables build a :class:`~apolar_kit.ring.Form`, ``y`` variables a
:class:`~apolar_kit.ring.DividedForm`.  Within a y-term the factors are
multiplied in the divided power algebra.  ``y_i^[k]`` is a divided power;
a plain power ``y_i^k`` means the ordinary k-th power, which equals
``k! y_i^[k]`` and is refused whenever ``k!`` vanishes in the field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import FieldSpec
from .ring import DividedForm, Form, multinomial


class FormInputError(ValueError):
    pass


class FormSyntaxError(FormInputError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


class InhomogeneousError(FormInputError):
    pass


class MixedNamespaceError(FormInputError):
    pass


class PlainPowerAmbiguity(FormInputError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[xy])(?P<idx>\d+)|(?P<op>\^\[|[-+*/^\]]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            skipped = len(text[pos:]) - len(text[pos:].lstrip())
            raise FormSyntaxError("unexpected character", text, pos + skipped)
        start = m.start(m.lastgroup)
        if m.group("int") is not None:
            out.append(("int", int(m.group("int")), start))
        elif m.group("var") is not None:
            out.append(("var", (m.group("var"), int(m.group("idx"))), start))
        else:
            out.append((m.group("op"), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


@dataclass
class Factor:
    var: str
    index: int
    exponent: int
    divided: bool


@dataclass
class Term:
    coeff: Fraction
    factors: list

    @property
    def degree(self) -> int:
        return sum(f.exponent for f in self.factors)


@dataclass
class ParsedExpression:
    terms: list
    namespace: str | None
    degree: int

    @property
    def max_index(self) -> int:
        return max((f.index for t in self.terms for f in t.factors), default=-1)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        raise FormSyntaxError(msg, self.text, self.tok[2])

    def expect(self, kind):
        if self.tok[0] != kind:
            self.fail(f"expected {kind!r}")
        return self.next()

    def expr(self) -> list:
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        terms = [self.term(sign)]
        while self.tok[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
            terms.append(self.term(sign))
        if self.tok[0] != "end":
            self.fail("unexpected token")
        return terms

    def term(self, sign: int) -> Term:
        coeff = Fraction(1)
        seen = False
        if self.tok[0] == "int":
            num = self.next()[1]
            den = 1
            if self.tok[0] == "/":
                self.next()
                den = self.expect("int")[1]
                if den == 0:
                    self.fail("zero denominator")
            coeff = Fraction(num, den)
            seen = True
        factors = []
        while True:
            if self.tok[0] == "*":
                if not (seen or factors):
                    self.fail("dangling '*'")
                self.next()
                if self.tok[0] != "var":
                    self.fail("expected a variable after '*'")
            if self.tok[0] != "var":
                break
            factors.append(self.factor())
        if not (seen or factors):
            self.fail("expected a term")
        return Term(sign * coeff, factors)

    def factor(self) -> Factor:
        (name, idx) = self.next()[1]
        if self.tok[0] == "^[":
            self.next()
            k = self.expect("int")[1]
            self.expect("]")
            return Factor(name, idx, k, True)
        if self.tok[0] == "^":
            self.next()
            k = self.expect("int")[1]
            return Factor(name, idx, k, False)
        return Factor(name, idx, 1, False)


def parse_expression(text: str) -> ParsedExpression:
    terms = _Parser(text).expr()
    names = {f.var for t in terms for f in t.factors}
    if len(names) > 1:
        raise MixedNamespaceError("an expression may use x-variables or y-variables, not both")
    namespace = names.pop() if names else None
    degrees = {t.degree for t in terms}
    if len(degrees) > 1:
        raise InhomogeneousError(f"terms of different degrees {sorted(degrees)}")
    return ParsedExpression(terms, namespace, degrees.pop())


def parse_form(text: str, spec: FieldSpec, nvars: int | None = None, kind: str | None = None):
    """Parse ``text`` into a Form (x-variables) or DividedForm (y-variables).

    ``nvars`` defaults to one more than the largest variable index.  ``kind``
    ('x' or 'y') forces the namespace for expressions without variables.
    """
    pe = parse_expression(text)
    ns = pe.namespace or kind or "y"
    if kind and pe.namespace and kind != pe.namespace:
        raise MixedNamespaceError(f"expected a {kind}-form, got {pe.namespace}-variables")
    need = pe.max_index + 1
    if nvars is None:
        nvars = max(need, 1)
    elif need > nvars:
        raise FormInputError(f"variable index {pe.max_index} out of range for {nvars} variables")
    cls = Form if ns == "x" else DividedForm
    coeffs: dict = {}
    for t in pe.terms:
        mono, mult = _term_monomial(t, nvars, spec)
        c = spec.mul(spec.coerce(t.coeff), spec.embed(mult))
        coeffs[mono] = spec.add(coeffs.get(mono, spec.zero), c)
    return cls(nvars, pe.degree, coeffs, spec)


def _term_monomial(t: Term, nvars: int, spec: FieldSpec):
    exps = [0] * nvars
    mult = 1
    if not t.factors or t.factors[0].var == "x":
        for f in t.factors:
            if f.divided:
                raise FormInputError(f"divided power on x{f.index}: '^[k]' applies to y-variables only")
            exps[f.index] += f.exponent
        return tuple(exps), 1
    plain = [0] * nvars
    for f in t.factors:
        if f.divided:
            cur = [0] * nvars
            cur[f.index] = f.exponent
            mult *= multinomial(tuple(exps), tuple(cur))
            exps[f.index] += f.exponent
        else:
            plain[f.index] += f.exponent
    for i, k in enumerate(plain):
        if k == 0:
            continue
        if k >= 2 and spec.p and spec.p <= k:
            raise PlainPowerAmbiguity(
                f"plain power y{i}^{k} is {k}!*y{i}^[{k}] and {k}! = 0 in characteristic {spec.p}; "
                f"write y{i}^[{k}] instead")
        cur = [0] * nvars
        cur[i] = k
        mult *= factorial(k) * multinomial(tuple(exps), tuple(cur))
        exps[i] += k
    return tuple(exps), mult


def format_monomial(m, var: str) -> str:
    parts = []
    for i, k in enumerate(m):
        if k == 0:
            continue
        if k == 1:
            parts.append(f"{var}{i}")
        elif var == "y":
            parts.append(f"y{i}^[{k}]")
        else:
            parts.append(f"{var}{i}^{k}")
    return "*".join(parts)


def format_form(f) -> str:
    """Inverse of :func:`parse_form` (up to the variable count)."""
    if not f.coeffs:
        return "0"
    var = f.var
    out = []
    for m, c in f.terms():
        neg = f.spec.p == 0 and c < 0
        a = -c if neg else c
        mono = format_monomial(m, var)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{str(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
