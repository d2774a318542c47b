import pytest

from apolar_kit.exact import FieldSpec

Q = FieldSpec(0)
F2, F3, F5, F7, F101 = (FieldSpec(p) for p in (2, 3, 5, 7, 101))
ALL_FIELDS = [Q, F2, F3, F5, F101]


@pytest.fixture(params=ALL_FIELDS, ids=lambda s: s.name)
def field(request):
    return request.param


ACCEPTANCE = {}


def record(criterion: int, label: str, passed: bool, detail: str = ""):
    """Remember one acceptance outcome; sub-results of a criterion are AND-ed."""
    prev = ACCEPTANCE.get(criterion)
    ok = passed and (prev is None or prev[1])
    details = [d for d in ((prev[2] if prev else ""), detail) if d]
    ACCEPTANCE[criterion] = (label, ok, "; ".join(details))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        label, ok, detail = ACCEPTANCE[n]
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
