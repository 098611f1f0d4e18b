from fractions import Fraction

import sympy

from harmonia.ratpoly import Polynomial


def to_sympy(p: Polynomial, symbols):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** e for s, e in zip(symbols, m)])
                for m, c in p.items()), sympy.Integer(0))


def from_sympy(expr, symbols) -> Polynomial:
    poly = sympy.Poly(sympy.expand(expr), *symbols)
    return Polynomial(len(symbols), {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def series_coefficients(expr, t, cutoff):
    s = sympy.series(expr, t, 0, cutoff + 1).removeO()
    return [int(s.coeff(t, k)) for k in range(cutoff + 1)]


# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {text}")
