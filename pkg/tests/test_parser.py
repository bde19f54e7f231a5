"""Expression grammar, document format, and round-trips."""

from fractions import Fraction

import pytest

from wildcycle.cyclotomic import Cyc
from wildcycle.document import InputDocument
from wildcycle.errors import ParseError, UnsupportedExponent
from wildcycle.params import ParamScalar
from wildcycle.parser import parse_expression


def test_basic_expression():
    s = parse_expression("3/2*t^-2 + (1+2*i) + t^3", cyclotomic_order=4)
    assert s.valuation() == -2
    assert len(s.coeffs) == 3
    assert s.coeff(-2) == ParamScalar.rational(Fraction(3, 2))
    assert s.coeff(0).as_cyc() == Cyc.gaussian(1, 2)


def test_parameter_coefficients():
    s = parse_expression("z^2*t^-1")
    assert s.coeff(-1) == ParamScalar.lam() ** 2


def test_fractional_power_rejected():
    with pytest.raises(UnsupportedExponent):
        parse_expression("t^(1/2)")


def test_error_positions():
    with pytest.raises(ParseError) as err:
        parse_expression("1 + @")
    assert err.value.line == 1 and err.value.column == 5
    with pytest.raises(ParseError) as err2:
        parse_expression("2 *\n* 3")
    assert err2.value.line == 2


def test_zeta_requires_order():
    with pytest.raises(ParseError):
        parse_expression("zeta", cyclotomic_order=1)
    s = parse_expression("zeta^2", cyclotomic_order=8)
    assert s.coeff(0).as_cyc() == Cyc.zeta(8) ** 2


def test_unknown_name():
    with pytest.raises(ParseError) as err:
        parse_expression("x + 1")
    assert "x" in str(err.value)


def test_division_rules():
    s = parse_expression("t / 2")
    assert s.coeff(1) == ParamScalar.rational(Fraction(1, 2))
    s2 = parse_expression("1 / (z - 1)")
    assert s2.coeff(0) == ParamScalar.rational(1) / (ParamScalar.lam() - 1)
    with pytest.raises(ParseError):
        parse_expression("1 / t + 1/(1+t)")


def test_negative_monomial_powers():
    s = parse_expression("(2*t)^-2")
    assert s.coeff(-2) == ParamScalar.rational(Fraction(1, 4))


DOC = """\
# golden example
variables: t z
cyclotomic_order: 4
rank: 2
ramification: 1
truncation: 10
lambda0: 1, i
matrix:
3/2*t^-2 + 1 + 2*i, z^2*t^-1
0, -t
"""


def test_document_parse():
    doc = InputDocument.parse(DOC)
    assert doc.rank == 2 and doc.truncation == 10
    assert doc.lambda0_points == [Cyc.rational(1), Cyc.imaginary_unit()]
    conn = doc.connection()
    assert conn.rank == 2 and conn.q == 1
    assert conn.guaranteed_order == 10


def test_document_round_trip_identity():
    doc = InputDocument.parse(DOC)
    printed = doc.render()
    doc2 = InputDocument.parse(printed)
    assert doc2.render() == printed
    for r1, r2 in zip(doc.matrix_entries, doc2.matrix_entries):
        for a, b in zip(r1, r2):
            assert a == b


def test_document_shape_errors():
    bad = DOC.replace("rank: 2", "rank: 3")
    with pytest.raises(ParseError):
        InputDocument.parse(bad)
    with pytest.raises(ParseError):
        InputDocument.parse("rank: 1\nmatrix:\nt, 1\n")


def test_document_twist_header():
    text = DOC.replace("matrix:", "twist: t^-1 + 1/2*t^-2\nmatrix:")
    doc = InputDocument.parse(text)
    assert doc.twist is not None
    assert doc.twist.pole_order() == 2
    printed = doc.render()
    assert InputDocument.parse(printed).twist == doc.twist


def test_document_ramified_entries():
    text = """\
rank: 1
ramification: 2
truncation: 8
matrix:
t^-1 + t^2
"""
    doc = InputDocument.parse(text)
    conn = doc.connection()
    assert conn.q == 2
    assert conn.action.rows[0][0].valuation() == -1
    assert conn.guaranteed_order == 16
