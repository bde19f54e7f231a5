"""The twisted-eigenvalue formulas and their inversion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wildcycle.cyclotomic import Cyc
from wildcycle.errors import NotStarShaped
from wildcycle.exponents import (ComplexExponent, ell, exponent_from_eigenvalue,
                                 star)
from wildcycle.params import ParamScalar


def test_star_of_i():
    # beta = i: i*(z^2+1)/2, value i at z=1 and i/2 at z=0
    s = star(ComplexExponent.of(0, 1))
    assert s.eval(Cyc.rational(1)) == Cyc.imaginary_unit()
    assert s.eval(Cyc.rational(0)) == Cyc.imaginary_unit() * Fraction(1, 2)


def test_star_of_real_is_constant():
    beta = ComplexExponent.of(Fraction(-5, 7), 0)
    s = star(beta)
    assert s.is_constant()
    assert s.as_cyc().as_fraction() == Fraction(-5, 7)


def test_star_at_one_is_beta():
    beta = ComplexExponent.of(1, 1)
    assert star(beta).eval(Cyc.rational(1)) == Cyc.gaussian(1, 1)


def test_ell_examples():
    assert ell(ComplexExponent.of(1, 1), Cyc.imaginary_unit()) == 0
    assert ell(ComplexExponent.of(Fraction(3, 5), 2), Cyc.rational(7)) == \
        Fraction(3, 5)
    assert ell(ComplexExponent.of(Fraction(-1, 2), 2), Cyc.gaussian(1, 1)) == \
        Fraction(-5, 2)


def test_recovery_examples():
    s = star(ComplexExponent.of(0, 1))
    assert exponent_from_eigenvalue(s) == ComplexExponent.of(0, 1)
    assert exponent_from_eigenvalue(ParamScalar.rational(Fraction(-1, 2))) == \
        ComplexExponent.of(Fraction(-1, 2), 0)
    with pytest.raises(NotStarShaped):
        exponent_from_eigenvalue(ParamScalar.lam())


def test_recovery_with_lattice_shift():
    e = star(ComplexExponent.of(Fraction(-1, 3), 2)) + ParamScalar.lam() * 3
    beta, shift = exponent_from_eigenvalue(e, allow_shift=True)
    assert beta == ComplexExponent.of(Fraction(-1, 3), 2)
    assert shift == 3


exps = st.builds(ComplexExponent.of,
                 st.builds(Fraction, st.integers(-8, 8), st.integers(1, 5)),
                 st.builds(Fraction, st.integers(-8, 8), st.integers(1, 5)))


@settings(max_examples=80, deadline=None)
@given(exps)
def test_recovery_round_trip(beta):
    assert exponent_from_eigenvalue(star(beta)) == beta


@settings(max_examples=50, deadline=None)
@given(exps)
def test_normalization_window(beta):
    norm = beta.normalized()
    assert Fraction(-1) < norm.beta_re <= 0
    assert (beta.beta_re - norm.beta_re).denominator == 1


def test_star_is_additive_in_integer_shifts():
    beta = ComplexExponent.of(Fraction(-1, 4), 3)
    assert star(beta + 1) == star(beta) + 1
    assert star(beta.scale(2)) == star(beta) * 2
