"""The decomposition engine: polygons, splits, shears, certificates."""

from fractions import Fraction

import pytest

from wildcycle.connection import LambdaConnection
from wildcycle.cyclotomic import Cyc
from wildcycle.errors import SpectrumNotSplit, UnsupportedAlgebraicExtension
from wildcycle.exponents import ComplexExponent, star
from wildcycle.matrices import LaurentMatrix
from wildcycle.params import ParamScalar
from wildcycle.series import LaurentSeries
from wildcycle.turrittin import (formal_decompose, leading_split,
                                 newton_polygon, shear, verify_decomposition)


def const(val, q=1, trunc=12):
    return LaurentSeries.monomial(val, 0, q, trunc)


def mono(val, e, q=1, trunc=12):
    return LaurentSeries.monomial(val, e, q, trunc)


def zero(q=1, trunc=12):
    return LaurentSeries.zero(q, trunc)


def conn(rows, q=1):
    return LambdaConnection(LaurentMatrix(rows, q), q)


BETA = ComplexExponent.of(Fraction(-1, 3), 0)


def multiset_equal(got, want):
    pool = list(want)
    for g in got:
        for i, w in enumerate(pool):
            if g == w:
                pool.pop(i)
                break
        else:
            return False
    return not pool


# -- newton polygon ----------------------------------------------------------

def test_polygon_regular_diag():
    m = conn([[const(star(BETA)), zero()], [zero(), const(1)]])
    p = newton_polygon(m)
    assert p.slopes == ((Fraction(0), 2),)
    assert p.ramification() == 1 and p.is_regular()


def test_polygon_half_slope():
    m = conn([[zero(), const(1)], [mono(1, -1), zero()]])
    p = newton_polygon(m)
    assert p.slopes == ((Fraction(1, 2), 2),)
    assert p.ramification() == 2
    # the stated oracle: valuations of the characteristic polynomial
    cp = m.action.charpoly()
    assert cp[0].valuation() == -1 and cp[2].valuation() == 0


def test_polygon_mixed():
    m = conn([[mono(1, -1), zero()], [zero(), const(1)]])
    p = newton_polygon(m)
    assert p.slopes == ((Fraction(0), 1), (Fraction(1), 1))


def test_polygon_exact_on_inflated_presentation():
    # apparent pole: the naive char-poly polygon would not see through a
    # bad frame, the operator polygon does
    m = conn([[zero(), mono(1, -2)], [zero(), zero()]])
    p = newton_polygon(m)
    assert p.is_regular()


# -- shear and leading_split --------------------------------------------------

def test_shear_identity_and_star_shift():
    m = conn([[const(star(BETA)), zero()], [zero(), const(1)]])
    unchanged, _ = shear(m, [0, 1], 0)
    assert unchanged.action.agrees_with(m.action)
    sheared, g = shear(m, [1], 1)
    # a t-rescaling moves the eigenvalue by z (the lattice-position shift)
    assert sheared.action.rows[1][1].coeff(0) == \
        m.action.rows[1][1].coeff(0) + ParamScalar.lam()


def test_leading_split_separates_leading_eigenvalues():
    m = conn([[mono(1, -1), const(1)], [const(2), mono(-1, -1)]])
    m1, m2, g = leading_split(m, [Cyc.rational(1)], [Cyc.rational(-1)])
    assert m1.rank == 1 and m2.rank == 1
    # residual check through the gauge
    t = m.gauge_transform(g)
    assert t.action.rows[0][1].is_zero_to_order()
    assert t.action.rows[1][0].is_zero_to_order()


def test_leading_split_already_diagonal_identity_gauge():
    m = conn([[mono(1, -1), zero()], [zero(), mono(-1, -1)]])
    m1, m2, g = leading_split(m, [Cyc.rational(1)], [Cyc.rational(-1)])
    ident = LaurentMatrix.identity_matrix(2, 1)
    assert g.agrees_with(ident)


def test_leading_split_single_jordan_block_rejected():
    m = conn([[mono(1, -1), const(1)], [zero(), mono(1, -1)]])
    with pytest.raises(SpectrumNotSplit):
        leading_split(m, [Cyc.rational(1)], [Cyc.rational(-1)])


# -- formal decomposition ------------------------------------------------------

def test_elementary_model_fixes_sign_convention():
    a11 = LaurentSeries(1, {-1: 1, 0: star(BETA)}, 12)
    a22 = LaurentSeries(1, {-1: -1}, 12)
    m = LambdaConnection(LaurentMatrix.diagonal([a11, a22], 1), 1)
    dec = formal_decompose(m)
    summary = sorted((s.phi.render(), s.rank) for s in dec.summands)
    assert summary == [("-t^-1", 1), ("t^-1", 1)]
    exps = {s.phi.render(): s.regular.action.rows[0][0].coeff(0)
            for s in dec.summands}
    assert exps["-t^-1"] == star(BETA)
    assert exps["t^-1"].is_zero()


def test_nilpotent_leading_two_eigenvalues_after_reduction():
    m = conn([[zero(), const(1)], [mono(1, -2), zero()]])
    dec = formal_decompose(m)
    phis = sorted(p.render() for p in dec.phi_multiset())
    assert phis == ["-t^-1", "t^-1"]
    assert dec.rel_ramification == 1
    assert verify_decomposition(m, dec)["pass"]


def test_regular_input_single_summand():
    m = conn([[const(star(BETA)), const(1)], [zero(), const(star(BETA))]])
    dec = formal_decompose(m)
    assert len(dec.summands) == 1
    assert dec.summands[0].phi.is_zero()
    assert dec.summands[0].regular.pole_order() == 0


def test_fractional_slope_forces_ramification():
    m = conn([[zero(), const(1)], [mono(1, -1), zero()]])
    dec = formal_decompose(m)
    assert dec.rel_ramification == 2
    phis = sorted(p.render() for p in dec.phi_multiset())
    assert phis == ["-2*t_2^-1", "2*t_2^-1"]
    assert verify_decomposition(m, dec)["pass"]


def test_sqrt2_found_by_field_enlargement():
    # X^2 - 2 splits in Q(zeta_8); the engine enlarges on its own
    m = conn([[mono(1, -2), mono(1, -2)], [mono(1, -2), mono(-1, -2)]])
    dec = formal_decompose(m)
    assert len(dec.summands) == 2
    assert verify_decomposition(m, dec)["pass"]


def test_unsupported_extension_reported():
    # leading eigenvalues are roots of X^2 - 5: not in any field we adjoin
    m = conn([[mono(1, -2), mono(2, -2)], [mono(2, -2), mono(-1, -2)]])
    with pytest.raises(UnsupportedAlgebraicExtension) as err:
        formal_decompose(m)
    assert err.value.min_poly is not None


def test_verify_detects_corruption():
    a11 = LaurentSeries(1, {-1: 1}, 12)
    a22 = LaurentSeries(1, {-1: -1}, 12)
    m = LambdaConnection(LaurentMatrix.diagonal([a11, a22], 1), 1)
    dec = formal_decompose(m)
    assert verify_decomposition(m, dec)["pass"]
    bad = dec.gauge.rows[0][1] + LaurentSeries.monomial(1, 2, dec.gauge.q)
    dec.gauge.rows[0][1] = bad
    rep = verify_decomposition(m, dec)
    assert not rep["pass"]
    assert rep["off_diagonal_residual_valuation"] is not None


def test_verify_at_reduced_order_weaker_certificate():
    a11 = LaurentSeries(1, {-1: 1, 0: star(BETA)}, 12)
    a22 = LaurentSeries(1, {-1: -1}, 12)
    m = LambdaConnection(LaurentMatrix.diagonal([a11, a22], 1), 1)
    dec = formal_decompose(m)
    dec.certified_order = 5
    rep = verify_decomposition(m, dec)
    assert rep["pass"] and rep["certified_order"] == 5


def test_phi_multiset_under_further_ramification():
    # pulling back substitutes every phi and multiplies q
    a11 = LaurentSeries(1, {-2: 1, 0: star(BETA)}, 12)
    rank1 = LambdaConnection(LaurentMatrix.diagonal([a11], 1), 1)
    rank2 = conn([[zero(), const(1)], [mono(1, -2, trunc=12), zero()]])
    for m, r in ((rank1, 2), (rank2, 3)):
        dec1 = formal_decompose(m)
        dec2 = formal_decompose(m.ramify_pullback(r))
        substituted = [p.ramify(r) for p in dec1.phi_multiset()]
        assert multiset_equal(dec2.phi_multiset(), substituted)


def test_constance_of_phi_and_q_under_restriction():
    a11 = LaurentSeries(1, {-2: 2, 0: star(BETA)}, 12)
    a22 = LaurentSeries(1, {0: Fraction(1, 2)}, 12)
    model = LambdaConnection(LaurentMatrix.diagonal([a11, a22], 1), 1)
    g = LaurentMatrix([[LaurentSeries(1, {0: 1, 1: 2}, 12),
                        LaurentSeries(1, {1: Fraction(1, 3)}, 12)],
                       [LaurentSeries(1, {2: -1}, 12),
                        LaurentSeries(1, {0: 1, 3: 1}, 12)]], 1)
    m = model.gauge_transform(g)
    dec = formal_decompose(m)
    for lam0 in (1, 0):
        restricted = formal_decompose(m.restrict_lambda(lam0))
        assert restricted.rel_ramification == dec.rel_ramification
        assert multiset_equal(restricted.phi_multiset(), dec.phi_multiset())


def test_slope_zero_length_matches_regular_rank():
    a11 = LaurentSeries(1, {-1: 1}, 12)
    m = LambdaConnection(LaurentMatrix.diagonal(
        [a11, const(star(BETA)), const(1)], 1), 1)
    p = newton_polygon(m)
    dec = formal_decompose(m)
    reg_rank = sum(s.rank for s in dec.summands if s.phi.is_zero())
    assert p.slope_zero_length() == reg_rank == 2
