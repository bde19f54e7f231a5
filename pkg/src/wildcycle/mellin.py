"""Symbolic model terms of sesquilinear pairings and their Mellin poles.

An expansion term stands for

    coeff * t^k' * tbar^k'' * e^{-z*conj(phi) + phi/z} * |t|^{2 star(beta)/z}
          * L(t)^ell / ell!,          L(t) = |log|t|^2|,

a purely formal object: no distribution is ever realized.  The Mellin
transform s -> <term, |t|^2s chi> against a radial cutoff has, for phi = 0
and k' = k'', exactly one pole, located at s = star(alpha)/z - k' with
alpha = -beta - 1, of order ell + 1 and principal coefficient coeff/2;
for phi != 0 it is entire, and for k' != k'' the angular integral kills it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial

from .connection import ExpFactor
from .cyclotomic import Cyc
from .errors import WildcycleError
from .exponents import ComplexExponent, star
from .params import ParamScalar


@dataclass(frozen=True)
class ExpansionTerm:
    phi: ExpFactor
    beta: ComplexExponent
    ell: int
    kprime: int
    ksecond: int
    coeff: ParamScalar

    def __post_init__(self):
        if self.ell < 0 or self.kprime < 0 or self.ksecond < 0:
            raise WildcycleError("expansion terms have nonnegative exponents")

    def key(self):
        return (self.phi.q, tuple(sorted(self.phi.coeffs.items())),
                self.beta, self.ell, self.kprime, self.ksecond)

    def render(self) -> str:
        parts = []
        c = self.coeff.render()
        if c != "1":
            parts.append(f"({c})" if ("+" in c or " " in c) else c)
        if self.kprime:
            parts.append(f"t^{self.kprime}" if self.kprime > 1 else "t")
        if self.ksecond:
            parts.append(f"tbar^{self.ksecond}" if self.ksecond > 1 else "tbar")
        if not self.phi.is_zero():
            parts.append(f"e^(-z*conj(phi) + phi/z), phi = {self.phi.render()}")
        e = star(self.beta)
        parts.append(f"|t|^(2({e.render()})/z)")
        if self.ell:
            parts.append(f"L^{self.ell}/{self.ell}!")
        return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class MellinPole:
    """Pole of the Mellin transform at s = star(alpha)/z - shift."""

    alpha: ComplexExponent
    shift: int
    order: int

    def location_render(self) -> str:
        loc = f"({star(self.alpha).render()})/z"
        if self.shift:
            loc += f" - {self.shift}"
        return loc

    def location_at(self, lam0) -> Cyc:
        lam = lam0 if isinstance(lam0, Cyc) else Cyc.gaussian(lam0, 0)
        if lam.is_zero():
            raise WildcycleError("pole locations are evaluated at z0 != 0")
        return star(self.alpha).eval(lam) / lam - Cyc.rational(self.shift)

    def as_json(self):
        return {"alpha": self.alpha.render(), "shift": self.shift,
                "order": self.order,
                "location": self.location_render()}


def merge_terms(terms):
    """Combine terms with equal (phi, beta, ell, k', k'') by adding coefficients."""
    out = {}
    for t in terms:
        k = t.key()
        if k in out:
            out[k] = replace(out[k], coeff=out[k].coeff + t.coeff)
        else:
            out[k] = t
    return [t for t in out.values() if not t.coeff.is_zero()]


def expansion_product(term: ExpansionTerm, tpow: int = 0, tbarpow: int = 0,
                      lpow: int = 0, coeff=1) -> ExpansionTerm:
    """Multiply by coeff * t^tpow * tbar^tbarpow * L^lpow.

    The stored L-power carries the 1/ell! normalization, so multiplying by
    L^lpow rescales the coefficient by (ell+lpow)!/ell!.
    """
    new_ell = term.ell + lpow
    scale = Fraction(factorial(new_ell), factorial(term.ell))
    return ExpansionTerm(
        phi=term.phi, beta=term.beta, ell=new_ell,
        kprime=term.kprime + tpow, ksecond=term.ksecond + tbarpow,
        coeff=term.coeff * ParamScalar.of(coeff) * scale)


def mellin_poles(term: ExpansionTerm):
    """Exact pole list of s -> <term, |t|^{2s} chi> for a radial cutoff.

    phi != 0 gives an entire transform; k' != k'' is killed by the angular
    integral; otherwise there is a single pole of order ell + 1 at
    s = star(-beta-1)/z - k'.
    """
    if not term.phi.is_zero():
        return []
    if term.kprime != term.ksecond:
        return []
    if term.coeff.is_zero():
        return []
    alpha = ComplexExponent(-term.beta.beta_re - 1, -term.beta.beta_im)
    return [MellinPole(alpha=alpha, shift=term.kprime, order=term.ell + 1)]


def mellin_poles_merged(terms):
    """Poles of a sum of terms, with exact cancellation detection.

    Each term contributes coeff/2 * (s - s0)^{-(ell+1)}; principal parts at
    a common location are added and the surviving top order reported.
    """
    principal = {}
    for t in merge_terms(terms):
        for pole in mellin_poles(t):
            key = (pole.alpha, pole.shift)
            parts = principal.setdefault(key, {})
            parts[pole.order] = parts.get(pole.order, ParamScalar.rational(0)) \
                + t.coeff * Fraction(1, 2)
    out = []
    for (alpha, shift), parts in principal.items():
        live = [o for o, c in parts.items() if not c.is_zero()]
        if live:
            out.append(MellinPole(alpha=alpha, shift=shift, order=max(live)))
    out.sort(key=lambda p: (p.alpha.beta_re, p.alpha.beta_im, p.shift))
    return out


def apply_log_derivative_minus_star(term: ExpansionTerm):
    """(t eth_t - star(beta)) applied to a phi = 0 term.

    Returns the resulting term list: k'*z times the term, plus -z times the
    term with the logarithm power dropped by one.
    """
    if not term.phi.is_zero():
        raise WildcycleError("the symbolic derivative is kept for phi = 0 terms")
    lam = ParamScalar.lam()
    out = []
    if term.kprime:
        out.append(replace(term, coeff=term.coeff * lam * term.kprime))
    if term.ell >= 1:
        out.append(ExpansionTerm(phi=term.phi, beta=term.beta,
                                 ell=term.ell - 1, kprime=term.kprime,
                                 ksecond=term.ksecond,
                                 coeff=-(term.coeff * lam)))
    return merge_terms(out)


def model_orthonormal_block(beta: ComplexExponent, ell: int):
    """Model pairing terms of an admissible lift of a primitive basis vector.

    The leading diagonal value |t|^{2 star(beta)/z} L^ell / ell!, together
    with the (-z)^ell value reached after ell applications of
    t eth_t - star(beta) when ell >= 1.
    """
    lead = ExpansionTerm(phi=ExpFactor.zero(1), beta=beta, ell=ell,
                         kprime=0, ksecond=0, coeff=ParamScalar.rational(1))
    if ell == 0:
        return [lead]
    derived = ExpansionTerm(phi=ExpFactor.zero(1), beta=beta, ell=0,
                            kprime=0, ksecond=0,
                            coeff=(-ParamScalar.lam()) ** ell)
    return [lead, derived]


@dataclass(frozen=True)
class WeightFactor:
    """One diagonal entry of the rescaling |t|^{beta'+i z beta''} L^{w/2}."""

    beta: ComplexExponent
    weight: int

    def render(self) -> str:
        b1, b2 = self.beta.beta_re, self.beta.beta_im
        base = f"|t|^({b1}" + (f" + {b2}*i*z" if b2 else "") + ")"
        if self.weight == 0:
            return base
        num = Fraction(self.weight, 2)
        return f"{base}*L^({num})"


def weight_matrix(beta: ComplexExponent, weights):
    """Diagonal rescaling factors pairing an admissible basis with its
    untwisted form: |t|^{beta' + i z beta''} L^{H/2} per basis vector."""
    return [WeightFactor(beta=beta, weight=int(w)) for w in weights]
