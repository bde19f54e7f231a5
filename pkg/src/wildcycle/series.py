"""Truncated Laurent series in a ramified coordinate.

A series lives in the coordinate t_q with t = t_q^q; exponents are integers
in t_q-units.  ``trunc`` is the guaranteed order: coefficients of t_q^n for
n >= trunc are unknown.  ``trunc is None`` means the series is an exact
Laurent polynomial (every unlisted coefficient is truly zero).  All
operations propagate the guaranteed order pessimistically; an operation
refuses (raises :class:`InsufficientTruncation`) rather than emit digits it
cannot certify.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyc, lcm
from .errors import InsufficientTruncation, WildcycleError
from .params import ParamScalar

_INF = float("inf")


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("q", "coeffs", "trunc")

    def __init__(self, q: int, coeffs: dict, trunc=None):
        self.q = q
        self.trunc = trunc
        cs = {}
        for n, c in coeffs.items():
            c = ParamScalar.of(c)
            if trunc is not None and n >= trunc:
                continue
            if not c.is_zero():
                cs[n] = c
        self.coeffs = cs

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(q: int = 1, trunc=None) -> "LaurentSeries":
        return LaurentSeries(q, {}, trunc)

    @staticmethod
    def one(q: int = 1, trunc=None) -> "LaurentSeries":
        return LaurentSeries(q, {0: ParamScalar.rational(1)}, trunc)

    @staticmethod
    def monomial(coeff, exponent: int, q: int = 1, trunc=None) -> "LaurentSeries":
        return LaurentSeries(q, {exponent: ParamScalar.of(coeff)}, trunc)

    @staticmethod
    def constant(coeff, q: int = 1) -> "LaurentSeries":
        return LaurentSeries.monomial(coeff, 0, q)

    # -- inspection ------------------------------------------------------
    def is_exact(self) -> bool:
        return self.trunc is None

    def support(self):
        return sorted(self.coeffs)

    def valuation(self):
        """Smallest certified exponent, or None if zero to guaranteed order."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def valuation_bound(self):
        """Lower bound for the valuation including the unknown tail."""
        v = self.valuation()
        if v is None:
            return _INF if self.trunc is None else self.trunc
        return v

    def is_certified_zero(self) -> bool:
        return not self.coeffs and self.trunc is None

    def is_zero_to_order(self) -> bool:
        return not self.coeffs

    def leading(self) -> ParamScalar:
        v = self.valuation()
        if v is None:
            raise WildcycleError("zero series has no leading coefficient")
        return self.coeffs[v]

    def coeff(self, n: int) -> ParamScalar:
        if self.trunc is not None and n >= self.trunc:
            raise InsufficientTruncation(
                f"coefficient of degree {n} is beyond guaranteed order {self.trunc}")
        return self.coeffs.get(n, ParamScalar.rational(0))

    def cyclotomic_order(self) -> int:
        n = 1
        for c in self.coeffs.values():
            for poly in (c.num, c.den):
                for cc in poly.coeffs:
                    n = lcm(n, cc.order)
        return n

    # -- ring operations ---------------------------------------------------
    def _check_q(self, other: "LaurentSeries"):
        if self.q != other.q:
            raise WildcycleError(
                f"ramification mismatch: {self.q} vs {other.q} (ramify first)")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyc, ParamScalar)):
            other = LaurentSeries.constant(other, self.q)
        self._check_q(other)
        t = _min_trunc(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, ParamScalar.rational(0)) + c
        return LaurentSeries(self.q, out, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.q, {n: -c for n, c in self.coeffs.items()},
                             self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyc, ParamScalar)):
            other = LaurentSeries.constant(other, self.q)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc, ParamScalar)):
            c = ParamScalar.of(other)
            return LaurentSeries(
                self.q, {n: v * c for n, v in self.coeffs.items()}, self.trunc)
        self._check_q(other)
        t = None
        if self.trunc is not None or other.trunc is not None:
            t = min(self.trunc + other.valuation_bound()
                    if self.trunc is not None else _INF,
                    other.trunc + self.valuation_bound()
                    if other.trunc is not None else _INF)
            if t == _INF:
                # one factor is zero to its order and kills the unknown tail
                t = None
            else:
                t = int(t)
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                n = a + b
                if t is not None and n >= t:
                    continue
                out[n] = out.get(n, ParamScalar.rational(0)) + x * y
        return LaurentSeries(self.q, out, t)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t_q^k."""
        t = None if self.trunc is None else self.trunc + k
        return LaurentSeries(self.q, {n + k: c for n, c in self.coeffs.items()}, t)

    def invert(self, order: int) -> "LaurentSeries":
        """Inverse, certified to exponent < order (in t_q-units)."""
        v = self.valuation()
        if v is None:
            raise WildcycleError("cannot invert a series that is zero to order")
        if self.trunc is not None:
            avail = self.trunc - 2 * v
            if avail < order:
                raise InsufficientTruncation(
                    f"inversion certified only to order {avail}, need {order}",
                    required=order + 2 * v)
        c0 = self.coeffs[v]
        c0i = c0.inverse()
        # h = c0^-1 t^-v f - 1 has valuation >= 1
        h = (self * c0i).shift(-v) - 1
        h = h.truncate(order)
        out = LaurentSeries.one(self.q, order)
        term = LaurentSeries.one(self.q, order)
        k = 1
        while True:
            term = (term * h).truncate(order)
            if term.is_zero_to_order():
                break
            out = out + (term if k % 2 == 0 else -term)
            k += 1
            if k > order + 2:
                break
        return (out * c0i).shift(-v).truncate(order - v if order is not None else None)

    def truncate(self, order) -> "LaurentSeries":
        if order is None:
            return self
        t = _min_trunc(self.trunc, order)
        return LaurentSeries(self.q, self.coeffs, t)

    def log_derivative(self) -> "LaurentSeries":
        """t_q * d/dt_q, exact on exponents."""
        return LaurentSeries(
            self.q, {n: c * Fraction(n) for n, c in self.coeffs.items()},
            self.trunc)

    # -- coordinate changes ---------------------------------------------------
    def ramify(self, r: int) -> "LaurentSeries":
        """Substitute t_q -> t_{rq}^r; exponents and guaranteed order scale."""
        t = None if self.trunc is None else self.trunc * r
        return LaurentSeries(self.q * r,
                             {n * r: c for n, c in self.coeffs.items()}, t)

    def substitute_root(self, zeta: Cyc) -> "LaurentSeries":
        """Substitute t_q -> zeta * t_q for a root of unity zeta."""
        return LaurentSeries(
            self.q, {n: c * (zeta ** n) for n, c in self.coeffs.items()},
            self.trunc)

    def eval_lambda(self, point) -> "LaurentSeries":
        return LaurentSeries(
            self.q, {n: ParamScalar.of(c.eval(point))
                     for n, c in self.coeffs.items()},
            self.trunc)

    # -- comparison ----------------------------------------------------------
    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality on the common certified window."""
        self._check_q(other)
        t = _min_trunc(self.trunc, other.trunc)
        for n in set(self.coeffs) | set(other.coeffs):
            if t is not None and n >= t:
                continue
            if not (self.coeff(n) == other.coeff(n)):
                return False
        return True

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc, ParamScalar)):
            other = LaurentSeries.constant(other, self.q)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.q == other.q and self.trunc == other.trunc
                and self.agrees_with(other))

    def render(self, tvar: str = "t", lvar: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n in self.support():
            c = self.coeffs[n]
            cs = c.render(lvar)
            needs_parens = ("+" in cs or " " in cs or
                            ("-" in cs[1:]) or cs.startswith("(")) and n != 0
            if cs.startswith("(") and cs.endswith(")"):
                needs_parens = False if n == 0 else needs_parens
            if n == 0:
                parts.append(cs if not needs_parens else f"({cs})")
                continue
            tpow = tvar if n == 1 else f"{tvar}^{n}"
            if cs == "1":
                parts.append(tpow)
            elif cs == "-1":
                parts.append(f"-{tpow}")
            elif needs_parens:
                parts.append(f"({cs})*{tpow}")
            else:
                parts.append(f"{cs}*{tpow}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        tail = "" if self.trunc is None else f" + O(t^{self.trunc})"
        return f"LaurentSeries(q={self.q}, {self.render()}{tail})"


def ramify_series(s: LaurentSeries, r: int) -> LaurentSeries:
    """Module-level alias for the ramification substitution t_q -> t_{rq}^r."""
    if r < 1:
        raise WildcycleError("ramification index must be positive")
    return s.ramify(r)
