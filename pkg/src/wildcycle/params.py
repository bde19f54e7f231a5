"""Rational functions in the twistor parameter with cyclotomic coefficients.

``LPoly`` is a dense polynomial in the parameter (written ``z`` in reports);
``ParamScalar`` is a reduced fraction of two such polynomials with monic
denominator.  These scalars are the coefficients of every Laurent series in
the package; denominators appear only through explicit reduction steps and
are tracked, never silently evaluated.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyc, lcm
from .errors import DenominatorVanishes, WildcycleError


def _as_cyc(value) -> Cyc:
    if isinstance(value, Cyc):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyc.rational(value)
    raise TypeError(f"cannot coerce {value!r} to a cyclotomic scalar")


def _lpoly_is_one(p: "LPoly") -> bool:
    if len(p.coeffs) != 1:
        return False
    c = p.coeffs[0]
    return c.is_rational() and c.coeffs[0] == 1


class LPoly:
    """Dense polynomial in the parameter, coefficients in Q(zeta_N)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_as_cyc(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs:
            cs = [Cyc.zero()]
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "LPoly":
        return LPoly([_as_cyc(c)])

    @staticmethod
    def variable() -> "LPoly":
        return LPoly([Cyc.zero(), Cyc.one()])

    def degree(self) -> int:
        """Degree, with the zero polynomial given degree -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def leading(self) -> Cyc:
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else Cyc.zero()
            b = other.coeffs[i] if i < len(other.coeffs) else Cyc.zero()
            out.append(a + b)
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.constant(other)
        out = [Cyc.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "LPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree()
        lead = other.leading()
        if self.degree() < dd:
            return LPoly.constant(0), self
        quo = [Cyc.zero() for _ in range(self.degree() - dd + 1)]
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            if c.is_zero():
                continue
            quo[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] = rem[i - dd + j] - c * other.coeffs[j]
        return LPoly(quo), LPoly(rem[:dd] if dd > 0 else [Cyc.zero()])

    def monic(self) -> "LPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return LPoly([c / lead for c in self.coeffs])

    def gcd(self, other: "LPoly") -> "LPoly":
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        if a.is_zero():
            return LPoly.constant(0)
        return a.monic()

    def derivative(self) -> "LPoly":
        if len(self.coeffs) == 1:
            return LPoly.constant(0)
        return LPoly([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def eval(self, point: Cyc) -> Cyc:
        out = Cyc.zero()
        for c in reversed(self.coeffs):
            out = out * point + c
        return out

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            other = LPoly.constant(other)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def render(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = c.render()
            if k == 0:
                parts.append(cs)
                continue
            power = var if k == 1 else f"{var}^{k}"
            if cs == "1":
                parts.append(power)
            elif cs == "-1":
                parts.append(f"-{power}")
            elif "+" in cs or ("-" in cs[1:]) or " " in cs:
                parts.append(f"({cs})*{power}")
            else:
                parts.append(f"{cs}*{power}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LPoly({self.render()!r})"


class ParamScalar:
    """Reduced fraction of parameter polynomials, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if not isinstance(num, LPoly):
            num = LPoly.constant(num)
        if den is None:
            den = LPoly.constant(1)
        elif not isinstance(den, LPoly):
            den = LPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("parameter scalar with zero denominator")
        if not _lpoly_is_one(den):
            if reduce and not den.is_constant():
                g = num.gcd(den)
                if g.degree() > 0:
                    num, _ = num.divmod(g)
                    den, _ = den.divmod(g)
            if not den.is_constant() or not den.leading() == Cyc.one():
                lead = den.leading()
                num = num * LPoly.constant(lead.inverse())
                den = den * LPoly.constant(lead.inverse())
        self.num = num
        self.den = den

    # -- constructors ----------------------------------------------------
    @staticmethod
    def rational(a) -> "ParamScalar":
        return ParamScalar(LPoly.constant(Fraction(a)))

    @staticmethod
    def of(c) -> "ParamScalar":
        if isinstance(c, ParamScalar):
            return c
        return ParamScalar(LPoly.constant(_as_cyc(c)))

    @staticmethod
    def lam() -> "ParamScalar":
        return ParamScalar(LPoly.variable())

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_cyc(self) -> Cyc:
        if not self.is_constant():
            raise WildcycleError(f"{self.render()} is not parameter-free")
        return self.num.coeffs[0]

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, LPoly):
            return ParamScalar(other)
        return ParamScalar.of(other)

    def __add__(self, other):
        o = self._coerce(other)
        if _lpoly_is_one(self.den) and _lpoly_is_one(o.den):
            return ParamScalar(self.num + o.num, self.den, reduce=False)
        return ParamScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if _lpoly_is_one(self.den) and _lpoly_is_one(o.den):
            return ParamScalar(self.num * o.num, self.den, reduce=False)
        return ParamScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero parameter scalar")
        return ParamScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        out = ParamScalar.rational(1)
        base = self if k >= 0 else ParamScalar.rational(1) / self
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "ParamScalar":
        return ParamScalar.rational(1) / self

    def __eq__(self, other):
        if not isinstance(other, (ParamScalar, LPoly, Cyc, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return (self.num * o.den) == (o.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation -----------------------------------------------------------
    def eval(self, point) -> Cyc:
        point = _as_cyc(point)
        d = self.den.eval(point)
        if d.is_zero():
            raise DenominatorVanishes(
                f"denominator {self.den.render()} vanishes at the requested point")
        return self.num.eval(point) / d

    def render(self, var: str = "z") -> str:
        if self.den.is_constant():
            return self.num.render(var)
        n, d = self.num.render(var), self.den.render(var)
        return f"({n})/({d})"

    def __repr__(self):
        return f"ParamScalar({self.render()!r})"


PS0 = ParamScalar.rational(0)
PS1 = ParamScalar.rational(1)


def ps_lcm_order(*scalars) -> int:
    """lcm of cyclotomic orders appearing in the given scalars."""
    n = 1
    for s in scalars:
        for poly in (s.num, s.den):
            for c in poly.coeffs:
                n = lcm(n, c.order)
    return n
