"""Formal decomposition of lambda-connections at the origin.

The engine produces M = (+)_j E^{phi_j/z} (x) R_j after a minimal
ramification, together with the gauge into the decomposed frame.  The
recursion works on the matrix pole order k: while k >= 1 it either splits
along a coprime factorization of the leading spectrum (order-by-order
Sylvester equations), peels a single nonzero leading eigenvalue c into the
exponential factor -(c/k) u^{-k}, or, when the leading matrix is nilpotent,
re-presents the module in a lattice saturated at the true maximal slope
(the effective form of replacing u d/du with u^k (u d/du)).  Fractional
slopes restart the whole computation at a finer ramification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .connection import ExpFactor, LambdaConnection
from .cyclotomic import Cyc, lcm, totient
from .errors import (InsufficientTruncation, InternalInvariantError,
                     NonTerminating, SpectrumNotSplit,
                     UnsupportedAlgebraicExtension, WildcycleError)
from .matrices import (LaurentMatrix, charpoly, const_kernel, const_solve,
                       identity, mat_mul)
from .params import LPoly, ParamScalar, PS0, PS1
from .reduction import (NeedRamification, charpoly_slopes, max_slope,
                        operator_slopes, saturate_lattice)
from .roots import roots_in_field
from .series import LaurentSeries


@dataclass(frozen=True)
class NewtonPolygon:
    """Slope multiset of a connection germ, sorted increasing."""

    slopes: tuple

    @staticmethod
    def of(pairs) -> "NewtonPolygon":
        return NewtonPolygon(tuple((Fraction(s), int(m)) for s, m in sorted(pairs)))

    def rank(self) -> int:
        return sum(m for _, m in self.slopes)

    def slope_zero_length(self) -> int:
        for s, m in self.slopes:
            if s == 0:
                return m
        return 0

    def ramification(self) -> int:
        r = 1
        for s, _ in self.slopes:
            r = r * s.denominator // gcd(r, s.denominator)
        return r

    def is_regular(self) -> bool:
        return all(s == 0 for s, _ in self.slopes)

    def as_json(self):
        return [[str(s), m] for s, m in self.slopes]


@dataclass
class Summand:
    phi: ExpFactor
    regular: LambdaConnection

    @property
    def rank(self) -> int:
        return self.regular.rank


@dataclass
class FormalDecomposition:
    summands: list
    gauge: LaurentMatrix
    q_input: int
    rel_ramification: int
    certified_order: object = None

    @property
    def q_used(self) -> int:
        """Absolute ramification level of the summands over the base."""
        return self.q_input * self.rel_ramification

    def phi_multiset(self):
        return [s.phi for s in self.summands]

    def total_rank(self) -> int:
        return sum(s.rank for s in self.summands)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def newton_polygon(conn: LambdaConnection, lambda0=None, order=None) -> NewtonPolygon:
    """Slope polygon of the module (its own coordinate), minimal q included.

    For a fixed parameter value 0 the characteristic polynomial of the Higgs
    action gives the exact polygon; otherwise the basis-independent polygon
    of the minimal operator of a cyclic vector is used.
    """
    m = conn
    if lambda0 is not None and conn.is_family:
        m = conn.restrict_lambda(lambda0)
    if order is None:
        order = default_truncation(m)
    if m.is_higgs:
        return NewtonPolygon.of(charpoly_slopes(m))
    return NewtonPolygon.of(operator_slopes(m, order))


def shear(conn: LambdaConnection, indices, power: int):
    """Gauge by the partial rescaling diag(..., t^power on indices, ...)."""
    n = conn.rank
    idx = set(indices)
    entries = [LaurentSeries.monomial(1, power if i in idx else 0, conn.q)
               for i in range(n)]
    g = LaurentMatrix.diagonal(entries, conn.q)
    return conn.gauge_transform(g), g


def leading_split(conn: LambdaConnection, group1, group2, order=None):
    """Split along a caller-supplied partition of the leading spectrum.

    ``group1``/``group2`` are disjoint nonempty lists of eigenvalues lying
    in the coefficient field; returns (M1, M2, gauge).
    """
    k = conn.pole_order()
    if k < 1:
        raise WildcycleError("leading_split needs a pole of order >= 1")
    if order is None:
        order = default_truncation(conn)
    cp = _leading_charpoly(conn)
    norder = _field_order(conn, cp)
    roots, nonsplit = roots_in_field(cp, norder)
    if nonsplit:
        raise UnsupportedAlgebraicExtension(
            "leading spectrum does not split over the coefficient field",
            min_poly=nonsplit[0][0].render("X"))
    g1 = [c if isinstance(c, Cyc) else Cyc.rational(c) for c in group1]
    g2 = [c if isinstance(c, Cyc) else Cyc.rational(c) for c in group2]
    if not g1 or not g2 or any(a == b for a in g1 for b in g2):
        raise SpectrumNotSplit("eigenvalue groups must be disjoint and nonempty")
    root_list = [r for r, _ in roots]
    if len(root_list) < 2:
        raise SpectrumNotSplit("leading matrix has a single eigenvalue")
    p1 = LPoly.constant(Cyc.one(norder))
    p2 = LPoly.constant(Cyc.one(norder))
    for r, mult in roots:
        lin = LPoly([-r, Cyc.one(norder)])
        target = None
        if any(r == c for c in g1):
            target = 1
        elif any(r == c for c in g2):
            target = 2
        else:
            raise SpectrumNotSplit(f"eigenvalue {r.render()} not covered by the partition")
        for _ in range(mult):
            if target == 1:
                p1 = p1 * lin
            else:
                p2 = p2 * lin
    if p1.degree() == 0 or p2.degree() == 0:
        raise SpectrumNotSplit("one eigenvalue group is empty on this matrix")
    m1, m2, g = _sylvester_split(conn, p1, p2, order)
    return m1, m2, g


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------


@dataclass
class _Ctx:
    order: int
    field_order: int
    steps: int = 0
    budget: int = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise NonTerminating(
                "decomposition exceeded its internal step bound (bug)")


def default_truncation(conn: LambdaConnection) -> int:
    t = conn.guaranteed_order
    if t is not None:
        return t
    return 8 * conn.rank * max(1, conn.pole_order()) * conn.q


def required_truncation(rank: int, pole: int, q: int, target: int) -> int:
    """A priori sufficient input truncation for a certified decomposition."""
    return target + q * (rank + 1) * (pole + 2) + 4


def formal_decompose(conn: LambdaConnection, order=None) -> FormalDecomposition:
    """Full formal decomposition with certified gauge.

    Restarts at a finer ramification whenever a fractional slope appears;
    the final relative ramification is the lcm of all slope denominators
    met along the recursion, which is the minimal one.
    """
    if order is None:
        order = default_truncation(conn)
    rel = 1
    base_field = lcm(conn.cyclotomic_order(), 4)
    for _ in range(10):
        m = conn.ramify_pullback(rel)
        ctx = _Ctx(order=order * rel,
                   field_order=lcm(base_field, m.q),
                   budget=64 * (conn.rank + 2) * (conn.pole_order() + 2) * rel + 256)
        try:
            leaves, gauge = _decompose_rec(m, ExpFactor.zero(m.q), ctx)
        except NeedRamification as need:
            rel *= need.index
            if rel > 64:
                raise NonTerminating("ramification requirement did not settle")
            continue
        return _assemble(conn, leaves, gauge, rel, ctx)
    raise NonTerminating("too many ramification restarts")


def _assemble(conn, leaves, gauge, rel, ctx) -> FormalDecomposition:
    # canonical order: pole order of phi, then coefficient key, then rank
    common = ctx.field_order
    for phi, _ in leaves:
        common = lcm(common, phi.cyclotomic_order())
    keyed = []
    pos = 0
    for phi, reg in leaves:
        keyed.append((phi.sort_key(common), pos, phi, reg))
        pos += reg.rank
    keyed.sort(key=lambda item: (item[0], item[1]))
    n = sum(item[3].rank for item in keyed)
    perm_cols = []
    for _, start, _, reg in keyed:
        perm_cols.extend(range(start, start + reg.rank))
    permuted = LaurentMatrix(
        [[gauge.rows[i][j] for j in perm_cols] for i in range(n)], gauge.q)
    summands = [Summand(phi=item[2], regular=item[3]) for item in keyed]
    cert = permuted.trunc()
    for s in summands:
        t = s.regular.guaranteed_order
        if t is not None:
            cert = t if cert is None else min(cert, t)
    return FormalDecomposition(summands=summands, gauge=permuted,
                               q_input=conn.q, rel_ramification=rel,
                               certified_order=cert)


def _leading_charpoly(conn: LambdaConnection) -> LPoly:
    a0 = conn.leading_matrix()
    cp = charpoly(a0, PS1, PS0)
    consts = []
    for c in cp:
        if not c.is_constant():
            raise UnsupportedAlgebraicExtension(
                "leading spectrum depends on the parameter; "
                "input is not strictly specializable in the operative sense",
                min_poly=" + ".join(f"({x.render()})*X^{k}"
                                    for k, x in enumerate(cp)))
        consts.append(c.as_cyc())
    return LPoly(consts)


def _field_order(conn: LambdaConnection, cp: LPoly) -> int:
    n = lcm(conn.cyclotomic_order(), 4)
    for c in cp.coeffs:
        n = lcm(n, c.order)
    return n


def _roots_with_enlargement(cp: LPoly, conn: LambdaConnection, ctx: _Ctx):
    roots, nonsplit = roots_in_field(cp, ctx.field_order)
    if roots or not nonsplit:
        return roots, nonsplit
    # no eigenvalue at all in the current field: try adjoining roots of unity
    candidates = []
    for mult in (conn.q, 2 * conn.q, 3 * conn.q, 4 * conn.q, 8, 12):
        cand = lcm(ctx.field_order, mult)
        if cand != ctx.field_order and totient(cand) <= 64:
            candidates.append(cand)
    for cand in sorted(set(candidates)):
        roots2, nonsplit2 = roots_in_field(cp, cand)
        if roots2:
            ctx.field_order = cand
            return roots2, nonsplit2
    return roots, nonsplit


def _decompose_rec(m: LambdaConnection, phi_acc: ExpFactor, ctx: _Ctx):
    """Returns (leaves, gauge): leaves are (phi, regular) in block order."""
    gauges = []
    while True:
        ctx.tick()
        k = m.pole_order()
        if k == 0:
            return [(phi_acc, m)], _compose_gauges(gauges, m.rank, m.q)
        cp = _leading_charpoly(m)
        roots, nonsplit = _roots_with_enlargement(cp, m, ctx)
        nilpotent = (len(roots) == 1 and roots[0][0].is_zero()
                     and not nonsplit)
        if nilpotent or (not roots and not nonsplit):
            s = max_slope(m, ctx.order)
            if s.denominator > 1:
                raise NeedRamification(s.denominator)
            s = int(s)
            if s >= k:
                raise InternalInvariantError(
                    "nilpotent leading matrix at the maximal slope")
            w = saturate_lattice(m, s, ctx.order)
            m = m.gauge_transform(w)
            if m.pole_order() > max(s, 0):
                raise InsufficientTruncation(
                    "slope reduction could not be certified at this truncation",
                    required=required_truncation(m.rank, k, m.q, ctx.order))
            gauges.append(w)
            continue
        if not roots and nonsplit:
            raise UnsupportedAlgebraicExtension(
                "leading eigenvalues lie outside the cyclotomic field",
                min_poly=nonsplit[0][0].render("X"))
        if len(roots) == 1 and not nonsplit:
            c, mult = roots[0]
            # single nonzero eigenvalue: peel it into the exponential factor
            phi_inc = ExpFactor(m.q, {k: c / Fraction(-k)})
            m = m.twist_exponential(phi_inc, sign=-1)
            phi_acc = phi_acc + phi_inc
            continue
        # several eigenvalue groups: split the first root off the rest
        c0 = roots[0][0]
        norder = ctx.field_order
        p1 = LPoly([-c0.lift(norder), Cyc.one(norder)])
        p1 = _power(p1, roots[0][1])
        p2, rem = LPoly([c.lift(norder) for c in cp.coeffs]).divmod(p1)
        if not rem.is_zero():
            raise InternalInvariantError("characteristic polynomial division failed")
        m1, m2, g = _sylvester_split(m, p1, p2, ctx.order)
        gauges.append(g)
        leaves1, g1 = _decompose_rec(m1, phi_acc, ctx)
        leaves2, g2 = _decompose_rec(m2, phi_acc, ctx)
        total = _compose_gauges(gauges, m.rank, m.q)
        return leaves1 + leaves2, total * _blockdiag([g1, g2], m.q)


def _power(p: LPoly, e: int) -> LPoly:
    out = LPoly.constant(Cyc.one())
    for _ in range(e):
        out = out * p
    return out


def _compose_gauges(gauges, n, q) -> LaurentMatrix:
    total = LaurentMatrix.identity_matrix(n, q)
    for g in gauges:
        total = total * g
    return total


def _blockdiag(mats, q) -> LaurentMatrix:
    n = sum(m.nrows for m in mats)
    zero = LaurentSeries.zero(q)
    rows = [[zero for _ in range(n)] for _ in range(n)]
    off = 0
    for m in mats:
        for i in range(m.nrows):
            for j in range(m.ncols):
                rows[off + i][off + j] = m.rows[i][j]
        off += m.nrows
    return LaurentMatrix(rows, q)


def _sylvester_split(m: LambdaConnection, p1: LPoly, p2: LPoly, order: int):
    """Block-diagonalize along a coprime factorization of the leading matrix.

    Order-by-order: at t-order i the off-diagonal correction G_i solves
    Sylvester equations against the two leading blocks, whose spectra are
    disjoint by coprimality; the parameter-derivative feeds back the term
    z*(i-k)*G_{i-k}.
    """
    n = m.rank
    k = m.pole_order()
    a0 = m.leading_matrix()
    b1 = _kernel_basis(a0, p1)
    b2 = _kernel_basis(a0, p2)
    if len(b1) + len(b2) != n or not b1 or not b2:
        raise InternalInvariantError("leading kernels do not span")
    n1 = len(b1)
    s_rows = [[(b1 + b2)[j][i] for j in range(n)] for i in range(n)]
    s_const = LaurentMatrix.from_constant(s_rows, m.q)
    mc = m.gauge_transform(s_const, order=order)
    t_in = mc.guaranteed_order
    t_sylv = (t_in + k) if t_in is not None else (order + k)
    lam = m.lambda_factor()

    a_coeff = [mc.action.coefficient_matrix(i - k) for i in range(t_sylv)]
    for i in range(n):
        for j in range(n):
            if (i < n1) != (j < n1) and not a_coeff[0][i][j].is_zero():
                raise InternalInvariantError(
                    "leading matrix not block-diagonal after kernel gauge")
    blk1 = [[a_coeff[0][i][j] for j in range(n1)] for i in range(n1)]
    blk2 = [[a_coeff[0][i][j] for j in range(n1, n)] for i in range(n1, n)]
    syl12 = _sylvester_operator(blk1, blk2)
    syl21 = _sylvester_operator(blk2, blk1)

    g_parts = {0: identity(n, PS1, PS0)}
    new_parts = {0: a_coeff[0]}
    for i in range(1, t_sylv):
        known = [row[:] for row in a_coeff[i]]
        if i - k >= 1 and (i - k) in g_parts:
            f = lam * Fraction(i - k)
            gpart = g_parts[i - k]
            for r in range(n):
                for c in range(n):
                    known[r][c] = known[r][c] + f * gpart[r][c]
        for j in range(1, i):
            gj = g_parts.get(j)
            if gj is None:
                continue
            t1 = mat_mul(gj, new_parts[i - j])
            t2 = mat_mul(a_coeff[i - j], gj)
            for r in range(n):
                for c in range(n):
                    known[r][c] = known[r][c] - t1[r][c] + t2[r][c]
        # diagonal blocks of the new matrix; off-diagonal goes to G_i
        new_i = [[PS0 for _ in range(n)] for _ in range(n)]
        for r in range(n):
            for c in range(n):
                if (r < n1) == (c < n1):
                    new_i[r][c] = known[r][c]
        k12 = [[known[r][c] for c in range(n1, n)] for r in range(n1)]
        k21 = [[known[r][c] for c in range(n1)] for r in range(n1, n)]
        g12 = _solve_sylvester(syl12, k12, n1, n - n1)
        g21 = _solve_sylvester(syl21, k21, n - n1, n1)
        gi = [[PS0 for _ in range(n)] for _ in range(n)]
        for r in range(n1):
            for c in range(n - n1):
                gi[r][n1 + c] = g12[r][c]
        for r in range(n - n1):
            for c in range(n1):
                gi[n1 + r][c] = g21[r][c]
        if any(not x.is_zero() for row in gi for x in row):
            g_parts[i] = gi
        new_parts[i] = new_i

    g_series = _series_from_parts(g_parts, 0, m.q, t_sylv)
    new_series = _series_from_parts(new_parts, -k, m.q, t_sylv)
    m1 = LambdaConnection(LaurentMatrix(
        [[new_series.rows[i][j] for j in range(n1)] for i in range(n1)], m.q),
        m.q, m.lambda0)
    m2 = LambdaConnection(LaurentMatrix(
        [[new_series.rows[i][j] for j in range(n1, n)] for i in range(n1, n)],
        m.q), m.q, m.lambda0)
    gauge = s_const * g_series
    return m1, m2, gauge


def _series_from_parts(parts, base_exp, q, index_end):
    """Assemble sum_i parts[i] t^(i+base_exp), certified below index_end."""
    items = sorted(parts.items())
    n = len(next(iter(parts.values())))
    w = len(next(iter(parts.values()))[0])
    trunc = None if index_end is None else index_end + base_exp
    rows = []
    for i in range(n):
        row = []
        for j in range(w):
            coeffs = {}
            for idx, mat in items:
                c = mat[i][j]
                if not c.is_zero():
                    coeffs[idx + base_exp] = c
            row.append(LaurentSeries(q, coeffs, trunc))
        rows.append(row)
    return LaurentMatrix(rows, q)


def _kernel_basis(a0, p: LPoly):
    """Basis of ker p(A0) over the parameter-rational field."""
    n = len(a0)
    acc = identity(n, PS1, PS0)
    val = [[PS0 for _ in range(n)] for _ in range(n)]
    for c in p.coeffs:
        cc = ParamScalar.of(c)
        for i in range(n):
            for j in range(n):
                val[i][j] = val[i][j] + acc[i][j] * cc
        acc = mat_mul(a0, acc)
    return const_kernel(val, PS1, PS0)


def _sylvester_operator(b1, b2):
    """Matrix of X -> X*B2 - B1*X on n1 x n2 matrices (row-major vec)."""
    n1, n2 = len(b1), len(b2)
    dim = n1 * n2
    rows = []
    for i in range(n1):
        for j in range(n2):
            row = [PS0] * dim
            for l in range(n2):
                row[i * n2 + l] = row[i * n2 + l] + b2[l][j]
            for l in range(n1):
                row[l * n2 + j] = row[l * n2 + j] - b1[i][l]
            rows.append(row)
    return rows


def _solve_sylvester(op, rhs, n1, n2):
    vec = [[rhs[i][j]] for i in range(n1) for j in range(n2)]
    sol = const_solve(op, vec, PS1, PS0)
    return [[sol[i * n2 + j][0] for j in range(n2)] for i in range(n1)]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_decomposition(conn: LambdaConnection, dec: FormalDecomposition) -> dict:
    """Recompute the gauge-transformed matrix and measure the residuals."""
    m = conn.ramify_pullback(dec.rel_ramification)
    order = dec.certified_order
    transformed = m.gauge_transform(dec.gauge, order=order)
    n = transformed.rank
    expected_blocks = []
    for s in dec.summands:
        block = s.regular.twist_exponential(s.phi, sign=1)
        expected_blocks.append(block.action)
    expected = _blockdiag(expected_blocks, m.q)
    diff = transformed.action - expected
    off_residual = None
    diag_residual = None
    starts = []
    off = 0
    for s in dec.summands:
        starts.append((off, off + s.rank))
        off += s.rank
    def block_of(i):
        for bi, (a, b) in enumerate(starts):
            if a <= i < b:
                return bi
        return -1
    ok = True
    for i in range(n):
        for j in range(n):
            v = diff.rows[i][j].valuation()
            if v is None:
                continue
            if block_of(i) != block_of(j):
                off_residual = v if off_residual is None else min(off_residual, v)
            else:
                diag_residual = v if diag_residual is None else min(diag_residual, v)
            ok = False
    regular_ok = all(s.regular.pole_order() == 0 for s in dec.summands)
    rank_ok = dec.total_rank() == conn.rank
    passed = ok and regular_ok and rank_ok
    return {
        "pass": passed,
        "certified_order": order,
        "off_diagonal_residual_valuation": off_residual,
        "diagonal_residual_valuation": diag_residual,
        "regular_summands_pole_free": regular_ok,
        "rank_conserved": rank_ok,
    }
