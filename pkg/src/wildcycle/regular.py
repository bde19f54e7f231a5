"""Analysis of regular summands: constant models and nearby-cycle data.

A regular module (matrix pole order zero) is reduced to a constant matrix
R(z) in three moves tied to a rational model point z0 (default 1):

* a constant conjugation splits the residue into generalized eigenblocks,
  one per eigenvalue function; functions are recognized in the shape
  e(z) = star(beta + j) + m*z with integer j (exponent shift) and m
  (lattice position: multiplying a section by t adds z, not 1);
* every t-order >= 1 is eliminated order by order, except entries whose
  obstruction e_row - e_col + order*z vanishes at z0 -- those are the
  resonant couplings and stay;
* partial t-rescalings align each resonance class (values congruent modulo
  z0*Z) to a common value at z0.  The kept couplings land exactly at t^0
  under these shears, so the result is constant.

Surviving couplings inside a class are the nilpotent data of the nearby
cycles at z0; the monodromy weight filtration is read off Jordan chains and
cross-checked against the closed kernel/image formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connection import LambdaConnection
from .cyclotomic import Cyc, lcm
from .errors import (DenominatorVanishes, InternalInvariantError,
                     NotStarShaped, UnsupportedAlgebraicExtension,
                     WildcycleError)
from .exponents import ComplexExponent, ell, exponent_from_eigenvalue, star
from .matrices import (LaurentMatrix, charpoly, const_kernel, const_rank,
                       identity, mat_mul, nilpotent_jordan_chains)
from .params import LPoly, ParamScalar, PS0, PS1
from .reduction import charpoly_slopes, saturate_lattice
from .roots import roots_in_field
from .series import LaurentSeries


# ---------------------------------------------------------------------------
# polynomials in X over ParamScalar (residue spectra)
# ---------------------------------------------------------------------------


def _psx_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if all(x.is_zero() for x in num):
        return [PS0], [PS0]
    quo = [PS0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] / lead
        if not c.is_zero():
            quo[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] = num[i - dd + j] - c * den[j]
    while len(num) > 1 and num[-1].is_zero():
        num.pop()
    return quo, num


def set_dedup(items):
    out = []
    for x in items:
        if not any(x == y for y in out):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# eigenvalue functions of a residue matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenLabel:
    """An eigenvalue function star(beta + offset) + lattice*z.

    ``lattice`` may be fractional: a section in a q-th-root lattice position
    shifts the eigenvalue by z/q.  The exponent class absorbs the shift,
    since a t^m-move changes the classical exponent at any fixed z0 by m.
    """

    beta: ComplexExponent        # normalized star part
    offset: int                  # j: integer shift of the star part
    lattice: Fraction            # m: coefficient of the linear z-term

    def function(self) -> ParamScalar:
        return star(self.beta + self.offset) + ParamScalar.lam() * self.lattice

    def value_at(self, lam0: Cyc) -> Cyc:
        return self.function().eval(lam0)

    def level(self) -> Fraction:
        return self.offset + self.lattice

    def cls(self) -> ComplexExponent:
        """The normalized exponent class carried by this label."""
        return (self.beta + self.offset + self.lattice).normalized()

    def render(self) -> str:
        return self.function().render()


def residue_spectrum(r0, norder: int):
    """Eigenvalue functions of a constant ParamScalar matrix.

    Candidates come from interpolating exact root sets at z = 0, 1, 2 and
    are verified by exact division of the characteristic polynomial.
    Returns a list of (EigenLabel, multiplicity).
    """
    cp = charpoly(r0, PS1, PS0)
    remaining = list(cp)
    found = []
    points = [Cyc.rational(0), Cyc.rational(1), Cyc.rational(2)]
    while len(remaining) > 1:
        root_sets = []
        for pt in points:
            coeffs = [c.eval(pt) for c in remaining]
            roots, nonsplit = roots_in_field(LPoly(coeffs), norder)
            if nonsplit:
                raise UnsupportedAlgebraicExtension(
                    "residue eigenvalues leave the cyclotomic field",
                    min_poly=nonsplit[0][0].render("X"))
            root_sets.append(set_dedup([r for r, _ in roots]))
        hit = None
        for r0_ in root_sets[0]:
            for r1_ in root_sets[1]:
                for r2_ in root_sets[2]:
                    cand = _interp_quadratic(r0_, r1_, r2_)
                    quo, rem = _psx_divmod(remaining, [-cand, PS1])
                    if all(x.is_zero() for x in rem):
                        hit = (cand, quo)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            raise NotStarShaped(
                "residue eigenvalue is not of the twisted quadratic shape")
        cand, remaining = hit
        mult = 1
        while len(remaining) > 1:
            quo, rem = _psx_divmod(remaining, [-cand, PS1])
            if all(x.is_zero() for x in rem):
                mult += 1
                remaining = quo
            else:
                break
        beta_shifted, shift = exponent_from_eigenvalue(cand, allow_shift=True)
        norm = beta_shifted.normalized()
        offset = beta_shifted.beta_re - norm.beta_re
        found.append((EigenLabel(norm, int(offset), Fraction(shift)), mult))
    return found


def _interp_quadratic(v0: Cyc, v1: Cyc, v2: Cyc) -> ParamScalar:
    a = v0
    c = (v2 - v1 * 2 + v0) / 2
    b = v1 - v0 - c
    return ParamScalar(LPoly([a, b, c]))


# ---------------------------------------------------------------------------
# the constant model
# ---------------------------------------------------------------------------


@dataclass
class ModelBlock:
    label: EigenLabel
    size: int
    start: int
    sheared_by: int = 0

    def final_function(self) -> ParamScalar:
        return self.label.function() + ParamScalar.lam() * self.sheared_by


@dataclass
class RegularModel:
    """Constant model R(z) of a regular module at the point z0."""

    matrix: list                 # n x n ParamScalar rows, constant in t
    blocks: list                 # ModelBlock in frame order
    lambda0: Cyc
    gauge: LaurentMatrix
    denominators: list           # rendered elimination obstructions inverted

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def classes(self):
        betas = set_dedup([b.label.cls() for b in self.blocks])
        betas.sort(key=lambda b: (ell(b, self.lambda0), b.beta_re, b.beta_im))
        return betas

    def exponents_with_multiplicity(self):
        out = []
        for beta in self.classes():
            dim = sum(b.size for b in self.blocks if b.label.cls() == beta)
            out.append((beta, dim))
        return out


@dataclass
class NearbyCycleDatum:
    """Per-exponent nearby-cycle data with monodromy weight tables."""

    beta: ComplexExponent
    dim: int
    nilpotent: list              # dim x dim Cyc rows, nilpotent
    weight_dims: dict            # level -> dim gr^M_level
    primitive_dims: dict         # level >= 0 -> dim P gr^M_level
    phi: object = None

    def jordan_type(self):
        return tuple(sorted((l + 1 for l, d in self.primitive_dims.items()
                             for _ in range(d)), reverse=True))

    def total_weight_dim(self) -> int:
        return sum(self.weight_dims.values())


def reduce_to_constant(conn: LambdaConnection, lambda0=1, order=None) -> RegularModel:
    """Bring a regular module to its constant model at z0 != 0."""
    lam0 = lambda0 if isinstance(lambda0, Cyc) else Cyc.gaussian(lambda0, 0)
    if lam0.is_zero():
        raise WildcycleError(
            "constant models are computed at z0 != 0; "
            "use the V0-lattice invariants on the Higgs side")
    if order is None:
        order = conn.guaranteed_order
        if order is None:
            order = 8 * max(1, conn.rank)
    m = conn
    gauges = []
    if m.pole_order() > 0:
        w = saturate_lattice(m, 0, order)
        m = m.gauge_transform(w)
        if m.pole_order() > 0:
            raise WildcycleError("module is not regular (pole persists)")
        gauges.append(w)
    n = m.rank
    norder = lcm(m.cyclotomic_order(), lcm(4, lam0.order))
    r0 = m.action.coefficient_matrix(0)
    spectrum = residue_spectrum(r0, norder)
    class_of = _resonance_classes(spectrum, lam0)
    ordered = sorted(
        range(len(spectrum)),
        key=lambda i: (class_of[i], -spectrum[i][0].level(),
                       spectrum[i][0].beta.beta_re, spectrum[i][0].beta.beta_im,
                       spectrum[i][0].offset, spectrum[i][0].lattice))
    labels = [spectrum[i] for i in ordered]
    flag, denominators = _eigen_flag(r0, labels, n)
    s_const = LaurentMatrix.from_constant(flag, m.q)
    m = m.gauge_transform(s_const, order=order)
    gauges.append(s_const)
    blocks = []
    pos = 0
    for label, mult in labels:
        blocks.append(ModelBlock(label=label, size=mult, start=pos))
        pos += mult
    # eliminate all non-resonant t-orders in the unaligned frame
    m, g_elim, elim_denoms = _eliminate_orders(m, blocks, lam0, order)
    gauges.append(g_elim)
    denominators.extend(elim_denoms)
    # alignment shears: same-class values become equal at z0, and the kept
    # resonant couplings land exactly at t^0
    cls_sorted = [class_of[i] for i in ordered]
    shear_powers = _alignment_shears(blocks, cls_sorted, lam0)
    if any(shear_powers):
        entries = []
        for b, s in zip(blocks, shear_powers):
            b.sheared_by = s
            entries.extend(LaurentSeries.monomial(1, s, m.q)
                           for _ in range(b.size))
        g = LaurentMatrix.diagonal(entries, m.q)
        m = m.gauge_transform(g, order=order)
        gauges.append(g)
    const = m.action.coefficient_matrix(0)
    for row in m.action.rows:
        for x in row:
            v = x.valuation()
            if v is not None and v != 0:
                raise InternalInvariantError(
                    "model failed to become constant after shearing")
    total = LaurentMatrix.identity_matrix(n, conn.q)
    for g in gauges:
        total = total * g
    model = RegularModel(matrix=const, blocks=blocks, lambda0=lam0,
                         gauge=total,
                         denominators=sorted(set(
                             d.render() for d in denominators
                             if not d.is_constant())))
    _check_model_gauge(model, lam0)
    return model


def _check_model_gauge(model: RegularModel, lam0: Cyc):
    try:
        for row in model.gauge.rows:
            for x in row:
                for c in x.coeffs.values():
                    c.eval(lam0)
    except DenominatorVanishes as exc:
        raise InternalInvariantError(
            f"model gauge is singular at the model point: {exc}") from exc


def _resonance_classes(spectrum, lam0: Cyc):
    """Indices grouped by value congruence modulo z0 * Z."""
    class_of = {}
    reps = []
    for i, (label, _) in enumerate(spectrum):
        v = label.value_at(lam0)
        assigned = None
        for ci, rep in enumerate(reps):
            ratio = (v - rep) / lam0
            if ratio.is_rational() and ratio.as_fraction().denominator == 1:
                assigned = ci
                break
        if assigned is None:
            reps.append(v)
            assigned = len(reps) - 1
        class_of[i] = assigned
    return class_of


def _alignment_shears(blocks, classes, lam0: Cyc):
    """Integer t-powers equalizing same-class values at z0.

    A t^sigma-rescale moves a value by sigma*z0, so sigma is the value gap
    divided by z0 -- an integer by the definition of the resonance classes.
    """
    shears = []
    target = {}
    for b, ci in zip(blocks, classes):
        value = b.label.value_at(lam0)
        if ci not in target:
            target[ci] = value
        step = (target[ci] - value) / lam0
        if not step.is_rational() or step.as_fraction().denominator != 1:
            raise InternalInvariantError(
                "resonance class members differ by a non-integral gap")
        shears.append(int(step.as_fraction()))
    return shears


def _eigen_flag(r0, ordered_labels, n):
    """Basis columns adapted to generalized eigenspaces, in the given order.

    Within each eigenspace the basis follows the kernel filtration
    ker(R-e) in ker(R-e)^2 in ..., so the nilpotent part of the block is
    strictly triangular; the order-by-order eliminations rely on that.
    """
    cols = []
    denominators = []
    for label, mult in ordered_labels:
        e = label.function()
        shifted = [[r0[i][j] - (e if i == j else PS0) for j in range(n)]
                   for i in range(n)]
        block_cols = []
        power = identity(n, PS1, PS0)
        for _ in range(n):
            power = mat_mul(power, shifted)
            kern = const_kernel(power, PS1, PS0)
            for vec in kern:
                if _extends_independently(block_cols, vec, n):
                    block_cols.append(vec)
            if len(block_cols) >= mult:
                break
        if len(block_cols) != mult:
            raise InternalInvariantError(
                "generalized eigenspace has unexpected dimension")
        cols.extend(block_cols)
    if len(cols) != n:
        raise InternalInvariantError("eigen flag does not span")
    return [[cols[j][i] for j in range(n)] for i in range(n)], denominators


def _extends_independently(cols, vec, n):
    trial = cols + [vec]
    matrix = [[trial[j][i] for j in range(len(trial))] for i in range(n)]
    return const_rank(matrix) == len(trial)


def _eliminate_orders(m: LambdaConnection, blocks, lam0: Cyc, order: int):
    """Remove every t-order >= 1 entry with z0-invertible obstruction."""
    n = m.rank
    lam = m.lambda_factor()
    t_in = m.guaranteed_order
    horizon = t_in if t_in is not None else order
    funcs = []
    for b in blocks:
        for _ in range(b.size):
            funcs.append(b.label.function())
    r0 = m.action.coefficient_matrix(0)
    nil = [[r0[i][j] - (funcs[i] if i == j else PS0) for j in range(n)]
           for i in range(n)]
    a_parts = {idx: m.action.coefficient_matrix(idx) for idx in range(horizon)}
    g_parts = {0: identity(n, PS1, PS0)}
    new_parts = {0: r0}
    denominators = []
    for mt in range(1, horizon):
        known = [row[:] for row in a_parts.get(mt, _zero_mat(n))]
        for j in range(1, mt):
            gj = g_parts.get(j)
            if gj is not None:
                t1 = mat_mul(gj, new_parts[mt - j])
                t2 = mat_mul(a_parts.get(mt - j, _zero_mat(n)), gj)
                for r in range(n):
                    for c in range(n):
                        known[r][c] = known[r][c] - t1[r][c] + t2[r][c]
        gm, new_mt, denoms = _solve_order(nil, known, funcs, lam, mt, lam0)
        denominators.extend(denoms)
        if any(not x.is_zero() for row in gm for x in row):
            g_parts[mt] = gm
        new_parts[mt] = new_mt
    gauge = _assemble_series(g_parts, m.q, horizon)
    new = _assemble_series(new_parts, m.q, horizon)
    out = LambdaConnection(new, m.q, m.lambda0)
    return out, gauge, denominators


def _zero_mat(n):
    return [[PS0 for _ in range(n)] for _ in range(n)]


def _solve_order(nil, known, funcs, lam, mt, lam0: Cyc):
    """Solve R0 G - G R0 + mt*z*G = known - kept at one order.

    Entries with obstruction vanishing at z0 are kept in the matrix; the
    others are eliminated.  The nilpotent part of R0 feeds back through a
    finitely-terminating fixed-point iteration.
    """
    n = len(nil)
    ob = [[funcs[r] - funcs[c] + lam * mt for c in range(n)] for r in range(n)]
    keep = [[ob[r][c].is_zero() or ob[r][c].eval(lam0).is_zero()
             for c in range(n)] for r in range(n)]
    gm = _zero_mat(n)
    new_mt = _zero_mat(n)
    denoms = []
    for _ in range(2 * n + 4):
        comm1 = mat_mul(nil, gm)
        comm2 = mat_mul(gm, nil)
        changed = False
        for r in range(n):
            for c in range(n):
                rhs = known[r][c] - comm1[r][c] + comm2[r][c]
                if keep[r][c]:
                    if not (new_mt[r][c] == rhs):
                        new_mt[r][c] = rhs
                        changed = True
                else:
                    sol = rhs / ob[r][c]
                    if not (gm[r][c] == sol):
                        gm[r][c] = sol
                        changed = True
        if not changed:
            break
    else:
        raise InternalInvariantError("order elimination did not close")
    for r in range(n):
        for c in range(n):
            if not keep[r][c] and not gm[r][c].is_zero():
                denoms.append(ob[r][c])
    return gm, new_mt, denoms


def _assemble_series(parts, q, horizon):
    items = sorted(parts.items())
    n = len(next(iter(parts.values())))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = {}
            for idx, mat in items:
                c = mat[i][j]
                if not c.is_zero():
                    coeffs[idx] = c
            row.append(LaurentSeries(q, coeffs, horizon))
        rows.append(row)
    return LaurentMatrix(rows, q)


# ---------------------------------------------------------------------------
# nearby cycles from the model
# ---------------------------------------------------------------------------


def psi_beta(model: RegularModel, beta) -> NearbyCycleDatum:
    """Nearby-cycle datum at a normalized exponent, additively gathered.

    All blocks whose class is beta contribute; blocks sharing a value at z0
    may be coupled (the resonant entries), blocks with distinct values sit
    in different summands of N.
    """
    if not isinstance(beta, ComplexExponent):
        beta = ComplexExponent.of(beta)
    beta = beta.normalized()
    mine = [b for b in model.blocks if b.label.cls() == beta]
    dim = sum(b.size for b in mine)
    if dim == 0:
        return NearbyCycleDatum(beta=beta, dim=0, nilpotent=[],
                                weight_dims={}, primitive_dims={})
    lam0 = model.lambda0
    sel = []
    values = []
    for b in mine:
        sel.extend(range(b.start, b.start + b.size))
        values.extend([b.final_function().eval(lam0)] * b.size)
    nil = []
    for i, gi in enumerate(sel):
        row = []
        for j, gj in enumerate(sel):
            entry = model.matrix[gi][gj].eval(lam0)
            if i == j:
                entry = entry - values[i]
            elif not (values[i] == values[j]):
                if not entry.is_zero():
                    raise InternalInvariantError(
                        "coupling between non-resonant blocks in the model")
                entry = Cyc.zero()
            row.append(-entry)
        nil.append(row)
    _check_nilpotent(nil)
    weight_dims, primitive_dims, _ = monodromy_filtration(nil)
    return NearbyCycleDatum(beta=beta, dim=dim, nilpotent=nil,
                            weight_dims=weight_dims,
                            primitive_dims=primitive_dims)


def nearby_data(model: RegularModel):
    """psi_beta for every class present, in the canonical order."""
    return [psi_beta(model, beta) for beta in model.classes()]


def _check_nilpotent(mat):
    n = len(mat)
    p = [row[:] for row in mat]
    for _ in range(n):
        if all(x.is_zero() for row in p for x in row):
            return
        p = mat_mul(p, mat)
    if not all(x.is_zero() for row in p for x in row):
        raise InternalInvariantError("expected nilpotent block is not nilpotent")


def monodromy_filtration(nil):
    """Weight filtration data of a nilpotent matrix.

    Returns (weight_dims, primitive_dims, chains) where chains are Jordan
    chains [v, Nv, ...]; a chain of length s carries weights s-1, s-3, ...,
    1-s.  Raises :class:`NotNilpotent`-style errors via the caller's check.
    """
    n = len(nil)
    if n == 0:
        return {}, {}, []
    one, zero = _field_one_zero(nil)
    chains = nilpotent_jordan_chains(nil, one, zero)
    weight_dims = {}
    primitive_dims = {}
    for chain in chains:
        size = len(chain)
        primitive_dims[size - 1] = primitive_dims.get(size - 1, 0) + 1
        for pos in range(size):
            w = (size - 1) - 2 * pos
            weight_dims[w] = weight_dims.get(w, 0) + 1
    return weight_dims, primitive_dims, chains


def _field_one_zero(mat):
    sample = mat[0][0]
    if isinstance(sample, ParamScalar):
        return PS1, PS0
    if isinstance(sample, Cyc):
        return Cyc.one(), Cyc.zero()
    return Fraction(1), Fraction(0)


def weight_filtration_subspaces(nil):
    """M_k = sum_j (ker N^{j+1} cap im N^{j-k}): the closed-formula oracle."""
    n = len(nil)
    one, zero = _field_one_zero(nil)
    powers = [identity(n, one, zero)]
    for _ in range(n + 1):
        powers.append(mat_mul(powers[-1], nil))

    def image_basis(p):
        if p <= 0:
            return [[one if i == j else zero for i in range(n)]
                    for j in range(n)]
        if p > n:
            return []
        cols = [[powers[p][i][j] for i in range(n)] for j in range(n)]
        return _independent(cols, one, zero)

    out = {}
    for k in range(-n - 2, n + 3):
        gens = []
        for j in range(0, n + 1):
            ker = const_kernel(powers[min(j + 1, n)], one, zero) \
                if j + 1 <= n else \
                [[one if i == jj else zero for i in range(n)] for jj in range(n)]
            im = image_basis(j - k)
            gens.extend(_intersect(ker, im, one, zero))
        out[k] = _independent(gens, one, zero)
    return out


def _independent(vectors, one, zero):
    if not vectors:
        return []
    n = len(vectors[0])
    picked = []
    for v in vectors:
        trial = picked + [v]
        matrix = [[trial[j][i] for j in range(len(trial))] for i in range(n)]
        if const_rank(matrix) == len(trial):
            picked.append(v)
    return picked


def _intersect(basis_a, basis_b, one, zero):
    if not basis_a or not basis_b:
        return []
    n = len(basis_a[0])
    cols = [list(v) for v in basis_a] + [[-x for x in v] for v in basis_b]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    null = const_kernel(matrix, one, zero)
    out = []
    for vec in null:
        comb = [zero] * n
        for idx in range(len(basis_a)):
            c = vec[idx]
            if not (c == zero):
                for i in range(n):
                    comb[i] = comb[i] + c * basis_a[idx][i]
        if any(not (x == zero) for x in comb):
            out.append(comb)
    return _independent(out, one, zero)


# ---------------------------------------------------------------------------
# Bernstein products, lattice dimensions, regularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BernsteinFactor:
    beta: ComplexExponent
    shift: int
    power: int

    def render(self) -> str:
        e = star(self.beta + self.shift)
        return f"(s - ({e.render()}))^{self.power}"


def bernstein_product(model: RegularModel, extra_shifts: int = 0):
    """Factors (s - star(beta+k))^L annihilating the graded lattice.

    L is the nilpotency order of N on the gathered psi^beta; k runs over
    the integer offsets present plus optionally 0..extra_shifts.
    """
    factors = []
    for beta in model.classes():
        datum = psi_beta(model, beta)
        power = max([l + 1 for l in datum.primitive_dims], default=1)
        offsets = sorted(set(b.label.offset for b in model.blocks
                             if b.label.cls() == beta))
        ks = sorted(set(offsets) | set(range(0, extra_shifts + 1)))
        for k in ks:
            factors.append(BernsteinFactor(beta=beta, shift=k, power=power))
    return factors


def v0_lattice_fiber_dim(conn: LambdaConnection) -> int:
    """dim U/tU of a V0-lattice of a Higgs module: the regular rank.

    Read off the slope-zero length of the exact Newton polygon of the
    characteristic polynomial of the O-linear action.
    """
    if not conn.is_higgs:
        raise WildcycleError("V0-lattice dimension is a Higgs (z=0) invariant")
    slopes = charpoly_slopes(conn)
    return sum(m for s, m in slopes if s == 0)


def regularity_test(conn: LambdaConnection, order=None) -> dict:
    """Three effective regularity criteria and their agreement flag."""
    from .turrittin import formal_decompose, newton_polygon
    results = {}
    poly1 = newton_polygon(conn, lambda0=1, order=order)
    results["newton_polygon_at_1"] = poly1.is_regular()
    higgs = conn.restrict_lambda(0) if not conn.is_higgs else conn
    results["v0_lattice_full_at_0"] = (v0_lattice_fiber_dim(higgs) == conn.rank)
    dec = formal_decompose(conn, order=order)
    results["decomposition_trivial_phi"] = (
        dec.rel_ramification == 1
        and all(s.phi.is_zero() for s in dec.summands))
    verdicts = [results["newton_polygon_at_1"],
                results["v0_lattice_full_at_0"],
                results["decomposition_trivial_phi"]]
    results["agree"] = len(set(verdicts)) == 1
    results["regular"] = all(verdicts)
    return results
