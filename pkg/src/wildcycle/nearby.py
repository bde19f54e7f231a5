"""Irregular nearby cycles: the (phi, beta, weight) table.

The table of a module M over the base disc collects, for every Galois orbit
of exponential factors phi (presented t-irreducibly at its minimal
ramification q_phi), the nearby-cycle data of the regular part of
E^{-phi/z} (x) M_{q_phi}.  Rows are indexed by classes measured in the base
coordinate: an upstairs exponent beta at level q spreads into the division
classes (beta + k)/q, k = 0..q-1, with the nilpotent scaled by 1/q (its
Jordan type is unchanged).  Total dimension equals the represented rank.

A connection stored at ramification q > 1 represents the direct image of
its matrix module; its table is computed on the module's own disc first and
then transported down, which keeps every eigenvalue computation in the
star-shaped world.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .connection import ExpFactor, LambdaConnection
from .cyclotomic import Cyc, lcm
from .errors import InternalInvariantError
from .exponents import ComplexExponent, ell
from .matrices import LaurentMatrix
from .regular import monodromy_filtration, psi_beta, reduce_to_constant
from .reduction import apply_operator
from .series import LaurentSeries
from .turrittin import FormalDecomposition, formal_decompose


def is_t_irreducible(phi: ExpFactor) -> bool:
    """True iff no d > 1 divides q and every polar exponent of phi."""
    if phi.q == 1:
        return True
    g = phi.q
    for a in phi.coeffs:
        g = gcd(g, a)
    return g == 1


@dataclass
class DeligneRow:
    beta: ComplexExponent          # normalized class in the base coordinate
    dim: int
    nilpotent: list                # Cyc rows; Jordan type is the invariant
    weight_dims: dict
    primitive_dims: dict

    def jordan_type(self):
        return tuple(sorted((l + 1 for l, d in self.primitive_dims.items()
                             for _ in range(d)), reverse=True))

    def as_json(self):
        return {
            "beta": self.beta.render(),
            "dim": self.dim,
            "weight_dims": {str(k): v for k, v in sorted(self.weight_dims.items())},
            "primitive_dims": {str(k): v
                               for k, v in sorted(self.primitive_dims.items())},
        }


@dataclass
class DeligneEntry:
    phi: ExpFactor                 # t-irreducible representative, minimal q
    rows: list
    orbit: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def dim(self) -> int:
        return sum(r.dim for r in self.rows)

    def as_json(self):
        return {
            "phi": self.phi.render(),
            "q": self.phi.q,
            "dim": self.dim(),
            "orbit_size": max(1, len(self.orbit)),
            "rows": [r.as_json() for r in self.rows],
        }


@dataclass
class DeligneTable:
    entries: list
    base_ramification: int         # q of the stored input
    represented_rank: int          # q_in * matrix rank
    lambda0: Cyc = None
    q_used: int = 1                # decomposition level met along the way

    def total_dim(self) -> int:
        return sum(e.dim() for e in self.entries)

    def entry_for(self, phi: ExpFactor):
        for e in self.entries:
            if _same_orbit(e.phi, phi):
                return e
        return None

    def as_json(self):
        return {
            "represented_rank": self.represented_rank,
            "base_ramification": self.base_ramification,
            "q_used": self.q_used,
            "total_dim": self.total_dim(),
            "entries": [e.as_json() for e in self.entries],
        }


def _orbit_of(phi: ExpFactor):
    """The Galois orbit of the germ, at its minimal presentation level."""
    red = phi.reduce_ramification()
    if red.q == 1:
        return [red]
    order = lcm(red.cyclotomic_order(), red.q)
    out = []
    for j in range(red.q):
        tw = red.substitute_root(Cyc.zeta(order, j * (order // red.q)))
        if not any(tw == seen for seen in out):
            out.append(tw)
    return out


def _same_orbit(phi1: ExpFactor, phi2: ExpFactor) -> bool:
    a, b = phi1.reduce_ramification(), phi2.reduce_ramification()
    if a.q != b.q:
        return False
    return any(b == member for member in _orbit_of(a))


def _canonical_orbit_rep(orbit):
    common = 1
    for phi in orbit:
        common = lcm(common, phi.cyclotomic_order())
    return min(orbit, key=lambda p: p.sort_key(common))


# ---------------------------------------------------------------------------
# regular part of a module at its own level
# ---------------------------------------------------------------------------


def regular_part(conn: LambdaConnection, order=None):
    """The maximal regular constituent, presented at the same level.

    When the decomposition needs no further ramification the regular
    summands are returned directly.  Otherwise the canonical projector onto
    the regular block is computed upstairs; being canonical it is Galois
    equivariant, so its matrix descends to the original level, where the
    image basis carries the induced action.  Returns None for rank zero.
    """
    dec = formal_decompose(conn, order=order)
    regs = [s for s in dec.summands if s.phi.is_zero()]
    if not regs:
        return None
    if dec.rel_ramification == 1:
        out = regs[0].regular
        for s in regs[1:]:
            out = out.direct_sum(s.regular)
        return out
    rel = dec.rel_ramification
    up = conn.ramify_pullback(rel)
    n = up.rank
    work = dec.certified_order
    if work is None:
        work = (order if order is not None else 8 * max(1, n)) * rel
    gauge = dec.gauge
    ginv = gauge.inverse(work)
    indicator = []
    off = 0
    for s in dec.summands:
        flag = s.phi.is_zero()
        indicator.extend([flag] * s.rank)
        off += s.rank
    e_rows = [[LaurentSeries.one(up.q, work) if (i == j and indicator[i])
               else LaurentSeries.zero(up.q, work) for j in range(n)]
              for i in range(n)]
    proj = gauge * LaurentMatrix(e_rows, up.q) * ginv
    down = _descend_matrix(proj, rel, conn.q)
    basis = _column_basis(down, sum(1 for f in indicator if f))
    return _induced_action(conn, basis, work)


def _descend_matrix(mat: LaurentMatrix, rel: int, q_target: int) -> LaurentMatrix:
    """Divide every exponent by rel; certified non-divisible digits forbid."""
    rows = []
    for row in mat.rows:
        out = []
        for x in row:
            coeffs = {}
            for e, c in x.coeffs.items():
                if e % rel != 0:
                    raise InternalInvariantError(
                        "projector failed to descend: non-equivariant digits")
                coeffs[e // rel] = c
            t = None if x.trunc is None else -(-x.trunc // rel)
            out.append(LaurentSeries(q_target, coeffs, t))
        rows.append(out)
    return LaurentMatrix(rows, q_target)


def _column_basis(mat: LaurentMatrix, expected_rank: int):
    """Greedy certified-independent columns of a projector matrix."""
    n = mat.nrows
    cols = [[mat.rows[i][j] for i in range(n)] for j in range(mat.ncols)]
    picked = []
    for col in cols:
        trial = picked + [col]
        test = LaurentMatrix([[trial[j][i] for j in range(len(trial))]
                              for i in range(n)], mat.q)
        if _certified_rank(test) == len(trial):
            picked.append(col)
        if len(picked) == expected_rank:
            break
    if len(picked) != expected_rank:
        raise InternalInvariantError("projector image has unexpected rank")
    return picked


def _certified_rank(mat: LaurentMatrix) -> int:
    work = [[x for x in row] for row in mat.rows]
    nrows, ncols = len(work), len(work[0])
    rank = 0
    used_rows = set()
    for col in range(ncols):
        pivot, pv = None, None
        for i in range(nrows):
            if i in used_rows:
                continue
            v = work[i][col].valuation()
            if v is not None and (pv is None or v < pv):
                pivot, pv = i, v
        if pivot is None:
            continue
        used_rows.add(pivot)
        rank += 1
        inv = work[pivot][col].invert(
            (work[pivot][col].trunc or 8) - 2 * min(0, pv))
        for i in range(nrows):
            if i != pivot and i not in used_rows:
                f = work[i][col]
                if not f.is_zero_to_order():
                    mult = f * inv
                    work[i] = [a - mult * b for a, b in zip(work[i], work[pivot])]
    return rank


def _induced_action(conn: LambdaConnection, basis, order):
    """Matrix of the operator on the span of ``basis`` (an invariant space)."""
    n = conn.rank
    m = len(basis)
    images = [apply_operator(conn, col) for col in basis]
    bmat = LaurentMatrix([[basis[j][i] for j in range(m)] for i in range(n)],
                         conn.q)
    # choose m certified-independent rows
    rows_idx = []
    probe = []
    for i in range(n):
        trial = probe + [[basis[j][i] for j in range(m)]]
        test = LaurentMatrix(trial, conn.q)
        if _certified_rank(test) == len(trial):
            probe.append(trial[-1])
            rows_idx.append(i)
        if len(rows_idx) == m:
            break
    if len(rows_idx) != m:
        raise InternalInvariantError("image basis rows are degenerate")
    bsq = LaurentMatrix([[basis[j][i] for j in range(m)] for i in rows_idx],
                        conn.q)
    binv = bsq.inverse(order)
    tmat = LaurentMatrix([[images[j][i] for j in range(m)] for i in rows_idx],
                         conn.q)
    cmat = binv * tmat
    # consistency on the remaining rows
    recomposed = bmat * cmat
    for i in range(n):
        for j in range(m):
            if not recomposed.rows[i][j].agrees_with(
                    LaurentSeries(conn.q, images[j][i].coeffs,
                                  images[j][i].trunc)):
                raise InternalInvariantError(
                    "induced action is inconsistent on the projector image")
    return LambdaConnection(cmat, conn.q, conn.lambda0)


# ---------------------------------------------------------------------------
# table assembly
# ---------------------------------------------------------------------------


def deligne_nearby_cycles(conn: LambdaConnection, lambda0=1, order=None,
                          folded: bool = True) -> DeligneTable:
    """The (phi, beta, weight) table of the represented module.

    ``folded`` merges Galois-orbit keys into one record (the direct image
    identifies them); the unfolded per-summand view keeps each phi at the
    decomposition level.
    """
    lam0 = lambda0 if isinstance(lambda0, Cyc) else Cyc.gaussian(lambda0, 0)
    if conn.q > 1:
        own = _own_disc(conn)
        inner = deligne_nearby_cycles(own, lambda0=lam0, order=order,
                                      folded=folded)
        return _push_table_down(inner, conn.q, lam0)
    dec = formal_decompose(conn, order=order)
    level = dec.q_used
    if not folded:
        return _unfolded_table(conn, dec, lam0, order)
    orbits = []
    for idx, s in enumerate(dec.summands):
        placed = False
        for orb in orbits:
            if _same_orbit(orb["rep"], s.phi):
                orb["members"].append(idx)
                placed = True
                break
        if not placed:
            orbits.append({"rep": s.phi.reduce_ramification(), "members": [idx]})
    entries = []
    for orb in orbits:
        full_orbit = _orbit_of(orb["rep"])
        rep = _canonical_orbit_rep(full_orbit)
        q_phi = rep.q
        if not is_t_irreducible(rep):
            raise InternalInvariantError("orbit representative is reducible")
        pulled = conn.ramify_pullback(q_phi)
        twisted = pulled.twist_exponential(rep, sign=-1)
        reg = regular_part(twisted, order=None if order is None
                           else order * q_phi)
        if reg is None:
            raise InternalInvariantError(
                "empty regular part for a detected orbit")
        model = reduce_to_constant(reg, lambda0=lam0)
        rows = _spread_rows(model, q_phi, lam0)
        entries.append(DeligneEntry(phi=rep, rows=rows, orbit=full_orbit,
                                    provenance=sorted(orb["members"])))
    table = DeligneTable(entries=_sort_entries(entries, lam0),
                         base_ramification=1,
                         represented_rank=conn.rank,
                         lambda0=lam0, q_used=level)
    if table.total_dim() != table.represented_rank:
        raise InternalInvariantError(
            f"table dimension {table.total_dim()} != rank "
            f"{table.represented_rank}")
    return table


def _own_disc(conn: LambdaConnection) -> LambdaConnection:
    rows = [[LaurentSeries(1, x.coeffs, x.trunc) for x in row]
            for row in conn.action.rows]
    return LambdaConnection(LaurentMatrix(rows, 1), 1, conn.lambda0)


def _unfolded_table(conn, dec: FormalDecomposition, lam0, order) -> DeligneTable:
    entries = []
    rel = dec.rel_ramification
    for idx, s in enumerate(dec.summands):
        model = reduce_to_constant(s.regular, lambda0=lam0)
        rows = []
        for beta, _ in model.exponents_with_multiplicity():
            datum = psi_beta(model, beta)
            rows.append(DeligneRow(beta=datum.beta, dim=datum.dim,
                                   nilpotent=datum.nilpotent,
                                   weight_dims=datum.weight_dims,
                                   primitive_dims=datum.primitive_dims))
        entries.append(DeligneEntry(phi=s.phi, rows=rows, orbit=[s.phi],
                                    provenance=[idx]))
    return DeligneTable(entries=entries, base_ramification=conn.q * rel,
                        represented_rank=conn.rank,
                        lambda0=lam0, q_used=dec.q_used)


def _spread_rows(model, q_phi: int, lam0: Cyc):
    """Downstairs rows: upstairs beta spreads into (beta + k)/q classes."""
    gathered = {}
    for beta, _ in model.exponents_with_multiplicity():
        datum = psi_beta(model, beta)
        for k in range(q_phi):
            gamma = (datum.beta + k).scale(Fraction(1, q_phi)).normalized()
            scaled = [[c / q_phi for c in row] for row in datum.nilpotent]
            key = (gamma.beta_re, gamma.beta_im)
            if key in gathered:
                gathered[key] = _merge_row(gathered[key],
                                           (gamma, datum.dim, scaled))
            else:
                gathered[key] = (gamma, datum.dim, scaled)
    rows = []
    for gamma, dim, nil in gathered.values():
        weight_dims, primitive_dims, _ = monodromy_filtration(nil) \
            if dim else ({}, {}, [])
        rows.append(DeligneRow(beta=gamma, dim=dim, nilpotent=nil,
                               weight_dims=weight_dims,
                               primitive_dims=primitive_dims))
    rows.sort(key=lambda r: (ell(r.beta, lam0), r.beta.beta_re, r.beta.beta_im))
    return rows


def _merge_row(a, b):
    gamma, dim_a, nil_a = a
    _, dim_b, nil_b = b
    size = dim_a + dim_b
    nil = [[Cyc.zero() for _ in range(size)] for _ in range(size)]
    for i in range(dim_a):
        for j in range(dim_a):
            nil[i][j] = nil_a[i][j]
    for i in range(dim_b):
        for j in range(dim_b):
            nil[dim_a + i][dim_a + j] = nil_b[i][j]
    return (gamma, size, nil)


def _sort_entries(entries, lam0):
    common = 1
    for e in entries:
        common = lcm(common, e.phi.cyclotomic_order())
    entries.sort(key=lambda e: (e.phi.pole_order() and
                                Fraction(e.phi.pole_order(), e.phi.q),
                                e.phi.sort_key(common)))
    return entries


def _push_table_down(table: DeligneTable, q: int, lam0: Cyc) -> DeligneTable:
    """Table of the direct image: keys re-leveled, rows divided by q."""
    entries = []
    for e in table.entries:
        phi_new = ExpFactor(e.phi.q * q, dict(e.phi.coeffs)).reduce_ramification()
        orbit_new = _orbit_of(phi_new)
        rep = _canonical_orbit_rep(orbit_new)
        rows = {}
        for r in e.rows:
            for k in range(q):
                gamma = (r.beta + k).scale(Fraction(1, q)).normalized()
                scaled = [[c / q for c in row] for row in r.nilpotent]
                key = (gamma.beta_re, gamma.beta_im)
                if key in rows:
                    rows[key] = _merge_row(rows[key], (gamma, r.dim, scaled))
                else:
                    rows[key] = (gamma, r.dim, scaled)
        new_rows = []
        for gamma, dim, nil in rows.values():
            wd, pd, _ = monodromy_filtration(nil) if dim else ({}, {}, [])
            new_rows.append(DeligneRow(beta=gamma, dim=dim, nilpotent=nil,
                                       weight_dims=wd, primitive_dims=pd))
        new_rows.sort(key=lambda r: (ell(r.beta, lam0),
                                     r.beta.beta_re, r.beta.beta_im))
        placed = False
        for existing in entries:
            if _same_orbit(existing.phi, rep):
                existing.rows = _merge_rowlists(existing.rows, new_rows, lam0)
                placed = True
                break
        if not placed:
            entries.append(DeligneEntry(phi=rep, rows=new_rows,
                                        orbit=orbit_new, provenance=[]))
    return DeligneTable(entries=_sort_entries(entries, lam0),
                        base_ramification=table.base_ramification * q,
                        represented_rank=table.represented_rank * q,
                        lambda0=lam0, q_used=table.q_used)


def _merge_rowlists(rows_a, rows_b, lam0):
    merged = {}
    for r in rows_a + rows_b:
        key = (r.beta.beta_re, r.beta.beta_im)
        if key in merged:
            merged[key] = _merge_row(merged[key], (r.beta, r.dim, r.nilpotent))
        else:
            merged[key] = (r.beta, r.dim, r.nilpotent)
    out = []
    for gamma, dim, nil in merged.values():
        wd, pd, _ = monodromy_filtration(nil) if dim else ({}, {}, [])
        out.append(DeligneRow(beta=gamma, dim=dim, nilpotent=nil,
                              weight_dims=wd, primitive_dims=pd))
    out.sort(key=lambda r: (ell(r.beta, lam0), r.beta.beta_re, r.beta.beta_im))
    return out


# ---------------------------------------------------------------------------
# the ramification-compatibility oracle
# ---------------------------------------------------------------------------


def ramification_transport(table: DeligneTable, r: int) -> DeligneTable:
    """Predicted table of the ramified pull-back rho_r^+ from the table.

    Keys are unchanged as Puiseux germs; every row spreads into r classes
    stepped by 1/(r * base_ramification), and the nilpotent is rescaled
    (its Jordan type, the compared invariant, is unchanged).
    """
    if r == 1:
        return table
    step_den = r * table.base_ramification
    entries = []
    for e in table.entries:
        rows = {}
        for row in e.rows:
            for n in range(r):
                gamma = (row.beta - Fraction(n, step_den)).normalized()
                scaled = [[c * r for c in rr] for rr in row.nilpotent]
                key = (gamma.beta_re, gamma.beta_im)
                if key in rows:
                    rows[key] = _merge_row(rows[key], (gamma, row.dim, scaled))
                else:
                    rows[key] = (gamma, row.dim, scaled)
        new_rows = []
        for gamma, dim, nil in rows.values():
            wd, pd, _ = monodromy_filtration(nil) if dim else ({}, {}, [])
            new_rows.append(DeligneRow(beta=gamma, dim=dim, nilpotent=nil,
                                       weight_dims=wd, primitive_dims=pd))
        new_rows.sort(key=lambda rr: (ell(rr.beta, table.lambda0),
                                      rr.beta.beta_re, rr.beta.beta_im))
        entries.append(DeligneEntry(phi=e.phi, rows=new_rows,
                                    orbit=list(e.orbit), provenance=[]))
    return DeligneTable(entries=_sort_entries(entries, table.lambda0),
                        base_ramification=step_den,
                        represented_rank=table.represented_rank * r,
                        lambda0=table.lambda0, q_used=table.q_used)


def tables_equal(a: DeligneTable, b: DeligneTable,
                 compare_jordan: bool = True) -> bool:
    """Entrywise equality: keys as orbits, rows by (class, dim, Jordan type)."""
    if len(a.entries) != len(b.entries):
        return False
    for ea in a.entries:
        eb = b.entry_for(ea.phi)
        if eb is None or len(ea.rows) != len(eb.rows):
            return False
        for ra, rb in zip(ea.rows, eb.rows):
            if ra.beta != rb.beta or ra.dim != rb.dim:
                return False
            if ra.weight_dims != rb.weight_dims:
                return False
            if compare_jordan and ra.jordan_type() != rb.jordan_type():
                return False
    return True
