"""Computation in the local ring A = K[[x_1..x_m]] through truncation.

Every A-submodule M with m*I^i <= M <= I^i contains m^(s*i+1) when
m^s <= I, so M is determined by its image in A/m^D for D > s*i.  All the
quotients needed here (I^i/mI^i, I^i/(mI^i + QI^(i-1))) are of that kind
and are computed as finite-dimensional K-vector spaces.

Generator indices are 0-based internally; the presentation variable for
generator ``k`` is ``X{k+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InputError, NotPrimaryError, NotReductionError, ResourceCapError
from .field import Field
from .linalg import MonomialBasis, TrackedSpan, exponents_of_degree, ideal_span, multisets, \
    truncated_product
from .poly import AmbientRing, Poly, presentation_ring

DEFAULT_POWER_CAP = 16
DEFAULT_SOCLE_CAP = 64


@dataclass(frozen=True)
class IdealSpec:
    gens: tuple
    minimal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        if not self.gens:
            raise InputError("an ideal needs at least one generator")
        ring = self.gens[0].ring
        zero = (0,) * ring.nvars
        for g in self.gens:
            if g.ring != ring:
                raise InputError("generators live in different rings")
            if g.is_zero():
                raise InputError("zero generator")
            if g.terms.get(zero):
                raise InputError(f"generator {g} has a nonzero constant term (not in the maximal ideal)")

    @property
    def ring(self) -> AmbientRing:
        return self.gens[0].ring


@dataclass(frozen=True)
class TruncationContext:
    """Socle bound ``s`` and the truncation rule D(i) = s*i + 2 + extra."""

    s: int
    extra: int = 0
    power_cap: int = DEFAULT_POWER_CAP

    def degree(self, i: int) -> int:
        return self.s * i + 2 + self.extra

    @property
    def i_max(self) -> int:
        return self.power_cap + 1


_BASIS_CACHE: dict = {}


def monomial_basis(nvars: int, D: int) -> MonomialBasis:
    key = (nvars, D)
    b = _BASIS_CACHE.get(key)
    if b is None:
        if len(_BASIS_CACHE) > 64:
            _BASIS_CACHE.clear()
        b = _BASIS_CACHE[key] = MonomialBasis(nvars, D)
    return b


def _check_base(ring: AmbientRing):
    if ring.nvars == 0:
        raise InputError("the base ring has no variables (d = 0 is not supported)")


def socle_bound(gens, cap: int = DEFAULT_SOCLE_CAP, backend=None) -> int:
    """Least s >= 1 with m^s contained in the ideal generated by ``gens``.

    Each candidate s is decided by the Nakayama test m^s <= I + m^(s+1),
    i.e. linear algebra in A/m^(s+1).
    """
    spec = gens if isinstance(gens, IdealSpec) else IdealSpec(gens)
    ring = spec.ring
    _check_base(ring)
    m = ring.nvars
    for s in range(1, cap + 1):
        basis = monomial_basis(m, s + 1)
        span = ideal_span(spec.gens, basis, ring.field, backend=backend)
        lo, hi = basis.degree_start[s], basis.degree_start[s + 1]
        if all(span.kernel.pivot_row(c) >= 0 for c in range(lo, hi)):
            return s
    raise NotPrimaryError(f"not m-primary: no power m^s with s <= {cap} lies in the ideal")


def _ideal_products(gens, D: int, size: int) -> dict:
    """Truncated products of the generators indexed by sorted multisets of ``size``."""
    g = [{e: c for e, c in f.terms.items() if sum(e) < D} for f in gens]
    layer = {(): {(0,) * gens[0].ring.nvars: gens[0].ring.field.one}}
    for _ in range(size):
        nxt = {}
        for L, val in layer.items():
            start = L[-1] if L else 0
            for k in range(start, len(g)):
                nxt[L + (k,)] = truncated_product(val, g[k], D)
        layer = nxt
    return layer


@dataclass
class PowerLevel:
    """Data for I^i: spanning products, m*I^i, and the quotient vectors.

    ``nf[L]`` is the normal form of the product indexed by multiset ``L``
    modulo m*I^i, i.e. its image in I^i/mI^i.
    """

    i: int
    D: int
    basis: MonomialBasis
    products: dict
    m_power: object  # SubspaceBasis of m*I^i
    nf: dict
    fiber_dim: int
    q_rank: int

    @property
    def u(self) -> int:
        return self.fiber_dim - self.q_rank

    def residual_in_m_power(self, vec_poly_terms: dict) -> bool:
        return self.m_power.contains({self.basis.index[e]: c for e, c in vec_poly_terms.items()
                                      if e in self.basis.index})


def _build_level(gens, qidx, i: int, ctx: TruncationContext, backend=None) -> PowerLevel:
    ring = gens[0].ring
    D = ctx.degree(i)
    basis = monomial_basis(ring.nvars, D)
    products = _ideal_products(gens, D, i)
    vecs = {L: {basis.index[e]: c for e, c in val.items() if c and e in basis.index}
            for L, val in products.items()}
    W = ideal_span(vecs.values(), basis, ring.field, times_maximal=True, backend=backend)
    nf = {L: W.reduce(v) for L, v in vecs.items()}
    qset = set(qidx)
    full = TrackedSpan(ring.field)
    qspan = TrackedSpan(ring.field)
    for L in sorted(nf):
        full.add(nf[L], L)
        if qset.intersection(L):
            qspan.add(nf[L], L)
    return PowerLevel(i, D, basis, products, W, nf, full.rank, qspan.rank)


@dataclass
class PowerLadder:
    """Powers I^1..I^(r+1) (more on request) for a presentation (gens, Q-indices)."""

    gens: tuple
    qidx: tuple
    ctx: TruncationContext
    levels: dict = dc_field(default_factory=dict)
    r: int = -1
    backend: object = None

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def d(self) -> int:
        return len(self.qidx)

    @property
    def field(self) -> Field:
        return self.gens[0].ring.field

    def level(self, i: int) -> PowerLevel:
        lv = self.levels.get(i)
        if lv is None:
            lv = self.levels[i] = _build_level(self.gens, self.qidx, i, self.ctx, self.backend)
        return lv

    @property
    def u(self) -> tuple:
        """(u_1, ..., u_r)."""
        return tuple(self.level(i).u for i in range(1, self.r + 1))

    def fiber_dims(self, upto: int) -> list[int]:
        """dim_K I^i/mI^i for i = 0..upto."""
        return [1] + [self.level(i).fiber_dim for i in range(1, upto + 1)]


def build_ladder(gens, qidx, ctx: TruncationContext, backend=None) -> PowerLadder:
    """Compute u_i until u_(m+1) = 0; then r = m (local equality I^(m+1) = QI^m)."""
    gens = tuple(gens)
    qidx = tuple(sorted(qidx))
    ring = gens[0].ring
    _check_base(ring)
    if len(qidx) != ring.nvars:
        raise InputError(f"Q needs d = {ring.nvars} generators, got {len(qidx)}")
    if len(set(qidx)) != len(qidx) or not all(0 <= p < len(gens) for p in qidx):
        raise InputError(f"bad Q index set {[p + 1 for p in qidx]}")
    ladder = PowerLadder(gens, qidx, ctx, backend=backend)
    for i in range(1, ctx.power_cap + 2):
        if ladder.level(i).u == 0:
            ladder.r = i - 1
            return ladder
    raise NotReductionError(f"Q not a reduction within cap: u_i > 0 for all i <= {ctx.power_cap + 1}")


def reduction_number(gens, qidx, ctx=None, backend=None) -> int:
    if ctx is None:
        ctx = TruncationContext(socle_bound(gens))
    return build_ladder(gens, qidx, ctx, backend).r


@dataclass(frozen=True)
class MinGenSelection:
    """Chosen multisets y_(i,1..u_i) for 2 <= i <= r, with monomial preimages."""

    chosen: dict  # i -> tuple of multisets
    ring: AmbientRing

    def monomial(self, L) -> Poly:
        e = [0] * self.ring.nvars
        for k in L:
            e[k] += 1
        return Poly(self.ring, {tuple(e): self.ring.field.one})

    def preimages(self, i: int) -> list[Poly]:
        return [self.monomial(L) for L in self.chosen.get(i, ())]


def select_min_gens(ladder: PowerLadder) -> MinGenSelection:
    qset = set(ladder.qidx)
    ring = presentation_ring(ladder.n, ladder.field)
    chosen = {}
    for i in range(2, ladder.r + 1):
        lv = ladder.level(i)
        span = TrackedSpan(ladder.field)
        for L in sorted(lv.nf):
            if qset.intersection(L):
                span.add(lv.nf[L], L)
        picked = []
        for L in multisets(ladder.n, i):
            if qset.intersection(L):
                continue
            if span.add(lv.nf[L], L):
                picked.append(L)
        if len(picked) != lv.u:
            raise AssertionError(f"MinGen selection found {len(picked)} of u_{i} = {lv.u}")
        chosen[i] = tuple(picked)
    return MinGenSelection(chosen, ring)


@dataclass(frozen=True)
class ZRelation:
    """One generator X^L - sum a_j Y_j - sum b_(p,q) X_p X^q of the candidate ideal."""

    degree: int
    multiset: tuple
    a: dict  # j (0-based position in the selection) -> coefficient
    b: dict  # (p, q multiset) -> coefficient
    poly: Poly

    def provenance(self) -> dict:
        f = self.poly.ring.field
        return {
            "degree": self.degree,
            "multiset": [k + 1 for k in self.multiset],
            "a": {str(j + 1): f.to_str(c) for j, c in sorted(self.a.items())},
            "b": {f"{p + 1}|{','.join(str(k + 1) for k in q)}": f.to_str(c)
                  for (p, q), c in sorted(self.b.items())},
            "poly": str(self.poly),
        }


class _DegreeSolver:
    """Column space [y's, then (p, q) pairs] for one degree, built once."""

    def __init__(self, ladder: PowerLadder, selection: MinGenSelection, i: int):
        self.lv = lv = ladder.level(i)
        self.i = i
        self.span = TrackedSpan(ladder.field)
        self.ys = selection.chosen.get(i, ()) if i <= ladder.r else ()
        for j, L in enumerate(self.ys):
            self.span.add(lv.nf[L], ("y", j))
        for p in ladder.qidx:
            for q in multisets(ladder.n, i - 1):
                self.span.add(lv.nf[tuple(sorted((p,) + q))], ("b", p, q))


def solve_z_relation(L, ladder: PowerLadder, selection: MinGenSelection,
                     _solver: _DegreeSolver | None = None) -> ZRelation:
    """Solve image(x^L) = sum a_j image(y_j) + sum b image(x_p x^q) in I^i/mI^i."""
    L = tuple(sorted(L))
    i = len(L)
    if not 2 <= i <= ladder.r + 1:
        raise InputError(f"degree {i} outside 2..r+1 = {ladder.r + 1}")
    if set(L) & set(ladder.qidx):
        raise InputError("multisets containing a Q index give Z = 0 and are skipped")
    if L in selection.chosen.get(i, ()):
        raise InputError(f"{[k + 1 for k in L]} is a chosen minimal generator")
    solver = _solver or _DegreeSolver(ladder, selection, i)
    lv = solver.lv
    combo = solver.span.express(lv.nf[L])
    if combo is None:
        raise AssertionError(f"no solution for Z relation of {L}")
    field = ladder.field
    ring = selection.ring
    a = {lab[1]: c for lab, c in combo.items() if lab[0] == "y"}
    b = {(lab[1], lab[2]): c for lab, c in combo.items() if lab[0] == "b"}
    if i == ladder.r + 1 and a:
        raise AssertionError("degree r+1 relation with nonzero a-coefficients")
    Z = selection.monomial(L)
    residual = dict(lv.products[L])
    p = field.p

    def sub(terms, coeff):
        for e, c in terms.items():
            v = residual.get(e, 0) - coeff * c
            residual[e] = v % p if p else v

    for j, c in sorted(a.items()):
        Z = Z - selection.monomial(solver.ys[j]).scalar_mul(c)
        sub(lv.products[solver.ys[j]], c)
    for (pp, q), c in sorted(b.items()):
        Z = Z - selection.monomial((pp,) + q).scalar_mul(c)
        sub(lv.products[tuple(sorted((pp,) + q))], c)
    if not lv.residual_in_m_power(residual):
        raise AssertionError(f"Z relation for {L} does not map to zero")
    return ZRelation(i, L, a, b, Z)


def eligible_multisets(ladder: PowerLadder, selection: MinGenSelection, i: int):
    qset = set(ladder.qidx)
    chosen = set(selection.chosen.get(i, ()))
    return [L for L in multisets(ladder.n, i) if not qset.intersection(L) and L not in chosen]


def z_relations(ladder: PowerLadder, selection: MinGenSelection | None = None) -> list[ZRelation]:
    """All Z relations for 2 <= i <= r+1, ordered by degree then multiset."""
    if selection is None:
        selection = select_min_gens(ladder)
    out = []
    for i in range(2, ladder.r + 2):
        solver = _DegreeSolver(ladder, selection, i)
        for L in eligible_multisets(ladder, selection, i):
            out.append(solve_z_relation(L, ladder, selection, solver))
    return out


@dataclass
class CandidateIdeal:
    ladder: PowerLadder
    selection: MinGenSelection
    relations: list

    @property
    def generators(self) -> list[Poly]:
        return [z.poly for z in self.relations]


def build_candidate_ideal(gens, qidx, ctx: TruncationContext | None = None,
                          backend=None) -> CandidateIdeal:
    if ctx is None:
        ctx = TruncationContext(socle_bound(gens))
    ladder = build_ladder(gens, qidx, ctx, backend)
    sel = select_min_gens(ladder)
    return CandidateIdeal(ladder, sel, z_relations(ladder, sel))


def fiber_colength_rhs(ladder: PowerLadder) -> int:
    """1 + sum_{i=1}^{r} u_i, the length of F(I)/(x_p t : p in Q)."""
    return 1 + sum(ladder.u)


def minimal_rank(gens, ctx: TruncationContext, backend=None) -> tuple[int, list[int]]:
    """dim_K I/mI and the positions of a greedy independent subset (scan order)."""
    lv = _build_level(tuple(gens), (), 1, ctx, backend)
    span = TrackedSpan(gens[0].ring.field)
    keep = [k for k in range(len(gens)) if span.add(lv.nf[(k,)], k)]
    return lv.fiber_dim, keep


def in_ideal_locally(f: Poly, gens, D: int, backend=None) -> bool:
    """Membership of ``f`` in (gens)A decided in A/m^D (exact once m^D <= (gens))."""
    basis = monomial_basis(f.ring.nvars, D)
    return ideal_span(gens, basis, f.ring.field, backend=backend).contains_poly(f)


@dataclass(frozen=True)
class GapReport:
    i: int
    entries: tuple  # (multiset, polynomial member, local member)

    @property
    def witnesses(self) -> list:
        return [L for L, poly_in, local_in in self.entries if poly_in != local_in]


def exact_polynomial_membership_gap(gens, qidx, i: int, ctx: TruncationContext | None = None,
                                    backend=None) -> GapReport:
    """Compare membership of each spanning product of I^i in QI^(i-1): K[x] versus A."""
    from .groebner import Ideal

    gens = tuple(gens)
    qidx = tuple(sorted(qidx))
    ring = gens[0].ring
    if ctx is None:
        ctx = TruncationContext(socle_bound(gens))
    products = {L: gens_product(gens, L) for L in multisets(len(gens), i)}
    q_products = [gens[p] * gens_product(gens, q) for p in qidx for q in multisets(len(gens), i - 1)]
    s_q = socle_bound([gens[p] for p in qidx])
    # QI^(i-1) contains m^(s_Q + s*(i-1)), so truncation there is exact
    D = s_q + ctx.s * (i - 1) + 1 + ctx.extra
    basis = monomial_basis(ring.nvars, D)
    local = ideal_span(q_products, basis, ring.field, backend=backend)
    poly_ideal = Ideal(q_products)
    entries = tuple((L, poly_ideal.contains(P), local.contains_poly(P)) for L, P in products.items())
    return GapReport(i, entries)


def gens_product(gens, L) -> Poly:
    ring = gens[0].ring
    out = ring.one()
    for k in L:
        out = out * gens[k]
    return out


def monomials_of_degree(ring: AmbientRing, d: int) -> list[Poly]:
    return [ring.monomial(e) for e in exponents_of_degree(ring.nvars, d)]
