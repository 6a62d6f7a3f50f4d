"""End-to-end orchestration: presentation, candidate ideal, oracle, verification.

The fiber cone of polynomial input data agrees with that of the power-series
completion, since every I^i/mI^i is already a K-vector space annihilated by
m.  That is what allows the polynomial-ring elimination below to serve as an
oracle for the local object.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import (InputError, NoReductionFound, NotPrimaryError, NotReductionError,
                     PresentationError, TheoremConsistencyError)
from .groebner import Ideal
from .linalg import TrackedSpan
from .local import (DEFAULT_POWER_CAP, DEFAULT_SOCLE_CAP, CandidateIdeal, IdealSpec,
                    TruncationContext, build_ladder, fiber_colength_rhs, in_ideal_locally,
                    minimal_rank, monomials_of_degree, select_min_gens, socle_bound, z_relations)
from .poly import AmbientRing, Poly, presentation_ring

_X_NAME = re.compile(r"X\d+$")


@dataclass
class FiberPresentation:
    """Ordered minimal generators g_1..g_n of I, Q-positions P, and phi: X_k -> g_k t."""

    base: AmbientRing
    gens: tuple
    qidx: tuple
    ctx: TruncationContext
    backend: object = None
    _candidate: CandidateIdeal | None = dc_field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def d(self) -> int:
        return len(self.qidx)

    @cached_property
    def ring(self) -> AmbientRing:
        return presentation_ring(self.n, self.base.field)

    def X(self, k: int) -> Poly:
        return self.ring.var(k)

    @property
    def q_variables(self) -> list[Poly]:
        return [self.X(p) for p in self.qidx]

    def phi_table(self) -> list[tuple[str, str]]:
        return [(self.ring.names[k], f"({g})*t") for k, g in enumerate(self.gens)]

    @property
    def candidate(self) -> CandidateIdeal:
        if self._candidate is None:
            ladder = build_ladder(self.gens, self.qidx, self.ctx, self.backend)
            sel = select_min_gens(ladder)
            self._candidate = CandidateIdeal(ladder, sel, z_relations(ladder, sel))
        return self._candidate

    @property
    def ladder(self):
        return self.candidate.ladder

    def a_ideal(self) -> Ideal:
        return Ideal(self.candidate.generators, self.ring)

    def with_truncation_extra(self, extra: int) -> "FiberPresentation":
        ctx = TruncationContext(self.ctx.s, extra, self.ctx.power_cap)
        return FiberPresentation(self.base, self.gens, self.qidx, ctx, self.backend)


def _check_names(base: AmbientRing):
    for name in base.names:
        if name == "t" or _X_NAME.match(name):
            raise InputError(f"base variable name {name!r} is reserved")
    if base.nvars == 0:
        raise InputError("the base ring has no variables (d = 0 is not supported)")


def build_presentation(I_gens, Q, mode: str = "explicit", power_cap: int = DEFAULT_POWER_CAP,
                       socle_cap: int = DEFAULT_SOCLE_CAP, backend=None) -> FiberPresentation:
    """Validate input and fix the ordered generator list with its Q-positions.

    ``explicit``: ``I_gens`` is the full minimal list and ``Q`` is a sequence of
    0-based positions (or polynomials found verbatim in the list).
    ``autocomplete``: ``Q`` are polynomials; they are extended greedily by
    ``I_gens`` (in order) to a minimal generating set, Q first.
    """
    I_gens = tuple(I_gens)
    spec = IdealSpec(I_gens)
    base = spec.ring
    _check_names(base)
    d = base.nvars
    s = socle_bound(spec, socle_cap, backend)
    ctx = TruncationContext(s, 0, power_cap)
    if mode == "explicit":
        if Q and all(isinstance(q, Poly) for q in Q):
            qidx = []
            for q in Q:
                if q not in I_gens:
                    raise PresentationError(f"explicit mode: Q generator {q} is not in the list")
                qidx.append(I_gens.index(q))
        else:
            qidx = [int(k) for k in Q]
        if len(qidx) != d:
            raise PresentationError(f"Q needs d = {d} generators, got {len(qidx)}")
        if len(set(qidx)) != d or not all(0 <= k < len(I_gens) for k in qidx):
            raise PresentationError(f"bad Q positions {[k + 1 for k in qidx]}")
        rank, keep = minimal_rank(I_gens, ctx, backend)
        if rank != len(I_gens):
            raise PresentationError(
                f"explicit list is not minimal: {len(I_gens)} generators but dim I/mI = {rank}")
        gens = I_gens
    elif mode == "autocomplete":
        Q = tuple(Q)
        if len(Q) != d:
            raise PresentationError(f"Q needs d = {d} generators, got {len(Q)}")
        for q in Q:
            if not isinstance(q, Poly) or q.ring != base:
                raise PresentationError("autocomplete mode needs Q as polynomials in the base ring")
            if not in_ideal_locally(q, I_gens, s + 1, backend):
                raise PresentationError(f"Q not inside I: {q}")
        rank, keep = minimal_rank(Q + I_gens, ctx, backend)
        if keep[:d] != list(range(d)):
            raise PresentationError("Q generators are dependent in I/mI")
        gens = tuple((Q + I_gens)[k] for k in keep)
        qidx = list(range(d))
    else:
        raise InputError(f"unknown mode {mode!r}")
    return FiberPresentation(base, gens, tuple(sorted(qidx)), ctx, backend)


def rees_ring(pres: FiberPresentation) -> AmbientRing:
    return AmbientRing(("t",) + pres.base.names + pres.ring.names, pres.base.field, "elimination")


def kernel_oracle(pres: FiberPresentation) -> Ideal:
    """Ker phi by elimination: J = (X_k - g_k t) meets K[x, X] then x -> 0 on generators."""
    big = rees_ring(pres)
    m, n = pres.base.nvars, pres.n
    base_map = list(range(1, m + 1))
    gens = []
    for k, g in enumerate(pres.gens):
        gens.append(big.var(1 + m + k) - g.to_ring(big, base_map) * big.var(0))
    rees = Ideal(gens, big).eliminate([0])  # in K[x, X]
    sub = rees.ring
    kill = list(range(m))
    x_map = [-1] * m + list(range(n))
    images = []
    for h in rees.gens:
        h0 = h.set_zero(kill)
        if h0:
            images.append(h0.to_ring(pres.ring, x_map))
    assert sub.names[m:] == pres.ring.names
    return Ideal(images, pres.ring)


@dataclass(frozen=True)
class CMResult:
    is_cm: bool
    regular_prefix: int
    depth_zero: bool


def cm_check(ker: Ideal, pres: FiberPresentation) -> CMResult:
    """Sequential regularity of the Q-variables on K[X]/ker; depth-zero via the socle."""
    J = ker
    prefix = 0
    for X in pres.q_variables:
        if not J.colon(X).equals(J):
            break
        prefix += 1
        J = J.plus([X])
    is_cm = prefix == pres.d
    if prefix > 0:
        # a regular element exists, so (ker : m) = ker
        depth_zero = False
    else:
        depth_zero = not ker.colon(pres.ring.gens()).equals(ker)
    return CMResult(is_cm, prefix, depth_zero)


@dataclass
class VerificationReport:
    r: int
    u: tuple
    n: int
    d: int
    socle_bound: int
    lhs: int
    rhs: int
    a_generators: list
    kernel_generators: list
    a_in_kernel: bool
    a_equals_kernel: bool
    is_cm: bool
    regular_prefix: int
    depth_zero: bool
    top_degree_contained: bool
    fiber_dims: list = dc_field(default_factory=list)

    @property
    def lengths_equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def theorem_consistent(self) -> bool:
        return (self.a_in_kernel and self.top_degree_contained and self.lhs >= self.rhs
                and (not self.is_cm or (self.lengths_equal and self.a_equals_kernel)))

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "u": list(self.u),
            "n": self.n,
            "d": self.d,
            "socle_bound": self.socle_bound,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lengths_equal": self.lengths_equal,
            "a_generators": [str(f) for f in self.a_generators],
            "kernel_generators": [str(f) for f in self.kernel_generators],
            "a_in_kernel": self.a_in_kernel,
            "a_equals_kernel": self.a_equals_kernel,
            "is_CM": self.is_cm,
            "regular_prefix": self.regular_prefix,
            "depth_zero": self.depth_zero,
            "top_degree_contained": self.top_degree_contained,
            "theorem_consistent": self.theorem_consistent,
            "fiber_dims": list(self.fiber_dims),
        }


def top_degree_contained(a_plus_q: Ideal, r: int) -> bool:
    """Every monomial of degree r+1 reduces to 0 modulo a + (X_P)."""
    red = a_plus_q.gb().reducer()
    return all(not red.normal_form(m.terms) for m in monomials_of_degree(a_plus_q.ring, r + 1))


def verify_presentation(pres: FiberPresentation, strict: bool = True) -> VerificationReport:
    cand = pres.candidate
    ladder = cand.ladder
    a = pres.a_ideal()
    aq = a.plus(pres.q_variables)
    lhs = aq.colength()
    rhs = fiber_colength_rhs(ladder)
    ker = kernel_oracle(pres)
    a_in = ker.contains_ideal(a)
    a_eq = a_in and a.contains_ideal(ker)
    cm = cm_check(ker, pres)
    report = VerificationReport(
        r=ladder.r, u=ladder.u, n=pres.n, d=pres.d, socle_bound=pres.ctx.s, lhs=lhs, rhs=rhs,
        a_generators=list(cand.generators), kernel_generators=list(ker.gb().polys),
        a_in_kernel=a_in, a_equals_kernel=a_eq, is_cm=cm.is_cm, regular_prefix=cm.regular_prefix,
        depth_zero=cm.depth_zero, top_degree_contained=top_degree_contained(aq, ladder.r),
        fiber_dims=ladder.fiber_dims(ladder.r + 1),
    )
    if strict and not report.theorem_consistent:
        raise TheoremConsistencyError(f"theorem consistency violated: {report.to_dict()}")
    return report


def verify_theorem(I_gens, Q, mode: str = "explicit", strict: bool = True, **kw) -> VerificationReport:
    return verify_presentation(build_presentation(I_gens, Q, mode, **kw), strict)


@dataclass(frozen=True)
class ReductionFound:
    q_gens: tuple
    coefficients: tuple  # one row of integers per Q generator
    attempt: int
    presentation: FiberPresentation


def forms_cut_to_dimension_zero(ker: Ideal, coeffs) -> bool:
    """Whether the linear forms sum_j c_kj X_j make K[X]/ker Artinian.

    For a kernel of phi over the listed generators this holds exactly when the
    corresponding combinations generate a reduction of I (graded Nakayama on
    the fiber cone).
    """
    X = ker.ring.gens()
    forms = [sum((X[j].scalar_mul(c) for j, c in enumerate(row) if c), ker.ring.zero())
             for row in coeffs]
    return ker.plus(forms).dimension() == 0


def find_reduction(I_gens, seed: int = 0, attempts: int = 20, coeff_bound: int = 5,
                   power_cap: int = DEFAULT_POWER_CAP, socle_cap: int = DEFAULT_SOCLE_CAP,
                   screen: bool = True, backend=None) -> ReductionFound:
    """Random small-integer combinations of the generators until one is a reduction.

    Acceptance is the ladder test (u_(r+1) = 0 within ``power_cap``).  With
    ``screen`` a candidate is first rejected when its linear forms do not cut
    K[X]/Ker(phi) down to dimension 0; by graded Nakayama that happens
    exactly when Q is not a reduction, and it is far cheaper than running a
    ladder up to the cap.
    """
    I_gens = tuple(I_gens)
    spec = IdealSpec(I_gens)
    base = spec.ring
    _check_names(base)
    d = base.nvars
    s = socle_bound(spec, socle_cap, backend)  # raises when I is not m-primary
    if attempts < 1:
        raise InputError("attempts must be >= 1")
    ker = None
    if screen:
        raw = FiberPresentation(base, I_gens, (), TruncationContext(s, 0, power_cap), backend)
        ker = kernel_oracle(raw)
    rng = random.Random(seed)
    for attempt in range(1, attempts + 1):
        coeffs = tuple(tuple(rng.randint(-coeff_bound, coeff_bound) for _ in I_gens) for _ in range(d))
        q = []
        for row in coeffs:
            f = base.zero()
            for c, g in zip(row, I_gens):
                if c:
                    f = f + g.scalar_mul(c)
            q.append(f)
        if any(f.is_zero() for f in q):
            continue
        if ker is not None and not forms_cut_to_dimension_zero(ker, coeffs):
            continue
        try:
            pres = build_presentation(I_gens, q, "autocomplete", power_cap, socle_cap, backend)
            socle_bound(q, socle_cap, backend)
            build_ladder(pres.gens, pres.qidx, pres.ctx, backend)
        except (NotPrimaryError, NotReductionError, PresentationError):
            continue
        return ReductionFound(tuple(q), coeffs, attempt, pres)
    raise NoReductionFound(f"no reduction found in {attempts} attempts (inconclusive)")
