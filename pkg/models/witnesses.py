"""
Explicit isomorphisms between free-module constructions and the comparison
maps from F†V.

    η: M([m+1]) -> S̃₋₁M([m])
    Θ: M([m]) ⊕ m·M([m-1]) -> S M([m])
    θ: m·M([m-1]) -> D M([m])
    α: (S̃₋₁)†V -> SV,  β: D†V -> S̃₋₁V,  γ: S†V -> Q′V

α, β and γ evaluate every Hom-basis element on the images of identities
under η, θ and Θ respectively.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from models import skeleton
from models.errors import DegreeBoundError
from models.fimodule import (
    FIModuleMap,
    TruncatedFIModule,
    assemble_module,
    compose_maps,
    direct_sum,
    zero_module,
)
from models.free import make_free, rho_map
from models.functors import (
    FunctorTag,
    derivative,
    derivative_map,
    neg_shift,
    neg_shift_map,
    q_prime,
    shift,
    shift_map,
)
from models.hom import HomSpace, hom_space
from models.scalars import FieldSpec, Matrix, from_entries, hstack, rank, vstack, zeros

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """One named pass/fail outcome."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class IsoReport:
    ranks: tuple[int, ...]
    sizes: tuple[int, ...]
    square: bool
    natural: bool
    violations: tuple[str, ...]
    permutation: bool

    @property
    def verified(self) -> bool:
        return self.square and self.natural and self.ranks == self.sizes

    def describe(self) -> str:
        if self.verified:
            return f"iso over degrees 0..{len(self.ranks) - 1}, ranks {list(self.ranks)}"
        if not self.square:
            return "some component is not square"
        if not self.natural:
            return f"not natural: {self.violations[0]}"
        return f"singular component, ranks {list(self.ranks)} vs sizes {list(self.sizes)}"


@dataclass(frozen=True)
class IsoWitness:
    name: str
    map: FIModuleMap
    report: IsoReport

    @property
    def verified(self) -> bool:
        return self.report.verified

    def check(self) -> Check:
        return Check(self.name, self.verified, self.report.describe())


def verify_iso(name: str, phi: FIModuleMap) -> IsoWitness:
    square = all(c.is_square for c in phi.components)
    violations = tuple(phi.naturality_violations())
    report = IsoReport(
        ranks=tuple(rank(c) for c in phi.components),
        sizes=tuple(c.rows for c in phi.components),
        square=square,
        natural=not violations,
        violations=violations,
        permutation=all(c.is_permutation() for c in phi.components),
    )
    logger.debug("%s: %s", name, report.describe())
    return IsoWitness(name, phi, report)


# -- η, Θ, θ ----------------------------------------------------------------


def eta_map(m: int, field: FieldSpec, trunc: int) -> FIModuleMap:
    if m + 1 > trunc:
        raise DegreeBoundError(f"η for m={m} needs truncation >= {m + 1}")
    source = make_free(m + 1, field, trunc)
    small = make_free(m, field, trunc)
    target = neg_shift(small)
    components = []
    for n in range(trunc + 1):
        entries = {}
        if n >= 1:
            index, width = skeleton.injection_index(m, n - 1), small.dim(n - 1)
            for j, f in enumerate(skeleton.enumerate_injections(m + 1, n)):
                rest = skeleton.restrict_removing(f, m + 1)
                entries[((f(m + 1) - 1) * width + index[rest.images], j)] = 1
        components.append(from_entries(field, target.dim(n), source.dim(n), entries))
    return FIModuleMap(source, target, tuple(components))


def eta_iso(m: int, field: FieldSpec, trunc: int) -> IsoWitness:
    return verify_iso("eta", eta_map(m, field, trunc))


def _theta_source(m: int, field: FieldSpec, trunc: int) -> TruncatedFIModule:
    summands = [make_free(m, field, trunc - 1)]
    if m:
        summands += [make_free(m - 1, field, trunc - 1)] * m
    return direct_sum(*summands).module


def theta_big_map(m: int, field: FieldSpec, trunc: int) -> FIModuleMap:
    if m > trunc - 1:
        raise DegreeBoundError(f"Θ for m={m} needs truncation >= {m + 1}")
    big = make_free(m, field, trunc)
    target = shift(big)
    source = _theta_source(m, field, trunc)
    components = []
    for n in range(trunc):
        index = skeleton.injection_index(m, n + 1)
        blocks = [big.inclusion(n)]
        for x in range(1, m + 1):
            basis = skeleton.enumerate_injections(m - 1, n)
            entries = {
                (index[skeleton.join_map(f, target_slot=n + 1, source_slot=x).images], j): 1
                for j, f in enumerate(basis)
            }
            blocks.append(from_entries(field, target.dim(n), len(basis), entries))
        components.append(hstack(field, target.dim(n), blocks))
    return FIModuleMap(source, target, tuple(components))


def theta_big(m: int, field: FieldSpec, trunc: int) -> IsoWitness:
    return verify_iso("Theta", theta_big_map(m, field, trunc))


def theta_small_map(m: int, field: FieldSpec, trunc: int) -> FIModuleMap:
    """θ = π ∘ Θ restricted to the m copies of M([m-1])."""
    big = theta_big_map(m, field, trunc)
    free = make_free(m, field, trunc)
    DM, pi = derivative(free)
    if m == 0:
        source = zero_module(field, trunc - 1)
    else:
        source = direct_sum(*[make_free(m - 1, field, trunc - 1)] * m).module
    components = []
    for n in range(trunc):
        head = free.dim(n)
        tail = big.component(n).submatrix(range(big.target.dim(n)), range(head, big.source.dim(n)))
        components.append(pi.component(n) @ tail)
    return FIModuleMap(source, DM, tuple(components))


def theta_small(m: int, field: FieldSpec, trunc: int) -> IsoWitness:
    return verify_iso("theta", theta_small_map(m, field, trunc))


# -- F† ---------------------------------------------------------------------


def _functor_of_free(tag: FunctorTag, m: int, field: FieldSpec, trunc: int) -> TruncatedFIModule:
    free = make_free(m, field, trunc)
    if tag is FunctorTag.SHIFT:
        return shift(free)
    if tag is FunctorTag.DERIVATIVE:
        return derivative(free)[0]
    if tag is FunctorTag.NEG_SHIFT:
        return neg_shift(free)
    raise ValueError(f"no dagger construction for {tag.value}")


def _functor_of_rho(tag: FunctorTag, rho: FIModuleMap) -> FIModuleMap:
    if tag is FunctorTag.SHIFT:
        return shift_map(rho)
    if tag is FunctorTag.DERIVATIVE:
        return derivative_map(rho)
    return neg_shift_map(rho)


@dataclass(frozen=True)
class DaggerModule:
    """(F†V)_m = Hom(F(M([m])), V) for m ≤ N-1, with f_*(φ) = φ ∘ F(ρ_f)."""

    tag: FunctorTag
    base: TruncatedFIModule
    spaces: tuple[HomSpace, ...]
    module: TruncatedFIModule


def dagger_module(tag: FunctorTag, V: TruncatedFIModule) -> DaggerModule:
    if V.trunc < 1:
        raise DegreeBoundError("F†V needs truncation N >= 1")
    field, N = V.field, V.trunc

    def build():
        spaces = []
        for m in range(N):
            src = _functor_of_free(tag, m, field, N)
            spaces.append(hom_space(src, V, src.trunc))

        def transition(g):
            a, b = g.source, g.target
            pullback = _functor_of_rho(tag, rho_map(a, b, g, field, N))
            moved = [compose_maps(phi, pullback) for phi in spaces[a].basis]
            return spaces[b].coordinate_matrix(moved)

        module = assemble_module(field, N - 1, [s.dim for s in spaces], transition, meta={"dagger": tag.value})
        logger.debug("%s-dagger dims %s", tag.value, module.dims)
        return DaggerModule(tag, V, tuple(spaces), module)

    return V.cached(("dagger", tag), build)


def evaluate_on_generators(space: HomSpace, pieces: Sequence[tuple[int, Matrix]]) -> Matrix:
    """
    Column j stacks φ_j,deg · vec over `pieces`: φ ↦ Σᵢ φ_{Xᵢ}(image of id_{Xᵢ})
    with one summand per piece.
    """
    field = space.source.field
    if not pieces:
        return zeros(field, 0, space.dim)
    rows = sum(space.target.dim(deg) for deg, _ in pieces)
    columns = [
        vstack(field, 1, [phi.component(deg) @ vec for deg, vec in pieces]) for phi in space.basis
    ]
    return hstack(field, rows, columns) if columns else zeros(field, rows, 0)


def alpha_iso(V: TruncatedFIModule) -> IsoWitness:
    dagger = dagger_module(FunctorTag.NEG_SHIFT, V)
    field, N = V.field, V.trunc
    components = []
    for m in range(N):
        eta = eta_map(m, field, N)
        components.append(evaluate_on_generators(dagger.spaces[m], [(m + 1, eta.component(m + 1).column(0))]))
    return verify_iso("alpha", FIModuleMap(dagger.module, shift(V), tuple(components)))


def beta_iso(V: TruncatedFIModule) -> IsoWitness:
    dagger = dagger_module(FunctorTag.DERIVATIVE, V)
    field, N = V.field, V.trunc
    components = []
    for m in range(N):
        theta = theta_small_map(m, field, N)
        width = math.factorial(m - 1) if m else 0
        pieces = [(m - 1, theta.component(m - 1).column((x - 1) * width)) for x in range(1, m + 1)]
        components.append(evaluate_on_generators(dagger.spaces[m], pieces))
    return verify_iso("beta", FIModuleMap(dagger.module, neg_shift(V).truncate(N - 1), tuple(components)))


def gamma_iso(V: TruncatedFIModule) -> IsoWitness:
    dagger = dagger_module(FunctorTag.SHIFT, V)
    field, N = V.field, V.trunc
    components = []
    for m in range(N):
        big = theta_big_map(m, field, N)
        pieces = [(m, big.component(m).column(0))]
        if m:
            head = skeleton.count_injections(m, m - 1)
            width = math.factorial(m - 1)
            pieces += [(m - 1, big.component(m - 1).column(head + (x - 1) * width)) for x in range(1, m + 1)]
        components.append(evaluate_on_generators(dagger.spaces[m], pieces))
    return verify_iso("gamma", FIModuleMap(dagger.module, q_prime(V)[0].truncate(N - 1), tuple(components)))
