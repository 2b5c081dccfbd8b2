"""
The adjunctions S̃₋₁ ⊣ S and D ⊣ S̃₋₁ with explicit bijections, units and
counits; the coinduction sequence 0 -> S̃₋₁V -> Q′V -> V -> 0; the splitting
Q′M([m]) ≅ M([m]) ⊕ M([m+1]); and the exactness and additivity properties of
the four functors.

Windows: for V, W of truncation N,
    Hom_{≤N}(S̃₋₁V, W)   ≅ Hom_{≤N-1}(V, SW)
    Hom_{≤N-1}(DV, W)   ≅ Hom_{≤N}(V, S̃₋₁W)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from models import skeleton
from models.errors import DegreeBoundError
from models.fimodule import (
    DegreeVector,
    FIModuleMap,
    TruncatedFIModule,
    compose_maps,
    direct_sum,
    identity_map,
    quotient_module,
    submodule,
)
from models.free import make_free, yoneda_from_element
from models.functors import (
    FunctorTag,
    apply_functor,
    apply_functor_map,
    derivative,
    derivative_data,
    derivative_map,
    neg_shift,
    neg_shift_map,
    q_prime,
    q_prime_section,
    shift,
    shift_map,
)
from models.hom import HomSpace, dim_hom, hom_space
from models.scalars import Matrix, block_matrix, hstack, identity, rank, vstack, zeros
from models.witnesses import Check, IsoWitness, eta_map, verify_iso

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdjunctionResult:
    name: str
    flat: Callable[[FIModuleMap], FIModuleMap]
    sharp: Callable[[FIModuleMap], FIModuleMap]
    left: HomSpace
    right: HomSpace
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _same(f: FIModuleMap, g: FIModuleMap) -> bool:
    return f.components == g.components


def _is_identity(phi: FIModuleMap) -> bool:
    return all(c.is_identity() for c in phi.components)


def _random_element(space: HomSpace, rng: np.random.Generator) -> FIModuleMap:
    coefficients = [int(c) for c in rng.integers(-2, 3, size=space.dim)]
    return space.combine(coefficients)


# -- S̃₋₁ ⊣ S ----------------------------------------------------------------


def negshift_shift_flat(psi: FIModuleMap, V: TruncatedFIModule) -> FIModuleMap:
    """ψ: S̃₋₁V -> W  ↦  (v ∈ V_n ↦ ψ_{n+1}(v in the summand of n+1))."""
    source = V.truncate(psi.trunc - 1)
    components = []
    for n in range(psi.trunc):
        width = source.dim(n)
        block = psi.component(n + 1)
        components.append(block.submatrix(range(block.rows), range(n * width, (n + 1) * width)))
    return FIModuleMap(source, shift(psi.target), tuple(components))


def _star_to(n: int, x: int) -> skeleton.Injection:
    # bijection of [n] sending ⋆ = n to x, order preserving elsewhere
    return skeleton.join_map(skeleton.identity(n - 1), target_slot=x)


def negshift_shift_sharp(phi: FIModuleMap, W: TruncatedFIModule) -> FIModuleMap:
    """φ: V -> SW  ↦  (summand x of degree n ↦ W(⋆ -> x) · φ_{n-1})."""
    if W.trunc != phi.trunc + 1:
        raise DegreeBoundError(f"W must have truncation {phi.trunc + 1}, got {W.trunc}")
    V = phi.source
    source = neg_shift(V, extended=True)
    field = W.field
    components = [zeros(field, W.dim(0), 0)]
    for n in range(1, W.trunc + 1):
        blocks = [W.matrix_of(_star_to(n, x)) @ phi.component(n - 1) for x in range(1, n + 1)]
        components.append(hstack(field, W.dim(n), blocks))
    return FIModuleMap(source, W, tuple(components))


def unit_negshift_shift(V: TruncatedFIModule) -> FIModuleMap:
    """u: V -> S S̃₋₁V, v ↦ v in the summand of ⋆."""
    return negshift_shift_flat(identity_map(neg_shift(V, extended=True)), V)


def counit_negshift_shift(W: TruncatedFIModule) -> FIModuleMap:
    """c: S̃₋₁SW -> W, summand x acting by W(⋆ -> x)."""
    return negshift_shift_sharp(identity_map(shift(W)), W)


def negshift_shift_triangles(V: TruncatedFIModule, W: TruncatedFIModule) -> list[Check]:
    u = unit_negshift_shift(V)
    X = neg_shift(V, extended=True)
    first = compose_maps(counit_negshift_shift(X), neg_shift_map(u, extended=True))
    checks = [Check("triangle_negshift", _is_identity(first), f"c ∘ S̃₋₁(u) on degrees ≤ {first.trunc}")]
    if W.trunc >= 1:
        SW = shift(W)
        second = compose_maps(shift_map(counit_negshift_shift(W)), unit_negshift_shift(SW))
        checks.append(Check("triangle_shift", _is_identity(second), f"S(c) ∘ u on degrees ≤ {second.trunc}"))
    return checks


def adjunction_negshift_shift(
    V: TruncatedFIModule,
    W: TruncatedFIModule,
    rng: np.random.Generator | None = None,
    samples: int = 2,
) -> AdjunctionResult:
    if V.trunc != W.trunc or V.trunc < 1:
        raise DegreeBoundError("both modules need the same truncation N >= 1")
    N = V.trunc
    rng = rng if rng is not None else np.random.default_rng(0)
    left = hom_space(neg_shift(V), W, N)
    right = hom_space(V.truncate(N - 1), shift(W), N - 1)

    def flat(psi):
        return negshift_shift_flat(psi, V)

    def sharp(phi):
        return negshift_shift_sharp(phi, W)

    def naturality(psi, a, b):
        moved = compose_maps(b, compose_maps(psi, neg_shift_map(a)))
        expected = compose_maps(shift_map(b), compose_maps(flat(psi), a.restrict(N - 1)))
        return _same(flat(moved), expected)

    checks = _bijection_checks("negshift_shift", left, right, flat, sharp)
    checks += _naturality_checks("negshift_shift", V, W, left, naturality, rng, samples)
    checks += negshift_shift_triangles(V, W)
    logger.debug("S̃₋₁ ⊣ S: %d/%d checks pass", sum(c.passed for c in checks), len(checks))
    return AdjunctionResult("negshift_shift", flat, sharp, left, right, tuple(checks))


# -- D ⊣ S̃₋₁ ----------------------------------------------------------------


def _to_star(n: int, x: int) -> skeleton.Injection:
    # bijection of [n] sending x to ⋆ = n, order preserving elsewhere
    return skeleton.join_map(skeleton.identity(n - 1), target_slot=n, source_slot=x)


def unit_derivative_negshift(V: TruncatedFIModule) -> FIModuleMap:
    """V -> S̃₋₁DV, v ↦ (π(V(x -> ⋆) v))_x."""
    DV, pi = derivative(V)
    target = neg_shift(DV, extended=True)
    field = V.field
    components = [zeros(field, 0, V.dim(0))]
    for n in range(1, V.trunc + 1):
        blocks = [pi.component(n - 1) @ V.matrix_of(_to_star(n, x)) for x in range(1, n + 1)]
        components.append(vstack(field, V.dim(n), blocks))
    return FIModuleMap(V, target, tuple(components))


def counit_derivative_negshift(W: TruncatedFIModule) -> FIModuleMap:
    """DS̃₋₁W -> W, reading the summand of ⋆ = n+1 off the cokernel section."""
    X = neg_shift(W, extended=True)
    DX, _ = derivative(X)
    data = derivative_data(X)
    field = W.field
    components = []
    for n in range(W.trunc + 1):
        width = W.dim(n)
        pick = block_matrix(field, [width], [width] * (n + 1), {(0, n): identity(field, width)})
        components.append(pick @ data[n][1])
    return FIModuleMap(DX, W, tuple(components))


def derivative_negshift_flat(psi: FIModuleMap, V: TruncatedFIModule) -> FIModuleMap:
    """ψ: DV -> W  ↦  S̃₋₁(ψ) ∘ unit."""
    return compose_maps(neg_shift_map(psi, extended=True), unit_derivative_negshift(V))


def derivative_negshift_sharp(phi: FIModuleMap, W: TruncatedFIModule) -> FIModuleMap:
    """φ: V -> S̃₋₁W  ↦  counit ∘ D(φ), with W truncated one below φ."""
    return compose_maps(counit_derivative_negshift(W), derivative_map(phi))


def derivative_negshift_triangles(V: TruncatedFIModule, W: TruncatedFIModule) -> list[Check]:
    DV, _ = derivative(V)
    first = compose_maps(counit_derivative_negshift(DV), derivative_map(unit_derivative_negshift(V)))
    X = neg_shift(W, extended=True)
    second = compose_maps(neg_shift_map(counit_derivative_negshift(W), extended=True), unit_derivative_negshift(X))
    return [
        Check("triangle_derivative", _is_identity(first), f"ε ∘ D(unit) on degrees ≤ {first.trunc}"),
        Check("triangle_negshift_right", _is_identity(second), f"S̃₋₁(ε) ∘ unit on degrees ≤ {second.trunc}"),
    ]


def adjunction_derivative_negshift(
    V: TruncatedFIModule,
    W: TruncatedFIModule,
    rng: np.random.Generator | None = None,
    samples: int = 2,
) -> AdjunctionResult:
    if V.trunc != W.trunc or V.trunc < 1:
        raise DegreeBoundError("both modules need the same truncation N >= 1")
    N = V.trunc
    rng = rng if rng is not None else np.random.default_rng(0)
    low = W.truncate(N - 1)
    DV, _ = derivative(V)
    left = hom_space(DV, low, N - 1)
    right = hom_space(V, neg_shift(low, extended=True), N)

    def flat(psi):
        return derivative_negshift_flat(psi, V)

    def sharp(phi):
        return derivative_negshift_sharp(phi, low)

    def naturality(psi, a, b):
        moved = compose_maps(b.restrict(N - 1), compose_maps(psi, derivative_map(a)))
        expected = compose_maps(neg_shift_map(b.restrict(N - 1), extended=True), compose_maps(flat(psi), a))
        return _same(flat(moved), expected)

    checks = _bijection_checks("derivative_negshift", left, right, flat, sharp)
    checks += _naturality_checks("derivative_negshift", V, W, left, naturality, rng, samples)
    checks += derivative_negshift_triangles(V, low)
    logger.debug("D ⊣ S̃₋₁: %d/%d checks pass", sum(c.passed for c in checks), len(checks))
    return AdjunctionResult("derivative_negshift", flat, sharp, left, right, tuple(checks))


# -- shared battery ---------------------------------------------------------


def _bijection_checks(name, left: HomSpace, right: HomSpace, flat, sharp) -> list[Check]:
    checks = [Check(f"{name}_dims", left.dim == right.dim, f"{left.dim} vs {right.dim}")]
    flats = [flat(psi) for psi in left.basis]
    sharps = [sharp(phi) for phi in right.basis]
    natural = all(phi.is_natural() for phi in flats) and all(psi.is_natural() for psi in sharps)
    checks.append(Check(f"{name}_well_defined", natural, f"{len(flats)} + {len(sharps)} transported maps"))
    back = all(_same(sharp(phi), psi) for phi, psi in zip(flats, left.basis))
    forth = all(_same(flat(psi), phi) for psi, phi in zip(sharps, right.basis))
    checks.append(Check(f"{name}_round_trip", back and forth, "sharp∘flat and flat∘sharp are identities"))
    if flats and natural:
        independent = rank(right.coordinate_matrix(flats)) == len(flats)
    else:
        independent = not flats
    checks.append(Check(f"{name}_injective", independent, "flat sends a basis to independent maps"))
    return checks


def _naturality_checks(name, V, W, left: HomSpace, naturality, rng, samples) -> list[Check]:
    if not left.dim:
        return [Check(f"{name}_natural", True, "empty Hom space")]
    ends_v = hom_space(V, V)
    ends_w = hom_space(W, W)
    ok = True
    for _ in range(samples):
        psi = _random_element(left, rng)
        a = _random_element(ends_v, rng)
        b = _random_element(ends_w, rng)
        ok = ok and naturality(psi, a, b)
    return [Check(f"{name}_natural", ok, f"{samples} sampled endomorphism pairs")]


# -- coinduction ------------------------------------------------------------


def section_inclusion_failures(V: TruncatedFIModule) -> list[str]:
    """Inclusions I[n] against which the top-block section is not natural."""
    Q, _, _ = q_prime(V)
    failures = []
    for n in range(V.trunc):
        if Q.inclusion(n) @ q_prime_section(V, n) != q_prime_section(V, n + 1) @ V.inclusion(n):
            failures.append(f"inclusion {n}->{n + 1}")
    return failures


def coinduction_ses(V: TruncatedFIModule) -> list[Check]:
    """0 -> S̃₋₁V -> Q′V -> V -> 0 is exact and splits over FB."""
    Q, kappa, p = q_prime(V)
    neg = kappa.source
    exact, details = True, []
    for n in range(V.trunc + 1):
        k, q = kappa.component(n), p.component(n)
        rk, rp = rank(k), rank(q)
        ok = rk == neg.dim(n) and rp == V.dim(n) and (q @ k).is_zero() and rk + rp == Q.dim(n)
        exact = exact and ok
        details.append(f"{neg.dim(n)}->{Q.dim(n)}->{V.dim(n)}")
    fb = all(
        Q.transposition(n, i) @ q_prime_section(V, n) == q_prime_section(V, n) @ V.transposition(n, i)
        for n in range(2, V.trunc + 1)
        for i in range(1, n)
    )
    failures = section_inclusion_failures(V)
    return [
        Check("ses_exact", exact, ", ".join(details)),
        Check("ses_natural", kappa.is_natural() and p.is_natural(), "κ and p commute with all generators"),
        Check("ses_fb_split", fb, f"section fails against {len(failures)} inclusions"),
    ]


@dataclass(frozen=True)
class GLRecovery:
    witness: IsoWitness
    naive_violations: tuple[str, ...]

    def checks(self) -> list[Check]:
        naive = f"block-diagonal map fails on {len(self.naive_violations)} generators"
        return [self.witness.check(), Check("gl_naive_map_not_natural", bool(self.naive_violations), naive)]


def gl_recovery(m: int, field, trunc: int) -> GLRecovery:
    """Q′M([m]) ≅ M([m]) ⊕ M([m+1]) as FI-modules."""
    if m + 1 > trunc:
        raise DegreeBoundError(f"the splitting for m={m} needs truncation >= {m + 1}")
    V = make_free(m, field, trunc)
    Q, kappa, _ = q_prime(V)
    total = direct_sum(V, make_free(m + 1, field, trunc))
    start = identity(field, Q.dim(m)).column(0)
    head = yoneda_from_element(Q, DegreeVector(m, start))
    tail = compose_maps(kappa, eta_map(m, field, trunc))
    components = tuple(
        hstack(field, Q.dim(n), [head.component(n), tail.component(n)]) for n in range(trunc + 1)
    )
    witness = verify_iso("gl_splitting", FIModuleMap(total.module, Q, components))
    naive = tuple(
        hstack(field, Q.dim(n), [q_prime_section(V, n), tail.component(n)]) for n in range(trunc + 1)
    )
    violations = FIModuleMap(total.module, Q, naive).naturality_violations()
    return GLRecovery(witness, tuple(violations))


def coinduction_dims(W: TruncatedFIModule) -> list[Check]:
    """dim Hom(S M([m]), W) = dim (Q′W)_m, the Yoneda shadow of S ⊣ Q."""
    Q, _, _ = q_prime(W)
    checks = []
    for m in range(W.trunc):
        source = shift(make_free(m, W.field, W.trunc))
        left = dim_hom(source, W, W.trunc - 1)
        checks.append(Check(f"coinduction_dims_{m}", left == Q.dim(m), f"{left} vs {Q.dim(m)}"))
    return checks


# -- hypotheses on the functors ---------------------------------------------


def exactness_checks(tag: FunctorTag, V: TruncatedFIModule, sub: Sequence[Matrix]) -> list[Check]:
    """F applied to 0 -> K -> V -> V/K -> 0; D is only checked to be right exact."""
    _, inc = submodule(V, sub)
    _, quo = quotient_module(V, sub)
    Fi, Fq = apply_functor_map(tag, inc), apply_functor_map(tag, quo)
    FV = Fi.target
    zero = all((b @ a).is_zero() for a, b in zip(Fi.components, Fq.components))
    onto = all(rank(c) == c.rows for c in Fq.components)
    checks = [Check(f"{tag.value}_complex", zero, "F(q) ∘ F(i) = 0"), Check(f"{tag.value}_onto", onto, "F(q) surjective")]
    if tag is not FunctorTag.DERIVATIVE:
        exact = all(
            rank(a) == a.cols and rank(a) + rank(b) == FV.dim(n)
            for n, (a, b) in enumerate(zip(Fi.components, Fq.components))
        )
        checks.append(Check(f"{tag.value}_exact", exact, "F(i) injective with image ker F(q)"))
    return checks


def additivity_check(tag: FunctorTag, A: TruncatedFIModule, B: TruncatedFIModule) -> Check:
    """F(A ⊕ B) -> F(A) ⊕ F(B) through F of the two projections."""
    total = direct_sum(A, B)
    images = direct_sum(apply_functor(tag, A), apply_functor(tag, B))
    pa, pb = (apply_functor_map(tag, p) for p in total.projections)
    components = tuple(
        vstack(A.field, a.cols, [a, b]) for a, b in zip(pa.components, pb.components)
    )
    witness = verify_iso(f"{tag.value}_additive", FIModuleMap(pa.source, images.module, components))
    return witness.check()
