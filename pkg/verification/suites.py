"""
Verification suites. Each suite takes SuiteOptions and returns a list of
Check results; nothing here raises on a failed property.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

import config
from models import skeleton
from models.adjunctions import (
    additivity_check,
    adjunction_derivative_negshift,
    adjunction_negshift_shift,
    coinduction_dims,
    coinduction_ses,
    exactness_checks,
    gl_recovery,
    section_inclusion_failures,
)
from models.fimodule import DegreeVector, identity_map, saturate_submodule, validate
from models.free import make_free, yoneda_from_element, yoneda_to_element
from models.functors import (
    FunctorTag,
    apply_functor,
    derivative,
    iota_nat,
    leibniz_defect,
    partial_matrix,
)
from models.hom import dim_hom, hom_space
from models.random_modules import random_composable, random_family, random_injection, random_module
from models.scalars import FieldSpec, Matrix
from models.witnesses import Check, alpha_iso, beta_iso, eta_iso, gamma_iso, theta_big, theta_small

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteOptions:
    field: FieldSpec
    trunc: int = config.DEFAULT_TRUNC
    seed: int = config.DEFAULT_SEED
    count: int = config.DEFAULT_COUNT
    profile: str = config.DEFAULT_PROFILE

    @property
    def dagger_trunc(self) -> int:
        return min(self.trunc, config.DAGGER_TRUNC)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def family(self, trunc: int | None = None):
        return random_family(self.seed, self.count, self.field, self.trunc if trunc is None else trunc, self.profile)


SUITE_FUNCTIONS: dict[str, Callable[[SuiteOptions], list[Check]]] = {}


def suite(name: str):
    def register(fn):
        SUITE_FUNCTIONS[name] = fn
        return fn

    return register


def _all_injections(trunc: int):
    for n in range(trunc + 1):
        for m in range(n + 1):
            yield from skeleton.enumerate_injections(m, n)


@suite("skeleton")
def skeleton_suite(options: SuiteOptions) -> list[Check]:
    rng = options.rng(1)
    counts = all(
        len(set(skeleton.enumerate_injections(m, n))) == math.perm(n, m)
        for n in range(8)
        for m in range(n + 1)
    )
    triples = [random_composable(rng, 6, 3) for _ in range(config.SAMPLE_TRIPLES)]
    associative = all(
        skeleton.compose(h, skeleton.compose(g, f)) == skeleton.compose(skeleton.compose(h, g), f)
        for f, g, h in triples
    )
    pairs = [random_composable(rng, 6, 2) for _ in range(config.SAMPLE_PAIRS)]
    sigma = all(
        skeleton.sigma_extend(skeleton.compose(g, f))
        == skeleton.compose(skeleton.sigma_extend(g), skeleton.sigma_extend(f))
        for f, g in pairs
    )
    restrict = True
    for f, g in pairs:
        if f.source == 0:
            continue
        x = int(rng.integers(1, f.source + 1))
        lhs = skeleton.restrict_removing(skeleton.compose(g, f), x)
        rhs = skeleton.compose(skeleton.restrict_removing(g, f(x)), skeleton.restrict_removing(f, x))
        restrict = restrict and lhs == rhs
    boundary = all(
        skeleton.join_map(skeleton.boundary_removal(f, y), y).images[: f.source] == f.images
        for f in _all_injections(5)
        for y in f.missed()
    )
    factorization = all(
        skeleton.evaluate_word(skeleton.canonical_factorization(f)) == f for f in _all_injections(6)
    )
    return [
        Check("injection_counts", counts, "n!/(n-m)! for 0 ≤ m ≤ n ≤ 7"),
        Check("composition_associative", associative, f"{len(triples)} triples"),
        Check("sigma_functorial", sigma, f"{len(pairs)} pairs"),
        Check("restriction_compatible", restrict, f"{len(pairs)} pairs"),
        Check("boundary_join_round_trip", boundary, "all injections with n ≤ 5"),
        Check("factorization_reevaluates", factorization, "all injections with n ≤ 6"),
    ]


@suite("functoriality")
def functoriality_suite(options: SuiteOptions) -> list[Check]:
    rng = options.rng(2)
    checks = []
    for k, V in enumerate(options.family()):
        images = [apply_functor(tag, V) for tag in FunctorTag]
        valid = validate(V).ok and all(validate(W).ok for W in images)
        checks.append(Check(f"module_{k}_valid", valid, f"dims {list(V.dims)} and its S, D, S̃₋₁, Q′ images"))
        pairs = [random_composable(rng, V.trunc, 2) for _ in range(config.SAMPLE_PAIRS)]
        multiplicative = all(
            V.matrix_of(skeleton.compose(g, f)) == V.matrix_of(g) @ V.matrix_of(f) for f, g in pairs
        )
        identities = all(V.matrix_of(skeleton.identity(n)).is_identity() for n in range(V.trunc + 1))
        checks.append(Check(f"module_{k}_multiplicative", multiplicative and identities, f"{len(pairs)} pairs"))
        iota = iota_nat(V)
        _, pi = derivative(V)
        vanishes = all((p @ i).is_zero() for p, i in zip(pi.components, iota.components))
        checks.append(Check(f"module_{k}_iota", iota.is_natural() and vanishes, "ι natural and π∘ι = 0"))
    return checks


@suite("leibniz")
def leibniz_suite(options: SuiteOptions) -> list[Check]:
    rng = options.rng(3)
    checks = []
    for k, V in enumerate(options.family()):
        pairs = [random_composable(rng, V.trunc, 2) for _ in range(config.SAMPLE_PAIRS)]
        holds = all(leibniz_defect(V, g, f).is_zero() for f, g in pairs)
        checks.append(Check(f"module_{k}_leibniz", holds, f"{len(pairs)} composable pairs"))
        bijections = [random_injection(rng, n, n) for n in range(V.trunc + 1)]
        split = all(partial_matrix(V, f).is_zero() for f in bijections)
        checks.append(Check(f"module_{k}_fb_block_diagonal", split, "∂f_* = 0 for bijections"))
    return checks


@suite("eta")
def eta_suite(options: SuiteOptions) -> list[Check]:
    N = config.ETA_TRUNC
    checks = []
    for m in range(4):
        witness = eta_iso(m, options.field, N)
        ok = witness.verified and witness.report.permutation
        checks.append(Check(f"eta_{m}", ok, witness.report.describe()))
        source, target = witness.map.source, witness.map.target
        dims = all(
            source.dim(n) == math.perm(n, m + 1) and target.dim(n) == (n * math.perm(n - 1, m) if n else 0)
            for n in range(N + 1)
        )
        checks.append(Check(f"eta_{m}_dimensions", dims, f"{list(source.dims)} vs {list(target.dims)}"))
    return checks


@suite("theta")
def theta_suite(options: SuiteOptions) -> list[Check]:
    N = options.trunc
    checks = []
    for m in range(min(4, N)):
        big = theta_big(m, options.field, N)
        checks.append(Check(f"Theta_{m}", big.verified and big.report.permutation, big.report.describe()))
        small = theta_small(m, options.field, N)
        checks.append(Check(f"theta_{m}", small.verified, small.report.describe()))
    return checks


def _natural_on_samples(phi, rng, samples: int) -> bool:
    for _ in range(samples):
        f = random_composable(rng, phi.trunc, 1)[0]
        if phi.component(f.target) @ phi.source.matrix_of(f) != phi.target.matrix_of(f) @ phi.component(f.source):
            return False
    return True


@suite("hom")
def hom_suite(options: SuiteOptions) -> list[Check]:
    rng = options.rng(4)
    N = options.dagger_trunc
    field = options.field
    checks = []
    augmentation = dim_hom(make_free(1, field, N), make_free(0, field, N))
    checks.append(Check("augmentation", augmentation == 1, f"dim Hom(M([1]), M([0])) = {augmentation}"))
    small = make_free(1, field, 3)
    full = hom_space(small, small, generators_only=False).dim
    checks.append(Check("generators_suffice", full == dim_hom(small, small), f"{full} on all injections"))
    for k, V in enumerate(options.family(N)):
        yoneda = all(dim_hom(make_free(m, field, N), V) == V.dim(m) for m in range(min(N, 2) + 1))
        checks.append(Check(f"module_{k}_yoneda_dims", yoneda, f"dims {list(V.dims)}"))
        space = hom_space(make_free(1, field, N), V)
        round_trip = all(
            yoneda_from_element(V, yoneda_to_element(phi, 1)).components == phi.components for phi in space.basis
        )
        checks.append(Check(f"module_{k}_yoneda_round_trip", round_trip, f"{space.dim} basis maps"))
        ends = hom_space(V, V)
        identity = identity_map(V)
        spans = ends.combine(ends.coordinates(identity)).components == identity.components
        sound = all(_natural_on_samples(phi, rng, 20) for phi in ends.basis)
        checks.append(Check(f"module_{k}_endomorphisms", spans and sound, f"dim End = {ends.dim}"))
    return checks


def _dagger_suite(options: SuiteOptions, builder, name: str) -> list[Check]:
    checks = []
    for k, V in enumerate(options.family(options.dagger_trunc)):
        witness = builder(V)
        checks.append(Check(f"{name}_{k}", witness.verified, witness.report.describe()))
    return checks


@suite("alpha")
def alpha_suite(options: SuiteOptions) -> list[Check]:
    return _dagger_suite(options, alpha_iso, "alpha")


@suite("beta")
def beta_suite(options: SuiteOptions) -> list[Check]:
    return _dagger_suite(options, beta_iso, "beta")


@suite("gamma")
def gamma_suite(options: SuiteOptions) -> list[Check]:
    return _dagger_suite(options, gamma_iso, "gamma")


@suite("adjunctions")
def adjunctions_suite(options: SuiteOptions) -> list[Check]:
    N = options.dagger_trunc
    rng = options.rng(5)
    pairs = config.ADJUNCTION_PAIRS
    seeds = rng.integers(0, 2**63 - 1, size=(pairs, 2))
    checks = []
    for k, (a, b) in enumerate(seeds):
        V = random_module(int(a), options.profile, options.field, N)
        W = random_module(int(b), options.profile, options.field, N)
        for result in (adjunction_negshift_shift(V, W, rng), adjunction_derivative_negshift(V, W, rng)):
            checks += [Check(f"pair_{k}_{c.name}", c.passed, c.detail) for c in result.checks]
    return checks


@suite("ses")
def ses_suite(options: SuiteOptions) -> list[Check]:
    checks = []
    for k, V in enumerate(options.family()):
        checks += [Check(f"module_{k}_{c.name}", c.passed, c.detail) for c in coinduction_ses(V)]
    failures = section_inclusion_failures(make_free(0, options.field, options.trunc))
    checks.append(
        Check("section_not_fi_natural", "inclusion 0->1" in failures, f"M([0]) fails against {failures}")
    )
    return checks


@suite("gl")
def gl_suite(options: SuiteOptions) -> list[Check]:
    N = options.trunc
    checks = []
    for m in range(min(3, N)):
        recovery = gl_recovery(m, options.field, N)
        checks += [Check(f"m{m}_{c.name}", c.passed, c.detail) for c in recovery.checks()]
        dims = recovery.witness.map.target.dims
        expected = tuple(math.perm(n, m) + math.perm(n, m + 1) for n in range(N + 1))
        checks.append(Check(f"m{m}_dims", dims == expected, f"{list(dims)}"))
    return checks


@suite("hypotheses")
def hypotheses_suite(options: SuiteOptions) -> list[Check]:
    N = options.dagger_trunc
    rng = options.rng(6)
    field = options.field
    checks = []
    for k in range(options.count):
        V = random_module(int(rng.integers(0, 2**63 - 1)), "free", field, N)
        n = int(rng.choice([d for d in range(N + 1) if V.dim(d)]))
        coords = [[int(c)] for c in rng.integers(-2, 3, size=V.dim(n))]
        sub = saturate_submodule(V, [DegreeVector(n, Matrix.from_rows(field, coords, 1))])
        for tag in FunctorTag:
            checks += [Check(f"sample_{k}_{c.name}", c.passed, c.detail) for c in exactness_checks(tag, V, sub)]
        W = random_module(int(rng.integers(0, 2**63 - 1)), options.profile, field, N)
        for tag in FunctorTag:
            c = additivity_check(tag, V, W)
            checks.append(Check(f"sample_{k}_{c.name}", c.passed, c.detail))
        checks += [Check(f"sample_{k}_{c.name}", c.passed, c.detail) for c in coinduction_dims(W)]
    return checks


def run_checks(name: str, options: SuiteOptions) -> list[Check]:
    if name not in SUITE_FUNCTIONS:
        raise KeyError(f"unknown suite {name!r}")
    logger.debug("running suite %s with %s", name, options)
    return SUITE_FUNCTIONS[name](options)
