"""
Seeded random test modules and random morphisms.

Profiles:
  free      finite sums of M([m]) with m ≤ MAX_GENERATOR_DEGREE
  quotient  a free sum modulo the saturation of random seed vectors
  shifted   S applied to a free or quotient module built one degree higher
  mixed     one of the above, drawn from the seed
"""

from __future__ import annotations

import logging

import numpy as np

import config
from models.fimodule import (
    DegreeVector,
    TruncatedFIModule,
    direct_sum,
    quotient_module,
    saturate_submodule,
)
from models.free import make_free
from models.functors import shift
from models.scalars import FieldSpec, Matrix
from models.skeleton import Injection

logger = logging.getLogger(__name__)


def _free_sum(rng: np.random.Generator, field: FieldSpec, trunc: int) -> TruncatedFIModule:
    count = int(rng.integers(1, config.MAX_SUMMANDS + 1))
    top = min(config.MAX_GENERATOR_DEGREE, trunc)
    gens = sorted(int(m) for m in rng.integers(0, top + 1, size=count))
    return direct_sum(*[make_free(m, field, trunc) for m in gens]).module


def _random_quotient(rng: np.random.Generator, field: FieldSpec, trunc: int) -> TruncatedFIModule:
    base = _free_sum(rng, field, trunc)
    seeds = []
    for _ in range(int(rng.integers(1, 3))):
        degrees = [n for n in range(trunc + 1) if base.dim(n)]
        n = int(rng.choice(degrees))
        coords = [int(c) for c in rng.integers(-2, 3, size=base.dim(n))]
        seeds.append(DegreeVector(n, Matrix.from_rows(field, [[c] for c in coords], 1)))
    sub = saturate_submodule(base, seeds)
    quotient, _ = quotient_module(base, sub)
    return quotient


def random_module(
    seed: int,
    profile: str = config.DEFAULT_PROFILE,
    field: FieldSpec | None = None,
    trunc: int = config.DEFAULT_TRUNC,
) -> TruncatedFIModule:
    """A valid module drawn deterministically from `seed`."""
    if profile not in config.RANDOM_PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {config.RANDOM_PROFILES}")
    field = field or FieldSpec.rationals()
    rng = np.random.default_rng(seed)
    chosen = profile
    if profile == "mixed":
        chosen = str(rng.choice(["free", "quotient", "shifted"]))
    if chosen == "free":
        V = _free_sum(rng, field, trunc)
    elif chosen == "quotient":
        V = _random_quotient(rng, field, trunc)
    else:
        builder = _random_quotient if rng.random() < 0.5 else _free_sum
        V = shift(builder(rng, field, trunc + 1))
    logger.debug("random module seed=%s profile=%s dims=%s", seed, chosen, V.dims)
    return TruncatedFIModule(
        V.field,
        V.trunc,
        V.dims,
        V.transpositions,
        V.inclusions,
        meta={"profile": chosen, "seed": int(seed)},
    )


def random_family(seed: int, count: int, field: FieldSpec, trunc: int, profile: str = config.DEFAULT_PROFILE):
    """`count` modules with seeds derived from `seed`."""
    seeds = np.random.default_rng(seed).integers(0, 2**63 - 1, size=count)
    return [random_module(int(s), profile, field, trunc) for s in seeds]


def random_injection(rng: np.random.Generator, m: int, n: int) -> Injection:
    images = rng.permutation(np.arange(1, n + 1))[:m]
    return Injection(n, tuple(int(v) for v in images))


def random_composable(rng: np.random.Generator, trunc: int, length: int = 2) -> list[Injection]:
    """Injections f_1, ..., f_k with f_{i+1} ∘ f_i defined, all targets ≤ trunc."""
    sizes = sorted(int(s) for s in rng.integers(0, trunc + 1, size=length + 1))
    return [random_injection(rng, sizes[i], sizes[i + 1]) for i in range(length)]
