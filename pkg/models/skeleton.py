"""
Combinatorics of the skeleton of FI.

Objects are [n] = {1..n}. Arbitrary finite sets are encoded through
order-preserving bijections: X ⊔ {⋆} is [n+1] with ⋆ = n+1, and X ∖ {x} is
[n-1] with the elements above x shifted down by one.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from models.errors import InjectionError


@dataclass(frozen=True)
class Injection:
    """An injective map [m] -> [n], stored as its image list."""

    target: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if len(self.images) > self.target:
            raise InjectionError(f"{len(self.images)} points cannot inject into [{self.target}]")
        if any(v < 1 or v > self.target for v in self.images):
            raise InjectionError(f"images {self.images} leave [{self.target}]")
        if len(set(self.images)) != len(self.images):
            raise InjectionError(f"images {self.images} repeat a value")

    @property
    def source(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def is_bijection(self) -> bool:
        return self.source == self.target

    def missed(self) -> list[int]:
        hit = set(self.images)
        return [y for y in range(1, self.target + 1) if y not in hit]

    def __str__(self):
        return f"{self.source}->{self.target}:[{','.join(map(str, self.images))}]"

    @classmethod
    def parse(cls, text: str) -> Injection:
        try:
            sizes, images = text.strip().split(":")
            m, n = (int(s) for s in sizes.split("->"))
            body = images.strip()[1:-1].strip()
            values = tuple(int(v) for v in body.split(",")) if body else ()
        except ValueError as exc:
            raise InjectionError(f"cannot parse injection {text!r}") from exc
        if len(values) != m:
            raise InjectionError(f"{text!r} declares {m} points but lists {len(values)}")
        return cls(n, values)


@dataclass(frozen=True)
class GeneratorWord:
    """
    f = s_{w[-1]} ∘ ... ∘ s_{w[0]} ∘ (standard inclusion [m] ↪ [n]).

    The transpositions are applied left to right after the inclusions.
    """

    source: int
    target: int
    transpositions: tuple[int, ...]

    @property
    def inclusions(self) -> int:
        return self.target - self.source


def identity(n: int) -> Injection:
    return Injection(n, tuple(range(1, n + 1)))


def standard_inclusion(m: int, n: int) -> Injection:
    return Injection(n, tuple(range(1, m + 1)))


def adjacent_transposition(n: int, i: int) -> Injection:
    """s_i on [n], swapping i and i+1."""
    if not 1 <= i < n:
        raise InjectionError(f"s_{i} is not a transposition of [{n}]")
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Injection(n, tuple(images))


def compose(g: Injection, f: Injection) -> Injection:
    """g ∘ f (f first)."""
    if f.target != g.source:
        raise InjectionError(f"cannot compose {g} after {f}")
    return Injection(g.target, tuple(g.images[v - 1] for v in f.images))


@functools.lru_cache(maxsize=None)
def enumerate_injections(m: int, n: int) -> tuple[Injection, ...]:
    """All injections [m] -> [n], lexicographic in their image lists."""
    return tuple(Injection(n, images) for images in itertools.permutations(range(1, n + 1), m))


@functools.lru_cache(maxsize=None)
def injection_index(m: int, n: int) -> dict[tuple[int, ...], int]:
    return {f.images: k for k, f in enumerate(enumerate_injections(m, n))}


def count_injections(m: int, n: int) -> int:
    return math.perm(n, m) if 0 <= m <= n else 0


def _lift(value: int, slot: int) -> int:
    # [n] -> [n+1] ∖ {slot}, order preserving
    return value if value < slot else value + 1


def _lower(value: int, removed: int) -> int:
    # [n] ∖ {removed} -> [n-1], order preserving
    return value if value < removed else value - 1


def sigma_extend(f: Injection) -> Injection:
    """σ(f) = f ⊔ id_⋆ with ⋆ the new largest element on both sides."""
    return Injection(f.target + 1, f.images + (f.target + 1,))


def join_map(f: Injection, target_slot: int, source_slot: int | None = None) -> Injection:
    """
    f ⊔ (w -> z): [m+1] -> [n+1] restricting to f away from w = source_slot
    and sending w to z = target_slot. Both sides are renamed order-preservingly.
    """
    m, n = f.source, f.target
    w = m + 1 if source_slot is None else source_slot
    if not 1 <= target_slot <= n + 1:
        raise InjectionError(f"slot {target_slot} is outside [{n + 1}]")
    if not 1 <= w <= m + 1:
        raise InjectionError(f"source slot {w} is outside [{m + 1}]")
    lifted = [_lift(v, target_slot) for v in f.images]
    if target_slot in lifted:
        raise InjectionError(f"slot {target_slot} is occupied")
    images = lifted[: w - 1] + [target_slot] + lifted[w - 1 :]
    return Injection(n + 1, tuple(images))


def boundary_removal(f: Injection, y: int) -> Injection:
    """∂_y f: [m] -> [n] ∖ {y} ≅ [n-1], for y outside the image of f."""
    if not 1 <= y <= f.target:
        raise InjectionError(f"{y} is outside [{f.target}]")
    if y in f.images:
        raise InjectionError(f"{y} lies in the image of {f}")
    return Injection(f.target - 1, tuple(_lower(v, y) for v in f.images))


def restrict_removing(f: Injection, x: int) -> Injection:
    """f|_{[m]∖{x}}: [m] ∖ {x} -> [n] ∖ {f(x)}, renamed to [m-1] -> [n-1]."""
    if not 1 <= x <= f.source:
        raise InjectionError(f"{x} is outside [{f.source}]")
    fx = f(x)
    images = tuple(_lower(v, fx) for k, v in enumerate(f.images, start=1) if k != x)
    return Injection(f.target - 1, images)


def coset_representative(f: Injection) -> tuple[int, ...]:
    """
    The shortest permutation π of [n] with π ∘ (standard inclusion) = f, as
    one-line notation. It is increasing on m+1..n, which makes it unique.
    """
    return f.images + tuple(f.missed())


def canonical_factorization(f: Injection) -> GeneratorWord:
    """Lexicographically smallest reduced word of the coset representative."""
    perm = list(coset_representative(f))
    word = []
    while True:
        descent = next((i for i in range(len(perm) - 1) if perm[i] > perm[i + 1]), None)
        if descent is None:
            break
        perm[descent], perm[descent + 1] = perm[descent + 1], perm[descent]
        word.append(descent + 1)
    return GeneratorWord(f.source, f.target, tuple(word))


def evaluate_word(word: GeneratorWord) -> Injection:
    result = standard_inclusion(word.source, word.target)
    for i in word.transpositions:
        result = compose(adjacent_transposition(word.target, i), result)
    return result


def generators(trunc: int):
    """Yields (kind, n, i, injection) for every generator morphism with target ≤ trunc."""
    for n in range(trunc + 1):
        for i in range(1, n):
            yield "transposition", n, i, adjacent_transposition(n, i)
        if n < trunc:
            yield "inclusion", n, 0, standard_inclusion(n, n + 1)
