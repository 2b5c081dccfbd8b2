"""
Truncated FI-modules and their homomorphisms.

A module is stored by its generators: the adjacent transpositions T[n][i]
acting on V_n and the standard inclusions I[n]: V_n -> V_{n+1}. Every other
structure map is derived on demand through the canonical factorization and
memoized per module.
"""

from __future__ import annotations

import dataclasses
import logging
import threading
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

from models import skeleton
from models.errors import (
    DegreeBoundError,
    FieldMismatchError,
    ModuleValidationError,
    NotSubmoduleError,
    ShapeError,
)
from models.scalars import (
    FieldSpec,
    Matrix,
    block_diag,
    block_matrix,
    cokernel_data,
    column_space,
    hstack,
    identity,
    mat_chain,
    mat_mul,
    nullspace,
    rank,
    solve_in_columns,
    zeros,
)
from models.skeleton import Injection

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeVector:
    """An element of V_n, as a d_n x 1 coordinate column."""

    degree: int
    coords: Matrix


@dataclass(frozen=True)
class Violation:
    relation: str
    degree: int
    indices: tuple[int, ...]

    def __str__(self):
        where = ",".join(map(str, self.indices))
        return f"{self.relation} relation fails in degree {self.degree} at ({where})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


@dataclass(frozen=True)
class TruncatedFIModule:
    field: FieldSpec
    trunc: int
    dims: tuple[int, ...]
    transpositions: tuple[tuple[Matrix, ...], ...]
    inclusions: tuple[Matrix, ...]
    meta: Mapping[str, Any] = dataclasses.field(default_factory=dict, compare=False, hash=False, repr=False)
    _memo: dict = dataclasses.field(default_factory=dict, init=False, compare=False, hash=False, repr=False)
    _lock: Any = dataclasses.field(default_factory=threading.RLock, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.trunc < 0 or len(self.dims) != self.trunc + 1:
            raise ShapeError(f"{len(self.dims)} dimensions for truncation {self.trunc}")
        if len(self.transpositions) != self.trunc + 1 or len(self.inclusions) != self.trunc:
            raise ShapeError("generator tables do not match the truncation")
        for n, table in enumerate(self.transpositions):
            if len(table) != max(n - 1, 0):
                raise ShapeError(f"degree {n} needs {max(n - 1, 0)} transpositions, got {len(table)}")
            for i, matrix in enumerate(table, start=1):
                self._check_generator(matrix, self.dims[n], self.dims[n], f"T[{n}][{i}]")
        for n, matrix in enumerate(self.inclusions):
            self._check_generator(matrix, self.dims[n + 1], self.dims[n], f"I[{n}]")

    def _check_generator(self, matrix: Matrix, rows: int, cols: int, name: str):
        if matrix.field != self.field:
            raise FieldMismatchError(f"{name} is over {matrix.field.label}, module over {self.field.label}")
        if matrix.shape != (rows, cols):
            raise ShapeError(f"{name} has shape {matrix.shape}, expected {(rows, cols)}")

    def dim(self, n: int) -> int:
        return self.dims[n]

    def transposition(self, n: int, i: int) -> Matrix:
        return self.transpositions[n][i - 1]

    def inclusion(self, n: int) -> Matrix:
        return self.inclusions[n]

    def matrix_of(self, f: Injection) -> Matrix:
        return matrix_of_injection(self, f)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def cached(self, key, factory: Callable[[], Any]):
        """Per-module memo shared by concurrent readers."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = factory()
        with self._lock:
            return self._memo.setdefault(key, value)

    def truncate(self, k: int) -> TruncatedFIModule:
        if k > self.trunc:
            raise DegreeBoundError(f"cannot extend truncation {self.trunc} to {k}")
        if k == self.trunc:
            return self
        return self.cached(
            ("truncate", k),
            lambda: TruncatedFIModule(
                self.field,
                k,
                self.dims[: k + 1],
                self.transpositions[: k + 1],
                self.inclusions[:k],
                meta=self.meta,
            ),
        )


def assemble_module(
    field: FieldSpec,
    trunc: int,
    dims: Sequence[int],
    structure_map: Callable[[Injection], Matrix],
    meta: Mapping[str, Any] | None = None,
) -> TruncatedFIModule:
    """Builds a module by evaluating `structure_map` on every generator morphism."""
    transpositions = tuple(
        tuple(structure_map(skeleton.adjacent_transposition(n, i)) for i in range(1, n))
        for n in range(trunc + 1)
    )
    inclusions = tuple(structure_map(skeleton.standard_inclusion(n, n + 1)) for n in range(trunc))
    return TruncatedFIModule(field, trunc, tuple(dims), transpositions, inclusions, meta=dict(meta or {}))


def zero_module(field: FieldSpec, trunc: int) -> TruncatedFIModule:
    return assemble_module(field, trunc, [0] * (trunc + 1), lambda f: zeros(field, 0, 0))


def matrix_of_injection(V: TruncatedFIModule, f: Injection) -> Matrix:
    """V(f) as a d_n x d_m matrix: inclusions first, then the transposition word."""
    if f.target > V.trunc:
        raise DegreeBoundError(f"{f} leaves the truncation N={V.trunc}")

    def compute():
        word = skeleton.canonical_factorization(f)
        factors = [V.inclusion(k) for k in range(f.source, f.target)]
        factors += [V.transposition(f.target, i) for i in word.transpositions]
        return mat_chain(V.field, V.dim(f.source), factors)

    return V.cached(("injection", f), compute)


def validate(V: TruncatedFIModule) -> ValidationReport:
    """Checks the FI relations among the stored generators."""
    violations = []
    one = lambda n: identity(V.field, V.dim(n))
    T, I = V.transposition, V.inclusion
    for n in range(2, V.trunc + 1):
        for i in range(1, n):
            if T(n, i) @ T(n, i) != one(n):
                violations.append(Violation("involution", n, (i,)))
        for i in range(1, n - 1):
            if T(n, i) @ T(n, i + 1) @ T(n, i) != T(n, i + 1) @ T(n, i) @ T(n, i + 1):
                violations.append(Violation("braid", n, (i, i + 1)))
        for i in range(1, n):
            for j in range(i + 2, n):
                if T(n, i) @ T(n, j) != T(n, j) @ T(n, i):
                    violations.append(Violation("commute", n, (i, j)))
    for n in range(V.trunc):
        for i in range(1, n):
            if I(n) @ T(n, i) != T(n + 1, i) @ I(n):
                violations.append(Violation("compatibility", n, (i,)))
    for n in range(V.trunc - 1):
        # swapping the two new points fixes [n] -> [n+2]
        double = I(n + 1) @ I(n)
        if T(n + 2, n + 1) @ double != double:
            violations.append(Violation("stabilizer", n, (n + 1,)))
    return ValidationReport(tuple(violations))


def ensure_valid(V: TruncatedFIModule) -> TruncatedFIModule:
    report = validate(V)
    if not report.ok:
        raise ModuleValidationError(f"invalid FI-module: {report.violations[0]}", report)
    return V


@dataclass(frozen=True)
class FIModuleMap:
    """A homomorphism of truncated FI-modules, one e_n x d_n matrix per degree."""

    source: TruncatedFIModule
    target: TruncatedFIModule
    components: tuple[Matrix, ...]

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise FieldMismatchError("source and target live over different fields")
        if self.source.trunc != self.target.trunc:
            raise DegreeBoundError(f"truncations differ: {self.source.trunc} vs {self.target.trunc}")
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.source.trunc + 1:
            raise ShapeError(f"{len(self.components)} components for truncation {self.source.trunc}")
        for n, c in enumerate(self.components):
            if c.shape != (self.target.dim(n), self.source.dim(n)):
                raise ShapeError(f"component {n} has shape {c.shape}")

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def trunc(self) -> int:
        return self.source.trunc

    def component(self, n: int) -> Matrix:
        return self.components[n]

    def restrict(self, k: int) -> FIModuleMap:
        return FIModuleMap(self.source.truncate(k), self.target.truncate(k), self.components[: k + 1])

    def naturality_violations(self) -> list[str]:
        failures = []
        for kind, n, i, g in skeleton.generators(self.trunc):
            m = g.source
            if self.component(g.target) @ self.source.matrix_of(g) != self.target.matrix_of(g) @ self.component(m):
                failures.append(f"{kind} {g}")
        return failures

    def is_natural(self) -> bool:
        return not self.naturality_violations()


def identity_map(V: TruncatedFIModule) -> FIModuleMap:
    return FIModuleMap(V, V, tuple(identity(V.field, d) for d in V.dims))


def zero_map(V: TruncatedFIModule, W: TruncatedFIModule) -> FIModuleMap:
    return FIModuleMap(V, W, tuple(zeros(V.field, e, d) for d, e in zip(V.dims, W.dims)))


def compose_maps(g: FIModuleMap, f: FIModuleMap) -> FIModuleMap:
    """g ∘ f."""
    if f.target != g.source:
        raise ShapeError("maps are not composable")
    return FIModuleMap(f.source, g.target, tuple(a @ b for a, b in zip(g.components, f.components)))


def linear_combination(maps: Sequence[FIModuleMap], coefficients: Sequence, source=None, target=None) -> FIModuleMap:
    if not maps:
        return zero_map(source, target)
    total = None
    for phi, c in zip(maps, coefficients):
        scaled = tuple(m.scale(c) for m in phi.components)
        total = scaled if total is None else tuple(a + b for a, b in zip(total, scaled))
    return FIModuleMap(maps[0].source, maps[0].target, total)


def map_is_iso(phi: FIModuleMap) -> bool:
    return all(c.is_square and rank(c) == c.rows for c in phi.components)


def map_kernel(phi: FIModuleMap) -> tuple[Matrix, ...]:
    return tuple(nullspace(c) for c in phi.components)


def map_image(phi: FIModuleMap) -> tuple[Matrix, ...]:
    return tuple(column_space(c) for c in phi.components)


@dataclass(frozen=True)
class DirectSum:
    module: TruncatedFIModule
    inclusions: tuple[FIModuleMap, ...]
    projections: tuple[FIModuleMap, ...]

    def offset(self, n: int, k: int) -> int:
        """Row offset of summand k inside degree n."""
        return sum(p.target.dim(n) for p in self.projections[:k])


def direct_sum(*summands: TruncatedFIModule) -> DirectSum:
    """A ⊕ B ⊕ ...: block-diagonal generators, first summand on top."""
    if not summands:
        raise ShapeError("direct_sum needs at least one summand")
    field, trunc = summands[0].field, summands[0].trunc
    for s in summands:
        if s.field != field:
            raise FieldMismatchError("summands live over different fields")
        if s.trunc != trunc:
            raise DegreeBoundError("summands have different truncations")
    dims = [sum(s.dim(n) for s in summands) for n in range(trunc + 1)]
    total = assemble_module(field, trunc, dims, lambda f: block_diag(field, [s.matrix_of(f) for s in summands]))
    inclusions, projections = [], []
    for k, s in enumerate(summands):
        sizes = lambda n: [t.dim(n) for t in summands]
        inc = tuple(
            block_matrix(field, sizes(n), [s.dim(n)], {(k, 0): identity(field, s.dim(n))}) for n in range(trunc + 1)
        )
        proj = tuple(
            block_matrix(field, [s.dim(n)], sizes(n), {(0, k): identity(field, s.dim(n))}) for n in range(trunc + 1)
        )
        inclusions.append(FIModuleMap(s, total, inc))
        projections.append(FIModuleMap(total, s, proj))
    return DirectSum(total, tuple(inclusions), tuple(projections))


def saturate_submodule(V: TruncatedFIModule, seeds: Sequence[DegreeVector]) -> tuple[Matrix, ...]:
    """
    Per-degree bases of the smallest sub-FI-module containing the seeds.

    Degrees are closed in increasing order: degree n collects its seeds and
    the inclusion image of degree n-1, then closes under S_n.
    """
    field = V.field
    spans = []
    for n in range(V.trunc + 1):
        if any(s.degree > V.trunc for s in seeds):
            raise DegreeBoundError("a seed lies above the truncation")
        blocks = [s.coords for s in seeds if s.degree == n]
        if n > 0:
            blocks.append(V.inclusion(n - 1) @ spans[n - 1])
        basis = column_space(hstack(field, V.dim(n), blocks)) if blocks else zeros(field, V.dim(n), 0)
        while True:
            moved = [V.transposition(n, i) @ basis for i in range(1, n)]
            grown = column_space(hstack(field, V.dim(n), [basis] + moved))
            if grown.cols == basis.cols:
                break
            basis = grown
        spans.append(basis)
    return tuple(spans)


def check_stable(V: TruncatedFIModule, sub: Sequence[Matrix]) -> list[str]:
    failures = []
    for kind, n, i, g in skeleton.generators(V.trunc):
        moved = V.matrix_of(g) @ sub[g.source]
        if rank(hstack(V.field, V.dim(g.target), [sub[g.target], moved])) != rank(sub[g.target]):
            failures.append(f"{kind} {g}")
    return failures


def submodule(V: TruncatedFIModule, sub: Sequence[Matrix]) -> tuple[TruncatedFIModule, FIModuleMap]:
    """The sub-FI-module spanned by `sub` with its inclusion into V."""
    failures = check_stable(V, sub)
    if failures:
        raise NotSubmoduleError(f"subspaces are not stable under {failures[0]}")
    bases = tuple(column_space(b) for b in sub)
    K = assemble_module(
        V.field,
        V.trunc,
        [b.cols for b in bases],
        lambda f: solve_in_columns(bases[f.target], V.matrix_of(f) @ bases[f.source]),
    )
    return K, FIModuleMap(K, V, bases)


def quotient_module(V: TruncatedFIModule, sub: Sequence[Matrix]) -> tuple[TruncatedFIModule, FIModuleMap]:
    """V / sub on the complements chosen by cokernel_data, with the quotient map."""
    failures = check_stable(V, sub)
    if failures:
        raise NotSubmoduleError(f"subspaces are not stable under {failures[0]}")
    data = [cokernel_data(b) for b in sub]
    Q = assemble_module(
        V.field,
        V.trunc,
        [p.rows for p, _ in data],
        lambda f: data[f.target][0] @ V.matrix_of(f) @ data[f.source][1],
    )
    logger.debug("quotient dims %s -> %s", V.dims, Q.dims)
    return Q, FIModuleMap(V, Q, tuple(p for p, _ in data))
