"""
Spaces of FI-module homomorphisms, solved as the nullspace of the naturality
constraints φ_n·V(g) = W(g)·φ_m over the generators g up to a window.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from sympy.polys.matrices import DomainMatrix

from models import skeleton
from models.errors import DegreeBoundError, FieldMismatchError, ShapeError
from models.fimodule import FIModuleMap, TruncatedFIModule, linear_combination
from models.scalars import Matrix, from_entries

logger = logging.getLogger(__name__)


def _offsets(V: TruncatedFIModule, W: TruncatedFIModule, window: int) -> list[int]:
    offsets, total = [], 0
    for n in range(window + 1):
        offsets.append(total)
        total += W.dim(n) * V.dim(n)
    offsets.append(total)
    return offsets


def _morphisms(window: int, generators_only: bool):
    if generators_only:
        for _, _, _, g in skeleton.generators(window):
            yield g
        return
    for n in range(window + 1):
        for m in range(n + 1):
            yield from skeleton.enumerate_injections(m, n)


def _constraint_rows(V, W, window, offsets, generators_only):
    rows = []
    for g in _morphisms(window, generators_only):
        m, n = g.source, g.target
        Vg, Wg = V.matrix_of(g), W.matrix_of(g)
        by_col = defaultdict(list)
        for k, c, value in Vg.nonzeros:
            by_col[c].append((k, value))
        by_row = defaultdict(list)
        for r, k, value in Wg.nonzeros:
            by_row[r].append((k, value))
        dn, dm = V.dim(n), V.dim(m)
        for r in range(W.dim(n)):
            for c in range(dm):
                row = defaultdict(lambda: V.field.zero)
                for k, value in by_col.get(c, ()):
                    row[offsets[n] + r * dn + k] += value
                for k, value in by_row.get(r, ()):
                    row[offsets[m] + k * dm + c] -= value
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


@dataclass(frozen=True)
class HomSpace:
    """A basis of Hom(V, W) over degrees ≤ window, in echelon form."""

    source: TruncatedFIModule
    target: TruncatedFIModule
    window: int
    basis: tuple[FIModuleMap, ...]
    free_positions: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def _flatten(self, phi: FIModuleMap) -> dict[int, object]:
        offsets = _offsets(self.source, self.target, self.window)
        values = {}
        for n, component in enumerate(phi.components[: self.window + 1]):
            width = self.source.dim(n)
            for r, c, value in component.nonzeros:
                values[offsets[n] + r * width + c] = value
        return values

    def coordinates(self, phi: FIModuleMap) -> list:
        """Coefficients of φ in the basis; φ must lie in the space."""
        values = self._flatten(phi)
        zero = self.source.field.zero
        return [values.get(j, zero) for j in self.free_positions]

    def combine(self, coefficients: Sequence) -> FIModuleMap:
        if len(coefficients) != self.dim:
            raise ShapeError(f"{len(coefficients)} coefficients for a {self.dim}-dimensional space")
        return linear_combination(self.basis, coefficients, self.source, self.target)

    def coordinate_matrix(self, maps: Sequence[FIModuleMap]) -> Matrix:
        """Columns are the coordinates of `maps`."""
        entries = {}
        for j, phi in enumerate(maps):
            for i, value in enumerate(self.coordinates(phi)):
                if value:
                    entries[(i, j)] = value
        return from_entries(self.source.field, self.dim, len(maps), entries)


def hom_space(
    V: TruncatedFIModule,
    W: TruncatedFIModule,
    window: int | None = None,
    generators_only: bool = True,
) -> HomSpace:
    if V.field != W.field:
        raise FieldMismatchError(f"{V.field.label} vs {W.field.label}")
    limit = min(V.trunc, W.trunc)
    window = limit if window is None else window
    if window > limit or window < 0:
        raise DegreeBoundError(f"window {window} outside 0..{limit}")
    V, W = V.truncate(window), W.truncate(window)
    field = V.field
    offsets = _offsets(V, W, window)
    unknowns = offsets[-1]
    rows = _constraint_rows(V, W, window, offsets, generators_only)
    logger.debug("hom solve: %d unknowns, %d equations, window %d", unknowns, len(rows), window)

    if rows and unknowns:
        system = DomainMatrix({i: row for i, row in enumerate(rows)}, (len(rows), unknowns), field.domain)
        reduced, pivots = system.rref()
        echelon = reduced.to_sparse().rep
    else:
        pivots, echelon = (), {}
    pivot_set = set(pivots)
    free = [j for j in range(unknowns) if j not in pivot_set]

    dependents = defaultdict(list)
    for r, p in enumerate(pivots):
        for j, value in echelon.get(r, {}).items():
            if j != p:
                dependents[j].append((p, -value))

    basis = []
    for f in free:
        vector = {f: field.one}
        vector.update(dependents.get(f, ()))
        components = []
        for n in range(window + 1):
            width = V.dim(n)
            entries = {
                ((j - offsets[n]) // width, (j - offsets[n]) % width): value
                for j, value in vector.items()
                if offsets[n] <= j < offsets[n + 1]
            }
            components.append(from_entries(field, W.dim(n), width, entries))
        basis.append(FIModuleMap(V, W, tuple(components)))
    return HomSpace(V, W, window, tuple(basis), tuple(free))


def hom_basis(V: TruncatedFIModule, W: TruncatedFIModule, window: int | None = None) -> list[FIModuleMap]:
    return list(hom_space(V, W, window).basis)


def dim_hom(V: TruncatedFIModule, W: TruncatedFIModule, window: int | None = None) -> int:
    return hom_space(V, W, window).dim
