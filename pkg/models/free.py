"""
Free FI-modules M([m]), the maps ρ_f between them, and Yoneda evaluation.

The basis of M([m])_n is enumerate_injections(m, n) in lexicographic order,
so the identity of [m] is always basis vector 0 of M([m])_m.
"""

from __future__ import annotations

import functools
import logging

from models import skeleton
from models.errors import DegreeBoundError, InjectionError, ShapeError
from models.fimodule import DegreeVector, FIModuleMap, TruncatedFIModule, assemble_module
from models.scalars import FieldSpec, Matrix, from_entries, hstack, zeros
from models.skeleton import Injection

logger = logging.getLogger(__name__)


def _permutation_action(field: FieldSpec, m: int, f: Injection) -> Matrix:
    # f_*(g) = f ∘ g on basis injections g: [m] -> [f.source]
    index = skeleton.injection_index(m, f.target)
    basis = skeleton.enumerate_injections(m, f.source)
    entries = {(index[skeleton.compose(f, g).images], j): 1 for j, g in enumerate(basis)}
    return from_entries(field, len(index), len(basis), entries)


@functools.lru_cache(maxsize=None)
def make_free(m: int, field: FieldSpec, trunc: int) -> TruncatedFIModule:
    if m < 0 or m > trunc:
        raise DegreeBoundError(f"M([{m}]) needs 0 <= m <= truncation {trunc}")
    dims = [skeleton.count_injections(m, n) for n in range(trunc + 1)]
    logger.debug("free module M([%d]) over %s, dims %s", m, field.label, dims)
    return assemble_module(
        field,
        trunc,
        dims,
        lambda f: _permutation_action(field, m, f),
        meta={"free": m},
    )


def basis_vector(m: int, f: Injection, field: FieldSpec) -> Matrix:
    """The coordinate column of the basis injection f in M([m])_{f.target}."""
    if f.source != m:
        raise InjectionError(f"{f} does not start at [{m}]")
    index = skeleton.injection_index(m, f.target)
    return from_entries(field, len(index), 1, {(index[f.images], 0): 1})


def rho_map(m_src: int, m_tgt: int, f: Injection, field: FieldSpec, trunc: int) -> FIModuleMap:
    """ρ_f: M([m_tgt]) -> M([m_src]), g ↦ g ∘ f."""
    if f.source != m_src or f.target != m_tgt:
        raise InjectionError(f"{f} is not an injection [{m_src}] -> [{m_tgt}]")
    source, target = make_free(m_tgt, field, trunc), make_free(m_src, field, trunc)
    components = []
    for n in range(trunc + 1):
        index = skeleton.injection_index(m_src, n)
        basis = skeleton.enumerate_injections(m_tgt, n)
        entries = {(index[skeleton.compose(g, f).images], j): 1 for j, g in enumerate(basis)}
        components.append(from_entries(field, len(index), len(basis), entries))
    return FIModuleMap(source, target, tuple(components))


def yoneda_to_element(phi: FIModuleMap, m: int) -> DegreeVector:
    """φ ↦ φ_m(id_[m])."""
    if m > phi.trunc:
        raise DegreeBoundError(f"degree {m} is above truncation {phi.trunc}")
    if phi.source.dim(m) == 0:
        raise ShapeError(f"source has no identity element in degree {m}")
    return DegreeVector(m, phi.component(m).column(0))


def yoneda_from_element(V: TruncatedFIModule, element: DegreeVector) -> FIModuleMap:
    """The unique map M([m]) -> V sending id_[m] to `element`."""
    m, v = element.degree, element.coords
    if m > V.trunc:
        raise DegreeBoundError(f"degree {m} is above truncation {V.trunc}")
    if v.shape != (V.dim(m), 1):
        raise ShapeError(f"element has shape {v.shape}, V_{m} has dimension {V.dim(m)}")
    free = make_free(m, V.field, V.trunc)
    components = []
    for n in range(V.trunc + 1):
        columns = [V.matrix_of(g) @ v for g in skeleton.enumerate_injections(m, n)]
        components.append(hstack(V.field, V.dim(n), columns) if columns else zeros(V.field, V.dim(n), 0))
    return FIModuleMap(free, V, tuple(components))
