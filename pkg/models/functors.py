"""
The shift S, derivative D, negative-one shift S̃₋₁ and the coinduction model
Q′, on modules and on homomorphisms.

Basis conventions:
  (S̃₋₁V)_n = ⊕_{x=1..n} V_{n-1}, summands ordered by the removed element x;
  (Q′V)_n  = V_n ⊕ (S̃₋₁V)_n, the V block first.
"""

from __future__ import annotations

import enum
import logging

from models import skeleton
from models.errors import DegreeBoundError
from models.fimodule import FIModuleMap, TruncatedFIModule, assemble_module
from models.scalars import Matrix, block_diag, block_matrix, cokernel_data, identity
from models.skeleton import Injection

logger = logging.getLogger(__name__)


class FunctorTag(enum.Enum):
    SHIFT = "S"
    DERIVATIVE = "D"
    NEG_SHIFT = "Sneg"
    Q_PRIME = "Qprime"


def _require_positive(V: TruncatedFIModule, name: str):
    if V.trunc < 1:
        raise DegreeBoundError(f"{name} needs truncation N >= 1, got {V.trunc}")


# -- shift ------------------------------------------------------------------


def shift(V: TruncatedFIModule) -> TruncatedFIModule:
    """(SV)_n = V_{n+1}, f acting through σ(f) = f ⊔ id_⋆. Truncation drops by one."""
    _require_positive(V, "shift")

    def build():
        return assemble_module(
            V.field,
            V.trunc - 1,
            V.dims[1:],
            lambda f: V.matrix_of(skeleton.sigma_extend(f)),
            meta={"functor": "S"},
        )

    return V.cached(("functor", "S"), build)


def shift_map(phi: FIModuleMap) -> FIModuleMap:
    _require_positive(phi.source, "shift")
    return FIModuleMap(shift(phi.source), shift(phi.target), phi.components[1:])


def iota_nat(V: TruncatedFIModule) -> FIModuleMap:
    """ι: V -> SV on degrees ≤ N-1, componentwise the standard inclusions."""
    _require_positive(V, "iota")
    return FIModuleMap(V.truncate(V.trunc - 1), shift(V), V.inclusions)


# -- derivative -------------------------------------------------------------


def derivative_data(V: TruncatedFIModule) -> tuple[tuple[Matrix, Matrix], ...]:
    """(projection, section) of coker(I[n]) for every n < N."""
    return V.cached(("cokernel", "iota"), lambda: tuple(cokernel_data(i) for i in V.inclusions))


def derivative(V: TruncatedFIModule) -> tuple[TruncatedFIModule, FIModuleMap]:
    """DV = coker(ι: V -> SV), returned with the quotient map π: SV -> DV."""
    _require_positive(V, "derivative")

    def build():
        SV = shift(V)
        data = derivative_data(V)
        DV = assemble_module(
            V.field,
            V.trunc - 1,
            [p.rows for p, _ in data],
            lambda f: data[f.target][0] @ SV.matrix_of(f) @ data[f.source][1],
            meta={"functor": "D"},
        )
        logger.debug("derivative dims %s -> %s", V.dims, DV.dims)
        return DV, FIModuleMap(SV, DV, tuple(p for p, _ in data))

    return V.cached(("functor", "D"), build)


def derivative_map(phi: FIModuleMap) -> FIModuleMap:
    """D(φ)_n = P^W_n · φ_{n+1} · section^V_n."""
    DV, _ = derivative(phi.source)
    DW, _ = derivative(phi.target)
    src, tgt = derivative_data(phi.source), derivative_data(phi.target)
    components = tuple(
        tgt[n][0] @ phi.component(n + 1) @ src[n][1] for n in range(phi.trunc)
    )
    return FIModuleMap(DV, DW, components)


# -- negative-one shift -----------------------------------------------------


def _neg_shift_dims(V: TruncatedFIModule, trunc: int) -> list[int]:
    return [0] + [n * V.dim(n - 1) for n in range(1, trunc + 1)]


def _neg_shift_action(V: TruncatedFIModule, f: Injection) -> Matrix:
    m, n = f.source, f.target
    row_sizes = [V.dim(n - 1)] * n if n else []
    col_sizes = [V.dim(m - 1)] * m if m else []
    blocks = {(f(x) - 1, x - 1): V.matrix_of(skeleton.restrict_removing(f, x)) for x in range(1, m + 1)}
    return block_matrix(V.field, row_sizes, col_sizes, blocks)


def neg_shift(V: TruncatedFIModule, extended: bool = False) -> TruncatedFIModule:
    """
    (S̃₋₁V)_n = ⊕_{x∈[n]} V_{n-1}; block (f(x), x) of f_* is V(f|_{[m]∖{x}}).

    Degree n only reads V below n, so `extended=True` returns the module one
    degree past V's truncation.
    """
    trunc = V.trunc + 1 if extended else V.trunc

    def build():
        return assemble_module(
            V.field,
            trunc,
            _neg_shift_dims(V, trunc),
            lambda f: _neg_shift_action(V, f),
            meta={"functor": "Sneg"},
        )

    return V.cached(("functor", "Sneg", extended), build)


def neg_shift_map(phi: FIModuleMap, extended: bool = False) -> FIModuleMap:
    trunc = phi.trunc + 1 if extended else phi.trunc
    components = [identity(phi.field, 0)] + [
        block_diag(phi.field, [phi.component(n - 1)] * n) for n in range(1, trunc + 1)
    ]
    return FIModuleMap(neg_shift(phi.source, extended), neg_shift(phi.target, extended), tuple(components))


def partial_matrix(V: TruncatedFIModule, f: Injection) -> Matrix:
    """∂f_*: V_m -> (S̃₋₁V)_n, summing V(∂_y f) over the points y missed by f."""
    m, n = f.source, f.target
    if n > V.trunc:
        raise DegreeBoundError(f"{f} leaves the truncation N={V.trunc}")
    row_sizes = [V.dim(n - 1)] * n if n else []
    blocks = {(y - 1, 0): V.matrix_of(skeleton.boundary_removal(f, y)) for y in f.missed()}
    return block_matrix(V.field, row_sizes, [V.dim(m)], blocks)


# -- coinduction model ------------------------------------------------------


def _q_prime_action(V: TruncatedFIModule, f: Injection) -> Matrix:
    m, n = f.source, f.target
    neg = neg_shift(V)
    return block_matrix(
        V.field,
        [V.dim(n), neg.dim(n)],
        [V.dim(m), neg.dim(m)],
        {(0, 0): V.matrix_of(f), (1, 0): partial_matrix(V, f), (1, 1): neg.matrix_of(f)},
    )


def q_prime(V: TruncatedFIModule) -> tuple[TruncatedFIModule, FIModuleMap, FIModuleMap]:
    """Q′V = V ⊕ S̃₋₁V with f_* = [[f_*, 0], [∂f_*, f_*]]; returns (Q′V, κ, p)."""

    def build():
        neg = neg_shift(V)
        dims = [d + e for d, e in zip(V.dims, neg.dims)]
        Q = assemble_module(V.field, V.trunc, dims, lambda f: _q_prime_action(V, f), meta={"functor": "Qprime"})
        kappa = tuple(
            block_matrix(V.field, [V.dim(n), neg.dim(n)], [neg.dim(n)], {(1, 0): identity(V.field, neg.dim(n))})
            for n in range(V.trunc + 1)
        )
        proj = tuple(
            block_matrix(V.field, [V.dim(n)], [V.dim(n), neg.dim(n)], {(0, 0): identity(V.field, V.dim(n))})
            for n in range(V.trunc + 1)
        )
        return Q, FIModuleMap(neg, Q, kappa), FIModuleMap(Q, V, proj)

    return V.cached(("functor", "Qprime"), build)


def q_prime_map(phi: FIModuleMap) -> FIModuleMap:
    neg = neg_shift_map(phi)
    components = tuple(block_diag(phi.field, [a, b]) for a, b in zip(phi.components, neg.components))
    return FIModuleMap(q_prime(phi.source)[0], q_prime(phi.target)[0], components)


def q_prime_section(V: TruncatedFIModule, n: int) -> Matrix:
    """The FB-splitting V_n -> (Q′V)_n onto the top block."""
    neg = neg_shift(V)
    return block_matrix(V.field, [V.dim(n), neg.dim(n)], [V.dim(n)], {(0, 0): identity(V.field, V.dim(n))})


# -- dispatch ---------------------------------------------------------------


def apply_functor(tag: FunctorTag, V: TruncatedFIModule) -> TruncatedFIModule:
    if tag is FunctorTag.SHIFT:
        return shift(V)
    if tag is FunctorTag.DERIVATIVE:
        return derivative(V)[0]
    if tag is FunctorTag.NEG_SHIFT:
        return neg_shift(V)
    return q_prime(V)[0]


def apply_functor_map(tag: FunctorTag, phi: FIModuleMap) -> FIModuleMap:
    if tag is FunctorTag.SHIFT:
        return shift_map(phi)
    if tag is FunctorTag.DERIVATIVE:
        return derivative_map(phi)
    if tag is FunctorTag.NEG_SHIFT:
        return neg_shift_map(phi)
    return q_prime_map(phi)


def leibniz_defect(V: TruncatedFIModule, g: Injection, f: Injection) -> Matrix:
    """∂(gf)_* - (∂g_*)·f_* - g_*·(∂f_*); zero for every FI-module."""
    neg = neg_shift(V)
    expected = partial_matrix(V, g) @ V.matrix_of(f) + neg.matrix_of(g) @ partial_matrix(V, f)
    return partial_matrix(V, skeleton.compose(g, f)) - expected
