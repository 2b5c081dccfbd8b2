import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models import skeleton
from models.errors import DegreeBoundError
from models.fimodule import compose_maps, identity_map, validate, zero_module
from models.free import make_free, rho_map
from models.functors import (
    FunctorTag,
    apply_functor,
    apply_functor_map,
    derivative,
    iota_nat,
    leibniz_defect,
    neg_shift,
    partial_matrix,
    q_prime,
    q_prime_section,
    shift,
)
from models.random_modules import random_composable, random_module
from models.scalars import FieldSpec, Matrix
from models.skeleton import Injection


def test_shift_dims_and_action(QQ):
    V = make_free(1, QQ, 4)
    SV = shift(V)
    assert SV.trunc == 3
    assert SV.dims == (1, 2, 3, 4)
    f = Injection(2, (2,))
    assert SV.matrix_of(f) == V.matrix_of(skeleton.sigma_extend(f))


def test_functors_need_a_positive_truncation(QQ):
    with pytest.raises(DegreeBoundError):
        shift(make_free(0, QQ, 0))
    with pytest.raises(DegreeBoundError):
        derivative(make_free(0, QQ, 0))


def test_iota_of_the_trivial_module(QQ):
    iota = iota_nat(make_free(0, QQ, 3))
    assert all(c == Matrix.from_rows(QQ, [[1]]) for c in iota.components)
    assert iota.is_natural()
    empty = iota_nat(zero_module(QQ, 2))
    assert all(c.shape == (0, 0) for c in empty.components)


def test_derivative_of_free_modules(QQ):
    DM0, _ = derivative(make_free(0, QQ, 4))
    assert DM0.dims == (0, 0, 0, 0)
    DM1, pi = derivative(make_free(1, QQ, 4))
    assert DM1.dims == (1, 1, 1, 1)
    assert pi.is_natural()
    DM2, _ = derivative(make_free(2, QQ, 4))
    # injections [2] -> [n+1] that hit ⋆
    assert DM2.dims == (0, 2, 4, 6)


def test_neg_shift_dims(QQ):
    V = make_free(1, QQ, 4)
    assert neg_shift(V).dims == (0, 0, 2, 6, 12)
    assert neg_shift(V, extended=True).dims == (0, 0, 2, 6, 12, 20)
    assert validate(neg_shift(V, extended=True)).ok


def test_partial_matrix_examples(QQ):
    V = make_free(0, QQ, 3)
    assert partial_matrix(V, Injection(1, ())) == Matrix.from_rows(QQ, [[1]])
    for n in range(4):
        assert partial_matrix(V, skeleton.identity(n)).is_zero()
    # both missed points contribute a block
    assert partial_matrix(V, Injection(3, (2,))) == Matrix.from_rows(QQ, [[1], [0], [1]])


def test_q_prime_dims_are_squares(QQ):
    Q, kappa, p = q_prime(make_free(1, QQ, 4))
    assert Q.dims == (0, 1, 4, 9, 16)
    assert validate(Q).ok
    assert kappa.is_natural() and p.is_natural()
    assert all((a @ b).is_zero() for a, b in zip(p.components, kappa.components))


def test_q_prime_section_is_not_natural_for_the_trivial_module(QQ):
    V = make_free(0, QQ, 3)
    Q, _, _ = q_prime(V)
    moved = Q.inclusion(0) @ q_prime_section(V, 0)
    assert moved != q_prime_section(V, 1) @ V.inclusion(0)


@pytest.mark.parametrize("tag", list(FunctorTag))
@pytest.mark.parametrize("label", ["Q", "F2", "F5"])
def test_functors_preserve_validity(tag, label):
    field = FieldSpec.parse(label)
    for seed in range(4):
        V = random_module(seed, field=field, trunc=4)
        assert validate(apply_functor(tag, V)).ok


@pytest.mark.parametrize("tag", list(FunctorTag))
def test_functors_on_maps(tag, QQ):
    f = Injection(2, (2,))
    g = Injection(3, (3, 1))
    a, b = rho_map(1, 2, f, QQ, 4), rho_map(2, 3, g, QQ, 4)
    Fa, Fb = apply_functor_map(tag, a), apply_functor_map(tag, b)
    assert Fa.is_natural() and Fb.is_natural()
    assert apply_functor_map(tag, compose_maps(a, b)).components == compose_maps(Fa, Fb).components
    V = make_free(1, QQ, 4)
    assert apply_functor_map(tag, identity_map(V)).components == identity_map(apply_functor(tag, V)).components


@pytest.mark.parametrize("label", ["Q", "F2", "F5"])
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32), pair_seed=st.integers(0, 2**32))
def test_leibniz_rule(label, seed, pair_seed):
    V = random_module(seed, field=FieldSpec.parse(label), trunc=4)
    rng = np.random.default_rng(pair_seed)
    for _ in range(10):
        f, g = random_composable(rng, 4, 2)
        assert leibniz_defect(V, g, f).is_zero()
