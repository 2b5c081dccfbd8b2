import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models import skeleton
from models.errors import DegreeBoundError, FieldMismatchError, ShapeError
from models.fimodule import identity_map
from models.free import make_free
from models.hom import dim_hom, hom_basis, hom_space
from models.random_modules import random_module
from models.scalars import FieldSpec


def natural_on_every_injection(phi):
    for n in range(phi.trunc + 1):
        for m in range(n + 1):
            for f in skeleton.enumerate_injections(m, n):
                if phi.component(n) @ phi.source.matrix_of(f) != phi.target.matrix_of(f) @ phi.component(m):
                    return False
    return True


def test_augmentation(QQ):
    assert dim_hom(make_free(1, QQ, 4), make_free(0, QQ, 4)) == 1
    assert dim_hom(make_free(0, QQ, 4), make_free(1, QQ, 4)) == 0
    assert dim_hom(make_free(0, QQ, 4), make_free(0, QQ, 4)) == 1


def test_endomorphisms_of_free_modules(field):
    # End(M([m])) is the group algebra of S_m
    assert dim_hom(make_free(2, field, 3), make_free(2, field, 3)) == 2
    assert dim_hom(make_free(3, field, 3), make_free(3, field, 3)) == 6


def test_generators_suffice(QQ):
    V = make_free(1, QQ, 3)
    assert hom_space(V, V, generators_only=False).dim == hom_space(V, V).dim
    for phi in hom_basis(V, V):
        assert natural_on_every_injection(phi)


def test_window_and_field_errors(QQ, F2):
    with pytest.raises(DegreeBoundError):
        hom_space(make_free(0, QQ, 2), make_free(0, QQ, 3), 3)
    with pytest.raises(FieldMismatchError):
        hom_space(make_free(0, QQ, 2), make_free(0, F2, 2))


def test_window_truncates(QQ):
    space = hom_space(make_free(1, QQ, 4), make_free(1, QQ, 4), 2)
    assert space.window == 2
    assert space.source.trunc == 2


def test_coordinates_and_combine(QQ):
    V = random_module(3, trunc=3)
    space = hom_space(V, V)
    ident = identity_map(V)
    assert space.combine(space.coordinates(ident)).components == ident.components
    assert space.coordinate_matrix(space.basis).is_identity()
    with pytest.raises(ShapeError):
        space.combine([1] * (space.dim + 1))


@pytest.mark.parametrize("label", ["Q", "F2", "F5"])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(0, 2))
def test_yoneda_dimension(label, seed, m):
    V = random_module(seed, field=FieldSpec.parse(label), trunc=3)
    assert dim_hom(make_free(m, V.field, 3), V) == V.dim(m)


@settings(max_examples=8, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_basis_maps_are_natural(seed):
    V = random_module(seed, trunc=3)
    W = random_module(seed + 1, trunc=3)
    for phi in hom_basis(V, W):
        assert natural_on_every_injection(phi)
