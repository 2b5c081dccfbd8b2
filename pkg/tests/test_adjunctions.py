import numpy as np
import pytest

from models.adjunctions import (
    additivity_check,
    adjunction_derivative_negshift,
    adjunction_negshift_shift,
    coinduction_dims,
    coinduction_ses,
    counit_derivative_negshift,
    counit_negshift_shift,
    derivative_negshift_triangles,
    exactness_checks,
    gl_recovery,
    negshift_shift_triangles,
    section_inclusion_failures,
    unit_derivative_negshift,
    unit_negshift_shift,
)
from models.errors import DegreeBoundError
from models.fimodule import DegreeVector, saturate_submodule, zero_module
from models.free import make_free
from models.functors import FunctorTag
from models.random_modules import random_module
from models.scalars import FieldSpec


def failed(checks):
    return [f"{c.name}: {c.detail}" for c in checks if not c.passed]


def test_units_and_counits_are_natural(QQ):
    V = random_module(5, trunc=3)
    W = make_free(1, QQ, 3)
    for phi in (
        unit_negshift_shift(V),
        counit_negshift_shift(W),
        unit_derivative_negshift(V),
        counit_derivative_negshift(W),
    ):
        assert phi.is_natural()


def test_triangle_identities(QQ):
    for V in (make_free(0, QQ, 3), make_free(2, QQ, 3), random_module(11, trunc=3)):
        assert not failed(negshift_shift_triangles(V, V))
        assert not failed(derivative_negshift_triangles(V, V))


@pytest.mark.parametrize("label", ["Q", "F2"])
def test_negshift_shift_adjunction(label):
    field = FieldSpec.parse(label)
    rng = np.random.default_rng(1)
    for seed in range(3):
        V = random_module(seed, field=field, trunc=3)
        W = random_module(seed + 100, field=field, trunc=3)
        result = adjunction_negshift_shift(V, W, rng)
        assert result.passed, failed(result.checks)
        assert result.left.dim == result.right.dim


@pytest.mark.parametrize("label", ["Q", "F2"])
def test_derivative_negshift_adjunction(label):
    field = FieldSpec.parse(label)
    rng = np.random.default_rng(2)
    for seed in range(3):
        V = random_module(seed, field=field, trunc=3)
        W = random_module(seed + 200, field=field, trunc=3)
        result = adjunction_derivative_negshift(V, W, rng)
        assert result.passed, failed(result.checks)


def test_adjunction_on_free_modules(QQ):
    # Hom(S̃₋₁M([0]), M([0])) ≅ Hom(M([0]), SM([0])) is one dimensional
    result = adjunction_negshift_shift(make_free(0, QQ, 3), make_free(0, QQ, 3))
    assert result.left.dim == 1
    assert result.passed


def test_adjunctions_need_matching_truncations(QQ):
    with pytest.raises(DegreeBoundError):
        adjunction_negshift_shift(make_free(0, QQ, 3), make_free(0, QQ, 2))
    with pytest.raises(DegreeBoundError):
        adjunction_derivative_negshift(make_free(0, QQ, 0), make_free(0, QQ, 0))


def test_coinduction_sequence(field):
    for V in (make_free(1, field, 4), zero_module(field, 2), random_module(4, field=field, trunc=4)):
        assert not failed(coinduction_ses(V))


def test_section_is_only_fb_equivariant(QQ):
    assert "inclusion 0->1" in section_inclusion_failures(make_free(0, QQ, 3))
    assert section_inclusion_failures(zero_module(QQ, 3)) == []


@pytest.mark.parametrize("m", [0, 1, 2])
def test_gl_recovery(m, field):
    recovery = gl_recovery(m, field, 4)
    assert recovery.witness.verified, recovery.witness.report.describe()
    assert recovery.naive_violations
    assert not failed(recovery.checks())
    assert recovery.witness.map.source.dims == recovery.witness.map.target.dims
    with pytest.raises(DegreeBoundError):
        gl_recovery(4, field, 4)


def test_coinduction_dims(QQ):
    for W in (make_free(1, QQ, 3), random_module(9, trunc=3)):
        assert not failed(coinduction_dims(W))


@pytest.mark.parametrize("tag", list(FunctorTag))
def test_exactness_and_additivity(tag, QQ, column):
    V = make_free(1, QQ, 3)
    sub = saturate_submodule(V, [DegreeVector(2, column(QQ, [1, 1]))])
    checks = exactness_checks(tag, V, sub)
    assert not failed(checks)
    names = [c.name for c in checks]
    assert (f"{tag.value}_exact" in names) == (tag is not FunctorTag.DERIVATIVE)
    assert additivity_check(tag, V, make_free(0, QQ, 3)).passed
