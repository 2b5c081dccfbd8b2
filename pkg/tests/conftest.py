import pytest

from models.free import make_free
from models.scalars import FieldSpec, Matrix


@pytest.fixture
def QQ():
    return FieldSpec.rationals()


@pytest.fixture
def F2():
    return FieldSpec.prime(2)


@pytest.fixture(params=["Q", "F2", "F5"])
def field(request):
    return FieldSpec.parse(request.param)


@pytest.fixture
def free1(QQ):
    return make_free(1, QQ, 4)


@pytest.fixture
def column():
    def build(field, values):
        return Matrix.from_rows(field, [[v] for v in values], 1)

    return build
