import numpy as np
import pytest

import config
from models.fimodule import validate
from models.random_modules import random_composable, random_family, random_injection, random_module
from models.scalars import FieldSpec
from utils.serialization import dumps


@pytest.mark.parametrize("profile", config.RANDOM_PROFILES)
def test_every_profile_is_valid(profile, field):
    for seed in range(5):
        V = random_module(seed, profile, field, trunc=4)
        assert V.trunc == 4
        assert validate(V).ok
        assert V.meta["seed"] == seed


def test_profiles_are_recorded():
    assert random_module(3, "free").meta["profile"] == "free"
    assert random_module(3, "mixed").meta["profile"] in ("free", "quotient", "shifted")


def test_seed_determines_the_module():
    field = FieldSpec.prime(5)
    assert dumps(random_module(42, field=field, trunc=3)) == dumps(random_module(42, field=field, trunc=3))
    family = random_family(7, 4, field, 3)
    assert [dumps(V) for V in family] == [dumps(V) for V in random_family(7, 4, field, 3)]


def test_unknown_profile():
    with pytest.raises(ValueError):
        random_module(0, "huge")


def test_random_injections():
    rng = np.random.default_rng(0)
    f = random_injection(rng, 2, 5)
    assert f.source == 2 and f.target == 5
    for _ in range(20):
        f, g, h = random_composable(rng, 4, 3)
        assert f.target == g.source and g.target == h.source and h.target <= 4
