import pytest

from dynahill.core.keysched import KeyMaterial, seeded_rng
from dynahill.core.matvec import RandomSource
from dynahill.tasks.golden import GOLDEN


@pytest.fixture
def golden_key() -> KeyMaterial:
	return GOLDEN.key_material()

@pytest.fixture
def rng() -> RandomSource:
	return seeded_rng(20240229)
