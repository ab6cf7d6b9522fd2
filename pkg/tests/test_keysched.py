import pytest
from pydantic import ValidationError

from dynahill.core.codec import EncodingMode
from dynahill.core.common import DimensionMismatchError, SingularMatrixError
from dynahill.core.gfp import OpCounts, get_field
from dynahill.core.keysched import (
	Exact, ExceedsCap, KeyMaterial, advance_chain, chain_states, estimate_order, initial_state, keygen,
	seeded_rng, transform_vector,
)
from dynahill.core.matvec import identity, is_nonsingular, is_zero_vector, mat_mat_mul, mat_pow
from dynahill.tasks.golden import GOLDEN


def test_golden_key_material_is_valid(golden_key):
	assert golden_key.n == 3
	assert golden_key.encoding is EncodingMode.digits

def test_encoding_defaults_to_direct_for_large_p():
	km = KeyMaterial(p=257, n=1, M=((3,),), A1=((5,),), I1=(1,))
	assert km.encoding is EncodingMode.direct

@pytest.mark.parametrize('changes', [
	{'M': ((1, 2, 0), (2, 4, 0), (0, 0, 1))},
	{'A1': ((0, 0, 0), (0, 1, 0), (0, 0, 1))},
	{'I1': (0, 0, 0)},
	{'I1': (1, 2)},
	{'A1': ((1, 2, 0), (3, 1, 0), (1, 29, 4))},
	{'encoding': EncodingMode.direct},
	{'p': 27},
	{'n': 0},
])
def test_key_material_rejects_broken_invariants(changes):
	values = {'p': 29, 'n': 3, 'M': GOLDEN.M, 'A1': GOLDEN.A[0], 'I1': GOLDEN.I1} | changes
	with pytest.raises(ValidationError):
		KeyMaterial(**values)


def test_transform_matches_closed_form(golden_key):
	# T(v1, v2, v3) = (v1 + v2, 3·v2 + v3, v1 - v2 + v3)
	v1, v2, v3 = 4, 11, 27
	assert transform_vector(golden_key, (v1, v2, v3)) == ((v1 + v2) % 29, (3 * v2 + v3) % 29, (v1 - v2 + v3) % 29)
	with pytest.raises(DimensionMismatchError):
		transform_vector(golden_key, (1, 2))

def test_advance_chain_reproduces_golden_matrices(golden_key):
	assert [state.A for state in chain_states(golden_key, 6)] == list(GOLDEN.A)
	assert [state.index for state in chain_states(golden_key, 3)] == [1, 2, 3]

def test_advance_chain_counts(golden_key):
	with OpCounts() as counts:
		advance_chain(golden_key, initial_state(golden_key), counts)
	assert counts == OpCounts(adds=3**3 - 3, muls=3**3 + 3**2)

def test_chain_invariants_on_random_keys(rng):
	for _ in range(100):
		km = keygen(3, 29, rng=rng, order_floor=1)
		gf = km.gf
		for state in chain_states(km, 50):
			assert is_nonsingular(gf, state.A)
			assert not is_zero_vector(state.I)
		# index 50 against A1·M^49
		assert state.A == mat_mat_mul(gf, km.A1, mat_pow(gf, km.M, 49))


def test_estimate_order():
	gf = get_field(29)
	assert estimate_order(gf, identity(3), 10) == Exact(order=1)
	assert estimate_order(gf, ((0, 1), (1, 0)), 10) == Exact(order=2)
	shear = ((1, 1), (0, 1))
	assert estimate_order(gf, shear, 29) == Exact(order=29)
	assert estimate_order(gf, shear, 28) == ExceedsCap(cap=28)
	assert str(Exact(order=29)) == 'Exact(29)'
	assert str(ExceedsCap(cap=28)) == 'ExceedsCap(28)'

def test_estimate_order_agrees_with_matrix_power(rng):
	gf = get_field(5)
	km = keygen(2, 5, rng=rng, order_floor=1)
	result = estimate_order(gf, km.M, 24)
	assert isinstance(result, Exact)
	assert mat_pow(gf, km.M, result.order) == identity(2)
	for k in range(1, result.order):
		assert mat_pow(gf, km.M, k) != identity(2)

def test_estimate_order_rejects_singular():
	with pytest.raises(SingularMatrixError):
		estimate_order(get_field(29), ((1, 2), (2, 4)), 10)


def test_keygen_is_reproducible_with_seed():
	assert keygen(3, 29, rng=seeded_rng(7), order_floor=1) == keygen(3, 29, rng=seeded_rng(7), order_floor=1)

def test_keygen_honors_order_floor(rng):
	km = keygen(2, 5, rng=rng, order_floor=20)
	assert isinstance(estimate_order(km.gf, km.M, 20), ExceedsCap)

def test_keygen_clamps_unsatisfiable_floor():
	km = keygen(1, 2, rng=seeded_rng(1))
	assert km.M == ((1,),)
	assert km.I1 == (1,)

def test_keygen_rejects_bad_parameters():
	with pytest.raises(ValueError):
		keygen(0, 29)
	with pytest.raises(ValueError, match='not prime'):
		keygen(3, 4)
	with pytest.raises(ValueError):
		keygen(2, 29, encoding=EncodingMode.direct)

def test_whitening_chain(golden_key):
	expected = [(2, 1, 5), (3, 8, 6), (11, 1, 1), (12, 4, 11), (16, 23, 19), (10, 1, 12)]
	assert [state.I for state in chain_states(golden_key, 6)] == expected

def test_identity_transformation_keeps_state():
	km = KeyMaterial(p=29, n=3, M=identity(3), A1=GOLDEN.A[0], I1=GOLDEN.I1)
	state = advance_chain(km, initial_state(km))
	assert (state.index, state.A, state.I) == (2, km.A1, km.I1)

def test_estimate_order_small_fields():
	assert estimate_order(get_field(2), ((1, 1), (0, 1)), 10) == Exact(order=2)
	gf = get_field(5)
	M = ((4, 2), (0, 3))
	result = estimate_order(gf, M, 100)
	k = next(k for k in range(1, 101) if mat_pow(gf, M, k) == identity(2))
	assert result == Exact(order=k)

def test_chain_is_periodic_in_the_order_of_the_transformation(rng):
	km = keygen(2, 5, rng=rng, order_floor=1)
	t = estimate_order(km.gf, km.M, 24).order
	states = list(chain_states(km, 2 * t + 3))
	for i in range(t + 3):
		assert (states[i + t].A, states[i + t].I) == (states[i].A, states[i].I)

@pytest.mark.parametrize('p, n', [(3, 2), (3, 4), (5, 2), (5, 4)])
def test_chain_maps_bases_to_bases(p, n):
	rng = seeded_rng(p * 10 + n)
	for _ in range(10):
		km = keygen(n, p, rng=rng, order_floor=1)
		for state in chain_states(km, 30):
			assert is_nonsingular(km.gf, state.A)
			assert not is_zero_vector(state.I)
