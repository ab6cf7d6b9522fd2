import pytest
from hypothesis import given, settings, strategies as st
from sympy import nextprime

from dynahill.core.common import FieldMismatchError
from dynahill.core.gfp import FieldElement, OpCounts, Prime, fadd, finv, fmul, fsub, get_field


def test_prime_accepts_primes():
	assert Prime(29) == 29
	assert Prime(2) == 2
	assert Prime(2**61 - 1) == 2**61 - 1

@pytest.mark.parametrize('value', [0, 1, 4, 91, 65535])
def test_prime_rejects_composites(value):
	with pytest.raises(ValueError, match='not prime'):
		Prime(value)

def test_prime_rejects_oversized_and_non_integers():
	with pytest.raises(ValueError):
		Prime(int(nextprime(2**61)))
	with pytest.raises(TypeError):
		Prime(True)
	with pytest.raises(TypeError):
		Prime(29.0)

def test_bit_length_of_max_residue():
	assert Prime(2).bit_length_of_max_residue == 1
	assert Prime(29).bit_length_of_max_residue == 5
	assert Prime(257).bit_length_of_max_residue == 9


def test_field_operations_are_counted():
	gf = get_field(29)
	with OpCounts() as counts:
		assert gf.add(28, 5, counts) == 4
		assert gf.sub(3, 5, counts) == 27
		assert gf.mul(7, 5, counts) == 6
		assert gf.inv(3, counts) == 10
	assert counts == OpCounts(adds=2, muls=1, invs=1)

def test_dot_counts_len_muls_and_one_fewer_adds():
	gf = get_field(29)
	counts = OpCounts()
	assert gf.dot((1, 2, 3), (4, 5, 6), counts) == 32 % 29
	assert (counts.muls, counts.adds) == (3, 2)

def test_inverse_of_zero_raises():
	with pytest.raises(ZeroDivisionError):
		get_field(29).inv(0)

def test_counts_delta():
	gf = get_field(5)
	counts = OpCounts()
	gf.mul(2, 3, counts)
	before = counts.copy()
	gf.vec_add((1, 2), (3, 4), counts)
	assert counts.delta(before) == OpCounts(adds=2)

@given(
	p=st.sampled_from([2, 3, 5, 29, 257, 65537, 2**31 - 1]),
	a=st.integers(min_value=1, max_value=2**40),
)
@settings(max_examples=200, deadline=None)
def test_inverse_times_value_is_one(p, a):
	gf = get_field(p)
	a %= p
	if a == 0:
		a = 1
	assert gf.mul(a, gf.inv(a)) == 1


def test_elements_reduce_and_combine():
	gf = get_field(29)
	a, b = gf.element(57), gf.element(-1)
	assert int(a) == 28 and int(b) == 28
	assert fadd(a, b).residue == 27
	assert fsub(gf.element(3), gf.element(5)).residue == 27
	assert fmul(a, b).residue == 1
	assert finv(gf.element(3)).residue == 10

def test_element_out_of_range():
	with pytest.raises(ValueError):
		FieldElement(29, get_field(29))

def test_mixed_fields_are_rejected():
	with pytest.raises(FieldMismatchError):
		fadd(get_field(29).element(1), get_field(31).element(1))

@pytest.mark.parametrize('p, a, expected', [(29, 1, 1), (29, 2, 15), (7, 3, 5)])
def test_known_inverses(p, a, expected):
	assert get_field(p).inv(a) == expected

def test_element_counting_session():
	gf = get_field(5)
	counts = OpCounts()
	x = gf.element(4)
	for _ in range(7):
		x = fmul(x, gf.element(4), counts)
	assert counts == OpCounts(muls=7)
	assert fadd(gf.element(4), gf.element(3), counts).residue == 2
	assert fsub(gf.element(0), gf.element(1), counts).residue == 4
	assert counts.adds == 2


@given(
	p=st.sampled_from([2, 3, 5, 29]),
	a=st.integers(min_value=0, max_value=2**64),
	b=st.integers(min_value=0, max_value=2**64),
	c=st.integers(min_value=0, max_value=2**64),
)
@settings(max_examples=300, deadline=None)
def test_field_laws(p, a, b, c):
	gf = get_field(p)
	x, y, z = gf.element(a), gf.element(b), gf.element(c)
	assert fadd(x, y) == fadd(y, x)
	assert fmul(x, y) == fmul(y, x)
	assert fmul(x, fadd(y, z)) == fadd(fmul(x, y), fmul(x, z))
	assert fsub(fadd(x, y), y) == x

@given(
	p=st.sampled_from([2, 3, 5, 29]),
	a=st.integers(min_value=0, max_value=2**64),
	b=st.integers(min_value=0, max_value=2**64),
)
@settings(max_examples=300, deadline=None)
def test_kernels_agree_with_integer_arithmetic(p, a, b):
	gf = get_field(p)
	a, b = a % p, b % p
	assert gf.add(a, b) == (a + b) % p
	assert gf.sub(a, b) == (a - b) % p
	assert gf.mul(a, b) == (a * b) % p
	if a:
		assert gf.inv(a) == pow(a, -1, p)
