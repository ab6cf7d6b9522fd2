from __future__ import annotations

import math
import random
import secrets
from typing import Any, Iterator
from typing_extensions import Self
from pydantic import BaseModel, ConfigDict, ModelWrapValidatorHandler, field_validator, model_validator

from dynahill.core.codec import EncodingMode, check_mode
from dynahill.core.common import DimensionMismatchError, SamplingError, SingularMatrixError, setting
from dynahill.core.gfp import OpCounts, Prime, PrimeField, get_field
from dynahill.core.matvec import (
	MatrixP, RandomSource, VectorP, check_matrix, check_vector, identity, is_nonsingular,
	is_zero_vector, mat_mat_mul, order_of, sample_nonsingular, vec_mat_mul,
)
from dynahill.logger import Logger

log = Logger()



# Randomness

def default_rng() -> RandomSource:
	""" Cryptographic source used whenever no seed is given. """
	return secrets.SystemRandom()

def seeded_rng(seed: int) -> RandomSource:
	""" Deterministic source for tests and reproducible key files. Not for real keys. """
	return random.Random(seed)



# Key material

class KeyMaterial(BaseModel):
	""" The shared secret: matrix M of the transformation T, the initial key matrix A1
	(its rows are the random basis B1) and the initial whitening vector I1. """
	model_config = ConfigDict(frozen=True)

	p: int
	n: int
	M: tuple[tuple[int, ...], ...]
	A1: tuple[tuple[int, ...], ...]
	I1: tuple[int, ...]
	encoding: EncodingMode = EncodingMode.digits

	@model_validator(mode='wrap')
	@classmethod
	def encoding_from_p(cls, data: Any, handler: ModelWrapValidatorHandler) -> Self:
		""" If `encoding` is not set, uses direct for p >= 257 and digits otherwise. """
		if not isinstance(data, dict) or data.get('encoding') is not None:
			return handler(data)
		if not isinstance(data.get('p'), int):
			return handler(data)

		data = dict(data)
		data['encoding'] = EncodingMode.default_for(data['p'])
		return handler(data)

	@field_validator('p')
	@classmethod
	def validate_p(cls, value: int) -> int:
		return int(Prime(value))

	@field_validator('n')
	@classmethod
	def validate_n(cls, value: int) -> int:
		if value < 1:
			raise ValueError('n must be at least 1')
		return value

	@model_validator(mode='after')
	def validate_secret(self) -> Self:
		gf = self.gf
		check_matrix(gf, self.M, self.n)
		check_matrix(gf, self.A1, self.n)
		check_vector(gf, self.I1, self.n)
		check_mode(self.p, self.encoding)
		if not is_nonsingular(gf, self.M):
			raise ValueError('transformation matrix M is singular')
		if not is_nonsingular(gf, self.A1):
			raise ValueError('initial key matrix A1 is singular')
		if is_zero_vector(self.I1):
			raise ValueError('initial vector I1 must be nonzero')
		return self

	@property
	def gf(self) -> PrimeField:
		return get_field(self.p)

	@classmethod
	def unsafe_test(cls, p: int, n: int, M: MatrixP, A1: MatrixP, I1: VectorP, encoding: EncodingMode|None = None) -> KeyMaterial:
		""" Test-only constructor that skips every invariant check (e.g. allows I1 = 0). """
		return cls.model_construct(p=p, n=n, M=M, A1=A1, I1=I1, encoding=encoding or EncodingMode.default_for(p))


class KeyChainState(BaseModel):
	""" Position i in the chain: A_i = A1·M^(i-1) and I_i = I1·M^(i-1). """
	model_config = ConfigDict(frozen=True)

	index: int
	A: MatrixP
	I: VectorP


def initial_state(km: KeyMaterial) -> KeyChainState:
	return KeyChainState(index=1, A=km.A1, I=km.I1)

def transform_vector(km: KeyMaterial, v: VectorP, counts: OpCounts|None = None) -> VectorP:
	""" T(v) = v·M: n² muls, n²-n adds. """
	if len(v) != km.n:
		raise DimensionMismatchError(f'expected a vector of length {km.n}, got {len(v)}')
	return vec_mat_mul(km.gf, v, km.M, counts)

def advance_chain(km: KeyMaterial, state: KeyChainState, counts: OpCounts|None = None) -> KeyChainState:
	""" Apply T to every row of A_i and to I_i: n³+n² muls, n³-n adds. """
	gf = km.gf
	return KeyChainState(
		index=state.index + 1,
		A=mat_mat_mul(gf, state.A, km.M, counts),
		I=vec_mat_mul(gf, state.I, km.M, counts),
	)

def chain_states(km: KeyMaterial, count: int) -> Iterator[KeyChainState]:
	""" Yield the first `count` chain states, starting at index 1. """
	state = initial_state(km)
	for position in range(count):
		if position:
			state = advance_chain(km, state)
		yield state



# Order of T

class Exact(BaseModel):
	model_config = ConfigDict(frozen=True)

	order: int

	def __str__(self) -> str:
		return f'Exact({self.order})'

class ExceedsCap(BaseModel):
	model_config = ConfigDict(frozen=True)

	cap: int

	def __str__(self) -> str:
		return f'ExceedsCap({self.cap})'

OrderResult = Exact | ExceedsCap


def estimate_order(gf: PrimeField, M: MatrixP, cap: int) -> OrderResult:
	""" Least k <= cap with M^k = I, or ExceedsCap.

	Iterates each basis vector e under v -> v·M until it returns; M^k = I exactly when
	every basis vector returns after k steps, so the order is the lcm of those orbit
	lengths. Stops as soon as an orbit or the running lcm passes the cap. """
	n = order_of(M)
	if cap < 1:
		raise ValueError('cap must be at least 1')
	if not is_nonsingular(gf, M):
		raise SingularMatrixError('transformation matrix is singular')

	order = 1
	for basis_vector in identity(n):
		image = vec_mat_mul(gf, basis_vector, M)
		length = 1
		while image != basis_vector:
			if length >= cap:
				return ExceedsCap(cap=cap)
			image = vec_mat_mul(gf, image, M)
			length += 1
		order = math.lcm(order, length)
		if order > cap:
			return ExceedsCap(cap=cap)
	return Exact(order=order)


def keygen(n: int, p: int, rng: RandomSource|None = None, order_floor: int|None = None, encoding: EncodingMode|None = None, retries: int|None = None) -> KeyMaterial:
	""" Fresh key material whose transformation has order above `order_floor`.

	The largest element order in GL(n, F_p) is p^n - 1, so the floor is clamped to
	p^n - 2 to stay satisfiable. """
	gf = get_field(p)
	if n < 1:
		raise ValueError('n must be at least 1')
	rng = default_rng() if rng is None else rng
	order_floor = setting('order_floor') if order_floor is None else order_floor
	retries = setting('keygen_retries') if retries is None else retries
	if order_floor < 1:
		raise ValueError('order_floor must be at least 1')
	encoding = EncodingMode.default_for(p) if encoding is None else encoding
	check_mode(p, encoding)

	floor = min(order_floor, p ** n - 2)
	if floor < order_floor:
		log.info(f'order floor {order_floor} clamped to {floor} for GL({n}, {p})')

	A1 = sample_nonsingular(gf, n, rng)
	I1 = _sample_nonzero_vector(gf, n, rng, retries)
	for attempt in range(1, retries + 1):
		M = sample_nonsingular(gf, n, rng)
		if floor < 1 or isinstance(estimate_order(gf, M, floor), ExceedsCap):
			return KeyMaterial(p=p, n=n, M=M, A1=A1, I1=I1, encoding=encoding)
		log.debug(f'keygen attempt {attempt}: transformation order at most {floor}, resampling')

	log.error(f'keygen gave up after {retries} transformations of order at most {floor}')
	raise SamplingError(f'no transformation of order above {floor} found after {retries} draws')

def _sample_nonzero_vector(gf: PrimeField, n: int, rng: RandomSource, retries: int) -> VectorP:
	for _ in range(retries):
		v = tuple(rng.randrange(gf.p) for _ in range(n))
		if not is_zero_vector(v):
			return v
	raise SamplingError(f'no nonzero vector found after {retries} draws')
