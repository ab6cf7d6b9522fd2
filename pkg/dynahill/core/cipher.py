""" Block encryption and decryption with per-block dynamic keys, plus the classical
Hill cipher used as a baseline.

Block i is whitened with I_i and multiplied by A_i: c_i = (m_i + I_i)·A_i. Decryption
inverts A_i for every block: m_i = c_i·A_i^-1 - I_i. """
from __future__ import annotations

from functools import cached_property
from typing import Sequence
from typing_extensions import Self
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from dynahill.core.common import DimensionMismatchError
from dynahill.core.gfp import OpCounts, Prime, PrimeField, get_field
from dynahill.core.keysched import KeyChainState, KeyMaterial, advance_chain, initial_state
from dynahill.core.matvec import MatrixP, VectorP, check_matrix, gauss_jordan_inverse, is_nonsingular, vec_mat_mul

PlainBlock = VectorP
WhitenedBlock = VectorP
CipherBlock = VectorP


def _check_block(n: int, block: Sequence[int]) -> None:
	if len(block) != n:
		raise DimensionMismatchError(f'block of length {len(block)}, expected {n}')



# Single blocks

def whiten(gf: PrimeField, state: KeyChainState, m: PlainBlock, counts: OpCounts|None = None) -> WhitenedBlock:
	""" m' = m + I_i: n adds. """
	return gf.vec_add(m, state.I, counts)

def encrypt_block(km: KeyMaterial, state: KeyChainState, m: PlainBlock, counts: OpCounts|None = None, advance: bool = True) -> tuple[CipherBlock, KeyChainState]:
	""" c = (m + I_i)·A_i, then the state for block i+1 unless `advance` is False. """
	_check_block(km.n, m)
	gf = km.gf
	c = vec_mat_mul(gf, whiten(gf, state, m, counts), state.A, counts)
	return c, advance_chain(km, state, counts) if advance else state

def decrypt_block(km: KeyMaterial, state: KeyChainState, c: CipherBlock, counts: OpCounts|None = None, advance: bool = True) -> tuple[PlainBlock, KeyChainState]:
	""" m = c·A_i^-1 - I_i with a fresh Gauss-Jordan inverse of A_i. """
	_check_block(km.n, c)
	gf = km.gf
	# A_i = A1·M^(i-1) is invertible for valid key material
	A_inverse = gauss_jordan_inverse(gf, state.A, counts)
	m = gf.vec_sub(vec_mat_mul(gf, c, A_inverse, counts), state.I, counts)
	return m, advance_chain(km, state, counts) if advance else state



# Messages

def encrypt_message(km: KeyMaterial, blocks: Sequence[PlainBlock], counts: OpCounts|None = None) -> list[CipherBlock]:
	""" Encrypt blocks 1..B in order; the chain advances between blocks only. """
	state = initial_state(km)
	ciphertext:list[CipherBlock] = []
	last = len(blocks) - 1
	for position, m in enumerate(blocks):
		c, state = encrypt_block(km, state, m, counts, advance=position < last)
		ciphertext.append(c)
	return ciphertext

def decrypt_message(km: KeyMaterial, blocks: Sequence[CipherBlock], counts: OpCounts|None = None) -> list[PlainBlock]:
	state = initial_state(km)
	plaintext:list[PlainBlock] = []
	last = len(blocks) - 1
	for position, c in enumerate(blocks):
		m, state = decrypt_block(km, state, c, counts, advance=position < last)
		plaintext.append(m)
	return plaintext



# Classical Hill baseline

class ClassicalHillKey(BaseModel):
	""" Fixed invertible key K: E(x) = x·K, D(y) = y·K^-1. """
	model_config = ConfigDict(frozen=True)

	p: int
	K: tuple[tuple[int, ...], ...]

	@field_validator('p')
	@classmethod
	def validate_p(cls, value: int) -> int:
		return int(Prime(value))

	@model_validator(mode='after')
	def validate_key(self) -> Self:
		check_matrix(self.gf, self.K)
		if not is_nonsingular(self.gf, self.K):
			raise ValueError('key matrix K is singular')
		return self

	@property
	def gf(self) -> PrimeField:
		return get_field(self.p)

	@property
	def n(self) -> int:
		return len(self.K)

	@cached_property
	def inverse(self) -> MatrixP:
		""" K^-1, computed once and not charged to any block. """
		return gauss_jordan_inverse(self.gf, self.K)


def hill_encrypt(key: ClassicalHillKey, m: PlainBlock, counts: OpCounts|None = None) -> CipherBlock:
	_check_block(key.n, m)
	return vec_mat_mul(key.gf, m, key.K, counts)

def hill_decrypt(key: ClassicalHillKey, c: CipherBlock, counts: OpCounts|None = None) -> PlainBlock:
	_check_block(key.n, c)
	return vec_mat_mul(key.gf, c, key.inverse, counts)
