from __future__ import annotations

import itertools
import math
from typing import Sequence
from pydantic import BaseModel, ConfigDict, model_validator
from typing_extensions import Self

from dynahill.core.common import DimensionMismatchError, setting
from dynahill.core.gfp import Prime, PrimeField, get_field
from dynahill.core.keysched import KeyMaterial, chain_states
from dynahill.core.matvec import (
	MatrixP, VectorP, check_matrix, gauss_jordan_inverse, is_nonsingular, mat_mat_mul, order_of, rank,
)
from dynahill.logger import Logger

log = Logger()



# Known-plaintext attack on classical Hill

class KpaSample(BaseModel):
	""" Rows of X are plaintext blocks, rows of Y the matching ciphertext blocks (Y = X·K). """
	model_config = ConfigDict(frozen=True)

	p: int
	X: tuple[tuple[int, ...], ...]
	Y: tuple[tuple[int, ...], ...]

	@model_validator(mode='after')
	def validate_shapes(self) -> Self:
		gf = get_field(self.p)
		check_matrix(gf, self.X)
		check_matrix(gf, self.Y, order_of(self.X))
		return self


class InsufficientData(BaseModel):
	""" X is singular: another set of plaintext-ciphertext pairs is needed. """
	model_config = ConfigDict(frozen=True)

	reason: str = 'plaintext matrix X is singular'


def kpa_recover_hill(sample: KpaSample) -> MatrixP | InsufficientData:
	""" K = X^-1·Y when X is invertible. """
	gf = get_field(sample.p)
	if not is_nonsingular(gf, sample.X):
		return InsufficientData()
	return mat_mat_mul(gf, gauss_jordan_inverse(gf, sample.X), sample.Y)



# Solution counting for the dynamic-key variant

def linear_solution_count(gf: PrimeField, X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> int:
	""" Number of n×n matrices A (invertible or not) with X·A = Y for k×n X and k×n Y.

	Column j of A solves X·a_j = y_j independently, so the count is p^(n·(n - rank X))
	when every column is consistent (rank [X | Y] = rank X) and 0 otherwise. """
	if len(X) != len(Y):
		raise DimensionMismatchError('X and Y need the same number of rows')
	if len(X) == 0:
		raise ValueError('at least one plaintext-ciphertext pair is needed')
	n = len(X[0])
	if any(len(row) != n for row in X) or any(len(row) != n for row in Y):
		raise DimensionMismatchError(f'every block must have length {n}')

	rank_x = rank(gf, X)
	augmented = [list(x) + list(y) for x, y in zip(X, Y)]
	if rank(gf, augmented) != rank_x:
		return 0
	return gf.p ** (n * (n - rank_x))

def variant_solution_count(gf: PrimeField, m_prime: VectorP, c: VectorP) -> int:
	""" Matrices A with m'·A = c: one pair gives n equations in n² unknowns.

	The whitened block m' is taken as input, i.e. the attacker is assumed to know I_i. """
	if len(m_prime) != len(c):
		raise DimensionMismatchError('m_prime and c must have the same length')
	return linear_solution_count(gf, [m_prime], [c])

def _check_enumeration_size(p: int, n: int) -> None:
	limit = setting('enumeration_limit')
	if p ** (n * n) > limit:
		raise ValueError(f'enumerating {p}^{n * n} matrices exceeds the limit of {limit}')

def all_matrices(p: int, n: int):
	for entries in itertools.product(range(p), repeat=n * n):
		yield tuple(tuple(entries[r * n:(r + 1) * n]) for r in range(n))

def enumerate_solution_count(gf: PrimeField, m_prime: VectorP, c: VectorP, invertible_only: bool = False) -> int:
	""" Exhaustive count of A with m'·A = c; optionally only over GL(n, F_p). """
	n = len(m_prime)
	_check_enumeration_size(gf.p, n)
	p = gf.p
	count = 0
	for A in all_matrices(p, n):
		if any(sum(m_prime[k] * A[k][j] for k in range(n)) % p != c[j] for j in range(n)):
			continue
		if invertible_only and not is_nonsingular(gf, A):
			continue
		count += 1
	return count

def count_invertible_by_enumeration(n: int, p: int) -> int:
	""" |GL(n, F_p)| by brute force; an oracle for keyspace_size. """
	gf = get_field(p)
	_check_enumeration_size(p, n)
	return sum(1 for A in all_matrices(p, n) if is_nonsingular(gf, A))



# Brute force

class KeyspaceSize(BaseModel):
	""" N = |GL(n, F_p)| counts bases (and classical Hill keys); a brute-force search
	over (I, B, T) has L = p^n · N² candidates, N² when I is known. """
	p: int
	n: int
	N: int
	L: int
	known_iv: int
	log2_N: float
	log2_L: float

def keyspace_size(n: int, p: int) -> KeyspaceSize:
	p = Prime(p)
	if n < 1:
		raise ValueError('n must be at least 1')
	q = p ** n
	N = math.prod(q - p ** k for k in range(n))
	L = q * N * N
	return KeyspaceSize(p=int(p), n=n, N=N, L=L, known_iv=N * N, log2_N=math.log2(N), log2_L=math.log2(L))



# Completeness

class CompletenessReport(BaseModel):
	""" dependence[k][j] is True when ciphertext symbol j depends on whitened symbol k. """
	dependence: tuple[tuple[bool, ...], ...]
	complete: bool
	zero_positions: tuple[tuple[int, int], ...]

def completeness_map(A: MatrixP) -> CompletenessReport:
	order_of(A)
	dependence = tuple(tuple(x != 0 for x in row) for row in A)
	zeros = tuple((k, j) for k, row in enumerate(dependence) for j, depends in enumerate(row) if not depends)
	return CompletenessReport(dependence=dependence, complete=not zeros, zero_positions=zeros)

def chain_completeness(km: KeyMaterial, blocks: int) -> float:
	""" Fraction of A_1..A_blocks with no zero entry. """
	if blocks < 1:
		raise ValueError('blocks must be at least 1')
	complete = sum(1 for state in chain_states(km, blocks) if completeness_map(state.A).complete)
	log.debug(f'{complete} of {blocks} key matrices fully complete')
	return complete / blocks
