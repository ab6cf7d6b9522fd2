""" Dense linear algebra over F_p using the row-vector convention (v·A).

Vectors are tuples of residues and matrices are tuples of row tuples. Counted
operations tally into an optional OpCounts session; determinant, rank and
mat_pow are diagnostics and never counted. """
from __future__ import annotations

from fractions import Fraction
from typing import Protocol, Sequence

from dynahill.core.common import DimensionMismatchError, SamplingError, SingularMatrixError, setting
from dynahill.core.gfp import OpCounts, Prime, PrimeField
from dynahill.logger import Logger

VectorP = tuple[int, ...]
MatrixP = tuple[tuple[int, ...], ...]

log = Logger()


class RandomSource(Protocol):
	def randrange(self, start: int, stop: int = ..., step: int = ...) -> int: ...



# Construction and checks

def identity(n: int) -> MatrixP:
	return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

def as_matrix(rows: Sequence[Sequence[int]]) -> MatrixP:
	return tuple(tuple(int(x) for x in row) for row in rows)

def order_of(A: MatrixP) -> int:
	""" Order of a square matrix. Raises DimensionMismatchError when A is not square. """
	n = len(A)
	if n == 0 or any(len(row) != n for row in A):
		raise DimensionMismatchError('matrix must be square and non-empty')
	return n

def check_matrix(gf: PrimeField, A: Sequence[Sequence[int]], n: int|None = None) -> None:
	order = order_of(tuple(tuple(row) for row in A))
	if n is not None and order != n:
		raise DimensionMismatchError(f'expected a {n}x{n} matrix, got {order}x{order}')
	for row in A:
		for x in row:
			if not gf.contains(x):
				raise ValueError(f'matrix entry {x} outside [0, {gf.p})')

def check_vector(gf: PrimeField, v: Sequence[int], n: int) -> None:
	if len(v) != n:
		raise DimensionMismatchError(f'expected a vector of length {n}, got {len(v)}')
	for x in v:
		if not gf.contains(x):
			raise ValueError(f'vector entry {x} outside [0, {gf.p})')

def is_zero_vector(v: Sequence[int]) -> bool:
	return all(x == 0 for x in v)



# Counted operations

def vec_mat_mul(gf: PrimeField, v: VectorP, A: MatrixP, counts: OpCounts|None = None) -> VectorP:
	""" v·A mod p: n² muls and n(n-1) adds. """
	if len(v) != len(A):
		raise DimensionMismatchError(f'vector of length {len(v)} times {len(A)}x{len(A)} matrix')
	return tuple(gf.dot(v, column, counts) for column in zip(*A))

def mat_mat_mul(gf: PrimeField, A: MatrixP, B: MatrixP, counts: OpCounts|None = None) -> MatrixP:
	""" A·B mod p: n³ muls and n²(n-1) adds. """
	if len(A) != len(B):
		raise DimensionMismatchError(f'{len(A)}x{len(A)} matrix times {len(B)}x{len(B)} matrix')
	columns = list(zip(*B))
	return tuple(tuple(gf.dot(row, column, counts) for column in columns) for row in A)

def gauss_jordan_inverse(gf: PrimeField, A: MatrixP, counts: OpCounts|None = None) -> MatrixP:
	""" Invert A by Gauss-Jordan elimination on the augmented n×2n system [A | I].

	Per pivot column i (pivot = first row at or below i with a nonzero entry):
	  - one field inversion of the pivot,
	  - the full pivot row (2n entries) scaled by that inverse: 2n muls,
	  - each of the other n-1 rows updated as row - f·pivot_row over all 2n
	    columns, f included even when zero: 2n muls and 2n adds per row.
	Totals: 2n³ muls, 2n³-2n² adds, n inversions, independent of the data. """
	n = order_of(A)
	aug:list[list[int]] = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]

	for col in range(n):
		pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
		if pivot_row is None:
			log.debug(f'no pivot in column {col} while inverting a {n}x{n} matrix mod {gf.p}')
			raise SingularMatrixError('matrix is singular mod p')
		if pivot_row != col:
			aug[col], aug[pivot_row] = aug[pivot_row], aug[col]

		pivot_inverse = gf.inv(aug[col][col], counts)
		aug[col] = gf.scale(aug[col], pivot_inverse, counts)

		for r in range(n):
			if r == col:
				continue
			aug[r] = gf.sub_scaled(aug[r], aug[col], aug[r][col], counts)

	return tuple(tuple(row[n:]) for row in aug)



# Uncounted diagnostics

def _eliminate(gf: PrimeField, rows: Sequence[Sequence[int]]) -> tuple[int, int]:
	""" Row-reduce a copy of `rows`; returns (rank, product of pivots with swap sign). """
	work = [list(row) for row in rows]
	height = len(work)
	width = len(work[0]) if height else 0
	p = gf.p
	rank = 0
	det = 1
	for col in range(width):
		pivot_row = next((r for r in range(rank, height) if work[r][col] % p != 0), None)
		if pivot_row is None:
			continue
		if pivot_row != rank:
			work[rank], work[pivot_row] = work[pivot_row], work[rank]
			det = -det
		pivot = work[rank][col]
		det = (det * pivot) % p
		pivot_inverse = pow(pivot, -1, p)
		for r in range(rank + 1, height):
			factor = (work[r][col] * pivot_inverse) % p
			if factor:
				work[r] = [(x - factor * y) % p for x, y in zip(work[r], work[rank])]
		rank += 1
	return rank, det % p

def determinant(gf: PrimeField, A: MatrixP) -> int:
	n = order_of(A)
	rank, det = _eliminate(gf, A)
	return det if rank == n else 0

def is_nonsingular(gf: PrimeField, A: MatrixP) -> bool:
	return determinant(gf, A) != 0

def rank(gf: PrimeField, rows: Sequence[Sequence[int]]) -> int:
	""" Rank of a (possibly rectangular) matrix over F_p. """
	if len(rows) == 0:
		return 0
	return _eliminate(gf, rows)[0]

def mat_pow(gf: PrimeField, A: MatrixP, k: int) -> MatrixP:
	""" A**k by square-and-multiply, k >= 0. """
	if k < 0:
		raise ValueError('exponent must be non-negative')
	result = identity(order_of(A))
	base = A
	while k:
		if k & 1:
			result = mat_mat_mul(gf, result, base)
		base = mat_mat_mul(gf, base, base)
		k >>= 1
	return result



# Random sampling

def random_matrix(gf: PrimeField, n: int, rng: RandomSource) -> MatrixP:
	return tuple(tuple(rng.randrange(gf.p) for _ in range(n)) for _ in range(n))

def sample_nonsingular(gf: PrimeField, n: int, rng: RandomSource, retries: int|None = None) -> MatrixP:
	""" Uniform element of GL(n, F_p) by rejection: draw, test det, redraw. """
	if n < 1:
		raise ValueError('n must be at least 1')
	retries = setting('sample_retries') if retries is None else retries
	for _ in range(retries):
		candidate = random_matrix(gf, n, rng)
		if is_nonsingular(gf, candidate):
			return candidate
	log.error(f'no non-singular {n}x{n} matrix mod {gf.p} after {retries} draws')
	raise SamplingError(f'no non-singular matrix found after {retries} draws')

def acceptance_rate(gf: PrimeField, n: int, rng: RandomSource, samples: int) -> float:
	""" Fraction of raw uniform draws that are non-singular. """
	accepted = sum(1 for _ in range(samples) if is_nonsingular(gf, random_matrix(gf, n, rng)))
	return accepted / samples

def nonsingular_probability(n: int, p: int) -> Fraction:
	""" Exact (1 - 1/p^n)(1 - 1/p^(n-1))...(1 - 1/p). """
	p = Prime(p)
	if n < 1:
		raise ValueError('n must be at least 1')
	probability = Fraction(1)
	for k in range(1, n + 1):
		probability *= 1 - Fraction(1, p ** k)
	return probability
