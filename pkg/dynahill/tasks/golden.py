""" Worked example over F_29 with n = 3, embedded as data and checked end to end.

T(v1, v2, v3) = (v1 + v2, 3·v2 + v3, v1 - v2 + v3), i.e. v·M with M below. """
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, model_validator
from typing_extensions import Self

from dynahill.core.cipher import decrypt_block, whiten
from dynahill.core.keysched import KeyMaterial, chain_states
from dynahill.core.matvec import MatrixP, VectorP, vec_mat_mul
from dynahill.logger import Logger

log = Logger()


class Erratum(BaseModel):
	""" A printed value that disagrees with the rest of the printed example. """
	model_config = ConfigDict(frozen=True)

	checkpoint: str
	printed: VectorP
	corrected: VectorP


class GoldenVectors(BaseModel):
	model_config = ConfigDict(frozen=True)

	p: int
	n: int
	M: MatrixP
	I1: VectorP
	A: tuple[MatrixP, ...]
	plaintext: tuple[VectorP, ...]
	whitened: tuple[VectorP, ...]
	ciphertext: tuple[VectorP, ...]
	errata: tuple[Erratum, ...] = ()

	@model_validator(mode='after')
	def validate_lengths(self) -> Self:
		blocks = len(self.plaintext)
		if blocks == 0:
			raise ValueError('at least one block is needed')
		if not len(self.A) == len(self.whitened) == len(self.ciphertext) == blocks:
			raise ValueError('every sequence needs one entry per block')
		return self

	@property
	def blocks(self) -> int:
		return len(self.plaintext)

	def key_material(self) -> KeyMaterial:
		return KeyMaterial(p=self.p, n=self.n, M=self.M, A1=self.A[0], I1=self.I1)


GOLDEN = GoldenVectors(
	p=29,
	n=3,
	M=((1, 0, 1), (1, 3, 28), (0, 1, 1)),
	I1=(2, 1, 5),
	A=(
		((1, 2, 0), (3, 1, 0), (1, 28, 4)),
		((3, 6, 28), (4, 3, 2), (0, 1, 6)),
		((9, 17, 25), (7, 11, 3), (1, 9, 5)),
		((26, 18, 17), (18, 7, 28), (10, 3, 26)),
		((15, 13, 25), (25, 20, 10), (13, 6, 4)),
		((28, 6, 27), (16, 12, 15), (19, 22, 11)),
	),
	plaintext=((12, 0, 17), (2, 7, 5), (14, 17, 22), (0, 17, 3), (0, 19, 5), (8, 21, 4)),
	whitened=((14, 1, 22), (5, 15, 11), (25, 18, 23), (12, 21, 14), (16, 13, 24), (18, 22, 16)),
	ciphertext=((10, 7, 1), (17, 28, 4), (26, 18, 11), (18, 28, 25), (7, 3, 17), (0, 28, 6)),
	# second coordinate of c3 is 25·17 + 18·11 + 23·9 = 830 = 18 mod 29
	errata=(Erratum(checkpoint='c3', printed=(26, 26, 11), corrected=(26, 18, 11)),),
)


class Divergence(BaseModel):
	checkpoint: str
	expected: str
	actual: str

class VerificationReport(BaseModel):
	passed: bool
	blocks: int
	checkpoints: int
	first_failure: Divergence|None = None
	notes: tuple[str, ...] = ()

	def summary(self) -> str:
		if self.passed:
			return f'PASS: {self.blocks} blocks, {self.checkpoints} checkpoints'
		failure = self.first_failure
		return f'FAIL at {failure.checkpoint}: expected {failure.expected}, got {failure.actual}'


def verify_golden(vectors: GoldenVectors|None = None) -> VerificationReport:
	""" Recompute every intermediate value from (M, A1, I1, plaintext) and compare in
	order: m'_i, A_i and c_i for each block, then the decryption of each embedded c_i.
	Recorded errata are reported as notes when the recomputed value matches the correction. """
	vectors = GOLDEN if vectors is None else vectors
	km = vectors.key_material()
	gf = km.gf
	states = list(chain_states(km, vectors.blocks))

	checks:list[tuple[str, object, object]] = []
	for i, state in enumerate(states):
		m_prime = whiten(gf, state, vectors.plaintext[i])
		checks.append((f"m'{i + 1}", vectors.whitened[i], m_prime))
		checks.append((f'A{i + 1}', vectors.A[i], state.A))
		checks.append((f'c{i + 1}', vectors.ciphertext[i], vec_mat_mul(gf, m_prime, state.A)))
	for i, state in enumerate(states):
		m, _ = decrypt_block(km, state, vectors.ciphertext[i], advance=False)
		checks.append((f'm{i + 1}', vectors.plaintext[i], m))

	recomputed = {name: actual for name, _, actual in checks}
	notes:list[str] = []
	for erratum in vectors.errata:
		if recomputed.get(erratum.checkpoint) == erratum.corrected:
			notes.append(f'{erratum.checkpoint}: printed {erratum.printed} is a misprint, recomputed {erratum.corrected}')
			log.info(notes[-1])

	for name, expected, actual in checks:
		if expected != actual:
			log.error(f'worked example diverges at {name}: expected {expected}, got {actual}')
			return VerificationReport(
				passed=False,
				blocks=vectors.blocks,
				checkpoints=len(checks),
				first_failure=Divergence(checkpoint=name, expected=str(expected), actual=str(actual)),
				notes=tuple(notes),
			)
	return VerificationReport(passed=True, blocks=vectors.blocks, checkpoints=len(checks), notes=tuple(notes))
