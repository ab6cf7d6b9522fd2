""" Known-plaintext attack on classical Hill, contrasted with the dynamic-key variant. """
from __future__ import annotations

from pydantic import BaseModel

from dynahill.core.common import setting
from dynahill.core.cryptanalysis import (
	InsufficientData, KpaSample, enumerate_solution_count, kpa_recover_hill, variant_solution_count,
)
from dynahill.core.gfp import get_field
from dynahill.core.matvec import RandomSource, is_zero_vector, mat_mat_mul, random_matrix, sample_nonsingular, vec_mat_mul
from dynahill.logger import Logger

log = Logger()

# fresh plaintext draws per trial before a singular X counts as a failure
PLAINTEXT_RETRIES:int = 32


class ClassicalKpaResult(BaseModel):
	trials: int
	recovered: int
	singular_draws: int
	success_rate: float

class VariantCountResult(BaseModel):
	equations: int
	unknowns: int
	solution_count: int
	enumerated: int|None = None
	enumerated_invertible: int|None = None
	notice: str|None = None

class AttackDemoReport(BaseModel):
	p: int
	n: int
	classical: ClassicalKpaResult
	variant: VariantCountResult


def classical_kpa_trials(p: int, n: int, trials: int, rng: RandomSource) -> ClassicalKpaResult:
	""" Random key K, n random plaintext blocks X, Y = X·K, then K = X^-1·Y. A singular X
	is redrawn, as an attacker would collect another set of pairs. """
	if trials < 1:
		raise ValueError('trials must be at least 1')
	gf = get_field(p)
	recovered = 0
	singular_draws = 0
	for trial in range(trials):
		K = sample_nonsingular(gf, n, rng)
		for _ in range(PLAINTEXT_RETRIES):
			X = random_matrix(gf, n, rng)
			result = kpa_recover_hill(KpaSample(p=p, X=X, Y=mat_mat_mul(gf, X, K)))
			if not isinstance(result, InsufficientData):
				break
			singular_draws += 1
		else:
			log.warn(f'trial {trial}: every plaintext draw was singular')
			continue
		if result == K:
			recovered += 1
	return ClassicalKpaResult(trials=trials, recovered=recovered, singular_draws=singular_draws, success_rate=recovered / trials)

def variant_single_pair(p: int, n: int, rng: RandomSource) -> VariantCountResult:
	""" Candidate key matrices consistent with one (m', c) pair of the variant. """
	gf = get_field(p)
	A = sample_nonsingular(gf, n, rng)
	m_prime = tuple(rng.randrange(p) for _ in range(n))
	while is_zero_vector(m_prime):
		m_prime = tuple(rng.randrange(p) for _ in range(n))
	c = vec_mat_mul(gf, m_prime, A)

	result = VariantCountResult(equations=n, unknowns=n * n, solution_count=variant_solution_count(gf, m_prime, c))
	limit = setting('enumeration_limit')
	if p ** (n * n) > limit:
		result.notice = f'enumeration skipped: {p}^{n * n} matrices exceed the limit of {limit}'
		log.info(result.notice)
		return result

	result.enumerated = enumerate_solution_count(gf, m_prime, c)
	result.enumerated_invertible = enumerate_solution_count(gf, m_prime, c, invertible_only=True)
	if result.enumerated != result.solution_count:
		log.error(f'enumerated {result.enumerated} solutions, formula gives {result.solution_count}')
	return result

def run_attack_demo(p: int, n: int, trials: int, rng: RandomSource) -> AttackDemoReport:
	return AttackDemoReport(
		p=p,
		n=n,
		classical=classical_kpa_trials(p, n, trials, rng),
		variant=variant_single_pair(p, n, rng),
	)
