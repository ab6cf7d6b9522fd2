""" Instrumented encryption and decryption measured against the closed-form cost model. """
from __future__ import annotations

from pydantic import BaseModel

from dynahill.core.cipher import ClassicalHillKey
from dynahill.core.costmodel import (
	REPORT_ROWS, Phase, Scheme, ValidationReport, bitops, measure_classical_hill, measure_message,
	per_block_cost, total_cost, validate_counters,
)
from dynahill.core.gfp import OpCounts
from dynahill.core.keysched import keygen
from dynahill.core.matvec import RandomSource, sample_nonsingular
from dynahill.logger import Logger

log = Logger()


class BenchRow(BaseModel):
	source: str
	scheme: Scheme
	phase: Phase
	n: int
	muls: int
	adds: int
	invs: int
	bitops: int

class TotalsCheck(BaseModel):
	direction: str
	expected: dict[str, int]
	measured: dict[str, int]
	matches: bool

class BenchReport(BaseModel):
	p: int
	n: int
	blocks: int
	rows: list[BenchRow]
	block_checks: list[ValidationReport]
	totals: list[TotalsCheck]
	classical_hill: list[ValidationReport]

	@property
	def proposed_matches(self) -> bool:
		""" True when every proposed-scheme count agrees with its formula. """
		return all(check.matches for check in self.block_checks) and all(total.matches for total in self.totals)

	@property
	def mismatches(self) -> list[str]:
		flagged = [f'{c.scheme.value} {c.phase.value}' for c in self.block_checks + self.classical_hill if not c.matches]
		flagged.extend(f'{t.direction} totals' for t in self.totals if not t.matches)
		return list(dict.fromkeys(flagged))


def _row(source: str, scheme: Scheme, phase: Phase, n: int, counts: OpCounts, p: int) -> BenchRow:
	return BenchRow(source=source, scheme=scheme, phase=phase, n=n, muls=counts.muls, adds=counts.adds, invs=counts.invs, bitops=bitops(counts, p))

def run_bench(p: int, n: int, blocks: int, rng: RandomSource, order_floor: int|None = None) -> BenchReport:
	if blocks < 1:
		raise ValueError('blocks must be at least 1')
	km = keygen(n, p, rng=rng, order_floor=order_floor)
	message = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(blocks)]
	measurements = measure_message(km, message)

	rows:list[BenchRow] = []
	block_checks:list[ValidationReport] = []
	sums = {'encryption': OpCounts(), 'decryption': OpCounts()}
	seen:set[Phase] = set()
	for measurement in measurements:
		for direction, phase, counts in (
			('encryption', measurement.encrypt_phase, OpCounts(**measurement.encryption)),
			('decryption', measurement.decrypt_phase, OpCounts(**measurement.decryption)),
		):
			sums[direction] = sums[direction] + counts
			block_checks.append(validate_counters(counts, per_block_cost(Scheme.proposed, phase), n))
			if phase not in seen:
				seen.add(phase)
				rows.append(_row('measured', Scheme.proposed, phase, n, counts, p))

	expected = total_cost(blocks * n, n)
	totals = [
		TotalsCheck(direction=direction, expected=want, measured=sums[direction].as_dict(), matches=want == sums[direction].as_dict())
		for direction, want in (('encryption', expected.encryption), ('decryption', expected.decryption))
	]

	key = ClassicalHillKey(p=p, K=sample_nonsingular(km.gf, n, rng))
	hill_encryption, hill_decryption = measure_classical_hill(key, message[0])
	classical_hill = [
		validate_counters(hill_encryption, per_block_cost(Scheme.classical_hill, Phase.encrypt), n),
		validate_counters(hill_decryption, per_block_cost(Scheme.classical_hill, Phase.decrypt), n),
	]
	rows.append(_row('measured', Scheme.classical_hill, Phase.encrypt, n, hill_encryption, p))
	rows.append(_row('measured', Scheme.classical_hill, Phase.decrypt, n, hill_decryption, p))

	for scheme, phase in REPORT_ROWS:
		rows.append(_row('formula', scheme, phase, n, per_block_cost(scheme, phase).evaluate(n), p))

	report = BenchReport(p=p, n=n, blocks=blocks, rows=rows, block_checks=block_checks, totals=totals, classical_hill=classical_hill)
	if report.mismatches:
		log.warn('cost model mismatches: ' + ', '.join(report.mismatches))
	return report
