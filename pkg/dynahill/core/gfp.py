from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from types import TracebackType
from typing import Sequence

from sympy import isprime

from dynahill.core.common import FieldMismatchError

# products of two residues must fit in 128-bit intermediates
MAX_PRIME_BITS:int = 61



class Prime(int):
	""" An integer validated prime at construction (deterministic below 2**64). """

	def __new__(cls, value: int) -> Prime:
		if isinstance(value, Prime):
			return value
		if isinstance(value, bool) or not isinstance(value, int):
			raise TypeError('prime must be an integer')
		if value < 2 or not isprime(value):
			raise ValueError(f'{value} is not prime')
		if value.bit_length() > MAX_PRIME_BITS:
			raise ValueError(f'p must be below 2**{MAX_PRIME_BITS}')
		return super().__new__(cls, value)

	@property
	def bit_length_of_max_residue(self) -> int:
		""" Bits in p-1 (the worst-case operand size). """
		return (int(self) - 1).bit_length()



@dataclass(slots=True)
class OpCounts:
	""" Tallies of field additions, multiplications and inversions for one computation.

	Usable as a session: `with OpCounts() as counts: ...`. One owner at a time. """
	adds: int = 0
	muls: int = 0
	invs: int = 0

	def __enter__(self) -> OpCounts:
		return self

	def __exit__(self, exception_type: type[BaseException]|None, exception_value: BaseException|None, traceback: TracebackType|None) -> None:
		return None

	def copy(self) -> OpCounts:
		return OpCounts(self.adds, self.muls, self.invs)

	def delta(self, earlier: OpCounts) -> OpCounts:
		""" Counts accumulated since `earlier` was copied from this session. """
		return OpCounts(self.adds - earlier.adds, self.muls - earlier.muls, self.invs - earlier.invs)

	def __add__(self, other: OpCounts) -> OpCounts:
		return OpCounts(self.adds + other.adds, self.muls + other.muls, self.invs + other.invs)

	def as_dict(self) -> dict[str, int]:
		return {'adds': self.adds, 'muls': self.muls, 'invs': self.invs}



@dataclass(frozen=True, slots=True)
class PrimeField:
	""" The field F_p. Kernels take and return plain residues and tally into an
	optional OpCounts session. Subtraction is tallied as an addition. """
	p: Prime

	def element(self, value: int) -> FieldElement:
		return FieldElement(value % self.p, self)

	def contains(self, value: int) -> bool:
		return 0 <= value < self.p

	def add(self, a: int, b: int, counts: OpCounts|None = None) -> int:
		if counts is not None:
			counts.adds += 1
		return (a + b) % self.p

	def sub(self, a: int, b: int, counts: OpCounts|None = None) -> int:
		if counts is not None:
			counts.adds += 1
		return (a - b) % self.p

	def mul(self, a: int, b: int, counts: OpCounts|None = None) -> int:
		if counts is not None:
			counts.muls += 1
		return (a * b) % self.p

	def inv(self, a: int, counts: OpCounts|None = None) -> int:
		""" Multiplicative inverse; one inversion regardless of the internal steps. """
		if a % self.p == 0:
			raise ZeroDivisionError('zero has no inverse in F_p')
		if counts is not None:
			counts.invs += 1
		# extended Euclid under the hood
		return pow(a, -1, self.p)

	def dot(self, u: Sequence[int], v: Sequence[int], counts: OpCounts|None = None) -> int:
		""" Sum of products: len muls and len-1 adds. """
		if counts is not None:
			counts.muls += len(u)
			counts.adds += len(u) - 1
		return sum(x * y for x, y in zip(u, v)) % self.p

	def vec_add(self, u: Sequence[int], v: Sequence[int], counts: OpCounts|None = None) -> tuple[int, ...]:
		if counts is not None:
			counts.adds += len(u)
		p = self.p
		return tuple((x + y) % p for x, y in zip(u, v))

	def vec_sub(self, u: Sequence[int], v: Sequence[int], counts: OpCounts|None = None) -> tuple[int, ...]:
		if counts is not None:
			counts.adds += len(u)
		p = self.p
		return tuple((x - y) % p for x, y in zip(u, v))

	def scale(self, row: Sequence[int], factor: int, counts: OpCounts|None = None) -> list[int]:
		if counts is not None:
			counts.muls += len(row)
		p = self.p
		return [(x * factor) % p for x in row]

	def sub_scaled(self, row: Sequence[int], pivot_row: Sequence[int], factor: int, counts: OpCounts|None = None) -> list[int]:
		""" row - factor*pivot_row: one mul and one add per entry. """
		if counts is not None:
			counts.muls += len(row)
			counts.adds += len(row)
		p = self.p
		return [(x - factor * y) % p for x, y in zip(row, pivot_row)]


@lru_cache(maxsize=64)
def get_field(p: int) -> PrimeField:
	""" Shared field context for p; validates primality once per p. """
	return PrimeField(Prime(p))



@dataclass(frozen=True, slots=True)
class FieldElement:
	residue: int
	field: PrimeField = dc_field(compare=False, repr=False)

	def __post_init__(self):
		if not self.field.contains(self.residue):
			raise ValueError(f'residue {self.residue} outside [0, {self.field.p})')

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, FieldElement):
			return NotImplemented
		return self.residue == other.residue and self.field.p == other.field.p

	def __hash__(self) -> int:
		return hash((self.residue, int(self.field.p)))

	def __int__(self) -> int:
		return self.residue


def _shared_field(a: FieldElement, b: FieldElement) -> PrimeField:
	if a.field.p != b.field.p:
		raise FieldMismatchError(f'operands from F_{a.field.p} and F_{b.field.p}')
	return a.field

def fadd(a: FieldElement, b: FieldElement, counts: OpCounts|None = None) -> FieldElement:
	gf = _shared_field(a, b)
	return FieldElement(gf.add(a.residue, b.residue, counts), gf)

def fsub(a: FieldElement, b: FieldElement, counts: OpCounts|None = None) -> FieldElement:
	gf = _shared_field(a, b)
	return FieldElement(gf.sub(a.residue, b.residue, counts), gf)

def fmul(a: FieldElement, b: FieldElement, counts: OpCounts|None = None) -> FieldElement:
	gf = _shared_field(a, b)
	return FieldElement(gf.mul(a.residue, b.residue, counts), gf)

def finv(a: FieldElement, counts: OpCounts|None = None) -> FieldElement:
	return FieldElement(a.field.inv(a.residue, counts), a.field)
