""" Text key file:

	DYNAHILL-KEY/1
	p=<decimal>
	n=<decimal>
	enc=<direct|digits>
	M:
	<n lines of n decimals>
	A1:
	<n lines of n decimals>
	I1:
	<one line of n decimals>
"""
from __future__ import annotations

from pathlib import Path

from pydantic import ValidationError

from dynahill.core.codec import EncodingMode
from dynahill.core.common import CorruptDataError, describe_error
from dynahill.core.keysched import KeyMaterial
from dynahill.logger import Logger

log = Logger()

KEY_MAGIC:str = 'DYNAHILL-KEY/1'


def _row(values) -> str:
	return ' '.join(str(x) for x in values)

def dump_key(km: KeyMaterial) -> str:
	lines = [KEY_MAGIC, f'p={km.p}', f'n={km.n}', f'enc={km.encoding.value}', 'M:']
	lines.extend(_row(row) for row in km.M)
	lines.append('A1:')
	lines.extend(_row(row) for row in km.A1)
	lines.append('I1:')
	lines.append(_row(km.I1))
	return '\n'.join(lines) + '\n'


class _Lines:
	""" Cursor over the key file's lines with positional error messages. """

	def __init__(self, text: str):
		self.lines = text.splitlines()
		self.position = 0

	def next(self, what: str) -> str:
		if self.position >= len(self.lines):
			raise CorruptDataError(f'key file ends before {what}')
		line = self.lines[self.position]
		self.position += 1
		return line

	def expect(self, literal: str) -> None:
		line = self.next(repr(literal))
		if line != literal:
			raise CorruptDataError(f'line {self.position}: expected {literal!r}, got {line!r}')

	def field(self, name: str) -> str:
		line = self.next(f'{name}=')
		prefix = f'{name}='
		if not line.startswith(prefix):
			raise CorruptDataError(f'line {self.position}: expected {prefix}<value>')
		return line[len(prefix):]

	def numbers(self, what: str, count: int) -> tuple[int, ...]:
		line = self.next(what)
		parts = line.split(' ')
		if len(parts) != count or not all(part.isdecimal() for part in parts):
			raise CorruptDataError(f'line {self.position}: expected {count} decimals for {what}')
		return tuple(int(part) for part in parts)


def _decimal(value: str, name: str) -> int:
	if not value.isdecimal():
		raise CorruptDataError(f'{name} must be a decimal integer')
	return int(value)

def parse_key(text: str) -> KeyMaterial:
	""" Parse and validate a key file. Layout errors raise CorruptDataError; key
	material that breaks an invariant raises pydantic's ValidationError. """
	cursor = _Lines(text)
	cursor.expect(KEY_MAGIC)
	p = _decimal(cursor.field('p'), 'p')
	n = _decimal(cursor.field('n'), 'n')
	if n < 1:
		raise CorruptDataError('n must be at least 1')
	encoding_value = cursor.field('enc')
	try:
		encoding = EncodingMode(encoding_value)
	except ValueError:
		raise CorruptDataError(f'unknown encoding {encoding_value!r}')

	cursor.expect('M:')
	M = tuple(cursor.numbers(f'row {r + 1} of M', n) for r in range(n))
	cursor.expect('A1:')
	A1 = tuple(cursor.numbers(f'row {r + 1} of A1', n) for r in range(n))
	cursor.expect('I1:')
	I1 = cursor.numbers('I1', n)
	if any(line.strip() for line in cursor.lines[cursor.position:]):
		raise CorruptDataError(f'unexpected content after line {cursor.position}')

	try:
		return KeyMaterial(p=p, n=n, M=M, A1=A1, I1=I1, encoding=encoding)
	except ValidationError as e:
		log.debug(f'key file rejected: {describe_error(e)}')
		raise

def write_key(km: KeyMaterial, path: str|Path) -> None:
	Path(path).write_text(dump_key(km), encoding='ascii')
	log.info(f'wrote GL({km.n}, {km.p}) key to {path}')

def read_key(path: str|Path) -> KeyMaterial:
	return parse_key(Path(path).read_text(encoding='ascii'))
