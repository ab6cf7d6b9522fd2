import struct
from enum import Enum
from typing import Sequence
from typing_extensions import Self
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from dynahill.core.common import CorruptDataError, TruncatedDataError, describe_error
from dynahill.core.gfp import Prime
from dynahill.logger import Logger

log = Logger()

CONTAINER_MAGIC:bytes = b'DHC1'
# magic, p, n, mode, original byte length, block count
CONTAINER_HEADER = struct.Struct('<4sQIBQQ')


class EncodingMode(Enum):
	direct = 'direct'
	digits = 'digits'

	@property
	def code(self) -> int:
		return 0 if self is EncodingMode.direct else 1

	@classmethod
	def from_code(cls, code: int) -> 'EncodingMode':
		if code == 0:
			return cls.direct
		if code == 1:
			return cls.digits
		raise CorruptDataError(f'unknown encoding mode byte {code}')

	@classmethod
	def default_for(cls, p: int) -> 'EncodingMode':
		return cls.direct if p >= 257 else cls.digits


def check_mode(p: int, mode: EncodingMode) -> None:
	if mode is EncodingMode.direct and p < 257:
		raise ValueError(f'direct encoding needs p >= 257, got {p}')

def symbols_per_byte(p: int, mode: EncodingMode) -> int:
	""" 1 for direct, else the least d with p**d >= 256 (= ceil(8 / log2 p)). """
	check_mode(p, mode)
	if mode is EncodingMode.direct:
		return 1
	d = 1
	while p ** d < 256:
		d += 1
	return d

def symbol_width(p: int) -> int:
	""" Bytes per serialized symbol: ceil(ceil(log2 p) / 8). """
	return max(1, ((p - 1).bit_length() + 7) // 8)



# Byte stream <-> blocks

def encode(data: bytes, p: int, n: int, mode: EncodingMode) -> list[tuple[int, ...]]:
	""" Bytes to length-n blocks over F_p; the last block is zero padded. """
	if n < 1:
		raise ValueError('n must be at least 1')
	d = symbols_per_byte(p, mode)
	symbols:list[int] = []
	for byte in data:
		if d == 1:
			symbols.append(byte)
			continue
		digits = [0] * d
		for position in range(d - 1, -1, -1):
			byte, digits[position] = divmod(byte, p)
		symbols.extend(digits)

	if len(symbols) % n:
		symbols.extend([0] * (n - len(symbols) % n))
	return [tuple(symbols[i:i + n]) for i in range(0, len(symbols), n)]

def decode(blocks: Sequence[Sequence[int]], p: int, n: int, mode: EncodingMode, original_byte_length: int) -> bytes:
	""" Inverse of encode; padding beyond original_byte_length is discarded. """
	d = symbols_per_byte(p, mode)
	symbols:list[int] = []
	for block in blocks:
		if len(block) != n:
			raise CorruptDataError(f'block of length {len(block)}, expected {n}')
		symbols.extend(block)

	needed:int = original_byte_length * d
	if len(symbols) < needed:
		raise TruncatedDataError(f'{len(symbols)} symbols cannot hold {original_byte_length} bytes')

	output = bytearray()
	for start in range(0, needed, d):
		value = 0
		for digit in symbols[start:start + d]:
			if not 0 <= digit < p:
				raise CorruptDataError(f'symbol {digit} outside [0, {p})')
			value = value * p + digit
		if value >= 256:
			raise CorruptDataError(f'symbols recompose to {value}, which is not a byte')
		output.append(value)
	return bytes(output)



# Ciphertext container

class CiphertextContainer(BaseModel):
	model_config = ConfigDict(frozen=True)

	p: int
	n: int
	mode: EncodingMode
	original_byte_length: int = 0
	blocks: tuple[tuple[int, ...], ...] = ()

	@field_validator('p')
	@classmethod
	def validate_p(cls, value: int) -> int:
		return int(Prime(value))

	@field_validator('n')
	@classmethod
	def validate_n(cls, value: int) -> int:
		if value < 1 or value >= 2**32:
			raise ValueError('n must be between 1 and 2**32 - 1')
		return value

	@field_validator('original_byte_length')
	@classmethod
	def validate_length(cls, value: int) -> int:
		if value < 0 or value >= 2**64:
			raise ValueError('original_byte_length must fit in 64 bits')
		return value

	@model_validator(mode='after')
	def validate_blocks(self) -> Self:
		check_mode(self.p, self.mode)
		for block in self.blocks:
			if len(block) != self.n:
				raise ValueError(f'block of length {len(block)}, expected {self.n}')
			for symbol in block:
				if not 0 <= symbol < self.p:
					raise ValueError(f'symbol {symbol} outside [0, {self.p})')
		if len(self.blocks) * self.n < self.original_byte_length * symbols_per_byte(self.p, self.mode):
			raise ValueError('not enough symbols for original_byte_length')
		return self

	def serialize(self) -> bytes:
		width = symbol_width(self.p)
		header = CONTAINER_HEADER.pack(CONTAINER_MAGIC, self.p, self.n, self.mode.code, self.original_byte_length, len(self.blocks))
		body = b''.join(symbol.to_bytes(width, 'little') for block in self.blocks for symbol in block)
		return header + body

	@classmethod
	def parse(cls, data: bytes) -> 'CiphertextContainer':
		if len(data) < CONTAINER_HEADER.size:
			raise CorruptDataError('container shorter than its header')
		magic, p, n, mode_code, original_byte_length, block_count = CONTAINER_HEADER.unpack_from(data)
		if magic != CONTAINER_MAGIC:
			log.debug(f'rejected container with magic {magic!r}')
			raise CorruptDataError('not a DHC1 container')
		mode = EncodingMode.from_code(mode_code)
		try:
			p = Prime(p)
		except ValueError as e:
			raise CorruptDataError(f'container modulus invalid: {e}')
		if n < 1:
			raise CorruptDataError('container block size is zero')

		width = symbol_width(p)
		body = data[CONTAINER_HEADER.size:]
		if len(body) != block_count * n * width:
			raise CorruptDataError(f'container body is {len(body)} bytes, header declares {block_count * n * width}')

		symbols = [int.from_bytes(body[i:i + width], 'little') for i in range(0, len(body), width)]
		blocks = tuple(tuple(symbols[i:i + n]) for i in range(0, len(symbols), n))
		try:
			return cls(p=int(p), n=n, mode=mode, original_byte_length=original_byte_length, blocks=blocks)
		except ValueError as e:
			log.debug(f'container failed validation: {e}')
			raise CorruptDataError(f'container invalid: {describe_error(e)}')
