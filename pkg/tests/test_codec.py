import pytest
from hypothesis import given, settings, strategies as st

from dynahill.core.codec import (
	CONTAINER_HEADER, CiphertextContainer, EncodingMode, decode, encode, symbol_width, symbols_per_byte,
)
from dynahill.core.common import CorruptDataError, TruncatedDataError


def test_symbols_per_byte():
	assert symbols_per_byte(29, EncodingMode.digits) == 2
	assert symbols_per_byte(2, EncodingMode.digits) == 8
	assert symbols_per_byte(3, EncodingMode.digits) == 6
	assert symbols_per_byte(257, EncodingMode.digits) == 1
	assert symbols_per_byte(257, EncodingMode.direct) == 1
	with pytest.raises(ValueError):
		symbols_per_byte(29, EncodingMode.direct)

def test_symbol_width():
	assert symbol_width(2) == 1
	assert symbol_width(29) == 1
	assert symbol_width(257) == 2
	assert symbol_width(65537) == 3

def test_default_mode():
	assert EncodingMode.default_for(29) is EncodingMode.digits
	assert EncodingMode.default_for(257) is EncodingMode.direct


def test_digits_encoding_is_big_endian():
	assert encode(b'\xff', 29, 2, EncodingMode.digits) == [(8, 23)]
	assert encode(b'\x00\x01', 29, 3, EncodingMode.digits) == [(0, 0, 0), (1, 0, 0)]

def test_direct_encoding_pads_last_block():
	assert encode(b'ab', 257, 3, EncodingMode.direct) == [(97, 98, 0)]
	assert encode(b'', 257, 3, EncodingMode.direct) == []

def test_decode_drops_padding():
	blocks = encode(b'hello', 29, 4, EncodingMode.digits)
	assert decode(blocks, 29, 4, EncodingMode.digits, 5) == b'hello'

def test_decode_errors():
	with pytest.raises(TruncatedDataError):
		decode([(1, 2)], 29, 2, EncodingMode.digits, 2)
	with pytest.raises(CorruptDataError, match='not a byte'):
		decode([(28, 28)], 29, 2, EncodingMode.digits, 1)
	with pytest.raises(CorruptDataError):
		decode([(1, 2, 3)], 29, 2, EncodingMode.digits, 1)
	with pytest.raises(CorruptDataError):
		decode([(256,)], 257, 1, EncodingMode.direct, 1)

@given(data=st.binary(max_size=256), p=st.sampled_from([2, 3, 29, 257, 65537]), n=st.integers(min_value=1, max_value=8))
@settings(max_examples=200, deadline=None)
def test_encoding_roundtrip(data, p, n):
	mode = EncodingMode.default_for(p)
	blocks = encode(data, p, n, mode)
	assert all(len(block) == n and all(0 <= x < p for x in block) for block in blocks)
	assert decode(blocks, p, n, mode, len(data)) == data


def test_container_layout():
	container = CiphertextContainer(p=29, n=2, mode=EncodingMode.digits, original_byte_length=1, blocks=((8, 23),))
	raw = container.serialize()
	assert raw[:4] == b'DHC1'
	assert len(raw) == CONTAINER_HEADER.size + 2
	assert raw[CONTAINER_HEADER.size:] == bytes([8, 23])
	assert CiphertextContainer.parse(raw) == container

def test_empty_container():
	container = CiphertextContainer(p=65537, n=3, mode=EncodingMode.direct)
	raw = container.serialize()
	assert len(raw) == CONTAINER_HEADER.size
	assert CiphertextContainer.parse(raw).blocks == ()

def test_wide_symbols_are_little_endian():
	container = CiphertextContainer(p=65537, n=1, mode=EncodingMode.direct, original_byte_length=0, blocks=((65536,),))
	assert container.serialize()[CONTAINER_HEADER.size:] == b'\x00\x00\x01'

def test_container_rejects_corruption():
	raw = CiphertextContainer(p=29, n=2, mode=EncodingMode.digits, original_byte_length=1, blocks=((8, 23),)).serialize()
	with pytest.raises(CorruptDataError):
		CiphertextContainer.parse(b'XXXX' + raw[4:])
	with pytest.raises(CorruptDataError):
		CiphertextContainer.parse(raw[:-1])
	with pytest.raises(CorruptDataError):
		CiphertextContainer.parse(raw[:10])
	with pytest.raises(CorruptDataError, match='container invalid'):
		CiphertextContainer.parse(raw[:-1] + bytes([29]))

@given(p=st.sampled_from([2, 29, 257, 65537]), n=st.integers(min_value=1, max_value=6), data=st.data())
@settings(max_examples=100, deadline=None)
def test_container_bytes_are_stable(p, n, data):
	block = st.tuples(*[st.integers(min_value=0, max_value=p - 1)] * n)
	blocks = tuple(data.draw(st.lists(block, max_size=20)))
	mode = EncodingMode.default_for(p)
	length = data.draw(st.integers(min_value=0, max_value=len(blocks) * n // symbols_per_byte(p, mode)))
	container = CiphertextContainer(p=p, n=n, mode=mode, original_byte_length=length, blocks=blocks)
	raw = container.serialize()
	assert CiphertextContainer.parse(raw).serialize() == raw
