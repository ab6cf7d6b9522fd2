import pytest
from pydantic import ValidationError

from dynahill.core.common import CorruptDataError
from dynahill.core.keyfile import dump_key, parse_key, read_key, write_key
from dynahill.core.keysched import keygen, seeded_rng

GOLDEN_KEY_FILE = """DYNAHILL-KEY/1
p=29
n=3
enc=digits
M:
1 0 1
1 3 28
0 1 1
A1:
1 2 0
3 1 0
1 28 4
I1:
2 1 5
"""


def test_dump_golden_key(golden_key):
	assert dump_key(golden_key) == GOLDEN_KEY_FILE

def test_parse_golden_key(golden_key):
	assert parse_key(GOLDEN_KEY_FILE) == golden_key

def test_write_and_read(tmp_path):
	km = keygen(4, 257, rng=seeded_rng(3), order_floor=1)
	path = tmp_path / 'key.txt'
	write_key(km, path)
	assert path.read_text().startswith('DYNAHILL-KEY/1\np=257\nn=4\nenc=direct\n')
	assert read_key(path) == km

@pytest.mark.parametrize('old, new', [
	('DYNAHILL-KEY/1', 'DYNAHILL-KEY/2'),
	('p=29', 'p=twenty-nine'),
	('n=3', 'size=3'),
	('enc=digits', 'enc=base64'),
	('M:\n', 'T:\n'),
	('1 3 28', '1 3'),
	('1 3 28', '1 3 -28'),
	('2 1 5\n', '2 1 5\nextra\n'),
	('I1:\n2 1 5\n', 'I1:\n'),
])
def test_layout_errors(old, new):
	with pytest.raises(CorruptDataError):
		parse_key(GOLDEN_KEY_FILE.replace(old, new, 1))

@pytest.mark.parametrize('old, new', [
	('p=29', 'p=27'),
	('2 1 5', '0 0 0'),
	('1 3 28', '1 3 29'),
	('0 1 1\nA1', '2 3 0\nA1'),
	('enc=digits', 'enc=direct'),
])
def test_invariant_errors(old, new):
	with pytest.raises(ValidationError):
		parse_key(GOLDEN_KEY_FILE.replace(old, new, 1))
