import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from pydantic import BaseModel

from dynahill.core.cipher import decrypt_message, encrypt_message
from dynahill.core.codec import CiphertextContainer, EncodingMode, decode, encode
from dynahill.core.common import describe_error, setting
from dynahill.core.cryptanalysis import keyspace_size
from dynahill.core.keyfile import read_key, write_key
from dynahill.core.keysched import default_rng, estimate_order, keygen, seeded_rng
from dynahill.core.matvec import RandomSource
from dynahill.logger import Logger
from dynahill.tasks.attack_demo import run_attack_demo
from dynahill.tasks.bench import run_bench
from dynahill.tasks.golden import verify_golden

log = Logger()

EXIT_OK:int = 0
EXIT_ERROR:int = 1
EXIT_MISMATCH:int = 2


class CommandResult:
	def __init__(self, detail: str, data: dict = {}, lines: list[str]|None = None, exit_code: int = EXIT_OK):
		self.detail = detail
		self.data = data
		self.lines = lines or []
		self.exit_code = exit_code


def _rng(seed: int|None) -> RandomSource:
	return default_rng() if seed is None else seeded_rng(seed)

def _dump(value):
	if isinstance(value, BaseModel):
		return value.model_dump(mode='json')
	return value

def _table(header: list[str], rows: list[list[object]]) -> list[str]:
	cells = [header] + [[str(cell) for cell in row] for row in rows]
	widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
	return ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]



# Keys

def cmd_keygen(args: argparse.Namespace) -> CommandResult:
	""" Generate key material and write it as a key file. """
	encoding = EncodingMode(args.encoding) if args.encoding else None
	km = keygen(args.n, args.p, rng=_rng(args.seed), order_floor=args.order_floor, encoding=encoding)
	write_key(km, args.out)
	return CommandResult(f'Wrote GL({km.n}, {km.p}) key to {args.out}.', {'p': km.p, 'n': km.n, 'encoding': km.encoding.value, 'path': str(args.out)})

def cmd_order(args: argparse.Namespace) -> CommandResult:
	""" Order of the key's transformation, up to a cap. """
	km = read_key(args.key)
	cap = setting('order_cap') if args.cap is None else args.cap
	result = estimate_order(km.gf, km.M, cap)
	return CommandResult(str(result), {'result': str(result), 'cap': cap})



# Files

def cmd_encrypt(args: argparse.Namespace) -> CommandResult:
	km = read_key(args.key)
	data = Path(args.input).read_bytes()
	blocks = encrypt_message(km, encode(data, km.p, km.n, km.encoding))
	container = CiphertextContainer(p=km.p, n=km.n, mode=km.encoding, original_byte_length=len(data), blocks=tuple(blocks))
	Path(args.output).write_bytes(container.serialize())
	log.info(f'encrypted {len(data)} bytes into {len(blocks)} blocks')
	return CommandResult(f'Encrypted {len(data)} bytes into {len(blocks)} blocks.', {'bytes': len(data), 'blocks': len(blocks), 'path': str(args.output)})

def cmd_decrypt(args: argparse.Namespace) -> CommandResult:
	km = read_key(args.key)
	container = CiphertextContainer.parse(Path(args.input).read_bytes())
	for name, key_value, container_value in (('p', km.p, container.p), ('n', km.n, container.n), ('encoding', km.encoding, container.mode)):
		if key_value != container_value:
			raise ValueError(f'key and container disagree on {name}')

	blocks = decrypt_message(km, container.blocks)
	data = decode(blocks, container.p, container.n, container.mode, container.original_byte_length)
	Path(args.output).write_bytes(data)
	return CommandResult(f'Decrypted {len(blocks)} blocks into {len(data)} bytes.', {'bytes': len(data), 'blocks': len(blocks), 'path': str(args.output)})



# Analysis

def cmd_verify_example(args: argparse.Namespace) -> CommandResult:
	report = verify_golden()
	return CommandResult(report.summary(), _dump(report), exit_code=EXIT_OK if report.passed else EXIT_MISMATCH)

def cmd_keyspace(args: argparse.Namespace) -> CommandResult:
	size = keyspace_size(args.n, args.p)
	lines = [
		f'N = {size.N}',
		f'L = {size.L}',
		f'L with known initial vector = {size.known_iv}',
		f'log2(N) = {size.log2_N:.2f}',
		f'log2(L) = {size.log2_L:.2f}',
	]
	return CommandResult(f'Keyspace for GL({size.n}, {size.p}).', _dump(size), lines)

def cmd_attack_demo(args: argparse.Namespace) -> CommandResult:
	report = run_attack_demo(args.p, args.n, args.trials, _rng(args.seed))
	classical = report.classical
	variant = report.variant
	lines = [
		f'classical Hill KPA: {classical.recovered}/{classical.trials} keys recovered ({classical.success_rate:.0%}), {classical.singular_draws} singular plaintext draws redrawn',
		f'variant, one pair: {variant.equations} equations, {variant.unknowns} unknowns',
		f'variant solution count: {variant.solution_count}',
	]
	if variant.notice:
		lines.append(variant.notice)
	else:
		lines.append(f'enumerated: {variant.enumerated} (invertible only: {variant.enumerated_invertible})')
	return CommandResult(f'Attack demo over GL({report.n}, {report.p}).', _dump(report), lines)

def cmd_bench(args: argparse.Namespace) -> CommandResult:
	report = run_bench(args.p, args.n, args.blocks, _rng(args.seed), order_floor=args.order_floor)
	lines = _table(
		['source', 'scheme', 'phase', 'n', 'muls', 'adds', 'invs', 'bitops'],
		[[row.source, row.scheme.value, row.phase.value, row.n, row.muls, row.adds, row.invs, row.bitops] for row in report.rows],
	)
	for total in report.totals:
		lines.append(f"{total.direction} totals over {report.blocks} blocks: muls {total.measured['muls']}, adds {total.measured['adds']}, invs {total.measured['invs']} (formula: muls {total.expected['muls']}, adds {total.expected['adds']}, invs {total.expected['invs']})")
	for check in report.block_checks + report.classical_hill:
		for category in check.checks:
			if not category.matches:
				lines.append(f'MISMATCH {check.scheme.value} {check.phase.value} {category.category}: measured {category.measured}, formula {category.expected}')
	lines = list(dict.fromkeys(lines))

	exit_code = EXIT_OK if report.proposed_matches else EXIT_MISMATCH
	detail = f'Bench over GL({report.n}, {report.p}), {report.blocks} blocks: ' + ('cost model matches.' if report.proposed_matches else 'cost model MISMATCH.')
	data = _dump(report)
	data['mismatches'] = report.mismatches
	return CommandResult(detail, data, lines, exit_code)



# Parser

def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog='dynahill', description='Hill cipher over F_p with a dynamic key per block.')
	parser.add_argument('--json', action='store_true', help='print the result as JSON')
	subparsers = parser.add_subparsers(dest='command', required=True)

	keygen_parser = subparsers.add_parser('keygen', help='generate a key file')
	keygen_parser.add_argument('--p', type=int, required=True, help='prime modulus')
	keygen_parser.add_argument('--n', type=int, required=True, help='block size')
	keygen_parser.add_argument('--order-floor', type=int, default=None, help=f"minimum order of the transformation (default: {setting('order_floor')})")
	keygen_parser.add_argument('--seed', type=int, default=None, help='seed for a reproducible, non-secret key')
	keygen_parser.add_argument('--encoding', choices=[mode.value for mode in EncodingMode], default=None, help='byte encoding (default: direct for p >= 257, else digits)')
	keygen_parser.add_argument('--out', type=Path, required=True, help='key file to write')
	keygen_parser.set_defaults(handler=cmd_keygen)

	for name, handler, help_text in (('encrypt', cmd_encrypt, 'encrypt a file into a DHC1 container'), ('decrypt', cmd_decrypt, 'decrypt a DHC1 container')):
		file_parser = subparsers.add_parser(name, help=help_text)
		file_parser.add_argument('--key', type=Path, required=True, help='key file')
		file_parser.add_argument('--in', dest='input', type=Path, required=True, help='input file')
		file_parser.add_argument('--out', dest='output', type=Path, required=True, help='output file')
		file_parser.set_defaults(handler=handler)

	attack_parser = subparsers.add_parser('attack-demo', help='known-plaintext attack contrast')
	attack_parser.add_argument('--p', type=int, required=True)
	attack_parser.add_argument('--n', type=int, required=True)
	attack_parser.add_argument('--trials', type=int, default=100)
	attack_parser.add_argument('--seed', type=int, default=None)
	attack_parser.set_defaults(handler=cmd_attack_demo)

	keyspace_parser = subparsers.add_parser('keyspace', help='exact brute-force keyspace')
	keyspace_parser.add_argument('--p', type=int, required=True)
	keyspace_parser.add_argument('--n', type=int, required=True)
	keyspace_parser.set_defaults(handler=cmd_keyspace)

	order_parser = subparsers.add_parser('order', help="order of a key's transformation")
	order_parser.add_argument('--key', type=Path, required=True)
	order_parser.add_argument('--cap', type=int, default=None, help=f"search cap (default: {setting('order_cap')})")
	order_parser.set_defaults(handler=cmd_order)

	bench_parser = subparsers.add_parser('bench', help='measured operation counts against the cost model')
	bench_parser.add_argument('--p', type=int, required=True)
	bench_parser.add_argument('--n', type=int, required=True)
	bench_parser.add_argument('--blocks', type=int, default=6)
	bench_parser.add_argument('--seed', type=int, default=None)
	bench_parser.add_argument('--order-floor', type=int, default=1, help='minimum order of the transformation; counts do not depend on it (default: 1)')
	bench_parser.set_defaults(handler=cmd_bench)

	verify_parser = subparsers.add_parser('verify-example', help='check the embedded worked example')
	verify_parser.set_defaults(handler=cmd_verify_example)

	return parser


def main(argv: list[str]|None = None) -> int:
	# keyspace sizes run to tens of thousands of digits
	sys.set_int_max_str_digits(0)
	args = build_parser().parse_args(argv)
	handler:Callable[[argparse.Namespace], CommandResult] = args.handler

	try:
		result = handler(args)
	except (ValueError, ArithmeticError, RuntimeError, OSError) as e:
		log.debug(f'{args.command} failed: {e!r}')
		print(f'error: {describe_error(e)}', file=sys.stderr)
		return EXIT_ERROR

	if args.json:
		print(json.dumps({'detail': result.detail, 'data': result.data}))
	else:
		print(result.detail)
		for line in result.lines:
			print(line)
	return result.exit_code
