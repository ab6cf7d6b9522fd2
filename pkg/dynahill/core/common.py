import os
from pydantic import ValidationError

SETTINGS:dict[str, int|str|None] = {
	"order_floor": int(os.environ['DYNAHILL_ORDER_FLOOR']) if 'DYNAHILL_ORDER_FLOOR' in os.environ else 2**16,
	"order_cap": int(os.environ['DYNAHILL_ORDER_CAP']) if 'DYNAHILL_ORDER_CAP' in os.environ else 2**20,
	"sample_retries": int(os.environ['DYNAHILL_SAMPLE_RETRIES']) if 'DYNAHILL_SAMPLE_RETRIES' in os.environ else 64,
	"keygen_retries": int(os.environ['DYNAHILL_KEYGEN_RETRIES']) if 'DYNAHILL_KEYGEN_RETRIES' in os.environ else 256,
	"enumeration_limit": int(os.environ['DYNAHILL_ENUMERATION_LIMIT']) if 'DYNAHILL_ENUMERATION_LIMIT' in os.environ else 10**7,
	"log_dir": os.environ['DYNAHILL_LOG_DIR'] if 'DYNAHILL_LOG_DIR' in os.environ else None,
	"log_level": os.environ['DYNAHILL_LOG_LEVEL'] if 'DYNAHILL_LOG_LEVEL' in os.environ else 'WARNING'
}

def setting(name:str) -> int:
	""" Integer-valued setting lookup, raises KeyError for unknown names. """
	value = SETTINGS[name]
	if not isinstance(value, int):
		raise TypeError(f'setting {name} is not an integer')
	return value



# Errors

class FieldMismatchError(ValueError):
	""" Operands belong to different prime fields. """

class DimensionMismatchError(ValueError):
	""" Vector or matrix orders do not agree. """

class SingularMatrixError(ValueError):
	""" Matrix has no inverse over F_p. """

class SamplingError(RuntimeError):
	""" Rejection sampling gave up after its retry cap. """

class CorruptDataError(ValueError):
	""" Serialized data (key file, container, symbols) is malformed. """

class TruncatedDataError(ValueError):
	""" Fewer symbols than the declared plaintext length requires. """

def describe_error(error: BaseException) -> str:
	""" One-line message for an exception, unwrapping pydantic validation errors. """
	if isinstance(error, ValidationError) and error.errors():
		first = error.errors()[0]
		location = '.'.join(str(part) for part in first['loc'])
		message = str(first['msg']).removeprefix('Value error, ')
		return f'{location}: {message}' if location else message
	return str(error).splitlines()[0] if str(error) else type(error).__name__
