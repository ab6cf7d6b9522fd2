import logging
from pathlib import Path
from dynahill.core.common import SETTINGS

class Logger:
	def __init__(self, log_directory:Path|None = None, log_filename:str = 'dynahill.log'):
		if log_directory is None and SETTINGS['log_dir'] is not None:
			log_directory = Path(str(SETTINGS['log_dir']))

		# Configure the logger
		self.logger = logging.getLogger('DynaHillLogger')
		self.logger.setLevel(logging.DEBUG)

		# handlers are process-wide, every module builds its own Logger
		if self.logger.handlers:
			return

		formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

		# console goes to stderr so reports on stdout stay clean
		console_handler = logging.StreamHandler()
		console_handler.setLevel(str(SETTINGS['log_level']).upper())
		console_handler.setFormatter(formatter)
		self.logger.addHandler(console_handler)

		if log_directory is not None:
			log_directory.mkdir(parents=True, exist_ok=True)
			file_handler = logging.FileHandler(log_directory / log_filename)
			file_handler.setLevel(logging.DEBUG)
			file_handler.setFormatter(formatter)
			self.logger.addHandler(file_handler)

	def info(self, message):
		self.logger.info(message)

	def debug(self, message):
		self.logger.debug(message)

	def warn(self, message):
		self.logger.warning(message)

	def error(self, message):
		self.logger.error(message)
