"""
Input classes are used to read files from disk into Quadrangulation
and MoveLog structures.  Input classes will all support the use of a
filename in the initializer, which if present will call the read()
method to read the file data in.  read returns self.data for
convenience, but this value can be ignored and used independently.

	>>> q = QuadInput('surface.quad').data
	>>> log = MoveLogInput('surface.moves', initial=q).data

The shipped fixtures are found by name:

	>>> q = load_fixture('h2')

"""

import logging
import os

from .quadrangulation import Quadrangulation, deserialize
from .moves import MoveLog

log = logging.getLogger(__name__)

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')

##############################################################################
# Utility classes/functions

class _StaircaseInput(object):
	def __init__(self, filename=None):
		"""
		Create a new input reader.

		If filename is given, immediately call read on it.
		"""
		self._data = None
		self.filename = None

		if filename:
			self.read(filename)

	def read(self, filename):
		"""Read in and parse the source file."""
		with open(filename, 'r', encoding='utf-8') as f:
			text = f.read()
		self.filename = filename
		self._data = self.parse(text)
		log.debug("read %s", filename)
		return self._data

	def parse(self, text:str):
		raise NotImplementedError

	@property
	def data(self):
		"""The object read from this file."""
		return self._data

##############################################################################
# Publicly available input classes.

class QuadInput(_StaircaseInput):
	"""
	A ``.quad`` document.

	With check=False a file that parses but does not validate is still
	read, so that its violations can be reported.
	"""
	def __init__(self, filename=None, check=True):
		self._check = check
		super(QuadInput, self).__init__(filename)

	def parse(self, text):
		return deserialize(text, check=self._check)

class MoveLogInput(_StaircaseInput):
	"""A move log, replayed against the quadrangulation it started from."""
	def __init__(self, filename=None, initial:Quadrangulation=None):
		if filename and initial is None:
			raise ValueError("a move log needs its initial quadrangulation")
		self.initial = initial
		super(MoveLogInput, self).__init__(filename)

	def parse(self, text):
		return MoveLog.deserialize(text, self.initial)

def fixture_path(name:str) -> str:
	"""Path of a shipped fixture; the .quad suffix is optional."""
	if not name.endswith('.quad'):
		name += '.quad'
	return os.path.join(FIXTURE_DIR, name)

def fixture_names():
	return sorted(n[:-5] for n in os.listdir(FIXTURE_DIR) if n.endswith('.quad'))

def load_fixture(name:str, check:bool=True) -> Quadrangulation:
	"""Read a shipped fixture by name."""
	return QuadInput(fixture_path(name), check=check).data
