"""
Exact scalars for every geometric predicate in the package.

A Scalar is an element a + b*sqrt(D) of the rationals (D = 0) or of a
real quadratic field Q(sqrt(D)), with a and b stored as reduced
fractions.  All comparisons are exact; nothing in the package ever
decides a sign with floating point.

	>>> from staircase.exactnum import Scalar
	>>> Scalar('1/2') + Scalar('1/3')
	Scalar('5/6')
	>>> r2 = Scalar.sqrt(2)
	>>> r2 * r2
	Scalar('2')
	>>> (r2 - 1).sign()
	1
	>>> Scalar.parse('-1+1*sqrt(2)') == r2 - 1
	True

Rational scalars (b = 0) mix freely with scalars of any one discriminant.
Two different nonzero discriminants in one operation raise
MixedDiscriminant; in practice D is a per-file constant declared by the
``D=`` field of a ``.quad`` document.

Text grammar, shared by every file format in the package::

	rational := [-]digits[/digits]
	scalar   := rational | rational ("+"|"-") rational "*sqrt(" digits ")"

format_scalar always writes the canonical form, so parse_scalar and
format_scalar are inverse to each other.

"""

import math
import re
from fractions import Fraction
from functools import lru_cache, total_ordering

import sympy

class MixedDiscriminant(Exception):
	pass

class NonSquareFreeD(ValueError):
	pass

class ScalarSyntaxError(ValueError):
	pass

@lru_cache(maxsize=None)
def check_discriminant(D:int) -> int:
	"""
	Return D if it is usable as a field discriminant.

	0 means "rational only".  Otherwise D must be a square-free integer
	greater than 1; perfect squares would make sqrt(D) rational.
	"""
	if D != int(D) or D < 0:
		raise NonSquareFreeD("discriminant must be a non-negative integer, got {0}".format(D))
	D = int(D)
	if D == 0:
		return 0
	if D == 1 or any(e > 1 for e in sympy.factorint(D).values()):
		raise NonSquareFreeD("discriminant {0} is not square-free".format(D))
	return D

_scalar_re = re.compile(r"""
	^\s*
	(-?\d+(?:/\d+)?)				# rational part
	\s*
	(?:
		([+-])\s*
		(\d+(?:/\d+)?)				# irrational coefficient
		\s*\*\s*sqrt\(\s*(\d+)\s*\)	# radicand
	)?
	\s*$
	""", re.VERBOSE)

@total_ordering
class Scalar(object):
	"""
	An immutable exact number a + b*sqrt(D).

	Args:
		a: rational part, anything Fraction accepts.
		b: coefficient of sqrt(D), default 0.
		D: square-free discriminant, required when b is nonzero.

	"""
	__slots__ = ('_a', '_b', '_D')

	def __init__(self, a=0, b=0, D:int=0):
		a = Fraction(a)
		b = Fraction(b)
		if b:
			D = check_discriminant(D)
			if D == 0:
				raise MixedDiscriminant("irrational part given without a discriminant")
		else:
			D = 0
		self._a = a
		self._b = b
		self._D = D

	@classmethod
	def _make(cls, a:Fraction, b:Fraction, D:int):
		# Fast path for results of field operations; inputs already checked.
		obj = object.__new__(cls)
		obj._a = a
		if b:
			obj._b = b
			obj._D = D
		else:
			obj._b = Fraction(0)
			obj._D = 0
		return obj

	@classmethod
	def sqrt(cls, D:int):
		"""The scalar sqrt(D)."""
		return cls(0, 1, D)

	@classmethod
	def coerce(cls, value):
		"""Turn an int, Fraction, Scalar or scalar string into a Scalar."""
		if isinstance(value, Scalar):
			return value
		if isinstance(value, str):
			return cls.parse(value)
		if isinstance(value, (int, Fraction)):
			return cls._make(Fraction(value), Fraction(0), 0)
		raise TypeError("cannot make a Scalar from {0!r}".format(value))

	@classmethod
	def parse(cls, text:str):
		"""Parse the canonical text grammar."""
		mo = _scalar_re.match(text)
		if not mo:
			raise ScalarSyntaxError("not a scalar: {0!r}".format(text))
		a, op, b, D = mo.groups()
		try:
			a = Fraction(a)
			b = Fraction(b) if b else Fraction(0)
		except ZeroDivisionError:
			raise ScalarSyntaxError("zero denominator in {0!r}".format(text))
		if op == '-':
			b = -b
		D = int(D) if D else 0
		if D:
			check_discriminant(D)
		return cls(a, b, D)

	# Parts

	@property
	def a(self) -> Fraction:
		return self._a

	@property
	def b(self) -> Fraction:
		return self._b

	@property
	def D(self) -> int:
		return self._D

	def is_rational(self) -> bool:
		return not self._b

	def conjugate(self):
		"""a - b*sqrt(D)."""
		return Scalar._make(self._a, -self._b, self._D)

	def norm(self) -> Fraction:
		"""The field norm a^2 - D*b^2, a rational."""
		return self._a * self._a - self._D * self._b * self._b

	# Arithmetic

	def _field(self, other) -> int:
		if self._D and other._D and self._D != other._D:
			raise MixedDiscriminant(
				"sqrt({0}) and sqrt({1}) in one operation".format(self._D, other._D)
			)
		return self._D or other._D

	def __add__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		D = self._field(other)
		return Scalar._make(self._a + other._a, self._b + other._b, D)

	__radd__ = __add__

	def __sub__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		D = self._field(other)
		return Scalar._make(self._a - other._a, self._b - other._b, D)

	def __rsub__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		return other - self

	def __mul__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		D = self._field(other)
		if not self._b and not other._b:
			return Scalar._make(self._a * other._a, Fraction(0), 0)
		a = self._a * other._a + D * self._b * other._b
		b = self._a * other._b + self._b * other._a
		return Scalar._make(a, b, D)

	__rmul__ = __mul__

	def __truediv__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		if not other:
			raise ZeroDivisionError("division by a zero Scalar")
		self._field(other)
		if not other._b:
			return Scalar._make(self._a / other._a, self._b / other._a, self._D)
		n = other.norm()
		num = self * other.conjugate()
		return Scalar._make(num._a / n, num._b / n, num._D)

	def __rtruediv__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		return other / self

	def __neg__(self):
		return Scalar._make(-self._a, -self._b, self._D)

	def __pos__(self):
		return self

	def __abs__(self):
		return -self if self.sign() < 0 else self

	# Order

	def sign(self) -> int:
		"""
		Exact sign of a + b*sqrt(D), in {-1, 0, 1}.

		When a and b disagree in sign the answer comes from comparing
		a^2 with b^2*D.
		"""
		sa = (self._a > 0) - (self._a < 0)
		sb = (self._b > 0) - (self._b < 0)
		if sb == 0:
			return sa
		if sa == 0 or sa == sb:
			return sb
		# Opposite signs: whichever square dominates wins.
		aa = self._a * self._a
		bb = self._b * self._b * self._D
		return sa if aa > bb else sb

	def __bool__(self):
		return bool(self._a) or bool(self._b)

	def __eq__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		if self._b or other._b:
			return self._a == other._a and self._b == other._b and self._D == other._D
		return self._a == other._a

	def __lt__(self, other):
		try:
			other = Scalar.coerce(other)
		except TypeError:
			return NotImplemented
		return (self - other).sign() < 0

	def __hash__(self):
		if not self._b:
			return hash(self._a)
		return hash((self._a, self._b, self._D))

	# Conversions

	def __float__(self):
		return float(self._a) + float(self._b) * math.sqrt(self._D)

	def approx(self, digits:int=30):
		"""A sympy Float with the requested number of significant digits."""
		expr = sympy.Rational(self._a.numerator, self._a.denominator)
		if self._b:
			expr += sympy.Rational(self._b.numerator, self._b.denominator) * sympy.sqrt(self._D)
		return sympy.N(expr, digits)

	def __str__(self):
		return format_scalar(self)

	def __repr__(self):
		return "Scalar('{0}')".format(format_scalar(self))

def sign(x) -> int:
	"""Exact sign of anything Scalar.coerce accepts."""
	return Scalar.coerce(x).sign()

def parse_scalar(text:str) -> Scalar:
	return Scalar.parse(text)

def format_scalar(x:Scalar) -> str:
	"""
	Canonical text for a scalar.

	Rationals print as ``p`` or ``p/q``; irrationals always carry the
	rational part, so sqrt(2) is written ``0+1*sqrt(2)``.
	"""
	x = Scalar.coerce(x)
	if not x.b:
		return str(x.a)
	op = '+' if x.b > 0 else '-'
	return "{0}{1}{2}*sqrt({3})".format(x.a, op, abs(x.b), x.D)

ZERO = Scalar(0)
ONE = Scalar(1)
