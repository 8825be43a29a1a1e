"""
Quadrangulations of translation surfaces.

A Quadrangulation is a combinatorial datum plus one wedge per
quadrilateral.  Wedge i holds the two sides leaving the bottom vertex of
quadrilateral q_i: the left side (x < 0, y > 0) and the right side
(x > 0, y > 0).  The top sides of q_i are the right side of wedge
perm_l(i) and the left side of wedge perm_r(i), which gives the
train-track relations

	left(i) + right(perm_l(i)) == right(i) + left(perm_r(i))

whose common value is the diagonal of q_i.

Quadrangulation values are plain records and are not checked when
built; validate() reports every violated constraint, and deserialize()
refuses input that does not validate unless told otherwise.

The ``.quad`` text format::

	quadfmt 1
	# comments start with a hash
	name=h2; D=0; k=3
	perm_l=[2,3,1]; perm_r=[1,3,2]
	wedge=[[-1,1],[3/2,1]]
	wedge=[[-3/2,2],[3/2,1]]
	wedge=[[-1,2],[2,1]]
	certified=free text to the end of the line

Items are ``key=value``, several to a line separated by ``;``.  There is
one ``wedge`` item per quadrilateral, in index order, and each
coordinate uses the Scalar grammar of the exactnum module with the
declared discriminant D.

"""

import enum
import logging
import re
from dataclasses import dataclass, field, replace

from .exactnum import Scalar, ScalarSyntaxError, ZERO, check_discriminant
from .combinatorics import CombDatum, Perm, Side, InvalidPerm

log = logging.getLogger(__name__)

class QuadSyntaxError(ValueError):
	pass

class ValidationFailed(Exception):
	"""Raised with the list of Violation records that caused it."""
	def __init__(self, violations, name=None):
		self.violations = list(violations)
		head = "invalid quadrangulation" + (" {0}".format(name) if name else "")
		super(ValidationFailed, self).__init__(
			head + ": " + '; '.join(str(v) for v in self.violations)
		)

##############################################################################
# Vectors and wedges

@dataclass(frozen=True)
class Vec2:
	"""A displacement vector with exact coordinates."""
	x: Scalar
	y: Scalar

	def __post_init__(self):
		object.__setattr__(self, 'x', Scalar.coerce(self.x))
		object.__setattr__(self, 'y', Scalar.coerce(self.y))

	def __add__(self, other):
		return Vec2(self.x + other.x, self.y + other.y)

	def __sub__(self, other):
		return Vec2(self.x - other.x, self.y - other.y)

	def __neg__(self):
		return Vec2(-self.x, -self.y)

	def __mul__(self, t):
		return Vec2(self.x * t, self.y * t)

	__rmul__ = __mul__

	def cross(self, other) -> Scalar:
		"""The determinant x*other.y - y*other.x."""
		return self.x * other.y - self.y * other.x

	def dot(self, other) -> Scalar:
		return self.x * other.x + self.y * other.y

	def rot90(self):
		"""Counterclockwise quarter turn, (x, y) -> (-y, x)."""
		return Vec2(-self.y, self.x)

	def rot270(self):
		"""Clockwise quarter turn, (x, y) -> (y, -x)."""
		return Vec2(self.y, -self.x)

	def is_zero(self) -> bool:
		return not self.x and not self.y

	def __str__(self):
		return '[{0},{1}]'.format(self.x, self.y)

	def __repr__(self):
		return 'Vec2({0!r}, {1!r})'.format(self.x, self.y)

@dataclass(frozen=True)
class Wedge:
	left: Vec2
	right: Vec2

	def side(self, side:Side) -> Vec2:
		return self.left if side is Side.LEFT else self.right

	def __str__(self):
		return '[{0},{1}]'.format(self.left, self.right)

class Slant(enum.Enum):
	LEFT = 'left-slanted'
	RIGHT = 'right-slanted'
	VERTICAL = 'vertical diagonal'

@dataclass(frozen=True)
class Quadrangulation:
	"""
	A combinatorial datum and its k wedges.

	Args:
		datum: the gluing permutations.
		wedges: tuple of k Wedge, wedge i at position i-1.
		name: optional label, carried through moves.
		D: declared discriminant, 0 for rational data.
		certified: free text recording why the surface has no
			horizontal or vertical saddle connection, if it has been
			checked.

	Only datum and wedges take part in equality.
	"""
	datum: CombDatum
	wedges: tuple
	name: str = field(default=None, compare=False)
	D: int = field(default=0, compare=False)
	certified: str = field(default=None, compare=False)

	def __post_init__(self):
		object.__setattr__(self, 'wedges', tuple(self.wedges))

	@property
	def k(self) -> int:
		return self.datum.k

	def wedge(self, i:int) -> Wedge:
		return self.wedges[i - 1]

	def with_wedges(self, datum:CombDatum, wedges):
		"""Same name, discriminant and certificate; new datum and wedges."""
		return replace(self, datum=datum, wedges=tuple(wedges))

def wedge_side(q:Quadrangulation, i:int, side:Side) -> Vec2:
	return q.wedges[i - 1].side(side)

##############################################################################
# Validation

@dataclass(frozen=True)
class Violation:
	"""One failed constraint; index is None for global constraints."""
	index: int
	constraint: str
	detail: str = ''

	def __str__(self):
		where = 'i={0}'.format(self.index) if self.index is not None else 'global'
		text = '{0}: {1}'.format(where, self.constraint)
		return text + (' ({0})'.format(self.detail) if self.detail else '')

def validate(q:Quadrangulation):
	"""
	Every violated constraint of q, in index order.

	An empty list means q is valid.  Strict inequalities are strict:
	a zero coordinate is a violation.
	"""
	out = []
	if len(q.wedges) != q.k:
		return [Violation(None, 'wedge count', '{0} wedges for k={1}'.format(len(q.wedges), q.k))]
	for i, w in enumerate(q.wedges, 1):
		if w.left.x.sign() >= 0:
			out.append(Violation(i, 'left.x < 0', 'left.x = {0}'.format(w.left.x)))
		if w.left.y.sign() <= 0:
			out.append(Violation(i, 'left.y > 0', 'left.y = {0}'.format(w.left.y)))
		if w.right.x.sign() <= 0:
			out.append(Violation(i, 'right.x > 0', 'right.x = {0}'.format(w.right.x)))
		if w.right.y.sign() <= 0:
			out.append(Violation(i, 'right.y > 0', 'right.y = {0}'.format(w.right.y)))
	pl, pr = q.datum.perm_l, q.datum.perm_r
	for i in range(1, q.k + 1):
		via_l = q.wedge(i).left + q.wedge(pl(i)).right
		via_r = q.wedge(i).right + q.wedge(pr(i)).left
		if via_l != via_r:
			out.append(Violation(i, 'train-track', 'left(i)+right(perm_l(i)) = {0} but right(i)+left(perm_r(i)) = {1}'.format(via_l, via_r)))
	if not q.datum.is_transitive():
		out.append(Violation(None, 'transitivity', 'perm_l and perm_r do not act transitively'))
	return out

def is_valid(q:Quadrangulation) -> bool:
	return not validate(q)

def checked(q:Quadrangulation) -> Quadrangulation:
	"""Return q, or raise ValidationFailed."""
	violations = validate(q)
	if violations:
		raise ValidationFailed(violations, q.name)
	return q

##############################################################################
# Geometry

def diagonal(q:Quadrangulation, i:int) -> Vec2:
	"""The forward diagonal of q_i, left(i) + right(perm_l(i))."""
	return q.wedge(i).left + q.wedge(q.datum.perm_l(i)).right

def backward_diagonal(q:Quadrangulation, i:int) -> Vec2:
	"""right(i) - left(i), joining the left vertex of q_i to its right vertex."""
	w = q.wedge(i)
	return w.right - w.left

def slant(q:Quadrangulation, i:int) -> Slant:
	s = diagonal(q, i).x.sign()
	if s > 0:
		return Slant.LEFT
	if s < 0:
		return Slant.RIGHT
	return Slant.VERTICAL

def vertical_diagonals(q:Quadrangulation):
	"""Indices whose forward diagonal is vertical."""
	return [i for i in range(1, q.k + 1) if not diagonal(q, i).x]

def quad_area(q:Quadrangulation, i:int) -> Scalar:
	"""Shoelace area of the quadrilateral 0, right, diagonal, left."""
	w = q.wedge(i)
	d = diagonal(q, i)
	return (w.right.cross(d) + d.cross(w.left)) / 2

def area(q:Quadrangulation) -> Scalar:
	total = ZERO
	for i in range(1, q.k + 1):
		total = total + quad_area(q, i)
	return total

def width(q:Quadrangulation) -> Scalar:
	"""Largest |x| over all wedge sides."""
	return max(max(abs(w.left.x), abs(w.right.x)) for w in q.wedges)

def discriminant(q:Quadrangulation) -> int:
	"""The discriminant used by the coordinates, or the declared one."""
	for w in q.wedges:
		for v in (w.left, w.right):
			for s in (v.x, v.y):
				if s.D:
					return s.D
	return q.D

##############################################################################
# Text format

FORMAT_TAG = 'quadfmt 1'

_wedge_re = re.compile(r"""
	^\[\s*\[([^,\[\]]+),([^,\[\]]+)\]\s*,\s*\[([^,\[\]]+),([^,\[\]]+)\]\s*\]$
	""", re.VERBOSE)

def _parse_coord(text, D, ln):
	try:
		s = Scalar.parse(text)
	except (ScalarSyntaxError, ValueError) as e:
		raise QuadSyntaxError("line {0}: {1}".format(ln, e))
	if s.D and s.D != D:
		raise QuadSyntaxError(
			"line {0}: sqrt({1}) used but the file declares D={2}".format(ln, s.D, D)
		)
	return s

def parse_wedge(text:str, D:int=0, ln:int=0) -> Wedge:
	"""Parse ``[[xl,yl],[xr,yr]]``."""
	mo = _wedge_re.match(text.replace(' ', ''))
	if not mo:
		raise QuadSyntaxError("line {0}: bad wedge {1!r}".format(ln, text))
	xl, yl, xr, yr = (_parse_coord(t, D, ln) for t in mo.groups())
	return Wedge(Vec2(xl, yl), Vec2(xr, yr))

def deserialize(text:str, check:bool=True) -> Quadrangulation:
	"""
	Parse a ``.quad`` document.

	Raises QuadSyntaxError on malformed input and, when check is set,
	ValidationFailed on input that parses but does not validate.
	"""
	fields = {}
	wedge_lines = []
	seen_tag = False
	for ln, line in enumerate(text.splitlines(), 1):
		line = line.strip()
		if not line or line.startswith('#'):
			continue
		if not seen_tag:
			if line != FORMAT_TAG:
				raise QuadSyntaxError("line {0}: expected {1!r}".format(ln, FORMAT_TAG))
			seen_tag = True
			continue
		if line.startswith('certified='):
			fields['certified'] = (line[len('certified='):].strip(), ln)
			continue
		for item in line.split(';'):
			item = item.strip()
			if not item:
				continue
			key, sep, value = item.partition('=')
			key, value = key.strip(), value.strip()
			if not sep:
				raise QuadSyntaxError("line {0}: expected key=value, got {1!r}".format(ln, item))
			if key == 'wedge':
				wedge_lines.append((value, ln))
			elif key in ('name', 'D', 'k', 'perm_l', 'perm_r'):
				if key in fields:
					raise QuadSyntaxError("line {0}: repeated field {1}".format(ln, key))
				fields[key] = (value, ln)
			else:
				raise QuadSyntaxError("line {0}: unknown field {1!r}".format(ln, key))
	if not seen_tag:
		raise QuadSyntaxError("missing {0!r} line".format(FORMAT_TAG))
	for key in ('k', 'perm_l', 'perm_r'):
		if key not in fields:
			raise QuadSyntaxError("missing field {0}".format(key))

	try:
		D = check_discriminant(int(fields['D'][0])) if 'D' in fields else 0
		k = int(fields['k'][0])
	except ValueError as e:
		raise QuadSyntaxError(str(e))
	perms = []
	for key in ('perm_l', 'perm_r'):
		value, ln = fields[key]
		try:
			p = Perm.parse(value, k)
		except (InvalidPerm, ValueError) as e:
			raise QuadSyntaxError("line {0}: {1}".format(ln, e))
		if p.k != k:
			raise QuadSyntaxError("line {0}: {1} has length {2}, expected k={3}".format(ln, key, p.k, k))
		perms.append(p)
	if len(wedge_lines) != k:
		raise QuadSyntaxError("{0} wedges given for k={1}".format(len(wedge_lines), k))
	try:
		datum = CombDatum(*perms)
	except InvalidPerm as e:
		raise QuadSyntaxError(str(e))
	wedges = [parse_wedge(value, D, ln) for value, ln in wedge_lines]

	q = Quadrangulation(
		datum, wedges,
		name=fields['name'][0] if 'name' in fields else None,
		D=D,
		certified=fields['certified'][0] if 'certified' in fields else None
	)
	if check:
		checked(q)
	return q

def _field_text(key:str, value:str, allow_semicolon:bool) -> str:
	if len(value.splitlines()) > 1 or value != value.strip():
		raise QuadSyntaxError("{0} {1!r} does not fit on one line".format(key, value))
	if not allow_semicolon and ';' in value:
		raise QuadSyntaxError("{0} {1!r} contains ';'".format(key, value))
	return '{0}={1}'.format(key, value)

def serialize(q:Quadrangulation) -> str:
	"""
	Canonical ``.quad`` text; deserialize(serialize(q)) == q.

	Validates q first.  Raises QuadSyntaxError when the name holds a
	';' or a line break, or the certified text a line break.
	"""
	checked(q)
	lines = [FORMAT_TAG]
	if q.name:
		lines.append(_field_text('name', q.name, False))
	lines.append('D={0}; k={1}'.format(q.D or discriminant(q), q.k))
	lines.append('perm_l={0}; perm_r={1}'.format(q.datum.perm_l, q.datum.perm_r))
	for w in q.wedges:
		lines.append('wedge={0}'.format(w))
	if q.certified:
		lines.append(_field_text('certified', q.certified, True))
	return '\n'.join(lines) + '\n'

def make_quadrangulation(perm_l, perm_r, sides, **kwargs) -> Quadrangulation:
	"""
	Build and validate a quadrangulation from plain values.

	perm_l and perm_r are one-line sequences; sides is a sequence of
	((xl, yl), (xr, yr)) with anything Scalar.coerce accepts.

		>>> q = make_quadrangulation([1], [1], [((-1, 1), (1, 1))])
		>>> diagonal(q, 1)
		Vec2(Scalar('0'), Scalar('2'))
	"""
	wedges = [Wedge(Vec2(*l), Vec2(*r)) for l, r in sides]
	q = Quadrangulation(CombDatum(Perm(perm_l), Perm(perm_r)), wedges, **kwargs)
	if not q.D:
		q = replace(q, D=discriminant(q))
	return checked(q)
