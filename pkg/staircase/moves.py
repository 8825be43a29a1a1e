"""
Staircase moves and runs.

A staircase is a cycle c of perm_l (a left staircase) or perm_r (a
right staircase).  It is well slanted when every quadrilateral of a left
staircase has its diagonal leaning right (x > 0), or every quadrilateral
of a right staircase has it leaning left (x < 0).  Moving a well slanted
staircase replaces, for each i in c, the right side (left staircases) or
the left side (right staircases) of wedge i by the diagonal of q_i.

	>>> q = load_fixture('root_two_torus')
	>>> well_slanted_staircases(q)
	[CycleRef(Side.LEFT, (1,))]
	>>> q1 = apply_move(q, CycleRef(Side.LEFT, (1,)))
	>>> print(q1.wedge(1).right)
	[-1+1*sqrt(2),0+1*sqrt(2)]

The rotation R turns the surface a quarter turn counterclockwise and
relabels it so that the inverse of a move is a move of the rotated
surface: backward_move(q, c) is R^-1 m R.

A run repeatedly asks a policy which staircases to move.  Policies:

	GreedyPolicy: every well slanted staircase, once, each step.
	LeftRightPolicy: all well slanted staircases of one side per step,
		sides alternating, each moved as long as it stays well slanted.
	ScriptPolicy: a fixed list of staircases, one per step.
	RandomPolicy: one uniformly chosen well slanted staircase per step.

A run ends with a KeaneStop record, not an exception, when it meets a
vertical diagonal.

"""

import enum
import logging
import random
import re
from dataclasses import dataclass

import sympy

from . import settings
from .combinatorics import (CombDatum, CycleRef, Perm, Side, InvalidPerm,
	rotate_datum, rotate_inverse_datum, cycle_prime, uncycle_prime)
from .quadrangulation import (Quadrangulation, Wedge, Vec2, Violation, ValidationFailed,
	Slant, diagonal, backward_diagonal, slant, vertical_diagonals, width)

log = logging.getLogger(__name__)

class NotWellSlanted(Exception):
	pass

class VerticalDiagonal(Exception):
	def __init__(self, indices):
		self.indices = list(indices)
		super(VerticalDiagonal, self).__init__(
			"vertical diagonal at {0}".format(','.join(str(i) for i in self.indices))
		)

class NotBackwardApplicable(Exception):
	pass

class EmptyMoveSet(Exception):
	pass

class KeaneStopBeforeLimit(Exception):
	"""A run met a vertical diagonal before producing what was asked for."""
	def __init__(self, keane, what=''):
		self.keane = keane
		super(KeaneStopBeforeLimit, self).__init__(
			"run stopped at step {0} (vertical diagonal at {1}){2}".format(
				keane.step, ','.join(str(i) for i in keane.indices),
				' before ' + what if what else '')
		)

class Direction(enum.Enum):
	FORWARD = 'F'
	BACKWARD = 'B'

##############################################################################
# Staircases and single moves

def _wanted_slant(side:Side) -> Slant:
	return Slant.LEFT if side is Side.LEFT else Slant.RIGHT

def is_well_slanted(q:Quadrangulation, c:CycleRef) -> bool:
	want = _wanted_slant(c.side)
	return all(slant(q, i) is want for i in c)

def well_slanted_staircases(q:Quadrangulation):
	"""Every well slanted staircase of q, left staircases first."""
	return [c for c in q.datum.cycle_refs() if is_well_slanted(q, c)]

def staircase_report(q:Quadrangulation):
	"""(well slanted staircases, indices with a vertical diagonal)."""
	return well_slanted_staircases(q), vertical_diagonals(q)

def basis_index(i:int, side:Side) -> int:
	"""Row of (i, side) in a move matrix, 0-based."""
	return 2 * (i - 1) + (0 if side is Side.LEFT else 1)

def move_matrix(d:CombDatum, c:CycleRef):
	"""
	The 2k x 2k sympy Matrix of the move on c.

	Rows and columns run over (1,l), (1,r), ..., (k,l), (k,r).  Row
	(i,l) of a right move gains a 1 in column (perm_l(i), r); row (i,r)
	of a left move gains a 1 in column (perm_r(i), l).
	"""
	c.check(d)
	m = sympy.eye(2 * d.k)
	for i in c:
		if c.side is Side.RIGHT:
			m[basis_index(i, Side.LEFT), basis_index(d.perm_l(i), Side.RIGHT)] += 1
		else:
			m[basis_index(i, Side.RIGHT), basis_index(d.perm_r(i), Side.LEFT)] += 1
	return m

def matrix_action(m, q:Quadrangulation):
	"""Wedge sides of q transformed by m, as a list of Vec2 in basis order."""
	sides = []
	for w in q.wedges:
		sides.extend((w.left, w.right))
	out = []
	for row in range(m.rows):
		acc = Vec2(0, 0)
		for col in range(m.cols):
			if m[row, col]:
				acc = acc + sides[col] * int(m[row, col])
		out.append(acc)
	return out

def diagonal_change(q:Quadrangulation, side:Side, indices) -> Quadrangulation:
	"""
	Replace the side of wedge i opposite to `side` by the diagonal of q_i
	for every i in indices at once, and update the datum to match.

	Only unions of cycles of the `side` permutation give a
	quadrangulation; any other index set raises ValidationFailed.
	"""
	indices = frozenset(indices)
	d = q.datum
	pl, pr = d.perm_l, d.perm_r
	diags = {i: diagonal(q, i) for i in indices}
	wedges = list(q.wedges)
	try:
		if side is Side.RIGHT:
			images = [pl(pr(i)) if i in indices else pl(i) for i in range(1, d.k + 1)]
			datum = CombDatum(Perm(images), pr)
			for i in indices:
				wedges[i - 1] = Wedge(diags[i], wedges[i - 1].right)
		else:
			images = [pr(pl(i)) if i in indices else pr(i) for i in range(1, d.k + 1)]
			datum = CombDatum(pl, Perm(images))
			for i in indices:
				wedges[i - 1] = Wedge(wedges[i - 1].left, diags[i])
	except InvalidPerm as e:
		raise ValidationFailed([Violation(None, 'permutation', str(e))], q.name)
	return q.with_wedges(datum, wedges)

def apply_move(q:Quadrangulation, c:CycleRef) -> Quadrangulation:
	"""
	Move the well slanted staircase c.

	Raises VerticalDiagonal when a quadrilateral of c has a vertical
	diagonal and NotWellSlanted when c leans the wrong way.
	"""
	c.check(q.datum)
	vertical = [i for i in c if slant(q, i) is Slant.VERTICAL]
	if vertical:
		raise VerticalDiagonal(vertical)
	if not is_well_slanted(q, c):
		raise NotWellSlanted("{0} is not well slanted".format(c))
	return diagonal_change(q, c.side, c.indices)

##############################################################################
# Rotation and backward moves

def rotate(q:Quadrangulation) -> Quadrangulation:
	"""
	Quarter turn counterclockwise.

	The new left side of wedge i is the turned right side of wedge i; the
	new right side is the turned left side of wedge perm_l^-1(i), turned
	clockwise.
	"""
	inv = q.datum.perm_l.inverse()
	wedges = []
	for i in range(1, q.k + 1):
		wedges.append(Wedge(q.wedge(i).right.rot90(), q.wedge(inv(i)).left.rot270()))
	return q.with_wedges(rotate_datum(q.datum), wedges)

def rotate_inverse(q:Quadrangulation) -> Quadrangulation:
	inv = q.datum.perm_r.inverse()
	wedges = []
	for i in range(1, q.k + 1):
		wedges.append(Wedge(q.wedge(inv(i)).right.rot90(), q.wedge(i).left.rot270()))
	return q.with_wedges(rotate_inverse_datum(q.datum), wedges)

def backward_staircases(q:Quadrangulation):
	"""
	Staircases c of q for which backward_move(q, c) is defined.

	These are the well slanted staircases of rotate(q), pulled back.
	"""
	rq = rotate(q)
	return [uncycle_prime(rq.datum, c) for c in well_slanted_staircases(rq)]

def backward_move(q:Quadrangulation, c:CycleRef) -> Quadrangulation:
	"""The quadrangulation p with apply_move(p, c) == q."""
	c.check(q.datum)
	rq = rotate(q)
	cp = cycle_prime(q.datum, c)
	if not is_well_slanted(rq, cp):
		raise NotBackwardApplicable("{0} cannot be moved backward".format(c))
	return rotate_inverse(apply_move(rq, cp))

def horizontal_backward_diagonals(q:Quadrangulation):
	return [i for i in range(1, q.k + 1) if not backward_diagonal(q, i).y]

def step_greedy(q:Quadrangulation) -> Quadrangulation:
	"""
	Move every well slanted staircase of q once.

	Raises VerticalDiagonal when no staircase is well slanted because of
	a vertical diagonal, EmptyMoveSet when none is for any other reason.
	"""
	ws = well_slanted_staircases(q)
	if not ws:
		vertical = vertical_diagonals(q)
		if vertical:
			raise VerticalDiagonal(vertical)
		raise EmptyMoveSet("no well slanted staircase in {0}".format(q.datum))
	for c in ws:
		q = apply_move(q, c)
	return q

def step_backward(q:Quadrangulation) -> Quadrangulation:
	"""Move every backward staircase of q backward once."""
	cs = backward_staircases(q)
	if not cs:
		raise EmptyMoveSet("no backward staircase in {0}".format(q.datum))
	for c in cs:
		q = backward_move(q, c)
	return q

##############################################################################
# Logs

@dataclass(frozen=True)
class MoveRecord:
	step: int
	cycle: CycleRef
	direction: Direction
	datum_before: CombDatum
	datum_after: CombDatum

	@property
	def matrix(self):
		"""Move matrix of a forward record; the matrix maps before to after."""
		if self.direction is Direction.FORWARD:
			return move_matrix(self.datum_before, self.cycle)
		return move_matrix(self.datum_after, self.cycle).inv()

	def text(self) -> str:
		line = 'step={0} side={1} cycle={2}'.format(
			self.step, self.cycle.side.name[0], ','.join(str(i) for i in self.cycle))
		if self.direction is Direction.BACKWARD:
			line += ' dir=B'
		return line

@dataclass(frozen=True)
class KeaneStop:
	"""A run ended at `step` because the diagonals at `indices` were vertical."""
	step: int
	indices: tuple

	def text(self) -> str:
		return 'keane step={0} index={1}'.format(self.step, ','.join(str(i) for i in self.indices))

class MoveLogSyntaxError(ValueError):
	pass

class MoveLog(object):
	"""
	The elementary moves of a run, in order, from an initial state.

	Attributes:
		initial: the Quadrangulation the run started from.
		records: list of MoveRecord.
		keane: the KeaneStop that ended the run, or None.
	"""
	HEADER = 'movelog 1'

	def __init__(self, initial:Quadrangulation):
		self.initial = initial
		self.records = []
		self.keane = None

	def __len__(self):
		return len(self.records)

	def __iter__(self):
		return iter(self.records)

	def append(self, record:MoveRecord):
		self.records.append(record)

	def replay(self, upto:int=None) -> Quadrangulation:
		"""The state after the first `upto` records (all by default)."""
		q = self.initial
		for rec in self.records[:upto]:
			if rec.direction is Direction.FORWARD:
				q = apply_move(q, rec.cycle)
			else:
				q = backward_move(q, rec.cycle)
		return q

	def serialize(self) -> str:
		lines = [self.HEADER]
		lines.extend(rec.text() for rec in self.records)
		if self.keane:
			lines.append(self.keane.text())
		return '\n'.join(lines) + '\n'

	_move_re = re.compile(r'^step=(-?\d+)\s+side=([LR])\s+cycle=([\d,]+)(?:\s+dir=([FB]))?$')
	_keane_re = re.compile(r'^keane\s+step=(-?\d+)\s+index=([\d,]+)$')

	@classmethod
	def deserialize(cls, text:str, initial:Quadrangulation):
		"""
		Parse a move log and replay it against `initial`.

		Replaying checks every move, so a log that does not belong to
		`initial` raises the move's own error.
		"""
		out = cls(initial)
		q = initial
		lines = [l.strip() for l in text.splitlines() if l.strip() and not l.strip().startswith('#')]
		if not lines or lines[0] != cls.HEADER:
			raise MoveLogSyntaxError("expected {0!r} header".format(cls.HEADER))
		for ln, line in enumerate(lines[1:], 2):
			mo = cls._keane_re.match(line)
			if mo:
				out.keane = KeaneStop(int(mo.group(1)), tuple(int(i) for i in mo.group(2).split(',')))
				continue
			mo = cls._move_re.match(line)
			if not mo:
				raise MoveLogSyntaxError("line {0}: cannot parse {1!r}".format(ln, line))
			if out.keane:
				raise MoveLogSyntaxError("line {0}: move after the keane record".format(ln))
			step, side, idx, direction = mo.groups()
			c = CycleRef(Side.LEFT if side == 'L' else Side.RIGHT,
				tuple(int(i) for i in idx.split(',')))
			direction = Direction.BACKWARD if direction == 'B' else Direction.FORWARD
			before = q.datum
			q = apply_move(q, c) if direction is Direction.FORWARD else backward_move(q, c)
			out.append(MoveRecord(int(step), c, direction, before, q.datum))
		return out

##############################################################################
# Policies

class Policy(object):
	"""
	Chooses the staircases moved at each step of a run.

	choose() gets the current state and its well slanted staircases and
	returns the list of staircases to move, or None when the policy has
	nothing more to do.  repeat means each chosen staircase is moved
	again for as long as it stays well slanted.
	"""
	name = None
	repeat = False

	def choose(self, q:Quadrangulation, ws):
		raise NotImplementedError

class GreedyPolicy(Policy):
	name = 'greedy'

	def choose(self, q, ws):
		return list(ws)

class LeftRightPolicy(Policy):
	"""Alternate sides, left first; an empty side hands over to the other."""
	name = 'leftright'

	def __init__(self, repeat:bool=True):
		self.repeat = repeat
		self._side = Side.LEFT

	def choose(self, q, ws):
		side = self._side
		chosen = [c for c in ws if c.side is side]
		if not chosen:
			side = side.other
			chosen = [c for c in ws if c.side is side]
		self._side = side.other
		return chosen

class ScriptPolicy(Policy):
	"""One staircase per step from a fixed list; the run ends with the list."""
	name = 'script'

	def __init__(self, script):
		self.script = list(script)
		self._pos = 0

	def choose(self, q, ws):
		if self._pos >= len(self.script):
			return None
		c = self.script[self._pos]
		self._pos += 1
		return [c]

class RandomPolicy(Policy):
	"""One uniformly chosen well slanted staircase per step."""
	name = 'random'

	def __init__(self, seed=None, **kwargs):
		self.seed = settings.get('seed', kwargs) if seed is None else seed
		self._rng = random.Random(self.seed)

	def choose(self, q, ws):
		return [self._rng.choice(ws)] if ws else []

POLICIES = ('greedy', 'leftright', 'random', 'script')

def make_policy(name:str, seed=None, script=None) -> Policy:
	if name == 'greedy':
		return GreedyPolicy()
	if name == 'leftright':
		return LeftRightPolicy()
	if name == 'random':
		return RandomPolicy(seed)
	if name == 'script':
		if script is None:
			raise ValueError("the script policy needs a script")
		return ScriptPolicy(script)
	raise ValueError("unknown policy {0!r}; choose from {1}".format(name, ', '.join(POLICIES)))

def parse_script(text:str):
	"""Parse staircases written ``L1,2,3 R4`` (or ``L{1,2,3}``)."""
	out = []
	for tok in text.replace(';', ' ').split():
		mo = re.match(r'^([LRlr])\{?([\d,]+)\}?$', tok)
		if not mo:
			raise ValueError("bad staircase {0!r}".format(tok))
		out.append(CycleRef(Side.parse(mo.group(1)), tuple(int(i) for i in mo.group(2).split(','))))
	return out

##############################################################################
# Runs

class Run(object):
	"""
	A forward run in progress.

	observer, if given, is called as observer(record, q) after every
	elementary move with the state it produced.

		>>> r = Run(q, GreedyPolicy())
		>>> while r.step() and r.stepno < 10:
		...     pass
		>>> r.q, r.log
	"""
	def __init__(self, q:Quadrangulation, policy:Policy, observer=None):
		self.initial = q
		self.observer = observer
		self.q = q
		self.policy = policy
		self.log = MoveLog(q)
		self.stepno = 0

	@property
	def stopped(self) -> bool:
		return self.log.keane is not None

	def _keane(self, indices):
		self.log.keane = KeaneStop(self.stepno + 1, tuple(indices))
		log.info("Keane stop at step %d, vertical diagonal at %s", self.stepno + 1, indices)
		return False

	def _move(self, c:CycleRef):
		before = self.q.datum
		self.q = apply_move(self.q, c)
		self.log.append(MoveRecord(self.stepno + 1, c, Direction.FORWARD, before, self.q.datum))
		log.debug("step %d: %s", self.stepno + 1, c)
		if self.observer:
			self.observer(self.log.records[-1], self.q)

	def step(self) -> bool:
		"""
		Perform one step.  Returns False when the run has ended, either
		with a KeaneStop or because the policy is exhausted.
		"""
		if self.stopped:
			return False
		ws = well_slanted_staircases(self.q)
		chosen = self.policy.choose(self.q, ws)
		if chosen is None:
			return False
		if not ws and not chosen:
			vertical = vertical_diagonals(self.q)
			if vertical:
				return self._keane(vertical)
			raise EmptyMoveSet("no well slanted staircase in {0}".format(self.q.datum))
		for c in chosen:
			c.check(self.q.datum)
			vertical = [i for i in c if slant(self.q, i) is Slant.VERTICAL]
			if vertical:
				return self._keane(vertical)
			self._move(c)
			while self.policy.repeat and is_well_slanted(self.q, c):
				self._move(c)
		self.stepno += 1
		return True

def run(q:Quadrangulation, policy:Policy, steps:int=None, width_target=None, observer=None, **kwargs):
	"""
	Run policy from q.

	Stops after `steps` steps, or once width(q) < width_target, or at a
	Keane stop, whichever comes first.  With neither limit the run goes
	until the policy is exhausted.  Runs never exceed the max_run_steps
	setting.  Returns (final quadrangulation, MoveLog).
	"""
	cap = settings.get('max_run_steps', kwargs)
	r = Run(q, policy, observer)
	while steps is None or r.stepno < steps:
		if width_target is not None and width(r.q) < width_target:
			break
		if r.stepno >= cap:
			log.warning("run stopped by max_run_steps=%d", cap)
			break
		if not r.step():
			break
	return r.q, r.log

def run_backward(q:Quadrangulation, n:int, observer=None):
	"""
	n backward steps from q, each moving every backward staircase.

	Steps are numbered -1, -2, ...; a horizontal backward diagonal ends
	the run with a KeaneStop.
	"""
	out = MoveLog(q)
	for s in range(1, n + 1):
		cs = backward_staircases(q)
		if not cs:
			flat = horizontal_backward_diagonals(q)
			if flat:
				out.keane = KeaneStop(-s, tuple(flat))
				log.info("backward Keane stop at step %d", -s)
				break
			raise EmptyMoveSet("no backward staircase in {0}".format(q.datum))
		for c in cs:
			before = q.datum
			q = backward_move(q, c)
			out.append(MoveRecord(-s, c, Direction.BACKWARD, before, q.datum))
			if observer:
				observer(out.records[-1], q)
			log.debug("step %d: %s backward", -s, c)
	return q, out
