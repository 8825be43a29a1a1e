"""
Bipartite interval exchanges and exact segment tracing.

Projecting the wedges of a quadrangulation to the horizontal axis gives
k intervals I_i = (lambda_l(i), lambda_r(i)), each cut at 0 into a left
part (under the left side) and a right part (under the right side), and
cut again at lambda_d(i) = lambda_l(i) + lambda_r(perm_l(i)), the
projection of the diagonal.  The first return of the upward vertical
flow to the wedges is the bipartite interval exchange

	(i, x) -> (perm_l(i), x - lambda_l(i))	when x < lambda_d(i)
	(i, x) -> (perm_r(i), x - lambda_r(i))	when x > lambda_d(i)

and the cutting sequence of a vertical orbit is the sequence of wedge
sides it crosses, written as Labels such as ``1l`` or ``3r``.

	>>> T = iet_of(load_fixture('root_two_torus'))
	>>> iet_apply(T, IETPoint(1, Scalar('-1/2')))
	IETPoint(component=1, x=Scalar('1/2'))

trace_segment develops a straight segment from the bottom vertex of a
wedge across the quadrilaterals it meets and returns the sides it
crosses.  Every test is an exact sign of a 2x2 determinant.

"""

import logging
import random
from dataclasses import dataclass
from typing import NamedTuple

from . import settings
from .exactnum import Scalar
from .combinatorics import CombDatum, Side
from .quadrangulation import (Quadrangulation, Vec2, Wedge, checked, diagonal)

log = logging.getLogger(__name__)

class HitsSingularity(Exception):
	"""An orbit reached a point where the exchange is undefined."""
	def __init__(self, msg, step=None):
		self.step = step
		super(HitsSingularity, self).__init__(msg)

class NotASaddleConnection(Exception):
	pass

class HitsSingularityEarly(Exception):
	pass

class OnEdge(Exception):
	pass

class ChartBudgetExceeded(Exception):
	pass

class WordSyntaxError(ValueError):
	pass

##############################################################################
# Labels and words

class Label(NamedTuple):
	"""A wedge side: (index, side)."""
	index: int
	side: Side

	def __str__(self):
		return '{0}{1}'.format(self.index, self.side.value)

def word_text(w) -> str:
	"""``1l 2r 3l``; the empty word prints as ``-``."""
	return ' '.join(str(a) for a in w) if w else '-'

def parse_word(text:str):
	text = text.strip()
	if text in ('', '-'):
		return ()
	out = []
	for tok in text.split():
		try:
			out.append(Label(int(tok[:-1]), Side.parse(tok[-1])))
		except ValueError:
			raise WordSyntaxError("bad letter {0!r}".format(tok))
	return tuple(out)

##############################################################################
# Interval exchanges

@dataclass(frozen=True)
class IETPoint:
	component: int
	x: Scalar

@dataclass(frozen=True)
class BipartiteIET:
	"""
	Lengths lambdas[i-1] = (lambda_l(i) < 0, lambda_r(i) > 0) glued by datum.

	The length train-track relations are checked on construction.
	"""
	datum: CombDatum
	lambdas: tuple

	def __post_init__(self):
		lam = tuple((Scalar.coerce(a), Scalar.coerce(b)) for a, b in self.lambdas)
		object.__setattr__(self, 'lambdas', lam)
		if len(lam) != self.datum.k:
			raise ValueError("{0} length pairs for k={1}".format(len(lam), self.datum.k))
		pl, pr = self.datum.perm_l, self.datum.perm_r
		for i, (a, b) in enumerate(lam, 1):
			if a.sign() >= 0 or b.sign() <= 0:
				raise ValueError("interval {0} is not (negative, positive)".format(i))
			if a + lam[pl(i) - 1][1] != b + lam[pr(i) - 1][0]:
				raise ValueError("length train-track relation fails at {0}".format(i))

	@property
	def k(self) -> int:
		return self.datum.k

	def lam_l(self, i:int) -> Scalar:
		return self.lambdas[i - 1][0]

	def lam_r(self, i:int) -> Scalar:
		return self.lambdas[i - 1][1]

	def lam_d(self, i:int) -> Scalar:
		return self.lam_l(i) + self.lam_r(self.datum.perm_l(i))

	def contains(self, p:IETPoint) -> bool:
		return 1 <= p.component <= self.k and \
			self.lam_l(p.component) < p.x < self.lam_r(p.component)

def iet_of(q:Quadrangulation) -> BipartiteIET:
	"""The exchange given by the x parts of the wedges of q."""
	return BipartiteIET(q.datum, tuple((w.left.x, w.right.x) for w in q.wedges))

def iet_apply(T:BipartiteIET, p:IETPoint) -> IETPoint:
	"""
	One step of the exchange.

	Raises HitsSingularity at x = 0, the bottom vertex of the wedge, and
	at x = lambda_d, below the top vertex of the quadrilateral.
	"""
	if not T.contains(p):
		raise ValueError("{0} is outside the intervals".format(p))
	i = p.component
	if not p.x:
		raise HitsSingularity("x = 0 is the bottom vertex of wedge {0}".format(i))
	lam_d = T.lam_d(i)
	if p.x == lam_d:
		raise HitsSingularity("x = lambda_d({0}) = {1}".format(i, lam_d))
	if p.x < lam_d:
		return IETPoint(T.datum.perm_l(i), p.x - T.lam_l(i))
	return IETPoint(T.datum.perm_r(i), p.x - T.lam_r(i))

def suspend(d:CombDatum, lambdas, taus, **kwargs) -> Quadrangulation:
	"""
	The quadrangulation with x parts lambdas and y parts taus.

	taus[i-1] = (tau_l(i), tau_r(i)); both must satisfy the train-track
	relations.  Raises ValidationFailed otherwise.
	"""
	wedges = []
	for (xl, xr), (yl, yr) in zip(lambdas, taus):
		wedges.append(Wedge(Vec2(xl, yl), Vec2(xr, yr)))
	return checked(Quadrangulation(d, wedges, **kwargs))

def cutting_sequence(q, p:IETPoint, n:int):
	"""
	The first n letters of the cutting sequence of the orbit of p.

	q is a Quadrangulation or a BipartiteIET.  Raises HitsSingularity
	with the step index when the orbit meets 0 or a lambda_d.
	"""
	T = q if isinstance(q, BipartiteIET) else iet_of(q)
	out = []
	for m in range(n):
		i = p.component
		if not p.x or p.x == T.lam_d(i):
			raise HitsSingularity("orbit is singular at step {0}".format(m), step=m)
		out.append(Label(i, Side.LEFT if p.x.sign() < 0 else Side.RIGHT))
		p = iet_apply(T, p)
	return tuple(out)

def generic_point(T:BipartiteIET, seed=None, **kwargs) -> IETPoint:
	"""
	A seeded sample point of interval 1.

	The point is lambda_l + (lambda_r - lambda_l) * t / p for a random
	0 < t < p with p the sample_denominator setting.
	"""
	if seed is None:
		seed = settings.get('seed', kwargs)
	p = settings.get('sample_denominator', kwargs)
	t = random.Random(seed).randrange(1, p)
	a, b = T.lam_l(1), T.lam_r(1)
	return IETPoint(1, a + (b - a) * Scalar(t, 0) / p)

##############################################################################
# Segment tracing

# Chart vertices: 0 bottom, 1 right, 2 top, 3 left.
_BOTTOM, _RIGHT, _TOP, _LEFT = range(4)

def _chart(q:Quadrangulation, m:int, o:Vec2):
	w = q.wedge(m)
	return (o, o + w.right, o + diagonal(q, m), o + w.left)

def _across(q:Quadrangulation, m:int, o:Vec2, edge:int):
	"""(label of edge, chart across it, offset of that chart)."""
	d = q.datum
	if edge == 0:
		n = d.perm_l.inverse()(m)
		return Label(m, Side.RIGHT), n, o - q.wedge(n).left
	if edge == 1:
		n = d.perm_r(m)
		return Label(n, Side.LEFT), n, o + q.wedge(m).right
	if edge == 2:
		n = d.perm_l(m)
		return Label(n, Side.RIGHT), n, o + q.wedge(m).left
	n = d.perm_r.inverse()(m)
	return Label(m, Side.LEFT), n, o - q.wedge(n).right

def start_chart(q:Quadrangulation, i:int, v:Vec2):
	"""
	(chart, offset, entry vertex) holding the start of a segment v from
	the bottom vertex of wedge i.
	"""
	w = q.wedge(i)
	cr = w.right.cross(v).sign()
	cl = v.cross(w.left).sign()
	if cr == 0 or cl == 0:
		raise OnEdge("{0} lies along a side of wedge {1}".format(v, i))
	if cr > 0 and cl > 0:
		return i, Vec2(0, 0), _BOTTOM
	if cr < 0:
		m = q.datum.perm_l.inverse()(i)
		return m, -q.wedge(m).left, _LEFT
	m = q.datum.perm_r.inverse()(i)
	return m, -q.wedge(m).right, _RIGHT

def trace_segment(q:Quadrangulation, i:int, v:Vec2, **kwargs):
	"""
	The word of wedge sides crossed by the segment v from the bottom
	vertex of wedge i.

	Succeeds only when v ends at a singularity and meets none before.
	Raises NotASaddleConnection when v ends inside a quadrilateral or
	inside a side, HitsSingularityEarly when it passes through a vertex
	first, and OnEdge when it starts along a wedge side.
	"""
	if v.y.sign() <= 0:
		raise ValueError("segment must point upward")
	budget = settings.get('chart_budget', kwargs)
	m, o, entry = start_chart(q, i, v)
	vv = v.dot(v)
	word = []
	for _ in range(budget):
		V = _chart(q, m, o)
		s = [v.cross(P).sign() for P in V]
		for j in range(4):
			if s[j] == 0 and j != entry:
				if V[j] == v:
					return tuple(word)
				if V[j].dot(v) < vv:
					raise HitsSingularityEarly(
						"{0} from wedge {1} passes through a vertex at {2}".format(v, i, V[j]))
				raise NotASaddleConnection(
					"{0} from wedge {1} ends inside quadrilateral {2}".format(v, i, m))
		for a in range(4):
			b = (a + 1) % 4
			if s[a] < 0 < s[b]:
				break
		else:
			raise AssertionError("segment leaves chart {0} nowhere".format(m))
		if (V[b] - V[a]).cross(v - V[a]).sign() >= 0:
			raise NotASaddleConnection(
				"{0} from wedge {1} ends inside quadrilateral {2}".format(v, i, m))
		label, m, o = _across(q, m, o, a)
		word.append(label)
		entry = None
	raise ChartBudgetExceeded("tracing {0} took more than {1} charts".format(v, budget))

def vertical_crossings(q:Quadrangulation, p:IETPoint, n:int):
	"""
	The first n wedge sides met by the upward vertical line through p,
	found by developing the line across the quadrilaterals.

	Agrees with cutting_sequence; raises HitsSingularity with the step
	index when the line meets a vertex.
	"""
	X = p.x
	m, o = p.component, Vec2(0, 0)
	label = None
	out = []
	for step in range(n):
		top = o.x + diagonal(q, m).x
		if X == o.x or X == top:
			raise HitsSingularity("vertical line meets a vertex at step {0}".format(step), step=step)
		if label is None:
			label = Label(m, Side.LEFT if X < o.x else Side.RIGHT)
		out.append(label)
		label, m, o = _across(q, m, o, 2 if X < top else 1)
	return tuple(out)
