"""
Geometric best approximations.

The saddle connections leaving the bottom vertex of wedge i upward form
the bundle i.  A right (left) connection v of the bundle is a best
approximation when every right (left) connection u of the bundle with
u.y < v.y has |u.x| > |v.x|.  Staircase moves produce them in order:
the distinct values taken by the right side of wedge i along a run are
the right best approximations of bundle i above the starting one, by
increasing height.

Two independent tools check this.  unfold_enumerate develops the
quadrilaterals around the bundle into the plane and lists every
connection in a box, confirming candidates by exact segment tracing;
filter_best_approximations then applies the definition directly.

	>>> q = load_fixture('root_two_torus')
	>>> [str(sc.disp) for sc in best_approx_stream(q, GreedyPolicy(), 1, Side.RIGHT, count=2)]
	['[0+1*sqrt(2),-1+1*sqrt(2)]', '[-1+1*sqrt(2),0+1*sqrt(2)]']

Results depend on the absence of horizontal saddle connections, which
is certified per fixture rather than detected; with a horizontal
connection two connections of a bundle can share a height.

"""

import enum
import logging
from collections import deque
from dataclasses import dataclass

from . import settings
from .exactnum import Scalar
from .combinatorics import Side
from .quadrangulation import Quadrangulation, Vec2, Wedge, area, diagonal, wedge_side
from .moves import (Policy, GreedyPolicy, Run, KeaneStopBeforeLimit, run_backward)
from .iet import (trace_segment, NotASaddleConnection, HitsSingularityEarly,
	OnEdge, ChartBudgetExceeded, _chart, _across)

log = logging.getLogger(__name__)

class CriteriaDisagree(Exception):
	pass

class NotBestApproximation(Exception):
	pass

class AmbiguousExtension(Exception):
	pass

class QuadrilateralMismatch(Exception):
	pass

class Role(enum.Enum):
	WEDGE_LEFT = 'l'
	WEDGE_RIGHT = 'r'
	DIAGONAL = 'd'

@dataclass(frozen=True)
class SaddleConnection:
	"""
	A saddle connection of a bundle.

	role and step say how a produced connection first appeared: as a
	wedge side or a diagonal, at which move step (negative for backward
	steps).  Connections found by the unfolding oracle have neither.
	"""
	bundle: int
	disp: Vec2
	role: Role = None
	step: int = None

	@property
	def side(self) -> Side:
		"""LEFT for x < 0, RIGHT for x > 0, None for vertical."""
		s = self.disp.x.sign()
		return Side.LEFT if s < 0 else Side.RIGHT if s > 0 else None

	def __post_init__(self):
		if self.disp.y.sign() <= 0:
			raise ValueError("saddle connection must point upward: {0}".format(self.disp))
		if self.role is Role.WEDGE_LEFT and self.disp.x.sign() >= 0:
			raise ValueError("left wedge side with x >= 0")
		if self.role is Role.WEDGE_RIGHT and self.disp.x.sign() <= 0:
			raise ValueError("right wedge side with x <= 0")

@dataclass(frozen=True)
class SearchBox:
	rx: Scalar
	ty: Scalar

	def __post_init__(self):
		object.__setattr__(self, 'rx', Scalar.coerce(self.rx))
		object.__setattr__(self, 'ty', Scalar.coerce(self.ty))
		if self.rx.sign() <= 0 or self.ty.sign() <= 0:
			raise ValueError("search box bounds must be positive")

	def __contains__(self, v:Vec2):
		return abs(v.x) <= self.rx and 0 < v.y <= self.ty

def _role(side:Side) -> Role:
	return Role.WEDGE_LEFT if side is Side.LEFT else Role.WEDGE_RIGHT

##############################################################################
# Streams produced by moves

def best_approx_stream(q:Quadrangulation, policy:Policy, bundle:int, side:Side,
		count:int=None, ty_limit=None, **kwargs):
	"""
	Distinct values of the `side` of wedge `bundle` along a run, in order.

	Stops once `count` values are collected or a value higher than
	ty_limit appears (that value is not included).  Raises
	KeaneStopBeforeLimit if the run stops first.
	"""
	if count is None and ty_limit is None:
		raise ValueError("give count or ty_limit")
	if ty_limit is not None:
		ty_limit = Scalar.coerce(ty_limit)
	cap = settings.get('max_run_steps', kwargs)
	first = wedge_side(q, bundle, side)
	out = [SaddleConnection(bundle, first, _role(side), 0)]
	done = [False]

	def observe(rec, state):
		v = wedge_side(state, bundle, side)
		if done[0] or v == out[-1].disp:
			return
		if ty_limit is not None and v.y > ty_limit:
			done[0] = True
			return
		out.append(SaddleConnection(bundle, v, _role(side), rec.step))
		if count is not None and len(out) >= count:
			done[0] = True

	if ty_limit is not None and first.y > ty_limit:
		return []
	if count is not None and count <= 1:
		return out[:count]
	r = Run(q, policy, observe)
	while not done[0]:
		if r.stepno >= cap:
			log.warning("stream stopped by max_run_steps=%d", cap)
			break
		if not r.step():
			if r.stopped:
				raise KeaneStopBeforeLimit(r.log.keane, 'the stream was complete')
			break
	if count is not None:
		out = out[:count]
	return out

def produced_connections(q:Quadrangulation, policy:Policy=None, n_fwd:int=0, n_back:int=0,
		diagonals:bool=False):
	"""
	Every wedge side (and diagonal, if asked) of every quadrangulation
	met along n_back backward and n_fwd forward steps from q.

	Each connection is listed once, with the step it first appeared at.
	A Keane stop on either side raises KeaneStopBeforeLimit.
	"""
	seen = {}

	def collect(state, step):
		for i in range(1, state.k + 1):
			for side in (Side.LEFT, Side.RIGHT):
				v = wedge_side(state, i, side)
				seen.setdefault((i, v), SaddleConnection(i, v, _role(side), step))
			if diagonals:
				v = diagonal(state, i)
				if v.x:
					seen.setdefault((i, v), SaddleConnection(i, v, Role.DIAGONAL, step))

	collect(q, 0)
	if n_back:
		_, blog = run_backward(q, n_back, lambda rec, state: collect(state, rec.step))
		if blog.keane:
			raise KeaneStopBeforeLimit(blog.keane, '{0} backward steps'.format(n_back))
	if n_fwd:
		r = Run(q, policy or GreedyPolicy(), lambda rec, state: collect(state, rec.step))
		while r.stepno < n_fwd:
			if not r.step():
				if r.stopped:
					raise KeaneStopBeforeLimit(r.log.keane, '{0} forward steps'.format(n_fwd))
				break
	return sorted(seen.values(), key=lambda sc: (sc.bundle, sc.disp.y, sc.disp.x))

##############################################################################
# Unfolding oracle

_EAST = Vec2(1, 0)
_WEST = Vec2(-1, 0)

def _in_window(lo:Vec2, hi:Vec2, v:Vec2):
	"""None if v is outside the closed cone (lo, hi), else True on its boundary."""
	a = lo.cross(v).sign()
	b = v.cross(hi).sign()
	if a < 0 or b < 0:
		return None
	return a == 0 or b == 0

def unfold_enumerate(q:Quadrangulation, bundle:int, box:SearchBox, **kwargs):
	"""
	Every saddle connection of the bundle inside box, sorted by height.

	Quadrilaterals are developed breadth first from the bottom vertex of
	wedge `bundle`, each with the cone of directions through which it is
	seen from there.  Chart vertices inside the box and the cone are the
	candidates.  Candidates on the boundary of their cone, and all of
	them when the confirm_candidates setting is on, are confirmed with
	trace_segment.  More than chart_budget charts raises
	ChartBudgetExceeded.
	"""
	budget = settings.get('chart_budget', kwargs)
	confirm = settings.get('confirm_candidates', kwargs)
	i = bundle
	w = q.wedge(i)
	d = q.datum
	origin = Vec2(0, 0)
	ml = d.perm_l.inverse()(i)
	mr = d.perm_r.inverse()(i)
	todo = deque([
		(i, origin, w.right, w.left),
		(ml, -q.wedge(ml).left, _EAST, w.right),
		(mr, -q.wedge(mr).right, w.left, _WEST),
	])
	found = {}
	rejected = set()
	charts = 0
	while todo:
		m, o, lo, hi = todo.popleft()
		charts += 1
		if charts > budget:
			raise ChartBudgetExceeded(
				"unfolding bundle {0} needed more than {1} charts".format(bundle, budget))
		V = _chart(q, m, o)
		for P in V:
			if P.is_zero() or P in found or P in rejected:
				continue
			if P.y.sign() <= 0 or P not in box:
				continue
			edge = _in_window(lo, hi, P)
			if edge is None:
				continue
			if edge or confirm:
				try:
					trace_segment(q, i, P, **kwargs)
				except OnEdge:
					if P != w.left and P != w.right:
						rejected.add(P)
						continue
				except (NotASaddleConnection, HitsSingularityEarly):
					rejected.add(P)
					continue
			found[P] = SaddleConnection(i, P)
		for a in range(4):
			A, B = V[a], V[(a + 1) % 4]
			if (B - A).cross(-A).sign() <= 0:
				continue
			if min(A.y, B.y) > box.ty:
				continue
			if (A.x > box.rx and B.x > box.rx) or (A.x < -box.rx and B.x < -box.rx):
				continue
			nlo = A if lo.cross(A).sign() > 0 else lo
			nhi = B if B.cross(hi).sign() > 0 else hi
			if nlo.cross(nhi).sign() <= 0:
				continue
			_, n, no = _across(q, m, o, a)
			todo.append((n, no, nlo, nhi))
	log.debug("bundle %d: %d charts, %d connections", bundle, charts, len(found))
	return sorted(found.values(), key=lambda sc: (sc.disp.y, sc.disp.x))

##############################################################################
# Definitional checks

def filter_best_approximations(conns):
	"""
	The best approximations among conns, by increasing height.

	Each side is scanned by height; connections of equal height are
	compared only against strictly lower ones.  Vertical connections
	are never best approximations.
	"""
	out = []
	for sgn in (-1, 1):
		side = sorted((sc for sc in conns if sc.disp.x.sign() == sgn), key=lambda sc: sc.disp.y)
		best = None
		n = 0
		while n < len(side):
			group = [sc for sc in side[n:] if sc.disp.y == side[n].disp.y]
			for sc in group:
				if best is None or abs(sc.disp.x) < best:
					out.append(sc)
			lowest = min(abs(sc.disp.x) for sc in group)
			if best is None or lowest < best:
				best = lowest
			n += len(group)
	return sorted(out, key=lambda sc: (sc.disp.y, sc.disp.x))

def rectangle_is_empty(v:Vec2, conns) -> bool:
	"""
	True when no connection of conns lies in the axis-parallel
	rectangle with diagonal from 0 to v, counting its far vertical side
	but not its top.
	"""
	s = v.x.sign()
	for sc in conns:
		u = sc.disp
		if 0 < u.y < v.y and 0 < u.x * s <= v.x * s:
			return False
	return True

def is_best_approximation(q:Quadrangulation, sc:SaddleConnection, **kwargs) -> bool:
	"""
	Decide the definition for sc by enumerating the box below it.

	The same enumeration decides the rectangle criterion: sc is a
	connection of the box with an empty rectangle.  Raises
	CriteriaDisagree if the two answers differ and ValueError for a
	vertical sc.
	"""
	if not sc.disp.x:
		raise ValueError("vertical connection {0} has no side".format(sc.disp))
	box = SearchBox(abs(sc.disp.x), sc.disp.y)
	conns = unfold_enumerate(q, sc.bundle, box, **kwargs)
	by_definition = any(b.disp == sc.disp for b in filter_best_approximations(conns))
	by_rectangle = any(b.disp == sc.disp for b in conns) and rectangle_is_empty(sc.disp, conns)
	if by_definition != by_rectangle:
		raise CriteriaDisagree("{0} in bundle {1}: definition says {2}, rectangle says {3}".format(
			sc.disp, sc.bundle, by_definition, by_rectangle))
	return by_definition

##############################################################################
# Quadrilaterals from diagonals

def _nearest(points, key):
	best = min(points, key=key)
	if sum(1 for u in points if u.x == best.x) > 1:
		raise AmbiguousExtension("two connections with x = {0}".format(best.x))
	return best

def rectangle_extension(q:Quadrangulation, bundle:int, v:Vec2, **kwargs) -> Wedge:
	"""
	The wedge of the quadrilateral with forward diagonal v.

	The vertical sides of the empty rectangle spanned by v are pushed
	outward inside the strip 0 < y < v.y until each meets a connection
	of the bundle; those two connections are the wedge.  The search box
	starts at twice |v.x| and doubles until both are found.

	Raises NotBestApproximation when the rectangle of v holds a
	connection, and AmbiguousExtension when two connections share the
	x where a side stops.
	"""
	if v.y.sign() <= 0 or not v.x:
		raise ValueError("{0} is not an upward slanted vector".format(v))
	lo, hi = (v.x, 0) if v.x.sign() < 0 else (0, v.x)
	rx = abs(v.x) * 2
	while True:
		conns = [sc for sc in unfold_enumerate(q, bundle, SearchBox(rx, v.y), **kwargs)
			if sc.disp.y < v.y]
		if not rectangle_is_empty(v, conns):
			raise NotBestApproximation("rectangle of {0} in bundle {1} is not empty".format(v, bundle))
		left = [sc.disp for sc in conns if sc.disp.x < lo]
		right = [sc.disp for sc in conns if sc.disp.x > hi]
		if left and right:
			break
		rx = rx * 2
		log.debug("rectangle of %s: widening to %s", v, rx)
	return Wedge(_nearest(left, lambda u: -u.x), _nearest(right, lambda u: u.x))

def check_produced_quadrilaterals(q:Quadrangulation, policy:Policy=None, n_fwd:int=1, **kwargs) -> int:
	"""
	Rebuild quadrilaterals from their diagonals along a forward run.

	Before every elementary move, each quadrilateral of the moved
	staircase whose four sides have all been produced by earlier moves
	is compared with rectangle_extension of its diagonal.  Returns the
	number compared.  Raises QuadrilateralMismatch on a difference and
	KeaneStopBeforeLimit if the run stops early.
	"""
	start = {}
	for i in range(1, q.k + 1):
		for side in (Side.LEFT, Side.RIGHT):
			start[(i, side)] = wedge_side(q, i, side)
	produced = set()
	prev = [q]
	count = [0]

	def observe(rec, state):
		before = prev[0]
		d = before.datum
		for i in rec.cycle:
			sides = ((i, Side.LEFT), (i, Side.RIGHT), (d.perm_l(i), Side.RIGHT), (d.perm_r(i), Side.LEFT))
			if not produced.issuperset(sides):
				continue
			w = rectangle_extension(before, i, diagonal(before, i), **kwargs)
			if w != before.wedge(i):
				raise QuadrilateralMismatch("step {0}: diagonal {1} of quadrilateral {2} gives {3}, not {4}".format(
					rec.step, diagonal(before, i), i, w, before.wedge(i)))
			count[0] += 1
		for key, v in start.items():
			if wedge_side(state, *key) != v:
				produced.add(key)
		prev[0] = state

	r = Run(q, policy or GreedyPolicy(), observe)
	while r.stepno < n_fwd:
		if not r.step():
			if r.stopped:
				raise KeaneStopBeforeLimit(r.log.keane, '{0} forward steps'.format(n_fwd))
			break
	log.info("%d quadrilaterals rebuilt from their diagonals", count[0])
	return count[0]

def area_bound_check(q:Quadrangulation, bundle:int, r, policy:Policy=None, **kwargs) -> bool:
	"""
	Check that some best approximation of the bundle with |x| < r has
	height below area(q) / r.

	The run goes on until the wedge sides of the bundle have reached
	|x| < r on both sides; the lower of the two first heights is
	compared with the bound.
	"""
	r = Scalar.coerce(r)
	bound = area(q) / r
	cap = settings.get('max_run_steps', kwargs)
	first = {}

	def observe(rec, state):
		for side in (Side.LEFT, Side.RIGHT):
			v = wedge_side(state, bundle, side)
			if side not in first and abs(v.x) < r:
				first[side] = v.y

	observe(None, q)
	run = Run(q, policy or GreedyPolicy(), observe)
	while len(first) < 2:
		if run.stepno >= cap:
			raise RuntimeError("no connection with |x| < {0} after {1} steps".format(r, cap))
		if not run.step():
			if run.stopped:
				raise KeaneStopBeforeLimit(run.log.keane, 'reaching |x| < {0}'.format(r))
			raise RuntimeError("policy ended before reaching |x| < {0}".format(r))
	return min(first.values()) < bound
