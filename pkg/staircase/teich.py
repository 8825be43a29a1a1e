"""
Systoles and Lagrange values along the Teichmueller geodesic.

The geodesic scales a vector (x, y) to (e^t x, e^-t y).  Everything here
is parameterized by q = e^(4t), so that for s = e^(2t) the squared
length s x^2 + y^2 / s, multiplied by s, is the linear function
q x^2 + y^2 of q with exact coefficients in the field of the surface.
Comparing lengths at a parameter, finding where two lengths cross and
finding where one is smallest all stay exact.

	>>> min_point(Vec2(Scalar('1/2'), 3))
	(Scalar('36'), Scalar('3'))

The systole along the geodesic is realized by wedge sides of the
quadrangulations of a two sided run; systole_envelope computes which
candidate is shortest on which range of q.

"""

import logging
import math
import warnings
from dataclasses import dataclass

from .exactnum import Scalar
from .quadrangulation import Quadrangulation, Vec2, area
from .moves import Policy, GreedyPolicy, Run, KeaneStopBeforeLimit
from .diophantine import SaddleConnection, produced_connections

log = logging.getLogger(__name__)

class OnAxis(Exception):
	pass

class CoverageWarning(UserWarning):
	pass

class CorollaryPreconditionUnmet(UserWarning):
	pass

@dataclass(frozen=True)
class GeodesicParam:
	"""A point q = e^(4t) > 0 of the geodesic."""
	qparam: Scalar

	def __post_init__(self):
		object.__setattr__(self, 'qparam', Scalar.coerce(self.qparam))
		if self.qparam.sign() <= 0:
			raise ValueError("geodesic parameter must be positive")

	@property
	def t(self) -> float:
		"""The geodesic time, as a float, for display only."""
		return math.log(float(self.qparam)) / 4

@dataclass(frozen=True)
class EnvelopeSegment:
	"""realizer is the shortest candidate for q_from <= q <= q_to (None is infinity)."""
	q_from: Scalar
	q_to: Scalar
	realizer: SaddleConnection

def min_point(v:Vec2):
	"""(q where v is shortest, its smallest squared length) = (y^2/x^2, 2|xy|)."""
	if not v.x or not v.y:
		raise OnAxis("{0} lies on an axis".format(v))
	return (v.y * v.y) / (v.x * v.x), abs(v.x * v.y) * 2

def scaled_sq_len(v:Vec2, q) -> Scalar:
	"""q x^2 + y^2, the squared length at q times sqrt(q)."""
	return v.x * v.x * q + v.y * v.y

def systole_envelope(candidates, q_lo, q_hi=None):
	"""
	Lower envelope of the candidates' lengths over q_lo <= q <= q_hi.

	Each candidate contributes the line q x^2 + y^2.  Ties at a
	breakpoint go to the smaller slope, the candidate that stays
	shorter beyond it.
	"""
	cands = list(candidates)
	if not cands:
		raise ValueError("no candidates")
	for sc in cands:
		if not sc.disp.x or not sc.disp.y:
			raise OnAxis("{0} lies on an axis".format(sc.disp))
	q_lo = Scalar.coerce(q_lo)
	q_hi = None if q_hi is None else Scalar.coerce(q_hi)
	if q_hi is not None and q_hi < q_lo:
		raise ValueError("empty parameter range")
	lines = [(sc.disp.x * sc.disp.x, sc.disp.y * sc.disp.y, sc) for sc in cands]

	def at(line, q):
		return line[0] * q + line[1]

	cur = min(lines, key=lambda l: (at(l, q_lo), l[0]))
	qcur = q_lo
	out = []
	while True:
		best = None
		for line in lines:
			if line[0] < cur[0]:
				qx = (line[1] - cur[1]) / (cur[0] - line[0])
				if qx > qcur and (best is None or (qx, line[0]) < (best[0], best[1][0])):
					best = (qx, line)
		if best is None or (q_hi is not None and best[0] >= q_hi):
			out.append(EnvelopeSegment(qcur, q_hi, cur[2]))
			return out
		out.append(EnvelopeSegment(qcur, best[0], cur[2]))
		qcur, cur = best

def envelope_value(segments, q) -> Scalar:
	"""scaled_sq_len of the envelope at q."""
	q = Scalar.coerce(q)
	for seg in segments:
		if seg.q_from <= q and (seg.q_to is None or q <= seg.q_to):
			return scaled_sq_len(seg.realizer.disp, q)
	raise ValueError("{0} is outside the envelope".format(q))

@dataclass(frozen=True)
class SystoleReport:
	segments: list
	candidates: list
	covered: bool

def systole_report(q:Quadrangulation, policy:Policy=None, n_back:int=0, n_fwd:int=0,
		q_lo=1, q_hi=None) -> SystoleReport:
	"""
	Envelope over the wedge sides produced by n_back backward and n_fwd
	forward steps.

	The range counts as covered when some candidate is shortest at or
	before q_lo and some at or after q_hi; otherwise a CoverageWarning is
	issued.  A forward-only run only sees the geodesic ray q >= 1; a
	smaller q_lo issues CorollaryPreconditionUnmet.
	"""
	q_lo = Scalar.coerce(q_lo)
	cands = produced_connections(q, policy, n_fwd=n_fwd, n_back=n_back)
	segments = systole_envelope(cands, q_lo, q_hi)
	stars = [min_point(sc.disp)[0] for sc in cands]
	covered = q_hi is not None and min(stars) <= q_lo and max(stars) >= Scalar.coerce(q_hi)
	if not covered:
		warnings.warn("produced connections do not cover [{0}, {1}]".format(q_lo, q_hi),
			CoverageWarning)
	if n_back == 0 and q_lo < 1:
		warnings.warn("forward-only runs cover q >= 1, asked for q >= {0}".format(q_lo),
			CorollaryPreconditionUnmet)
	log.info("systole envelope: %d segments from %d candidates", len(segments), len(cands))
	return SystoleReport(segments, cands, covered)

def systole_realizers(q:Quadrangulation, policy:Policy=None, n_back:int=0, n_fwd:int=0,
		q_lo=1, q_hi=None):
	return systole_report(q, policy, n_back, n_fwd, q_lo, q_hi).segments

##############################################################################
# Lagrange values

@dataclass(frozen=True)
class LagrangeRow:
	step: int
	value: Scalar
	running_min: Scalar

def wedge_area_min(q:Quadrangulation) -> Scalar:
	"""Smallest |x y| over all wedge sides."""
	return min(min(abs(w.left.x * w.left.y), abs(w.right.x * w.right.y)) for w in q.wedges)

def lagrange_estimate(q:Quadrangulation, policy:Policy=None, n:int=0):
	"""
	Per step, the smallest wedge-side area |x y| divided by area(q),
	and the running minimum of those values.

	Raises KeaneStopBeforeLimit if the run stops before n steps.
	"""
	total = area(q)
	value = wedge_area_min(q) / total
	rows = [LagrangeRow(0, value, value)]
	r = Run(q, policy or GreedyPolicy())
	while r.stepno < n:
		if not r.step():
			if r.stopped:
				raise KeaneStopBeforeLimit(r.log.keane, '{0} steps'.format(n))
			break
		value = wedge_area_min(r.q) / total
		rows.append(LagrangeRow(r.stepno, value, min(value, rows[-1].running_min)))
	return rows
