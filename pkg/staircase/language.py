"""
Bispecial words of the vertical cutting-sequence language.

Along a run, the cutting sequence (with respect to the starting
quadrangulation) of the diagonal of every quadrilateral is a bispecial
word, and every bispecial word shows up this way.  The words are kept
by a recursion on three arrays of words L, R and D, started by
lrd_init and advanced by lrd_step together with every staircase move:

	left staircase c, for i in c:
		R[i] <- R[i] + L[perm_r(i)]
		D[i] <- D[i] + L[perm_r(perm_l(i))]
	right staircase c, for i in c:
		L[i] <- L[i] + R[perm_l(i)]
		D[i] <- D[i] + R[perm_l(perm_r(i))]

with the permutations taken before the move.

	>>> s = lrd_init(load_fixture('h2').datum)
	>>> s = lrd_step(s, CycleRef(Side.LEFT, (1, 2, 3)))
	>>> word_text(s.D[0])
	'2r'

diagonal_word_via_substitution computes the same words a second way,
from the cutting sequences of the wedge sides, and trace_segment gives a
third; the test suite holds all three to exact agreement.

"""

import logging
from dataclasses import dataclass

from . import settings
from .combinatorics import CombDatum, CycleRef, Side, act_move
from .quadrangulation import Quadrangulation, diagonal
from .moves import (Policy, Run, Direction, KeaneStopBeforeLimit, MoveLog, apply_move)
from .iet import Label, iet_of, generic_point, cutting_sequence, trace_segment, word_text

log = logging.getLogger(__name__)

class InsufficientSample(Exception):
	def __init__(self, word, occurrences, needed):
		self.word = word
		self.occurrences = occurrences
		super(InsufficientSample, self).__init__(
			"{0!r} seen {1} times in the sample, {2} needed".format(
				word_text(word), occurrences, needed)
		)

class LanguageMismatch(Exception):
	pass

@dataclass(frozen=True)
class LRDState:
	"""The word arrays after `step` elementary moves; index i at i-1."""
	L: tuple
	R: tuple
	D: tuple
	step: int
	datum: CombDatum

def lrd_init(d:CombDatum) -> LRDState:
	"""L[i] = (perm_r^-1(i), r), R[i] = (perm_l^-1(i), l), D[i] empty."""
	li, ri = d.perm_l.inverse(), d.perm_r.inverse()
	L = tuple((Label(ri(i), Side.RIGHT),) for i in range(1, d.k + 1))
	R = tuple((Label(li(i), Side.LEFT),) for i in range(1, d.k + 1))
	D = tuple(() for i in range(d.k))
	return LRDState(L, R, D, 0, d)

def lrd_step(s:LRDState, c:CycleRef) -> LRDState:
	"""Advance the arrays over the move of staircase c."""
	c.check(s.datum)
	pl, pr = s.datum.perm_l, s.datum.perm_r
	L, R, D = list(s.L), list(s.R), list(s.D)
	for i in c:
		if c.side is Side.LEFT:
			R[i - 1] = s.R[i - 1] + s.L[pr(i) - 1]
			D[i - 1] = s.D[i - 1] + s.L[pr(pl(i)) - 1]
		else:
			L[i - 1] = s.L[i - 1] + s.R[pl(i) - 1]
			D[i - 1] = s.D[i - 1] + s.R[pl(pr(i)) - 1]
	return LRDState(tuple(L), tuple(R), tuple(D), s.step + 1, act_move(s.datum, c))

##############################################################################
# Substitution

def _lemma_word(q0:Quadrangulation, q:Quadrangulation, W, i:int):
	m = q.datum.perm_r(i)
	j = q0.datum.perm_r.inverse()(m)
	word = ()
	if q.wedge(i).right != q0.wedge(i).right:
		word += W.get((i, Side.RIGHT), ()) + (Label(j, Side.RIGHT),)
	if q.wedge(m).left != q0.wedge(m).left:
		word += (Label(m, Side.LEFT),) + W.get((m, Side.LEFT), ())
	return word

def side_words(q0:Quadrangulation, movelog:MoveLog):
	"""
	Replay movelog from q0, keeping the cutting sequence of every wedge
	side that has been replaced.  Returns (final state, words by
	(index, side)); sides missing from the dict are sides of q0.
	"""
	W = {}
	q = q0
	for rec in movelog:
		if rec.direction is not Direction.FORWARD:
			raise ValueError("substitution replay needs a forward log")
		moved = Side.RIGHT if rec.cycle.side is Side.LEFT else Side.LEFT
		new = {i: _lemma_word(q0, q, W, i) for i in rec.cycle}
		for i, word in new.items():
			W[(i, moved)] = word
		q = apply_move(q, rec.cycle)
	return q, W

def diagonal_word_via_substitution(q0:Quadrangulation, movelog:MoveLog, i:int):
	"""The cutting sequence of the final diagonal of q_i, from side words."""
	q, W = side_words(q0, movelog)
	return _lemma_word(q0, q, W, i)

##############################################################################
# Bispecial words along a run

@dataclass(frozen=True)
class Bispecial:
	step: int
	bundle: int
	word: tuple

def bispecials(q:Quadrangulation, policy:Policy, n:int, trace:bool=False, **kwargs):
	"""
	All distinct diagonal words met in n steps of policy, in order of
	first appearance, starting with the empty word at step 0.

	With trace set every word is also traced on q and a disagreement
	raises LanguageMismatch.  Raises KeaneStopBeforeLimit if the run
	stops before n steps.
	"""
	state = [lrd_init(q.datum)]
	out = {(): Bispecial(0, 1, ())}

	def observe(rec, current):
		s = lrd_step(state[0], rec.cycle)
		state[0] = s
		for i in rec.cycle:
			word = s.D[i - 1]
			if trace:
				traced = trace_segment(q, i, diagonal(current, i), **kwargs)
				if traced != word:
					raise LanguageMismatch("step {0} bundle {1}: recursion {2!r}, trace {3!r}".format(
						rec.step, i, word_text(word), word_text(traced)))
			if word not in out:
				out[word] = Bispecial(rec.step, i, word)

	r = Run(q, policy, observe)
	while r.stepno < n:
		if not r.step():
			if r.stopped:
				raise KeaneStopBeforeLimit(r.log.keane, '{0} steps'.format(n))
			break
	log.info("%d bispecial words in %d steps", len(out), r.stepno)
	return list(out.values())

##############################################################################
# Sampling check

@dataclass(frozen=True)
class BispecialReport:
	"""
	Extensions of `word` seen in a sampled cutting sequence.

	passed is true when two left letters, two right letters and exactly
	three of the four two-sided extensions were seen.
	"""
	word: tuple
	occurrences: int
	left: frozenset
	right: frozenset
	pairs: frozenset
	passed: bool

def sample_cutting_sequence(q:Quadrangulation, sample_len:int=None, seed=None, **kwargs):
	"""The cutting sequence of a seeded generic point, sample_len letters long."""
	n = settings.get('sample_len', kwargs) if sample_len is None else sample_len
	T = iet_of(q)
	return cutting_sequence(T, generic_point(T, seed, **kwargs), n)

def verify_bispecial(q:Quadrangulation, word, sample_len:int=None, seed=None, sequence=None,
		**kwargs) -> BispecialReport:
	"""
	Sample a vertical cutting sequence of q and look at how word extends.

	A sequence from sample_cutting_sequence can be passed in to check
	many words against one sample.  The empty word passes without
	sampling.  Fewer than min_occurrences interior occurrences raise
	InsufficientSample.
	"""
	word = tuple(word)
	if not word:
		return BispecialReport(word, 0, frozenset(), frozenset(), frozenset(), True)
	needed = settings.get('min_occurrences', kwargs)
	seq = sequence if sequence is not None else sample_cutting_sequence(q, sample_len, seed, **kwargs)
	k = len(word)
	first = word[0]
	left, right, pairs = set(), set(), set()
	count = 0
	for p in range(1, len(seq) - k):
		if seq[p] == first and seq[p:p + k] == word:
			count += 1
			a, b = seq[p - 1], seq[p + k]
			left.add(a)
			right.add(b)
			pairs.add((a, b))
	if count < needed:
		raise InsufficientSample(word, count, needed)
	passed = len(left) == 2 and len(right) == 2 and len(pairs) == 3
	return BispecialReport(word, count, frozenset(left), frozenset(right), frozenset(pairs), passed)
