"""
Random test data.  These functions generate trees of relations,
hyperelliptic combinatorial data and quadrangulations, the same as if
they had been read from files.

Every generator takes an explicit random.Random, so that one seed
determines everything drawn from it:

	>>> rng = random.Random(7)
	>>> q = random_quadrangulation(4, rng)
	>>> is_valid(q)
	True

Generators respect the following parameters, which will be read from
the global staircase settings if they are not passed in as keyword
arguments:

	random_scale (default 20)
		Numerators and denominators of random rational coordinates
		are drawn from 1..random_scale.

"""

import logging
import random
from collections import defaultdict
from fractions import Fraction

from . import settings
from .exactnum import Scalar
from .combinatorics import Perm, TreeOfRelations, datum_from_tree, CombDatum, InvalidTree
from .quadrangulation import (Quadrangulation, Vec2, Wedge, is_valid, vertical_diagonals)

log = logging.getLogger(__name__)

class GeneratorGaveUp(Exception):
	pass

_LABELS = ('l', 'r', 'd')

def _positive(rng:random.Random, scale:int) -> Scalar:
	return Scalar.coerce(Fraction(rng.randint(1, scale), rng.randint(1, scale)))

def _below(rng:random.Random, bound:Scalar, scale:int) -> Scalar:
	"""A rational strictly between 0 and bound, for a rational bound."""
	return bound * Fraction(rng.randint(1, scale - 1), scale)

def random_tree(k:int, rng:random.Random, tries:int=100) -> TreeOfRelations:
	"""
	A random tree of relations on {1..k}.

	The tree grows one vertex at a time, hanging each new vertex off a
	random earlier one by an edge of a label that vertex does not use
	yet; the vertices are then relabelled at random.
	"""
	if k < 1:
		raise ValueError("k must be positive")
	for _ in range(tries):
		used = defaultdict(set)
		edges = []
		for v in range(2, k + 1):
			options = [(u, c) for u in range(1, v) for c in _LABELS if c not in used[u]]
			u, c = rng.choice(options)
			used[u].add(c)
			used[v].add(c)
			edges.append((u, v, c))
		names = list(range(1, k + 1))
		rng.shuffle(names)
		cycles = {c: [] for c in _LABELS}
		for u, v, c in edges:
			cycles[c].append((names[u - 1], names[v - 1]))
		t = TreeOfRelations(*(Perm.from_cycles(cycles[c], k) for c in _LABELS))
		if t.is_valid():
			return t
	raise GeneratorGaveUp("no tree of relations in {0} tries".format(tries))

def random_datum(k:int, rng:random.Random) -> CombDatum:
	"""A random hyperelliptic datum, through a random tree of relations."""
	while True:
		d = datum_from_tree(random_tree(k, rng))
		if d.is_transitive():
			return d

def random_sides(t:TreeOfRelations, rng:random.Random, **kwargs):
	"""
	Random wedges solving the relations of t: each l edge {i, j} makes
	left(i) == left(j), each r edge right(i) == right(j), and each d edge
	left(i) + right(j) == left(j) + right(i).

	Walking the tree from vertex 1 leaves one free side per edge and
	both sides of vertex 1 free, k + 1 random vectors in all.
	"""
	scale = settings.get('random_scale', kwargs)
	k = t.k
	left = {1: Vec2(-_positive(rng, scale), _positive(rng, scale))}
	right = {1: Vec2(_positive(rng, scale), _positive(rng, scale))}
	adj = defaultdict(list)
	for i, j, c in t.edges():
		adj[i].append((j, c))
		adj[j].append((i, c))
	todo = [1]
	while todo:
		i = todo.pop()
		for j, c in adj[i]:
			if j in left:
				continue
			if c == 'l':
				left[j] = left[i]
				right[j] = Vec2(_positive(rng, scale), _positive(rng, scale))
			elif c == 'r':
				right[j] = right[i]
				left[j] = Vec2(-_positive(rng, scale), _positive(rng, scale))
			else:
				# right(j) - left(j) == right(i) - left(i)
				span = right[i] - left[i]
				rx = _below(rng, span.x, scale)
				ry = _positive(rng, scale)
				if span.y.sign() > 0:
					ry = ry + span.y
				right[j] = Vec2(rx, ry)
				left[j] = right[j] - span
			todo.append(j)
	return [Wedge(left[i], right[i]) for i in range(1, k + 1)]

def random_quadrangulation(k:int, rng:random.Random, tries:int=100, **kwargs) -> Quadrangulation:
	"""
	A random valid hyperelliptic quadrangulation with no vertical
	diagonal, with rational coordinates.
	"""
	for _ in range(tries):
		try:
			t = random_tree(k, rng)
			d = datum_from_tree(t)
		except InvalidTree:
			continue
		q = Quadrangulation(d, random_sides(t, rng, **kwargs))
		if is_valid(q) and not vertical_diagonals(q):
			return q
		log.debug("rejected random quadrangulation %s", d)
	raise GeneratorGaveUp("no valid quadrangulation in {0} tries".format(tries))

_SHEAR = Scalar(0, Fraction(1, 10**6), 2)

def _sheared(v:Vec2) -> Vec2:
	return Vec2(v.x + _SHEAR * v.y, v.y + _SHEAR * v.x)

def random_generic_quadrangulation(k:int, rng:random.Random, tries:int=100, **kwargs) -> Quadrangulation:
	"""
	A random valid quadrangulation with no horizontal or vertical
	saddle connection.

	The rational wedges of random_quadrangulation are sheared by
	(x, y) -> (x + e*y, y + e*x) with e = sqrt(2)/10^6.  A rational
	holonomy (x, y) goes to (x + e*y, y + e*x), which has both
	coordinates nonzero unless x = y = 0.
	"""
	for _ in range(tries):
		q = random_quadrangulation(k, rng, tries, **kwargs)
		g = Quadrangulation(q.datum, [Wedge(_sheared(w.left), _sheared(w.right)) for w in q.wedges],
			name='generic', D=2, certified='rational sides sheared by sqrt(2)/10^6')
		if is_valid(g):
			return g
	raise GeneratorGaveUp("no valid sheared quadrangulation in {0} tries".format(tries))
