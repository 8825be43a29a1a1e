"""
Permutations and combinatorial data.

A combinatorial datum is the pair of permutations (perm_l, perm_r) that
says how the k quadrilaterals of a quadrangulation are glued: the top
left side of quadrilateral i is the right wedge side of bundle
perm_l(i), and its top right side is the left wedge side of bundle
perm_r(i).  Permutations are stored in one-line notation, 1-based;
cycle notation only appears in text.

	>>> d = CombDatum(Perm([2, 3, 1]), Perm([1, 3, 2]))
	>>> d.cycles_l
	((1, 2, 3),)
	>>> act_move(d, CycleRef(Side.LEFT, (1, 2, 3))).perm_r
	Perm([3, 2, 1])
	>>> find_involution(d)
	Perm([1, 3, 2])

Composition follows function notation: ``(p * q)(i) == p(q(i))``.

Beyond single data the module holds trees of relations (three
involutions whose dual graph is a tree, certifying that a datum belongs
to a hyperelliptic component) and the graph of all data reachable by
staircase moves.

"""

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from sympy.combinatorics import Permutation

from . import settings

log = logging.getLogger(__name__)

class InvalidPerm(ValueError):
	pass

class NotACycle(Exception):
	pass

class InvalidTree(Exception):
	pass

class NotHyperelliptic(Exception):
	pass

class VertexBudgetExceeded(Exception):
	pass

class Side(enum.Enum):
	"""Left or right; names both staircase sides and wedge sides."""
	LEFT = 'l'
	RIGHT = 'r'

	@property
	def other(self):
		return Side.RIGHT if self is Side.LEFT else Side.LEFT

	@classmethod
	def parse(cls, text:str):
		t = text.strip().lower()
		if t in ('l', 'left', 'ℓ'):
			return cls.LEFT
		if t in ('r', 'right'):
			return cls.RIGHT
		raise ValueError("not a side: {0!r}".format(text))

##############################################################################
# Permutations

class Perm(object):
	"""
	A permutation of {1..k} in one-line notation.

	Perm([2, 3, 1]) sends 1 to 2, 2 to 3 and 3 to 1.
	"""
	__slots__ = ('_images',)

	def __init__(self, images):
		images = tuple(int(x) for x in images)
		if sorted(images) != list(range(1, len(images) + 1)):
			raise InvalidPerm("not a permutation of 1..{0}: {1}".format(len(images), list(images)))
		self._images = images

	@classmethod
	def identity(cls, k:int):
		return cls(range(1, k + 1))

	@classmethod
	def from_cycles(cls, cycles, k:int):
		"""Build from a list of cycles; unlisted points are fixed."""
		images = list(range(1, k + 1))
		seen = set()
		for c in cycles:
			for n, x in enumerate(c):
				if not 1 <= x <= k or x in seen:
					raise InvalidPerm("bad cycle {0} for k={1}".format(list(c), k))
				seen.add(x)
				images[x - 1] = c[(n + 1) % len(c)]
		return cls(images)

	@classmethod
	def parse(cls, text:str, k:int=None):
		"""
		Parse one-line ``[2,3,1]`` or cycle ``(1,2,3)(4)`` notation.

		Cycle notation needs k unless every point is listed.
		"""
		text = text.strip()
		if text.startswith('['):
			body = text.strip('[]').strip()
			return cls([int(x) for x in body.split(',')] if body else [])
		if text.startswith('(') or text == '':
			cycles = []
			for chunk in text.replace(' ', '').split(')'):
				chunk = chunk.lstrip('(')
				if chunk:
					cycles.append([int(x) for x in chunk.split(',')])
			if k is None:
				k = max((max(c) for c in cycles), default=0)
			return cls.from_cycles(cycles, k)
		raise InvalidPerm("cannot parse permutation {0!r}".format(text))

	@property
	def k(self) -> int:
		return len(self._images)

	@property
	def images(self):
		return self._images

	def __call__(self, i:int) -> int:
		return self._images[i - 1]

	def _sympy(self):
		return Permutation([x - 1 for x in self._images])

	@classmethod
	def _from_sympy(cls, sp):
		return cls(x + 1 for x in sp.array_form)

	def __mul__(self, other):
		"""(self * other)(i) = self(other(i))."""
		if self.k != other.k:
			raise InvalidPerm("composing permutations of different sizes")
		if not self.k:
			return self
		# sympy composes left to right
		return Perm._from_sympy(other._sympy() * self._sympy())

	def inverse(self):
		if not self.k:
			return self
		return Perm._from_sympy(~self._sympy())

	def cycles(self):
		"""
		Disjoint cycles covering {1..k}, fixed points included.

		Each cycle starts at its minimum and the cycles are sorted by
		that minimum.
		"""
		if self.k == 0:
			return ()
		sp = self._sympy()
		out = []
		for c in sp.full_cyclic_form:
			c = [x + 1 for x in c]
			n = c.index(min(c))
			out.append(tuple(c[n:] + c[:n]))
		return tuple(sorted(out))

	def is_identity(self) -> bool:
		return all(x == i for i, x in enumerate(self._images, 1))

	def is_involution(self) -> bool:
		return all(self(x) == i for i, x in enumerate(self._images, 1))

	def is_kcycle(self) -> bool:
		return len(self.cycles()) == 1

	def order(self) -> int:
		return self._sympy().order() if self.k else 1

	def cycle_text(self) -> str:
		"""Cycle notation without fixed points; the identity is ``()``."""
		parts = ['(' + ' '.join(str(x) for x in c) + ')' for c in self.cycles() if len(c) > 1]
		return ''.join(parts) or '()'

	def __eq__(self, other):
		if not isinstance(other, Perm):
			return NotImplemented
		return self._images == other._images

	def __hash__(self):
		return hash(self._images)

	def __repr__(self):
		return 'Perm({0})'.format(list(self._images))

	def __str__(self):
		return '[' + ','.join(str(x) for x in self._images) + ']'

def cycles(p:Perm):
	"""Cycle decomposition of p; see Perm.cycles."""
	return p.cycles()

##############################################################################
# Data and cycle references

@dataclass(frozen=True)
class CombDatum:
	"""The gluing permutations (perm_l, perm_r) of a quadrangulation."""
	perm_l: Perm
	perm_r: Perm

	def __post_init__(self):
		if self.perm_l.k != self.perm_r.k:
			raise InvalidPerm("perm_l and perm_r have different sizes")
		if self.perm_l.k < 1:
			raise InvalidPerm("a datum needs k >= 1")

	@property
	def k(self) -> int:
		return self.perm_l.k

	def perm(self, side:Side) -> Perm:
		return self.perm_l if side is Side.LEFT else self.perm_r

	@cached_property
	def cycles_l(self):
		return self.perm_l.cycles()

	@cached_property
	def cycles_r(self):
		return self.perm_r.cycles()

	def cycle_refs(self):
		"""Every cycle of both sides, left ones first."""
		return [CycleRef(Side.LEFT, c) for c in self.cycles_l] + \
			[CycleRef(Side.RIGHT, c) for c in self.cycles_r]

	def is_transitive(self) -> bool:
		seen = {1}
		todo = [1]
		while todo:
			i = todo.pop()
			for j in (self.perm_l(i), self.perm_r(i),
					self.perm_l.inverse()(i), self.perm_r.inverse()(i)):
				if j not in seen:
					seen.add(j)
					todo.append(j)
		return len(seen) == self.k

	def __str__(self):
		return 'k={0}; perm_l={1}; perm_r={2}'.format(self.k, self.perm_l, self.perm_r)

def text_datum(d:CombDatum) -> str:
	return str(d)

def parse_datum(text:str) -> CombDatum:
	"""Parse ``k=3; perm_l=[2,3,1]; perm_r=[1,3,2]``."""
	fields = {}
	for item in text.split(';'):
		if not item.strip():
			continue
		key, sep, value = item.partition('=')
		if not sep:
			raise ValueError("expected key=value, got {0!r}".format(item))
		fields[key.strip()] = value.strip()
	try:
		k = int(fields['k'])
		pl = Perm.parse(fields['perm_l'], k)
		pr = Perm.parse(fields['perm_r'], k)
	except KeyError as e:
		raise ValueError("datum is missing field {0}".format(e))
	if pl.k != k or pr.k != k:
		raise InvalidPerm("permutation length does not match k={0}".format(k))
	return CombDatum(pl, pr)

@dataclass(frozen=True, eq=False)
class CycleRef:
	"""
	A cycle of perm_l (side LEFT) or perm_r (side RIGHT).

	Indices are rotated to start at their minimum.  Two references are
	equal when they have the same side and the same set of indices.
	"""
	side: Side
	indices: tuple

	def __post_init__(self):
		ix = tuple(int(i) for i in self.indices)
		if not ix or len(set(ix)) != len(ix):
			raise NotACycle("empty or repeated cycle {0}".format(list(ix)))
		n = ix.index(min(ix))
		object.__setattr__(self, 'indices', ix[n:] + ix[:n])

	def check(self, d:CombDatum):
		"""Raise NotACycle unless this names a cycle of d."""
		p = d.perm(self.side)
		if any(not 1 <= i <= d.k for i in self.indices):
			raise NotACycle("{0} is out of range for k={1}".format(self, d.k))
		orbit = _orbit(p, self.indices[0])
		if set(orbit) != set(self.indices):
			raise NotACycle("{0} is not a cycle of perm_{1}={2}".format(self, self.side.value, p))
		return self

	def __contains__(self, i):
		return i in self.indices

	def __iter__(self):
		return iter(self.indices)

	def __len__(self):
		return len(self.indices)

	def __eq__(self, other):
		if not isinstance(other, CycleRef):
			return NotImplemented
		return self.side is other.side and set(self.indices) == set(other.indices)

	def __hash__(self):
		return hash((self.side, frozenset(self.indices)))

	def __str__(self):
		return '{0}{{{1}}}'.format(self.side.name[0], ','.join(str(i) for i in self.indices))

	def __repr__(self):
		return 'CycleRef({0}, {1})'.format(self.side, self.indices)

def _orbit(p:Perm, start:int):
	out = [start]
	x = p(start)
	while x != start:
		out.append(x)
		x = p(x)
	return tuple(out)

##############################################################################
# Moves and rotation on data

def act_move(d:CombDatum, c:CycleRef) -> CombDatum:
	"""
	The datum after a staircase move on cycle c.

	Right: perm_l(i) becomes perm_l(perm_r(i)) for i in c.
	Left: perm_r(i) becomes perm_r(perm_l(i)) for i in c.
	"""
	c.check(d)
	pl, pr = d.perm_l, d.perm_r
	if c.side is Side.RIGHT:
		images = list(pl.images)
		for i in c:
			images[i - 1] = pl(pr(i))
		return CombDatum(Perm(images), pr)
	else:
		images = list(pr.images)
		for i in c:
			images[i - 1] = pr(pl(i))
		return CombDatum(pl, Perm(images))

def rotate_datum(d:CombDatum) -> CombDatum:
	"""Datum of the quarter-turned quadrangulation."""
	li = d.perm_l.inverse()
	return CombDatum(d.perm_l * d.perm_r * li, li)

def rotate_inverse_datum(d:CombDatum) -> CombDatum:
	ri = d.perm_r.inverse()
	return CombDatum(ri, d.perm_r * d.perm_l * ri)

def cycle_prime(d:CombDatum, c:CycleRef) -> CycleRef:
	"""
	The staircase of rotate_datum(d) matching staircase c of d.

	A left cycle keeps its indices and becomes a right cycle; a right
	cycle c becomes the left cycle perm_l(c).
	"""
	c.check(d)
	rd = rotate_datum(d)
	if c.side is Side.LEFT:
		start, side = c.indices[0], Side.RIGHT
	else:
		start, side = d.perm_l(c.indices[0]), Side.LEFT
	return CycleRef(side, _orbit(rd.perm(side), start))

def uncycle_prime(rd:CombDatum, c:CycleRef) -> CycleRef:
	"""
	Inverse of cycle_prime, from the rotated datum alone.

	A right cycle of rd comes from the left cycle with the same indices;
	a left cycle of rd comes from the right cycle rd.perm_r(c).
	"""
	c.check(rd)
	d = rotate_inverse_datum(rd)
	if c.side is Side.RIGHT:
		start, side = c.indices[0], Side.LEFT
	else:
		start, side = rd.perm_r(c.indices[0]), Side.RIGHT
	return CycleRef(side, _orbit(d.perm(side), start))

##############################################################################
# Trees of relations and the hyperelliptic involution

@dataclass(frozen=True)
class TreeOfRelations:
	"""
	Three involutions labelling the edges of a tree on {1..k}.

	Each non-fixed pair {i, sigma(i)} of sigma_l, sigma_r or sigma_d is an
	edge with that label.
	"""
	sigma_l: Perm
	sigma_r: Perm
	sigma_d: Perm

	@property
	def k(self) -> int:
		return self.sigma_d.k

	def edges(self):
		"""(i, j, label) for every edge, i < j."""
		out = []
		for label, s in (('l', self.sigma_l), ('r', self.sigma_r), ('d', self.sigma_d)):
			for i in range(1, s.k + 1):
				if i < s(i):
					out.append((i, s(i), label))
		return out

	def problems(self):
		"""Reasons this is not a valid tree of relations; empty when valid."""
		out = []
		k = self.k
		sigmas = (('sigma_l', self.sigma_l), ('sigma_r', self.sigma_r), ('sigma_d', self.sigma_d))
		for name, s in sigmas:
			if s.k != k:
				out.append('{0} has size {1}, expected {2}'.format(name, s.k, k))
			elif not s.is_involution():
				out.append('{0} is not an involution'.format(name))
		if out:
			return out
		edges = self.edges()
		if len(edges) != k - 1:
			out.append('dual graph has {0} edges, a tree on {1} vertices needs {2}'.format(
				len(edges), k, k - 1))
		if not _is_forest(k, edges):
			out.append('dual graph has a cycle')
		if not out and not (self.sigma_l * self.sigma_r * self.sigma_d).is_kcycle():
			out.append('sigma_l sigma_r sigma_d is not a k-cycle')
		return out

	def is_valid(self) -> bool:
		return not self.problems()

def _is_forest(k, edges) -> bool:
	parent = list(range(k + 1))
	def root(x):
		while parent[x] != x:
			parent[x] = parent[parent[x]]
			x = parent[x]
		return x
	for i, j, _ in edges:
		ri, rj = root(i), root(j)
		if ri == rj:
			return False
		parent[ri] = rj
	return True

def validate_tree(t:TreeOfRelations):
	return t.problems()

def datum_from_tree(t:TreeOfRelations) -> CombDatum:
	"""perm_l = sigma_r sigma_d and perm_r = sigma_l sigma_d."""
	problems = t.problems()
	if problems:
		raise InvalidTree('; '.join(problems))
	return CombDatum(t.sigma_r * t.sigma_d, t.sigma_l * t.sigma_d)

def tree_of(d:CombDatum, iota:Perm) -> TreeOfRelations:
	"""The tree of relations induced by an involution iota."""
	return TreeOfRelations(d.perm_r * iota, d.perm_l * iota, iota)

def _propagate(d:CombDatum, first:int):
	# iota conjugates each perm to its inverse, so iota(1) fixes the rest.
	pl, pr = d.perm_l, d.perm_r
	pli, pri = pl.inverse(), pr.inverse()
	iota = {1: first}
	todo = [1]
	while todo:
		i = todo.pop()
		j = iota[i]
		for src, dst in ((pl(i), pli(j)), (pr(i), pri(j)), (pli(i), pl(j)), (pri(i), pr(j))):
			if src in iota:
				if iota[src] != dst:
					return None
			else:
				iota[src] = dst
				todo.append(src)
	if len(iota) != d.k:
		return None
	try:
		return Perm(iota[i] for i in range(1, d.k + 1))
	except InvalidPerm:
		return None

def find_involution(d:CombDatum):
	"""
	The hyperelliptic involution of d, or None.

	The returned iota is an involution with iota perm iota = perm^-1 for
	both perms, and (perm_r iota, perm_l iota, iota) is a valid tree of
	relations.  The relations determine iota from iota(1), so only k
	candidates are tried.
	"""
	for first in range(1, d.k + 1):
		iota = _propagate(d, first)
		if iota is None or not iota.is_involution():
			continue
		if tree_of(d, iota).is_valid():
			return iota
	return None

def invariant_cycle(d:CombDatum, iota:Perm) -> Perm:
	"""perm_l perm_r iota, the k-cycle conserved along staircase moves."""
	return d.perm_l * d.perm_r * iota

##############################################################################
# The graph of data

@dataclass(frozen=True)
class GraphG:
	"""Data reachable by staircase moves, in breadth-first order."""
	vertices: tuple
	edges: tuple
	invariants: dict = field(compare=False)

	def invariant_is_constant(self) -> bool:
		return len(set(self.invariants.values())) == 1

	def self_loops(self):
		return [e for e in self.edges if e[0] == e[2]]

	def to_dot(self) -> str:
		"""Graphviz text; vertices are numbered in BFS order."""
		number = {v: n for n, v in enumerate(self.vertices, 1)}
		lines = ['digraph G {']
		for v in self.vertices:
			lines.append('\tv{0} [label="{1}\\n{2}"];'.format(number[v], v.perm_l, v.perm_r))
		for src, c, dst in self.edges:
			lines.append('\tv{0} -> v{1} [label="{2}"];'.format(number[src], number[dst], c))
		lines.append('}')
		return '\n'.join(lines) + '\n'

def enumerate_graph(d:CombDatum, max_vertices:int=None, **kwargs) -> GraphG:
	"""
	Breadth-first closure of d under staircase moves on every cycle.

	Every vertex is checked to be hyperelliptic and its invariant cycle
	is recorded.  More than max_vertices vertices (default from the
	vertex_budget setting) raises VertexBudgetExceeded.
	"""
	if max_vertices is None:
		max_vertices = settings.get('vertex_budget', kwargs)
	order = [d]
	seen = {d}
	edges = []
	invariants = {}
	todo = deque([d])
	while todo:
		v = todo.popleft()
		iota = find_involution(v)
		if iota is None:
			raise NotHyperelliptic(str(v))
		invariants[v] = invariant_cycle(v, iota)
		for c in v.cycle_refs():
			w = act_move(v, c)
			edges.append((v, c, w))
			if w not in seen:
				if len(order) >= max_vertices:
					raise VertexBudgetExceeded("more than {0} vertices".format(max_vertices))
				seen.add(w)
				order.append(w)
				todo.append(w)
	log.info("graph from %s: %d vertices, %d edges", d, len(order), len(edges))
	return GraphG(tuple(order), tuple(edges), invariants)
