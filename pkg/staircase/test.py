"""
Unit tests for the staircase package.
"""

import unittest
import contextlib
import dataclasses
import io
import os
import random
import shutil
import tempfile
import warnings
from fractions import Fraction

from . import *
from .exactnum import (Scalar, MixedDiscriminant, NonSquareFreeD, ScalarSyntaxError,
	check_discriminant, format_scalar, parse_scalar, sign)
from .combinatorics import (Perm, InvalidPerm, NotACycle, InvalidTree, Side, CombDatum,
	CycleRef, TreeOfRelations, act_move, rotate_datum, rotate_inverse_datum, cycle_prime,
	uncycle_prime, datum_from_tree, tree_of, validate_tree, find_involution,
	invariant_cycle, enumerate_graph, parse_datum, text_datum, VertexBudgetExceeded)
from .quadrangulation import (Vec2, Wedge, Slant, Quadrangulation, QuadSyntaxError,
	ValidationFailed, validate, is_valid, diagonal, backward_diagonal, slant, quad_area,
	area, width, vertical_diagonals, serialize, deserialize, make_quadrangulation)
from .moves import (NotWellSlanted, VerticalDiagonal, NotBackwardApplicable,
	KeaneStopBeforeLimit, Direction, MoveLog, MoveLogSyntaxError, GreedyPolicy,
	LeftRightPolicy, RandomPolicy, ScriptPolicy, well_slanted_staircases, move_matrix,
	matrix_action, apply_move, rotate, rotate_inverse, backward_staircases, backward_move,
	step_greedy, step_backward, parse_script, make_policy, run, run_backward, diagonal_change)
from .iet import (Label, IETPoint, BipartiteIET, HitsSingularity, NotASaddleConnection,
	HitsSingularityEarly, OnEdge, iet_of, iet_apply, suspend, cutting_sequence,
	trace_segment, word_text, parse_word, generic_point, vertical_crossings)
from .diophantine import (SaddleConnection, SearchBox, best_approx_stream,
	produced_connections, unfold_enumerate, filter_best_approximations,
	rectangle_is_empty, is_best_approximation, area_bound_check, rectangle_extension,
	check_produced_quadrilaterals, NotBestApproximation)
from .language import (InsufficientSample, lrd_init, lrd_step, bispecials,
	diagonal_word_via_substitution, verify_bispecial, sample_cutting_sequence)
from .teich import (OnAxis, CoverageWarning, CorollaryPreconditionUnmet, GeodesicParam,
	min_point, scaled_sq_len, systole_envelope, envelope_value, systole_report,
	systole_realizers, wedge_area_min, lagrange_estimate)
from .input import QuadInput, MoveLogInput, load_fixture, fixture_names
from .output import QuadOutput, MoveLogOutput, TsvOutput, DotOutput, SvgOutput
from .generator import (random_tree, random_datum, random_quadrangulation,
	random_generic_quadrangulation)
from .cli import main

R2 = Scalar.sqrt(2)
L = Side.LEFT
R = Side.RIGHT

def F(text):
	return Scalar(Fraction(text))

def sides_of(q):
	out = []
	for w in q.wedges:
		out.extend((w.left, w.right))
	return out

class ExactnumTest(unittest.TestCase):
	"""Test exact scalar arithmetic, signs and the text grammar."""

	def setUp(self):
		settings.reset()

	def test_Arithmetic(self):
		self.assertEqual(Scalar('1/2') + Scalar('1/3'), Scalar('5/6'))
		self.assertEqual(R2 * R2, 2)
		self.assertEqual(1 / (R2 - 1), R2 + 1)
		self.assertEqual((R2 + 1) * (R2 - 1), 1)
		self.assertEqual((R2 - 1).conjugate(), -R2 - 1)

	def test_Sign(self):
		self.assertEqual((R2 - 1).sign(), 1)
		self.assertEqual(Scalar.parse('3-2*sqrt(2)').sign(), 1)
		self.assertEqual(Scalar.parse('1-1*sqrt(2)').sign(), -1)
		self.assertEqual(Scalar(0).sign(), 0)
		self.assertTrue(R2 * 3 - 4 > 0)
		self.assertTrue(R2 * 3 - 5 < 0)
		self.assertEqual(abs(Scalar.parse('1-1*sqrt(2)')), R2 - 1)

	def test_Text(self):
		self.assertEqual(format_scalar(R2), '0+1*sqrt(2)')
		self.assertEqual(format_scalar(R2 - 1), '-1+1*sqrt(2)')
		self.assertEqual(format_scalar(Scalar('-1/2')), '-1/2')
		self.assertEqual(parse_scalar('-1+1*sqrt(2)'), R2 - 1)
		self.assertEqual(parse_scalar(format_scalar(R2 * 3 - 4)), R2 * 3 - 4)
		self.assertRaises(ScalarSyntaxError, parse_scalar, 'sqrt(2)')
		self.assertRaises(ScalarSyntaxError, parse_scalar, '1/0')

	def test_RandomText(self):
		rng = random.Random(11)
		for _ in range(1000):
			D = rng.choice((0, 2, 3, 5, 6, 7))
			b = Fraction(rng.randint(-50, 50), rng.randint(1, 50)) if D else 0
			x = Scalar(Fraction(rng.randint(-50, 50), rng.randint(1, 50)), b, D)
			self.assertEqual(parse_scalar(format_scalar(x)), x)
			self.assertEqual(sign(x), -sign(-x))
			self.assertEqual(sign(x) == 0, not x)

	def test_Discriminants(self):
		self.assertEqual(check_discriminant(0), 0)
		self.assertEqual(check_discriminant(5), 5)
		self.assertRaises(NonSquareFreeD, check_discriminant, 1)
		self.assertRaises(NonSquareFreeD, check_discriminant, 12)
		self.assertRaises(MixedDiscriminant, lambda: R2 + Scalar.sqrt(3))
		# rationals mix with any field
		self.assertEqual(Scalar.sqrt(3) + Scalar('1/2') - Scalar('1/2'), Scalar.sqrt(3))

	def test_Floats(self):
		self.assertAlmostEqual(float(R2 - 1), 0.41421356, places=7)
		self.assertEqual(str(R2.approx(10)), '1.414213562')

class CombinatoricsTest(unittest.TestCase):
	"""Test permutations, data, staircase moves on data and the graph."""

	def setUp(self):
		settings.reset()
		self.h2 = CombDatum(Perm([2, 3, 1]), Perm([1, 3, 2]))
		self.chyp3 = CombDatum(Perm([3, 2, 1]), Perm([2, 1, 3]))

	def test_Perm(self):
		p = Perm([2, 3, 1])
		self.assertEqual(p(1), 2)
		self.assertEqual(p.inverse(), Perm([3, 1, 2]))
		self.assertEqual((p * Perm([1, 3, 2]))(2), p(3))
		self.assertEqual(p.cycles(), ((1, 2, 3),))
		self.assertEqual(Perm([1, 3, 2]).cycles(), ((1,), (2, 3)))
		self.assertEqual(p.cycle_text(), '(1 2 3)')
		self.assertEqual(Perm.identity(3).cycle_text(), '()')
		self.assertEqual(p.order(), 3)
		self.assertEqual(Perm([2, 1, 3]).order(), 2)
		self.assertRaises(InvalidPerm, Perm, [1, 1])

	def test_PermParse(self):
		self.assertEqual(Perm.parse('[2,3,1]'), Perm([2, 3, 1]))
		self.assertEqual(Perm.parse('(1,2,3)'), Perm([2, 3, 1]))
		self.assertEqual(Perm.parse('(1,3)', 3), Perm([3, 2, 1]))
		self.assertRaises(InvalidPerm, Perm.parse, '{1,2}')

	def test_Datum(self):
		d = parse_datum(text_datum(self.h2))
		self.assertEqual(d, self.h2)
		self.assertEqual(parse_datum('k=3; perm_l=(1,3); perm_r=(1,2)'), self.chyp3)
		self.assertTrue(self.h2.is_transitive())
		self.assertFalse(CombDatum(Perm([2, 1, 3]), Perm([2, 1, 3])).is_transitive())
		self.assertEqual(self.h2.cycle_refs(), [CycleRef(L, (1, 2, 3)),
			CycleRef(R, (1,)), CycleRef(R, (2, 3))])

	def test_CycleRef(self):
		c = CycleRef(L, (3, 1, 2))
		self.assertEqual(c.indices, (1, 2, 3))
		self.assertEqual(c, CycleRef(L, (1, 3, 2)))
		self.assertNotEqual(c, CycleRef(R, (1, 2, 3)))
		self.assertRaises(NotACycle, CycleRef(R, (1, 2)).check, self.h2)
		self.assertRaises(NotACycle, CycleRef, L, ())

	def test_ActMove(self):
		d = act_move(self.h2, CycleRef(L, (1, 2, 3)))
		self.assertEqual(d.perm_l, self.h2.perm_l)
		self.assertEqual(d.perm_r, Perm([3, 2, 1]))
		d = act_move(self.h2, CycleRef(R, (2, 3)))
		self.assertEqual(d.perm_r, self.h2.perm_r)
		self.assertEqual(d.perm_l, Perm([2, 1, 3]))

	def test_Rotation(self):
		rd = rotate_datum(self.h2)
		self.assertEqual(rd.perm_l, Perm([3, 2, 1]))
		self.assertEqual(rd.perm_r, Perm([3, 1, 2]))
		self.assertEqual(rotate_inverse_datum(rd), self.h2)
		c = CycleRef(R, (2, 3))
		cp = cycle_prime(self.h2, c)
		self.assertEqual(cp, CycleRef(L, (1, 3)))
		self.assertEqual(uncycle_prime(rd, cp), c)
		cp = cycle_prime(self.h2, CycleRef(L, (1, 2, 3)))
		self.assertEqual(cp, CycleRef(R, (1, 2, 3)))
		self.assertEqual(uncycle_prime(rd, cp), CycleRef(L, (1, 2, 3)))

	def test_Involution(self):
		iota = find_involution(self.h2)
		self.assertEqual(iota, Perm([1, 3, 2]))
		self.assertEqual(iota.cycle_text(), '(2 3)')
		t = tree_of(self.h2, iota)
		self.assertEqual(validate_tree(t), [])
		self.assertEqual(datum_from_tree(t), self.h2)
		self.assertEqual(invariant_cycle(self.h2, iota), Perm([2, 3, 1]))
		e = Perm.identity(3)
		self.assertIsNone(find_involution(CombDatum(e, e)))

	def test_PermAlgebra(self):
		rng = random.Random(3)
		for _ in range(100):
			k = rng.randint(1, 8)
			a = Perm(rng.sample(range(1, k + 1), k))
			b = Perm(rng.sample(range(1, k + 1), k))
			for i in range(1, k + 1):
				self.assertEqual((a * b)(i), a(b(i)))
				self.assertEqual(a.inverse()(a(i)), i)
		self.assertEqual(Perm([]) * Perm([]), Perm([]))
		self.assertEqual(Perm([]).inverse(), Perm([]))
		self.assertRaises(InvalidPerm, lambda: Perm([1]) * Perm([2, 1]))

	def test_ConservedCycle(self):
		# perm_r iota perm_l changes from vertex to vertex, the invariant does not
		iota = find_involution(self.chyp3)
		self.assertEqual(iota, Perm.identity(3))
		self.assertEqual(self.chyp3.perm_r * iota * self.chyp3.perm_l, Perm([3, 1, 2]))
		self.assertEqual(invariant_cycle(self.chyp3, iota), Perm([2, 3, 1]))
		d = act_move(self.chyp3, CycleRef(R, (1, 2)))
		self.assertEqual(d, CombDatum(Perm([2, 3, 1]), Perm([2, 1, 3])))
		iota = find_involution(d)
		self.assertEqual(iota, Perm([2, 1, 3]))
		self.assertEqual(d.perm_r * iota * d.perm_l, Perm([2, 3, 1]))
		self.assertEqual(invariant_cycle(d, iota), Perm([2, 3, 1]))

	def test_InvolutionFixesCycles(self):
		rng = random.Random(5)
		data = [self.h2, self.chyp3] + [random_datum(2 + n % 6, rng) for n in range(50)]
		for d in data:
			iota = find_involution(d)
			for c in d.perm_l.cycles() + d.perm_r.cycles():
				self.assertEqual({iota(i) for i in c}, set(c), str(d))

	def test_RandomRotation(self):
		rng = random.Random(8)
		for n in range(100):
			d = random_datum(1 + n % 7, rng)
			self.assertEqual(rotate_inverse_datum(rotate_datum(d)), d)
			self.assertEqual(rotate_datum(rotate_inverse_datum(d)), d)

	def test_BadTree(self):
		e = Perm.identity(3)
		t = TreeOfRelations(Perm([2, 3, 1]), e, e)
		self.assertTrue(validate_tree(t))
		self.assertRaises(InvalidTree, datum_from_tree, t)
		# too few edges for a tree on three vertices
		t = TreeOfRelations(Perm([2, 1, 3]), e, e)
		self.assertFalse(t.is_valid())

	def test_GraphChyp3(self):
		g = enumerate_graph(self.chyp3)
		self.assertEqual(len(g.vertices), 9)
		self.assertEqual(len(g.edges), 30)
		self.assertEqual(len(g.self_loops()), 12)
		self.assertTrue(g.invariant_is_constant())
		self.assertEqual(set(g.invariants.values()), {Perm([2, 3, 1])})
		for src, c, dst in g.edges:
			self.assertEqual(act_move(src, c), dst)
		self.assertTrue(g.to_dot().startswith('digraph G {'))

	def test_GraphFromAnotherVertex(self):
		g = enumerate_graph(self.chyp3)
		h = enumerate_graph(g.vertices[-1])
		self.assertNotEqual(h.vertices[0], self.chyp3)
		self.assertEqual(set(h.vertices), set(g.vertices))
		self.assertEqual(set(h.edges), set(g.edges))

	def test_GraphTorus(self):
		g = enumerate_graph(CombDatum(Perm([1]), Perm([1])))
		self.assertEqual(len(g.vertices), 1)
		self.assertEqual(len(g.edges), 2)
		self.assertEqual(len(g.self_loops()), 2)

	def test_GraphBudget(self):
		self.assertRaises(VertexBudgetExceeded, enumerate_graph, self.chyp3, max_vertices=4)
		settings.set(vertex_budget=4)
		self.assertRaises(VertexBudgetExceeded, enumerate_graph, self.chyp3)

class QuadrangulationTest(unittest.TestCase):
	"""Test validation, geometry and the .quad format on the fixtures."""

	def setUp(self):
		settings.reset()
		self.h2 = load_fixture('h2')
		self.rtt = load_fixture('root_two_torus')

	def test_Fixtures(self):
		for name in ('h2', 'h2_root_two', 'root_two_torus', 'square_torus', 'chyp3_seed',
				'h000_corrected', 'h4_corrected'):
			self.assertIn(name, fixture_names())
			self.assertTrue(is_valid(load_fixture(name)), name)
		self.assertEqual(load_fixture('h2_root_two').D, 2)
		self.assertTrue(load_fixture('root_two_torus').certified)

	def test_PrintedFixtures(self):
		self.assertRaises(ValidationFailed, load_fixture, 'h000_printed')
		q = load_fixture('h000_printed', check=False)
		bad = [v.index for v in validate(q) if v.constraint == 'train-track']
		self.assertEqual(bad, [1, 3])
		q = load_fixture('h4_printed', check=False)
		bad = [v.index for v in validate(q) if v.constraint == 'train-track']
		self.assertIn(1, bad)

	def test_Diagonals(self):
		self.assertEqual([diagonal(self.h2, i) for i in (1, 2, 3)],
			[Vec2(F('1/2'), 2), Vec2(F('1/2'), 3), Vec2(F('1/2'), 3)])
		self.assertEqual(backward_diagonal(self.h2, 1), Vec2(F('5/2'), 0))
		self.assertEqual(diagonal(self.rtt, 1), Vec2(R2 - 1, R2))
		self.assertEqual(backward_diagonal(self.rtt, 1), Vec2(R2 + 1, R2 - 2))
		q = load_fixture('h4_corrected')
		self.assertEqual(diagonal(q, 1), Vec2(F('-1/2'), 3))
		self.assertIs(slant(q, 1), Slant.RIGHT)
		self.assertIs(slant(q, 2), Slant.LEFT)
		self.assertEqual(vertical_diagonals(load_fixture('square_torus')), [1])

	def test_Area(self):
		self.assertEqual([quad_area(self.h2, i) for i in (1, 2, 3)],
			[F('5/2'), F('19/4'), F('19/4')])
		self.assertEqual(area(self.h2), 12)
		self.assertEqual(area(self.rtt), R2 * 2 - 1)
		self.assertEqual(area(load_fixture('h2_root_two')), R2 * 8 - 4)
		self.assertEqual(width(self.h2), 2)

	def test_SignViolations(self):
		self.assertRaises(ValidationFailed, make_quadrangulation, [1], [1], [((1, 1), (1, 1))])
		q = Quadrangulation(CombDatum(Perm([1]), Perm([1])), [Wedge(Vec2(0, 1), Vec2(1, 1))])
		self.assertEqual([v.constraint for v in validate(q)], ['left.x < 0'])

	def test_Text(self):
		self.assertEqual(deserialize(serialize(self.h2)), self.h2)
		q = deserialize(serialize(self.rtt))
		self.assertEqual(q, self.rtt)
		self.assertEqual(q.D, 2)
		self.assertEqual(q.certified, self.rtt.certified)

	def test_BadText(self):
		self.assertRaises(QuadSyntaxError, deserialize, 'hello\n')
		base = 'quadfmt 1\nD={0}; k=1\nperm_l=[1]; perm_r=[1]\nwedge=[[-1,1],[{1},1]]\n'
		self.assertEqual(deserialize(base.format(2, '0+1*sqrt(2)')).wedge(1).right.x, R2)
		self.assertRaises(QuadSyntaxError, deserialize, base.format(3, '0+1*sqrt(2)'))
		self.assertRaises(QuadSyntaxError, deserialize, base.format(0, 'x'))
		self.assertRaises(QuadSyntaxError, deserialize, base.format(0, 2) + 'wedge=[[-1,1],[1,1]]\n')
		self.assertRaises(QuadSyntaxError, deserialize, base.format(0, 2).replace('D=0', 'E=0'))

	def test_SerializeRejects(self):
		bad = Quadrangulation(CombDatum(Perm([1]), Perm([1])), [Wedge(Vec2(0, 1), Vec2(1, 1))])
		self.assertRaises(ValidationFailed, serialize, bad)
		self.assertRaises(QuadSyntaxError, serialize, dataclasses.replace(self.h2, name='a;b'))
		self.assertRaises(QuadSyntaxError, serialize, dataclasses.replace(self.h2, name='a\nb'))
		self.assertRaises(QuadSyntaxError, serialize, dataclasses.replace(self.rtt, certified='x\ny'))
		q = dataclasses.replace(self.rtt, certified='exact; by hand')
		self.assertEqual(deserialize(serialize(q)).certified, 'exact; by hand')

class MovesTest(unittest.TestCase):
	"""Test staircase moves, rotation, backward moves and runs."""

	def setUp(self):
		settings.reset()
		self.h2 = load_fixture('h2')
		self.rtt = load_fixture('root_two_torus')
		self.h2r2 = load_fixture('h2_root_two')
		self.left123 = CycleRef(L, (1, 2, 3))

	def test_WellSlanted(self):
		self.assertEqual(well_slanted_staircases(self.h2), [self.left123])
		self.assertEqual(well_slanted_staircases(self.rtt), [CycleRef(L, (1,))])
		self.assertEqual(well_slanted_staircases(load_fixture('h000_corrected')), [])
		self.assertEqual(well_slanted_staircases(load_fixture('h4_corrected')), [])

	def test_ApplyMove(self):
		q = apply_move(self.h2, self.left123)
		self.assertEqual(q.datum.perm_r, Perm([3, 2, 1]))
		for i in (1, 2, 3):
			self.assertEqual(q.wedge(i), Wedge(self.h2.wedge(i).left, diagonal(self.h2, i)))
		self.assertTrue(is_valid(q))
		self.assertEqual(area(q), area(self.h2))
		self.assertEqual(q.name, 'h2')

	def test_MoveErrors(self):
		self.assertRaises(NotWellSlanted, apply_move, self.h2, CycleRef(R, (1,)))
		self.assertRaises(NotACycle, apply_move, self.h2, CycleRef(L, (1, 2)))
		self.assertRaises(VerticalDiagonal, apply_move, load_fixture('square_torus'), CycleRef(L, (1,)))
		self.assertRaises(VerticalDiagonal, step_greedy, load_fixture('square_torus'))

	def test_MoveMatrix(self):
		m = move_matrix(self.h2.datum, self.left123)
		self.assertEqual(m.det(), 1)
		self.assertEqual(m[1, 0], 1)	# (1,r) gains (1,l)
		self.assertEqual(m[3, 4], 1)	# (2,r) gains (3,l)
		self.assertEqual(m[5, 2], 1)	# (3,r) gains (2,l)
		self.assertEqual(matrix_action(m, self.h2), sides_of(apply_move(self.h2, self.left123)))

	def test_Rotate(self):
		q = rotate(self.rtt)
		self.assertEqual(q.wedge(1), Wedge(Vec2(1 - R2, R2), Vec2(1, 1)))
		self.assertEqual(rotate_inverse(q), self.rtt)
		self.assertEqual(rotate_inverse(rotate(self.h2)), self.h2)
		self.assertTrue(is_valid(rotate(self.h2)))

	def test_BackwardMove(self):
		q = apply_move(self.h2, self.left123)
		self.assertIn(self.left123, backward_staircases(q))
		self.assertEqual(backward_move(q, self.left123), self.h2)
		q = step_greedy(self.rtt)
		self.assertEqual(step_backward(q), self.rtt)
		self.assertRaises(NotBackwardApplicable, backward_move, self.h2, CycleRef(R, (1,)))

	def test_GreedyRootTwoTorus(self):
		final, log = run(self.rtt, GreedyPolicy(), steps=4)
		self.assertEqual([rec.cycle.side for rec in log], [L, R, R, L])
		self.assertEqual([rec.step for rec in log], [1, 2, 3, 4])
		self.assertIsNone(log.keane)
		self.assertEqual(log.replay(), final)
		self.assertEqual(log.replay(1), step_greedy(self.rtt))

	def test_KeaneStop(self):
		final, log = run(load_fixture('square_torus'), GreedyPolicy(), steps=5)
		self.assertEqual(len(log), 0)
		self.assertEqual((log.keane.step, log.keane.indices), (1, (1,)))
		final, log = run(self.h2, GreedyPolicy(), steps=10)
		self.assertEqual(log.keane.step, 4)

	def test_WidthDecay(self):
		limit = Scalar('1/1000')
		for q in (self.rtt, self.h2r2):
			final, log = run(q, GreedyPolicy(), steps=40)
			self.assertIsNone(log.keane)
			self.assertTrue(width(final) < limit, q.name)
			self.assertTrue(is_valid(final))
			self.assertEqual(area(final), area(q))

	def test_WidthTarget(self):
		final, log = run(self.rtt, GreedyPolicy(), width_target=Scalar('1/10'))
		self.assertTrue(width(final) < Scalar('1/10'))
		self.assertFalse(width(log.replay(len(log) - 1)) < Scalar('1/10'))

	def test_Script(self):
		self.assertEqual(parse_script('L1,2,3 R4'), [CycleRef(L, (1, 2, 3)), CycleRef(R, (4,))])
		self.assertEqual(parse_script('L{1,2,3}'), [self.left123])
		self.assertRaises(ValueError, parse_script, 'X1')
		greedy, _ = run(self.rtt, GreedyPolicy(), steps=4)
		scripted, log = run(self.rtt, ScriptPolicy(parse_script('L1 R1 R1 L1')))
		self.assertEqual(scripted, greedy)
		self.assertEqual(len(log), 4)
		self.assertRaises(NotWellSlanted, run, self.rtt, ScriptPolicy(parse_script('R1')))

	def test_Policies(self):
		self.assertIsInstance(make_policy('greedy'), GreedyPolicy)
		self.assertIsInstance(make_policy('leftright'), LeftRightPolicy)
		self.assertEqual(make_policy('random', seed=3).seed, 3)
		self.assertRaises(ValueError, make_policy, 'script')
		self.assertRaises(ValueError, make_policy, 'sideways')

	def test_PolicyIndependence(self):
		policies = [GreedyPolicy, LeftRightPolicy] + \
			[lambda seed=seed: RandomPolicy(seed) for seed in range(5)]
		seen = []
		for policy in policies:
			wedges, stairs = set(), set()

			def record(rec, q, wedges=wedges, stairs=stairs):
				for i in range(1, q.k + 1):
					wedges.add((i, q.wedge(i)))
				for c in well_slanted_staircases(q):
					stairs.add((c.side, frozenset((i, q.wedge(i), diagonal(q, i)) for i in c)))

			record(None, self.h2r2)
			final, log = run(self.h2r2, policy(), steps=30, observer=record)
			self.assertIsNone(log.keane)
			seen.append((wedges, stairs, final))
		# below the lowest final side every run has met the same wedges
		H = min(min(v.y for v in sides_of(final)) for _, _, final in seen)

		def low(wedges, stairs):
			return ({(i, w) for i, w in wedges if max(w.left.y, w.right.y) <= H},
				{s for s in stairs if all(d.y <= H for _, _, d in s[1])})

		first = low(*seen[0][:2])
		self.assertTrue(first[0] and first[1])
		for wedges, stairs, _ in seen[1:]:
			self.assertEqual(low(wedges, stairs), first)

	def test_DiagonalChangeNeedsCycles(self):
		self.assertEqual(diagonal_change(self.h2, L, (1, 2, 3)), apply_move(self.h2, self.left123))
		rng = random.Random(21)
		tried = 0
		for n in range(40):
			q = random_quadrangulation(2 + n % 4, rng)
			for side in (L, R):
				cycles = [set(c) for c in q.datum.perm(side).cycles()]
				for size in range(1, q.k):
					S = set(rng.sample(range(1, q.k + 1), size))
					if all(c <= S or not c & S for c in cycles):
						continue
					self.assertRaises(ValidationFailed, diagonal_change, q, side, S)
					tried += 1
		self.assertTrue(tried > 0)

	def test_BackwardRun(self):
		q, log = run_backward(self.rtt, 3)
		self.assertEqual(len(log), 3)
		self.assertTrue(all(rec.direction is Direction.BACKWARD for rec in log))
		self.assertEqual([rec.step for rec in log], [-1, -2, -3])
		for rec in reversed(log.records):
			q = apply_move(q, rec.cycle)
		self.assertEqual(q, self.rtt)

	def test_MoveLogText(self):
		final, log = run(self.h2r2, GreedyPolicy(), steps=5)
		again = MoveLog.deserialize(log.serialize(), self.h2r2)
		self.assertEqual([r.cycle for r in again], [r.cycle for r in log])
		self.assertEqual(again.replay(), final)
		_, log = run(self.h2, GreedyPolicy(), steps=10)
		again = MoveLog.deserialize(log.serialize(), self.h2)
		self.assertEqual(again.keane, log.keane)
		self.assertRaises(MoveLogSyntaxError, MoveLog.deserialize, 'step=1 side=L cycle=1\n', self.rtt)
		self.assertRaises(NotWellSlanted, MoveLog.deserialize,
			'movelog 1\nstep=1 side=R cycle=1\n', self.rtt)

class RandomMovesTest(unittest.TestCase):
	"""Test move properties on random hyperelliptic quadrangulations."""

	def setUp(self):
		settings.reset()
		self.rng = random.Random(2024)
		self.surfaces = [random_quadrangulation(1 + n % 5, self.rng) for n in range(200)]

	def test_Existence(self):
		for q in self.surfaces:
			self.assertTrue(is_valid(q))
			self.assertIsNotNone(find_involution(q.datum))
			self.assertTrue(well_slanted_staircases(q), str(q.datum))

	def test_SelfDuality(self):
		for q in self.surfaces:
			self.assertEqual(rotate_inverse(rotate(q)), q)
			for c in well_slanted_staircases(q):
				moved = apply_move(q, c)
				self.assertIn(c, backward_staircases(moved))
				self.assertEqual(backward_move(moved, c), q)

	def test_RotatedDiagonals(self):
		for q in self.surfaces:
			rq = rotate(q)
			inv = q.datum.perm_l.inverse()
			for i in range(1, q.k + 1):
				self.assertEqual(diagonal(rq, i), backward_diagonal(q, inv(i)).rot90())

	def test_DisjointMovesCommute(self):
		pairs = 0
		for q in self.surfaces:
			ws = well_slanted_staircases(q)
			for a in ws:
				for b in ws:
					if a == b or set(a) & set(b):
						continue
					self.assertEqual(apply_move(apply_move(q, a), b), apply_move(apply_move(q, b), a))
					pairs += 1
		self.assertTrue(pairs > 0)

	def test_Invariants(self):
		rng = random.Random(99)
		moves = 0
		for n in range(100):
			q = random_generic_quadrangulation(1 + n % 5, rng)
			total = area(q)
			cycle = invariant_cycle(q.datum, find_involution(q.datum))
			policy = RandomPolicy(seed=n)
			for _ in range(10):
				c = policy.choose(q, well_slanted_staircases(q))[0]
				m = move_matrix(q.datum, c)
				self.assertIn(m.det(), (1, -1))
				nq = apply_move(q, c)
				self.assertEqual(matrix_action(m, q), sides_of(nq))
				self.assertEqual(validate(nq), [])
				self.assertTrue(nq.datum.is_transitive())
				self.assertEqual(area(nq), total)
				iota = find_involution(nq.datum)
				self.assertEqual(invariant_cycle(nq.datum, iota), cycle)
				q = nq
				moves += 1
		self.assertEqual(moves, 1000)

	def test_Generators(self):
		t = random_tree(6, self.rng)
		self.assertTrue(t.is_valid())
		d = random_datum(6, self.rng)
		self.assertTrue(d.is_transitive())
		self.assertIsNotNone(find_involution(d))
		a = random_quadrangulation(4, random.Random(7))
		b = random_quadrangulation(4, random.Random(7))
		self.assertEqual(a, b)
		self.assertRaises(ValueError, random_tree, 0, self.rng)

class IETTest(unittest.TestCase):
	"""Test interval exchanges, cutting sequences and segment tracing."""

	def setUp(self):
		settings.reset()
		self.h2 = load_fixture('h2')
		self.rtt = load_fixture('root_two_torus')

	def test_Lengths(self):
		T = iet_of(self.h2)
		self.assertEqual(T.lambdas, ((-1, F('3/2')), (F('-3/2'), F('3/2')), (-1, 2)))
		self.assertEqual(T.lam_d(1), F('1/2'))
		self.assertRaises(ValueError, BipartiteIET, self.h2.datum, ((1, 1), (-1, 1), (-1, 1)))

	def test_Apply(self):
		T = iet_of(self.rtt)
		self.assertEqual(iet_apply(T, IETPoint(1, F('-1/2'))), IETPoint(1, F('1/2')))
		self.assertEqual(iet_apply(T, IETPoint(1, F('1/2'))), IETPoint(1, F('1/2') - R2))
		self.assertRaises(HitsSingularity, iet_apply, T, IETPoint(1, R2 - 1))
		self.assertRaises(ValueError, iet_apply, T, IETPoint(1, Scalar(2)))
		self.assertRaises(HitsSingularity, iet_apply, T, IETPoint(1, Scalar(0)))

	def test_MeasurePreserved(self):
		rng = random.Random(13)
		for n in range(30):
			q = random_quadrangulation(1 + n % 5, rng)
			T = iet_of(q)
			pl, pr = q.datum.perm_l, q.datum.perm_r
			for i in range(1, q.k + 1):
				a, d, b = T.lam_l(i), T.lam_d(i), T.lam_r(i)
				# (a, d) lands on (0, lam_r(pl(i))) and (d, b) on (lam_l(pr(i)), 0)
				self.assertEqual(d - a, T.lam_r(pl(i)))
				self.assertEqual(d - b, T.lam_l(pr(i)))
				x = a + (d - a) / 3
				if x:
					self.assertEqual(iet_apply(T, IETPoint(i, x)), IETPoint(pl(i), x - a))
				x = b - (b - d) / 3
				if x:
					self.assertEqual(iet_apply(T, IETPoint(i, x)), IETPoint(pr(i), x - b))

	def test_VerticalCrossings(self):
		def outcome(f, q, p):
			try:
				return f(q, p, 300)
			except HitsSingularity as e:
				return e.step
		self.assertEqual(vertical_crossings(self.rtt, IETPoint(1, F('1/4')), 8),
			cutting_sequence(self.rtt, IETPoint(1, F('1/4')), 8))
		with self.assertRaises(HitsSingularity) as cm:
			vertical_crossings(self.rtt, IETPoint(1, Scalar(0)), 3)
		self.assertEqual(cm.exception.step, 0)
		rng = random.Random(31)
		surfaces = [load_fixture('h2_root_two')] + [random_generic_quadrangulation(1 + n % 4, rng) for n in range(12)]
		for q in surfaces:
			p = generic_point(iet_of(q), seed=rng.randrange(1000))
			self.assertEqual(outcome(vertical_crossings, q, p), outcome(cutting_sequence, q, p))

	def test_CuttingSequence(self):
		word = cutting_sequence(self.rtt, IETPoint(1, F('1/4')), 8)
		self.assertEqual(word_text(word), '1r 1r 1l 1r 1l 1r 1l 1r')
		with self.assertRaises(HitsSingularity) as cm:
			cutting_sequence(self.rtt, IETPoint(1, Scalar(0)), 3)
		self.assertEqual(cm.exception.step, 0)

	def test_Words(self):
		self.assertEqual(parse_word('1l 2r'), (Label(1, L), Label(2, R)))
		self.assertEqual(parse_word('-'), ())
		self.assertEqual(word_text(()), '-')
		self.assertEqual(word_text(parse_word('3r 1l')), '3r 1l')

	def test_Suspend(self):
		lambdas = [(w.left.x, w.right.x) for w in self.h2.wedges]
		taus = [(w.left.y, w.right.y) for w in self.h2.wedges]
		self.assertEqual(suspend(self.h2.datum, lambdas, taus), self.h2)
		taus[1] = (3, 1)
		self.assertRaises(ValidationFailed, suspend, self.h2.datum, lambdas, taus)

	def test_Trace(self):
		self.assertEqual(trace_segment(self.h2, 1, diagonal(self.h2, 1)), ())
		q = apply_move(self.h2, CycleRef(L, (1, 2, 3)))
		self.assertEqual(trace_segment(self.h2, 1, diagonal(q, 1)), (Label(2, R),))
		q = apply_move(self.rtt, CycleRef(L, (1,)))
		self.assertEqual(trace_segment(self.rtt, 1, diagonal(q, 1)), (Label(1, R),))

	def test_TraceErrors(self):
		self.assertRaises(NotASaddleConnection, trace_segment, self.h2, 1, Vec2(F('1/4'), F('1/2')))
		self.assertRaises(HitsSingularityEarly, trace_segment, self.h2, 1, Vec2(1, 4))
		self.assertRaises(OnEdge, trace_segment, load_fixture('square_torus'), 1, Vec2(2, 2))
		self.assertRaises(ValueError, trace_segment, self.h2, 1, Vec2(1, -1))

class DiophantineTest(unittest.TestCase):
	"""Test best approximation streams against the unfolding oracle."""

	def setUp(self):
		settings.reset()
		self.rtt = load_fixture('root_two_torus')
		self.h2r2 = load_fixture('h2_root_two')

	def test_Streams(self):
		right = best_approx_stream(self.rtt, GreedyPolicy(), 1, R, count=3)
		self.assertEqual([sc.disp for sc in right],
			[Vec2(R2, R2 - 1), Vec2(R2 - 1, R2), Vec2(R2 * 3 - 4, R2 * 3 + 1)])
		left = best_approx_stream(self.rtt, GreedyPolicy(), 1, L, count=3)
		self.assertEqual([sc.disp for sc in left],
			[Vec2(-1, 1), Vec2(R2 - 2, R2 + 1), Vec2(R2 * 2 - 3, R2 * 2 + 1)])
		self.assertEqual([sc.step for sc in right][0], 0)
		low = best_approx_stream(self.rtt, GreedyPolicy(), 1, L, ty_limit=3)
		self.assertEqual([sc.disp for sc in low], [Vec2(-1, 1), Vec2(R2 - 2, R2 + 1)])
		self.assertRaises(KeaneStopBeforeLimit, best_approx_stream,
			load_fixture('square_torus'), GreedyPolicy(), 1, R, count=2)

	def test_SquareTorusOracle(self):
		found = unfold_enumerate(load_fixture('square_torus'), 1, SearchBox(2, 2))
		self.assertEqual({sc.disp for sc in found}, {Vec2(-1, 1), Vec2(1, 1), Vec2(0, 2)})

	def test_TorusEquivalence(self):
		produced = produced_connections(self.rtt, GreedyPolicy(), n_fwd=15, n_back=10)
		fwd = [sc for sc in produced if sc.step >= 0]
		top = min(max(sc.disp.y for sc in fwd if sc.side is side) for side in (L, R))
		mine = {sc.disp for sc in produced if abs(sc.disp.x) <= 1 and sc.disp.y <= top}
		oracle = filter_best_approximations(
			unfold_enumerate(self.rtt, 1, SearchBox(1, top), confirm_candidates=False))
		self.assertEqual(mine, {sc.disp for sc in oracle})
		self.assertTrue(len(mine) >= 4)

	def test_StreamMatchesOracle(self):
		for bundle in (1, 2, 3):
			stream = best_approx_stream(self.h2r2, GreedyPolicy(), bundle, R, count=3)
			box = SearchBox(stream[0].disp.x, stream[-1].disp.y)
			found = [sc.disp for sc in filter_best_approximations(unfold_enumerate(self.h2r2, bundle, box))
				if sc.side is R and sc.disp.y >= stream[0].disp.y]
			self.assertEqual(found, [sc.disp for sc in stream], bundle)

	def test_Definitions(self):
		self.assertTrue(is_best_approximation(self.rtt, SaddleConnection(1, Vec2(R2 - 1, R2))))
		witness = SaddleConnection(1, Vec2(R2 * 2 - 1, R2 * 2 - 1))
		self.assertFalse(is_best_approximation(self.rtt, witness))
		self.assertRaises(ValueError, is_best_approximation, self.rtt, SaddleConnection(1, Vec2(0, 1)))
		conns = [SaddleConnection(1, Vec2(R2, R2 - 1))]
		self.assertFalse(rectangle_is_empty(witness.disp, conns))
		self.assertTrue(rectangle_is_empty(Vec2(R2 - 1, R2), conns))
		# the far vertical side belongs to the rectangle
		self.assertFalse(rectangle_is_empty(Vec2(R2, R2), conns))

	def test_CriteriaAgree(self):
		rng = random.Random(17)
		compared = 0
		for n in range(6):
			q = random_generic_quadrangulation(1 + n % 3, rng, random_scale=6)
			for i in range(1, q.k + 1):
				w = q.wedge(i)
				box = SearchBox(max(-w.left.x, w.right.x), max(w.left.y, w.right.y) * 2)
				conns = unfold_enumerate(q, i, box)
				best = {sc.disp for sc in filter_best_approximations(conns)}
				for m, sc in enumerate(conns):
					self.assertEqual(rectangle_is_empty(sc.disp, conns), sc.disp in best)
					if m < 8:
						self.assertEqual(is_best_approximation(q, sc), sc.disp in best)
						compared += 1
		self.assertTrue(compared > 0)

	def test_RectangleExtension(self):
		self.assertEqual(rectangle_extension(self.rtt, 1, diagonal(self.rtt, 1)), self.rtt.wedge(1))
		self.assertRaises(NotBestApproximation, rectangle_extension, self.rtt, 1, Vec2(R2 * 2 - 1, R2 * 2 - 1))
		self.assertRaises(ValueError, rectangle_extension, self.rtt, 1, Vec2(0, 1))
		self.assertTrue(check_produced_quadrilaterals(self.rtt, GreedyPolicy(), n_fwd=8) > 0)
		self.assertTrue(check_produced_quadrilaterals(self.h2r2, GreedyPolicy(), n_fwd=15) > 0)
		rng = random.Random(19)
		total = 0
		for n in range(4):
			q = random_generic_quadrangulation(1 + n % 3, rng, random_scale=6)
			total += check_produced_quadrilaterals(q, GreedyPolicy(), n_fwd=12)
		self.assertTrue(total > 0)

	def test_FilterHeights(self):
		conns = [SaddleConnection(1, Vec2(x, y)) for x, y in ((2, 1), (1, 2), (3, 2), (-1, 1), (0, 3))]
		self.assertEqual([sc.disp for sc in filter_best_approximations(conns)],
			[Vec2(-1, 1), Vec2(2, 1), Vec2(1, 2)])

	def test_SaddleConnection(self):
		self.assertRaises(ValueError, SaddleConnection, 1, Vec2(1, 0))
		self.assertIs(SaddleConnection(1, Vec2(-1, 1)).side, L)
		self.assertIsNone(SaddleConnection(1, Vec2(0, 1)).side)
		self.assertRaises(ValueError, SearchBox, 0, 1)

	def test_AreaBound(self):
		for q in (self.rtt, self.h2r2):
			for r in (Scalar('1/4'), Scalar('1/2'), Scalar(1)):
				for bundle in range(1, q.k + 1):
					self.assertTrue(area_bound_check(q, bundle, r), (q.name, bundle, r))

class LanguageTest(unittest.TestCase):
	"""Test bispecial words three ways and by sampling."""

	def setUp(self):
		settings.reset()
		self.h2 = load_fixture('h2')
		self.h2r2 = load_fixture('h2_root_two')
		self.rtt = load_fixture('root_two_torus')

	def test_Recursion(self):
		s = lrd_init(self.h2.datum)
		self.assertEqual(word_text(s.L[0]), '1r')
		self.assertEqual(word_text(s.R[0]), '3l')
		s = lrd_step(s, CycleRef(L, (1, 2, 3)))
		self.assertEqual(word_text(s.D[0]), '2r')
		self.assertEqual(word_text(s.R[0]), '3l 1r')
		self.assertEqual(s.step, 1)
		self.assertEqual(s.datum.perm_r, Perm([3, 2, 1]))

	def test_Substitution(self):
		_, log = run(self.h2, ScriptPolicy([CycleRef(L, (1, 2, 3))]))
		self.assertEqual(diagonal_word_via_substitution(self.h2, log, 1), (Label(2, R),))

	def test_TripleAgreement(self):
		settings.set(chart_budget=10**7)
		final, log = run(self.h2r2, GreedyPolicy(), steps=25)
		self.assertIsNone(log.keane)
		s = lrd_init(self.h2r2.datum)
		for rec in log:
			s = lrd_step(s, rec.cycle)
		for i in (1, 2, 3):
			traced = trace_segment(self.h2r2, i, diagonal(final, i))
			self.assertEqual(s.D[i - 1], traced, i)
			self.assertEqual(diagonal_word_via_substitution(self.h2r2, log, i), traced, i)

	def test_Bispecials(self):
		words = bispecials(self.h2r2, GreedyPolicy(), 25, trace=True, chart_budget=10**7)
		self.assertEqual(words[0].word, ())
		self.assertEqual(len({b.word for b in words}), len(words))
		self.assertTrue(len(words) > 3)
		self.assertRaises(KeaneStopBeforeLimit, bispecials, self.h2, GreedyPolicy(), 10)

	def test_Verify(self):
		self.assertTrue(verify_bispecial(self.rtt, ()).passed)
		seq = sample_cutting_sequence(self.rtt, 10**5)
		self.assertEqual(len(seq), 10**5)
		checked = 0
		for b in bispecials(self.rtt, GreedyPolicy(), 6):
			if b.word:
				report = verify_bispecial(self.rtt, b.word, sequence=seq)
				self.assertTrue(report.passed, word_text(b.word))
				checked += 1
		self.assertTrue(checked >= 3)
		self.assertRaises(InsufficientSample, verify_bispecial, self.rtt,
			parse_word('1r 1r 1r'), sample_len=1000)

	def test_VerifyH2(self):
		seq = sample_cutting_sequence(self.h2r2, 10**5)
		checked = 0
		for b in bispecials(self.h2r2, GreedyPolicy(), 25):
			if b.word and len(b.word) <= 30:
				report = verify_bispecial(self.h2r2, b.word, sequence=seq)
				self.assertTrue(report.passed, word_text(b.word))
				self.assertEqual(len(report.pairs), 3)
				checked += 1
		self.assertTrue(checked >= 4)

class TeichTest(unittest.TestCase):
	"""Test the systole envelope and the Lagrange estimates."""

	def setUp(self):
		settings.reset()
		self.rtt = load_fixture('root_two_torus')
		self.h2r2 = load_fixture('h2_root_two')

	def test_MinPoint(self):
		self.assertEqual(min_point(Vec2(F('1/2'), 3)), (36, 3))
		self.assertRaises(OnAxis, min_point, Vec2(1, 0))
		self.assertEqual(scaled_sq_len(Vec2(1, 2), 3), 7)
		self.assertRaises(ValueError, GeodesicParam, 0)
		self.assertAlmostEqual(GeodesicParam(Scalar(1)).t, 0.0)

	def test_Envelope(self):
		a = SaddleConnection(1, Vec2(1, 1))
		b = SaddleConnection(1, Vec2(F('1/2'), 3))
		segs = systole_envelope([a, b], 1, 100)
		self.assertEqual([(s.q_from, s.q_to, s.realizer) for s in segs],
			[(1, F('32/3'), a), (F('32/3'), 100, b)])
		self.assertEqual(envelope_value(segs, F('32/3')), scaled_sq_len(a.disp, F('32/3')))
		self.assertEqual(envelope_value(segs, 50), scaled_sq_len(b.disp, 50))
		self.assertRaises(ValueError, envelope_value, segs, 200)
		segs = systole_envelope([a, b], 1)
		self.assertIsNone(segs[-1].q_to)

	def test_SystoleOracle(self):
		with warnings.catch_warnings():
			warnings.simplefilter('error', CoverageWarning)
			report = systole_report(self.rtt, GreedyPolicy(), n_back=10, n_fwd=10, q_lo=1, q_hi=100)
		self.assertTrue(report.covered)
		for seg in report.segments:
			self.assertIn(seg.realizer, report.candidates)
		oracle = unfold_enumerate(self.rtt, 1, SearchBox(2, 11))
		for n in range(50):
			q = 1 + Scalar(Fraction(99 * n, 49))
			brute = min(scaled_sq_len(sc.disp, q) for sc in oracle)
			self.assertEqual(envelope_value(report.segments, q), brute, q)
		self.assertEqual(systole_realizers(self.rtt, GreedyPolicy(), 10, 10, 1, 100), report.segments)

	def test_RandomRanges(self):
		rng = random.Random(23)
		oracle = unfold_enumerate(self.rtt, 1, SearchBox(2, 11))
		for _ in range(20):
			a, b = sorted(rng.sample(range(100, 10001), 2))
			lo, hi = Scalar(Fraction(a, 100)), Scalar(Fraction(b, 100))
			with warnings.catch_warnings():
				warnings.simplefilter('error', CoverageWarning)
				report = systole_report(self.rtt, GreedyPolicy(), n_back=10, n_fwd=10, q_lo=lo, q_hi=hi)
			for seg in report.segments:
				self.assertIn(seg.realizer, report.candidates)
			for q in (lo, (lo + hi) / 2, hi):
				brute = min(scaled_sq_len(sc.disp, q) for sc in oracle)
				self.assertEqual(envelope_value(report.segments, q), brute, q)

	def test_Warnings(self):
		with self.assertWarns(CorollaryPreconditionUnmet):
			systole_report(self.rtt, GreedyPolicy(), n_fwd=2, q_lo=Scalar('1/2'), q_hi=100)
		with self.assertWarns(CoverageWarning):
			systole_report(self.rtt, GreedyPolicy(), n_fwd=1, q_lo=1, q_hi=10**6)

	def test_Lagrange(self):
		rows = lagrange_estimate(self.rtt, GreedyPolicy(), 0)
		self.assertEqual(rows[0].value, (2 - R2) / (R2 * 2 - 1))
		self.assertEqual(wedge_area_min(self.rtt), 2 - R2)
		rows = lagrange_estimate(self.h2r2, GreedyPolicy(), 40)
		self.assertEqual(len(rows), 41)
		for prev, row in zip(rows, rows[1:]):
			self.assertTrue(row.running_min <= prev.running_min)
			self.assertEqual(row.running_min, min(prev.running_min, row.value))
		self.assertRaises(KeaneStopBeforeLimit, lagrange_estimate, load_fixture('h2'), GreedyPolicy(), 10)

class FileformatTest(unittest.TestCase):
	"""Test the input and output file classes against each other."""

	def setUp(self):
		settings.reset()
		self.tmp = tempfile.mkdtemp()
		self.h2 = load_fixture('h2')
		self.h2r2 = load_fixture('h2_root_two')

	def tearDown(self):
		shutil.rmtree(self.tmp)

	def path(self, name):
		return os.path.join(self.tmp, name)

	def test_Quad(self):
		QuadOutput(self.h2r2, self.path('a.quad'))
		q = QuadInput(self.path('a.quad')).data
		self.assertEqual(q, self.h2r2)
		self.assertEqual(q.certified, self.h2r2.certified)
		with open(self.path('a.quad')) as f:
			self.assertEqual(f.readline(), 'quadfmt 1\n')

	def test_MoveLog(self):
		final, log = run(self.h2r2, GreedyPolicy(), steps=4)
		MoveLogOutput(log, self.path('a.moves'))
		again = MoveLogInput(self.path('a.moves'), initial=self.h2r2).data
		self.assertEqual(again.replay(), final)
		self.assertRaises(ValueError, MoveLogInput, self.path('a.moves'))

	def test_Tsv(self):
		out = TsvOutput([(1, Scalar('1/2'), None)], header=('n', 'x', 'y'), float_columns=('x',))
		self.assertEqual(out.text(), 'n\tx\ty\tx~\n1\t1/2\tinf\t0.5\n')
		out = TsvOutput([(R2,)], header=('x',), float_columns=('x',), float_digits=3)
		self.assertEqual(out.text(), 'x\tx~\n0+1*sqrt(2)\t1.41\n')

	def test_Dot(self):
		g = enumerate_graph(CombDatum(Perm([1]), Perm([1])))
		DotOutput(g, self.path('g.dot'))
		with open(self.path('g.dot')) as f:
			text = f.read()
		self.assertEqual(text.count('->'), 2)

	def test_Svg(self):
		text = SvgOutput(self.h2).text()
		self.assertEqual(text.count('<polygon'), 3)
		self.assertEqual(text, SvgOutput(self.h2).text())
		self.assertIn('>2l<', text)
		self.assertEqual(SvgOutput(load_fixture('root_two_torus')).text().count('<polygon'), 1)

class CommandLineTest(unittest.TestCase):
	"""Test the staircase command through main()."""

	def setUp(self):
		settings.reset()
		self.tmp = tempfile.mkdtemp()

	def tearDown(self):
		shutil.rmtree(self.tmp)

	def call(self, *argv):
		out, err = io.StringIO(), io.StringIO()
		with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
			code = main(list(argv))
		return code, out.getvalue()

	def test_Validate(self):
		code, text = self.call('validate', 'h2')
		self.assertEqual(code, 0)
		self.assertIn('hyperelliptic, ι=(2 3)', text)
		code, text = self.call('validate', 'h4_printed')
		self.assertEqual(code, 1)
		self.assertIn('train-track', text)
		code, _ = self.call('validate', os.path.join(self.tmp, 'missing.quad'))
		self.assertEqual(code, 2)
		code, _ = self.call('frobnicate')
		self.assertEqual(code, 2)

	def test_RunReplay(self):
		first = os.path.join(self.tmp, 'first.quad')
		second = os.path.join(self.tmp, 'second.quad')
		self.assertEqual(self.call('run', 'h2_root_two', '--steps', '5', '--out', first)[0], 0)
		self.assertTrue(os.path.exists(first + '.moves'))
		self.assertEqual(self.call('run', 'h2_root_two', '--replay', first + '.moves', '--out', second)[0], 0)
		with open(first) as a, open(second) as b:
			self.assertEqual(a.read(), b.read())

	def test_BestApprox(self):
		code, text = self.call('best-approx', 'root_two_torus', '--count', '3', '--oracle-check', '--float')
		self.assertEqual(code, 0)
		lines = text.splitlines()
		self.assertEqual(lines[0].split('\t'), ['n', 'bundle', 'side', 'step', 'x', 'y', 'x~', 'y~'])
		self.assertEqual(len(lines), 4)

	def test_Graph(self):
		code, text = self.call('graph', '--datum', 'k=3; perm_l=(1,3); perm_r=(1,2)')
		self.assertEqual(code, 0)
		self.assertEqual(text.count('->'), 30)
		self.assertEqual(self.call('graph')[0], 2)

	def test_Tables(self):
		code, text = self.call('lagrange', 'root_two_torus', '--steps', '3')
		self.assertEqual(code, 0)
		self.assertEqual(len(text.splitlines()), 5)
		code, text = self.call('oracle', 'square_torus')
		self.assertEqual(code, 0)
		self.assertEqual(len(text.splitlines()), 4)
		code, _ = self.call('lagrange', 'h2', '--steps', '10')
		self.assertEqual(code, 1)

	def test_Render(self):
		out = os.path.join(self.tmp, 'h2.svg')
		self.assertEqual(self.call('render', 'h2', '--out', out)[0], 0)
		with open(out) as f:
			self.assertEqual(f.read().count('<polygon'), 3)

if __name__ == '__main__':
	unittest.main()
