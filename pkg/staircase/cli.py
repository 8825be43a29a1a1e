"""
The ``staircase`` command.

	staircase validate surface.quad
	staircase run h2_root_two --policy greedy --steps 40 --out final.quad
	staircase run h2_root_two --replay final.quad.moves --out again.quad
	staircase best-approx root_two_torus --bundle 1 --side r --count 5 --oracle-check
	staircase graph chyp3_seed --out chyp3.dot

A surface argument is a path to a ``.quad`` file or the name of a
shipped fixture.  Results go to --out or to stdout, logs to stderr
(``-v`` for INFO, ``-vv`` for DEBUG), so reruns with the same inputs,
flags and --seed give byte-identical results.

Exit codes: 0 success, 1 domain failure (a library error, a failed
validation or an oracle disagreement), 2 usage or I/O problem.

"""

import argparse
import logging
import os
import sys

from . import settings
from .exactnum import Scalar
from .combinatorics import Side, find_involution, enumerate_graph, parse_datum
from .quadrangulation import validate
from .moves import POLICIES, make_policy, parse_script, run
from .iet import word_text
from .diophantine import (SearchBox, best_approx_stream, unfold_enumerate,
	filter_best_approximations)
from .language import bispecials, verify_bispecial, sample_cutting_sequence, InsufficientSample
from .teich import systole_report, lagrange_estimate
from .input import QuadInput, MoveLogInput, fixture_path
from .output import QuadOutput, MoveLogOutput, TsvOutput, DotOutput, SvgOutput

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

##############################################################################
# Helpers

def _surface_path(name:str) -> str:
	if os.path.exists(name):
		return name
	path = fixture_path(name)
	if os.path.exists(path):
		return path
	raise FileNotFoundError("no such file or fixture: {0}".format(name))

def _load(args, check=True):
	return QuadInput(_surface_path(args.surface), check=check).data

def _policy(args):
	script = parse_script(args.script) if args.script else None
	return make_policy(args.policy, seed=args.seed, script=script)

def _emit(out, args):
	if args.out:
		out.write(args.out)
	else:
		sys.stdout.write(out.text())

def _tsv(rows, header, floats, args):
	out = TsvOutput(rows, header=header, float_columns=floats if args.float else ())
	_emit(out, args)

##############################################################################
# Commands

def cmd_validate(args) -> int:
	q = _load(args, check=False)
	violations = validate(q)
	if violations:
		for v in violations:
			print(v)
		print("invalid: {0} violation(s)".format(len(violations)))
		return EXIT_FAILURE
	iota = find_involution(q.datum)
	if iota is None:
		print("valid; not hyperelliptic")
	else:
		print("valid; hyperelliptic, ι={0}".format(iota.cycle_text()))
	return EXIT_OK

def cmd_run(args) -> int:
	q = _load(args)
	if args.replay:
		movelog = MoveLogInput(args.replay, initial=q).data
		final = movelog.replay()
	else:
		width = Scalar.parse(args.width_target) if args.width_target else None
		final, movelog = run(q, _policy(args), steps=args.steps, width_target=width)
	out = QuadOutput(final)
	_emit(out, args)
	log_path = args.log or (args.out + '.moves' if args.out and not args.replay else None)
	if log_path:
		MoveLogOutput(movelog, log_path)
	if movelog.keane:
		log.warning("run ended with %s", movelog.keane.text())
	return EXIT_OK

def cmd_best_approx(args) -> int:
	q = _load(args)
	side = Side.parse(args.side)
	stream = best_approx_stream(q, _policy(args), args.bundle, side,
		count=args.count, ty_limit=args.ty_limit)
	rows = [(n, sc.bundle, side.value, sc.step, sc.disp.x, sc.disp.y)
		for n, sc in enumerate(stream)]
	_tsv(rows, ('n', 'bundle', 'side', 'step', 'x', 'y'), ('x', 'y'), args)
	if not args.oracle_check:
		return EXIT_OK
	box = SearchBox(abs(stream[0].disp.x), stream[-1].disp.y)
	found = [sc.disp for sc in filter_best_approximations(unfold_enumerate(q, args.bundle, box))
		if sc.side is side and sc.disp.y >= stream[0].disp.y]
	if found == [sc.disp for sc in stream]:
		print("oracle: agree ({0} connections)".format(len(found)), file=sys.stderr)
		return EXIT_OK
	print("oracle: DISAGREE, oracle found {0}".format(', '.join(str(v) for v in found)),
		file=sys.stderr)
	return EXIT_FAILURE

def cmd_bispecial(args) -> int:
	q = _load(args)
	words = bispecials(q, _policy(args), args.steps, trace=args.trace)
	rows = []
	failed = 0
	seq = sample_cutting_sequence(q, args.sample_len, args.seed) if args.verify else None
	for b in words:
		row = [b.step, b.bundle, word_text(b.word)]
		if args.verify:
			try:
				report = verify_bispecial(q, b.word, sequence=seq)
				row.append('pass' if report.passed else 'fail')
				failed += not report.passed
			except InsufficientSample:
				row.append('inconclusive')
		rows.append(row)
	header = ('step', 'bundle', 'word') + (('verdict',) if args.verify else ())
	_tsv(rows, header, (), args)
	return EXIT_FAILURE if failed else EXIT_OK

def cmd_systole(args) -> int:
	q = _load(args)
	q_hi = Scalar.parse(args.q_hi) if args.q_hi else None
	report = systole_report(q, _policy(args), n_back=args.back, n_fwd=args.fwd,
		q_lo=Scalar.parse(args.q_lo), q_hi=q_hi)
	rows = [(seg.q_from, seg.q_to, seg.realizer.bundle, seg.realizer.side.value,
		seg.realizer.step, seg.realizer.disp.x, seg.realizer.disp.y) for seg in report.segments]
	_tsv(rows, ('q_from', 'q_to', 'bundle', 'side', 'step', 'x', 'y'), ('q_from', 'q_to'), args)
	return EXIT_OK

def cmd_lagrange(args) -> int:
	q = _load(args)
	rows = [(r.step, r.value, r.running_min) for r in lagrange_estimate(q, _policy(args), args.steps)]
	_tsv(rows, ('step', 'a_value', 'running_min'), ('a_value', 'running_min'), args)
	return EXIT_OK

def cmd_graph(args) -> int:
	d = parse_datum(args.datum) if args.datum else _load(args).datum
	g = enumerate_graph(d, max_vertices=args.max_vertices)
	out = DotOutput(g)
	_emit(out, args)
	print("{0} vertices, {1} edges, invariant {2}".format(
		len(g.vertices), len(g.edges), 'constant' if g.invariant_is_constant() else 'NOT constant'),
		file=sys.stderr)
	return EXIT_OK if g.invariant_is_constant() else EXIT_FAILURE

def cmd_render(args) -> int:
	out = SvgOutput(_load(args), scale=args.scale)
	_emit(out, args)
	return EXIT_OK

def cmd_oracle(args) -> int:
	q = _load(args)
	conns = unfold_enumerate(q, args.bundle, SearchBox(Scalar.parse(args.rx), Scalar.parse(args.ty)))
	rows = [(sc.bundle, sc.side.value if sc.side else 'v', sc.disp.x, sc.disp.y) for sc in conns]
	_tsv(rows, ('bundle', 'side', 'x', 'y'), ('x', 'y'), args)
	return EXIT_OK

##############################################################################
# Parser

def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog='staircase',
		description="Exact staircase moves on quadrangulations of translation surfaces.")
	parser.add_argument('-v', '--verbose', action='count', default=0,
		help="more logging on stderr (-vv for debug)")
	sub = parser.add_subparsers(dest='command', metavar='command')
	sub.required = True

	def command(name, func, help, surface=True):
		p = sub.add_parser(name, help=help)
		if surface:
			p.add_argument('surface', help=".quad file or fixture name")
		p.add_argument('--out', help="output file (default stdout)")
		p.add_argument('--float', action='store_true', help="add floating columns")
		p.set_defaults(func=func)
		return p

	def runnable(p, steps=None):
		p.add_argument('--policy', choices=POLICIES, default='greedy')
		p.add_argument('--script', help="staircases for the script policy, e.g. 'L1,2,3 R2,3'")
		p.add_argument('--seed', type=int, default=settings.get('seed'))
		p.add_argument('--steps', type=int, default=steps)

	command('validate', cmd_validate, "check a .quad file")

	p = command('run', cmd_run, "run a policy and write the final state")
	runnable(p, steps=40)
	p.add_argument('--width-target', help="stop once every wedge is narrower than this")
	p.add_argument('--log', help="move log file (default <out>.moves)")
	p.add_argument('--replay', help="replay this move log instead of running")

	p = command('best-approx', cmd_best_approx, "best approximations of one bundle side")
	runnable(p)
	p.add_argument('--bundle', type=int, default=1)
	p.add_argument('--side', choices=('l', 'r'), default='r')
	p.add_argument('--count', type=int, default=5)
	p.add_argument('--ty-limit', type=Scalar.parse, default=None)
	p.add_argument('--oracle-check', action='store_true',
		help="compare with the unfolding oracle")

	p = command('bispecial', cmd_bispecial, "bispecial words along a run")
	runnable(p, steps=10)
	p.add_argument('--trace', action='store_true', help="check every word by tracing")
	p.add_argument('--verify', action='store_true', help="check extensions on a sampled orbit")
	p.add_argument('--sample-len', type=int, default=None)

	p = command('systole', cmd_systole, "systole realizers along the geodesic")
	runnable(p)
	p.add_argument('--back', type=int, default=10)
	p.add_argument('--fwd', type=int, default=10)
	p.add_argument('--q-lo', default='1')
	p.add_argument('--q-hi', default='100')

	p = command('lagrange', cmd_lagrange, "Lagrange value estimates along a run")
	runnable(p, steps=40)

	p = command('graph', cmd_graph, "graph of data reachable by staircase moves", surface=False)
	p.add_argument('surface', nargs='?', help=".quad file or fixture name")
	p.add_argument('--datum', help="datum text, e.g. 'k=3; perm_l=[3,2,1]; perm_r=[2,1,3]'")
	p.add_argument('--max-vertices', type=int, default=None)

	p = command('render', cmd_render, "draw a quadrangulation as SVG")
	p.add_argument('--scale', type=int, default=80)

	p = command('oracle', cmd_oracle, "saddle connections of a bundle in a box")
	p.add_argument('--bundle', type=int, default=1)
	p.add_argument('--rx', default='2')
	p.add_argument('--ty', default='2')

	return parser

def main(argv=None) -> int:
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		return e.code
	level = (settings.get('log_level'), logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
	logging.basicConfig(level=level, stream=sys.stderr,
		format='%(levelname)s %(name)s: %(message)s')
	logging.captureWarnings(True)
	if args.command == 'graph' and not (args.datum or args.surface):
		parser.print_usage(sys.stderr)
		print("graph needs a surface or --datum", file=sys.stderr)
		return EXIT_USAGE
	try:
		return args.func(args)
	except OSError as e:
		print("staircase: {0}".format(e), file=sys.stderr)
		return EXIT_USAGE
	except Exception as e:
		log.debug("failure", exc_info=True)
		print("staircase: {0}: {1}".format(type(e).__name__, e), file=sys.stderr)
		return EXIT_FAILURE

if __name__ == '__main__':
	sys.exit(main())
