"""
Output classes are used to write results out to disk.

The basic call will be

	output.OutputClass(obj, filename [, optional keyword arguments])

This can also be done in two stages if desired.

	out = output.OutputClass(obj [, optional keyword arguments])
	out.write(filename)

Every class also has text(), returning exactly what write() would put
in the file.  Output is a pure function of its input, so writing the
same object twice gives byte-identical files.

"""

import logging
import xml.etree.ElementTree as ET

from . import settings
from .quadrangulation import Quadrangulation, diagonal, serialize

log = logging.getLogger(__name__)

class _StaircaseOutput(object):
	def __init__(self, obj, filename:str=None):
		"""
		Create a new output writer.

		If filename is given, immediately call write on it.
		"""
		self.obj = obj

		if filename:
			self.write(filename)

	def text(self) -> str:
		raise NotImplementedError

	def write(self, filename:str):
		"""Write the data out to the target file."""
		with open(filename, 'w', encoding='utf-8', newline='\n') as f:
			f.write(self.text())
		log.debug("wrote %s", filename)

class QuadOutput(_StaircaseOutput):
	"""A Quadrangulation as a ``.quad`` document."""
	def text(self):
		return serialize(self.obj)

class MoveLogOutput(_StaircaseOutput):
	"""A MoveLog in the ``movelog 1`` line format."""
	def text(self):
		return self.obj.serialize()

def float_text(x, **kwargs) -> str:
	"""x rounded to the float_digits setting, for the courtesy columns."""
	digits = settings.get('float_digits', kwargs)
	return '{0:.{1}g}'.format(float(x), digits)

class TsvOutput(_StaircaseOutput):
	"""
	Tab separated rows under a header line.

	Args:
		rows: iterable of sequences; Scalars are written in the exact
			grammar, None as ``inf``, everything else with str().

		filename: Shortcut to immediately call write() against this file.

		header: column names.

		float_columns: names of columns that get an extra ``<name>~``
			column holding a floating approximation.

	"""
	def __init__(self, rows, filename:str=None, header=(), float_columns=(), **kwargs):
		self.header = list(header)
		self.float_columns = [c for c in float_columns if c in self.header]
		self._kwargs = kwargs
		super(TsvOutput, self).__init__(list(rows), filename)

	@staticmethod
	def _cell(x):
		if x is None:
			return 'inf'
		return str(x)

	def _floats(self, row):
		out = []
		for c in self.float_columns:
			x = row[self.header.index(c)]
			out.append('inf' if x is None else float_text(x, **self._kwargs))
		return out

	def text(self):
		lines = []
		if self.header:
			lines.append('\t'.join(self.header + [c + '~' for c in self.float_columns]))
		for row in self.obj:
			lines.append('\t'.join([self._cell(x) for x in row] + self._floats(row)))
		return '\n'.join(lines) + '\n'

class DotOutput(_StaircaseOutput):
	"""A GraphG as Graphviz text."""
	def text(self):
		return self.obj.to_dot()

class SvgOutput(_StaircaseOutput):
	"""
	A drawing of a quadrangulation: the quadrilaterals side by side, in
	index order, each with its bottom vertex on a common baseline.

	Wedge sides carry their labels (``2l``, ``3r``); the top sides carry
	the labels of the wedge sides they are glued to.  Left sides are
	drawn blue, right sides red and diagonals dashed.

	Args:
		q: the Quadrangulation.

		filename: Shortcut to immediately call write() against this file.

		scale: pixels per unit length.

	"""
	LEFT_COLOR = '#1f5fbf'
	RIGHT_COLOR = '#bf1f1f'
	MARGIN = 20

	def __init__(self, q:Quadrangulation, filename:str=None, scale:int=80):
		self.scale = scale
		super(SvgOutput, self).__init__(q, filename)

	def _layout(self):
		"""Per quadrilateral, its four vertices as floats, placed in a row."""
		q = self.obj
		shapes = []
		x0 = 0.0
		for i in range(1, q.k + 1):
			w = q.wedge(i)
			d = diagonal(q, i)
			pts = [(0.0, 0.0), (float(w.right.x), float(w.right.y)),
				(float(d.x), float(d.y)), (float(w.left.x), float(w.left.y))]
			lo = min(p[0] for p in pts)
			hi = max(p[0] for p in pts)
			shift = x0 - lo
			shapes.append([(x + shift, y) for x, y in pts])
			x0 += hi - lo + 0.5
		return shapes

	def _fmt(self, v) -> str:
		return '{0:.2f}'.format(v)

	def text(self):
		q = self.obj
		shapes = self._layout()
		s = self.scale
		m = self.MARGIN
		width = max(x for sh in shapes for x, _ in sh) * s + 2 * m
		height = max(y for sh in shapes for _, y in sh) * s + 2 * m

		def pt(p):
			return m + p[0] * s, height - m - p[1] * s

		svg = ET.Element('svg', {
			'xmlns': 'http://www.w3.org/2000/svg',
			'width': self._fmt(width),
			'height': self._fmt(height),
			'viewBox': '0 0 {0} {1}'.format(self._fmt(width), self._fmt(height)),
		})
		pl, pr = q.datum.perm_l, q.datum.perm_r
		for i, sh in enumerate(shapes, 1):
			g = ET.SubElement(svg, 'g', {'id': 'q{0}'.format(i)})
			ET.SubElement(g, 'polygon', {
				'points': ' '.join('{0},{1}'.format(*(self._fmt(c) for c in pt(p))) for p in sh),
				'fill': '#f4f4f4',
				'stroke': 'none',
			})
			# bottom->right, right->top, top->left, left->bottom
			edges = [
				(sh[0], sh[1], '{0}r'.format(i), self.RIGHT_COLOR),
				(sh[1], sh[2], '{0}l'.format(pr(i)), self.LEFT_COLOR),
				(sh[2], sh[3], '{0}r'.format(pl(i)), self.RIGHT_COLOR),
				(sh[3], sh[0], '{0}l'.format(i), self.LEFT_COLOR),
			]
			for a, b, label, color in edges:
				(x1, y1), (x2, y2) = pt(a), pt(b)
				ET.SubElement(g, 'line', {
					'x1': self._fmt(x1), 'y1': self._fmt(y1),
					'x2': self._fmt(x2), 'y2': self._fmt(y2),
					'stroke': color, 'stroke-width': '2',
				})
				t = ET.SubElement(g, 'text', {
					'x': self._fmt((x1 + x2) / 2), 'y': self._fmt((y1 + y2) / 2),
					'font-size': '12', 'fill': color, 'text-anchor': 'middle',
				})
				t.text = label
			(x1, y1), (x2, y2) = pt(sh[0]), pt(sh[2])
			ET.SubElement(g, 'line', {
				'x1': self._fmt(x1), 'y1': self._fmt(y1),
				'x2': self._fmt(x2), 'y2': self._fmt(y2),
				'stroke': '#777777', 'stroke-dasharray': '4 3',
			})
			t = ET.SubElement(g, 'text', {
				'x': self._fmt((x1 + x2) / 2), 'y': self._fmt(height - m / 4),
				'font-size': '14', 'text-anchor': 'middle',
			})
			t.text = 'q{0}'.format(i)
		return ET.tostring(svg, encoding='unicode') + '\n'
