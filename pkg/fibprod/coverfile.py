#
# Reading and writing cover, dessin, and coefficient files
#

import json
import os
import sys

from .cover import BranchedCover, BranchLabel, BranchPoint, check
from .dessin import BELYI_LABELS, DessinError, cover_from_dessin, dessin_from_cover
from .loaders import NUMERIC
from .parser import CoverFileParser, CoverSyntaxError, LabelText
from .perm import PermutationError, from_cycle_lists

FORMAT_VERSION = 1

_COVER_PARSER = None


def _parser():
	global _COVER_PARSER

	if _COVER_PARSER is None:
		_COVER_PARSER = CoverFileParser()

	return _COVER_PARSER


def _as_text(data):
	if isinstance(data, bytes):
		try:
			return data.decode('utf-8')
		except UnicodeDecodeError as ude:
			raise CoverSyntaxError(f'invalid UTF-8 input: {ude}') from ude

	return data


def _label(text: LabelText, line, column):
	if text.name == 'inf' and text.value is not None:
		raise CoverSyntaxError('the label inf cannot carry a coordinate', line, column)

	return BranchLabel(text.name, text.value)


def _permutation(cycles, degree, line=None, column=None):
	try:
		return from_cycle_lists(cycles, degree)
	except PermutationError as pe:
		raise CoverSyntaxError(str(pe), line, column) from pe


def parse_cover_file(data, validate=True):
	"""Parse a cover file (bytes or text) to a validated cover"""

	raw = _parser().parse(_as_text(data))
	n = raw.degree

	handles = tuple((_permutation(a, n), _permutation(b, n)) for a, b in raw.handles)
	points = tuple(BranchPoint(_label(entry.label, entry.line, entry.column),
	                           _permutation(entry.cycles, n, entry.line, entry.column),
	                           entry.pad)
	               for entry in raw.branches)

	cover = BranchedCover(n, points, raw.base_genus, handles)

	return check(cover) if validate else cover


def _cycles_text(perm):
	return str(perm) if not perm.is_identity() else '()'


def format_cover(c: BranchedCover):
	"""Text of a cover file"""

	lines = [f'version {FORMAT_VERSION}', f'base_genus {c.base_genus}', f'degree {c.degree}']

	for a, b in c.handles:
		lines.append(f'handle {_cycles_text(a)} ; {_cycles_text(b)}')

	for bp in c.branch_points:
		if bp.label.approx is not None and bp.label.value is None:
			lines.append(f'# {bp.label.name} near {bp.label.approx:.12g}')

		lines.append(f'branch {bp.label} {_cycles_text(bp.perm)}{" pad" if bp.padding else ""}')

	return '\n'.join(lines) + '\n'


def parse_dessin_file(data):
	"""Parse a dessin file (a cover file over exactly 0, 1, and inf)"""

	cover = parse_cover_file(data)

	if cover.labels != list(BELYI_LABELS):
		raise DessinError(f'a dessin file needs the labels 0, 1, inf in this order, '
		                  f'found {" ".join(map(str, cover.labels)) or "none"}')

	return dessin_from_cover(cover)


def format_dessin(dessin):
	return format_cover(cover_from_dessin(dessin))


def parse_coefficient_file(data):
	"""Rational map from a JSON coefficient file"""

	RationalMap, RationalMapError = NUMERIC['RationalMap'], NUMERIC['RationalMapError']

	try:
		content = json.loads(_as_text(data))
	except json.JSONDecodeError as jde:
		raise RationalMapError(f'invalid coefficient file: {jde}') from jde

	if not isinstance(content, dict) or content.get('version') != FORMAT_VERSION:
		raise RationalMapError(f'coefficient files must be objects with "version": {FORMAT_VERSION}')

	numerator = content.get('numerator')
	denominator = content.get('denominator', ['1'])

	if not isinstance(numerator, list) or not isinstance(denominator, list):
		raise RationalMapError('numerator and denominator must be lists of coefficients')

	try:
		return RationalMap.from_coefficients(numerator, denominator)
	except ValueError as ve:
		raise RationalMapError(f'invalid coefficient: {ve}') from ve


def read_input(path: str):
	"""Content of a file, or of the standard input for -"""

	if path == '-':
		return sys.stdin.buffer.read()

	with open(path, 'rb') as stream:
		return stream.read()


def load_map(argument: str):
	"""Rational map from an expression, a JSON coefficient file, or - for stdin"""

	RationalMap = NUMERIC['RationalMap']

	if argument == '-' or argument.endswith('.json') and os.path.exists(argument):
		data = read_input(argument)
		text = _as_text(data).strip()

		if text.startswith('{'):
			return parse_coefficient_file(text)

		return RationalMap.parse(text)

	return RationalMap.parse(argument)


def load_cover(path: str):
	return parse_cover_file(read_input(path))


def load_dessin(path: str):
	return parse_dessin_file(read_input(path))


__all__ = ['parse_cover_file', 'format_cover', 'parse_dessin_file', 'parse_coefficient_file',
           'load_map', 'load_cover', 'load_dessin']
