#
# Parsers for cycle notation, cover files, and rational-map expressions
#
# Cover files are line oriented:
#
#	version 1
#	base_genus <int>
#	degree <int>
#	handle <cycles> ; <cycles>
#	branch <label> <cycles> [pad]
#
# where cycles are written as (1 2 3)(4 5), () is the identity, and labels
# are identifiers, exact rationals p/q, Gaussian rationals a/b+c/di, inf,
# or name=value for a named label with an exact coordinate.
#

from dataclasses import dataclass, field
from fractions import Fraction

from lark import Lark, Token
from lark.exceptions import LarkError, UnexpectedInput

from .common import FiberProductError

CYCLES_GRAMMAR = r'''
start: cycle*
cycle: "(" INT* ")"

%import common.INT
%import common.WS
%ignore WS
'''

COVER_GRAMMAR = r'''
start: (_statement? _NL)*

_statement: version
    | base_genus
    | degree
    | handle
    | branch

version: "version" INT
base_genus: "base_genus" INT
degree: "degree" INT
handle: "handle" cycles ";" cycles
branch: "branch" label cycles PAD?

cycles: cycle*
cycle: "(" INT* ")"

label: NAME ("=" number)?
    | number

number: GAUSSIAN | IMAG | RATIONAL

PAD: "pad"
NAME: /[A-Za-z_][A-Za-z0-9_]*/
GAUSSIAN.2: /[+-]?\d+(\/\d+)?[+-]\d+(\/\d+)?i(?![\w])/
IMAG.2: /[+-]?\d+(\/\d+)?i(?![\w])/
RATIONAL: /[+-]?\d+(\/\d+)?/
COMMENT: /#[^\n]*/
_NL: /\n+/

%import common.INT
%ignore COMMENT
%ignore /[ \t\f\r]+/
'''

EXPRESSION_GRAMMAR = r'''
?start: sum

?sum: product
    | sum "+" product -> add
    | sum "-" product -> sub

?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div
    | product power -> mul

?unary: power
    | "-" unary -> neg
    | "+" unary

?power: atom
    | atom ("^" | "**") unary -> pow

?atom: INT -> number
    | IMAG_UNIT -> imag
    | VAR -> var
    | "(" sum ")"
    | "{" sum "}"

IMAG_UNIT.2: "i" | "I"
VAR: /[a-hj-zA-HJ-Z]/

%import common.INT
%import common.WS
%ignore WS
'''


class CoverSyntaxError(FiberProductError):
	"""Syntax error in a cover or dessin file"""

	def __init__(self, text, line=None, column=None):
		if line is not None:
			text = f'line {line}, column {column}: {text}'

		super().__init__(text)
		self.line = line
		self.column = column


class ExpressionError(FiberProductError):
	"""Invalid rational-map expression"""


@dataclass(frozen=True)
class LabelText:
	"""Label as written in a file (name and/or exact coordinate)"""

	name: str | None
	value: tuple[Fraction, Fraction] | None


@dataclass
class BranchEntry:
	"""Branch line of a cover file"""

	label: LabelText
	cycles: list[list[int]]
	pad: bool
	line: int
	column: int


@dataclass
class CoverFile:
	"""Raw content of a cover file"""

	version: int = None
	base_genus: int = 0
	degree: int = None
	handles: list[tuple[list[list[int]], list[list[int]]]] = field(default_factory=list)
	branches: list[BranchEntry] = field(default_factory=list)


def parse_rational(text: str):
	"""Parse p/q or an integer to a fraction"""

	return Fraction(text)


def parse_number(text: str):
	"""Parse an exact rational or Gaussian rational to a pair of fractions"""

	if not text.endswith('i'):
		return parse_rational(text), Fraction(0)

	body = text[:-1]

	# Split at the sign between real and imaginary parts (not the leading one)
	for k in range(len(body) - 1, 0, -1):
		if body[k] in '+-':
			return parse_rational(body[:k]), parse_rational(body[k:])

	return Fraction(0), parse_rational(body)


class CycleParser:
	"""Parser for cycle notation"""

	def __init__(self):
		self.parser = Lark(CYCLES_GRAMMAR, parser='lalr')

	def parse(self, text: str):
		"""Parse to a list of cycles of 1-based symbols"""

		try:
			tree = self.parser.parse(text)
		except LarkError as le:
			raise FiberProductError(f'malformed cycle notation: {le}') from le

		return [[int(token) for token in cycle.children] for cycle in tree.children]


class CoverFileParser:
	"""Parser for the cover file format"""

	def __init__(self):
		self.parser = Lark(COVER_GRAMMAR, parser='lalr', propagate_positions=True)

	@staticmethod
	def _cycles(ast):
		return [[int(token) for token in cycle.children] for cycle in ast.children]

	@staticmethod
	def _label(ast):
		first, *rest = ast.children

		# Bare number
		if not isinstance(first, Token):
			return LabelText(None, parse_number(first.children[0].value))

		value = parse_number(rest[0].children[0].value) if rest else None

		return LabelText(first.value, value)

	def _translate(self, tree):
		"""Translate the Lark tree to a CoverFile"""

		cover = CoverFile()
		seen = set()

		for stmt in tree.children:
			kind = stmt.data.value
			line, column = stmt.meta.line, stmt.meta.column

			if kind in ('version', 'base_genus', 'degree'):
				if kind in seen:
					raise CoverSyntaxError(f'repeated {kind} statement', line, column)
				seen.add(kind)

			match kind:
				case 'version':
					cover.version = int(stmt.children[0])
					if cover.version != 1:
						raise CoverSyntaxError(f'unsupported format version {cover.version}', line, column)

				case 'base_genus':
					cover.base_genus = int(stmt.children[0])

				case 'degree':
					cover.degree = int(stmt.children[0])
					if cover.degree < 1:
						raise CoverSyntaxError('the degree must be positive', line, column)

				case 'handle':
					cover.handles.append((self._cycles(stmt.children[0]), self._cycles(stmt.children[1])))

				case 'branch':
					label, cycles, *pad = stmt.children
					cover.branches.append(BranchEntry(self._label(label), self._cycles(cycles),
					                                  bool(pad), line, column))

		if cover.version is None:
			raise CoverSyntaxError('missing version statement', 1, 1)

		if cover.degree is None:
			raise CoverSyntaxError('missing degree statement', 1, 1)

		if len(cover.handles) != cover.base_genus:
			raise CoverSyntaxError(f'expected {cover.base_genus} handle lines, '
			                       f'found {len(cover.handles)}', 1, 1)

		return cover

	def parse(self, text: str):
		"""Parse the text of a cover file"""

		try:
			# The grammar expects every statement to end with a newline
			tree = self.parser.parse(text + '\n')

		except UnexpectedInput as ui:
			raise CoverSyntaxError(f'unexpected input {ui.get_context(text).strip()!r}',
			                       ui.line, ui.column) from ui

		except LarkError as le:
			raise CoverSyntaxError(str(le)) from le

		return self._translate(tree)


class ExpressionParser:
	"""Parser for rational-map expressions in one variable"""

	def __init__(self):
		# SymPy is only needed for rational maps
		import sympy

		self.sympy = sympy
		self.parser = Lark(EXPRESSION_GRAMMAR, parser='lalr')

	def _translate(self, ast, variables):
		"""Translate from Lark to a SymPy expression"""

		if isinstance(ast, Token):
			raise ExpressionError(f'unexpected token {ast.value!r}')

		args = ast.children

		match ast.data:
			case 'number':
				return self.sympy.Integer(int(args[0]))
			case 'imag':
				return self.sympy.I
			case 'var':
				variables.add(args[0].value)
				return self.sympy.Symbol('z')

		values = [self._translate(arg, variables) for arg in args]

		match ast.data:
			case 'add':
				return values[0] + values[1]
			case 'sub':
				return values[0] - values[1]
			case 'mul':
				return values[0] * values[1]
			case 'div':
				if values[1] == 0:
					raise ExpressionError('division by zero')
				return values[0] / values[1]
			case 'neg':
				return -values[0]
			case 'pow':
				if not values[1].is_integer:
					raise ExpressionError(f'exponent {values[1]} is not an integer')
				return values[0] ** values[1]

		raise ExpressionError(f'unexpected rule {ast.data}')

	def parse(self, text: str):
		"""Parse an expression to SymPy in the variable z"""

		try:
			tree = self.parser.parse(text)
		except LarkError as le:
			raise ExpressionError(f'cannot parse expression: {le}') from le

		variables = set()
		expr = self._translate(tree, variables)

		if len(variables) > 1:
			raise ExpressionError(f'more than one variable: {", ".join(sorted(variables))}')

		return expr
