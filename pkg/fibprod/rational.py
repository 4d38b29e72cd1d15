#
# Rational self-maps of the sphere and their critical values
#
# A map f = P/Q is kept with exact coefficients (rationals, or Gaussian
# rationals through the extension by I). Critical values are found from
# the factorization of W = P'Q - PQ': each irreducible factor h of W with
# exponent k contributes deg(h) critical points of local order k + 1, and
# the resultant Res_z(h, P - tQ) gives the polynomial whose roots are their
# values. Linear factors of that resultant are exact values, the others
# are located numerically and named c1, c2, ...
#

import logging
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
import sympy

from .common import FiberProductError, InconsistencyError, NumericalError
from .cover import BranchLabel
from .parser import ExpressionParser, parse_number
from .perm import CycleType
from .roots import sorted_roots

logger = logging.getLogger(__name__)

Z = sympy.Symbol('z')
T = sympy.Symbol('t')

# Largest supported degree
DEGREE_CAP = 64

INFINITY_KEY = ('inf',)

# Least distance between two distinct values
RESOLUTION = 1e-8


class RationalMapError(FiberProductError):
	"""Invalid rational map"""


class ResolutionError(NumericalError):
	"""Values too close to be told apart"""


def _domain_args(gaussian):
	return {'extension': sympy.I} if gaussian else {'domain': sympy.QQ}


def _exact_pair(value):
	"""Exact (Gaussian) rational to a pair of fractions"""

	real, imag = (sympy.Rational(part) for part in sympy.expand(value).as_real_imag())

	return Fraction(int(real.p), int(real.q)), Fraction(int(imag.p), int(imag.q))


def _numeric_coeffs(poly):
	"""Coefficients of a univariate polynomial as a complex array (descending)"""

	return np.array([complex(c) for c in poly.all_coeffs()], dtype=np.complex128)


class RationalMap:
	"""Rational function P/Q in lowest terms"""

	def __init__(self, numerator, denominator=1, gaussian=None):
		numerator, denominator = sympy.sympify(numerator), sympy.sympify(denominator)

		if gaussian is None:
			gaussian = numerator.has(sympy.I) or denominator.has(sympy.I)

		p = sympy.Poly(numerator, Z, **_domain_args(gaussian))
		q = sympy.Poly(denominator, Z, **_domain_args(gaussian))

		if q.is_zero:
			raise RationalMapError('zero denominator')

		# Lowest terms with a monic denominator
		g = p.gcd(q)
		p, q = p.exquo(g), q.exquo(g)
		lc = q.LC()
		p, q = p.quo_ground(lc), q.quo_ground(lc)

		self.numerator = p
		self.denominator = q
		self.gaussian = gaussian

		if self.degree < 1:
			raise RationalMapError(f'constant map {self}')

		if self.degree > DEGREE_CAP:
			raise RationalMapError(f'degree {self.degree} exceeds the supported maximum {DEGREE_CAP}')

	@classmethod
	def from_expression(cls, expr, gaussian=None):
		num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
		return cls(sympy.expand(num), sympy.expand(den), gaussian)

	@classmethod
	def parse(cls, text: str):
		"""Parse an expression in one variable"""

		return cls.from_expression(ExpressionParser().parse(text))

	@classmethod
	def from_coefficients(cls, numerator, denominator=('1',)):
		"""Build from coefficient strings in ascending degree"""

		def to_expr(coeffs):
			terms = []

			for k, text in enumerate(coeffs):
				real, imag = parse_number(str(text).strip())
				terms.append((sympy.Rational(real.numerator, real.denominator)
				              + sympy.I * sympy.Rational(imag.numerator, imag.denominator)) * Z ** k)

			return sympy.Add(*terms)

		return cls(to_expr(numerator), to_expr(denominator))

	def promoted(self):
		"""Same map over the Gaussian rationals"""

		return self if self.gaussian else RationalMap(self.numerator.as_expr(), self.denominator.as_expr(), True)

	@property
	def degree(self):
		return max(self.numerator.degree(), self.denominator.degree())

	def as_expr(self):
		return self.numerator.as_expr() / self.denominator.as_expr()

	def value_at_infinity(self):
		"""Exact f(inf) as a pair of fractions, or None if it is infinity"""

		dp, dq = self.numerator.degree(), self.denominator.degree()

		if dp > dq:
			return None

		if dp < dq:
			return Fraction(0), Fraction(0)

		return _exact_pair(self.numerator.LC() / self.denominator.LC())

	def numeric(self):
		"""Numerator and denominator as complex arrays of length degree + 1 (descending)"""

		d = self.degree
		p, q = _numeric_coeffs(self.numerator), _numeric_coeffs(self.denominator)

		return np.pad(p, (d + 1 - len(p), 0)), np.pad(q, (d + 1 - len(q), 0))

	def __eq__(self, other):
		return isinstance(other, RationalMap) and self.numerator == other.numerator \
		       and self.denominator == other.denominator

	def __hash__(self):
		return hash((self.numerator.as_expr(), self.denominator.as_expr()))

	def __str__(self):
		return str(self.as_expr())

	def __repr__(self):
		return f'RationalMap({str(self)!r})'


@dataclass(frozen=True)
class CriticalValue:
	"""Value of a rational map with the local orders of its preimages"""

	key: tuple
	point: complex | None
	orders: CycleType
	label: BranchLabel | None = None

	@property
	def is_critical(self):
		return not self.orders.is_trivial()

	@property
	def is_infinity(self):
		return self.key == INFINITY_KEY


def _exact_key(pair):
	return 'exact', pair


def _value_orders(f: RationalMap):
	"""Local orders (order -> count) of the critical points over each value key"""

	p, q = f.numerator, f.denominator
	d = f.degree
	orders = {}
	points = {}

	# Poles (including infinity when deg P > deg Q)
	poles = Counter()

	for factor, m in q.sqf_list()[1]:
		poles[m] += factor.degree()

	if p.degree() > q.degree():
		poles[p.degree() - q.degree()] += 1

	orders[INFINITY_KEY] = poles
	points[INFINITY_KEY] = None

	# Finite critical points from W = P'Q - PQ'
	w = p.diff(Z) * q - p * q.diff(Z)
	gens = (Z, T)
	domain = _domain_args(f.gaussian)
	fiber = sympy.Poly(p.as_expr() - T * q.as_expr(), *gens, **domain)

	for h, k in w.factor_list()[1]:
		if h.degree() == 0 or q.rem(h).is_zero:
			continue

		resultant = sympy.Poly(sympy.Poly(h.as_expr(), *gens, **domain).resultant(fiber), T, **domain)

		for r, s in resultant.factor_list()[1]:
			if r.degree() == 1:
				a, b = r.all_coeffs()
				pair = _exact_pair(-b / a)
				key = _exact_key(pair)
				orders.setdefault(key, Counter())[k + 1] += s
				points[key] = complex(float(pair[0]), float(pair[1]))

			else:
				monic = r.monic()
				for index, root in enumerate(sorted_roots(_numeric_coeffs(monic))):
					key = ('algebraic', monic.as_expr(), index)
					orders.setdefault(key, Counter())[k + 1] += s
					points[key] = complex(root)

	# The point at infinity when its value is finite
	at_infinity = f.value_at_infinity()

	if at_infinity is not None:
		key = _exact_key(at_infinity)
		dq = q.degree()

		if p.degree() < dq:
			order = dq - p.degree()
		else:
			c = p.LC() / q.LC()
			order = d - (p - q.mul_ground(c)).degree()

		orders.setdefault(key, Counter())[order] += 1
		points[key] = complex(float(at_infinity[0]), float(at_infinity[1]))

	return orders, points


def value_table(f: RationalMap):
	"""Critical values and the value at infinity, with their local orders"""

	d = f.degree
	orders, points = _value_orders(f)
	table = []
	budget = 0

	for key, counter in orders.items():
		lengths = [order for order, count in counter.items() for _ in range(count)]
		covered = sum(lengths)

		if covered > d:
			raise InconsistencyError(f'{covered} preimages counted over a value of a degree {d} map')

		lengths.extend([1] * (d - covered))
		cycle_type = CycleType(lengths)
		budget += d - len(cycle_type)
		table.append(CriticalValue(key, points[key], cycle_type))

	if budget != 2 * d - 2:
		raise InconsistencyError(f'total ramification {budget} differs from {2 * d - 2}')

	finite = [value for value in table if value.point is not None]

	for k, a in enumerate(finite):
		for b in finite[k + 1:]:
			if abs(a.point - b.point) < RESOLUTION:
				raise ResolutionError(f'critical values {a.point:.12g} and {b.point:.12g} '
				                      f'are closer than {RESOLUTION:g}')

	logger.debug('map of degree %d has %d critical values', d, sum(value.is_critical for value in table))

	return table


def assign_labels(values):
	"""Attach labels: exact values by coordinate, inf by name, the rest as c1, c2, ..."""

	def position(key):
		point = next(v.point for v in values if v.key == key)
		# Conjugate values share their real part up to rounding noise
		return round(point.real, 10), round(point.imag, 10)

	algebraic = sorted({value.key for value in values if value.key[0] == 'algebraic'}, key=position)
	names = {key: f'c{k}' for k, key in enumerate(algebraic, start=1)}

	labeled = []

	for value in values:
		match value.key[0]:
			case 'inf':
				label = BranchLabel.infinity()
			case 'exact':
				label = BranchLabel(value=value.key[1], approx=value.point)
			case _:
				label = BranchLabel.named(names[value.key], approx=value.point)

		labeled.append(replace(value, label=label))

	return labeled


def critical_values(f: RationalMap):
	"""Critical values with their local orders, in canonical label order"""

	values = assign_labels([value for value in value_table(f) if value.is_critical])

	return sorted(values, key=lambda value: value.label.sort_key())


def multiplicity_oracle(f: RationalMap, value):
	"""Local orders over an exact value, read from the factorization of P - vQ"""

	d = f.degree

	if value is None:
		fiber = f.denominator
	else:
		real, imag = value

		if imag != 0:
			f = f.promoted()

		v = sympy.Rational(real.numerator, real.denominator) + sympy.I * sympy.Rational(imag.numerator, imag.denominator)
		fiber = f.numerator - f.denominator.mul_ground(v)

	lengths = [m for factor, m in fiber.sqf_list()[1] for _ in range(factor.degree())]

	# The point at infinity lies over the value when the fiber polynomial drops degree
	if fiber.degree() < d:
		lengths.append(d - fiber.degree())

	return CycleType(lengths)
