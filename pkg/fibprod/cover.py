#
# Branched covers described by their monodromy
#
# A cover of degree n over a base of genus g0 is given by g0 handle pairs
# (a_i, b_i) and an ordered list of branch permutations c_j such that
#
#	[a_1, b_1] ... [a_g0, b_g0] c_1 ... c_k = 1,	[a, b] = a b a^-1 b^-1
#
# in the composition order of the perm module.
#

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .common import FiberProductError, lcm_all
from .perm import CycleType, Permutation, cycle_type, group_order_bounded, is_transitive, orbits

logger = logging.getLogger(__name__)


class CoverError(FiberProductError):
	"""Invalid cover data"""


class InconsistentCoverError(CoverError):
	"""Cover data contradicting the Riemann-Hurwitz formula"""


class LabelConflictError(CoverError):
	"""Two branch labels that cannot be identified consistently"""


class LabelOrderError(CoverError):
	"""Shared branch labels listed in incompatible orders"""


class ValidationError(CoverError):
	"""A cover failed validation"""

	def __init__(self, report):
		super().__init__('; '.join(str(violation) for violation in report.violations))
		self.report = report


def format_value(value):
	"""Canonical text of an exact (Gaussian) rational"""

	real, imag = value

	if imag == 0:
		return str(real)

	imag_text = f'{imag}i'

	if real == 0:
		return imag_text

	return f'{real}{"" if imag < 0 else "+"}{imag_text}'


@dataclass(frozen=True, eq=False)
class BranchLabel:
	"""Branch value: a symbolic name, an exact coordinate, or both"""

	name: str | None = None
	value: tuple[Fraction, Fraction] | None = None
	# Numerical approximation for reporting, never compared
	approx: complex | None = field(default=None, compare=False)

	def __post_init__(self):
		if self.name is None and self.value is None:
			raise CoverError('empty branch label')

	@classmethod
	def named(cls, name: str, approx=None):
		return cls(name=name, approx=approx)

	@classmethod
	def exact(cls, real, imag=0):
		return cls(value=(Fraction(real), Fraction(imag)))

	@classmethod
	def infinity(cls):
		return cls(name='inf')

	@property
	def key(self):
		"""Identity of the label (its name if it has one, its value otherwise)"""

		return ('name', self.name) if self.name is not None else ('value', self.value)

	@property
	def is_infinity(self):
		return self.name == 'inf'

	def sort_key(self):
		"""Canonical order: exact values, then names, then inf"""

		if self.is_infinity:
			return 2, '', Fraction(0), Fraction(0)

		if self.name is None:
			return 0, '', *self.value

		return 1, self.name, Fraction(0), Fraction(0)

	def __eq__(self, other):
		return isinstance(other, BranchLabel) and self.key == other.key

	def __hash__(self):
		return hash(self.key)

	def __str__(self):
		if self.value is None:
			return self.name
		if self.name is None:
			return format_value(self.value)
		return f'{self.name}={format_value(self.value)}'

	def __repr__(self):
		return f'BranchLabel({str(self)!r})'


@dataclass(frozen=True)
class BranchPoint:
	"""Branch value with its local monodromy"""

	label: BranchLabel
	perm: Permutation
	padding: bool = False


@dataclass(frozen=True)
class Violation:
	"""Failed invariant of a cover"""

	kind: str
	message: str
	residual: Permutation | None = None

	def __str__(self):
		text = f'{self.kind}: {self.message}'
		return f'{text} (residual {self.residual})' if self.residual is not None else text


@dataclass(frozen=True)
class ValidationReport:
	"""Result of validating a cover (violations are data)"""

	violations: tuple[Violation, ...] = ()

	@property
	def ok(self):
		return not self.violations

	def __bool__(self):
		return self.ok


@dataclass(frozen=True)
class BranchedCover:
	"""Monodromy description of a branched cover"""

	degree: int
	branch_points: tuple[BranchPoint, ...] = ()
	base_genus: int = 0
	handles: tuple[tuple[Permutation, Permutation], ...] = ()

	@classmethod
	def create(cls, degree, branches, base_genus=0, handles=(), pad_identities=False):
		"""Build from (label, permutation) pairs, optionally flagging identities as padding"""

		points = []

		for entry in branches:
			if isinstance(entry, BranchPoint):
				points.append(entry)
			else:
				label, perm = entry
				points.append(BranchPoint(label, perm, pad_identities and perm.is_identity()))

		return cls(degree, tuple(points), base_genus, tuple(tuple(pair) for pair in handles))

	@property
	def labels(self):
		return [bp.label for bp in self.branch_points]

	def generators(self):
		"""All monodromy permutations (handles first, then branch points in order)"""

		gens = [perm for pair in self.handles for perm in pair]
		gens.extend(bp.perm for bp in self.branch_points)
		return gens

	def perm_at(self, label: BranchLabel):
		"""Local monodromy at a label (identity if unbranched there)"""

		for bp in self.branch_points:
			if bp.label == label:
				return bp.perm

		return Permutation.identity(self.degree)

	def without_padding(self):
		return BranchedCover(self.degree, tuple(bp for bp in self.branch_points if not bp.padding),
		                     self.base_genus, self.handles)


def relation_residual(c: BranchedCover):
	"""Product of handle commutators and branch permutations in order"""

	product = Permutation.identity(c.degree)

	for a, b in c.handles:
		product = product * a * b * a.inverse() * b.inverse()

	for bp in c.branch_points:
		product = product * bp.perm

	return product


def validate(c: BranchedCover):
	"""Check the invariants of a cover, reporting the violations"""

	violations = []

	if c.degree < 1:
		return ValidationReport((Violation('degree', f'degree {c.degree} is not positive'),))

	if len(c.handles) != c.base_genus:
		violations.append(Violation('handles', f'{len(c.handles)} handle pairs for base genus {c.base_genus}'))

	wrong_degree = [perm for perm in c.generators() if perm.degree != c.degree]

	if wrong_degree:
		violations.append(Violation('degree', f'permutation of degree {wrong_degree[0].degree} '
		                                      f'in a cover of degree {c.degree}'))
		return ValidationReport(tuple(violations))

	seen = set()

	for bp in c.branch_points:
		if bp.label in seen:
			violations.append(Violation('labels', f'repeated branch label {bp.label}'))
		seen.add(bp.label)

		if bp.perm.is_identity() and not bp.padding:
			violations.append(Violation('padding', f'identity monodromy at {bp.label} without padding flag'))

		elif bp.padding and not bp.perm.is_identity():
			violations.append(Violation('padding', f'padding entry at {bp.label} is not the identity'))

	residual = relation_residual(c)

	if not residual.is_identity():
		violations.append(Violation('relation', 'product relation does not hold', residual))

	if not is_transitive(c.generators(), c.degree):
		parts = len(orbits(c.generators(), c.degree))
		violations.append(Violation('transitivity', f'monodromy has {parts} orbits'))

	return ValidationReport(tuple(violations))


def check(c: BranchedCover):
	"""Validate or raise ValidationError"""

	report = validate(c)

	if not report.ok:
		raise ValidationError(report)

	return c


def euler_characteristic(c: BranchedCover):
	"""Riemann-Hurwitz: n (2 - 2 g0) - sum of (n - #cycles)"""

	n = c.degree
	ramification = sum(n - len(cycle_type(bp.perm)) for bp in c.branch_points)

	return n * (2 - 2 * c.base_genus) - ramification


def genus(c: BranchedCover):
	"""Genus of the covering surface"""

	chi = euler_characteristic(c)

	if chi % 2 != 0 or chi > 2:
		raise InconsistentCoverError(f'Euler characteristic {chi} does not correspond to a surface')

	return (2 - chi) // 2


def local_orders(c: BranchedCover, q: BranchLabel):
	"""Cycle type of the monodromy at q (all ones if unbranched)"""

	return cycle_type(c.perm_at(q))


def a_lcm(c: BranchedCover, q: BranchLabel):
	"""Least common multiple of the local orders over q"""

	return lcm_all(local_orders(c, q))


def monodromy_group_order(c: BranchedCover, cap: int):
	"""Order of the monodromy group, or None if it exceeds cap"""

	return group_order_bounded(c.generators(), c.degree, cap)


def is_regular(c: BranchedCover):
	"""Whether the monodromy group acts regularly (order equal to the degree)"""

	return monodromy_group_order(c, c.degree) == c.degree


def restrict(c: BranchedCover, orbit):
	"""Cover induced on an invariant set of points, relabeled by its order"""

	handles = tuple((a.restrict(orbit), b.restrict(orbit)) for a, b in c.handles)

	points = []

	for bp in c.branch_points:
		perm = bp.perm.restrict(orbit)
		points.append(BranchPoint(bp.label, perm, perm.is_identity()))

	return BranchedCover(len(orbit), tuple(points), c.base_genus, handles)


def cycle_types(c: BranchedCover):
	"""Cycle type at each branch label"""

	return {bp.label: cycle_type(bp.perm) for bp in c.branch_points}


def trivial_cover(base_genus=0, labels=()):
	"""Degree-1 cover (identity map of the base)"""

	identity = Permutation.identity(1)

	return BranchedCover(1, tuple(BranchPoint(label, identity, True) for label in labels),
	                     base_genus, tuple((identity, identity) for _ in range(base_genus)))


__all__ = [
	'BranchLabel', 'BranchPoint', 'BranchedCover', 'CycleType', 'ValidationReport', 'Violation',
	'validate', 'check', 'genus', 'local_orders', 'a_lcm', 'is_regular', 'restrict',
]
