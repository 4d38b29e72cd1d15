#
# Dessins d'enfants as pairs of permutations on edges
#
# A dessin with n edges is given by the rotations sigma0 and sigma1 at its
# black and white vertices. The faces are the cycles of
# sigma_inf = (sigma0 sigma1)^-1, and the dessin is the Belyi cover with
# monodromy sigma0, sigma1, sigma_inf over 0, 1 and inf.
#

import logging
import math
from dataclasses import dataclass

from .common import FiberProductError, lcm_all
from .cover import BranchedCover, BranchLabel, BranchPoint, genus
from .fiber import decompose
from .perm import Permutation, is_transitive, simultaneous_conjugator

logger = logging.getLogger(__name__)

ZERO = BranchLabel.exact(0)
ONE = BranchLabel.exact(1)
INFINITY = BranchLabel.infinity()

BELYI_LABELS = (ZERO, ONE, INFINITY)


class DessinError(FiberProductError):
	"""Invalid dessin"""


class NotBelyiError(DessinError):
	"""Cover that is not a Belyi pair"""


class InconsistentDessinError(DessinError):
	"""Dessin data contradicting the Euler formula"""


@dataclass(frozen=True)
class Valence:
	"""Degrees of black vertices, white vertices, and faces"""

	blacks: tuple[int, ...]
	whites: tuple[int, ...]
	faces: tuple[int, ...]

	def __str__(self):
		return '(' + '; '.join(','.join(map(str, part)) for part in (self.blacks, self.whites, self.faces)) + ')'


class Dessin:
	"""Bipartite map given by the rotations at its vertices"""

	__slots__ = ('sigma0', 'sigma1', 'sigma_inf')

	def __init__(self, sigma0: Permutation, sigma1: Permutation):
		if sigma0.degree != sigma1.degree:
			raise DessinError(f'rotations of degrees {sigma0.degree} and {sigma1.degree}')

		if not is_transitive((sigma0, sigma1), sigma0.degree):
			raise DessinError('the rotations do not act transitively on the edges')

		self.sigma0 = sigma0
		self.sigma1 = sigma1
		self.sigma_inf = (sigma0 * sigma1).inverse()

	@property
	def n(self):
		return self.sigma0.degree

	def __eq__(self, other):
		return isinstance(other, Dessin) and self.sigma0 == other.sigma0 and self.sigma1 == other.sigma1

	def __hash__(self):
		return hash((self.sigma0, self.sigma1))

	def __repr__(self):
		return f'Dessin({str(self.sigma0)!r}, {str(self.sigma1)!r}, n={self.n})'


def dessin_from_cover(c: BranchedCover):
	"""Dessin of a Belyi pair (monodromy at 0 and 1)"""

	if c.base_genus != 0:
		raise NotBelyiError(f'base of genus {c.base_genus} is not the sphere')

	for bp in c.branch_points:
		if not bp.padding and bp.label not in BELYI_LABELS:
			raise NotBelyiError(f'branch value {bp.label} outside 0, 1, inf')

	sigma0, sigma1, sigma_inf = (c.perm_at(label) for label in BELYI_LABELS)

	if not (sigma0 * sigma1 * sigma_inf).is_identity():
		raise NotBelyiError('the monodromy at 0, 1, inf does not compose to the identity in this order')

	return Dessin(sigma0, sigma1)


def cover_from_dessin(dessin: Dessin):
	"""Belyi cover with monodromy sigma0, sigma1, sigma_inf"""

	points = tuple(BranchPoint(label, perm, perm.is_identity())
	               for label, perm in zip(BELYI_LABELS, (dessin.sigma0, dessin.sigma1, dessin.sigma_inf)))

	return BranchedCover(dessin.n, points)


def _lengths(perm: Permutation):
	return tuple(sorted(len(cycle) for cycle in perm.cycles(include_fixed=True)))


def valence(dessin: Dessin):
	"""Sorted degrees of the vertices and faces"""

	return Valence(_lengths(dessin.sigma0), _lengths(dessin.sigma1), _lengths(dessin.sigma_inf))


def euler_genus(dessin: Dessin):
	"""Genus from vertices, edges, and faces"""

	val = valence(dessin)
	chi = len(val.blacks) + len(val.whites) + len(val.faces) - dessin.n

	if chi % 2 != 0 or chi > 2:
		raise InconsistentDessinError(f'Euler characteristic {chi} does not correspond to a surface')

	return (2 - chi) // 2


@dataclass(frozen=True)
class DessinCriteria:
	"""Sufficient conditions for the fiber product of two dessins to be a single dessin"""

	cond1: bool
	cond2: bool

	@property
	def predicted_single_dessin(self):
		return self.cond1 or self.cond2


def product_criteria(d1: Dessin, d2: Dessin):
	"""Degree and valence conditions for the product to be one dessin"""

	val1, val2 = valence(d1), valence(d2)

	cond2 = all(math.gcd(lcm_all(part1), lcm_all(part2)) == 1
	            for part1, part2 in ((val1.blacks, val2.blacks),
	                                 (val1.whites, val2.whites),
	                                 (val1.faces, val2.faces)))

	return DessinCriteria(math.gcd(d1.n, d2.n) == 1, cond2)


def dessin_fiber_product(d1: Dessin, d2: Dessin):
	"""Dessins of the components of the fiber product"""

	dec = decompose(cover_from_dessin(d1), cover_from_dessin(d2))
	dessins = [dessin_from_cover(component.cover) for component in dec.components]

	logger.debug('product of dessins with %d and %d edges has %d components', d1.n, d2.n, len(dessins))

	return dessins


def dessins_equivalent(d1: Dessin, d2: Dessin):
	"""Relabeling of edges taking d1 to d2, or None"""

	if d1.n != d2.n:
		return None

	return simultaneous_conjugator((d1.sigma0, d1.sigma1), (d2.sigma0, d2.sigma1), d1.n)


def dessin_genus_agrees(dessin: Dessin):
	"""Whether the Euler genus equals the Riemann-Hurwitz genus of the cover"""

	return euler_genus(dessin) == genus(cover_from_dessin(dessin))
