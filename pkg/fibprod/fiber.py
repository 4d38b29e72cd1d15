#
# Fiber product of two branched covers over a common base
#
# The fiber product of (S1, b1) and (S2, b2) is described by the action of
# the monodromy on pairs (i, j) of fiber points. Its irreducible components
# are the orbits of this action, and its singular points are the pairs of
# cycles with both lengths >= 2 over the same branch value.
#

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import networkx as nx

from .common import InconsistencyError, gcd_all
from .cover import (BranchedCover, BranchPoint, CoverError, LabelConflictError, LabelOrderError,
                    a_lcm, check, genus, is_regular, restrict, validate)
from .perm import Permutation, orbits, simultaneous_conjugator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairPoint:
	"""Point (i, j) of the fiber product (0-based)"""

	i: int
	j: int

	@classmethod
	def from_index(cls, k: int, n1: int):
		return cls(k % n1, k // n1)

	def index(self, n1: int):
		"""Linear index i + n1 j"""

		return self.i + n1 * self.j

	def __str__(self):
		return f'({self.i + 1},{self.j + 1})'


@dataclass(frozen=True)
class FiberComponent:
	"""Irreducible component (an orbit of the product action)"""

	# Sorted by linear index
	orbit: tuple[PairPoint, ...]
	cover: BranchedCover
	d1: int
	d2: int
	genus: int

	@property
	def size(self):
		return len(self.orbit)


@dataclass(frozen=True)
class Cone:
	"""Cycle of the product action over a singular point"""

	cycle: tuple[int, ...]
	component: int


@dataclass(frozen=True)
class SingularPoint:
	"""Pair of simultaneous critical points"""

	label: object
	cycle1: tuple[int, ...]
	cycle2: tuple[int, ...]
	cones: tuple[Cone, ...]

	@property
	def n1(self):
		return len(self.cycle1)

	@property
	def n2(self):
		return len(self.cycle2)

	@property
	def cone_count(self):
		return len(self.cones)

	@property
	def disc_like(self):
		return self.cone_count == 1


@dataclass(frozen=True)
class LabelCriterion:
	"""Least common multiples of the local orders over a branch value"""

	label: object
	a1: int
	a2: int

	@property
	def coprime(self):
		return math.gcd(self.a1, self.a2) == 1


@dataclass(frozen=True)
class CriteriaReport:
	"""Sufficient conditions for irreducibility and the actual outcome"""

	cond1: bool
	cond2: bool
	actual_component_count: int
	labels: tuple[LabelCriterion, ...] = ()

	@property
	def predicted_irreducible(self):
		return self.cond1 or self.cond2


@dataclass(frozen=True)
class FiberDecomposition:
	"""Decomposition of a fiber product into irreducible components"""

	covers: tuple[BranchedCover, BranchedCover]
	product: BranchedCover
	components: tuple[FiberComponent, ...]
	singular_points: tuple[SingularPoint, ...]
	adjacency: nx.Graph
	connected: bool
	criteria: CriteriaReport
	bound: int

	@property
	def degrees(self):
		return self.covers[0].degree, self.covers[1].degree

	@property
	def labels(self):
		return self.covers[0].labels


@dataclass(frozen=True)
class IsomorphismReport:
	"""Whether all components are isomorphic, with conjugating witnesses"""

	isomorphic: bool
	# (k, l, g) with g conjugating the monodromy of component k to that of l
	witnesses: tuple[tuple[int, int, Permutation], ...] = ()
	# First pair found not to be isomorphic
	failure: tuple[int, int] | None = None


@dataclass(frozen=True)
class JacobianReport:
	"""Dimension bookkeeping for JC x JS0 ~ JS1 x JS2 x P"""

	applicable: bool
	failed_hypothesis: str | None = None
	g_C: int | None = None
	g0: int | None = None
	g1: int | None = None
	g2: int | None = None

	SHAPE = 'JC x JS0 ~ JS1 x JS2 x P'

	@property
	def dim_P(self):
		if not self.applicable:
			return None
		return self.g_C + self.g0 - self.g1 - self.g2


#
# Alignment of branch sets
#

def _check_label_conflicts(labels1, labels2):
	"""Raise LabelConflictError for labels that cannot be identified consistently"""

	for a in labels1:
		for b in labels2:
			same_key = a == b
			both_valued = a.value is not None and b.value is not None

			if same_key and both_valued and a.value != b.value:
				raise LabelConflictError(f'label {a.name} has coordinates {a} and {b}')

			if not same_key and both_valued and a.value == b.value:
				raise LabelConflictError(f'labels {a} and {b} name the same point')


def merge_labels(labels1, labels2):
	"""Common label list preserving the order of both inputs"""

	_check_label_conflicts(labels1, labels2)

	shared = set(labels1) & set(labels2)
	order1 = [label for label in labels1 if label in shared]
	order2 = [label for label in labels2 if label in shared]

	if order1 != order2:
		raise LabelOrderError(f'shared branch labels in different orders: '
		                      f'{" ".join(map(str, order1))} and {" ".join(map(str, order2))}')

	merged = []
	i = j = 0

	while i < len(labels1) or j < len(labels2):
		a = labels1[i] if i < len(labels1) else None
		b = labels2[j] if j < len(labels2) else None

		if a is not None and b is not None and a == b:
			# Keep the most informative version of the label
			merged.append(a if a.value is not None or b.value is None else b)
			i += 1
			j += 1

		elif b is None or a is not None and b in shared:
			merged.append(a)
			i += 1

		elif a is None or a in shared:
			merged.append(b)
			j += 1

		elif a.sort_key() <= b.sort_key():
			merged.append(a)
			i += 1

		else:
			merged.append(b)
			j += 1

	return merged


def _padded(c: BranchedCover, labels):
	"""Cover with branch entries for the given labels, padding the missing ones"""

	identity = Permutation.identity(c.degree)
	points = []

	for label in labels:
		bp = next((bp for bp in c.branch_points if bp.label == label), None)
		points.append(BranchPoint(label, identity, True) if bp is None else BranchPoint(label, bp.perm, bp.padding))

	return BranchedCover(c.degree, tuple(points), c.base_genus, c.handles)


def align_branch_sets(c1: BranchedCover, c2: BranchedCover):
	"""Extend both covers to the union of their branch sets"""

	if c1.base_genus != c2.base_genus:
		raise CoverError(f'covers over bases of genus {c1.base_genus} and {c2.base_genus}')

	labels = merge_labels(c1.labels, c2.labels)

	logger.debug('aligned branch set: %s', ' '.join(map(str, labels)))

	return _padded(c1, labels), _padded(c2, labels)


#
# Product action
#

def pair_permutation(p: Permutation, q: Permutation):
	"""Action of (p, q) on pairs under the linear index i + n1 j"""

	n1 = p.degree

	return Permutation(p.images[i] + n1 * q.images[j] for j in range(q.degree) for i in range(n1))


def product_action(c1: BranchedCover, c2: BranchedCover):
	"""Generators of the product action (handles first, then branch points)"""

	return [pair_permutation(p, q) for p, q in zip(c1.generators(), c2.generators())]


def product_cover(c1: BranchedCover, c2: BranchedCover):
	"""Possibly disconnected cover given by the product action of aligned covers"""

	handles = tuple((pair_permutation(a1, a2), pair_permutation(b1, b2))
	                for (a1, b1), (a2, b2) in zip(c1.handles, c2.handles))

	points = []

	for bp1, bp2 in zip(c1.branch_points, c2.branch_points):
		perm = pair_permutation(bp1.perm, bp2.perm)
		points.append(BranchPoint(bp1.label, perm, perm.is_identity()))

	return BranchedCover(c1.degree * c2.degree, tuple(points), c1.base_genus, handles)


#
# Decomposition
#

def _component(product: BranchedCover, orbit, n1: int, n2: int):
	"""Build and check the component cover on an orbit"""

	cover = restrict(product, orbit)
	report = validate(cover)

	if not report.ok:
		raise InconsistencyError(f'component on {len(orbit)} points is not a cover: '
		                         f'{"; ".join(map(str, report.violations))}')

	size = len(orbit)

	if size % n1 != 0 or size % n2 != 0:
		raise InconsistencyError(f'orbit of size {size} not divisible by the degrees {n1} and {n2}')

	points = tuple(PairPoint.from_index(x, n1) for x in orbit)

	return FiberComponent(points, cover, size // n1, size // n2, genus(cover))


def _singular_points(c1: BranchedCover, c2: BranchedCover, product: BranchedCover, component_of):
	"""Catalog of the pairs of cycles with both lengths >= 2 over each label"""

	n1 = c1.degree
	catalog = []

	for bp1, bp2, bpp in zip(c1.branch_points, c2.branch_points, product.branch_points):
		cycles1 = bp1.perm.cycles()
		cycles2 = bp2.perm.cycles()

		if not cycles1 or not cycles2:
			continue

		cycle_of = {}

		for cycle in bpp.perm.cycles(include_fixed=True):
			for x in cycle:
				cycle_of[x] = cycle

		for cycle1 in cycles1:
			for cycle2 in cycles2:
				# Product cycles inside the block cycle1 x cycle2, by least point
				block = {cycle_of[i + n1 * j] for i in cycle1 for j in cycle2}
				cones = tuple(Cone(cycle, component_of[cycle[0]]) for cycle in sorted(block))

				expected_length = math.lcm(len(cycle1), len(cycle2))

				if len(cones) != math.gcd(len(cycle1), len(cycle2)) or \
				   any(len(cone.cycle) != expected_length for cone in cones):
					raise InconsistencyError(f'cycle block over {bp1.label} breaks the gcd/lcm law')

				catalog.append(SingularPoint(bp1.label, cycle1, cycle2, cones))

	return tuple(catalog)


def _adjacency(count: int, singular_points):
	"""Graph joining the components that meet at a singular point"""

	graph = nx.Graph()
	graph.add_nodes_from(range(count))

	for point in singular_points:
		owners = sorted({cone.component for cone in point.cones})
		graph.add_edges_from((a, b) for k, a in enumerate(owners) for b in owners[k + 1:])

	return graph


def _criteria(c1: BranchedCover, c2: BranchedCover, count: int):
	labels = tuple(LabelCriterion(label, a_lcm(c1, label), a_lcm(c2, label)) for label in c1.labels)

	return CriteriaReport(
		cond1=math.gcd(c1.degree, c2.degree) == 1,
		cond2=all(criterion.coprime for criterion in labels),
		actual_component_count=count,
		labels=labels,
	)


def component_bound(c1: BranchedCover, c2: BranchedCover):
	"""Upper bound for the number of components"""

	return gcd_all((c1.degree, c2.degree))


def decompose(c1: BranchedCover, c2: BranchedCover, jobs: int = 1):
	"""Decompose the fiber product of two covers into irreducible components"""

	check(c1)
	check(c2)

	a1, a2 = align_branch_sets(c1, c2)
	n1, n2 = a1.degree, a2.degree

	product = product_cover(a1, a2)
	parts = orbits(product.generators(), product.degree)

	logger.debug('fiber product of degrees %d and %d has %d components', n1, n2, len(parts))

	if jobs > 1 and len(parts) > 1:
		with ThreadPoolExecutor(max_workers=jobs) as executor:
			components = tuple(executor.map(lambda orbit: _component(product, orbit, n1, n2), parts))
	else:
		components = tuple(_component(product, orbit, n1, n2) for orbit in parts)

	component_of = {}

	for k, component in enumerate(components):
		for point in component.orbit:
			component_of[point.index(n1)] = k

	singular_points = _singular_points(a1, a2, product, component_of)
	adjacency = _adjacency(len(components), singular_points)
	bound = component_bound(a1, a2)

	if len(components) > bound:
		raise InconsistencyError(f'{len(components)} components exceed the bound {bound}')

	return FiberDecomposition(
		covers=(a1, a2),
		product=product,
		components=components,
		singular_points=singular_points,
		adjacency=adjacency,
		connected=nx.is_connected(adjacency),
		criteria=_criteria(a1, a2, len(components)),
		bound=bound,
	)


def singular_catalog(dec: FiberDecomposition):
	"""Singular points of the fiber product"""

	return list(dec.singular_points)


def connectivity(dec: FiberDecomposition):
	"""Whether the components glued at the singular points form a connected surface"""

	return dec.connected


def criteria(c1: BranchedCover, c2: BranchedCover):
	"""Evaluate the irreducibility conditions and count the components"""

	check(c1)
	check(c2)

	a1, a2 = align_branch_sets(c1, c2)
	count = len(orbits(product_action(a1, a2), a1.degree * a2.degree))

	return _criteria(a1, a2, count)


def components_pairwise_isomorphic(dec: FiberDecomposition):
	"""Check that all components are isomorphic as covers of the base"""

	witnesses = []
	first = dec.components[0]

	# Isomorphism is an equivalence, so comparing with the first component suffices
	for k, component in enumerate(dec.components[1:], start=1):
		g = None

		if component.size == first.size:
			g = simultaneous_conjugator(first.cover.generators(), component.cover.generators(), first.size)

		if g is None:
			return IsomorphismReport(False, tuple(witnesses), (0, k))

		witnesses.append((0, k, g))

	return IsomorphismReport(True, tuple(witnesses))


def jacobian_report(c1: BranchedCover, c2: BranchedCover, dec: FiberDecomposition = None):
	"""Dimension of the complementary abelian variety P, if the hypotheses hold"""

	if dec is None:
		dec = decompose(c1, c2)

	if not (is_regular(c1) and is_regular(c2)):
		return JacobianReport(False, 'regularity')

	if len(dec.components) != 1:
		return JacobianReport(False, 'transitivity')

	if dec.singular_points:
		return JacobianReport(False, 'non-singularity')

	report = JacobianReport(True, g_C=dec.components[0].genus, g0=c1.base_genus,
	                        g1=genus(c1), g2=genus(c2))

	if report.dim_P < 0:
		raise InconsistencyError(f'negative dimension {report.dim_P} for the complementary variety')

	return report


def ramification_totals(cover: BranchedCover):
	"""Sum of (points - cycles) at each branch position"""

	return [cover.degree - len(bp.perm.cycles(include_fixed=True)) for bp in cover.branch_points]


def regular_flags(dec: FiberDecomposition):
	return tuple(is_regular(c) for c in dec.covers)


__all__ = [
	'PairPoint', 'FiberComponent', 'SingularPoint', 'FiberDecomposition', 'CriteriaReport',
	'align_branch_sets', 'product_action', 'decompose', 'singular_catalog', 'criteria',
	'component_bound', 'components_pairwise_isomorphic', 'connectivity', 'jacobian_report',
]
