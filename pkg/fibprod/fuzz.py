#
# Random valid covers and the properties every fiber product satisfies
#
# Covers are built by choosing all monodromy generators at random but the
# last branch permutation, which is taken to close the product relation.
# Regular covers are built as translation representations of Z_a x Z_b.
#

import logging
import math

import numpy as np

from .common import FiberProductError
from .cover import BranchedCover, BranchLabel, BranchPoint, is_regular, relation_residual, trivial_cover, validate
from .coverfile import format_cover, parse_cover_file
from .dessin import BELYI_LABELS, dessin_fiber_product, dessin_from_cover, euler_genus, product_criteria
from .fiber import PairPoint, components_pairwise_isomorphic, decompose, ramification_totals
from .perm import Permutation, is_transitive, simultaneous_conjugator

logger = logging.getLogger(__name__)

# Attempts to draw a transitive constellation before giving up
MAX_ATTEMPTS = 100

# Labels used by random covers, in canonical order
LABEL_POOL = (
	BranchLabel.exact(-1), BranchLabel.exact(0), BranchLabel.exact(1), BranchLabel.exact(1, 1),
	BranchLabel.named('a'), BranchLabel.named('b'), BranchLabel.infinity(),
)


def random_permutation(n: int, rng):
	"""Uniform random permutation, or a random power of a random cycle"""

	if rng.random() < 0.5:
		return Permutation(int(x) for x in rng.permutation(n))

	length = int(rng.integers(1, n + 1))
	support = [int(x) for x in rng.permutation(n)[:length]]

	return Permutation.from_cycles([support], n) ** int(rng.integers(1, length + 1))


def _close(degree, handles, branches):
	"""Last branch permutation making the relation hold"""

	prefix = BranchedCover(degree, tuple(BranchPoint(label, perm, perm.is_identity()) for label, perm in branches),
	                       len(handles), tuple(handles))

	return relation_residual(prefix).inverse()


def random_labels(count: int, rng, belyi=False):
	"""Distinct labels in canonical order"""

	if belyi:
		return list(BELYI_LABELS)

	chosen = sorted(int(k) for k in rng.choice(len(LABEL_POOL), size=count, replace=False))

	return [LABEL_POOL[k] for k in chosen]


def random_cover(n: int, labels, rng, base_genus: int = 0):
	"""Random transitive cover of degree n over the given labels"""

	for _ in range(MAX_ATTEMPTS):
		if labels:
			handles = [(random_permutation(n, rng), random_permutation(n, rng)) for _ in range(base_genus)]
		else:
			# Commuting handle pairs, so that the relation holds without branch points
			handles = []

			for _ in range(base_genus):
				a = random_permutation(n, rng)
				handles.append((a, a ** int(rng.integers(0, n))))

		branches = [(label, random_permutation(n, rng)) for label in labels[:-1]]

		if labels:
			branches.append((labels[-1], _close(n, handles, branches)))

		elif base_genus == 0:
			return trivial_cover() if n == 1 else None

		cover = BranchedCover.create(n, branches, base_genus, handles, pad_identities=True)

		if validate(cover).ok:
			return cover

	return None


def _abelian_factors(n: int, rng):
	"""Random a, b with a b = n"""

	divisors = [a for a in range(1, n + 1) if n % a == 0]
	a = int(rng.choice(divisors))

	return a, n // a


def _translation(a: int, b: int, u: int, v: int):
	"""Translation by (u, v) on Z_a x Z_b, points x + a y"""

	return Permutation((x + u) % a + a * ((y + v) % b) for y in range(b) for x in range(a))


def random_regular_cover(n: int, labels, rng, base_genus: int = 0):
	"""Random regular cover with deck group Z_a x Z_b, a b = n"""

	a, b = _abelian_factors(n, rng)

	for _ in range(MAX_ATTEMPTS):
		def element():
			return int(rng.integers(0, a)), int(rng.integers(0, b))

		handles = [(element(), element()) for _ in range(base_genus)]
		elements = [element() for _ in labels[:-1]]

		if labels:
			u = -sum(e[0] for e in elements)
			v = -sum(e[1] for e in elements)
			elements.append((u % a, v % b))

		handle_perms = [(_translation(a, b, *h1), _translation(a, b, *h2)) for h1, h2 in handles]
		branches = [(label, _translation(a, b, *e)) for label, e in zip(labels, elements)]

		cover = BranchedCover.create(n, branches, base_genus, handle_perms, pad_identities=True)

		if is_transitive(cover.generators(), n) and validate(cover).ok:
			return cover

	return None


def _drop_padding(cover: BranchedCover, rng):
	"""Remove some padding entries (identities do not affect the relation)"""

	kept = tuple(bp for bp in cover.branch_points if not bp.padding or rng.random() < 0.5)

	return BranchedCover(cover.degree, kept, cover.base_genus, cover.handles)


def random_pair(rng, max_degree: int = 10, max_base_genus: int = 2):
	"""Pair of random covers over a common base and compatible labels"""

	base_genus = int(rng.integers(0, max_base_genus + 1))
	belyi = base_genus == 0 and rng.random() < 0.4
	count = 3 if belyi else int(rng.integers(0 if base_genus else 2, 5))
	labels = random_labels(count, rng, belyi)

	covers = []

	for _ in range(2):
		n = int(rng.integers(1, max_degree + 1))
		maker = random_regular_cover if rng.random() < 0.3 else random_cover
		cover = None

		while cover is None:
			cover = maker(n, labels, rng, base_genus)
			n = max(1, n - 1) if cover is None else n

		covers.append(cover if belyi else _drop_padding(cover, rng))

	return covers[0], covers[1]


def _shape(dec):
	return sorted((comp.size, comp.genus) for comp in dec.components)


def _equivalent(a: BranchedCover, b: BranchedCover):
	return a.degree == b.degree and simultaneous_conjugator(a.generators(), b.generators(), a.degree) is not None


def check_properties(c1: BranchedCover, c2: BranchedCover):
	"""Names of the properties violated by a pair of covers"""

	violations = []

	def expect(condition, name):
		if not condition:
			violations.append(name)

	try:
		dec = decompose(c1, c2)
	except FiberProductError as fpe:
		return [f'decompose: {fpe}']

	n1, n2 = c1.degree, c2.degree
	count = len(dec.components)

	expect(count <= math.gcd(n1, n2), 'bound')
	expect(all(comp.size % n1 == 0 and comp.size % n2 == 0 for comp in dec.components), 'divisibility')
	expect(sum(comp.size for comp in dec.components) == n1 * n2, 'partition')

	for point in dec.singular_points:
		expect(point.cone_count == math.gcd(point.n1, point.n2)
		       and all(len(cone.cycle) == math.lcm(point.n1, point.n2) for cone in point.cones), 'gcd-lcm')

	if c1.base_genus == 0:
		expect(dec.connected, 'connected')

		if dec.criteria.predicted_irreducible:
			expect(count == 1, 'criteria')

	if is_regular(c1) or is_regular(c2):
		expect(components_pairwise_isomorphic(dec).isomorphic, 'regular-isomorphic')

	swapped = decompose(c2, c1)
	expect(_shape(swapped) == _shape(dec), 'swap')

	totals = [sum(column) for column in zip(*(ramification_totals(comp.cover) for comp in dec.components))]
	expect(totals == ramification_totals(dec.product), 'ramification-totals')

	neutral = decompose(c1, trivial_cover(c1.base_genus, c1.labels))
	expect(len(neutral.components) == 1 and _equivalent(neutral.components[0].cover, neutral.covers[0]), 'neutral')

	diagonal = tuple(PairPoint(i, i) for i in range(n1))
	square = decompose(c1, c1)
	expect(any(comp.orbit == diagonal and _equivalent(comp.cover, square.covers[0]) for comp in square.components),
	       'diagonal')

	expect(parse_cover_file(format_cover(c1)) == c1, 'round-trip')

	if c1.base_genus == 0 and c1.labels == list(BELYI_LABELS) == c2.labels:
		d1, d2 = dessin_from_cover(c1), dessin_from_cover(c2)
		parts = dessin_fiber_product(d1, d2)

		expect(all(euler_genus(part) == comp.genus for part, comp in zip(parts, dec.components)), 'dessin-genus')

		if product_criteria(d1, d2).predicted_single_dessin:
			expect(len(parts) == 1, 'dessin-criteria')

	if violations:
		logger.warning('properties %s violated for degrees %d and %d', ', '.join(violations), n1, n2)

	return violations


def random_cases(count: int, seed: int = 0, max_degree: int = 10, max_base_genus: int = 2):
	"""Generator of random cover pairs"""

	rng = np.random.default_rng(seed)

	for _ in range(count):
		yield random_pair(rng, max_degree, max_base_genus)

