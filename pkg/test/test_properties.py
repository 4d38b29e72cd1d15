#
# Randomized properties of fiber products
#

import networkx as nx
import numpy as np
import pytest

from fibprod.cover import is_regular, trivial_cover, validate
from fibprod.fiber import PairPoint, align_branch_sets, decompose, ramification_totals
from fibprod.fuzz import check_properties, random_cases, random_cover, random_labels, random_regular_cover
from fibprod.perm import simultaneous_conjugator


def brute_force_components(c1, c2):
	"""Sizes and genera of the components by walking the pair graph"""

	a1, a2 = align_branch_sets(c1, c2)
	n1, n2 = a1.degree, a2.degree

	graph = nx.Graph()
	graph.add_nodes_from((i, j) for i in range(n1) for j in range(n2))

	for p, q in zip(a1.generators(), a2.generators()):
		graph.add_edges_from(((i, j), (p(i), q(j))) for i in range(n1) for j in range(n2))

	result = []

	for nodes in nx.connected_components(graph):
		size = len(nodes)
		ramification = 0

		for bp1, bp2 in zip(a1.branch_points, a2.branch_points):
			seen, cycles = set(), 0

			for start in nodes:
				if start in seen:
					continue

				cycles += 1
				x = start

				while x not in seen:
					seen.add(x)
					x = (bp1.perm(x[0]), bp2.perm(x[1]))

			ramification += size - cycles

		chi = size * (2 - 2 * a1.base_genus) - ramification
		result.append((size, (2 - chi) // 2))

	return sorted(result)


@pytest.mark.parametrize('seed', range(4))
def test_random_properties(seed):
	for c1, c2 in random_cases(50, seed=seed, max_degree=7):
		assert check_properties(c1, c2) == []


def test_against_brute_force():
	for c1, c2 in random_cases(100, seed=17, max_degree=6, max_base_genus=1):
		dec = decompose(c1, c2)

		assert sorted((comp.size, comp.genus) for comp in dec.components) == brute_force_components(c1, c2)


def test_generated_covers_are_valid():
	rng = np.random.default_rng(3)

	for _ in range(30):
		labels = random_labels(int(rng.integers(2, 5)), rng)
		cover = random_cover(int(rng.integers(1, 8)), labels, rng)

		assert cover is None or validate(cover).ok

		regular = random_regular_cover(6, labels, rng)

		assert regular is None or (validate(regular).ok and is_regular(regular))


def test_neutral_element_keeps_the_cover():
	for c1, _ in random_cases(60, seed=11, max_degree=7):
		dec = decompose(c1, trivial_cover(c1.base_genus, c1.labels))

		assert len(dec.components) == 1
		assert simultaneous_conjugator(dec.components[0].cover.generators(), dec.covers[0].generators(),
		                               c1.degree) is not None


def test_diagonal_is_a_copy_of_the_cover():
	for c1, _ in random_cases(60, seed=12, max_degree=7):
		n = c1.degree
		dec = decompose(c1, c1)
		copy = next(comp for comp in dec.components if comp.orbit == tuple(PairPoint(i, i) for i in range(n)))

		assert simultaneous_conjugator(copy.cover.generators(), dec.covers[0].generators(), n) is not None


def test_swap_keeps_sizes_and_genera():
	for c1, c2 in random_cases(80, seed=13, max_degree=7):
		forward, backward = decompose(c1, c2), decompose(c2, c1)

		assert sorted((comp.size, comp.genus) for comp in forward.components) == \
		       sorted((comp.size, comp.genus) for comp in backward.components)


def test_ramification_totals_over_components():
	for c1, c2 in random_cases(80, seed=14, max_degree=7):
		dec = decompose(c1, c2)
		columns = zip(*(ramification_totals(comp.cover) for comp in dec.components))

		assert [sum(column) for column in columns] == ramification_totals(dec.product)
