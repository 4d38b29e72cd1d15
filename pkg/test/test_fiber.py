#
# Fiber products of covers: alignment, components, singular points, and criteria
#

import math

import pytest

from fibprod.acceptance import load_corpus_cover
from fibprod.common import InconsistencyError
from fibprod.cover import BranchLabel, CoverError, LabelConflictError, LabelOrderError
from fibprod.coverfile import parse_cover_file
from fibprod.fiber import (PairPoint, align_branch_sets, component_bound, components_pairwise_isomorphic,
                           criteria, decompose, jacobian_report, merge_labels, pair_permutation,
                           ramification_totals, singular_catalog)
from fibprod.perm import is_conjugator, parse_cycles, simultaneous_conjugator

S3_COVER = '''version 1
degree 3
branch 0 (1 2)
branch 1 (2 3)
branch inf (1 2 3)
'''


def cover(name):
	return load_corpus_cover(f'{name}.cover')


def test_pair_index():
	point = PairPoint.from_index(5, 2)

	assert (point.i, point.j) == (1, 2)
	assert point.index(2) == 5
	assert str(point) == '(2,3)'


def test_pair_permutation():
	p = parse_cycles('(1 2)', 2)
	q = parse_cycles('(1 2 3)', 3)
	pq = pair_permutation(p, q)

	for i in range(2):
		for j in range(3):
			assert pq(i + 2 * j) == p(i) + 2 * q(j)


def test_triangle_z3_klein():
	dec = decompose(cover('z3_belyi'), cover('klein_belyi'))

	assert len(dec.components) == 1
	assert dec.components[0].size == 12
	assert dec.components[0].genus == 4
	assert dec.criteria.cond1 and dec.criteria.cond2
	assert dec.connected
	assert dec.bound == 1

	# Every label pairs a 3-cycle with two 2-cycles
	assert len(dec.singular_points) == 6
	assert all(point.cone_count == 1 and point.disc_like for point in singular_catalog(dec))
	assert all((point.n1, point.n2) == (3, 2) for point in dec.singular_points)


def test_sharp_bound():
	dec = decompose(cover('z2_belyi'), cover('klein_belyi'))

	assert [comp.size for comp in dec.components] == [4, 4]
	assert [comp.genus for comp in dec.components] == [0, 0]
	assert [(comp.d1, comp.d2) for comp in dec.components] == [(2, 1), (2, 1)]
	assert dec.bound == component_bound(*dec.covers) == 2
	assert not dec.criteria.cond1 and not dec.criteria.cond2

	report = components_pairwise_isomorphic(dec)

	assert report.isomorphic
	assert len(report.witnesses) == 1

	k, l, g = report.witnesses[0]
	assert is_conjugator(g, dec.components[k].cover.generators(), dec.components[l].cover.generators())


def test_cyclic_table():
	for n, m, count, comp_genus in ((6, 4, 2, 5), (6, 9, 3, 8), (12, 18, 6, 17)):
		dec = decompose(cover(f'z{n}_cyclic'), cover(f'z{m}_cyclic'))

		assert len(dec.components) == count
		assert {comp.genus for comp in dec.components} == {comp_genus}
		assert components_pairwise_isomorphic(dec).isomorphic


def test_gcd_lcm_law():
	dec = decompose(cover('z6_cyclic'), cover('z9_cyclic'))

	for point in dec.singular_points:
		assert point.cone_count == math.gcd(point.n1, point.n2) == 3
		assert all(len(cone.cycle) == math.lcm(point.n1, point.n2) for cone in point.cones)


def test_mixed_cyclic_irreducible():
	dec = decompose(cover('z6_mixed'), cover('z4_cyclic'))

	assert len(dec.components) == 1
	assert dec.components[0].genus == 9
	assert dec.bound == 2


def test_swap_symmetry():
	dec = decompose(cover('z6_cyclic'), cover('z4_cyclic'))
	swapped = decompose(cover('z4_cyclic'), cover('z6_cyclic'))

	assert sorted(c.genus for c in dec.components) == sorted(c.genus for c in swapped.components)
	assert len(dec.singular_points) == len(swapped.singular_points)


def test_threads_do_not_change_the_result():
	single = decompose(cover('z12_cyclic'), cover('z18_cyclic'))
	threaded = decompose(cover('z12_cyclic'), cover('z18_cyclic'), jobs=4)

	assert [c.orbit for c in single.components] == [c.orbit for c in threaded.components]
	assert single.singular_points == threaded.singular_points


def test_disjoint_branch_sets():
	c1, c2 = cover('double_01'), cover('double_lambda_mu')
	a1, a2 = align_branch_sets(c1, c2)

	assert [str(label) for label in a1.labels] == ['0', '1', 'lambda', 'mu']
	assert a1.labels == a2.labels
	assert [bp.padding for bp in a1.branch_points] == [False, False, True, True]
	assert ramification_totals(a2) == [0, 0, 1, 1]

	dec = decompose(c1, c2)

	assert len(dec.components) == 1
	assert dec.components[0].genus == 1
	assert dec.singular_points == ()
	assert dec.criteria.cond2

	jac = jacobian_report(c1, c2, dec)

	assert jac.applicable
	assert (jac.g_C, jac.g0, jac.g1, jac.g2, jac.dim_P) == (1, 0, 0, 0, 1)


def test_merge_keeps_both_orders():
	zero, one, gaussian = BranchLabel.exact(0), BranchLabel.exact(1), BranchLabel.exact(1, 2)
	a, inf = BranchLabel.named('a'), BranchLabel.infinity()

	assert merge_labels([zero, inf], [one, a, inf]) == [zero, one, a, inf]
	assert merge_labels([one, zero], [gaussian]) == [one, zero, gaussian]


def test_label_conflicts():
	named_one = parse_cover_file('version 1\ndegree 2\nbranch a=1 (1 2)\nbranch inf (1 2)\n')
	named_two = parse_cover_file('version 1\ndegree 2\nbranch a=2 (1 2)\nbranch inf (1 2)\n')
	plain_one = parse_cover_file('version 1\ndegree 2\nbranch 1 (1 2)\nbranch inf (1 2)\n')

	with pytest.raises(LabelConflictError):
		decompose(named_one, named_two)

	with pytest.raises(LabelConflictError):
		decompose(named_one, plain_one)


def test_label_order_conflict():
	reversed_01 = parse_cover_file('version 1\ndegree 2\nbranch 1 (1 2)\nbranch 0 (1 2)\n')

	with pytest.raises(LabelOrderError):
		decompose(cover('double_01'), reversed_01)


def test_different_bases():
	with pytest.raises(CoverError):
		decompose(cover('genus2_double'), cover('double_01'))


def test_unbranched_self_product():
	c = cover('genus2_double')
	dec = decompose(c, c)

	assert [comp.size for comp in dec.components] == [2, 2]
	assert [comp.genus for comp in dec.components] == [3, 3]
	assert not dec.connected
	assert dec.adjacency.number_of_edges() == 0

	jac = jacobian_report(c, c, dec)

	assert not jac.applicable
	assert jac.failed_hypothesis == 'transitivity'
	assert jac.dim_P is None


def test_jacobian_hypotheses():
	s3 = parse_cover_file(S3_COVER)

	assert jacobian_report(s3, cover('z2_belyi')).failed_hypothesis == 'regularity'
	assert jacobian_report(cover('z3_belyi'), cover('klein_belyi')).failed_hypothesis == 'non-singularity'


def test_criteria_without_decomposition():
	report = criteria(cover('z6_cyclic'), cover('z9_cyclic'))

	assert not report.cond1
	assert not report.cond2
	assert report.actual_component_count == 3
	assert not report.predicted_irreducible
	assert [(entry.a1, entry.a2) for entry in report.labels] == [(6, 9), (6, 9), (3, 9)]


def test_diagonal_of_self_product():
	c = cover('klein_belyi')
	dec = decompose(c, c)
	diagonal = tuple(PairPoint(i, i) for i in range(4))
	copy = next(comp for comp in dec.components if comp.orbit == diagonal)

	assert len(dec.components) == 4
	assert simultaneous_conjugator(copy.cover.generators(), c.generators(), 4) is not None


def test_orbits_are_sorted_pair_points():
	dec = decompose(cover('z6_cyclic'), cover('z9_cyclic'))

	assert dec.components[0].orbit[0] == PairPoint(0, 0)

	for comp in dec.components:
		indices = [point.index(6) for point in comp.orbit]

		assert indices == sorted(indices)
		assert all(0 <= point.i < 6 and 0 <= point.j < 9 for point in comp.orbit)


def test_ramification_totals_add_up():
	for first, second in (('z3_belyi', 'klein_belyi'), ('z6_cyclic', 'z9_cyclic'), ('z2_belyi', 'klein_belyi'),
	                      ('z6_mixed', 'z4_cyclic')):
		dec = decompose(cover(first), cover(second))
		columns = zip(*(ramification_totals(comp.cover) for comp in dec.components))

		assert [sum(column) for column in columns] == ramification_totals(dec.product)


def test_bound_is_an_invariant(monkeypatch):
	import fibprod.fiber

	monkeypatch.setattr(fibprod.fiber, 'component_bound', lambda c1, c2: 1)

	with pytest.raises(InconsistencyError):
		decompose(cover('z6_cyclic'), cover('z4_cyclic'))
