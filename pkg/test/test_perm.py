#
# Permutations, orbits, and simultaneous conjugacy
#

import itertools

import numpy as np
import pytest

from fibprod.fuzz import random_permutation
from fibprod.perm import (CycleType, DegreeMismatchError, MalformedCycleError, OutOfRangeError, Permutation,
                          cycle_type, group_order_bounded, is_conjugator, is_transitive, orbits, parse_cycles,
                          simultaneous_conjugator)


def test_parse_and_print():
	p = parse_cycles('(1 2 3)(4 5)', 6)

	assert p.images == (1, 2, 0, 4, 3, 5)
	assert str(p) == '(1 2 3)(4 5)'
	assert str(parse_cycles('', 3)) == '()'
	assert parse_cycles('()', 3).is_identity()


def test_composition_applies_left_factor_first():
	p = parse_cycles('(1 2)', 3)
	q = parse_cycles('(2 3)', 3)

	assert (p * q)(0) == q(p(0)) == 2
	assert str(p * q) == '(1 3 2)'
	assert str(q * p) == '(1 2 3)'


def test_inverse_and_powers():
	p = parse_cycles('(1 2 3 4)', 4)

	assert (p * p.inverse()).is_identity()
	assert p ** -1 == p.inverse()
	assert (p ** 4).is_identity()
	assert str(p ** 2) == '(1 3)(2 4)'
	assert (p ** 0).is_identity()


def test_conjugate():
	a = parse_cycles('(1 2)', 3)
	g = parse_cycles('(1 2 3)', 3)

	assert a.conjugate(g) == g * a * g.inverse()
	assert cycle_type(a.conjugate(g)) == cycle_type(a)


def test_malformed_cycles():
	with pytest.raises(MalformedCycleError):
		parse_cycles('(1 1)', 3)

	with pytest.raises(MalformedCycleError):
		parse_cycles('(1 2)(2 3)', 3)

	with pytest.raises(MalformedCycleError):
		parse_cycles('(1 2', 3)

	with pytest.raises(OutOfRangeError):
		parse_cycles('(1 4)', 3)

	with pytest.raises(OutOfRangeError):
		parse_cycles('(0 1)', 3)


def test_degree_mismatch():
	with pytest.raises(DegreeMismatchError):
		Permutation.identity(2) * Permutation.identity(3)


def test_cycle_type():
	ct = cycle_type(parse_cycles('(1 2)(3 4 5)', 6))

	assert ct == CycleType([3, 2, 1])
	assert str(ct) == '[3,2,1]'
	assert ct.degree == 6
	assert ct.lcm == 6
	assert not ct.is_trivial()
	assert cycle_type(Permutation.identity(4)).is_trivial()


def test_orbits():
	gens = [parse_cycles('(1 2)', 5), parse_cycles('(3 4)', 5)]

	assert orbits(gens, 5) == [(0, 1), (2, 3), (4,)]
	assert not is_transitive(gens, 5)
	assert is_transitive([parse_cycles('(1 2 3 4 5)', 5)], 5)
	assert is_transitive([], 1)


def test_group_order():
	gens = [parse_cycles('(1 2)', 3), parse_cycles('(1 2 3)', 3)]

	assert group_order_bounded(gens, 3, 100) == 6
	assert group_order_bounded(gens, 3, 5) is None
	assert group_order_bounded([parse_cycles('(1 2)(3 4)', 4), parse_cycles('(1 3)(2 4)', 4)], 4, 4) == 4


def test_restrict():
	p = parse_cycles('(1 3)(2 4)', 4)

	assert str(p.restrict((0, 2))) == '(1 2)'
	assert str(p.restrict((1, 3))) == '(1 2)'


def test_simultaneous_conjugator():
	rep_a = [parse_cycles('(1 2 3)', 4), parse_cycles('(3 4)', 4)]
	g0 = parse_cycles('(1 4 2)', 4)
	rep_b = [a.conjugate(g0) for a in rep_a]

	g = simultaneous_conjugator(rep_a, rep_b, 4)

	assert g is not None
	assert is_conjugator(g, rep_a, rep_b)


def test_simultaneous_conjugator_failure():
	# Same cycle types generator by generator, but different products
	rep_a = [parse_cycles('(1 2)', 4), parse_cycles('(1 2)', 4)]
	rep_b = [parse_cycles('(1 2)', 4), parse_cycles('(3 4)', 4)]

	assert simultaneous_conjugator(rep_a, rep_b, 4) is None
	assert simultaneous_conjugator(rep_a, rep_b[:1], 4) is None
	assert simultaneous_conjugator([parse_cycles('(1 2 3)', 4)], [parse_cycles('(1 2)', 4)], 4) is None


def test_simultaneous_conjugator_needs_backtracking():
	# Non-transitive representations: the first choices of images can fail
	rep_a = [parse_cycles('(1 2)(3 4 5)', 6)]
	rep_b = [parse_cycles('(4 5 6)(1 2)', 6)]

	g = simultaneous_conjugator(rep_a, rep_b, 6)

	assert g is not None
	assert is_conjugator(g, rep_a, rep_b)


def brute_force_conjugator(rep_a, rep_b, n):
	for images in itertools.permutations(range(n)):
		g = Permutation(images)

		if is_conjugator(g, rep_a, rep_b):
			return g

	return None


def brute_force_order(generators, n):
	group = {Permutation.identity(n)}

	while True:
		larger = group | {g * gen for g in group for gen in generators}

		if larger == group:
			return len(group)

		group = larger


def test_cycle_type_is_a_conjugacy_invariant():
	rng = np.random.default_rng(21)

	for _ in range(200):
		n = int(rng.integers(1, 9))
		p, g = random_permutation(n, rng), random_permutation(n, rng)

		assert cycle_type(p.conjugate(g)) == cycle_type(p)
		assert cycle_type(p).degree == n


def test_orbits_ignore_order_and_inversion():
	rng = np.random.default_rng(22)

	for _ in range(200):
		n = int(rng.integers(1, 10))
		generators = [random_permutation(n, rng) for _ in range(int(rng.integers(0, 4)))]
		shuffled = [generators[k] for k in rng.permutation(len(generators))]
		inverted = [gen.inverse() if rng.random() < 0.5 else gen for gen in shuffled]

		assert orbits(inverted, n) == orbits(generators, n)
		assert sorted(x for orbit in orbits(generators, n) for x in orbit) == list(range(n))


def test_simultaneous_conjugator_against_brute_force():
	rng = np.random.default_rng(23)

	for trial in range(120):
		n = 7 if trial % 20 == 0 else int(rng.integers(1, 7))
		rep_a = [random_permutation(n, rng) for _ in range(int(rng.integers(1, 4)))]

		if trial % 2 == 0:
			g = random_permutation(n, rng)
			rep_b = [a.conjugate(g) for a in rep_a]
		else:
			# Elementwise conjugates: equal cycle types, common conjugator not guaranteed
			rep_b = [a.conjugate(random_permutation(n, rng)) for a in rep_a]

		found = simultaneous_conjugator(rep_a, rep_b, n)
		expected = brute_force_conjugator(rep_a, rep_b, n)

		assert (found is None) == (expected is None)

		if found is not None:
			assert is_conjugator(found, rep_a, rep_b)


def test_group_order_against_brute_force():
	rng = np.random.default_rng(24)

	for _ in range(60):
		n = int(rng.integers(1, 7))
		generators = [random_permutation(n, rng) for _ in range(int(rng.integers(1, 3)))]
		order = brute_force_order(generators, n)

		assert group_order_bounded(generators, n, 1000) == order

		if order > 1:
			assert group_order_bounded(generators, n, order - 1) is None
