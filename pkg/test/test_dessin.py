#
# Dessins d'enfants and their fiber products
#

import pytest

from fibprod.acceptance import load_corpus_cover
from fibprod.coverfile import format_dessin, parse_cover_file, parse_dessin_file
from fibprod.dessin import (Dessin, DessinError, NotBelyiError, cover_from_dessin, dessin_fiber_product,
                            dessin_from_cover, dessin_genus_agrees, dessins_equivalent, euler_genus,
                            product_criteria, valence)
from fibprod.perm import Permutation, parse_cycles


def dessin(name):
	return dessin_from_cover(load_corpus_cover(f'{name}.cover'))


def test_regular_product():
	d1, d2 = dessin('z7_cyclic'), dessin('z3_belyi')
	parts = dessin_fiber_product(d1, d2)

	assert len(parts) == 1
	assert parts[0].n == 21
	assert euler_genus(parts[0]) == 10
	assert str(valence(parts[0])) == '(21; 21; 21)'
	assert product_criteria(d1, d2).predicted_single_dessin


def test_several_components():
	d1, d2 = dessin('z6_cyclic'), dessin('z9_cyclic')
	parts = dessin_fiber_product(d1, d2)
	report = product_criteria(d1, d2)

	assert [part.n for part in parts] == [18, 18, 18]
	assert [euler_genus(part) for part in parts] == [8, 8, 8]
	assert not report.cond1 and not report.cond2
	assert all(dessins_equivalent(parts[0], part) is not None for part in parts[1:])


def test_valence_and_genus():
	d = dessin('klein_belyi')

	assert valence(d).blacks == (2, 2)
	assert valence(d).faces == (2, 2)
	assert euler_genus(d) == 0
	assert dessin_genus_agrees(d)
	assert dessin_genus_agrees(dessin('z7_cyclic'))


def test_faces_close_the_relation():
	d = Dessin(parse_cycles('(1 2 3)', 3), parse_cycles('(1 2)', 3))

	assert (d.sigma0 * d.sigma1 * d.sigma_inf).is_identity()
	assert dessin_from_cover(cover_from_dessin(d)) == d


def test_not_transitive():
	with pytest.raises(DessinError):
		Dessin(parse_cycles('(1 2)', 4), parse_cycles('(3 4)', 4))


def test_not_belyi():
	with pytest.raises(NotBelyiError):
		dessin_from_cover(load_corpus_cover('genus2_double.cover'))

	with pytest.raises(NotBelyiError):
		dessin_from_cover(load_corpus_cover('double_lambda_mu.cover'))

	# The relation holds in file order 1, 0, inf but not in the order 0, 1, inf
	swapped = parse_cover_file('version 1\ndegree 3\nbranch 1 (1 2)\nbranch 0 (2 3)\nbranch inf (1 2 3)\n')

	with pytest.raises(NotBelyiError):
		dessin_from_cover(swapped)


def test_equivalence():
	d = dessin('z6_mixed')
	g = parse_cycles('(1 4)(2 6 3)', 6)
	relabeled = Dessin(d.sigma0.conjugate(g), d.sigma1.conjugate(g))

	assert dessins_equivalent(d, relabeled) is not None
	assert dessins_equivalent(d, dessin('z6_cyclic')) is None
	assert dessins_equivalent(d, dessin('z7_cyclic')) is None


def test_dessin_file():
	d = dessin('z3_belyi')

	assert parse_dessin_file(format_dessin(d)) == d

	with pytest.raises(DessinError):
		parse_dessin_file('version 1\ndegree 2\nbranch 0 (1 2)\nbranch 1 (1 2)\n')


def test_star():
	star = Dessin(parse_cycles('(1 2 3)', 3), parse_cycles('', 3))

	assert str(valence(star)) == '(3; 1,1,1; 3)'
	assert euler_genus(star) == 0
	assert dessin_genus_agrees(star)


def test_single_edge():
	edge = Dessin(Permutation.identity(1), Permutation.identity(1))

	assert str(valence(edge)) == '(1; 1; 1)'
	assert euler_genus(edge) == 0
	assert cover_from_dessin(edge).degree == 1


def test_single_edge_is_neutral():
	edge = Dessin(Permutation.identity(1), Permutation.identity(1))

	for name in ('z3_belyi', 'klein_belyi', 'z6_mixed', 'fermat4'):
		d = dessin(name)
		parts = dessin_fiber_product(d, edge)

		assert len(parts) == 1
		assert dessins_equivalent(parts[0], d) is not None


def test_coprime_degrees():
	z3, klein = dessin('z3_belyi'), dessin('klein_belyi')
	report = product_criteria(z3, klein)

	assert str(valence(z3)) == '(3; 3; 3)'
	assert report.cond1
	assert report.predicted_single_dessin
	assert len(dessin_fiber_product(z3, klein)) == 1


def test_fermat_quartic_dessin():
	d = dessin('fermat4')

	assert str(valence(d)) == '(4,4,4,4; 4,4,4,4; 4,4,4,4)'
	assert euler_genus(d) == 3


def test_cyclic_6_4_criteria():
	d1, d2 = dessin('z6_cyclic'), dessin('z4_cyclic')
	report = product_criteria(d1, d2)

	assert not report.cond1 and not report.cond2
	assert len(dessin_fiber_product(d1, d2)) == 2
