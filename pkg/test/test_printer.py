#
# Decomposition reports
#

import json

import pytest

from fibprod.acceptance import load_corpus_cover
from fibprod.fiber import components_pairwise_isomorphic, decompose, jacobian_report
from fibprod.printer import DecompositionReport, colorizer, emit_report


def decomposition(first, second):
	return decompose(load_corpus_cover(f'{first}.cover'), load_corpus_cover(f'{second}.cover'))


def test_text_report():
	text = emit_report(decomposition('z3_belyi', 'klein_belyi')).decode('utf-8')

	assert 'components: 1\n' in text
	assert 'genus: 4' in text
	assert '(disc-like)' in text
	assert 'criteria: cond1 true cond2 true predicted_irreducible true' in text


def test_empty_singular_catalog():
	text = emit_report(decomposition('double_01', 'double_lambda_mu')).decode('utf-8')

	assert 'singular_points: []' in text
	assert 'labels: 0 1 lambda mu' in text


def test_structured_report_round_trip():
	dec = decomposition('z2_belyi', 'klein_belyi')
	report = DecompositionReport.build(dec, components_pairwise_isomorphic(dec), jacobian_report(*dec.covers, dec))
	data = report.to_json()

	assert DecompositionReport.from_json(data) == report
	assert json.loads(data)['version'] == 1
	assert list(json.loads(data)) == sorted(json.loads(data))


def test_structured_report_content():
	dec = decomposition('double_01', 'double_lambda_mu')
	data = json.loads(emit_report(dec, 'structured', jacobian=jacobian_report(*dec.covers, dec)))

	assert data['components'][0]['genus'] == 1
	assert data['singular_points'] == []
	assert data['jacobian']['dim_P'] == 1
	assert data['jacobian']['shape'] == 'JC x JS0 ~ JS1 x JS2 x P'
	assert data['regular'] == [True, True]


def test_reports_are_stable():
	first = emit_report(decomposition('z6_cyclic', 'z9_cyclic'), 'structured')
	second = emit_report(decomposition('z6_cyclic', 'z9_cyclic'), 'structured')

	assert first == second


def test_isomorphism_and_jacobian_sections():
	dec = decomposition('genus2_double', 'genus2_double')
	text = emit_report(dec, 'text', components_pairwise_isomorphic(dec), jacobian_report(*dec.covers, dec))
	text = text.decode('utf-8')

	assert 'pairwise_isomorphic: true' in text
	assert '0 -> 1:' in text
	assert 'jacobian: not applicable (transitivity)' in text
	assert 'connected: false' in text


def test_colors():
	text = emit_report(decomposition('z3_belyi', 'klein_belyi'), colorizer=colorizer).decode('utf-8')

	assert '\x1b[1mcomponents:\x1b[0m 1' in text


def test_unknown_format():
	with pytest.raises(ValueError):
		emit_report(decomposition('z3_belyi', 'klein_belyi'), 'yaml')
