#
# Bundled acceptance corpus
#

import io

import pytest

from fibprod.acceptance import (MISMATCH_STATUS, CaseResult, CorpusCase, corpus_path, format_table, load_cases,
                                run_case, run_cases)
from fibprod.printer import no_colorizer

CASES = load_cases()


@pytest.mark.parametrize('case', CASES, ids=[case.name for case in CASES])
def test_corpus_case(case):
	result = run_case(case)

	assert result.passed, result.mismatches or result.error


def test_cases_are_documented():
	for case in CASES:
		assert case.provenance
		assert case.kind in ('fiber', 'dessin', 'map-product', 'self-product')

		if case.kind in ('fiber', 'dessin'):
			assert all(corpus_path(name).is_file() for name in case.inputs)


def test_ungated_cases_never_fail():
	recorded = [case for case in CASES if not case.gate]

	assert recorded
	assert all(run_case(case).status == 'recorded' for case in recorded)


def test_mismatch_is_reported():
	case = next(case for case in CASES if case.name == 'triangle-z3-klein')
	wrong = CorpusCase(case.name, case.kind, case.inputs, case.provenance, {'components': 2})
	result = run_case(wrong)

	assert result.status == 'mismatch'
	assert result.mismatches == (('components', 2, 1),)

	table = format_table([result], no_colorizer)

	assert 'components: expected 2, observed 1' in table
	assert table.endswith('0 of 1 cases passed\n')


def test_errors_are_reported():
	broken = CorpusCase('broken', 'fiber', ('z3_belyi.cover', 'genus2_double.cover'), 'different bases', {})
	result = run_case(broken)

	assert result.status == 'error'
	assert not result.passed
	assert 'CoverError' in result.error


def test_concurrent_run():
	subset = [case for case in CASES if case.kind == 'fiber'][:4]
	results = run_cases(subset, jobs=2)

	assert [result.case for result in results] == subset
	assert all(isinstance(result, CaseResult) and result.passed for result in results)

	out = io.StringIO()
	out.write(format_table(results, no_colorizer))

	assert out.getvalue().endswith(f'{len(subset)} of {len(subset)} cases passed\n')
	assert MISMATCH_STATUS == 3
