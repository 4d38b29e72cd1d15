#
# Bundled acceptance corpus of fiber products
#
# Each case in corpus/cases.json names its inputs (cover files in the
# corpus directory, or rational map expressions), a provenance note, and the
# expected values. Only the keys present in the expected object are compared.
#

import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .common import FiberProductError
from .cover import monodromy_group_order
from .coverfile import parse_cover_file
from .dessin import dessin_fiber_product, dessin_from_cover, euler_genus, product_criteria, valence
from .fiber import components_pairwise_isomorphic, decompose, jacobian_report
from .loaders import NUMERIC
from .printer import no_colorizer

logger = logging.getLogger(__name__)

# Exit status when some gated case does not match
MISMATCH_STATUS = 3

# Largest monodromy group enumerated for the group_order check
GROUP_ORDER_CAP = 10000


@dataclass(frozen=True)
class CorpusCase:
	"""Case of the acceptance corpus"""

	name: str
	kind: str
	inputs: tuple[str, ...]
	provenance: str
	expected: dict = field(default_factory=dict)
	# Cases with gate false are run and recorded but never fail
	gate: bool = True


@dataclass(frozen=True)
class CaseResult:
	"""Outcome of a corpus case"""

	case: CorpusCase
	observed: dict
	mismatches: tuple[tuple[str, object, object], ...] = ()
	error: str | None = None
	elapsed: float = 0.0

	@property
	def passed(self):
		return not self.case.gate or (self.error is None and not self.mismatches)

	@property
	def status(self):
		if not self.case.gate:
			return 'recorded'
		if self.error is not None:
			return 'error'
		return 'ok' if not self.mismatches else 'mismatch'


def corpus_path(name: str):
	"""Path of a bundled corpus file"""

	return resources.files('fibprod') / 'corpus' / name


def load_cases():
	"""Cases of the bundled corpus in file order"""

	content = json.loads(corpus_path('cases.json').read_text(encoding='utf-8'))

	return [CorpusCase(name=entry['name'],
	                   kind=entry['kind'],
	                   inputs=tuple(entry['inputs']),
	                   provenance=entry['provenance'],
	                   expected=entry.get('expected', {}),
	                   gate=entry.get('gate', True))
	        for entry in content['cases']]


def load_corpus_cover(name: str):
	return parse_cover_file(corpus_path(name).read_bytes())


def _decomposition_summary(dec, expected):
	"""Observed values of a decomposition for the keys worth computing"""

	components = dec.components

	observed = {
		'components': len(components),
		'sizes': sorted(comp.size for comp in components),
		'genera': sorted(comp.genus for comp in components),
		'd1': sorted(comp.d1 for comp in components),
		'd2': sorted(comp.d2 for comp in components),
		'cond1': dec.criteria.cond1,
		'cond2': dec.criteria.cond2,
		'connected': dec.connected,
		'bound': dec.bound,
		'labels': [str(label) for label in dec.labels],
		'singular': sorted([str(point.label), point.n1, point.n2, point.cone_count]
		                   for point in dec.singular_points),
	}

	if 'isomorphic' in expected:
		observed['isomorphic'] = components_pairwise_isomorphic(dec).isomorphic

	if 'group_order' in expected:
		observed['group_order'] = (monodromy_group_order(components[0].cover, GROUP_ORDER_CAP)
		                           if len(components) == 1 else None)

	if 'jacobian' in expected:
		report = jacobian_report(*dec.covers, dec)

		if report.applicable:
			observed['jacobian'] = {'g_C': report.g_C, 'dim_P': report.dim_P}
		else:
			observed['jacobian'] = report.failed_hypothesis

	return observed


def _dessin_summary(case: CorpusCase):
	d1, d2 = (dessin_from_cover(load_corpus_cover(name)) for name in case.inputs)
	parts = dessin_fiber_product(d1, d2)

	return {
		'components': len(parts),
		'edges': sorted(part.n for part in parts),
		'genera': sorted(euler_genus(part) for part in parts),
		'valence': sorted([list(val.blacks), list(val.whites), list(val.faces)]
		                  for val in map(valence, parts)),
		'predicted_single': product_criteria(d1, d2).predicted_single_dessin,
	}


def observe(case: CorpusCase, jobs: int = 1):
	"""Compute the observed values of a case"""

	match case.kind:
		case 'fiber':
			c1, c2 = (load_corpus_cover(name) for name in case.inputs)
			return _decomposition_summary(decompose(c1, c2), case.expected)

		case 'dessin':
			return _dessin_summary(case)

		case 'map-product':
			f, g = (NUMERIC['RationalMap'].parse(text) for text in case.inputs)
			return _decomposition_summary(NUMERIC['map_product_report'](f, g, jobs=jobs), case.expected)

		case 'self-product':
			f = NUMERIC['RationalMap'].parse(case.inputs[0])
			return _decomposition_summary(NUMERIC['self_product_report'](f, jobs=jobs), case.expected)

	raise FiberProductError(f'unknown corpus case kind {case.kind}')


def run_case(case: CorpusCase, jobs: int = 1):
	"""Run a case and compare with its expected values"""

	start = time.perf_counter()

	try:
		observed = observe(case, jobs)
	except FiberProductError as fpe:
		return CaseResult(case, {}, error=f'{type(fpe).__name__}: {fpe}',
		                  elapsed=time.perf_counter() - start)

	elapsed = time.perf_counter() - start
	logger.info('corpus case %s took %.3f s', case.name, elapsed)

	mismatches = tuple((key, value, observed.get(key)) for key, value in case.expected.items()
	                   if observed.get(key) != value)

	return CaseResult(case, observed, mismatches, elapsed=elapsed)


def run_cases(cases=None, jobs: int = 1):
	"""Run the given cases (all by default), concurrently if jobs > 1"""

	if cases is None:
		cases = load_cases()

	if jobs > 1:
		with ThreadPoolExecutor(max_workers=jobs) as executor:
			return list(executor.map(run_case, cases))

	return [run_case(case) for case in cases]


def format_table(results, colorizer):
	"""Pass/fail table of the corpus results"""

	width = max((len(result.case.name) for result in results), default=0)
	lines = []

	for result in results:
		status = result.status
		kind = 'yes' if status in ('ok', 'recorded') else 'no'
		lines.append(f'{result.case.name:{width}}  {result.case.kind:12}  '
		             f'{colorizer(kind, f"{status:8}")}  {result.elapsed:7.3f}s')

		if result.error is not None:
			lines.append(f'    {result.error}')

		for key, expected, observed in result.mismatches:
			lines.append(f'    {key}: expected {json.dumps(expected)}, observed {json.dumps(observed)}')

		if not result.case.gate and result.observed:
			summary = {key: result.observed[key] for key in ('components', 'genera', 'singular')}
			lines.append(f'    {json.dumps(summary, sort_keys=True)}')

	failed = sum(not result.passed for result in results)
	lines.append(f'{len(results) - failed} of {len(results)} cases passed')

	return '\n'.join(lines) + '\n'


def run_corpus(jobs: int = 1, colorizer=None, out=None):
	"""Run the whole corpus, print the table, and return the exit status"""

	results = run_cases(jobs=jobs)

	(out or sys.stdout).write(format_table(results, colorizer or no_colorizer))

	return 0 if all(result.passed for result in results) else MISMATCH_STATUS
