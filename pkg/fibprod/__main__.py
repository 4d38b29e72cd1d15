#
# Entry point of the fiber product tool
#

import logging
import sys

from .common import FiberProductError, NumericalError
from .cover import genus, validate
from .coverfile import format_cover, load_cover, load_dessin, load_map, parse_cover_file, read_input
from .dessin import dessin_fiber_product, dessins_equivalent, euler_genus, product_criteria, valence
from .fiber import components_pairwise_isomorphic, criteria, decompose, jacobian_report
from .loaders import NUMERIC
from .printer import DEFAULT_COLORIZER, emit_report, no_colorizer

# Exit status for each kind of failure
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def _flag(value):
	return DEFAULT_COLORIZER('yes' if value else 'no', 'true' if value else 'false')


def _write_output(data: bytes, path=None):
	"""Write to a file or to the standard output"""

	if path is None or path == '-':
		sys.stdout.buffer.write(data)
		sys.stdout.flush()
	else:
		with open(path, 'wb') as out:
			out.write(data)


def _emit_decomposition(args, dec):
	"""Emit the report of a decomposition with the requested extras"""

	isomorphism = components_pairwise_isomorphic(dec) if args.isomorphism else None
	jacobian = jacobian_report(*dec.covers, dec) if args.jacobian else None

	# Colors only when writing text to a terminal
	colorizer = DEFAULT_COLORIZER if args.report in (None, '-') and args.format == 'text' else no_colorizer

	_write_output(emit_report(dec, args.format, isomorphism, jacobian, colorizer), args.report)

	return EXIT_OK


def cover_validate(args):
	"""Validate a cover file and show its violations"""

	cover = parse_cover_file(read_input(args.file), validate=False)
	report = validate(cover)

	if report.ok:
		print(f'{DEFAULT_COLORIZER("yes", "valid")} cover of degree {cover.degree} '
		      f'over a base of genus {cover.base_genus}')
		return EXIT_OK

	for violation in report.violations:
		print(f'{DEFAULT_COLORIZER("no", "violation:")} {violation}')

	return EXIT_INVALID


def cover_genus(args):
	print(genus(load_cover(args.file)))
	return EXIT_OK


def fiber_decompose(args):
	dec = decompose(load_cover(args.first), load_cover(args.second), jobs=args.jobs)

	return _emit_decomposition(args, dec)


def fiber_criteria(args):
	report = criteria(load_cover(args.first), load_cover(args.second))

	print(f'cond1: {_flag(report.cond1)}')
	print(f'cond2: {_flag(report.cond2)}')

	for entry in report.labels:
		print(f'  {entry.label}: a1 {entry.a1} a2 {entry.a2} coprime {_flag(entry.coprime)}')

	print(f'predicted_irreducible: {_flag(report.predicted_irreducible)}')
	print(f'components: {report.actual_component_count}')

	return EXIT_OK


def dessin_product(args):
	d1, d2 = load_dessin(args.first), load_dessin(args.second)
	parts = dessin_fiber_product(d1, d2)
	report = product_criteria(d1, d2)

	print(f'components: {len(parts)}')

	for k, part in enumerate(parts):
		print(f'  [{k}] edges: {part.n}  genus: {euler_genus(part)}  valence: {valence(part)}')

	if args.equivalence and len(parts) > 1:
		equivalent = all(dessins_equivalent(parts[0], part) is not None for part in parts[1:])
		print(f'pairwise_equivalent: {_flag(equivalent)}')

	print(f'criteria: cond1 {_flag(report.cond1)} cond2 {_flag(report.cond2)}'
	      f' predicted_single {_flag(report.predicted_single_dessin)}')

	return EXIT_OK


def map_monodromy(args):
	cover = NUMERIC['monodromy'](load_map(args.map), args.resolution, args.jobs)
	_write_output(format_cover(cover).encode('utf-8'), args.out)

	return EXIT_OK


def map_product(args):
	f, g = load_map(args.first), load_map(args.second)
	dec = NUMERIC['map_product_report'](f, g, args.resolution, args.jobs)

	return _emit_decomposition(args, dec)


def map_self_product(args):
	dec = NUMERIC['self_product_report'](load_map(args.map), args.resolution, args.jobs)

	return _emit_decomposition(args, dec)


def corpus_run(args):
	from .acceptance import run_corpus

	return run_corpus(args.jobs, DEFAULT_COLORIZER)


def _report_arguments(parser):
	"""Options shared by all commands producing a decomposition report"""

	parser.add_argument('--report', help='Path where to write the report (default: standard output)')
	parser.add_argument('--format', help='Report format', choices=('text', 'structured'), default='text')
	parser.add_argument('--isomorphism', help='Check whether the components are pairwise isomorphic',
	                    action='store_true')
	parser.add_argument('--jacobian', help='Include the Jacobian dimension report', action='store_true')


def _numeric_arguments(parser):
	parser.add_argument('--resolution', help='Tracking refinement factor', type=float, default=1.0)


def _jobs_argument(parser):
	parser.add_argument('--jobs', '-j', help='Number of threads', type=int, default=1)


def build_parser():
	import argparse

	argp = argparse.ArgumentParser(prog='fibprod', description='Fiber products of branched covers')
	argp.add_argument('-v', help='Increase verbosity', action='count', default=0)

	topics = argp.add_subparsers(dest='topic', required=True)

	# Covers
	cover = topics.add_parser('cover', help='Single covers').add_subparsers(dest='command', required=True)

	cmd = cover.add_parser('validate', help='Validate a cover file')
	cmd.add_argument('file', help='Cover file (- for stdin)')
	cmd.set_defaults(handler=cover_validate)

	cmd = cover.add_parser('genus', help='Genus of the covering surface')
	cmd.add_argument('file', help='Cover file (- for stdin)')
	cmd.set_defaults(handler=cover_genus)

	# Fiber products of covers
	fiber = topics.add_parser('fiber', help='Fiber products of covers').add_subparsers(dest='command', required=True)

	cmd = fiber.add_parser('decompose', help='Decompose the fiber product into irreducible components')
	cmd.add_argument('first', help='First cover file')
	cmd.add_argument('second', help='Second cover file')
	_report_arguments(cmd)
	_jobs_argument(cmd)
	cmd.set_defaults(handler=fiber_decompose)

	cmd = fiber.add_parser('criteria', help='Evaluate the irreducibility conditions')
	cmd.add_argument('first', help='First cover file')
	cmd.add_argument('second', help='Second cover file')
	cmd.set_defaults(handler=fiber_criteria)

	# Dessins
	dessin = topics.add_parser('dessin', help='Dessins d\'enfants').add_subparsers(dest='command', required=True)

	cmd = dessin.add_parser('product', help='Components of the fiber product of two dessins')
	cmd.add_argument('first', help='First dessin file')
	cmd.add_argument('second', help='Second dessin file')
	cmd.add_argument('--equivalence', help='Check whether the components are equivalent dessins',
	                 action='store_true')
	cmd.set_defaults(handler=dessin_product)

	# Rational maps
	rmap = topics.add_parser('map', help='Rational maps').add_subparsers(dest='command', required=True)

	cmd = rmap.add_parser('monodromy', help='Monodromy of a rational map as a cover file')
	cmd.add_argument('map', help='Expression in z, JSON coefficient file, or - for stdin')
	cmd.add_argument('--out', help='Path where to write the cover file (default: standard output)')
	_numeric_arguments(cmd)
	_jobs_argument(cmd)
	cmd.set_defaults(handler=map_monodromy)

	cmd = rmap.add_parser('product', help='Decompose the fiber product of two rational maps')
	cmd.add_argument('first', help='First map')
	cmd.add_argument('second', help='Second map')
	_report_arguments(cmd)
	_numeric_arguments(cmd)
	_jobs_argument(cmd)
	cmd.set_defaults(handler=map_product)

	cmd = rmap.add_parser('self-product', help='Decompose the fiber product of a rational map with itself')
	cmd.add_argument('map', help='Map')
	_report_arguments(cmd)
	_numeric_arguments(cmd)
	_jobs_argument(cmd)
	cmd.set_defaults(handler=map_self_product)

	# Acceptance corpus
	corpus = topics.add_parser('corpus', help='Bundled acceptance corpus').add_subparsers(dest='command', required=True)

	cmd = corpus.add_parser('run', help='Run every corpus case and compare with the expected values')
	_jobs_argument(cmd)
	cmd.set_defaults(handler=corpus_run)

	return argp


def main(argv=None):
	args = build_parser().parse_args(argv)

	level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.v, 2)]
	logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

	try:
		return args.handler(args)

	except NumericalError as ne:
		print(f'{DEFAULT_COLORIZER("no", "error:")} {ne}', file=sys.stderr)
		return EXIT_NUMERICAL

	except FiberProductError as fpe:
		print(f'{DEFAULT_COLORIZER("no", "error:")} {fpe}', file=sys.stderr)
		return EXIT_INVALID

	except OSError as ose:
		print(f'{DEFAULT_COLORIZER("no", "error:")} {ose}', file=sys.stderr)
		return EXIT_INVALID


if __name__ == '__main__':
	sys.exit(main())
