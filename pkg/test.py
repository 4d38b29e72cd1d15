#
# Property test of the fiber product engine with random constellations
#
# Each case is a pair of random valid covers over a common base. The
# properties checked are listed in fibprod.fuzz.check_properties, and one
# ndjson line is written per case with the violated ones (if any).
#

import json
import time

from fibprod.cover import genus
from fibprod.fuzz import check_properties, random_cases


def describe_cover(cover):
	"""Summary of a cover for the results file"""

	return {
		'degree': cover.degree,
		'base_genus': cover.base_genus,
		'genus': genus(cover),
		'labels': [str(label) for label in cover.labels],
	}


def dump_result(out, index: int, c1, c2, violations, elapsed):
	"""Dump the result to a ndJSON file"""

	summary = {
		'id': index,
		'first': describe_cover(c1),
		'second': describe_cover(c2),
		'ok': not violations,
		'violations': violations,
		'time': elapsed,
	}

	json.dump(summary, out)
	out.write('\n')
	out.flush()


def main():
	"""Run the property test"""

	import argparse

	args_parser = argparse.ArgumentParser(description='Property test runner')
	args_parser.add_argument('--cases', '-n', help='Number of random cases', type=int, default=10000)
	args_parser.add_argument('--seed', '-s', help='Seed of the random generator', type=int, default=0)
	args_parser.add_argument('--max-degree', help='Largest degree of the random covers', type=int, default=10)
	args_parser.add_argument('--max-base-genus', help='Largest genus of the base', type=int, default=2)
	args_parser.add_argument('--output', '-o', help='Path to save the results (ndjson)', default='results.ndjson')

	args = args_parser.parse_args()

	failed = 0

	with open(args.output, 'w') as out:
		for index, (c1, c2) in enumerate(random_cases(args.cases, args.seed, args.max_degree, args.max_base_genus)):
			start = time.perf_counter_ns()
			violations = check_properties(c1, c2)
			end = time.perf_counter_ns()

			if violations:
				failed += 1
				print(f'\ncase {index} ({c1.degree}, {c2.degree}): {", ".join(violations)}', flush=True)

			elif index % 100 == 0:
				print(f'\x1b[1K\r{index} cases', end='', flush=True)

			dump_result(out, index, c1, c2, violations, end - start)

	print(f'\x1b[1K\r{args.cases - failed} of {args.cases} cases without violations')

	return 1 if failed else 0


if __name__ == '__main__':
	raise SystemExit(main())
