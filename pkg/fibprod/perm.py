#
# Permutation algebra, orbits, and equivalence of permutation representations
#
# Points are 0-based internally and 1-based in every human-facing text.
# Products apply the left factor first: (p * q)(x) = q(p(x)).
#

import logging
from collections import deque

from .common import FiberProductError, lcm_all

logger = logging.getLogger(__name__)


class PermutationError(FiberProductError):
	"""Invalid permutation data"""


class MalformedCycleError(PermutationError):
	"""Cycle notation that does not describe a permutation"""


class OutOfRangeError(PermutationError):
	"""Symbol outside the range 1..n"""


class DegreeMismatchError(PermutationError):
	"""Permutations of different degrees were combined"""


class Permutation:
	"""Bijection of {0, ..., n - 1} (shown as {1, ..., n})"""

	__slots__ = ('images',)

	images: tuple[int, ...]

	def __init__(self, images):
		images = tuple(images)

		if sorted(images) != list(range(len(images))):
			raise PermutationError(f'not a bijection: {images}')

		self.images = images

	@classmethod
	def identity(cls, n: int):
		return cls(range(n))

	@classmethod
	def from_cycles(cls, cycles, n: int):
		"""Build from 0-based cycles (points not mentioned are fixed)"""

		images = list(range(n))

		for cycle in cycles:
			for x, y in zip(cycle, cycle[1:] + cycle[:1]):
				images[x] = y

		return cls(images)

	@property
	def degree(self):
		return len(self.images)

	def __call__(self, x: int):
		return self.images[x]

	def __mul__(self, other):
		if other.degree != self.degree:
			raise DegreeMismatchError(f'cannot compose degrees {self.degree} and {other.degree}')

		return Permutation(other.images[y] for y in self.images)

	def __pow__(self, k: int):
		base = self if k >= 0 else self.inverse()
		result = Permutation.identity(self.degree)

		for _ in range(abs(k)):
			result = result * base

		return result

	def inverse(self):
		inv = [0] * self.degree

		for x, y in enumerate(self.images):
			inv[y] = x

		return Permutation(inv)

	def conjugate(self, g):
		"""g * self * g^-1"""

		return g * self * g.inverse()

	def is_identity(self):
		return all(x == y for x, y in enumerate(self.images))

	def cycles(self, include_fixed=False):
		"""Cycles as 0-based tuples, each starting at its least point"""

		seen = [False] * self.degree
		cycles = []

		for start in range(self.degree):
			if seen[start]:
				continue

			cycle = [start]
			seen[start] = True
			x = self.images[start]

			while x != start:
				cycle.append(x)
				seen[x] = True
				x = self.images[x]

			if include_fixed or len(cycle) > 1:
				cycles.append(tuple(cycle))

		return cycles

	def restrict(self, points):
		"""Restriction to an invariant set, relabeled by the order of points"""

		index = {x: k for k, x in enumerate(points)}

		try:
			return Permutation(index[self.images[x]] for x in points)
		except KeyError:
			raise PermutationError('restriction to a non-invariant set') from None

	def __eq__(self, other):
		return isinstance(other, Permutation) and self.images == other.images

	def __hash__(self):
		return hash(self.images)

	def __str__(self):
		text = ''.join('(' + ' '.join(str(x + 1) for x in cycle) + ')' for cycle in self.cycles())
		return text or '()'

	def __repr__(self):
		return f'Permutation({str(self)!r}, {self.degree})'


class CycleType(tuple):
	"""Multiset of cycle lengths in descending order"""

	def __new__(cls, lengths):
		return super().__new__(cls, sorted(lengths, reverse=True))

	@property
	def degree(self):
		return sum(self)

	@property
	def lcm(self):
		return lcm_all(self)

	def is_trivial(self):
		return all(length == 1 for length in self)

	def __str__(self):
		return '[' + ','.join(map(str, self)) + ']'


_CYCLE_PARSER = None


def parse_cycles(text: str, degree: int):
	"""Parse cycle notation to a permutation of the given degree"""

	global _CYCLE_PARSER

	if _CYCLE_PARSER is None:
		from .parser import CycleParser
		_CYCLE_PARSER = CycleParser()

	try:
		cycles = _CYCLE_PARSER.parse(text)
	except FiberProductError as fpe:
		raise MalformedCycleError(str(fpe)) from fpe

	return from_cycle_lists(cycles, degree)


def from_cycle_lists(cycles, degree: int):
	"""Permutation from 1-based cycle lists"""

	seen = set()

	for cycle in cycles:
		for symbol in cycle:
			if symbol < 1 or symbol > degree:
				raise OutOfRangeError(f'symbol {symbol} out of range 1..{degree}')
			if symbol in seen:
				raise MalformedCycleError(f'repeated symbol {symbol}')
			seen.add(symbol)

	return Permutation.from_cycles([[x - 1 for x in cycle] for cycle in cycles], degree)


def cycle_type(p: Permutation):
	"""Cycle lengths of a permutation, fixed points included"""

	return CycleType(len(cycle) for cycle in p.cycles(include_fixed=True))


def _check_degrees(generators, n):
	for gen in generators:
		if gen.degree != n:
			raise DegreeMismatchError(f'generator of degree {gen.degree} acting on {n} points')


def orbits(generators, n: int):
	"""Orbits of the group generated, each sorted, ordered by least element"""

	_check_degrees(generators, n)

	orbit_of = [-1] * n
	result = []

	for start in range(n):
		if orbit_of[start] >= 0:
			continue

		orbit_id = len(result)
		orbit_of[start] = orbit_id
		orbit = [start]
		queue = deque((start,))

		# The orbit of a finite group is closed under images alone
		while queue:
			x = queue.popleft()

			for gen in generators:
				y = gen.images[x]

				if orbit_of[y] < 0:
					orbit_of[y] = orbit_id
					orbit.append(y)
					queue.append(y)

		result.append(tuple(sorted(orbit)))

	logger.debug('%d orbits on %d points', len(result), n)

	return result


def is_transitive(generators, n: int):
	return n <= 1 or len(orbits(generators, n)) == 1


def group_order_bounded(generators, n: int, cap: int):
	"""Order of the generated group, or None if it exceeds cap"""

	_check_degrees(generators, n)

	identity = Permutation.identity(n)
	elements = {identity.images}
	queue = deque((identity,))

	while queue:
		g = queue.popleft()

		for gen in generators:
			h = g * gen

			if h.images not in elements:
				elements.add(h.images)

				if len(elements) > cap:
					return None

				queue.append(h)

	return len(elements)


def _extend(rep_a, rep_a_inv, rep_b, rep_b_inv, g, used, seed, image):
	"""Propagate g(seed) = image along its orbit; returns the assignments made if they conflict"""

	assigned = [(seed, image)]
	g[seed] = image
	used[image] = True
	queue = deque(assigned)

	# g must satisfy g(B(x)) = A(g(x)) for every generator pair
	while queue:
		x, gx = queue.popleft()

		for a, a_inv, b, b_inv in zip(rep_a, rep_a_inv, rep_b, rep_b_inv):
			for y, gy in ((b.images[x], a.images[gx]), (b_inv.images[x], a_inv.images[gx])):
				if g[y] < 0:
					if used[gy]:
						return assigned
					g[y] = gy
					used[gy] = True
					assigned.append((y, gy))
					queue.append((y, gy))

				elif g[y] != gy:
					return assigned

	return None


def simultaneous_conjugator(rep_a, rep_b, n: int):
	"""Permutation g with g * A_i * g^-1 = B_i for all i, or None"""

	if len(rep_a) != len(rep_b):
		return None

	_check_degrees(rep_a, n)
	_check_degrees(rep_b, n)

	if any(cycle_type(a) != cycle_type(b) for a, b in zip(rep_a, rep_b)):
		return None

	rep_a_inv = [a.inverse() for a in rep_a]
	rep_b_inv = [b.inverse() for b in rep_b]

	g = [-1] * n
	used = [False] * n

	def undo_since(before):
		for x in range(n):
			if g[x] >= 0 and x not in before:
				used[g[x]] = False
				g[x] = -1

	# Backtracking frames: seed point, points assigned before it, next candidate
	frames = []

	while True:
		seed = next((x for x in range(n) if g[x] < 0), None)

		if seed is None:
			return Permutation(g)

		frames.append([seed, {x for x in range(n) if g[x] >= 0}, 0])

		while frames:
			frame = frames[-1]
			seed, before, start = frame
			undo_since(before)

			for image in range(start, n):
				if used[image]:
					continue

				if _extend(rep_a, rep_a_inv, rep_b, rep_b_inv, g, used, seed, image) is None:
					frame[2] = image + 1
					break

				undo_since(before)

			else:
				frames.pop()
				continue

			break

		else:
			return None


def is_conjugator(g: Permutation, rep_a, rep_b):
	"""Check g * A_i * g^-1 = B_i elementwise"""

	return len(rep_a) == len(rep_b) and all(a.conjugate(g) == b for a, b in zip(rep_a, rep_b))
