#
# Numerical monodromy of rational maps
#
# The fiber of f = P/Q over t is the set of roots of P - tQ. It is followed
# along loops based at a point t0 far from every critical value: a segment
# towards the value v, a counterclockwise circle around it, and the same
# segment back. Loops are composed in increasing order of the angle of
# v - t0 seen from t0 towards the origin, so that their product is the
# boundary of a large disk and the monodromy at infinity is its inverse.
#

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .common import NumericalError
from .cover import BranchedCover, BranchPoint, genus, validate
from .fiber import decompose
from .perm import Permutation, cycle_type
from .rational import INFINITY_KEY, RESOLUTION, RationalMap, ResolutionError, assign_labels, value_table
from .roots import DEFAULT_SEED, aberth_roots, min_separation

logger = logging.getLogger(__name__)

# Base point radius beyond the largest finite value
BASE_MARGIN = 2.0
# Least angle between two values seen from the base point
ANGLE_CLEARANCE = 1e-3
# Number of base point angles tried
BASE_ANGLE_CANDIDATES = 720
# Least distance between a path segment and another value, relative to the circle radius of that value
SEGMENT_CLEARANCE = 0.5
# Step control, as fractions of each path piece
INITIAL_STEP = 1 / 64
MIN_STEP = 2 ** -20
# Newton corrector
CORRECTOR_TOLERANCE = 1e-10
CORRECTOR_ITERATIONS = 6
# Old fiber separation must exceed this multiple of the largest movement
SEPARATION_FACTOR = 4.0


class TrackingError(NumericalError):
	"""Path tracking failure"""


class MonodromyInconsistencyError(NumericalError):
	"""Computed monodromy contradicting the exact multiplicity data"""


class FiberFamily:
	"""Roots of P - tQ as the value t varies"""

	def __init__(self, f: RationalMap):
		self.degree = f.degree
		self.p, self.q = f.numeric()
		self.dp, self.dq = np.polyder(self.p), np.polyder(self.q)

	def coefficients(self, t):
		return self.p - t * self.q

	def evaluate(self, z, t):
		"""P - tQ and its derivative at the points z"""

		return (np.polyval(self.p, z) - t * np.polyval(self.q, z),
		        np.polyval(self.dp, z) - t * np.polyval(self.dq, z))

	def velocity(self, z, t):
		"""dz/dt along the fiber"""

		return np.polyval(self.q, z) / self.evaluate(z, t)[1]

	def fiber(self, t):
		"""Fiber over t in a deterministic order"""

		roots = aberth_roots(self.coefficients(t), np.random.default_rng(DEFAULT_SEED))

		return roots[np.lexsort((roots.imag, roots.real))]


@dataclass(frozen=True)
class Segment:
	start: complex
	end: complex

	def __call__(self, s):
		return self.start + s * (self.end - self.start)


@dataclass(frozen=True)
class Circle:
	"""Counterclockwise circle starting at the given phase"""

	center: complex
	radius: float
	phase: float

	def __call__(self, s):
		return self.center + self.radius * complex(np.exp(1j * (self.phase + 2 * np.pi * s)))


@dataclass(frozen=True)
class Loop:
	"""Loop from the base point around a single value"""

	key: tuple
	center: complex
	radius: float
	pieces: tuple


class TrackedFiber:
	"""Fiber points followed from the base point along a path"""

	def __init__(self, family: FiberFamily, base: complex, points):
		self.family = family
		self.base = base
		self.position = base
		self.points = np.array(points, dtype=np.complex128)
		# Largest movement accepted in one step
		self.radius = 0.0
		self.steps = 0
		self.halvings = 0

	def _step(self, t_old, t_new):
		"""Predict and correct, or None if the step is rejected"""

		z = self.points

		with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
			new = z + (t_new - t_old) * self.family.velocity(z, t_old)

			for _ in range(CORRECTOR_ITERATIONS):
				value, deriv = self.family.evaluate(new, t_new)
				delta = value / deriv
				new = new - delta

				if not np.all(np.isfinite(new)):
					return None

				if np.all(np.abs(delta) <= CORRECTOR_TOLERANCE * (1.0 + np.abs(new))):
					break
			else:
				return None

		move = np.max(np.abs(new - z))

		if not min_separation(z) > SEPARATION_FACTOR * move:
			return None

		return new, move

	def follow(self, piece, initial_step=INITIAL_STEP, min_step=MIN_STEP):
		"""Track the fiber along a path piece parametrized by [0, 1]"""

		s, h = 0.0, initial_step

		while 1.0 - s > 1e-15:
			h = min(h, 1.0 - s)
			result = self._step(piece(s), piece(s + h))

			if result is None:
				h /= 2
				self.halvings += 1

				if h < min_step:
					raise TrackingError(f'step size below {min_step:g} near t = {complex(piece(s)):.6g}')

				continue

			self.points, move = result
			self.radius = max(self.radius, move)
			self.steps += 1
			s += h
			h = min(2 * h, initial_step)

		self.position = piece(1.0)

	def matching(self, base_points):
		"""Index of the base fiber point nearest to each current point"""

		distance = np.abs(self.points[:, None] - base_points[None, :])
		images = [int(k) for k in np.argmin(distance, axis=1)]
		tolerance = min_separation(base_points) / 2

		if sorted(images) != list(range(len(base_points))) or \
		   np.max(distance[np.arange(len(images)), images]) >= tolerance:
			raise TrackingError('the tracked fiber does not return to the base fiber')

		return images


def _segment_distance(w, a, b):
	"""Distance from w to the segment ab"""

	ab = b - a
	s = ((w - a) * ab.conjugate()).real / abs(ab) ** 2 if ab else 0.0

	return abs(w - (a + min(max(s, 0.0), 1.0) * ab))


def _radii(points):
	"""Circle radius around each value: a third of the distance to the nearest one"""

	keys = list(points)
	radii = {}

	for key in keys:
		nearest = math.inf

		for other in keys:
			if other != key:
				distance = abs(points[key] - points[other])

				if distance < RESOLUTION:
					raise ResolutionError(f'values {points[key]:.12g} and {points[other]:.12g} '
					                      f'are closer than {RESOLUTION:g}')

				nearest = min(nearest, distance)

		# A lone value gets the unit circle
		radii[key] = nearest / 3 if nearest < math.inf else 1.0

	return radii


def _admissible(t0, points, radii):
	"""Loops for the base point t0 ordered by angle, or None if it is not admissible"""

	angles = {key: float(np.angle((v - t0) / -t0)) for key, v in points.items()}
	order = sorted(points, key=angles.get)

	if any(angles[b] - angles[a] <= ANGLE_CLEARANCE for a, b in zip(order, order[1:])):
		return None

	if any(abs(v - t0) <= 1.5 * radii[key] for key, v in points.items()):
		return None

	loops = []

	for key in order:
		v, r = points[key], radii[key]
		entry = v - r * (v - t0) / abs(v - t0)

		for other, w in points.items():
			if other != key and _segment_distance(w, t0, entry) <= SEGMENT_CLEARANCE * radii[other]:
				return None

		pieces = (Segment(t0, entry), Circle(v, r, float(np.angle(entry - v))), Segment(entry, t0))
		loops.append(Loop(key, v, r, pieces))

	return loops


def loop_system(points):
	"""Base point and loops around the given finite values (key -> complex)"""

	radius = BASE_MARGIN + max((abs(v) for v in points.values()), default=0.0)

	if not points:
		return complex(radius), []

	radii = _radii(points)
	golden = (math.sqrt(5) - 1) / 2

	for k in range(BASE_ANGLE_CANDIDATES):
		theta = 2 * math.pi * ((0.3 + k * golden) % 1.0)
		t0 = radius * complex(math.cos(theta), math.sin(theta))
		loops = _admissible(t0, points, radii)

		if loops is not None:
			logger.debug('base point %s with %d loops', f'{t0:.6g}', len(loops))
			return t0, loops

	raise ResolutionError('no admissible base point for the loop system')


def _track_loop(family, t0, base_points, loop, resolution):
	fiber = TrackedFiber(family, t0, base_points)

	for piece in loop.pieces:
		fiber.follow(piece, INITIAL_STEP / resolution, MIN_STEP)

	images = fiber.matching(base_points)

	logger.debug('loop around %s: %d steps, %d halvings, matching radius %.3g',
	             f'{loop.center:.6g}', fiber.steps, fiber.halvings, fiber.radius)

	return Permutation(images)


def _loop_permutations(f, t0, loops, resolution, jobs):
	family = FiberFamily(f)
	base_points = family.fiber(t0)

	if min_separation(base_points) < RESOLUTION:
		raise TrackingError(f'the fiber over the base point {t0:.6g} is not separated')

	def track(loop):
		return _track_loop(family, t0, base_points, loop, resolution)

	if jobs > 1 and len(loops) > 1:
		with ThreadPoolExecutor(max_workers=jobs) as executor:
			return list(executor.map(track, loops))

	return [track(loop) for loop in loops]


def joint_monodromy(maps, resolution: float = 1, jobs: int = 1):
	"""Monodromy of several maps with a common loop system and common labels"""

	if any(f.gaussian for f in maps):
		maps = [f.promoted() for f in maps]

	tables = [{value.key: value for value in value_table(f)} for f in maps]

	union = {}

	for table in tables:
		for key, value in table.items():
			union.setdefault(key, value)

	labels = {value.key: value.label for value in assign_labels(list(union.values()))}
	finite = {key: value.point for key, value in union.items() if key != INFINITY_KEY}
	with_infinity = any(table[INFINITY_KEY].is_critical for table in tables)

	t0, loops = loop_system(finite)
	covers = []

	for f, table in zip(maps, tables):
		d = f.degree
		perms = _loop_permutations(f, t0, loops, resolution, jobs)
		keys = [loop.key for loop in loops]

		if with_infinity:
			perms.append(reduce(Permutation.__mul__, perms, Permutation.identity(d)).inverse())
			keys.append(INFINITY_KEY)

		points = []

		for key, perm in zip(keys, perms):
			expected = table[key].orders if key in table else cycle_type(Permutation.identity(d))

			if cycle_type(perm) != expected:
				raise MonodromyInconsistencyError(f'monodromy of {f} around {labels[key]} has cycle type '
				                                  f'{cycle_type(perm)}, expected {expected}')

			points.append(BranchPoint(labels[key], perm, perm.is_identity()))

		cover = BranchedCover(d, tuple(points))
		report = validate(cover)

		if not report.ok:
			raise MonodromyInconsistencyError(f'monodromy of {f} is not a cover: '
			                                  f'{"; ".join(map(str, report.violations))}')

		if genus(cover) != 0:
			raise MonodromyInconsistencyError(f'monodromy of {f} has genus {genus(cover)} instead of 0')

		covers.append(cover)

	return covers


def monodromy(f: RationalMap, resolution: float = 1, jobs: int = 1):
	"""Monodromy of a rational map as a cover of the sphere"""

	return joint_monodromy([f], resolution, jobs)[0].without_padding()


def self_product_report(f: RationalMap, resolution: float = 1, jobs: int = 1):
	"""Decomposition of the fiber product of a map with itself"""

	c = monodromy(f, resolution, jobs)

	return decompose(c, c, jobs)


def map_product_report(f: RationalMap, g: RationalMap, resolution: float = 1, jobs: int = 1):
	"""Decomposition of the fiber product of two maps"""

	c1, c2 = joint_monodromy([f, g], resolution, jobs)

	return decompose(c1, c2, jobs)
