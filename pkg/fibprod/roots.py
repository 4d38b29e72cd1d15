#
# Simultaneous polynomial root finding (Aberth-Ehrlich iteration)
#

import logging

import numpy as np

from .common import NumericalError

logger = logging.getLogger(__name__)

# Relative tolerance for the final Newton polish
POLISH_TOLERANCE = 1e-12
# Iteration limits
ABERTH_ITERATIONS = 500
ABERTH_RESTARTS = 8
POLISH_ITERATIONS = 10
# Seed of the generator used for restarts
DEFAULT_SEED = 0x5EED


def min_separation(points):
	"""Least distance between two distinct entries (inf for fewer than two points)"""

	if len(points) < 2:
		return np.inf

	diff = np.abs(points[:, None] - points[None, :])
	np.fill_diagonal(diff, np.inf)

	return diff.min()


def cauchy_radius(coeffs):
	"""Bound on the modulus of the roots (coefficients in descending order)"""

	return 1.0 + np.max(np.abs(coeffs[1:] / coeffs[0]))


def _aberth_correction(coeffs, deriv, z):
	with np.errstate(divide='ignore', invalid='ignore'):
		ratio = np.polyval(coeffs, z) / np.polyval(deriv, z)
		diff = z[:, None] - z[None, :]
		np.fill_diagonal(diff, 1.0)
		inv = 1.0 / diff
		np.fill_diagonal(inv, 0.0)
		return ratio / (1.0 - ratio * inv.sum(axis=1))


def newton_polish(coeffs, z, tol=POLISH_TOLERANCE, iterations=POLISH_ITERATIONS):
	"""Refine simple roots by Newton iteration"""

	deriv = np.polyder(coeffs)
	z = z.copy()

	with np.errstate(divide='ignore', invalid='ignore'):
		for _ in range(iterations):
			delta = np.polyval(coeffs, z) / np.polyval(deriv, z)
			delta[~np.isfinite(delta)] = 0.0
			z -= delta

			if np.all(np.abs(delta) <= tol * (1.0 + np.abs(z))):
				break

	return z


def aberth_roots(coeffs, rng=None, tol=POLISH_TOLERANCE, max_iter=ABERTH_ITERATIONS, restarts=ABERTH_RESTARTS):
	"""All roots of a polynomial given by its coefficients in descending order"""

	coeffs = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), 'f')

	if len(coeffs) == 0:
		raise NumericalError('the zero polynomial has no finite set of roots')

	n = len(coeffs) - 1

	if n == 0:
		return np.empty(0, dtype=np.complex128)

	if n == 1:
		return np.array([-coeffs[1] / coeffs[0]])

	if rng is None:
		rng = np.random.default_rng(DEFAULT_SEED)

	deriv = np.polyder(coeffs)
	radius = cauchy_radius(coeffs)

	# Initial guesses on a circle, rotated off the real axis
	z = radius * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)

	for attempt in range(restarts + 1):
		for _ in range(max_iter):
			w = _aberth_correction(coeffs, deriv, z)

			if not np.all(np.isfinite(w)):
				break

			z = z - w

			if np.all(np.abs(w) <= tol * (1.0 + np.abs(z))):
				return newton_polish(coeffs, z)

		logger.warning('Aberth iteration stagnated for degree %d, restart %d', n, attempt + 1)
		z = radius * rng.uniform(0.5, 1.0, n) * np.exp(2j * np.pi * rng.random(n))

	raise NumericalError(f'Aberth iteration did not converge for a polynomial of degree {n}')


def sorted_roots(coeffs, rng=None):
	"""Roots in increasing order of real and then imaginary part"""

	roots = aberth_roots(coeffs, rng)

	return roots[np.lexsort((roots.imag, roots.real))]
