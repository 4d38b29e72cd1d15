#
# Common definitions for all modules
#

import math


class FiberProductError(Exception):
	"""Base class of all errors raised by this package"""

	def __init__(self, text):
		super().__init__(text)


class InconsistencyError(FiberProductError):
	"""An internal invariant does not hold (corrupted data or a bug)"""


class NumericalError(FiberProductError):
	"""Failure of the numerical layer"""


def lcm_all(values):
	"""Least common multiple of a (possibly empty) collection"""

	return math.lcm(*values) if values else 1


def gcd_all(values):
	"""Greatest common divisor of a (possibly empty) collection"""

	return math.gcd(*values) if values else 0
