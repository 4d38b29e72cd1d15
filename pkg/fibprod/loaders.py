#
# Lazy access to the numerical layer
#

class NumericLoader:
	"""Lazy loader of the numerical layer to avoid importing sympy and numpy when not needed"""

	def __init__(self):
		self.cache = {}

	def get(self, key, default=None):
		"""Return the value for key or default otherwise"""

		value = self.cache.get(key)

		if value is None:
			match key:
				case 'RationalMap':
					from .rational import RationalMap
					value = RationalMap
				case 'RationalMapError':
					from .rational import RationalMapError
					value = RationalMapError
				case 'monodromy':
					from .monodromy import monodromy
					value = monodromy
				case 'map_product_report':
					from .monodromy import map_product_report
					value = map_product_report
				case 'self_product_report':
					from .monodromy import self_product_report
					value = self_product_report

			if value is not None:
				self.cache[key] = value

		return value if value is not None else default

	def __getitem__(self, key):
		"""Return self[key]"""

		if value := self.get(key):
			return value

		raise KeyError(key)


NUMERIC = NumericLoader()
