#
# Reports of fiber product decompositions in text and JSON
#

import json
import os
import sys
from dataclasses import asdict, dataclass

from .fiber import FiberDecomposition, IsomorphismReport, JacobianReport, regular_flags
from .perm import cycle_type

REPORT_VERSION = 1


def colorizer(kind: str, text: str):
	"""Colorize report elements"""

	match kind:
		case 'key':
			color = '1'
		case 'yes':
			color = '32'
		case 'no':
			color = '31'
		case _:  # kind == 'label'
			color = '35'

	return f'\x1b[{color}m{text}\x1b[0m'


def no_colorizer(_, text: str):
	"""Keep text as is"""

	return text


def _stdout_is_tty():
	try:
		return os.isatty(sys.stdout.fileno())
	except (AttributeError, OSError, ValueError):
		return False


# Default colorizer depends on whether the output stream is a TTY
DEFAULT_COLORIZER = colorizer if _stdout_is_tty() else no_colorizer


@dataclass(frozen=True)
class ComponentReport:
	"""Summary of a component"""

	size: int
	d1: int
	d2: int
	genus: int
	# Label and cycle type at each aligned branch position
	cycle_types: tuple[tuple[str, tuple[int, ...]], ...]


@dataclass(frozen=True)
class SingularReport:
	"""Summary of a singular point"""

	label: str
	n1: int
	n2: int
	cone_count: int
	# Component owning each cone
	components: tuple[int, ...]

	@property
	def disc_like(self):
		return self.cone_count == 1


@dataclass(frozen=True)
class JacobianSummary:
	applicable: bool
	failed_hypothesis: str | None
	g_C: int | None
	g0: int | None
	g1: int | None
	g2: int | None
	dim_P: int | None
	shape: str


@dataclass(frozen=True)
class DecompositionReport:
	"""Serializable report of a fiber product decomposition"""

	degrees: tuple[int, int]
	base_genus: int
	labels: tuple[str, ...]
	components: tuple[ComponentReport, ...]
	singular_points: tuple[SingularReport, ...]
	cond1: bool
	cond2: bool
	predicted_irreducible: bool
	actual_component_count: int
	bound: int
	connected: bool
	regular: tuple[bool, bool]
	isomorphic: bool | None = None
	# (k, l, conjugator in cycle notation)
	witnesses: tuple[tuple[int, int, str], ...] = ()
	jacobian: JacobianSummary | None = None

	@classmethod
	def build(cls, dec: FiberDecomposition, isomorphism: IsomorphismReport = None,
	          jacobian: JacobianReport = None):
		"""Summarize a decomposition with the optional isomorphism and Jacobian reports"""

		components = tuple(
			ComponentReport(comp.size, comp.d1, comp.d2, comp.genus,
			                tuple((str(bp.label), tuple(cycle_type(bp.perm))) for bp in comp.cover.branch_points))
			for comp in dec.components
		)

		singular = tuple(
			SingularReport(str(point.label), point.n1, point.n2, point.cone_count,
			               tuple(cone.component for cone in point.cones))
			for point in dec.singular_points
		)

		summary = None

		if jacobian is not None:
			summary = JacobianSummary(jacobian.applicable, jacobian.failed_hypothesis, jacobian.g_C,
			                          jacobian.g0, jacobian.g1, jacobian.g2, jacobian.dim_P, jacobian.SHAPE)

		return cls(
			degrees=dec.degrees,
			base_genus=dec.covers[0].base_genus,
			labels=tuple(str(label) for label in dec.labels),
			components=components,
			singular_points=singular,
			cond1=dec.criteria.cond1,
			cond2=dec.criteria.cond2,
			predicted_irreducible=dec.criteria.predicted_irreducible,
			actual_component_count=dec.criteria.actual_component_count,
			bound=dec.bound,
			connected=dec.connected,
			regular=regular_flags(dec),
			isomorphic=None if isomorphism is None else isomorphism.isomorphic,
			witnesses=() if isomorphism is None else tuple((k, l, str(g)) for k, l, g in isomorphism.witnesses),
			jacobian=summary,
		)

	def to_json(self):
		"""Canonical JSON (sorted keys, fixed layout)"""

		return json.dumps({'version': REPORT_VERSION, **asdict(self)}, sort_keys=True, indent=1) + '\n'

	@classmethod
	def from_json(cls, text):
		"""Rebuild a report from its JSON form"""

		data = json.loads(text)
		data.pop('version', None)

		jacobian = data.pop('jacobian')

		return cls(
			degrees=tuple(data.pop('degrees')),
			labels=tuple(data.pop('labels')),
			components=tuple(ComponentReport(c['size'], c['d1'], c['d2'], c['genus'],
			                                 tuple((label, tuple(ct)) for label, ct in c['cycle_types']))
			                 for c in data.pop('components')),
			singular_points=tuple(SingularReport(s['label'], s['n1'], s['n2'], s['cone_count'],
			                                     tuple(s['components']))
			                      for s in data.pop('singular_points')),
			regular=tuple(data.pop('regular')),
			witnesses=tuple(tuple(w) for w in data.pop('witnesses')),
			jacobian=None if jacobian is None else JacobianSummary(**jacobian),
			**data,
		)

	def to_text(self, colorizer=no_colorizer):
		"""Stable human-readable report"""

		def key(text):
			return colorizer('key', text + ':')

		def flag(value):
			return colorizer('yes' if value else 'no', 'true' if value else 'false')

		lines = [
			f'{key("degrees")} {self.degrees[0]} {self.degrees[1]}',
			f'{key("base_genus")} {self.base_genus}',
			f'{key("labels")} {" ".join(colorizer("label", label) for label in self.labels)}',
			f'{key("components")} {len(self.components)}',
		]

		for k, comp in enumerate(self.components):
			lines.append(f'  [{k}] size: {comp.size}  d1: {comp.d1}  d2: {comp.d2}  genus: {comp.genus}')

			for label, ctype in comp.cycle_types:
				if any(length > 1 for length in ctype):
					lines.append(f'      {colorizer("label", label)} [{",".join(map(str, ctype))}]')

		if not self.singular_points:
			lines.append(f'{key("singular_points")} []')
		else:
			lines.append(key('singular_points'))

			for point in self.singular_points:
				line = (f'  - {colorizer("label", point.label)}: n1 {point.n1} n2 {point.n2}'
				        f' cones {point.cone_count} components {" ".join(map(str, point.components))}')
				lines.append(line + (' (disc-like)' if point.disc_like else ''))

		lines += [
			f'{key("criteria")} cond1 {flag(self.cond1)} cond2 {flag(self.cond2)}'
			f' predicted_irreducible {flag(self.predicted_irreducible)}',
			f'{key("bound")} {self.bound}',
			f'{key("connected")} {flag(self.connected)}',
			f'{key("regular")} {flag(self.regular[0])} {flag(self.regular[1])}',
		]

		if self.isomorphic is not None:
			lines.append(f'{key("pairwise_isomorphic")} {flag(self.isomorphic)}')

			for k, l, g in self.witnesses:
				lines.append(f'  {k} -> {l}: {g}')

		if (jac := self.jacobian) is not None:
			if jac.applicable:
				lines.append(f'{key("jacobian")} {jac.shape}')
				lines.append(f'  g_C: {jac.g_C}  g0: {jac.g0}  g1: {jac.g1}  g2: {jac.g2}  dim_P: {jac.dim_P}')
			else:
				lines.append(f'{key("jacobian")} not applicable ({jac.failed_hypothesis})')

		return '\n'.join(lines) + '\n'


def emit_report(dec: FiberDecomposition, fmt='text', isomorphism=None, jacobian=None, colorizer=no_colorizer):
	"""Report of a decomposition as bytes in the text or structured format"""

	report = DecompositionReport.build(dec, isomorphism, jacobian)

	match fmt:
		case 'text':
			return report.to_text(colorizer).encode('utf-8')
		case 'structured':
			return report.to_json().encode('utf-8')

	raise ValueError(f'unknown report format {fmt}')
