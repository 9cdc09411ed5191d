"""
A command line tool that sweeps exact and asymptotic Motzkin-chain quantities
over a range of parameters and writes them as CSV or JSON, or runs the
cross-validation suites.

Every row holds the parameters, the exact value, its asymptotic counterpart,
their absolute and relative differences and a status. Points that break a
size guard are reported in their row and do not stop the sweep. Run with
--help for the flags; MOTZKIN_MAX_2N overrides the size guards.
"""

from concurrent.futures import ThreadPoolExecutor
from correlations import ChainGeometry
from dataclasses import dataclass
from errors import ConvergenceError, SizeLimitError
from functools import lru_cache
from hamiltonian import MotzkinChain
from optparse import OptionParser
from services.export_service import TABLE_FORMATS, ExportService
from settings import Config
from typing import Callable, Optional

import correlations
import entanglement
import hamiltonian
import logging.config
import math
import sys
import traceback
import validation

RESULT_COLUMNS = ('exact', 'asymptotic', 'abs_diff', 'rel_diff', 'status')

USAGE = (
    'Usage: cli.py --quantity NAME [--two-n N] [--n1-range a:b:step] '
    '[--L-range a:b:step] [--kappa k1,k2] [--beta b1,b2] [--format csv|json] '
    '[--out PATH] [--workers N]\n   or: cli.py --validate quick|full '
    '[--out PATH]')

_NAN = float('nan')


def parse_range(text):
  """
    Integers from 'a:b:step' (b included), 'a:b', a comma list or a single
    value.
  """
  try:
    if ':' in text:
      parts = [int(p) for p in text.split(':')]
      if len(parts) not in (2, 3):
        raise ValueError
      start, stop = parts[0], parts[1]
      step = parts[2] if len(parts) == 3 else 1
      if step <= 0 or stop < start:
        raise ValueError
      return tuple(range(start, stop + 1, step))
    return tuple(int(p) for p in text.split(','))
  except ValueError:
    raise ValueError(f'Invalid range {text!r}; expected a:b:step, a,b,c or a.')


def parse_floats(text):
  try:
    return tuple(float(p) for p in text.split(','))
  except ValueError:
    raise ValueError(f'Invalid list of numbers {text!r}.')


@dataclass(frozen=True)
class SweepRequest:
  quantity: str
  two_n: tuple = ()
  n1_range: Optional[tuple] = None
  L_range: tuple = ()
  kappa: tuple = ()
  beta: tuple = ()
  fmt: str = 'csv'
  out: Optional[str] = None
  workers: int = 1

  def __post_init__(self):
    if self.quantity not in QUANTITIES:
      raise ValueError(
          f'Unknown quantity {self.quantity!r}; choose one of '
          f'{", ".join(QUANTITIES)}.')
    if self.fmt not in TABLE_FORMATS:
      raise ValueError(f'Unknown format {self.fmt!r}; use csv or json.')
    if self.workers < 1:
      raise ValueError(f'Need at least one worker, got {self.workers}.')
    if any(t < 2 or t % 2 for t in self.two_n):
      raise ValueError(
          f'Chain lengths must be even and positive: {self.two_n}.')
    if any(L < 1 for L in self.L_range):
      raise ValueError(f'Block lengths must be positive: {self.L_range}')
    needs = QUANTITIES[self.quantity].needs
    missing = [flag for flag, attr in (
        ('--two-n', 'two_n'), ('--L-range', 'L_range'),
        ('--kappa', 'kappa'), ('--beta', 'beta')) if attr in needs
        and not getattr(self, attr)]
    if missing:
      raise ValueError(
          f'{self.quantity} needs {", ".join(missing)}.')

  @property
  def output_path(self):
    return self.out or f'{self.quantity}.{self.fmt}'


@dataclass(frozen=True)
class Quantity:
  """
    How to sweep one quantity: its parameter columns, the points a request
    expands to and how to evaluate one point into rows of
    (parameters, exact, asymptotic).
  """
  parameters: tuple
  needs: tuple
  points: Callable
  evaluate: Callable


def _sites(req, two_n):
  return req.n1_range or tuple(range(1, two_n))


def _starts(req, two_n, L):
  """Explicit n1 values, or the start of the block centered on the chain."""
  if req.n1_range:
    return req.n1_range
  return (ChainGeometry.centered(two_n // 2, L).n1,)


def _site_points(req):
  return [(t, n1) for t in req.two_n for n1 in _sites(req, t)]


def _block_points(req):
  return [
      (t, n1, L) for t in req.two_n for L in req.L_range
      for n1 in _starts(req, t, L)]


@lru_cache(maxsize=8)
def _sz_profile(n):
  return tuple(correlations.sz_profile_exact(n))


@lru_cache(maxsize=2)
def _chain(two_n):
  return MotzkinChain(two_n, logging.getLogger('hamiltonian'))


def _height(point):
  g = ChainGeometry(point[0] // 2, point[1])
  return [(point, correlations.expected_height_exact(g),
      correlations.expected_height_asymptotic(g))]


def _sz(point):
  two_n, n1 = point
  g = ChainGeometry(two_n // 2, n1)
  asymptotic = correlations.sz_asymptotic(g)
  return [(point, _sz_profile(two_n // 2)[n1 - 1], asymptotic)]


def _two_point(point):
  two_n, n1, L = point
  g = ChainGeometry(two_n // 2, n1, n1 + L)
  return [(point, correlations.two_point_height_exact(g),
      correlations.two_point_height_asymptotic(two_n // 2, L))]


def _szsz(point):
  two_n, n1, L = point
  g = ChainGeometry(two_n // 2, n1, n1 + L)
  return [(point, correlations.szsz_exact(g), 0.0)]


def _cut_entropy(point):
  report = entanglement.cut_entropy(ChainGeometry(point[0] // 2, point[1]))
  return [(point, report.exact, report.asymptotic)]


def _cut_renyi(point):
  two_n, n1, kappa = point
  report = entanglement.cut_renyi(ChainGeometry(two_n // 2, n1), kappa)
  return [(point, report.exact, report.asymptotic)]


def _block_entropy(point):
  report = entanglement.block_entropy(point[0])
  return [(point, report.exact, report.asymptotic)]


def _block_entropy_chain(point):
  two_n, L = point
  report = entanglement.block_entropy_exact(
      ChainGeometry.centered(two_n // 2, L))
  return [(point, report.exact, report.asymptotic)]


def _block_renyi(point):
  report = entanglement.block_renyi(*point)
  return [(point, report.exact, report.asymptotic)]


def _spectrum(point):
  two_n, n1 = point
  g = ChainGeometry(two_n // 2, n1)
  exact = entanglement.cut_spectrum(g).weights
  boltzmann = {
      m: math.exp(-energy)
      for m, energy in entanglement.entanglement_hamiltonian_cut(g)}
  total = math.fsum(boltzmann.values())
  return [
      ((two_n, n1, m), p, boltzmann.get(m, 0.0) / total)
      for m, p in enumerate(exact)]


def _gap(point):
  return [(point, _chain(point[0]).spectral_gap(), _NAN)]


def _thermal(point):
  two_n, n1, L, beta = point
  thermal = _chain(two_n).thermal_correlator(n1, n1 + L, beta)
  ground = correlations.szsz_exact(ChainGeometry(two_n // 2, n1, n1 + L))
  return [(point, thermal, ground)]


QUANTITIES = {
    'height': Quantity(
        ('two_n', 'n1'), ('two_n',), _site_points, _height),
    'sz': Quantity(('two_n', 'n1'), ('two_n',), _site_points, _sz),
    'two_point': Quantity(
        ('two_n', 'n1', 'L'), ('two_n', 'L_range'), _block_points,
        _two_point),
    'szsz': Quantity(
        ('two_n', 'n1', 'L'), ('two_n', 'L_range'), _block_points, _szsz),
    'cut_entropy': Quantity(
        ('two_n', 'n1'), ('two_n',), _site_points, _cut_entropy),
    'cut_renyi': Quantity(
        ('two_n', 'n1', 'kappa'), ('two_n', 'kappa'),
        lambda req: [p + (k,) for p in _site_points(req) for k in req.kappa],
        _cut_renyi),
    'block_entropy': Quantity(
        ('L',), ('L_range',),
        lambda req: [(L,) for L in req.L_range], _block_entropy),
    'block_renyi': Quantity(
        ('L', 'kappa'), ('L_range', 'kappa'),
        lambda req: [(L, k) for L in req.L_range for k in req.kappa],
        _block_renyi),
    'spectrum': Quantity(
        ('two_n', 'n1', 'm'), ('two_n',), _site_points, _spectrum),
    'gap': Quantity(
        ('two_n',), ('two_n',), lambda req: [(t,) for t in req.two_n], _gap),
    'thermal': Quantity(
        ('two_n', 'n1', 'L', 'beta'), ('two_n', 'L_range', 'beta'),
        lambda req: [p + (b,) for p in _block_points(req) for b in req.beta],
        _thermal),
}

# block_entropy on a finite chain: exact spectrum of the centered block.
BLOCK_ENTROPY_CHAIN = Quantity(
    ('two_n', 'L'), ('two_n', 'L_range'),
    lambda req: [(t, L) for t in req.two_n for L in req.L_range],
    _block_entropy_chain)


def quantity_for(req):
  if req.quantity == 'block_entropy' and req.two_n:
    return BLOCK_ENTROPY_CHAIN
  return QUANTITIES[req.quantity]


def _result(parameters, exact, asymptotic):
  abs_diff = abs(exact - asymptotic)
  rel_diff = abs_diff / abs(asymptotic) if asymptotic else _NAN
  return tuple(parameters) + (
      float(exact), float(asymptotic), abs_diff, rel_diff, 'ok')


def _sweep_point(logger, quantity, point):
  try:
    return [_result(*row) for row in quantity.evaluate(point)]
  except (SizeLimitError, ValueError, ConvergenceError) as e:
    logger.warning(f'Skipping {point}: {e}')
    padding = ('',) * (len(quantity.parameters) - len(point))
    return [tuple(point) + padding + (_NAN, _NAN, _NAN, _NAN, str(e))]


def _fit_gaps(logger, rows, metadata):
  """Fills the asymptotic column of a gap sweep with the fitted power law."""
  measured = [(row[0], row[1]) for row in rows if row[-1] == 'ok']
  if len(measured) < 4:
    logger.warning(f'Only {len(measured)} gaps measured; need 4 to fit.')
    metadata['fit'] = 'needs at least 4 measured gaps'
    return rows
  fit = hamiltonian.fit_gap_exponent(
      [s for s, _ in measured], [g for _, g in measured], logger)
  metadata.update(
      exponent=fit.exponent, amplitude=fit.amplitude, residual=fit.residual)
  return [
      _result((row[0],), row[1], fit.predict(row[0]))
      if row[-1] == 'ok' else row
      for row in rows]


def run_sweep(logger, req, export_service):
  quantity = quantity_for(req)
  points = quantity.points(req)
  logger.info(
      f'Sweeping {req.quantity} over {len(points)} points with '
      f'{req.workers} workers.')
  with ThreadPoolExecutor(max_workers=req.workers) as pool:
    results = list(pool.map(
        lambda point: _sweep_point(logger, quantity, point), points))
  rows = [row for point_rows in results for row in point_rows]
  metadata = {
      'quantity': req.quantity,
      'columns': list(quantity.parameters + RESULT_COLUMNS),
      'two_n': list(req.two_n),
      'n1_range': list(req.n1_range) if req.n1_range else None,
      'L_range': list(req.L_range),
      'kappa': list(req.kappa),
      'beta': list(req.beta),
      'rows': len(rows),
  }
  if req.quantity == 'gap':
    rows = _fit_gaps(logger, rows, metadata)
  if req.quantity == 'thermal':
    metadata['exact'] = 'thermal <s^z s^z>'
    metadata['asymptotic'] = 'ground-state <s^z s^z>'
  failed = sum(1 for row in rows if row[-1] != 'ok')
  metadata['failed_rows'] = failed
  export_service.write_table(
      req.output_path, quantity.parameters + RESULT_COLUMNS, rows, req.fmt)
  export_service.write_metadata(req.output_path, metadata)
  logger.info(
      f'Wrote {len(rows)} rows ({failed} skipped) to {req.output_path}.')
  return 0


def run_validation(logger, level, export_service, out=None):
  records = validation.run_suites(logging.getLogger('validation'), level)
  failures = [r for r in records if not r.passed]
  if out is None and level == 'full':
    out = 'validation-report.json'
  if out is not None:
    export_service.write_report(out, [r.as_dict() for r in records])
  logger.info(
      f'{level} validation: {len(records) - len(failures)} of {len(records)} '
      'checks passed.')
  for record in failures:
    logger.error(f'FAILED [{record.suite}] {record.name}: {record.detail}')
  return 1 if failures else 0


def build_request(options):
  workers = options.workers or Config.from_env_vars().workers
  return SweepRequest(
      quantity=options.quantity,
      two_n=parse_range(options.two_n) if options.two_n else (),
      n1_range=parse_range(options.n1_range) if options.n1_range else None,
      L_range=parse_range(options.L_range) if options.L_range else (),
      kappa=parse_floats(options.kappa) if options.kappa else (),
      beta=parse_floats(options.beta) if options.beta else (),
      fmt=options.format,
      out=options.out,
      workers=workers)


def execute(logger, options, export_service):
  if options.validate:
    if options.validate not in validation.LEVELS:
      raise ValueError(f'Unknown validation level {options.validate!r}.')
    return run_validation(logger, options.validate, export_service,
        options.out)
  return run_sweep(logger, build_request(options), export_service)


def build_parser():
  parser = OptionParser()
  parser.add_option(
      '-q', '--quantity', dest='quantity',
      help=f'One of {", ".join(QUANTITIES)}.', metavar='[name]')
  parser.add_option(
      '--two-n', dest='two_n', help='Chain lengths: 170, 4,6,8 or 4:14:2.')
  parser.add_option(
      '--n1-range', dest='n1_range', help='Sites a:b:step (b included).')
  parser.add_option(
      '--L-range', dest='L_range', help='Block lengths a:b:step.')
  parser.add_option('--kappa', dest='kappa', help='Renyi indices: 0.5,2,3.')
  parser.add_option('--beta', dest='beta', help='Inverse temperatures.')
  parser.add_option(
      '--format', dest='format', default='csv', help='csv (default) or json.')
  parser.add_option('-o', '--out', dest='out', help='Output file.')
  parser.add_option(
      '--validate', dest='validate', help='Run the quick or full suites.')
  parser.add_option(
      '--workers', dest='workers', type='int',
      help='Threads for sweep points (default MOTZKIN_WORKERS or 1).')
  return parser


def main(argv=None):
  parser = build_parser()
  (options, args) = parser.parse_args(argv)

  logging.config.fileConfig('logging.conf')
  logger = logging.getLogger('cli')

  if args or not (options.quantity or options.validate):
    logger.error(f'Invalid command line arguments: {args}')
    raise SystemExit(USAGE)

  export_service = ExportService(logging.getLogger('export'))
  try:
    return execute(logger, options, export_service)
  except ValueError as e:
    logger.error(f'Invalid request: {e}')
    raise SystemExit(f'{e}\n{USAGE}')
  except Exception:
    logger.error(traceback.format_exc())
    return 1


if __name__ == '__main__':
  raise SystemExit(main(sys.argv[1:]))
