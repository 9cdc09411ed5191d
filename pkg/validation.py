"""
Cross-checks between independent routes to the same numbers: closed-form walk
counts against enumeration, counted Schmidt spectra against the explicit
ground state, the two constructions of the Hamiltonian against each other and
the excursion closed forms against quadrature.

Each check returns (passed, detail). run_suites() runs every check of a level
and turns each into a ValidationRecord, so a failing or crashing check never
stops the others.
"""

from correlations import ChainGeometry, ExcursionPoint
from dataclasses import asdict, dataclass
from hamiltonian import MotzkinChain
from walks import WalkEndpoints

import correlations
import entanglement
import hamiltonian
import numpy as np
import scipy.linalg
import time
import traceback
import walks

LEVELS = ('quick', 'full')


@dataclass(frozen=True)
class ValidationPlan:
  walk_steps: int
  identity_two_n: int
  cut_two_n: int
  blocks: tuple
  dual_two_n: int
  frustration_two_n: int
  charge_two_n: int
  local_moves_two_n: int
  figure_size: bool
  gap_sizes: tuple


PLANS = {
    'quick': ValidationPlan(
        walk_steps=10,
        identity_two_n=60,
        cut_two_n=8,
        blocks=((3, 2, 4), (4, 3, 5)),
        dual_two_n=6,
        frustration_two_n=8,
        charge_two_n=6,
        local_moves_two_n=6,
        figure_size=False,
        gap_sizes=()),
    'full': ValidationPlan(
        walk_steps=14,
        identity_two_n=60,
        cut_two_n=12,
        blocks=((3, 2, 4), (4, 3, 5), (6, 5, 7), (6, 4, 8)),
        dual_two_n=8,
        frustration_two_n=12,
        charge_two_n=10,
        local_moves_two_n=8,
        figure_size=True,
        gap_sizes=(4, 6, 8, 10, 12, 14)),
}


@dataclass(frozen=True)
class ValidationRecord:
  suite: str
  name: str
  passed: bool
  detail: str
  seconds: float

  def as_dict(self):
    return asdict(self)


def _mismatches(label, pairs):
  """(passed, detail) for an iterable of (key, expected, actual)."""
  bad = [(key, e, a) for key, e, a in pairs if e != a]
  if not bad:
    return True, f'{label}: all equal'
  key, e, a = bad[0]
  return False, f'{label}: {len(bad)} mismatches, first at {key}: {e} != {a}'


def _endpoints(max_steps):
  for steps in range(max_steps + 1):
    for start in range(steps + 1):
      for end in range(steps + 1):
        yield WalkEndpoints(steps, start, end)


def check_dyck_brute_force(plan):
  return _mismatches('dyck_count', (
      (e, walks.brute_force_count(e, False), walks.dyck_count(e))
      for e in _endpoints(plan.walk_steps)))


def check_motzkin_brute_force(plan):
  return _mismatches('motzkin_count', (
      (e, walks.brute_force_count(e, True), walks.motzkin_count(e))
      for e in _endpoints(plan.walk_steps)))


def check_motzkin_number_identity(plan):
  return _mismatches('motzkin_number', (
      (two_n,
          sum(walks.binomial(two_n, 2 * i) * walks.catalan(i)
              for i in range(two_n // 2 + 1)),
          walks.motzkin_number(two_n))
      for two_n in range(0, plan.identity_two_n + 1, 2)))


def check_trinomial_forms(plan):
  return _mismatches('trinomial forms', (
      (two_n, walks.motzkin_number(two_n),
          walks.motzkin_number_trinomial(two_n))
      for two_n in range(2, plan.identity_two_n + 1, 2)))


def check_cut_spectra(plan):
  worst = 0.0
  for two_n in range(2, plan.cut_two_n + 1, 2):
    state = MotzkinChain(two_n).build_motzkin_state()
    for n1 in range(1, two_n):
      svd = hamiltonian.schmidt_spectrum(state, n1)
      counted = sorted(entanglement.cut_spectrum(
          ChainGeometry(two_n // 2, n1)).weights, reverse=True)
      if len(svd) != min(n1, two_n - n1) + 1 or len(svd) != len(counted):
        return False, f'rank mismatch at 2n={two_n}, n1={n1}'
      worst = max(worst, float(np.abs(svd - counted).max()))
  return worst < 1e-10, f'largest weight difference {worst:.3g}'


def check_block_spectra(plan):
  worst = 0.0
  for n, n1, n2 in plan.blocks:
    state = MotzkinChain(2 * n).build_motzkin_state()
    values = scipy.linalg.eigvalsh(
        hamiltonian.reduced_density(state, n1 + 1, n2))
    values = np.sort(values[values > 1e-12])[::-1]
    counted = sorted((w for w in entanglement.block_spectrum_exact(
        ChainGeometry(n, n1, n2)).weights if w > 1e-12), reverse=True)
    if len(values) != len(counted):
      return False, f'rank mismatch for block {n1 + 1}..{n2} at 2n={2 * n}'
    worst = max(worst, float(np.abs(values - counted).max()))
  return worst < 1e-10, f'largest weight difference {worst:.3g}'


def check_dual_construction(plan):
  worst = 0.0
  for two_n in range(2, plan.dual_two_n + 1, 2):
    chain = MotzkinChain(two_n)
    difference = (chain.build_hamiltonian()
        - chain.build_hamiltonian_from_spin_operators())
    if difference.nnz:
      worst = max(worst, float(abs(difference).max()))
  return worst < 1e-12, f'largest entry difference {worst:.3g}'


def check_frustration_free(plan):
  for two_n in range(2, plan.frustration_two_n + 1, 2):
    report = MotzkinChain(two_n).verify_frustration_free()
    if not report.passed:
      return False, (
          f'2n={two_n}: residual {max(report.bond_residuals):.3g}, boundary '
          f'{report.boundary_residual:.3g}, gap {report.gap:.3g}')
  return True, (
      f'unique frustration-free ground state up to 2n='
      f'{plan.frustration_two_n}')


def check_transverse_spin(plan):
  worst = 0.0
  for two_n in range(2, plan.frustration_two_n + 1, 2):
    state = MotzkinChain(two_n).build_motzkin_state()
    for site in range(1, two_n + 1):
      for axis in ('x', 'y'):
        worst = max(
            worst, abs(hamiltonian.spin_expectation(state, site, axis)))
  return worst < 1e-12, f'largest transverse expectation {worst:.3g}'


def check_conserved_charge(plan):
  worst = max(
      MotzkinChain(two_n).conserved_charge_check()
      for two_n in range(2, plan.charge_two_n + 1, 2))
  return worst < 1e-12, f'largest commutator action {worst:.3g}'


def check_local_moves(plan):
  for two_n in range(2, plan.local_moves_two_n + 1, 2):
    if not MotzkinChain(two_n).verify_local_moves():
      return False, f'a local move leaves the Motzkin walks at 2n={two_n}'
  return True, 'every local move preserves Motzkin walks'


def check_excursion_normalization(plan):
  worst = max(
      abs(correlations.excursion_normalization(lam) - 1)
      for lam in (0.1, 0.3, 0.5, 0.7, 0.9))
  return worst < 1e-10, f'largest normalization error {worst:.3g}'


def check_excursion_two_point(plan):
  details = []
  passed = True
  for lam, mu in ((0.3, 0.6), (0.25, 0.75)):
    e = ExcursionPoint(lam, mu, n=1)
    joint, _ = correlations.excursion_two_point(e)
    quadrature = correlations.excursion_joint_quadrature(e)
    norm, _ = correlations.excursion_two_point_quadrature(lam, mu)
    relative = abs(quadrature - joint) / joint
    passed = passed and relative < 1e-6 and abs(norm - 1) < 1e-8
    details.append(f'({lam}, {mu}): rel {relative:.3g}, norm {norm:.12f}')
  return passed, '; '.join(details)


def check_excursion_variance(plan):
  worst = 0.0
  for lam in (0.1, 0.25, 0.5, 0.6, 0.9):
    mean, second = correlations.excursion_moments(ExcursionPoint(lam, n=50))
    variance = correlations.excursion_variance(lam, 50)
    worst = max(worst, abs(second - mean ** 2 - variance) / variance)
  return worst < 1e-12, f'largest relative difference {worst:.3g}'


def check_mean_height_figure(plan):
  g = ChainGeometry(85, 85)
  asymptotic = correlations.expected_height_asymptotic(g)
  shifted = correlations.expected_height_exact(g) + 1
  relative = abs(shifted - asymptotic) / asymptotic
  return relative < 0.02, f'mid-chain relative difference {relative:.4f}'


def check_cut_entropy_figure(plan):
  worst = 0.0
  for n1 in range(20, 151):
    report = entanglement.cut_entropy(ChainGeometry(85, n1))
    worst = max(worst, abs(report.exact - report.asymptotic))
  return worst < 0.06, f'largest difference {worst:.4f} nats'


def check_sz_figure(plan):
  profile = correlations.sz_profile_exact(85)
  worst = max(
      abs(profile[n1 - 1] - correlations.sz_asymptotic(ChainGeometry(85, n1)))
      for n1 in range(30, 141))
  return worst < 0.01, f'largest difference {worst:.4f}'


def check_two_point_figure(plan):
  worst = 0.0
  for L in (6, 10, 20):
    g = ChainGeometry.centered(85, L)
    shifted = (correlations.two_point_height_exact(g)
        + correlations.expected_height_exact(ChainGeometry(85, g.n1))
        + correlations.expected_height_exact(ChainGeometry(85, g.n2)) + 1)
    asymptotic = correlations.two_point_height_asymptotic(85, L)
    worst = max(worst, abs(shifted - asymptotic) / asymptotic)
  szsz = abs(correlations.szsz_exact(ChainGeometry(85, 80, 90)))
  return worst < 0.03 and szsz < 0.02, (
      f'largest relative difference {worst:.4f}, |szsz| {szsz:.4g}')


def check_gap_exponent(plan):
  fit = hamiltonian.fit_gap_exponent(plan.gap_sizes)
  passed = 2.0 <= fit.exponent <= 3.8 and fit.residual < 0.5
  return passed, f'c = {fit.exponent:.4f}, residual {fit.residual:.3g}'


def suites(plan):
  """(suite, name, check) for every check the plan asks for."""
  checks = [
      ('walks', 'dyck_vs_brute_force', check_dyck_brute_force),
      ('walks', 'motzkin_vs_brute_force', check_motzkin_brute_force),
      ('walks', 'motzkin_number_identity', check_motzkin_number_identity),
      ('walks', 'trinomial_forms', check_trinomial_forms),
      ('spectra', 'cut_spectra_vs_svd', check_cut_spectra),
      ('spectra', 'block_spectra_vs_partial_trace', check_block_spectra),
      ('hamiltonian', 'dual_construction', check_dual_construction),
      ('hamiltonian', 'frustration_free', check_frustration_free),
      ('hamiltonian', 'transverse_spin_vanishes', check_transverse_spin),
      ('hamiltonian', 'conserved_charge', check_conserved_charge),
      ('hamiltonian', 'local_moves', check_local_moves),
      ('quadrature', 'excursion_normalization',
          check_excursion_normalization),
      ('quadrature', 'excursion_two_point', check_excursion_two_point),
      ('quadrature', 'excursion_variance', check_excursion_variance),
  ]
  if plan.figure_size:
    checks += [
        ('asymptotics', 'mean_height_2n_170', check_mean_height_figure),
        ('asymptotics', 'cut_entropy_2n_170', check_cut_entropy_figure),
        ('asymptotics', 'sz_profile_2n_170', check_sz_figure),
        ('asymptotics', 'two_point_2n_170', check_two_point_figure),
    ]
  if plan.gap_sizes:
    checks.append(('hamiltonian', 'gap_exponent', check_gap_exponent))
  return checks


def run_suites(logger, level):
  if level not in LEVELS:
    raise ValueError(f'Unknown validation level {level!r}.')
  plan = PLANS[level]
  records = []
  for suite, name, check in suites(plan):
    start = time.perf_counter()
    try:
      passed, detail = check(plan)
    except Exception:
      logger.error(traceback.format_exc())
      passed, detail = False, traceback.format_exc().strip().splitlines()[-1]
    record = ValidationRecord(
        suite=suite,
        name=name,
        passed=bool(passed),
        detail=detail,
        seconds=round(time.perf_counter() - start, 3))
    if record.passed:
      logger.info(f'[{suite}] {name}: ok ({detail})')
    else:
      logger.error(f'[{suite}] {name}: FAILED ({detail})')
    records.append(record)
  return records
