"""
Height and spin correlations in the Motzkin ground state.

Exact values come from walk counts. Heights at a site are distributed as
p_m = M(n1, 0, m) * M(2n - n1, m, 0) / N, and two-point functions add the
count of the walk segment between the two sites. Up to
settings.use_rationals(2n) every expectation is an exact Fraction rounded once
at the end. Beyond that it is assembled from logs of the big counts.

The asymptotic forms and the Brownian-excursion limit live here too, along
with quadrature checks of the excursion closed forms.
"""

from constants import CONNECTED_FACTOR, MAX_EXACT_TWO_N, MAX_TWO_POINT_TWO_N
from constants import SIGMA_SQUARED
from dataclasses import dataclass
from fractions import Fraction
from scipy import integrate
from settings import check_size, use_rationals
from typing import Optional

import math
import numpy as np
import walks

_QUAD_TOLERANCE = 1e-10
# Infinite integration domains are cut off at this many standard deviations.
_TAIL_WIDTH = 12


@dataclass(frozen=True)
class ChainGeometry:
  """
    Sites on a chain of 2n spins. n1 (and n2 when present) are 1-indexed; the
    height at site j is the walk height after its j-th step.
  """
  n: int
  n1: int
  n2: Optional[int] = None

  def __post_init__(self):
    if self.n < 1:
      raise ValueError(f'Half-length must be positive, got {self.n}.')
    if not 1 <= self.n1 <= 2 * self.n:
      raise ValueError(f'Site {self.n1} is not on a chain of {2 * self.n}.')
    if self.n2 is not None and not self.n1 < self.n2 <= 2 * self.n:
      raise ValueError(
          f'Need {self.n1} < n2 <= {2 * self.n}, got n2 = {self.n2}.')

  @staticmethod
  def centered(n, L):
    """A block of L sites (L even) centered on the middle of the chain."""
    n1 = n - L // 2
    return ChainGeometry(n, n1, n1 + L if L else None)

  @property
  def two_n(self):
    return 2 * self.n

  @property
  def L(self):
    return None if self.n2 is None else self.n2 - self.n1

  @property
  def b(self):
    return min(self.n1, self.two_n - self.n1)


@dataclass(frozen=True)
class HeightDistribution:
  geometry: ChainGeometry
  probabilities: tuple
  fractions: Optional[tuple] = None


@dataclass(frozen=True)
class ExcursionPoint:
  lam: float
  mu: Optional[float] = None
  n: int = 1

  def __post_init__(self):
    _check_time(self.lam)
    if self.mu is not None and not self.lam < self.mu < 1:
      raise ValueError(f'Need {self.lam} < mu < 1, got mu = {self.mu}.')
    if self.n < 1:
      raise ValueError(f'Half-length must be positive, got {self.n}.')


def _check_time(lam):
  if not 0 < lam < 1:
    raise ValueError(f'Excursion time must lie in (0, 1), got {lam}.')


def _ratio(numerator, denominator, exact):
  """numerator / denominator for big ints, as a Fraction or a float."""
  if exact:
    return Fraction(numerator, denominator)
  if numerator == 0:
    return 0.0
  sign = -1.0 if numerator < 0 else 1.0
  return sign * math.exp(math.log(abs(numerator)) - math.log(denominator))


def _cut_weights(two_n, n1):
  """Unnormalized height weights at site n1 and the Motzkin number."""
  table = walks.ground_count_table(two_n)
  left, right = table[n1], table[two_n - n1]
  b = min(n1, two_n - n1)
  return [left[m] * right[m] for m in range(b + 1)], table[two_n][0]


def height_distribution_exact(g):
  check_size('height_distribution_exact', g.two_n, MAX_EXACT_TWO_N)
  weights, total = _cut_weights(g.two_n, g.n1)
  exact = use_rationals(g.two_n)
  ratios = tuple(_ratio(w, total, exact) for w in weights)
  return HeightDistribution(
      geometry=g,
      probabilities=tuple(float(r) for r in ratios),
      fractions=ratios if exact else None)


def _height_moment(two_n, n1, k):
  if n1 in (0, two_n):
    return Fraction(0) if use_rationals(two_n) else 0.0
  weights, total = _cut_weights(two_n, n1)
  numerator = sum(m ** k * w for m, w in enumerate(weights))
  return _ratio(numerator, total, use_rationals(two_n))


def height_moment_fraction(g, k):
  """Exact k-th moment of the height at g.n1 as a Fraction, at any size."""
  check_size('height_moment_fraction', g.two_n, MAX_EXACT_TWO_N)
  weights, total = _cut_weights(g.two_n, g.n1)
  return Fraction(sum(m ** k * w for m, w in enumerate(weights)), total)


def expected_height_exact(g):
  check_size('expected_height_exact', g.two_n, MAX_EXACT_TWO_N)
  return float(_height_moment(g.two_n, g.n1, 1))


def expected_height_asymptotic(g):
  return (4 / math.sqrt(3 * math.pi)) * math.sqrt(
      g.n1 * (1 - g.n1 / g.two_n))


def expected_height_gaussian(g):
  """
    Mean height when each count is replaced by its Gaussian approximation:
    sum m^3 exp(-c m^2) / sum m^2 exp(-c m^2) with
    c = (3/4)(1/n1 + 1/(2n - n1)).
  """
  if not 1 <= g.n1 <= g.two_n - 1:
    raise ValueError(f'Site {g.n1} must be inside the chain.')
  c = 0.75 * (1 / g.n1 + 1 / (g.two_n - g.n1))
  m = np.arange(g.b + 1, dtype=float)
  weights = m ** 2 * np.exp(-c * m ** 2)
  return math.fsum(m * weights) / math.fsum(weights)


def sz_profile_exact(n):
  """
    <s^z> at sites 1..2n, as consecutive differences of the mean height with
    the height before site 1 taken to be 0. Index 0 of the result is site 1.
  """
  two_n = 2 * n
  check_size('sz_profile_exact', two_n, MAX_EXACT_TWO_N)
  means = [_height_moment(two_n, n1, 1) for n1 in range(two_n + 1)]
  return [float(means[j] - means[j - 1]) for j in range(1, two_n + 1)]


def sz_asymptotic(g):
  if not 1 <= g.n1 <= g.two_n - 1:
    raise ValueError(f'Site {g.n1} must be inside the chain.')
  return ((2 / math.sqrt(3 * math.pi)) * (1 - g.n1 / g.n)
      / math.sqrt(g.n1 * (1 - g.n1 / g.two_n)))


def height_product_moment(two_n, n1, n2):
  """
    <m_{n1} m_{n2}> for 0 <= n1 <= n2 <= 2n, as a Fraction when rationals are
    in use and a float otherwise. Site 0 has height 0.

    The segment between the sites contributes M(n2 - n1, m, m + p) for every
    start height m and change p that keep both heights reachable from the
    chain ends.
  """
  if not 0 <= n1 <= n2 <= two_n:
    raise ValueError(f'Need 0 <= {n1} <= {n2} <= {two_n}.')
  table = walks.ground_count_table(two_n)
  left, right = table[n1], table[two_n - n2]
  length = n2 - n1
  numerator = 0
  denominator = 0
  for m, left_count in enumerate(left):
    if not left_count:
      continue
    row = walks.motzkin_row(length, m)
    for end in range(max(0, m - length), min(len(row), len(right))):
      weight = left_count * row[end] * right[end]
      numerator += m * end * weight
      denominator += weight
  return _ratio(numerator, denominator, use_rationals(two_n))


def two_point_height_exact(g):
  if g.n2 is None:
    raise ValueError('Two-point functions need a second site.')
  check_size('two_point_height_exact', g.two_n, MAX_TWO_POINT_TWO_N)
  return float(height_product_moment(g.two_n, g.n1, g.n2))


def two_point_height_asymptotic(n, L):
  return n - L / 3 + L ** 2 / (4 * n)


def connected_two_point_asymptotic(n):
  return n * CONNECTED_FACTOR


def szsz_exact(g):
  """
    <s^z_{n1} s^z_{n2}> exactly, as the backward mixed difference of the
    height product moments f(a, b) = <m_a m_b>:

      f(n1, n2) - f(n1 - 1, n2) - f(n1, n2 - 1) + f(n1 - 1, n2 - 1)

    since s^z_j = m_j - m_{j-1}.
  """
  if g.n2 is None:
    raise ValueError('Two-point functions need a second site.')
  check_size('szsz_exact', g.two_n, MAX_TWO_POINT_TWO_N)
  f = lambda a, b: height_product_moment(g.two_n, a, b)
  return float(f(g.n1, g.n2) - f(g.n1 - 1, g.n2) - f(g.n1, g.n2 - 1)
      + f(g.n1 - 1, g.n2 - 1))


def szsz_centered_difference(g):
  """
    (1/4)[f(n1+1, n2+1) - f(n1+1, n2-1) - f(n1-1, n2+1) + f(n1-1, n2-1)],
    the centered difference of f(a, b) = <m_a m_b>. It estimates
    <(s_{n1} + s_{n1+1})(s_{n2} + s_{n2+1})> / 4 and needs the sites kept
    away from each other and from the right end.
  """
  if g.n2 is None:
    raise ValueError('Two-point functions need a second site.')
  if not (2 <= g.n1 + 1 < g.n2 - 1 and g.n2 + 1 <= g.two_n):
    raise ValueError(
        f'Sites {g.n1}, {g.n2} are too close to each other or to an end.')
  check_size('szsz_centered_difference', g.two_n, MAX_TWO_POINT_TWO_N)
  f = lambda a, b: height_product_moment(g.two_n, a, b)
  n1, n2 = g.n1, g.n2
  return float(f(n1 + 1, n2 + 1) - f(n1 + 1, n2 - 1) - f(n1 - 1, n2 + 1)
      + f(n1 - 1, n2 - 1)) / 4


def excursion_density(lam, x):
  """Density of a standard Brownian excursion's height at time lam."""
  _check_time(lam)
  if x < 0:
    return 0.0
  s = lam * (1 - lam)
  return 2 * x ** 2 * math.exp(-x ** 2 / (2 * s)) / math.sqrt(
      2 * math.pi * s ** 3)


def excursion_moments(e):
  """Mean and second moment of the height at site 2 lam n, in lattice units."""
  if e.mu is not None:
    raise ValueError('One-point moments take a single time.')
  s = e.lam * (1 - e.lam)
  mean = 4 * math.sqrt(e.n) * math.sqrt(2 * s / (3 * math.pi))
  return mean, 4 * e.n * s


def excursion_variance(lam, n):
  return n * 4 * lam * (1 - lam) * CONNECTED_FACTOR


def excursion_two_point(e):
  """
    Returns (E[m_{2 lam n} m_{2 mu n}], E[m_{2 lam n}] E[m_{2 mu n}]) in the
    excursion limit.
  """
  if e.mu is None:
    raise ValueError('Two-point moments need a second time.')
  lam, mu, n = e.lam, e.mu, e.n
  scale = 4 * n * SIGMA_SQUARED / math.pi
  joint = scale * (
      3 * math.sqrt(lam * (1 - mu) * (mu - lam))
      + (lam * (2 - 3 * mu) + mu)
          * math.atan(math.sqrt(lam * (1 - mu) / (mu - lam))))
  product = (16 * n * SIGMA_SQUARED / math.pi) * math.sqrt(
      lam * mu * (1 - mu) * (1 - lam))
  return joint, product


def excursion_connected(e):
  joint, product = excursion_two_point(e)
  return joint - product


def _first_passage(t, x):
  return x * math.exp(-x ** 2 / (2 * t)) / (math.sqrt(2 * math.pi) * t ** 1.5)


def _killed_transition(dt, x1, x2):
  return (math.exp(-(x1 - x2) ** 2 / (2 * dt))
      - math.exp(-(x1 + x2) ** 2 / (2 * dt))) / math.sqrt(2 * math.pi * dt)


def excursion_two_point_density(lam, mu, x1, x2):
  _check_time(lam)
  if not lam < mu < 1:
    raise ValueError(f'Need {lam} < mu < 1, got mu = {mu}.')
  if x1 < 0 or x2 < 0:
    return 0.0
  return (2 * math.sqrt(2 * math.pi) * _first_passage(lam, x1)
      * _killed_transition(mu - lam, x1, x2) * _first_passage(1 - mu, x2))


def _cutoff(lam):
  return _TAIL_WIDTH * math.sqrt(lam * (1 - lam))


def excursion_normalization(lam):
  value, _ = integrate.quad(
      lambda x: excursion_density(lam, x), 0, _cutoff(lam),
      epsabs=_QUAD_TOLERANCE, epsrel=_QUAD_TOLERANCE, limit=200)
  return value


def excursion_moment_quadrature(lam, k):
  """The k-th moment of the excursion height density at lam, by quadrature."""
  value, _ = integrate.quad(
      lambda x: x ** k * excursion_density(lam, x), 0, _cutoff(lam),
      epsabs=_QUAD_TOLERANCE, epsrel=_QUAD_TOLERANCE, limit=200)
  return value


def excursion_two_point_quadrature(lam, mu):
  """
    Returns (normalization, E[x1 x2]) of the two-time excursion density,
    both by adaptive double quadrature.
  """
  density = lambda x2, x1: excursion_two_point_density(lam, mu, x1, x2)
  first, second = _cutoff(lam), _cutoff(mu)
  norm, _ = integrate.dblquad(
      density, 0, first, 0, second,
      epsabs=_QUAD_TOLERANCE, epsrel=_QUAD_TOLERANCE)
  moment, _ = integrate.dblquad(
      lambda x2, x1: x1 * x2 * density(x2, x1), 0, first, 0, second,
      epsabs=_QUAD_TOLERANCE, epsrel=_QUAD_TOLERANCE)
  return norm, moment


def excursion_joint_quadrature(e):
  """E[m_{2 lam n} m_{2 mu n}] from the density, in lattice units."""
  if e.mu is None:
    raise ValueError('Two-point moments need a second time.')
  _, moment = excursion_two_point_quadrature(e.lam, e.mu)
  return 2 * e.n * SIGMA_SQUARED * moment
