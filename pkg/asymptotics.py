"""
Gaussian and saddle-point approximations to the exact walk counts.

Every approximation to a count is returned as its natural log, so the 3^L
prefactors never overflow.
"""

from dataclasses import dataclass
from scipy.special import gammaln
from walks import multinomial

import math
import numpy as np

_LOG3 = math.log(3)


@dataclass(frozen=True)
class TrinomialPoint:
  """A trinomial (L; L/3 + x, L/3 + y, L/3 + z) near its center."""
  total: int
  x: float
  y: float
  z: float

  def __post_init__(self):
    if abs(self.x + self.y + self.z) > 1e-12:
      raise ValueError(
          f'Deviations must sum to zero, got {self.x}, {self.y}, {self.z}.')


def log_count(value):
  """Natural log of a non-negative big integer, -inf for 0."""
  if value < 0:
    raise ValueError(f'Counts are non-negative, got {value}.')
  return math.log(value) if value else -math.inf


def trinomial_gaussian(p):
  if p.total <= 0:
    raise ValueError(f'Trinomial needs a positive total, got {p.total}.')
  L = p.total
  spread = p.x ** 2 + p.y ** 2 + p.z ** 2
  return ((L + 1) * _LOG3 + 0.5 * _LOG3 - math.log(2 * math.pi * L)
      - 1.5 * spread / L)


def m_count_asymptotic(L, m):
  """
    log of 3^(L + 3/2) * alpha * exp(-3 alpha^2 / 4) / (2 sqrt(pi) L), with
    alpha = m / sqrt(L), approximating the number of walks from height 0 to m.

    The approximation vanishes at m = 0 (exact counts do not), which is
    reported as -inf.
  """
  if L < 1:
    raise ValueError(f'L must be positive, got {L}.')
  if m == 0:
    return -math.inf
  alpha = m / math.sqrt(L)
  return ((L + 1.5) * _LOG3 - math.log(2 * math.sqrt(math.pi) * L)
      + math.log(alpha) - 0.75 * alpha ** 2)


def block_count_asymptotic(L, p):
  """
    log of 3^(L + 1/2) / (2 sqrt(pi L)) * exp(-3 p^2 / (4 L)), the number of
    walks across a block far from both ends of the chain with net change p.
  """
  if abs(p) > L:
    raise ValueError(f'Net change {p} is out of reach in {L} steps.')
  return ((L + 0.5) * _LOG3 - math.log(2 * math.sqrt(math.pi * L))
      - 0.75 * p ** 2 / L)


def motzkin_summand(L, m, i):
  """(m + 1) * (L; i + m + 1, i, L - 2i - m), where the saddle sits."""
  return (m + 1) * multinomial((i + m + 1, i, L - 2 * i - m))


def saddle_index(L, m):
  if m > L:
    raise ValueError(f'Height {m} is out of reach in {L} steps.')
  return L / 3 - m / 2 + m ** 2 / (8 * L) + 3 * m ** 4 / (128 * L ** 3)


def saddle_index_exact(L, m):
  """The index i at which motzkin_summand(L, m, i) is largest."""
  candidates = range((L - m) // 2 + 1)
  return max(candidates, key=lambda i: motzkin_summand(L, m, i))


def gaussian_moment_sum(L, g, a):
  """
    Returns (sum, integral) for the m^g exp(-a m^2 / L) weight: the direct sum
    over m = 0..L and its closed-form integral over [0, inf).

    Parameters
    ----------
    L : int
      Sites on the shorter side of the cut; also the upper summation limit.
    g : int
      Power of m, at least 1.
    a : float
      Positive Gaussian coefficient.
  """
  if g < 1:
    raise ValueError(f'g must be at least 1, got {g}.')
  if a <= 0:
    raise ValueError(f'a must be positive, got {a}.')
  m = np.arange(L + 1, dtype=float)
  total = math.fsum(m ** g * np.exp(-a * m ** 2 / L))
  half = (g + 1) / 2
  integral = 0.5 * math.exp(gammaln(half) + half * math.log(L / a))
  return total, integral
