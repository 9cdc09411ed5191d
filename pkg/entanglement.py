"""
Schmidt spectra and entanglement entropies of the Motzkin state.

A cut at site n1 has Schmidt weights equal to the height distribution there.
A block of L sites in the bulk has, to leading order, Gaussian weights in the
net height change p across the block. For a finite chain the block's exact
reduced density matrix is built from walk counts as well (see
block_spectrum_exact). All entropies are in nats; EntropyReport converts to
bits.
"""

from constants import EULER_GAMMA, MAX_EXACT_TWO_N, MAX_TWO_POINT_TWO_N
from constants import NUMERICAL_ZERO
from correlations import ChainGeometry, height_distribution_exact
from dataclasses import dataclass
from scipy.special import gammaln
from settings import check_size
from typing import Optional

import math
import numpy as np
import scipy.linalg
import walks

_LOG2 = math.log(2)


@dataclass(frozen=True)
class Spectrum:
  """Schmidt weights and the label (height m or change p) of each."""
  labels: tuple
  weights: tuple

  def __post_init__(self):
    if len(self.labels) != len(self.weights):
      raise ValueError('Every weight needs exactly one label.')
    if any(w < 0 for w in self.weights):
      raise ValueError('Schmidt weights cannot be negative.')

  @property
  def rank(self):
    return len(self.weights)


@dataclass(frozen=True)
class EntropyReport:
  exact: float
  asymptotic: float
  rank: int
  corrected: Optional[float] = None

  @property
  def exact_bits(self):
    return self.exact / _LOG2

  @property
  def asymptotic_bits(self):
    return self.asymptotic / _LOG2


def von_neumann(weights):
  return -math.fsum(w * math.log(w) for w in weights if w > 0)


def renyi(weights, kappa):
  """ln(sum w^kappa) / (1 - kappa); kappa = 1 is the von Neumann entropy."""
  if kappa <= 0:
    raise ValueError(f'Renyi index must be positive, got {kappa}.')
  if kappa == 1:
    return von_neumann(weights)
  return math.log(math.fsum(w ** kappa for w in weights if w > 0)) / (
      1 - kappa)


def _check_bulk(g):
  if not 1 <= g.n1 <= g.two_n - 1:
    raise ValueError(f'Cut after site {g.n1} does not split the chain.')


def cut_spectrum(g):
  _check_bulk(g)
  check_size('cut_spectrum', g.two_n, MAX_EXACT_TWO_N)
  distribution = height_distribution_exact(g)
  return Spectrum(
      labels=tuple(range(len(distribution.probabilities))),
      weights=distribution.probabilities)


def _cut_scale(g):
  return 0.5 * math.log(g.n1 * (g.two_n - g.n1) / g.n)


def cut_entropy(g):
  spectrum = cut_spectrum(g)
  asymptotic = (_cut_scale(g) + EULER_GAMMA - 0.5
      + 0.5 * math.log(2 * math.pi / 3))
  return EntropyReport(
      exact=von_neumann(spectrum.weights),
      asymptotic=asymptotic,
      rank=spectrum.rank)


def cut_renyi_offset(kappa):
  """The size-independent part of the Renyi entropy of a cut."""
  return (gammaln(kappa + 0.5) / (1 - kappa)
      - ((1 + 2 * kappa) * math.log(kappa) + kappa * math.log(math.pi / 24)
          + math.log(6)) / (2 * (1 - kappa)))


def cut_renyi(g, kappa):
  if kappa <= 0:
    raise ValueError(f'Renyi index must be positive, got {kappa}.')
  if kappa == 1:
    return cut_entropy(g)
  spectrum = cut_spectrum(g)
  return EntropyReport(
      exact=renyi(spectrum.weights, kappa),
      asymptotic=_cut_scale(g) + cut_renyi_offset(kappa),
      rank=spectrum.rank)


def block_spectrum(L):
  if L < 1:
    raise ValueError(f'Block length must be positive, got {L}.')
  p = np.arange(-L, L + 1)
  boltzmann = np.exp(-0.75 * p ** 2 / L)
  weights = boltzmann / math.fsum(boltzmann)
  return Spectrum(labels=tuple(p.tolist()), weights=tuple(weights.tolist()))


def block_entropy_asymptotic(L, b=None):
  """
    Leading block entropy 0.5 ln L + ln(2 sqrt(pi/3)) + 1/2. With a boundary
    distance b the finite-chain corrections -(3/4)(L/b) - (9/16)(L/b)^2 are
    added.
  """
  value = 0.5 * math.log(L) + math.log(2 * math.sqrt(math.pi / 3)) + 0.5
  if b is not None:
    ratio = L / b
    value -= 0.75 * ratio + (9 / 16) * ratio ** 2
  return value


def block_entropy(L, b=None):
  spectrum = block_spectrum(L)
  return EntropyReport(
      exact=von_neumann(spectrum.weights),
      asymptotic=block_entropy_asymptotic(L),
      rank=spectrum.rank,
      corrected=None if b is None else block_entropy_asymptotic(L, b))


def block_renyi_offset(kappa):
  return math.log(2 * math.sqrt(math.pi / 3)) - math.log(kappa) / (
      2 * (1 - kappa))


def block_renyi(L, kappa):
  if kappa <= 0:
    raise ValueError(f'Renyi index must be positive, got {kappa}.')
  if kappa == 1:
    return block_entropy(L)
  spectrum = block_spectrum(L)
  return EntropyReport(
      exact=renyi(spectrum.weights, kappa),
      asymptotic=0.5 * math.log(L) + block_renyi_offset(kappa),
      rank=spectrum.rank)


def entanglement_hamiltonian_cut(g):
  """(m, E_m) for m = 1..b; the m = 0 level has zero Gaussian weight."""
  _check_bulk(g)
  check_size('entanglement_hamiltonian_cut', g.two_n, MAX_EXACT_TWO_N)
  c = 0.75 * (1 / g.n1 + 1 / (g.two_n - g.n1))
  return [(m, c * m ** 2 - 2 * math.log(m)) for m in range(1, g.b + 1)]


def entanglement_hamiltonian_cut_exact(g):
  """(m, -ln p_m) for m = 0..b, straight from the walk counts."""
  _check_bulk(g)
  check_size('entanglement_hamiltonian_cut_exact', g.two_n, MAX_EXACT_TWO_N)
  table = walks.ground_count_table(g.two_n)
  left, right = table[g.n1], table[g.two_n - g.n1]
  log_total = math.log(table[g.two_n][0])
  return [
      (m, log_total - math.log(left[m]) - math.log(right[m]))
      for m in range(g.b + 1)]


def entanglement_hamiltonian_block(L):
  if L < 1:
    raise ValueError(f'Block length must be positive, got {L}.')
  return [(p, 0.75 * p ** 2 / L) for p in range(-L, L + 1)]


def _depth_classes(L, p):
  """
    Depths d (how far the block's walk segment dips below its start) that
    occur for net change p, with the number of segments of each depth.
  """
  classes = []
  for d in range(max(0, -p), L + 1):
    size = walks.count_or_zero(L, d, d + p) - walks.count_or_zero(
        L, d - 1, d - 1 + p)
    if size > 0:
      classes.append((d, size))
  return classes


def block_spectrum_exact(g):
  """
    Exact Schmidt weights of the block of sites n1 + 1..n2 in a chain of 2n.

    The reduced density matrix splits into sectors by the net height change p
    across the block. Inside a sector, block configurations that dip to the
    same depth d are interchangeable, so each sector reduces to a small matrix
    over depth classes: entry (d, d') is sqrt(S_d S_d') times the fraction of
    chains whose height at n1 is at least max(d, d'), S_d being the number of
    segments with depth d.
  """
  if g.n2 is None:
    raise ValueError('A block needs two sites.')
  check_size('block_spectrum_exact', g.two_n, MAX_TWO_POINT_TWO_N)
  L = g.L
  table = walks.ground_count_table(g.two_n)
  left, right = table[g.n1], table[g.two_n - g.n2]
  total = table[g.two_n][0]
  labels, weights = [], []
  for p in range(-L, L + 1):
    classes = _depth_classes(L, p)
    if not classes:
      continue
    # tails[m] = sum over heights h >= m at n1 of left[h] * right[h + p].
    tails = [0] * (len(left) + 1)
    for h in range(len(left) - 1, -1, -1):
      end = h + p
      pair = left[h] * right[end] if 0 <= end < len(right) else 0
      tails[h] = tails[h + 1] + pair
    size = len(classes)
    rho = np.zeros((size, size))
    for i, (d, s) in enumerate(classes):
      for j, (e, t) in enumerate(classes):
        tail = tails[min(max(d, e), len(left))]
        if tail:
          rho[i, j] = math.sqrt(s) * math.sqrt(t) * math.exp(
              math.log(tail) - math.log(total))
    for value in scipy.linalg.eigvalsh(rho):
      if value > NUMERICAL_ZERO:
        labels.append(p)
        weights.append(float(value))
  return Spectrum(labels=tuple(labels), weights=tuple(weights))


def block_entropy_exact(g):
  spectrum = block_spectrum_exact(g)
  b = min(g.n1, g.two_n - g.n2)
  return EntropyReport(
      exact=von_neumann(spectrum.weights),
      asymptotic=block_entropy_asymptotic(g.L),
      rank=spectrum.rank,
      corrected=block_entropy_asymptotic(g.L, b) if b else None)
