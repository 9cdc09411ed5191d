"""
The spin-1 Motzkin Hamiltonian and its ground state on small chains.

Basis states of a chain of 2n spins are base-3 strings with site 1 as the
most significant digit and digits u=0, 0=1, d=2. H is the sum of a projector
on every bond and a boundary term that penalizes a leading d and a trailing
u. It is built twice, from ket-level projectors and from spin operators, and
the linear algebra here is the independent check on the walk counting done
elsewhere in the package.
"""

from constants import DOWN, FLAT, MAX_DENSE_TWO_N, MAX_FRUSTRATION_TWO_N
from constants import MAX_REDUCED_SITES, MAX_STATE_TWO_N, NUMERICAL_ZERO
from constants import RANK_TOLERANCE, STEP_OF_DIGIT, UP
from dataclasses import dataclass
from errors import ConvergenceError
from functools import lru_cache
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh
from settings import check_size
from typing import Optional
from walks import WalkEndpoints

import itertools
import logging
import math
import numpy as np
import scipy.linalg
import scipy.sparse
import walks

_ROOT2 = math.sqrt(2)

SZ = np.diag([1.0, 0.0, -1.0])
SPLUS = np.array([[0, _ROOT2, 0], [0, 0, _ROOT2], [0, 0, 0]])
SMINUS = SPLUS.T.copy()
SX = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / _ROOT2
SY = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / _ROOT2
IDENTITY = np.eye(3)

_AXES = {'x': SX, 'y': SY, 'z': SZ}

# Pairs of adjacent steps that the bond projectors mix: 0d<->d0, 0u<->u0 and
# 00<->ud.
LOCAL_MOVES = (((0, -1), (-1, 0)), ((0, 1), (1, 0)), ((0, 0), (1, -1)))

# Eigensolves ask ARPACK for this much more accuracy than the 1e-8 relative
# accuracy promised for the gap.
_EIGSH_TOLERANCE = 1e-10

# Up to this length the gap eigensolve multiplies with the assembled sparse
# H; longer chains apply H bond by bond so H is never stored.
_SPARSE_GAP_TWO_N = 12

GAP_SOLVERS = ('auto', 'dense', 'lanczos')


def _ket(*pairs):
  """Two-site vector sum(c |a b>) from (c, a, b) triples, index 3a + b."""
  v = np.zeros(9)
  for c, a, b in pairs:
    v[3 * a + b] += c
  return v


def local_kets():
  """The three orthonormal vectors whose projectors make up a bond term."""
  r = 1 / _ROOT2
  return (
      _ket((r, FLAT, DOWN), (-r, DOWN, FLAT)),
      _ket((r, FLAT, UP), (-r, UP, FLAT)),
      _ket((r, FLAT, FLAT), (-r, UP, DOWN)))


def bond_projector_kets():
  return sum(np.outer(v, v) for v in local_kets())


def bond_projector_spins():
  """
    The same 9x9 bond term written with s^z and the ladder operators. The
    single-site pieces are

      |u><u| = (1 + s^z) s^z / 2      |0><u| = S- (1 + s^z) s^z / (2 sqrt 2)
      |0><0| = 1 - (s^z)^2            |u><0| = s^z (1 + s^z) S+ / (2 sqrt 2)
      |d><d| = (s^z - 1) s^z / 2      |0><d| = S+ (s^z - 1) s^z / (2 sqrt 2)
                                      |d><0| = s^z (s^z - 1) S- / (2 sqrt 2)
  """
  c = 1 / (2 * _ROOT2)
  p_up = 0.5 * (IDENTITY + SZ) @ SZ
  p_flat = IDENTITY - SZ @ SZ
  p_down = 0.5 * (SZ - IDENTITY) @ SZ
  flat_from_up = c * SMINUS @ (IDENTITY + SZ) @ SZ
  up_from_flat = c * SZ @ (IDENTITY + SZ) @ SPLUS
  flat_from_down = c * SPLUS @ (SZ - IDENTITY) @ SZ
  down_from_flat = c * SZ @ (SZ - IDENTITY) @ SMINUS
  diagonal = (np.kron(p_flat, IDENTITY) + np.kron(p_up, p_flat + p_down)
      + np.kron(p_down, p_flat))
  hopping = (np.kron(up_from_flat, flat_from_up)
      + np.kron(down_from_flat, flat_from_down)
      + np.kron(up_from_flat, down_from_flat))
  return 0.5 * diagonal - 0.5 * (hopping + hopping.T)


def boundary_site_terms():
  """(first-site term, last-site term) of the boundary: |d><d| and |u><u|."""
  return 0.5 * (SZ - IDENTITY) @ SZ, 0.5 * (IDENTITY + SZ) @ SZ


@lru_cache(maxsize=2)
def site_steps(two_n):
  """Array of shape (2n, 3^2n): the step (+1, 0, -1) of every site."""
  digits = np.array(np.unravel_index(np.arange(3 ** two_n), (3,) * two_n))
  steps = np.asarray(STEP_OF_DIGIT)[digits]
  steps.setflags(write=False)
  return steps


def _check_chain(two_n):
  if two_n < 2 or two_n % 2:
    raise ValueError(f'Chain length must be even and positive, got {two_n}.')


@dataclass(frozen=True)
class StateVector:
  two_n: int
  amplitudes: np.ndarray

  def __post_init__(self):
    _check_chain(self.two_n)
    if self.amplitudes.shape != (3 ** self.two_n,):
      raise ValueError(
          f'Expected {3 ** self.two_n} amplitudes, got '
          f'{self.amplitudes.shape}.')
    norm = np.linalg.norm(self.amplitudes)
    if abs(norm - 1) > 1e-12:
      raise ValueError(f'State must have unit norm, got {norm}.')

  def tensor(self):
    return self.amplitudes.reshape((3,) * self.two_n)


@dataclass(frozen=True)
class FrustrationReport:
  two_n: int
  bond_residuals: tuple
  boundary_residual: float
  gap: float
  tolerance: float = 1e-12

  @property
  def frustration_free(self):
    return (max(self.bond_residuals) < self.tolerance
        and self.boundary_residual < self.tolerance)

  @property
  def unique(self):
    return self.gap > RANK_TOLERANCE

  @property
  def passed(self):
    return self.frustration_free and self.unique


@dataclass(frozen=True)
class SectorSpectrum:
  """Eigenpairs of H restricted to basis states with total s^z = charge."""
  charge: int
  indices: np.ndarray
  energies: np.ndarray
  vectors: np.ndarray


@dataclass(frozen=True)
class GapFit:
  sizes: tuple
  gaps: tuple
  exponent: float
  amplitude: float
  residual: float

  def __post_init__(self):
    if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
      raise ValueError(f'Sizes must increase strictly, got {self.sizes}.')
    if any(gap <= 0 for gap in self.gaps):
      raise ValueError(f'Gaps must be positive, got {self.gaps}.')

  def predict(self, two_n):
    """A * n^-c at half-length n = two_n / 2."""
    return self.amplitude * (two_n / 2) ** -self.exponent


class MotzkinChain:
  """The Motzkin Hamiltonian on 2n sites, with its ground state."""

  def __init__(self, two_n: int, logger: Optional[logging.Logger] = None):
    _check_chain(two_n)
    self.two_n = two_n
    self.dimension = 3 ** two_n
    self.logger = logger or logging.getLogger(__name__)
    self._hamiltonian = None
    self._state = None
    self._sectors = None

  def _embed(self, local, site):
    """Sparse kron placing a 3^w x 3^w operator on sites site..site+w-1."""
    width = round(math.log(local.shape[0], 3))
    left = scipy.sparse.identity(3 ** (site - 1), format='csr')
    right = scipy.sparse.identity(
        3 ** (self.two_n - site - width + 1), format='csr')
    return scipy.sparse.kron(
        scipy.sparse.kron(left, scipy.sparse.csr_matrix(local)), right,
        format='csr')

  def _check_bond(self, j):
    if not 1 <= j <= self.two_n - 1:
      raise ValueError(f'Bond {j} is not on a chain of {self.two_n}.')

  def bond_projector(self, j):
    """Pi_{j,j+1} on the full chain, from the ket construction."""
    self._check_bond(j)
    return self._embed(bond_projector_kets(), j)

  def boundary_projector(self):
    first, last = boundary_site_terms()
    return self._embed(first, 1) + self._embed(last, self.two_n)

  def _assemble(self, bond_term, boundary_terms):
    check_size('build_hamiltonian', self.two_n, MAX_STATE_TWO_N)
    first, last = boundary_terms
    h = self._embed(first, 1) + self._embed(last, self.two_n)
    for j in range(1, self.two_n):
      h = h + self._embed(bond_term, j)
    h.eliminate_zeros()
    return h.tocsr()

  def build_hamiltonian(self):
    if self._hamiltonian is None:
      self.logger.info(
          f'Assembling H for 2n={self.two_n} ({self.dimension} states).')
      first = np.diag([0.0, 0.0, 1.0])
      last = np.diag([1.0, 0.0, 0.0])
      self._hamiltonian = self._assemble(bond_projector_kets(), (first, last))
      self.logger.info(f'H has {self._hamiltonian.nnz} nonzeros.')
    return self._hamiltonian

  def build_hamiltonian_from_spin_operators(self):
    return self._assemble(bond_projector_spins(), boundary_site_terms())

  def apply_hamiltonian(self, v):
    """H v without building H, one 9x9 matmul per bond."""
    v = np.asarray(v, dtype=float).reshape(self.dimension)
    out = np.zeros_like(v)
    bond = bond_projector_kets()
    for j in range(1, self.two_n):
      shape = (3 ** (j - 1), 9, 3 ** (self.two_n - j - 1))
      out += np.matmul(bond, v.reshape(shape)).reshape(self.dimension)
    head = out.reshape(3, -1)
    head[DOWN] += v.reshape(3, -1)[DOWN]
    tail = out.reshape(-1, 3)
    tail[:, UP] += v.reshape(-1, 3)[:, UP]
    return out

  def hamiltonian_operator(self):
    return LinearOperator(
        (self.dimension, self.dimension), matvec=self.apply_hamiltonian,
        dtype=np.float64)

  def build_motzkin_state(self):
    """The uniform superposition of all Motzkin walks of length 2n."""
    check_size('build_motzkin_state', self.two_n, MAX_STATE_TWO_N)
    if self._state is None:
      steps = np.array(
          list(walks.iter_walks(WalkEndpoints(self.two_n, 0, 0), True)),
          dtype=np.int64)
      count = walks.motzkin_number(self.two_n)
      if len(steps) != count:
        raise RuntimeError(
            f'Enumerated {len(steps)} walks, expected {count}.')
      powers = 3 ** np.arange(self.two_n - 1, -1, -1, dtype=np.int64)
      amplitudes = np.zeros(self.dimension)
      amplitudes[(1 - steps) @ powers] = 1 / math.sqrt(count)
      self._state = StateVector(self.two_n, amplitudes)
    return self._state

  def local_residuals(self, state):
    """(norms of Pi_{j,j+1} psi for every bond, norm of Pi_boundary psi)."""
    psi = state.amplitudes
    bond = bond_projector_kets()
    residuals = []
    for j in range(1, self.two_n):
      shape = (3 ** (j - 1), 9, 3 ** (self.two_n - j - 1))
      residuals.append(
          float(np.linalg.norm(np.matmul(bond, psi.reshape(shape)))))
    boundary = math.hypot(
        np.linalg.norm(psi.reshape(3, -1)[DOWN]),
        np.linalg.norm(psi.reshape(-1, 3)[:, UP]))
    return tuple(residuals), boundary

  def verify_frustration_free(self, state=None):
    check_size('verify_frustration_free', self.two_n, MAX_FRUSTRATION_TWO_N)
    if state is None:
      state = self.build_motzkin_state()
    bonds, boundary = self.local_residuals(state)
    report = FrustrationReport(
        two_n=self.two_n,
        bond_residuals=bonds,
        boundary_residual=boundary,
        gap=self.spectral_gap())
    self.logger.info(
        f'2n={self.two_n}: worst bond residual {max(bonds):.3g}, boundary '
        f'{boundary:.3g}, gap {report.gap:.6g}.')
    return report

  def spectral_gap(self, solver='auto'):
    """
      The second-smallest eigenvalue of H.

      Parameters
      ----------
      solver: str
        'dense' takes the second level of the sector-by-sector spectrum
        (2n <= 8). 'lanczos' lifts the exactly known ground state |M> out of
        the way by adding 2n |M><M| and asks eigsh for the smallest
        eigenvalue of what remains. 'auto' picks dense whenever the chain is
        small enough for it.
    """
    if solver not in GAP_SOLVERS:
      raise ValueError(f'Unknown gap solver {solver!r}.')
    check_size('spectral_gap', self.two_n, MAX_STATE_TWO_N)
    if solver == 'dense' or (
        solver == 'auto' and self.two_n <= MAX_DENSE_TWO_N):
      return float(self.dense_spectrum()[1])
    ground = self.build_motzkin_state().amplitudes
    shift = float(self.two_n)
    if self.two_n <= _SPARSE_GAP_TWO_N:
      apply = self.build_hamiltonian().dot
    else:
      apply = self.apply_hamiltonian
    matvecs = 0

    def deflated(v):
      nonlocal matvecs
      matvecs += 1
      v = np.ravel(v)
      return apply(v) + shift * ground * (ground @ v)

    operator = LinearOperator(
        (self.dimension, self.dimension), matvec=deflated, dtype=np.float64)
    start = np.random.default_rng(self.two_n).uniform(-1, 1, self.dimension)
    try:
      values = eigsh(
          operator, k=1, which='SA', tol=_EIGSH_TOLERANCE, v0=start,
          return_eigenvectors=False)
    except ArpackNoConvergence:
      raise ConvergenceError(
          f'Gap eigensolve for 2n={self.two_n} did not converge', matvecs)
    self.logger.info(
        f'Gap for 2n={self.two_n}: {values[0]:.10g} after {matvecs} '
        f'matrix-vector products.')
    return float(values[0])

  def verify_local_moves(self):
    """True when every local move keeps every Motzkin walk a Motzkin walk."""
    check_size('verify_local_moves', self.two_n, MAX_DENSE_TWO_N)
    moves = {}
    for a, b in LOCAL_MOVES:
      moves[a] = b
      moves[b] = a
    for path in walks.iter_walks(WalkEndpoints(self.two_n, 0, 0), True):
      for j in range(self.two_n - 1):
        pair = path[j:j + 2]
        if pair not in moves:
          continue
        moved = path[:j] + moves[pair] + path[j + 2:]
        heights = list(itertools.accumulate(moved))
        if min(heights) < 0 or heights[-1] != 0:
          self.logger.warning(f'Move at bond {j + 1} breaks {path}.')
          return False
    return True

  def magnetization_sectors(self):
    """{total s^z: basis indices}; H never connects two different sectors."""
    charge = site_steps(self.two_n).sum(axis=0)
    return {
        int(q): np.flatnonzero(charge == q)
        for q in range(-self.two_n, self.two_n + 1)}

  def sector_spectrum(self):
    check_size('sector_spectrum', self.two_n, MAX_DENSE_TWO_N)
    if self._sectors is None:
      h = self.build_hamiltonian()
      sectors = []
      for charge, indices in self.magnetization_sectors().items():
        block = h[indices][:, indices].toarray()
        energies, vectors = scipy.linalg.eigh(block)
        sectors.append(SectorSpectrum(charge, indices, energies, vectors))
      self.logger.info(
          f'Diagonalized {len(sectors)} sectors for 2n={self.two_n}.')
      self._sectors = sectors
    return self._sectors

  def dense_spectrum(self):
    energies = [s.energies for s in self.sector_spectrum()]
    return np.sort(np.concatenate(energies))

  def _thermal_average(self, diagonal, beta):
    """Tr(D exp(-beta H)) / Z for an operator D diagonal in the basis."""
    if beta < 0:
      raise ValueError(f'Inverse temperature must be non-negative: {beta}.')
    sectors = self.sector_spectrum()
    lowest = min(s.energies[0] for s in sectors)
    numerator = []
    denominator = []
    for s in sectors:
      weights = np.exp(-beta * (s.energies - lowest))
      expectations = diagonal[s.indices] @ s.vectors ** 2
      numerator.append(weights @ expectations)
      denominator.append(weights.sum())
    return math.fsum(numerator) / math.fsum(denominator)

  def partition_function(self, beta):
    if beta < 0:
      raise ValueError(f'Inverse temperature must be non-negative: {beta}.')
    return math.fsum(
        np.exp(-beta * self.dense_spectrum()).tolist())

  def _check_site(self, site):
    if not 1 <= site <= self.two_n:
      raise ValueError(f'Site {site} is not on a chain of {self.two_n}.')

  def thermal_magnetization(self, n1, beta):
    self._check_site(n1)
    steps = site_steps(self.two_n)
    return self._thermal_average(steps[n1 - 1].astype(float), beta)

  def thermal_correlator(self, n1, n2, beta):
    """<s^z_n1 s^z_n2> in the Gibbs state at inverse temperature beta."""
    self._check_site(n1)
    self._check_site(n2)
    steps = site_steps(self.two_n)
    diagonal = (steps[n1 - 1] * steps[n2 - 1]).astype(float)
    return self._thermal_average(diagonal, beta)

  def conserved_charge_check(self, samples=20, seed=0, operator=None):
    """
      Largest ||[H, Q] v|| / ||v|| over random v, where Q is the total s^z.

      Parameters
      ----------
      samples : number of random vectors
      seed : seed for numpy's generator
      operator : anything supporting `@` on vectors; defaults to H applied
        matrix-free
    """
    check_size('conserved_charge_check', self.two_n, MAX_FRUSTRATION_TWO_N)
    apply = self.apply_hamiltonian if operator is None else (
        lambda v: operator @ v)
    charge = site_steps(self.two_n).sum(axis=0).astype(float)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
      v = rng.standard_normal(self.dimension)
      commutator = apply(charge * v) - charge * apply(v)
      worst = max(worst, np.linalg.norm(commutator) / np.linalg.norm(v))
    self.logger.info(f'Largest [H, Q] action for 2n={self.two_n}: {worst}.')
    return float(worst)

  def export_hamiltonian(self, export_service, path):
    h = self.build_hamiltonian().tocoo()
    export_service.write_triplets(path, h.row, h.col, h.data)

  def export_state(self, export_service, path, state=None):
    if state is None:
      state = self.build_motzkin_state()
    export_service.write_state(path, state.amplitudes)


def spin_expectation(state, site, axis):
  """<psi| s^axis_site |psi> with the 3x3 spin-1 matrices."""
  if not 1 <= site <= state.two_n:
    raise ValueError(f'Site {site} is not on a chain of {state.two_n}.')
  if axis not in _AXES:
    raise ValueError(f'Unknown axis {axis!r}; expected x, y or z.')
  psi = state.amplitudes.reshape(3 ** (site - 1), 3, -1)
  value = np.einsum('iak,ab,ibk->', psi.conj(), _AXES[axis], psi)
  return float(np.real(value))


def reduced_density(state, first, last):
  """Density matrix of sites first..last (1-indexed, inclusive)."""
  if not 1 <= first <= last <= state.two_n:
    raise ValueError(
        f'Region {first}..{last} is not on a chain of {state.two_n}.')
  check_size(
      'reduced_density', last - first + 1, MAX_REDUCED_SITES,
      overridable=False)
  psi = state.amplitudes.reshape(3 ** (first - 1), 3 ** (last - first + 1), -1)
  return np.einsum('iak,ibk->ab', psi, psi)


def schmidt_spectrum(state, n1):
  """Squared singular values across the cut after site n1, descending."""
  if not 1 <= n1 <= state.two_n - 1:
    raise ValueError(f'Cut after site {n1} does not split the chain.')
  matrix = state.amplitudes.reshape(3 ** n1, -1)
  values = np.linalg.svd(matrix, compute_uv=False) ** 2
  return values[values > NUMERICAL_ZERO]


def fit_gap_exponent(sizes, gaps=None, logger=None):
  """
    Least-squares fit of ln(gap) against ln(n), n being half the chain length.
    Gaps are computed when not given. The residual is the root mean square of
    the fit in log space.
  """
  logger = logger or logging.getLogger(__name__)
  sizes = tuple(sizes)
  if len(sizes) < 4:
    raise ValueError(f'Need at least 4 sizes to fit, got {len(sizes)}.')
  if gaps is None:
    gaps = [MotzkinChain(s, logger).spectral_gap() for s in sizes]
  gaps = tuple(float(g) for g in gaps)
  if len(gaps) != len(sizes):
    raise ValueError('Every size needs exactly one gap.')
  if any(g <= 0 for g in gaps):
    raise ValueError(f'Gaps must be positive, got {gaps}.')
  x = np.log(np.asarray(sizes, dtype=float) / 2)
  y = np.log(gaps)
  slope, intercept = np.polyfit(x, y, 1)
  residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
  fit = GapFit(
      sizes=sizes,
      gaps=gaps,
      exponent=float(-slope),
      amplitude=float(math.exp(intercept)),
      residual=residual)
  logger.info(f'Gap exponent {fit.exponent:.4f}, residual {residual:.3g}.')
  return fit
