"""
Checks Schmidt spectra and entropies, exact against asymptotic.
"""

from correlations import ChainGeometry

import entanglement
import logging
import math
import numpy as np
import unittest


class EntanglementTest(unittest.TestCase):

  def setUp(self):
    logging.basicConfig(level=logging.ERROR)
    self.logger = logging.getLogger(__name__)

  def test_cutSpectrum_rankIsBoundaryDistancePlusOne(self):
    for two_n in range(2, 61, 2):
      for n1 in range(1, two_n):
        spectrum = entanglement.cut_spectrum(ChainGeometry(two_n // 2, n1))
        self.assertEqual(spectrum.rank, min(n1, two_n - n1) + 1)
        self.assertEqual(spectrum.labels, tuple(range(spectrum.rank)))
        self.assertAlmostEqual(math.fsum(spectrum.weights), 1, delta=1e-12)

  def test_cutEntropy_twoSites_isLogTwo(self):
    report = entanglement.cut_entropy(ChainGeometry(1, 1))
    self.assertEqual(report.rank, 2)
    self.assertAlmostEqual(report.exact, math.log(2), places=15)
    self.assertAlmostEqual(report.exact_bits, 1, places=12)

  def test_cutEntropy_mirrorCuts_areIdentical(self):
    for two_n in (12, 60, 170):
      for n1 in (1, 7, two_n // 2 - 1):
        left = entanglement.cut_entropy(ChainGeometry(two_n // 2, n1))
        right = entanglement.cut_entropy(
            ChainGeometry(two_n // 2, two_n - n1))
        self.assertEqual(left.exact, right.exact)

  def test_cutEntropy_halfChain_matchesBitsFormula(self):
    n = 85
    report = entanglement.cut_entropy(ChainGeometry(n, n))
    bits = (0.5 * math.log2(n) + (np.euler_gamma - 0.5) * math.log2(math.e)
        + 0.5 * math.log2(2 * math.pi / 3))
    self.assertAlmostEqual(report.asymptotic_bits, bits, places=12)

  def test_cutEntropy_sweep_matchesAsymptotic(self):
    n = 85
    for n1 in range(20, 151):
      report = entanglement.cut_entropy(ChainGeometry(n, n1))
      self.assertLess(abs(report.exact - report.asymptotic), 0.06, n1)

  def test_cutRenyi_nearOne_recoversVonNeumann(self):
    g = ChainGeometry(85, 60)
    von_neumann = entanglement.cut_entropy(g).exact
    epsilon = 1e-4
    above = entanglement.cut_renyi(g, 1 + epsilon).exact
    below = entanglement.cut_renyi(g, 1 - epsilon).exact
    self.assertAlmostEqual((above + below) / 2, von_neumann, delta=1e-6)
    self.assertLessEqual(abs(above - von_neumann), 10 * epsilon)
    self.assertLessEqual(abs(below - von_neumann), 10 * epsilon)
    self.assertEqual(entanglement.cut_renyi(g, 1).exact, von_neumann)

  def test_cutRenyi_matchesAsymptotic(self):
    g = ChainGeometry(85, 85)
    for kappa in (0.5, 2, 3):
      report = entanglement.cut_renyi(g, kappa)
      self.assertLess(abs(report.exact - report.asymptotic), 0.06, kappa)

  def test_cutRenyiOffset_limitAtOne(self):
    limit = np.euler_gamma - 0.5 + 0.5 * math.log(2 * math.pi / 3)
    self.assertAlmostEqual(
        (entanglement.cut_renyi_offset(1 + 1e-5)
            + entanglement.cut_renyi_offset(1 - 1e-5)) / 2,
        limit, places=6)

  def test_cutRenyiOffset_divergesAtZero(self):
    values = [entanglement.cut_renyi_offset(k) for k in (1e-1, 1e-3, 1e-6)]
    self.assertLess(values[0], values[1])
    self.assertLess(values[1], values[2])
    self.assertGreater(values[2], 5)

  def test_renyi_nonPositiveIndex_raises(self):
    with self.assertRaises(ValueError):
      entanglement.cut_renyi(ChainGeometry(5, 5), 0)
    with self.assertRaises(ValueError):
      entanglement.block_renyi(10, -1)

  def test_renyi_nonIncreasingInIndex(self):
    spectra = [
        entanglement.cut_spectrum(ChainGeometry(85, 40)).weights,
        entanglement.cut_spectrum(ChainGeometry(6, 5)).weights,
        entanglement.block_spectrum(30).weights,
        entanglement.block_spectrum_exact(ChainGeometry(20, 17, 23)).weights]
    for weights in spectra:
      values = [entanglement.renyi(weights, k)
          for k in (0.25, 0.5, 1, 2, 3, 10)]
      for higher, lower in zip(values, values[1:]):
        self.assertGreaterEqual(higher + 1e-12, lower)
      self.assertGreaterEqual(values[-1], 0)

  def test_blockSpectrum_symmetricAndNormalized(self):
    spectrum = entanglement.block_spectrum(4)
    self.assertEqual(spectrum.rank, 9)
    self.assertEqual(spectrum.labels, tuple(range(-4, 5)))
    weights = spectrum.weights
    for p in range(9):
      self.assertEqual(weights[p], weights[8 - p])
    self.assertAlmostEqual(
        math.fsum(entanglement.block_spectrum(100).weights), 1, delta=1e-14)

  def test_blockEntropy_matchesAsymptotic(self):
    report = entanglement.block_entropy(100)
    self.assertLess(abs(report.exact - report.asymptotic), 0.01)
    bits = (0.5 * math.log2(100) + math.log2(2 * math.sqrt(math.pi / 3))
        + 0.5 * math.log2(math.e))
    self.assertAlmostEqual(report.asymptotic_bits, bits, places=12)

  def test_blockEntropy_correction_vanishesFarFromBoundary(self):
    report = entanglement.block_entropy(10, b=10 ** 9)
    self.assertAlmostEqual(report.corrected, report.asymptotic, places=7)
    nearby = entanglement.block_entropy(10, b=40)
    self.assertLess(nearby.corrected, nearby.asymptotic)

  def test_blockRenyi_matchesAsymptoticAndLimit(self):
    for kappa in (0.5, 2, 3):
      report = entanglement.block_renyi(100, kappa)
      self.assertLess(abs(report.exact - report.asymptotic), 0.01, kappa)
    von_neumann = entanglement.block_entropy(100).exact
    above = entanglement.block_renyi(100, 1 + 1e-4).exact
    below = entanglement.block_renyi(100, 1 - 1e-4).exact
    self.assertAlmostEqual((above + below) / 2, von_neumann, delta=1e-6)

  def test_blockRenyiOffset_limitAtOne(self):
    limit = math.log(2 * math.sqrt(math.pi / 3)) + 0.5
    self.assertAlmostEqual(
        entanglement.block_renyi_offset(1 + 1e-7), limit, places=6)

  def test_entanglementHamiltonianCut_reproducesGaussianWeights(self):
    g = ChainGeometry(85, 85)
    levels = entanglement.entanglement_hamiltonian_cut(g)
    self.assertEqual([m for m, _ in levels], list(range(1, 86)))
    c = 0.75 * (1 / 85 + 1 / 85)
    gaussian = [m ** 2 * math.exp(-c * m ** 2) for m in range(1, 86)]
    boltzmann = [math.exp(-energy) for _, energy in levels]
    for a, b in zip(gaussian, boltzmann):
      self.assertAlmostEqual(
          a / math.fsum(gaussian), b / math.fsum(boltzmann), delta=1e-12)

  def test_entanglementHamiltonianCut_uniqueInteriorMinimum(self):
    energies = [e for _, e in entanglement.entanglement_hamiltonian_cut(
        ChainGeometry(85, 85))]
    lowest = energies.index(min(energies))
    self.assertTrue(0 < lowest < len(energies) - 1)
    self.assertEqual(energies.count(min(energies)), 1)
    for i in range(lowest):
      self.assertGreater(energies[i], energies[i + 1])
    for i in range(lowest, len(energies) - 1):
      self.assertLess(energies[i], energies[i + 1])

  def test_entanglementHamiltonianCut_offCenter_changesQuadraticOnly(self):
    center = dict(entanglement.entanglement_hamiltonian_cut(
        ChainGeometry(85, 85)))
    offset = dict(entanglement.entanglement_hamiltonian_cut(
        ChainGeometry(85, 60)))
    ratios = [(offset[m] - center[m]) / m ** 2 for m in range(1, 61)]
    for ratio in ratios:
      self.assertAlmostEqual(ratio, ratios[0], places=12)

  def test_entanglementHamiltonianCutExact_invertsSpectrum(self):
    g = ChainGeometry(85, 50)
    weights = entanglement.cut_spectrum(g).weights
    for m, energy in entanglement.entanglement_hamiltonian_cut_exact(g):
      self.assertAlmostEqual(
          math.exp(-energy), weights[m], delta=1e-12 * max(1, weights[m]))

  def test_entanglementHamiltonianBlock(self):
    L = 12
    levels = dict(entanglement.entanglement_hamiltonian_block(L))
    self.assertEqual(levels[0], 0)
    self.assertEqual(levels[L], 3 * L / 4)
    self.assertEqual(levels[-L], 3 * L / 4)
    boltzmann = [math.exp(-levels[p]) for p in range(-L, L + 1)]
    total = math.fsum(boltzmann)
    for weight, expected in zip(
        boltzmann, entanglement.block_spectrum(L).weights):
      self.assertAlmostEqual(weight / total, expected, delta=1e-14)

  def test_blockSpectrumExact_isNormalized(self):
    for n, n1, n2 in ((6, 5, 7), (10, 3, 9), (40, 38, 42), (150, 140, 160)):
      spectrum = entanglement.block_spectrum_exact(ChainGeometry(n, n1, n2))
      self.assertAlmostEqual(math.fsum(spectrum.weights), 1, delta=1e-12)

  def test_blockSpectrumExact_twoSiteBlock_hasSixLevels(self):
    # Depth classes: uu | u0,0u | 00,ud and du | 0d,d0 | dd.
    spectrum = entanglement.block_spectrum_exact(ChainGeometry(6, 5, 7))
    self.assertEqual(spectrum.rank, 6)
    self.assertEqual(sorted(set(spectrum.labels)), [-2, -1, 0, 1, 2])

  def test_blockEntropyExact_approachesAsymptoticWithChainSize(self):
    gaps = []
    for n in (3, 6, 150):
      report = entanglement.block_entropy_exact(ChainGeometry.centered(n, 2))
      gaps.append(abs(report.exact - report.asymptotic))
    self.assertLess(gaps[1], gaps[0])
    self.assertLess(gaps[2], gaps[1])


if __name__ == '__main__':
  unittest.main()
