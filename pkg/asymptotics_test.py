"""
Measures the Gaussian approximations against exact big-integer counts.
"""

from asymptotics import TrinomialPoint
from walks import WalkEndpoints

import asymptotics
import logging
import math
import unittest
import walks


def _relative_error(log_exact, log_approx):
  return abs(1 - math.exp(log_approx - log_exact))


class AsymptoticsTest(unittest.TestCase):

  def setUp(self):
    logging.basicConfig(level=logging.ERROR)
    self.logger = logging.getLogger(__name__)

  def test_trinomialGaussian_center_isPrefactor(self):
    value = asymptotics.trinomial_gaussian(TrinomialPoint(300, 0, 0, 0))
    expected = 301 * math.log(3) + 0.5 * math.log(3) - math.log(600 * math.pi)
    self.assertAlmostEqual(value, expected, places=10)

  def test_trinomialGaussian_offCenter_matchesExactLog(self):
    approx = asymptotics.trinomial_gaussian(TrinomialPoint(300, 10, -5, -5))
    exact = asymptotics.log_count(walks.multinomial((110, 95, 95)))
    self.assertLess(abs(approx - exact) / exact, 0.01)

  def test_trinomialGaussian_centralValue_within2Percent(self):
    for L in (60, 90, 300):
      approx = asymptotics.trinomial_gaussian(TrinomialPoint(L, 0, 0, 0))
      exact = asymptotics.log_count(
          walks.multinomial((L // 3, L // 3, L // 3)))
      self.assertLess(_relative_error(exact, approx), 0.02)

  def test_trinomialPoint_unbalanced_raises(self):
    with self.assertRaises(ValueError):
      TrinomialPoint(30, 1, 1, 1)

  def test_trinomialGaussian_zeroTotal_raises(self):
    with self.assertRaises(ValueError):
      asymptotics.trinomial_gaussian(TrinomialPoint(0, 0, 0, 0))

  def test_mCountAsymptotic_withinFivePercent(self):
    m = round(math.sqrt(200))
    exact = asymptotics.log_count(
        walks.motzkin_count(WalkEndpoints(200, 0, m)))
    self.assertLess(
        _relative_error(exact, asymptotics.m_count_asymptotic(200, m)), 0.05)

  def test_mCountAsymptotic_groundHeight_isMinusInfinity(self):
    self.assertEqual(asymptotics.m_count_asymptotic(200, 0), -math.inf)

  def test_mCountAsymptotic_errorShrinksWithLength(self):
    errors = []
    for L, m in ((100, 10), (200, 14), (400, 20)):
      exact = asymptotics.log_count(walks.motzkin_count_from_ground(L, m))
      errors.append(
          _relative_error(exact, asymptotics.m_count_asymptotic(L, m)))
    self.assertLessEqual(errors[1], errors[0] * 1.2)
    self.assertLessEqual(errors[2], errors[1] * 1.2)
    self.assertLess(errors[2], errors[1])

  def test_blockCountAsymptotic_againstUnconstrainedCount(self):
    center = asymptotics.block_count_asymptotic(100, 0)
    self.assertLess(_relative_error(
        asymptotics.log_count(walks.unconstrained_count(100, 0)), center),
        0.03)
    tail = asymptotics.block_count_asymptotic(100, 30)
    self.assertLess(_relative_error(
        asymptotics.log_count(walks.unconstrained_count(100, 30)), tail),
        0.15)

  def test_blockCountAsymptotic_isEven(self):
    self.assertEqual(asymptotics.block_count_asymptotic(100, 6),
        asymptotics.block_count_asymptotic(100, -6))

  def test_blockCount_deepInChain_approachesUnconstrained(self):
    # Far from the floor the walk no longer feels it.
    L, h = 20, 40
    self.assertEqual(
        walks.motzkin_count(WalkEndpoints(L, h, h + 3)),
        walks.unconstrained_count(L, 3))

  def test_saddleIndex_center(self):
    self.assertEqual(asymptotics.saddle_index(300, 0), 100)

  def test_saddleIndex_tracksExactArgmax(self):
    for L, m in ((300, 17), (90, 9)):
      self.assertLessEqual(
          abs(asymptotics.saddle_index(L, m)
              - asymptotics.saddle_index_exact(L, m)), 2)

  def test_gaussianMomentSum_evenPower_matchesIntegral(self):
    total, integral = asymptotics.gaussian_moment_sum(100, 2, 0.75)
    self.assertLess(abs(total - integral), 1e-6 * integral)

  def test_gaussianMomentSum_oddPower_offsetByEndpointTerm(self):
    total, integral = asymptotics.gaussian_moment_sum(100, 3, 1.5)
    # Odd powers pick up a constant from the m = 0 endpoint: -B_4 / 4 = 1/120.
    self.assertLess(abs(total - integral - 1 / 120), 1e-6 * integral)

  def test_gaussianMomentSum_tinyLength_isFinite(self):
    total, integral = asymptotics.gaussian_moment_sum(1, 1, 10)
    self.assertTrue(math.isfinite(total))
    self.assertTrue(math.isfinite(integral))

  def test_gaussianMomentSum_badArguments_raise(self):
    with self.assertRaises(ValueError):
      asymptotics.gaussian_moment_sum(10, 0, 1)
    with self.assertRaises(ValueError):
      asymptotics.gaussian_moment_sum(10, 2, 0)

  def test_asymptotics_hugeLength_doNotOverflow(self):
    for value in (
        asymptotics.m_count_asymptotic(10 ** 6, 1000),
        asymptotics.block_count_asymptotic(10 ** 6, 500),
        asymptotics.trinomial_gaussian(TrinomialPoint(10 ** 6, 3, -1, -2))):
      self.assertTrue(math.isfinite(value))

  def test_logCount(self):
    self.assertEqual(asymptotics.log_count(0), -math.inf)
    self.assertAlmostEqual(
        asymptotics.log_count(3 ** 500), 500 * math.log(3), places=9)


if __name__ == '__main__':
  unittest.main()
