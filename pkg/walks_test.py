"""
Checks the closed-form walk counts against explicit enumeration.
"""

from errors import SizeLimitError
from math import comb
from unittest.mock import patch
from walks import WalkEndpoints

import logging
import unittest
import walks


class WalksTest(unittest.TestCase):

  def setUp(self):
    logging.basicConfig(level=logging.ERROR)
    self.logger = logging.getLogger(__name__)

  def test_dyckCount_knownValues(self):
    self.assertEqual(walks.dyck_count(WalkEndpoints(4, 0, 0)), 2)
    self.assertEqual(walks.dyck_count(WalkEndpoints(3, 0, 5)), 0)
    self.assertEqual(walks.dyck_count(WalkEndpoints(4, 0, 1)), 0)
    self.assertEqual(walks.dyck_count(WalkEndpoints(0, 3, 3)), 1)

  def test_motzkinCount_knownValues(self):
    self.assertEqual(walks.motzkin_count(WalkEndpoints(2, 0, 0)), 2)
    self.assertEqual(walks.motzkin_count(WalkEndpoints(4, 0, 0)), 9)
    self.assertEqual(walks.motzkin_count(WalkEndpoints(1, 2, 3)), 1)

  def test_motzkinNumber_matchesSequence(self):
    expected = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511,
        41835, 113634]
    self.assertEqual([walks.motzkin_number(L) for L in range(15)], expected)

  def test_catalan_knownValues(self):
    self.assertEqual(walks.catalan(0), 1)
    self.assertEqual(walks.catalan(3), 5)
    self.assertEqual(walks.catalan(10), 16796)

  def test_catalan_satisfiesRecurrence(self):
    for i in range(15):
      self.assertEqual(
          walks.catalan(i + 1),
          sum(walks.catalan(j) * walks.catalan(i - j) for j in range(i + 1)))

  def test_closedForms_matchBruteForce_upTo14Steps(self):
    for L in range(15):
      for m1 in range(L + 1):
        for m2 in range(L + 1):
          e = WalkEndpoints(L, m1, m2)
          self.assertEqual(
              walks.dyck_count(e), walks.brute_force_count(e, False), e)
          self.assertEqual(
              walks.motzkin_count(e), walks.brute_force_count(e, True), e)

  def test_bruteForce_matchesDepthFirstEnumeration(self):
    for e in (WalkEndpoints(5, 1, 0), WalkEndpoints(8, 0, 2),
        WalkEndpoints(9, 3, 3), WalkEndpoints(10, 0, 0)):
      for allow_flat in (False, True):
        walked = list(walks.iter_walks(e, allow_flat))
        self.assertEqual(len(walked), walks.brute_force_count(e, allow_flat))
        self.assertEqual(len(set(walked)), len(walked))
        for steps in walked:
          heights = [e.start]
          for step in steps:
            heights.append(heights[-1] + step)
          self.assertGreaterEqual(min(heights), 0)
          self.assertEqual(heights[-1], e.end)

  def test_bruteForce_smallCases(self):
    self.assertEqual(walks.brute_force_count(WalkEndpoints(4, 0, 0), False), 2)
    self.assertEqual(walks.brute_force_count(WalkEndpoints(4, 0, 0), True), 9)
    # u0dd, 0udd, ... every walk from 1 down to 0 in five steps.
    self.assertEqual(
        walks.brute_force_count(WalkEndpoints(5, 1, 0), True),
        walks.motzkin_count(WalkEndpoints(5, 1, 0)))

  def test_bruteForce_tooManySteps_raises(self):
    with self.assertRaises(SizeLimitError):
      walks.brute_force_count(WalkEndpoints(19, 0, 1), True)
    with self.assertRaises(SizeLimitError):
      walks.iter_walks(WalkEndpoints(19, 0, 1), True)

  @patch.dict('os.environ', {'MOTZKIN_MAX_2N': '100'})
  def test_bruteForce_stepGuard_ignoresOverride(self):
    with self.assertRaises(SizeLimitError):
      walks.brute_force_count(WalkEndpoints(19, 0, 1), False)

  def test_dyckCount_groundToGround_isCatalan(self):
    for L in range(0, 31, 2):
      self.assertEqual(
          walks.dyck_count(WalkEndpoints(L, 0, 0)), walks.catalan(L // 2))

  def test_motzkinNumber_binomialCatalanIdentity(self):
    for two_n in range(0, 61, 2):
      n = two_n // 2
      self.assertEqual(
          walks.motzkin_number(two_n),
          sum(comb(two_n, 2 * i) * walks.catalan(i) for i in range(n + 1)))

  def test_motzkinNumber_trinomialForm(self):
    for two_n in range(0, 61, 2):
      self.assertEqual(
          walks.motzkin_number_trinomial(two_n), walks.motzkin_number(two_n))

  def test_motzkinCount_reversalSymmetry(self):
    for L in range(15):
      for m1 in range(L + 1):
        for m2 in range(m1):
          self.assertEqual(
              walks.motzkin_count(WalkEndpoints(L, m1, m2)),
              walks.motzkin_count(WalkEndpoints(L, m2, m1)))

  def test_motzkinCount_transferConsistency(self):
    for L1, L2, a, c in ((3, 4, 0, 1), (5, 5, 2, 0), (6, 2, 1, 3),
        (1, 9, 0, 0)):
      whole = walks.motzkin_count(WalkEndpoints(L1 + L2, a, c))
      split = sum(
          walks.motzkin_count(WalkEndpoints(L1, a, m))
              * walks.motzkin_count(WalkEndpoints(L2, m, c))
          for m in range(a + L1 + 1))
      self.assertEqual(whole, split)

  def test_motzkinRow_matchesConvolution(self):
    for L in (0, 1, 7, 20):
      for start in (0, 3, 11):
        row = walks.motzkin_row(L, start)
        for end, count in enumerate(row):
          self.assertEqual(
              count, walks.motzkin_count(WalkEndpoints(L, start, end)))

  def test_groundCountTable_matchesTrinomialForm(self):
    table = walks.ground_count_table(40)
    for j in (1, 2, 17, 40):
      self.assertEqual(len(table[j]), j + 1)
      for m in range(j + 1):
        self.assertEqual(table[j][m], walks.motzkin_count_from_ground(j, m))

  def test_groundCountTable_shorterIsPrefixOfLonger(self):
    longer = walks.ground_count_table(60)
    shorter = walks.ground_count_table(25)
    self.assertEqual(len(shorter), 26)
    self.assertEqual(shorter, longer[:26])
    self.assertIs(shorter[25], longer[25])

  def test_caches_areBounded(self):
    for cached in (walks.motzkin_row, walks._dyck, walks._depth_rise_table):
      self.assertIsNotNone(cached.cache_info().maxsize)

  def test_countOrZero_negativeHeights(self):
    self.assertEqual(walks.count_or_zero(4, -1, 0), 0)
    self.assertEqual(walks.count_or_zero(4, 0, -1), 0)
    self.assertEqual(walks.count_or_zero(4, 0, 0), 9)

  def test_unconstrainedCount_totalsPowerOfThree(self):
    L = 12
    self.assertEqual(
        sum(walks.unconstrained_count(L, p) for p in range(-L, L + 1)), 3 ** L)
    self.assertEqual(walks.unconstrained_count(L, 5),
        walks.unconstrained_count(L, -5))

  def test_multinomial_negativePart_isZero(self):
    self.assertEqual(walks.multinomial((3, -1, 2)), 0)
    self.assertEqual(walks.multinomial((2, 2, 2)), 90)

  def test_counts_largeSizes_stayExact(self):
    N = walks.motzkin_number(400)
    self.assertIsInstance(N, int)
    self.assertEqual(N, walks.ground_count_table(400)[400][0])
    self.assertGreater(N.bit_length(), 600)

  def test_badWalkFractionBound(self):
    self.assertEqual(walks.bad_walk_fraction_bound(1, 0), 0)
    self.assertAlmostEqual(
        walks.bad_walk_fraction_bound(50, 10), 50 * (2 / 3) ** 51, delta=1e-20)
    self.assertLess(walks.bad_walk_fraction_bound(85, 10), 1e-13)
    with self.assertRaises(ValueError):
      walks.bad_walk_fraction_bound(0, 10)

  def test_walkEndpoints_negative_raises(self):
    with self.assertRaises(ValueError):
      WalkEndpoints(3, -1, 0)


if __name__ == '__main__':
  unittest.main()
