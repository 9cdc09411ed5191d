from unittest.mock import MagicMock, patch

import logging.config
import unittest
import validation


class ValidationTest(unittest.TestCase):

  def setUp(self):
    logging.basicConfig(level=logging.ERROR)
    self.logger = MagicMock()
    self.plan = validation.PLANS['quick']

  def test_suites_quickPlan_skipsFigureAndGapChecks(self):
    names = [name for _, name, _ in validation.suites(self.plan)]
    self.assertIn('dyck_vs_brute_force', names)
    self.assertNotIn('gap_exponent', names)
    self.assertNotIn('cut_entropy_2n_170', names)

  def test_suites_fullPlan_addsFigureAndGapChecks(self):
    plan = validation.PLANS['full']
    names = [name for _, name, _ in validation.suites(plan)]
    self.assertIn('gap_exponent', names)
    self.assertIn('sz_profile_2n_170', names)

  def test_runSuites_unknownLevel_raises(self):
    with self.assertRaises(ValueError):
      validation.run_suites(self.logger, 'thorough')

  @patch('validation.suites')
  def test_runSuites_crashingCheck_becomesFailedRecord(self, mock_suites):
    def crash(plan):
      raise ZeroDivisionError('no gap')
    mock_suites.return_value = [
        ('walks', 'fine', lambda plan: (True, 'ok')),
        ('hamiltonian', 'crash', crash),
        ('walks', 'after', lambda plan: (False, 'off by one'))]

    records = validation.run_suites(self.logger, 'quick')

    self.assertEqual([r.passed for r in records], [True, False, False])
    self.assertIn('ZeroDivisionError', records[1].detail)
    self.assertEqual(records[2].detail, 'off by one')
    self.assertEqual(
        set(records[0].as_dict()),
        {'suite', 'name', 'passed', 'detail', 'seconds'})
    self.assertTrue(self.logger.error.called)

  def test_walkChecks_pass(self):
    for check in (
        validation.check_dyck_brute_force,
        validation.check_motzkin_brute_force,
        validation.check_motzkin_number_identity,
        validation.check_trinomial_forms):
      passed, detail = check(self.plan)
      self.assertTrue(passed, detail)

  def test_mismatches_reportsFirst(self):
    passed, detail = validation._mismatches(
        'x', [(1, 1, 1), (2, 4, 5), (3, 9, 8)])
    self.assertFalse(passed)
    self.assertIn('2 mismatches, first at 2: 4 != 5', detail)


if __name__ == '__main__':
  unittest.main()
