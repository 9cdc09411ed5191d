"""
Runtime knobs, read from environment variables or a .env / settings.ini file.

See https://github.com/henriquebastos/python-decouple.
"""

from constants import DEFAULT_RATIONAL_MAX_TWO_N, DEFAULT_WORKERS
from decouple import config
from errors import SizeLimitError


def _optional_int(value):
  return int(value) if value not in (None, '') else None


class Config:
  """Container for the tunable limits."""

  def __init__(
      self,
      max_two_n=None,
      rational_max_two_n=DEFAULT_RATIONAL_MAX_TWO_N,
      workers=DEFAULT_WORKERS):
    self.max_two_n = max_two_n
    self.rational_max_two_n = rational_max_two_n
    self.workers = workers

  @staticmethod
  def from_env_vars():
    return Config(
        max_two_n=config('MOTZKIN_MAX_2N', default='', cast=_optional_int),
        rational_max_two_n=config(
            'MOTZKIN_RATIONAL_MAX_2N',
            default=DEFAULT_RATIONAL_MAX_TWO_N,
            cast=int),
        workers=config('MOTZKIN_WORKERS', default=DEFAULT_WORKERS, cast=int))


def check_size(operation, requested, limit, overridable=True):
  """
    Raises SizeLimitError when `requested` is above the effective limit.

    The environment is consulted on every call, so MOTZKIN_MAX_2N can be
    changed (or patched in tests) between calls. Guards that bound a number of
    sites rather than a chain length pass overridable=False.
  """
  effective = limit
  if overridable:
    override = Config.from_env_vars().max_two_n
    if override is not None:
      effective = override
  if requested > effective:
    raise SizeLimitError(operation, requested, effective)


def use_rationals(two_n):
  """True when expectations at this size are computed as exact fractions."""
  return two_n <= Config.from_env_vars().rational_max_two_n
