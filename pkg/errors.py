"""
Exceptions raised across the package.
"""


class SizeLimitError(ValueError):
  """A request exceeds one of the cost guards in constants."""

  def __init__(self, operation, requested, limit):
    super().__init__(
        f'{operation}: requested size {requested} exceeds the limit of '
        f'{limit} (set MOTZKIN_MAX_2N to override).')
    self.operation = operation
    self.requested = requested
    self.limit = limit


class ConvergenceError(RuntimeError):
  """The iterative eigensolver gave up before reaching its tolerance."""

  def __init__(self, message, iterations):
    super().__init__(f'{message} (after {iterations} iterations)')
    self.iterations = iterations
