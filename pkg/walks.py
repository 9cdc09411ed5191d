"""
Exact counts of non-negative lattice walks.

Dyck-like walks take up/down steps only; Motzkin-like walks may also take flat
steps. A walk is described by its number of steps and its start and end
heights, and every count is a python int so nothing overflows or rounds.
"""

from constants import MAX_BRUTE_FORCE_STEPS
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod, sqrt
from settings import check_size

import itertools
import numpy as np
import threading

# Step sequences are enumerated in blocks of at most this many steps.
_BLOCK_STEPS = 12

# Shared rows of M(j, 0, m), grown on demand by ground_count_table.
_ground_rows = [(1,)]
_ground_lock = threading.Lock()


@dataclass(frozen=True)
class WalkEndpoints:
  steps: int
  start: int
  end: int

  def __post_init__(self):
    if self.steps < 0 or self.start < 0 or self.end < 0:
      raise ValueError(
          f'Walk endpoints must be non-negative, got {self.steps} steps '
          f'from {self.start} to {self.end}.')


def binomial(n, k):
  """C(n, k), taken to be 0 whenever k < 0 or k > n."""
  if n < 0 or k < 0 or k > n:
    return 0
  return comb(n, k)


def multinomial(parts):
  """Multinomial coefficient (sum(parts); parts...). Negative parts give 0."""
  if any(part < 0 for part in parts):
    return 0
  return factorial(sum(parts)) // prod(factorial(part) for part in parts)


def catalan(i):
  return comb(2 * i, i) // (i + 1)


@lru_cache(maxsize=65536)
def _dyck(steps, start, end):
  rise = abs(end - start)
  if rise > steps or (steps - rise) % 2:
    return 0
  # Reflection principle: unconstrained walks minus those that touch -1.
  return (binomial(steps, (steps + rise) // 2)
      - binomial(steps, (steps + start + end) // 2 + 1))


def dyck_count(e):
  """
    Number of up/down walks of e.steps steps from height e.start to e.end that
    never go below zero.
  """
  return _dyck(e.steps, e.start, e.end)


def motzkin_count(e):
  """
    Number of up/flat/down walks of e.steps steps from e.start to e.end that
    never go below zero.

    Choosing which k steps are flat leaves a Dyck-like walk on the remaining
    steps, so the count is a binomial convolution over k.
  """
  rise = abs(e.end - e.start)
  return sum(
      binomial(e.steps, flats)
          * dyck_count(WalkEndpoints(e.steps - flats, e.start, e.end))
      for flats in range(e.steps - rise + 1))


def motzkin_number(two_n):
  return motzkin_count(WalkEndpoints(two_n, 0, 0))


def motzkin_number_trinomial(two_n):
  return motzkin_count_from_ground(two_n, 0)


def motzkin_count_from_ground(steps, end):
  """
    Walks from height 0 to `end` in `steps` steps, via the trinomial closed
    form (end + 1) / (steps + 1) * sum_i (steps + 1; steps - 2i - end, i,
    i + end + 1).
  """
  total = sum(
      multinomial((steps - 2 * i - end, i, i + end + 1))
      for i in range((steps - end) // 2 + 1))
  return (end + 1) * total // (steps + 1)


def unconstrained_count(steps, rise):
  """Sequences of up/flat/down steps with net change `rise`, no floor."""
  rise = abs(rise)
  return sum(
      multinomial((steps - 2 * i - rise, i + rise, i))
      for i in range((steps - rise) // 2 + 1))


@lru_cache(maxsize=1024)
def motzkin_row(steps, start):
  """
    M(steps, start, end) for every end height, indexed by end. Built step by
    step so a whole row costs about as much as one convolution sum.
  """
  counts = [0] * (start + steps + 1)
  counts[start] = 1
  for _ in range(steps):
    shifted = [0] * len(counts)
    for height, count in enumerate(counts):
      if not count:
        continue
      shifted[height] += count
      if height + 1 < len(counts):
        shifted[height + 1] += count
      if height > 0:
        shifted[height - 1] += count
    counts = shifted
  return tuple(counts)


def count_or_zero(steps, start, end):
  """M(steps, start, end), or 0 when an endpoint height is negative."""
  if start < 0 or end < 0 or steps < 0 or end > start + steps:
    return 0
  return motzkin_row(steps, start)[end]


def ground_count_table(steps):
  """
    Rows of M(j, 0, m) for j = 0..steps. Row j has entries for m = 0..j.

    By reversal M(j, m, 0) is the same number, so one table serves both sides
    of a cut. Every call slices the one longest table built so far.
  """
  with _ground_lock:
    rows = _ground_rows
    for j in range(len(rows), steps + 1):
      previous = rows[-1]
      row = []
      for height in range(j + 1):
        count = 0
        for source in (height - 1, height, height + 1):
          if 0 <= source < len(previous):
            count += previous[source]
        row.append(count)
      rows.append(tuple(row))
    return tuple(rows[:steps + 1])


def iter_walks(e, allow_flat):
  """
    Depth-first generator over the step sequences counted by
    brute_force_count, pruning as soon as a walk dips below zero or can no
    longer reach its end height.
  """
  check_size('iter_walks', e.steps, MAX_BRUTE_FORCE_STEPS, overridable=False)
  moves = (1, 0, -1) if allow_flat else (1, -1)
  path = []

  def extend(height):
    remaining = e.steps - len(path)
    if remaining == 0:
      if height == e.end:
        yield tuple(path)
      return
    for move in moves:
      after = height + move
      if after < 0 or abs(after - e.end) > remaining - 1:
        continue
      path.append(move)
      yield from extend(after)
      path.pop()

  return extend(e.start)


def _sequence_stats(moves, steps):
  """Net change and lowest partial sum (start included) of each sequence."""
  radix = len(moves)
  codes = np.arange(radix ** steps)
  powers = radix ** np.arange(steps - 1, -1, -1)
  digits = (codes[:, None] // powers[None, :]) % radix
  heights = np.cumsum(moves[digits], axis=1)
  return heights[:, -1], np.minimum(heights.min(axis=1), 0)


@lru_cache(maxsize=8)
def _depth_rise_table(steps, allow_flat):
  """
    Histogram of every step sequence of the given length by (depth, rise),
    where depth is how far below its start the sequence dips. A sequence is a
    valid walk from height h exactly when its depth is at most h.
  """
  table = np.zeros((steps + 1, 2 * steps + 1), dtype=np.int64)
  if steps == 0:
    table[0, 0] = 1
    return table
  moves = np.array((1, 0, -1) if allow_flat else (1, -1), dtype=np.int64)
  block = min(steps, _BLOCK_STEPS)
  tail_rise, tail_low = _sequence_stats(moves, block)
  for head in itertools.product(moves.tolist(), repeat=steps - block):
    partial = np.cumsum((0,) + head)
    head_rise = int(partial[-1])
    head_low = int(partial.min())
    rise = head_rise + tail_rise
    depth = -np.minimum(head_low, head_rise + tail_low)
    cells = depth * (2 * steps + 1) + rise + steps
    table += np.bincount(cells, minlength=table.size).reshape(table.shape)
  table.setflags(write=False)
  return table


def brute_force_count(e, allow_flat):
  """
    Counts walks by looking at every one of the 2^L (or 3^L) step sequences.
    This is the oracle the closed forms are tested against, so it shares no
    code with them.
  """
  check_size(
      'brute_force_count', e.steps, MAX_BRUTE_FORCE_STEPS, overridable=False)
  rise = e.end - e.start
  if abs(rise) > e.steps:
    return 0
  table = _depth_rise_table(e.steps, allow_flat)
  return int(table[:e.start + 1, rise + e.steps].sum())


def bad_walk_fraction_bound(boundary_distance, steps):
  """
    Upper bound on the fraction of walks across a block of `steps` sites that
    feel a boundary `boundary_distance` sites away.
  """
  if boundary_distance < 1:
    raise ValueError(
        f'Boundary distance must be at least 1, got {boundary_distance}.')
  return (steps * sqrt(boundary_distance / 2)
      * (2 / 3) ** (boundary_distance + 1))
