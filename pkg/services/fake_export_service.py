"""
An implementation of ExportService that keeps everything in memory.
"""

from services.export_service import TABLE_FORMATS, ExportService

import numpy as np


class FakeExportService(ExportService):

  def __init__(self, logger=None):
    self.tables = {}
    self.metadata = {}
    self.reports = {}
    self.triplets = {}
    self.states = {}

  def write_table(self, path, columns, rows, fmt='csv'):
    if fmt not in TABLE_FORMATS:
      raise ValueError(f'Unknown table format {fmt!r}.')
    self.tables[path] = (list(columns), [tuple(row) for row in rows], fmt)

  def write_metadata(self, path, metadata, now=None):
    self.metadata[path] = dict(metadata)
    return f'{path}.meta.json'

  def write_report(self, path, records):
    self.reports[path] = list(records)

  def write_triplets(self, path, rows, cols, values):
    self.triplets[path] = list(zip(
        np.asarray(rows).tolist(), np.asarray(cols).tolist(),
        np.asarray(values).tolist()))

  def write_state(self, path, amplitudes):
    self.states[path] = np.array(amplitudes, dtype=float)

  def read_state(self, path):
    return self.states[path].copy()
