"""
Provides a facade class around everything the package writes to disk: sweep
tables in CSV or JSON, the sidecar metadata next to them, Hamiltonians as
coordinate triplets and state vectors as raw little-endian doubles.

Data files never contain timestamps, so equal requests give equal bytes. The
time a file was produced goes in its sidecar.
"""

from constants import UTC
from datetime import datetime

import csv
import json
import logging.config
import math
import numpy as np

TABLE_FORMATS = ('csv', 'json')

_STATE_HEADER = np.dtype('<u8')
_STATE_VALUES = np.dtype('<f8')


def format_cell(value):
  """Reals with 17 significant digits; everything else as str()."""
  if isinstance(value, (float, np.floating)):
    return '%.17g' % value
  return str(value)


def _json_cell(value):
  """Plain Python values for JSON; NaN and infinities become null."""
  if isinstance(value, dict):
    return {k: _json_cell(v) for k, v in value.items()}
  if isinstance(value, (list, tuple, np.ndarray)):
    return [_json_cell(v) for v in value]
  if isinstance(value, np.integer):
    return int(value)
  if isinstance(value, (float, np.floating)):
    return float(value) if math.isfinite(value) else None
  return value


def metadata_path(path):
  return f'{path}.meta.json'


class ExportService:

  def __init__(self, logger=None):
    if logger is None:
      logging.config.fileConfig('logging.conf')
      self.logger = logging.getLogger('export')
    else:
      self.logger = logger

  def write_table(self, path, columns, rows, fmt='csv'):
    """
    Writes one row per parameter point.

    Parameters
    ----------
    path: str
      Destination file, overwritten if present.
    columns: list of str
      Header names, in the order the row values come in.
    rows: list of tuples
      Row values. Rows are written in the order given.
    fmt: str
      'csv' for a header line plus one line per row, 'json' for an array of
      records keyed by the column names.
    """
    if fmt not in TABLE_FORMATS:
      raise ValueError(f'Unknown table format {fmt!r}.')
    self.logger.info(f'Writing {len(rows)} rows to {path} as {fmt}.')
    if fmt == 'csv':
      with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
          writer.writerow([format_cell(value) for value in row])
    else:
      records = [
          {c: _json_cell(v) for c, v in zip(columns, row)} for row in rows]
      with open(path, 'w') as f:
        json.dump(records, f, indent=2, allow_nan=False)
        f.write('\n')

  def write_metadata(self, path, metadata, now=None):
    """Writes the sidecar for `path` and returns the sidecar's name."""
    now = now or datetime.now(UTC)
    sidecar = metadata_path(path)
    payload = dict(metadata)
    payload['generated_at'] = now.isoformat()
    with open(sidecar, 'w') as f:
      json.dump(
          _json_cell(payload), f, indent=2, sort_keys=True, allow_nan=False)
      f.write('\n')
    return sidecar

  def write_report(self, path, records):
    self.logger.info(f'Writing {len(records)} validation records to {path}.')
    with open(path, 'w') as f:
      json.dump(_json_cell(records), f, indent=2, allow_nan=False)
      f.write('\n')

  def write_triplets(self, path, rows, cols, values):
    """'row col value' per line, 0-indexed."""
    self.logger.info(f'Writing {len(values)} operator entries to {path}.')
    with open(path, 'w') as f:
      for r, c, v in zip(rows, cols, values):
        f.write(f'{int(r)} {int(c)} {format_cell(float(v))}\n')

  def write_state(self, path, amplitudes):
    """An 8-byte little-endian length followed by the amplitudes as doubles."""
    amplitudes = np.asarray(amplitudes, dtype=_STATE_VALUES)
    self.logger.info(f'Writing {amplitudes.size} amplitudes to {path}.')
    with open(path, 'wb') as f:
      f.write(np.array([amplitudes.size], dtype=_STATE_HEADER).tobytes())
      f.write(amplitudes.tobytes())

  def read_state(self, path):
    with open(path, 'rb') as f:
      data = f.read()
    size = int(np.frombuffer(data[:8], dtype=_STATE_HEADER)[0])
    amplitudes = np.frombuffer(data[8:], dtype=_STATE_VALUES)
    if amplitudes.size != size:
      raise ValueError(
          f'{path} declares {size} amplitudes but holds {amplitudes.size}.')
    return amplitudes.astype(float)
