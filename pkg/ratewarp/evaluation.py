# Copyright 2026 The ratewarp developers
#
# This file is part of ratewarp.
#
# ratewarp is free software; you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# ratewarp is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with ratewarp; if not, write to the Free Software
# Foundation, Inc., 51 Franklin St, Fifth Floor, Boston, MA  02110-1301  USA
#

""" Objective measures: mel-cepstral distortion between DTW-aligned
    sequences, real-time factors, voiced duration and speaking rate. """

import json
import logging
import math
import statistics
import threading
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.spatial.distance

from . import interp, spectral

log = logging.getLogger(__name__)

# dB scale of the mel-cepstral distortion, (10 / ln 10) * sqrt(2)
MCD_SCALE = 10.0 / math.log(10.0) * math.sqrt(2.0)

# Benchmarks must not overlap within one process
_benchmark_lock = threading.Lock()
_clock = time.perf_counter

@dataclass(frozen = True)
class DtwPath:
  pairs:      tuple
  total_cost: float

  def __len__(self):
    return len(self.pairs)

def _checkSequences(a, b):
  a = np.asarray(a, dtype = np.float64)
  b = np.asarray(b, dtype = np.float64)
  if (a.ndim != 2) or (b.ndim != 2):
    raise ValueError("Expected (dimension, time) arrays, got shapes %s and %s" % (a.shape, b.shape))
  if (a.shape[0] != b.shape[0]):
    raise ValueError("Feature dimensions differ: %d and %d" % (a.shape[0], b.shape[0]))
  if (a.shape[1] == 0) or (b.shape[1] == 0):
    raise ValueError("Cannot align an empty sequence")
  return a, b

def dtw_align(a, b):
  """ Align the frames (columns) of a and b by dynamic time warping with
      Euclidean frame distances and steps (1, 0), (0, 1) and (1, 1). Among
      equally cheap paths the diagonal step is preferred, then the step along
      a. """

  a, b = _checkSequences(a, b)
  local = scipy.spatial.distance.cdist(a.T, b.T, "euclidean")
  n, m = local.shape

  total = np.full((n + 1, m + 1), np.inf)
  total[0, 0] = 0.0
  for i in range(1, n + 1):
    for j in range(1, m + 1):
      total[i, j] = local[i - 1, j - 1] + min(total[i - 1, j - 1], total[i - 1, j], total[i, j - 1])

  # Walk back from the end; min() keeps the first of equal candidates
  i, j = n, m
  pairs = [(n - 1, m - 1)]
  while (i, j) != (1, 1):
    candidates = [(i - 1, j - 1), (i - 1, j), (i, j - 1)]
    i, j = min(candidates, key = lambda cell: total[cell])
    pairs.append((i - 1, j - 1))

  pairs.reverse()
  return DtwPath(tuple(pairs), float(total[n, m]))

def mcd(cep_a, cep_b):
  """ Mel-cepstral distortion in dB: the mean over the DTW path of
      (10 / ln 10) sqrt(2 sum_d (a_d - b_d)^2). """

  a, b = _checkSequences(cep_a, cep_b)
  path = dtw_align(a, b)

  rows = [i for i, j in path.pairs]
  cols = [j for i, j in path.pairs]
  distances = np.sqrt(np.sum((a[:, rows] - b[:, cols]) ** 2, axis = 0))
  return float(MCD_SCALE * np.mean(distances))

def mcd_between(buffer_a, buffer_b, mel_config = None, n_coeffs = 13):
  """ MCD between the mel cepstra of two waveforms. """

  cep_a = spectral.mel_cepstrum(spectral.mel_spectrogram(buffer_a, mel_config), n_coeffs)
  cep_b = spectral.mel_cepstrum(spectral.mel_spectrogram(buffer_b, mel_config), n_coeffs)
  return mcd(cep_a, cep_b)

def conversion_factor(t_src_seconds, t_tgt_seconds):
  """ f = t_src / t_tgt. f > 1 makes speech faster. """

  if not (t_src_seconds > 0 and t_tgt_seconds > 0):
    raise ValueError("Durations must be positive, got %r and %r" % (t_src_seconds, t_tgt_seconds))
  return t_src_seconds / float(t_tgt_seconds)

@dataclass(frozen = True)
class VadConfig:
  frame_ms:        float = 30.0
  hop_ms:          float = 10.0
  threshold_db:    float = -40.0
  hangover_frames: int = 5

  def __post_init__(self):
    if not (0 < self.hop_ms <= self.frame_ms):
      raise ValueError("VAD needs 0 < hop_ms <= frame_ms")
    if not math.isfinite(self.threshold_db):
      raise ValueError("VAD threshold must be finite")
    if (self.hangover_frames < 0):
      raise ValueError("hangover_frames must be nonnegative")

def frame_energies(buffer, config = None):
  """ Hann-weighted mean square of frames centred every hop_ms, with zeros
      outside the buffer. One frame per hop, starting at sample 0.

      A frame that only partly overlaps a loud signal still comes within
      threshold_db of the peak, so a voiced span overshoots each edge by
      close to half a frame. A 1 s tone between 0.5 s silences measures
      about 1.03 s, which is more than two hops beyond its true length. """

  if (config is None):
    config = VadConfig()

  sr = buffer.sample_rate_hz
  frame = max(1, interp.round_half_away(config.frame_ms * sr / 1000.0))
  hop   = max(1, interp.round_half_away(config.hop_ms * sr / 1000.0))
  samples = np.asarray(buffer.samples, dtype = np.float64)

  n_frames = 1 + len(samples) // hop
  padded = np.pad(samples, (frame // 2, frame))
  window = spectral.hann_window(frame)
  frames = np.lib.stride_tricks.sliding_window_view(padded ** 2, frame)[::hop][:n_frames]
  return np.dot(frames, window) / np.sum(window)

def voiced_mask(buffer, config = None):
  """ Boolean mask of the voiced frames: energy within threshold_db of the
      loudest frame, with gaps of at most hangover_frames unvoiced frames
      between voiced frames filled in. """

  if (config is None):
    config = VadConfig()

  energy = frame_energies(buffer, config)
  peak = np.max(energy)
  if (peak <= 0):
    return np.zeros(len(energy), dtype = bool)

  with np.errstate(divide = "ignore"):
    level_db = 10.0 * np.log10(energy / peak)
  voiced = level_db > config.threshold_db

  # Bridge short gaps
  indices = np.flatnonzero(voiced)
  for start, end in zip(indices[:-1], indices[1:]):
    if (1 < end - start <= config.hangover_frames + 1):
      voiced[start:end] = True
  return voiced

def voiced_duration(buffer, config = None):
  """ Voiced frames times hop_ms, in seconds, never more than the buffer
      duration. An empty or silent buffer has no voiced duration. """

  if (config is None):
    config = VadConfig()
  if (len(buffer) == 0):
    return 0.0

  count = int(np.count_nonzero(voiced_mask(buffer, config)))
  return min(count * config.hop_ms / 1000.0, buffer.duration_seconds)

@dataclass(frozen = True)
class SpeakingRate:
  mora_per_second: float
  mora_count:      int
  voiced_seconds:  float

def speaking_rate(mora_count, buffer, vad = None):
  """ Morae per second of voiced audio. """

  if (int(mora_count) < 1):
    raise ValueError("Mora count must be positive, got %r" % (mora_count,))

  voiced = voiced_duration(buffer, vad)
  if (voiced <= 0):
    raise ValueError("No voiced audio to measure the speaking rate on")
  return SpeakingRate(mora_count / voiced, int(mora_count), voiced)

@dataclass(frozen = True)
class RtfReport:
  """ Median timing of a synthesis task. compute_seconds is split into
      generation_seconds and conversion_seconds. """

  compute_seconds:    float
  audio_seconds:      float
  generation_seconds: float
  conversion_seconds: float

  @property
  def rtf(self):
    return self.compute_seconds / self.audio_seconds

def _timeOnce(task):
  start = _clock()
  result = task()
  elapsed = _clock() - start

  conversion = 0.0
  if (isinstance(result, tuple)):
    conversion = float(result[1])
  return elapsed, conversion

def measure_rtf(task, audio_seconds_out, repeats = 5):
  """ Run task once to warm up, then `repeats` times, and report the median
      wall-clock time per audio second. task may return an AudioBuffer, or a
      tuple (AudioBuffer, conversion_seconds) to split the time into
      generation and conversion. Benchmarks in the same process are run one at
      a time. """

  if not (audio_seconds_out > 0):
    raise ValueError("Audio duration must be positive, got %r" % (audio_seconds_out,))
  if (repeats < 1):
    raise ValueError("Need at least one repeat, got %d" % repeats)

  with _benchmark_lock:
    task()
    timings = [_timeOnce(task) for repeat in range(repeats)]

  compute = statistics.median(elapsed for elapsed, conversion in timings)
  conversion = min(statistics.median(conversion for elapsed, conversion in timings), compute)
  log.debug("RTF over %d runs: %.4f s compute for %.3f s audio", repeats, compute, audio_seconds_out)
  return RtfReport(compute, float(audio_seconds_out), compute - conversion, conversion)

@dataclass
class EvalReport:
  """ One line of evaluation output. mora_per_s is None when no mora count
      is known; utterance is only set in corpus evaluations. """

  mcd_db:       Optional[float]
  rtf:          Optional[float]
  generation_s: Optional[float]
  conversion_s: Optional[float]
  mora_per_s:   Optional[float]
  factor:       float
  insertion:    str
  method:       str
  utterance:    Optional[str] = None

  KEYS = ("mcd_db", "rtf", "generation_s", "conversion_s", "mora_per_s", "factor", "insertion", "method")

  def toDict(self):
    values = {key: getattr(self, key) for key in self.KEYS}
    if (self.utterance is not None):
      values["utterance"] = self.utterance
    return values

  def toJson(self):
    return json.dumps(self.toDict(), ensure_ascii = False)
