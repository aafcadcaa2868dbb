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

""" The two ways we change the length of a signal or of the time axis of a
    feature: bandlimited resampling with a Kaiser-windowed sinc, which treats
    every channel as a waveform, and align-corners linear interpolation, which
    treats the feature as an image. Both only ever touch the time axis. """

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.special

class InterpolationMethod(enum.Enum):
  KAISER = "kaiser"
  LINEAR = "linear"

@dataclass(frozen = True)
class KaiserResampleParams:
  """ zero_crossings: how many sinc zero crossings the kernel spans on each
      side; beta: Kaiser window shape; rolloff: cutoff as a fraction of the
      lower Nyquist frequency. """

  zero_crossings: int = 16
  beta:           float = 8.555
  rolloff:        float = 0.99

  def __post_init__(self):
    if (self.zero_crossings < 1):
      raise ValueError("zero_crossings must be a positive integer")
    if not (math.isfinite(self.beta) and self.beta >= 0):
      raise ValueError("Kaiser beta must be finite and nonnegative")
    if not (0.0 < self.rolloff <= 1.0):
      raise ValueError("rolloff must lie in (0, 1]")

def round_half_away(value):
  """ Round to the nearest integer, halves away from zero. """

  if (value < 0):
    return -int(math.floor(-value + 0.5))
  return int(math.floor(value + 0.5))

def _checkFactor(factor):
  if not (math.isfinite(factor) and factor > 0):
    raise ValueError("Conversion factor must be positive and finite, got %r" % (factor,))

def target_length(source_length, factor):
  """ Length after changing the duration by the conversion factor
      f = t_src / t_tgt: max(1, round(source_length / f)). """

  if (source_length < 1):
    raise ValueError("Source length must be at least 1")
  _checkFactor(factor)

  return max(1, round_half_away(source_length / float(factor)))

def _kaiserKernel(ratio, out_len, params):
  """ Tap indices and weights for every output sample. Output sample m sits at
      input position m * ratio; its taps are the input samples within the
      kernel's half-width of that position. Returns (indices, weights), both
      shaped (out_len, taps). """

  # Cutoff in cycles per input sample, and the half-width in input samples
  # that holds zero_crossings zero crossings of the sinc
  cutoff = 0.5 * params.rolloff * min(1.0, 1.0 / ratio)
  half_width = params.zero_crossings / (2.0 * cutoff)

  reach = int(math.ceil(half_width))
  positions = np.arange(out_len, dtype = np.float64) * ratio
  indices = np.floor(positions).astype(np.int64)[:, np.newaxis] + np.arange(-reach, reach + 1)
  t = positions[:, np.newaxis] - indices

  inside = np.abs(t) <= half_width
  shape = np.sqrt(np.maximum(0.0, 1.0 - (t / half_width) ** 2))
  window = scipy.special.i0(params.beta * shape) / scipy.special.i0(params.beta)
  weights = 2.0 * cutoff * np.sinc(2.0 * cutoff * t) * window
  weights[~inside] = 0.0
  return indices, weights

def _resampleRows(rows, ratio, out_len, params, counter = None):
  """ Resample every row of a 2-D array. Samples outside the signal count as
      zero. """

  rows = np.asarray(rows)
  n_in = rows.shape[1]
  indices, weights = _kaiserKernel(ratio, out_len, params)

  # Taps falling outside the signal get weight 0 and a safe index
  valid = (indices >= 0) & (indices < n_in)
  weights = np.where(valid, weights, 0.0).astype(rows.dtype if rows.dtype.kind == "f" else np.float64)
  indices = np.clip(indices, 0, n_in - 1)

  out = np.zeros((rows.shape[0], out_len), dtype = weights.dtype)
  for tap in range(indices.shape[1]):
    out += rows[:, indices[:, tap]] * weights[:, tap]

  if (counter is not None):
    counter.add(rows.shape[0] * out_len * indices.shape[1])
  return out

def resample_bandlimited(signal, in_rate, out_rate, params = None):
  """ Change the sample rate of a 1-D signal with a Kaiser-windowed sinc
      kernel. The output holds max(1, round(len * out_rate / in_rate))
      samples. """

  if (params is None):
    params = KaiserResampleParams()
  if not (in_rate > 0 and out_rate > 0):
    raise ValueError("Sample rates must be positive")

  signal = np.asarray(signal, dtype = np.float64).reshape(-1)
  if (len(signal) < 1):
    raise ValueError("Cannot resample an empty signal")

  out_len = max(1, round_half_away(len(signal) * float(out_rate) / float(in_rate)))
  if (in_rate == out_rate):
    return signal.copy()

  return _resampleRows(signal[np.newaxis, :], float(in_rate) / float(out_rate), out_len, params)[0]

def stretch_time_bandlimited(feature, factor, params = None, counter = None):
  """ Stretch the time axis of a (C, T) feature by resampling every channel
      from rate f to rate 1. The result has target_length(T, f) frames. """

  if (params is None):
    params = KaiserResampleParams()

  feature = _checkFeature(feature)
  out_len = target_length(feature.shape[1], factor)
  if (factor == 1.0):
    return feature

  return _resampleRows(feature, float(factor), out_len, params, counter)

def stretch_time_linear(feature, factor, counter = None):
  """ Stretch the time axis of a (C, T) feature by align-corners linear
      interpolation: output column j samples input position
      j (T - 1) / (T' - 1). The first and last columns are kept exactly. """

  feature = _checkFeature(feature)
  n_in = feature.shape[1]
  out_len = target_length(n_in, factor)
  if (factor == 1.0):
    return feature

  if (out_len == 1):
    positions = np.zeros(1)
  else:
    positions = np.arange(out_len, dtype = np.float64) * (n_in - 1) / (out_len - 1)

  lower = np.floor(positions).astype(np.int64)
  upper = np.minimum(np.ceil(positions).astype(np.int64), n_in - 1)
  weight = (positions - lower).astype(feature.dtype if feature.dtype.kind == "f" else np.float64)

  if (counter is not None):
    counter.add(2 * feature.shape[0] * out_len)
  return (1.0 - weight) * feature[:, lower] + weight * feature[:, upper]

def stretch_time(feature, factor, method, params = None, counter = None):
  """ Dispatch to the stretch of the given InterpolationMethod. """

  method = InterpolationMethod(method)
  if (method is InterpolationMethod.LINEAR):
    return stretch_time_linear(feature, factor, counter)
  return stretch_time_bandlimited(feature, factor, params, counter)

def _checkFeature(feature):
  feature = np.asarray(feature)
  if (feature.ndim != 2) or (feature.shape[1] < 1):
    raise ValueError("Expected a (channels, time) array with at least one frame, got shape %s" % (feature.shape,))
  return feature
