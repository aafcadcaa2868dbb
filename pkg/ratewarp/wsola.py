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

""" Waveform-similarity overlap-add: changes the duration of a waveform while
    keeping its pitch, by picking every next analysis frame from a tolerance
    region around its nominal position so that it continues the previously
    picked frame as smoothly as possible. """

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.signal

from . import audio, interp, spectral

log = logging.getLogger(__name__)

# Window sums at or below this are left alone instead of divided out
WINDOW_FLOOR = 1e-6

@dataclass(frozen = True)
class WsolaConfig:
  frame_length:  int = 1024
  synthesis_hop: int = None
  tolerance:     int = 512

  def __post_init__(self):
    if (self.synthesis_hop is None):
      object.__setattr__(self, "synthesis_hop", self.frame_length // 2)

    if (self.frame_length <= 0) or (self.frame_length % 2 != 0):
      raise ValueError("frame_length must be a positive even integer, got %r" % (self.frame_length,))
    if not (0 < self.synthesis_hop <= self.frame_length):
      raise ValueError("synthesis_hop must lie in 1..frame_length, got %r" % (self.synthesis_hop,))
    if not (0 <= self.tolerance <= self.frame_length):
      raise ValueError("tolerance must lie in 0..frame_length, got %r" % (self.tolerance,))

def _searchOrder(deltas):
  """ Candidate order used to break ties: smallest absolute offset first,
      negative before positive. """
  return np.lexsort((deltas > 0, np.abs(deltas)))

def _similarities(padded, energy, lo, hi, reference):
  """ Cosine similarity between reference and every frame starting in
      lo..hi. energy[n] is the summed square of padded[:n]. """

  frame_length = len(reference)
  dots = scipy.signal.correlate(padded[lo:hi + frame_length], reference, mode = "valid")

  starts = np.arange(lo, hi + 1)
  norms = np.sqrt(np.maximum(energy[starts + frame_length] - energy[starts], 0.0))
  norms *= np.sqrt(np.dot(reference, reference))

  sims = np.zeros(len(starts))
  nonzero = norms > 0
  sims[nonzero] = dots[nonzero] / norms[nonzero]
  return sims

def select_positions(samples, factor, config = None):
  """ Pick the analysis position of every synthesis frame. Returns two int
      arrays: the selected start positions and their offsets from the nominal
      positions round(k * synthesis_hop * factor). """

  if (config is None):
    config = WsolaConfig()

  samples = np.asarray(samples, dtype = np.float64).reshape(-1)
  if (len(samples) < config.frame_length):
    raise ValueError("WSOLA needs at least one frame (%d samples), got %d" % (config.frame_length, len(samples)))
  if not (math.isfinite(factor) and factor > 0):
    raise ValueError("Conversion factor must be positive and finite, got %r" % (factor,))

  frame_length  = config.frame_length
  hop           = config.synthesis_hop
  tolerance     = config.tolerance
  analysis_hop  = hop * float(factor)

  out_len  = interp.target_length(len(samples), factor)
  n_frames = int(math.ceil(out_len / float(hop))) + 1

  # Zero-pad the tail so every candidate and every natural progression lies
  # inside the array; only the lower bound at 0 ever clips the search region
  last_nominal = interp.round_half_away((n_frames - 1) * analysis_hop)
  needed = last_nominal + tolerance + hop + frame_length + 1
  padded = np.zeros(max(needed, len(samples)))
  padded[:len(samples)] = samples
  energy = np.concatenate(([0.0], np.cumsum(padded * padded)))

  positions = np.zeros(n_frames, dtype = np.int64)
  offsets   = np.zeros(n_frames, dtype = np.int64)
  for k in range(1, n_frames):
    nominal = interp.round_half_away(k * analysis_hop)
    reference_start = positions[k - 1] + hop
    reference = padded[reference_start:reference_start + frame_length]

    lo = max(0, nominal - tolerance)
    hi = nominal + tolerance
    sims = _similarities(padded, energy, lo, hi, reference)

    deltas = np.arange(lo, hi + 1) - nominal
    order = _searchOrder(deltas)
    best = order[np.argmax(sims[order])]

    positions[k] = lo + best
    offsets[k]   = deltas[best]

  return positions, offsets

def overlap_add(samples, positions, out_len, config = None):
  """ Hann-window the frames at the given analysis positions and add them at
      multiples of synthesis_hop, then divide out the window sum. """

  if (config is None):
    config = WsolaConfig()

  frame_length = config.frame_length
  hop = config.synthesis_hop
  window = spectral.hann_window(frame_length)

  samples = np.asarray(samples, dtype = np.float64).reshape(-1)
  total = (len(positions) - 1) * hop + frame_length
  padded = np.zeros(max(len(samples), int(np.max(positions)) + frame_length))
  padded[:len(samples)] = samples

  out = np.zeros(max(total, out_len))
  window_sum = np.zeros(len(out))
  for k, position in enumerate(positions):
    start = k * hop
    out[start:start + frame_length] += window * padded[position:position + frame_length]
    window_sum[start:start + frame_length] += window

  covered = window_sum > WINDOW_FLOOR
  out[covered] /= window_sum[covered]
  return out[:out_len]

def wsola(buffer, factor, config = None):
  """ Change the duration of buffer by the conversion factor f = t_src / t_tgt
      without changing its pitch. The result holds exactly
      target_length(len(buffer), f) samples at the input sample rate. """

  if (config is None):
    config = WsolaConfig()

  positions, offsets = select_positions(buffer.samples, factor, config)
  out_len = interp.target_length(len(buffer), factor)
  log.debug("WSOLA f=%.3f: %d frames, mean |offset| %.1f", factor, len(positions), np.mean(np.abs(offsets)))

  return audio.AudioBuffer(overlap_add(buffer.samples, positions, out_len, config), buffer.sample_rate_hz)
