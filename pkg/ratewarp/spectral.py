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

""" Windows, short-time spectra, the log-mel frontend the generator is driven
    by, and the mel cepstra the distortion measure compares. """

from dataclasses import dataclass

import numpy as np
import scipy.fft
import scipy.special

# Floor applied to mel magnitudes before taking the natural log
LOG_FLOOR = 1e-5

@dataclass(frozen = True)
class MelConfig:
  """ Analysis parameters of the mel frontend. The defaults are the universal
      vocoder convention, where hop_length equals the generator's total
      upsampling factor. """

  sample_rate_hz: int = 22050
  n_fft:          int = 1024
  win_length:     int = 1024
  hop_length:     int = 256
  n_mels:         int = 80
  fmin_hz:        float = 0.0
  fmax_hz:        float = 8000.0

  def __post_init__(self):
    for name in ("sample_rate_hz", "n_fft", "win_length", "hop_length", "n_mels"):
      if (getattr(self, name) <= 0):
        raise ValueError("MelConfig.%s must be positive" % name)
    if not (self.hop_length <= self.win_length <= self.n_fft):
      raise ValueError("MelConfig needs hop_length <= win_length <= n_fft")
    if not (0.0 <= self.fmin_hz < self.fmax_hz):
      raise ValueError("MelConfig needs 0 <= fmin_hz < fmax_hz")
    self.checkNyquist()

  def checkNyquist(self):
    if (self.fmax_hz > self.sample_rate_hz / 2.0):
      raise ValueError("fmax %.1f Hz lies beyond the Nyquist frequency %.1f Hz" % (self.fmax_hz, self.sample_rate_hz / 2.0))

  @property
  def n_bins(self):
    return self.n_fft // 2 + 1

class MelSpectrogram:
  """ Natural-log mel magnitudes, shape (n_mels, n_frames), time on the second
      axis, one frame per hop_length samples. """

  def __init__(self, data, config = None):
    if (config is None):
      config = MelConfig()

    data = np.array(data, dtype = np.float64)
    if (data.ndim != 2) or (data.shape[1] < 1):
      raise ValueError("A mel spectrogram needs shape (n_mels, n_frames >= 1), got %s" % (data.shape,))
    if (not np.all(np.isfinite(data))):
      raise ValueError("Mel spectrogram entries must be finite")
    data.setflags(write = False)

    self.data   = data
    self.config = config

  @property
  def n_mels(self):
    return self.data.shape[0]

  @property
  def n_frames(self):
    return self.data.shape[1]

def hann_window(length):
  """ Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / length). """

  if (length < 1):
    raise ValueError("Window length must be at least 1")

  n = np.arange(length)
  return 0.5 - 0.5 * np.cos(2.0 * np.pi * n / length)

def kaiser_window(length, beta):
  """ Symmetric Kaiser window, normalized to 1 at its center. """

  if (length < 1):
    raise ValueError("Window length must be at least 1")
  if (beta < 0):
    raise ValueError("Kaiser beta must be nonnegative")
  if (length == 1):
    return np.ones(1)

  n = np.arange(length)
  ratio = 2.0 * n / (length - 1) - 1.0
  arg = beta * np.sqrt(np.maximum(0.0, 1.0 - ratio ** 2))
  return scipy.special.i0(arg) / scipy.special.i0(beta)

def _samples(buffer):
  """ Accept an AudioBuffer or a plain array. """
  return np.asarray(getattr(buffer, "samples", buffer), dtype = np.float64)

def stft_magnitude(buffer, config = None):
  """ Magnitude STFT with center alignment: the signal is reflect-padded by
      n_fft/2 on both sides, frames are taken every hop_length samples and
      windowed by a Hann window of win_length zero-padded to n_fft. Returns
      shape (n_fft/2 + 1, 1 + len // hop_length). """

  if (config is None):
    config = MelConfig()

  samples = _samples(buffer)
  if (len(samples) == 0):
    raise ValueError("Cannot analyse an empty buffer")

  n_frames = 1 + len(samples) // config.hop_length
  pad = config.n_fft // 2
  padded = np.pad(samples, (pad, config.n_fft - pad), mode = "reflect")

  # The analysis window sits in the middle of the FFT frame
  window = np.zeros(config.n_fft)
  start = (config.n_fft - config.win_length) // 2
  window[start:start + config.win_length] = hann_window(config.win_length)

  frames = np.lib.stride_tricks.sliding_window_view(padded, config.n_fft)
  frames = frames[::config.hop_length][:n_frames]
  spectrum = scipy.fft.rfft(frames * window, axis = -1)
  return np.abs(spectrum).T

def hz_to_mel(freq):
  """ HTK mel scale. """
  return 2595.0 * np.log10(1.0 + np.asarray(freq, dtype = np.float64) / 700.0)

def mel_to_hz(mel):
  return 700.0 * (10.0 ** (np.asarray(mel, dtype = np.float64) / 2595.0) - 1.0)

def mel_band_edges(config):
  """ The n_mels + 2 band edges in Hz, equally spaced in mel from fmin to
      fmax. Filter k rises from edge k, peaks at edge k+1 and falls to edge
      k+2. """

  mel_edges = np.linspace(hz_to_mel(config.fmin_hz), hz_to_mel(config.fmax_hz), config.n_mels + 2)
  return mel_to_hz(mel_edges)

def mel_filterbank(config = None):
  """ Triangular filters on the HTK mel scale, shape (n_mels, n_fft/2 + 1). """

  if (config is None):
    config = MelConfig()
  config.checkNyquist()

  edges = mel_band_edges(config)
  fft_freqs = np.arange(config.n_bins) * config.sample_rate_hz / float(config.n_fft)

  lower  = edges[:-2, np.newaxis]
  center = edges[1:-1, np.newaxis]
  upper  = edges[2:, np.newaxis]
  rising  = (fft_freqs - lower) / (center - lower)
  falling = (upper - fft_freqs) / (upper - center)
  return np.maximum(0.0, np.minimum(rising, falling))

def mel_spectrogram(buffer, config = None):
  """ Log-mel spectrogram: ln(max(filterbank . |STFT|, 1e-5)). """

  if (config is None):
    config = MelConfig()

  magnitude = stft_magnitude(buffer, config)
  mel = np.dot(mel_filterbank(config), magnitude)
  return MelSpectrogram(np.log(np.maximum(mel, LOG_FLOOR)), config)

def mel_cepstrum(mel, n_coeffs = 13):
  """ Mel cepstra: the orthonormal DCT-II of every frame along the mel axis,
      coefficients 1 .. n_coeffs. The 0th (overall energy) coefficient is left
      out. Returns shape (n_coeffs, n_frames). """

  data = getattr(mel, "data", mel)
  n_mels = data.shape[0]
  if not (1 <= n_coeffs <= n_mels - 1):
    raise ValueError("n_coeffs must lie in 1..%d for %d mel bands, got %d" % (n_mels - 1, n_mels, n_coeffs))

  cepstrum = scipy.fft.dct(np.asarray(data, dtype = np.float64), type = 2, norm = "ortho", axis = 0)
  return cepstrum[1:n_coeffs + 1]
