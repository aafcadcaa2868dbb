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

import numpy as np
import pytest

from ratewarp import audio, generator, spectral, weights

def pytest_configure(config):
  config.addinivalue_line("markers", "slow: long running acceptance checks")

def make_tone(freq_hz = 220.0, seconds = 1.0, sample_rate_hz = 22050, amplitude = 0.5, pad_seconds = 0.0):
  """ A sine, optionally with silence before and after it. """

  n = int(round(seconds * sample_rate_hz))
  tone = amplitude * np.sin(2.0 * np.pi * freq_hz * np.arange(n) / sample_rate_hz)
  pad = np.zeros(int(round(pad_seconds * sample_rate_hz)))
  return audio.AudioBuffer(np.concatenate((pad, tone, pad)), sample_rate_hz)

@pytest.fixture
def tone():
  return make_tone

@pytest.fixture(scope = "session")
def small_config():
  """ A narrow generator with the default upsampling layout. """
  return generator.GeneratorConfig(base_channels = 16, resblock_kernel_sizes = (3, 5), resblock_dilations = ((1, 3), (1, 3)))

@pytest.fixture(scope = "session")
def small_store(small_config):
  return weights.init_random(small_config, 7)

def random_mel(n_frames, n_mels = 80, seed = 0):
  rng = np.random.default_rng(seed)
  return spectral.MelSpectrogram(rng.normal(-4.0, 2.0, size = (n_mels, n_frames)))

@pytest.fixture
def mel_of():
  return random_mel

def write_utterance(root, speaker, rate, utt_id, seconds = 0.2, mora = None):
  """ A tone recording at root/speaker/rate/utt_id.wav, with a mora count
      next to it if given. """

  folder = root / speaker / rate
  folder.mkdir(parents = True, exist_ok = True)
  path = folder / ("%s.wav" % utt_id)
  audio.save_wav(make_tone(seconds = seconds), path)
  if (mora is not None):
    path.with_suffix(".mora").write_text("%s\n" % mora)
  return path

def envelope_store(config):
  """ Weights under which the generator passes the mean log-mel level, offset
      so that silence maps to zero, through a single channel. Silent input
      gives silent output and loud input gives a steady positive level. """

  tensors = {name: np.zeros(shape, dtype = np.float32) for name, shape in generator.parameter_shapes(config).items()}
  tensors["input_conv.weight"][0, :, 3] = 1.0 / config.mel_channels
  tensors["input_conv.bias"][0] = -np.log(spectral.LOG_FLOOR)
  for i in range(config.n_blocks):
    tensors["ups.%d.weight" % i][0, 0, :] = 0.5
  tensors["output_conv.weight"][0, 0, 3] = 0.1
  return weights.WeightStore(config, tensors)
