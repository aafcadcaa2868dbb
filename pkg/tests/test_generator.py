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

import itertools
import statistics
import time

import numpy as np
import pytest

from ratewarp import generator, interp, layers, spectral, weights

STANDARD_FACTORS = (0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0)
ALL_SPECS = list(itertools.product(generator.InsertionPoint, interp.InterpolationMethod))

@pytest.fixture(scope = "module")
def default_store():
  return weights.init_random(generator.GeneratorConfig(), 0)

def test_config_defaults():
  config = generator.GeneratorConfig()
  assert config.upsample_rates == (8, 8, 2, 2)
  assert config.upsample_kernel_sizes == (16, 16, 4, 4)
  assert [config.channels(i) for i in range(5)] == [128, 64, 32, 16, 8]
  assert [config.upsampleFactor(i) for i in range(5)] == [1, 8, 64, 128, 256]

@pytest.mark.parametrize("kwargs", [
  {"upsample_rates": (8, 8, 2, 4), "upsample_kernel_sizes": (16, 16, 4, 8)},
  {"upsample_kernel_sizes": (16, 16, 4, 5)},
  {"upsample_kernel_sizes": (16, 16, 4)},
  {"base_channels": 8},
  {"resblock_kernel_sizes": (3, 4, 11)},
  {"resblock_dilations": ((1, 3, 5),)},
  {"mel_channels": 0}
])
def test_config_validation(kwargs):
  with pytest.raises(ValueError):
    generator.GeneratorConfig(**kwargs)

def test_config_dict():
  config = generator.GeneratorConfig(base_channels = 32)
  assert generator.GeneratorConfig.fromDict(config.toDict()) == config
  with pytest.raises(ValueError):
    generator.GeneratorConfig.fromDict(dict(config.toDict(), width = 3))

def test_parameter_shapes():
  shapes = generator.parameter_shapes(generator.GeneratorConfig())
  assert shapes["input_conv.weight"] == (128, 80, 7)
  assert shapes["ups.0.weight"] == (128, 64, 16)
  assert shapes["ups.3.weight"] == (16, 8, 4)
  assert shapes["blocks.1.2.convs1.2.weight"] == (32, 32, 11)
  assert shapes["blocks.1.2.convs2.2.weight"] == (32, 32, 1)
  assert shapes["output_conv.weight"] == (1, 8, 7)
  assert len(shapes) == 4 + 4 * (2 + 3 * 3 * 4)

def test_insertion_points():
  assert len(generator.InsertionPoint) == 5
  assert [p.block for p in generator.InsertionPoint] == [0, 1, 2, 3, 4]
  assert generator.InsertionPoint("mel") is generator.InsertionPoint.MEL

def test_spec_validation():
  spec = generator.RateConversionSpec(2.0, "2", "kaiser")
  assert spec.insertion is generator.InsertionPoint.AFTER_BLOCK_2
  assert spec.method is interp.InterpolationMethod.KAISER
  with pytest.raises(ValueError):
    generator.RateConversionSpec(0.0)
  with pytest.raises(ValueError):
    generator.RateConversionSpec(1.0, "5")

@pytest.mark.parametrize("n_frames", [87, 1])
def test_forward_length_and_range(default_store, mel_of, n_frames):
  out = generator.forward(mel_of(n_frames), default_store)
  assert len(out) == n_frames * 256
  assert out.sample_rate_hz == 22050
  assert np.all(np.abs(out.samples) <= 1.0)

def test_forward_is_deterministic(small_store, mel_of):
  mel = mel_of(5)
  assert np.array_equal(generator.forward(mel, small_store).samples, generator.forward(mel, small_store).samples)

def test_length_contract_examples(small_store, mel_of):
  mel = mel_of(100)
  spec = generator.RateConversionSpec(2.0, "mel", "linear")
  assert len(generator.forward_with_rate(mel, spec, small_store)) == 12800
  spec = generator.RateConversionSpec(2.0, "2", "kaiser")
  assert len(generator.forward_with_rate(mel, spec, small_store)) == 12800

@pytest.mark.parametrize("insertion, method", ALL_SPECS)
def test_identity_factor(small_store, mel_of, insertion, method):
  mel = mel_of(6)
  plain = generator.forward(mel, small_store)
  warped = generator.forward_with_rate(mel, generator.RateConversionSpec(1.0, insertion, method), small_store)
  assert np.max(np.abs(plain.samples - warped.samples)) <= 1e-6

@pytest.mark.slow
@pytest.mark.parametrize("insertion, method", ALL_SPECS)
def test_length_law(small_store, mel_of, insertion, method):
  config = small_store.config
  for n_frames, factor in itertools.product((1, 13, 87), STANDARD_FACTORS):
    spec = generator.RateConversionSpec(factor, insertion, method)
    upsampled = config.upsampleFactor(insertion.block)
    expected = interp.target_length(n_frames * upsampled, factor) * (256 // upsampled)
    assert spec.outputLength(n_frames, config) == expected
    assert len(generator.forward_with_rate(mel_of(n_frames), spec, small_store)) == expected

def test_length_law_at_full_width(default_store, mel_of):
  mel = mel_of(13)
  for insertion in generator.InsertionPoint:
    spec = generator.RateConversionSpec(1.75, insertion, "kaiser")
    assert len(generator.forward_with_rate(mel, spec, default_store)) == spec.outputLength(13, default_store.config)

def _macs(store, mel, factor, insertion):
  counter = layers.OpCounter()
  generator.forward_with_rate(mel, generator.RateConversionSpec(factor, insertion, "linear"), store, counter = counter)
  return counter.macs

def test_work_grows_with_inserted_length(small_store, mel_of):
  mel = mel_of(20)
  at_mel = [_macs(small_store, mel, f, "mel") for f in (0.5, 1.0, 2.0)]
  at_end = [_macs(small_store, mel, f, "4") for f in (0.5, 1.0, 2.0)]
  assert at_mel[0] > at_mel[1] > at_mel[2]

  spread = lambda counts: (max(counts) - min(counts)) / float(min(counts))
  assert spread(at_end) < spread(at_mel)

def test_conversion_time_is_recorded(small_store, mel_of):
  counter = layers.OpCounter()
  spec = generator.RateConversionSpec(0.5, "3", "kaiser")
  generator.forward_with_rate(mel_of(4), spec, small_store, counter = counter)
  assert counter.conversion_seconds > 0.0

def test_mel_channel_mismatch(small_store):
  with pytest.raises(ValueError):
    generator.forward(spectral.MelSpectrogram(np.zeros((40, 3))), small_store)

def test_store_config_mismatch(small_store):
  with pytest.raises(ValueError):
    generator.Generator(small_store, generator.GeneratorConfig())

@pytest.mark.slow
def test_time_falls_with_faster_speech(mel_of):
  store = weights.init_random(generator.GeneratorConfig(base_channels = 64), 0)
  synth = generator.Generator(store)
  mel = mel_of(32)

  medians = []
  for factor in (0.5, 1.0, 2.0):
    spec = generator.RateConversionSpec(factor, "mel", "linear")
    synth.forward(mel, spec)
    timings = []
    for run in range(20):
      start = time.perf_counter()
      synth.forward(mel, spec)
      timings.append(time.perf_counter() - start)
    medians.append(statistics.median(timings))

  assert medians[0] > medians[1] > medians[2]
  assert medians[0] >= 1.5 * medians[2]
