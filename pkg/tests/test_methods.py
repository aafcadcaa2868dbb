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

from ratewarp import generator, interp, methods, wsola

@pytest.fixture(scope = "module")
def synth(small_store):
  return generator.Generator(small_store)

def test_method_list():
  assert len(methods.PROPOSED) == 10
  assert len(methods.ALL) == 11
  names = [method.name for method in methods.ALL]
  assert len(set(names)) == 11
  assert names[0] == "mel-kaiser"
  assert "4-linear" in names
  assert names[-1] == "waveform-wsola"
  assert methods.REFERENCE.name == "none-hifigan"

def test_by_name():
  assert methods.by_name("2-kaiser") == methods.Method("2", "kaiser")
  assert methods.by_name("waveform-wsola").isBaseline
  assert not methods.by_name("mel-linear").isBaseline
  with pytest.raises(ValueError):
    methods.by_name("5-linear")

def test_proposed_conversion(synth, mel_of):
  mel = mel_of(10)
  buffer, conversion = methods.by_name("2-kaiser").convert(mel, 2.0, synth)
  spec = generator.RateConversionSpec(2.0, "2", "kaiser")
  assert len(buffer) == spec.outputLength(10, synth.config)
  assert conversion > 0.0

def test_baseline_conversion(synth, mel_of):
  buffer, conversion = methods.BASELINE.convert(mel_of(10), 0.5, synth)
  assert len(buffer) == interp.target_length(2560, 0.5)
  assert conversion > 0.0

def test_reference_conversion(synth, mel_of):
  buffer, conversion = methods.REFERENCE.convert(mel_of(10), 2.0, synth)
  assert len(buffer) == 2560
  assert conversion == 0.0

@pytest.mark.parametrize("factor", [0.5, 1.25, 2.0])
def test_baseline_on_less_than_a_frame(synth, mel_of, factor):
  # Two frames make 512 samples, half a WSOLA frame
  buffer, _ = methods.BASELINE.convert(mel_of(2), factor, synth)
  assert len(buffer) == interp.target_length(512, factor)
  assert buffer.sample_rate_hz == 22050

def test_baseline_padding_keeps_the_audio(synth, mel_of):
  mel = mel_of(3)
  generated = synth.forward(mel)
  buffer, _ = methods.BASELINE.convert(mel, 1.0, synth, wsola.WsolaConfig(tolerance = 0))
  assert len(buffer) == len(generated)
  # Sample 0 sits under a zero window weight
  assert np.allclose(buffer.samples[1:], generated.samples[1:], atol = 1e-5)
