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

""" The speaking rate conversion methods that are compared: the interpolation
    layer at each of the five insertion points with each of the two
    interpolation methods, and WSOLA applied to the generator's output. """

import time
from dataclasses import dataclass

import numpy as np

from . import audio, generator, interp, layers, wsola

# Labels used in reports for WSOLA and for the plain generator
WAVEFORM = "waveform"
WSOLA    = "wsola"
NONE     = "none"
HIFIGAN  = "hifigan"

def _wsolaPadded(buffer, factor, config):
  """ WSOLA on a buffer that may be shorter than one frame: the buffer is
      zero-padded to frame_length and the result cut back to
      target_length(len(buffer), factor). """

  n = len(buffer)
  if (n >= config.frame_length):
    return wsola.wsola(buffer, factor, config)

  padded = np.zeros(config.frame_length, dtype = np.float32)
  padded[:n] = buffer.samples
  converted = wsola.wsola(audio.AudioBuffer(padded, buffer.sample_rate_hz), factor, config)
  return audio.AudioBuffer(converted.samples[:interp.target_length(n, factor)], buffer.sample_rate_hz)

@dataclass(frozen = True)
class Method:
  """ insertion and method are the report labels; for proposed methods they
      are InsertionPoint and InterpolationMethod values. """

  insertion: str
  method:    str

  @property
  def name(self):
    return "%s-%s" % (self.insertion, self.method)

  @property
  def isBaseline(self):
    return self.method == WSOLA

  def convert(self, mel, factor, synth, wsola_config = None):
    """ Convert mel to a waveform at the given factor. Returns the buffer and
        the seconds spent in the rate conversion itself. """

    if (self.method == HIFIGAN):
      return synth.forward(mel), 0.0

    if (self.isBaseline):
      generated = synth.forward(mel)
      start = time.perf_counter()
      converted = _wsolaPadded(generated, factor, wsola_config or wsola.WsolaConfig())
      return converted, time.perf_counter() - start

    counter = layers.OpCounter()
    spec = generator.RateConversionSpec(factor, self.insertion, self.method)
    return synth.forward(mel, spec, counter), counter.conversion_seconds

PROPOSED = tuple(Method(insertion.value, method.value)
                 for insertion in generator.InsertionPoint for method in interp.InterpolationMethod)
BASELINE = Method(WAVEFORM, WSOLA)
ALL = PROPOSED + (BASELINE,)
REFERENCE = Method(NONE, HIFIGAN)

def by_name(name):
  for method in ALL:
    if (method.name == name):
      return method
  raise ValueError("Unknown method %r, use one of %s" % (name, ", ".join(m.name for m in ALL)))
