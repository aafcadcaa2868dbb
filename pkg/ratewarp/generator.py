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

""" The mel-to-waveform generator: an input convolution, four blocks that
    each upsample the time axis with a transposed convolution and refine it
    with a multi-receptive-field residual stack, and an output convolution.

    The speaking rate is changed by an interpolation layer that stretches the
    time axis either of the mel spectrogram or of the hidden feature after one
    of the four blocks. Every block after the insertion point multiplies the
    length change by its upsampling rate. """

import enum
import logging
import math
import time
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import audio, interp, layers

log = logging.getLogger(__name__)

@dataclass(frozen = True)
class GeneratorConfig:
  """ Architecture of the generator. Upsample kernels are twice their rates,
      the rates multiply to hop_length, and the channel count halves after
      every block starting from base_channels. Each residual kernel size has
      its own tuple of dilations. """

  mel_channels:          int = 80
  base_channels:         int = 128
  upsample_rates:        tuple = (8, 8, 2, 2)
  upsample_kernel_sizes: tuple = (16, 16, 4, 4)
  resblock_kernel_sizes: tuple = (3, 7, 11)
  resblock_dilations:    tuple = ((1, 3, 5), (1, 3, 5), (1, 3, 5))
  leaky_slope:           float = 0.1
  output_slope:          float = 0.01
  hop_length:            int = 256

  def __post_init__(self):
    # Lists from JSON become tuples, so configs compare and hash by value
    object.__setattr__(self, "upsample_rates", tuple(int(u) for u in self.upsample_rates))
    object.__setattr__(self, "upsample_kernel_sizes", tuple(int(k) for k in self.upsample_kernel_sizes))
    object.__setattr__(self, "resblock_kernel_sizes", tuple(int(k) for k in self.resblock_kernel_sizes))
    object.__setattr__(self, "resblock_dilations", tuple(tuple(int(d) for d in ds) for ds in self.resblock_dilations))

    if (self.mel_channels < 1) or (self.base_channels < 1):
      raise ValueError("Channel counts must be positive")
    if (len(self.upsample_rates) == 0) or (len(self.upsample_rates) != len(self.upsample_kernel_sizes)):
      raise ValueError("Need one kernel size per upsample rate")
    for rate, kernel in zip(self.upsample_rates, self.upsample_kernel_sizes):
      if (rate < 2) or (rate % 2 != 0) or (kernel != 2 * rate):
        raise ValueError("Upsample rates must be even and kernels twice the rate, got rate %d kernel %d" % (rate, kernel))
    if (math.prod(self.upsample_rates) != self.hop_length):
      raise ValueError("Upsample rates multiply to %d, not the hop length %d" % (math.prod(self.upsample_rates), self.hop_length))
    if (self.base_channels >> len(self.upsample_rates) < 1):
      raise ValueError("base_channels %d cannot be halved %d times" % (self.base_channels, len(self.upsample_rates)))
    if (len(self.resblock_kernel_sizes) == 0) or (len(self.resblock_kernel_sizes) != len(self.resblock_dilations)):
      raise ValueError("Need one dilation tuple per residual kernel size")
    for kernel, dilations in zip(self.resblock_kernel_sizes, self.resblock_dilations):
      if (kernel < 1) or (kernel % 2 == 0):
        raise ValueError("Residual kernel sizes must be odd, got %d" % kernel)
      if (len(dilations) == 0) or (min(dilations) < 1):
        raise ValueError("Dilations must be positive, got %s" % (dilations,))

  @property
  def n_blocks(self):
    return len(self.upsample_rates)

  def channels(self, block):
    """ Channel count after the given number of blocks. """
    return self.base_channels >> block

  def upsampleFactor(self, block):
    """ Product of the first `block` upsample rates. """
    return math.prod(self.upsample_rates[:block])

  def toDict(self):
    return {
      "mel_channels":          self.mel_channels,
      "base_channels":         self.base_channels,
      "upsample_rates":        list(self.upsample_rates),
      "upsample_kernel_sizes": list(self.upsample_kernel_sizes),
      "resblock_kernel_sizes": list(self.resblock_kernel_sizes),
      "resblock_dilations":    [list(ds) for ds in self.resblock_dilations],
      "leaky_slope":           self.leaky_slope,
      "output_slope":          self.output_slope,
      "hop_length":            self.hop_length
    }

  @classmethod
  def fromDict(cls, values):
    unknown = set(values) - set(cls.__dataclass_fields__)
    if (unknown):
      raise ValueError("Unknown generator config keys: %s" % ", ".join(sorted(unknown)))
    try:
      return cls(**values)
    except TypeError as e:
      raise ValueError("Invalid generator config: %s" % e) from e

def parameter_shapes(config):
  """ Name and shape of every parameter tensor, in storage order. """

  shapes = OrderedDict()
  shapes["input_conv.weight"] = (config.base_channels, config.mel_channels, 7)
  shapes["input_conv.bias"]   = (config.base_channels,)

  for i, kernel in enumerate(config.upsample_kernel_sizes):
    c_in, c_out = config.channels(i), config.channels(i + 1)
    shapes["ups.%d.weight" % i] = (c_in, c_out, kernel)
    shapes["ups.%d.bias" % i]   = (c_out,)

    for j, (res_kernel, dilations) in enumerate(zip(config.resblock_kernel_sizes, config.resblock_dilations)):
      for d in range(len(dilations)):
        prefix = "blocks.%d.%d" % (i, j)
        shapes["%s.convs1.%d.weight" % (prefix, d)] = (c_out, c_out, res_kernel)
        shapes["%s.convs1.%d.bias" % (prefix, d)]   = (c_out,)
        shapes["%s.convs2.%d.weight" % (prefix, d)] = (c_out, c_out, 1)
        shapes["%s.convs2.%d.bias" % (prefix, d)]   = (c_out,)

  shapes["output_conv.weight"] = (1, config.channels(config.n_blocks), 7)
  shapes["output_conv.bias"]   = (1,)
  return shapes

class InsertionPoint(enum.Enum):
  """ Where the interpolation layer sits: on the mel input, or after one of
      the four upsampling blocks. """

  MEL           = "mel"
  AFTER_BLOCK_1 = "1"
  AFTER_BLOCK_2 = "2"
  AFTER_BLOCK_3 = "3"
  AFTER_BLOCK_4 = "4"

  @property
  def block(self):
    """ Number of blocks run before the stretch. """
    return 0 if (self is InsertionPoint.MEL) else int(self.value)

@dataclass(frozen = True)
class RateConversionSpec:
  factor:    float
  insertion: InsertionPoint = InsertionPoint.MEL
  method:    interp.InterpolationMethod = interp.InterpolationMethod.LINEAR

  def __post_init__(self):
    object.__setattr__(self, "insertion", InsertionPoint(self.insertion))
    object.__setattr__(self, "method", interp.InterpolationMethod(self.method))
    if not (math.isfinite(self.factor) and self.factor > 0):
      raise ValueError("Conversion factor must be positive and finite, got %r" % (self.factor,))

  def outputLength(self, n_frames, config):
    """ Samples produced from n_frames mel frames. """

    upsampled = config.upsampleFactor(self.insertion.block)
    return interp.target_length(n_frames * upsampled, self.factor) * (config.hop_length // upsampled)

class Generator:
  """ Forward pass of the generator over a WeightStore. Holds no state besides
      the store, so one instance can serve concurrent calls. """

  def __init__(self, store, config = None, resample_params = None):
    if (config is None):
      config = store.config
    if (store.config != config):
      raise ValueError("Weights were made for a different generator config")

    self.store  = store
    self.config = config
    self.resample_params = resample_params

  def _stretch(self, x, spec, counter):
    start = time.perf_counter()
    x = interp.stretch_time(x, spec.factor, spec.method, self.resample_params, counter)
    if (counter is not None):
      counter.conversion_seconds += time.perf_counter() - start
    return np.asarray(x, dtype = np.float32)

  def _residualStack(self, x, block, counter):
    """ Average over the kernel sizes of each kernel's chain of dilated
        residual steps. """

    config = self.config
    tensor = self.store.getTensor
    total = None
    for j, (kernel, dilations) in enumerate(zip(config.resblock_kernel_sizes, config.resblock_dilations)):
      prefix = "blocks.%d.%d" % (block, j)
      branch = x
      for d, dilation in enumerate(dilations):
        step = layers.leaky_relu(branch, config.leaky_slope)
        step = layers.conv1d(step, tensor("%s.convs1.%d.weight" % (prefix, d)), tensor("%s.convs1.%d.bias" % (prefix, d)),
                             dilation = dilation, padding = dilation * (kernel - 1) // 2, counter = counter)
        step = layers.leaky_relu(step, config.leaky_slope)
        step = layers.conv1d(step, tensor("%s.convs2.%d.weight" % (prefix, d)), tensor("%s.convs2.%d.bias" % (prefix, d)),
                             counter = counter)
        branch = branch + step
      total = branch if (total is None) else total + branch
    return total / float(len(config.resblock_kernel_sizes))

  def forward(self, mel, spec = None, counter = None):
    """ Synthesize a waveform from mel. With a RateConversionSpec the time
        axis is stretched at its insertion point. """

    config = self.config
    tensor = self.store.getTensor

    if (mel.n_mels != config.mel_channels):
      raise ValueError("Mel spectrogram has %d channels, the generator expects %d" % (mel.n_mels, config.mel_channels))
    if (mel.config.hop_length != config.hop_length):
      raise ValueError("Mel hop length %d does not match the generator's %d" % (mel.config.hop_length, config.hop_length))

    log.debug("Synthesizing %d frames, rate conversion %s", mel.n_frames, spec)
    x = np.asarray(mel.data, dtype = np.float32)
    if (spec is not None) and (spec.insertion is InsertionPoint.MEL):
      x = self._stretch(x, spec, counter)

    x = layers.conv1d(x, tensor("input_conv.weight"), tensor("input_conv.bias"), padding = 3, counter = counter)
    for i, rate in enumerate(config.upsample_rates):
      x = layers.leaky_relu(x, config.leaky_slope)
      x = layers.transposed_conv1d(x, tensor("ups.%d.weight" % i), tensor("ups.%d.bias" % i),
                                   stride = rate, padding = rate // 2, counter = counter)
      x = self._residualStack(x, i, counter)
      if (spec is not None) and (spec.insertion.block == i + 1):
        x = self._stretch(x, spec, counter)

    x = layers.leaky_relu(x, config.output_slope)
    x = layers.conv1d(x, tensor("output_conv.weight"), tensor("output_conv.bias"), padding = 3, counter = counter)
    return audio.AudioBuffer(np.tanh(x[0]), mel.config.sample_rate_hz)

def forward(mel, store, config = None, counter = None):
  """ Plain synthesis: n_frames * hop_length samples. """
  return Generator(store, config).forward(mel, counter = counter)

def forward_with_rate(mel, spec, store, config = None, counter = None, resample_params = None):
  """ Synthesis with the interpolation layer described by spec. """
  return Generator(store, config, resample_params).forward(mel, spec, counter)
