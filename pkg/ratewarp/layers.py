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

""" The building blocks of the generator: 1-D convolution, transposed
    convolution and leaky ReLU on (channels, time) arrays, with an optional
    counter of multiply-accumulate operations. """

import numpy as np

class OpCounter:
  """ Tallies the multiply-accumulates of a forward pass, and the seconds
      spent in the interpolation layer. """

  def __init__(self):
    self.macs = 0
    self.conversion_seconds = 0.0

  def add(self, macs):
    self.macs += int(macs)

def leaky_relu(x, slope):
  return np.where(x > 0, x, slope * x)

def _checkInput(x, weight, in_axis):
  if (x.ndim != 2):
    raise ValueError("Expected a (channels, time) input, got shape %s" % (x.shape,))
  if (weight.ndim != 3):
    raise ValueError("Expected a 3-D weight tensor, got shape %s" % (weight.shape,))
  if (weight.shape[in_axis] != x.shape[0]):
    raise ValueError("Input has %d channels, weight expects %d" % (x.shape[0], weight.shape[in_axis]))

def _addBias(y, bias):
  if (bias is None):
    return y
  bias = np.asarray(bias)
  if (bias.shape != (y.shape[0],)):
    raise ValueError("Bias of shape %s does not match %d output channels" % (bias.shape, y.shape[0]))
  return y + bias[:, np.newaxis]

def conv1d(x, weight, bias = None, stride = 1, dilation = 1, padding = 0, counter = None):
  """ Cross-correlation of x (C_in, T) with weight (C_out, C_in, K). The
      output has floor((T + 2 padding - dilation (K - 1) - 1) / stride) + 1
      frames. """

  x = np.asarray(x)
  weight = np.asarray(weight)
  _checkInput(x, weight, 1)
  if (stride < 1) or (dilation < 1) or (padding < 0):
    raise ValueError("Invalid stride %d, dilation %d or padding %d" % (stride, dilation, padding))

  c_out, c_in, kernel = weight.shape
  n_in = x.shape[1]
  n_out = (n_in + 2 * padding - dilation * (kernel - 1) - 1) // stride + 1
  if (n_out < 1):
    raise ValueError("Input of %d frames is too short for kernel %d with dilation %d" % (n_in, kernel, dilation))

  padded = np.pad(x, ((0, 0), (padding, padding)))
  y = np.zeros((c_out, n_out), dtype = np.result_type(x, weight))
  span = stride * (n_out - 1) + 1
  for k in range(kernel):
    start = k * dilation
    y += np.dot(weight[:, :, k], padded[:, start:start + span:stride])

  if (counter is not None):
    counter.add(c_out * c_in * kernel * n_out)
  return _addBias(y, bias)

def transposed_conv1d(x, weight, bias = None, stride = 1, padding = 0, counter = None):
  """ Transposed convolution of x (C_in, T) with weight (C_in, C_out, K): every
      input frame scatters its kernel-weighted copy to stride-spaced output
      positions, and padding frames are cropped from both ends. The output has
      (T - 1) stride - 2 padding + K frames. """

  x = np.asarray(x)
  weight = np.asarray(weight)
  _checkInput(x, weight, 0)
  if (stride < 1) or (padding < 0):
    raise ValueError("Invalid stride %d or padding %d" % (stride, padding))

  c_in, c_out, kernel = weight.shape
  n_in = x.shape[1]
  n_full = (n_in - 1) * stride + kernel
  if (n_full - 2 * padding < 1):
    raise ValueError("Padding %d crops away the whole output" % padding)

  full = np.zeros((c_out, n_full), dtype = np.result_type(x, weight))
  span = (n_in - 1) * stride + 1
  for k in range(kernel):
    full[:, k:k + span:stride] += np.dot(weight[:, :, k].T, x)

  if (counter is not None):
    counter.add(c_in * c_out * kernel * n_in)
  return _addBias(full[:, padding:n_full - padding], bias)
