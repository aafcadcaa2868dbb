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

""" This module contains classes for the sample formats we can store in a
    WAVE file. Each class provides an encode method and a
    decode method, to respectively convert an array of amplitudes into a byte
    stream, or a byte stream back into amplitudes.
    The FORMATS dict matches each WAVE format tag to the proper class, NAMES
    does the same for the names used on the command line. """

import numpy as np

from . import byteform

class DataType:
  """ The base class for each sample format. Derived classes should set the
      following parameters:
      - tag:          the WAVE format tag (1 = PCM, 3 = IEEE float)
      - name:         the short name of the format
      - word_width:   the number of bytes in a sample
      - dtype:        the little endian numpy dtype string of a sample
  """

  @classmethod
  def encode(cls, samples):
    """ Encode an array of amplitudes. Values outside [-1, 1] are hard clipped.
    """

    samples = np.clip(np.asarray(samples, dtype = np.float64), -1.0, 1.0)
    return byteform.atob(cls.toWords(samples), cls.dtype)

  @classmethod
  def decode(cls, byte_str):
    """ Decode a byte string into a float32 array of amplitudes. """

    return cls.fromWords(byteform.btoa(byte_str, cls.dtype))

  @classmethod
  def toWords(cls, samples):
    return samples

  @classmethod
  def fromWords(cls, words):
    return words.astype(np.float32)

class Pcm16(DataType):
  """ 16 bit signed integer PCM. Amplitudes are scaled by 32768, so the
      largest positive amplitude that survives is 32767/32768. """

  tag        = 1
  name       = "pcm16"
  word_width = 2
  dtype      = "<i2"

  @classmethod
  def toWords(cls, samples):
    words = np.floor(samples * 32768.0 + 0.5)
    return np.clip(words, -32768, 32767).astype(np.int16)

  @classmethod
  def fromWords(cls, words):
    return (words.astype(np.float64) / 32768.0).astype(np.float32)

class Float32(DataType):
  """ 32 bit IEEE float. Lossless for float32 amplitudes within [-1, 1]. """

  tag        = 3
  name       = "float32"
  word_width = 4
  dtype      = "<f4"

  @classmethod
  def toWords(cls, samples):
    return samples.astype(np.float32)

FORMATS = {
  Pcm16.tag:   Pcm16,
  Float32.tag: Float32
}

NAMES = {
  Pcm16.name:   Pcm16,
  Float32.name: Float32
}
