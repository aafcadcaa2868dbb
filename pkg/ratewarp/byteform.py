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

""" This module converts numbers and sample arrays to their byte
    representation and vice versa. Both container formats we handle (RIFF/WAVE
    and the RWV1 weight file) are little endian, so that is the default. """

import struct

import numpy as np

# The struct module does the scalar work once the byte order is pinned with
# "<" or ">". These tables give the lower and upper bounds for both unsigned
# (False) and signed (True) integers, so we can report a sensible error
# instead of struct's.
min_int_values = {
  False: {1: 0, 2: 0, 4: 0, 8: 0},
  True:  {1: -128, 2: -32768, 4: -2147483648, 8: -9223372036854775808}
}
max_int_values = {
  False: {1: 255, 2: 65535, 4: 4294967295, 8: 18446744073709551615},
  True:  {1: 127, 2: 32767, 4: 2147483647, 8: 9223372036854775807}
}

def itob(num, num_bytes, signed = False, big_endian = False):
  """ Converts an integer number to its binary representation, with the
      required number of bytes (1, 2, 4 or 8). """

  if (num < min_int_values[signed][num_bytes]) or (num > max_int_values[signed][num_bytes]):
    raise ValueError("The integer %d falls outside the range for encoding in %d bytes!" % (num, num_bytes))

  control_chars = _intControlChars(num_bytes, signed, big_endian)
  return struct.pack(control_chars, num)

def btoi(byte_str, signed = False, big_endian = False):
  """ Converts a string of 1, 2, 4 or 8 bytes to its integer number. """

  control_chars = _intControlChars(len(byte_str), signed, big_endian)
  return struct.unpack(control_chars, byte_str)[0]

def atob(values, dtype):
  """ Converts a sequence of numbers to a byte string with the numpy dtype
      string dtype (like "<i2" or "<f4"). The dtype must carry its byte order.
  """

  return np.ascontiguousarray(values, dtype = _checkedDtype(dtype)).tobytes()

def btoa(byte_str, dtype):
  """ Converts a byte string to a fresh, writable numpy array of the given
      dtype. The number of bytes should be a multiple of the word width. """

  dtype = _checkedDtype(dtype)
  if ((len(byte_str) % dtype.itemsize) != 0):
    raise ValueError("The number of bytes (%d) does not match the word width %d!" % (len(byte_str), dtype.itemsize))

  return np.frombuffer(byte_str, dtype = dtype).copy()

def _checkedDtype(dtype):
  """ Make sure a dtype has an explicit byte order, so the result does not
      depend on the machine we run on. """

  dtype = np.dtype(dtype)
  if (dtype.itemsize > 1) and (dtype.byteorder not in "<>"):
    # "=" and "|" mean native; pin them to little endian
    dtype = dtype.newbyteorder("<")
  return dtype

def _intControlChars(length, signed, big_endian = False):
  """ Chooses the format character for struct.(un)pack for integer numbers. """

  # Choose the format letter
  if (length == 1):
    format = "b" # Char
  elif (length == 2):
    format = "h" # Short
  elif (length == 4):
    format = "i" # Int, which is 4 bytes in standard mode
  elif (length == 8):
    format = "q" # Long long
  else:
    raise ValueError("You need either 1, 2, 4 or 8 bytes for an integer number, not %d." % length)

  # Modify the format letter to either signed or unsigned
  if (not signed):
    format = format.upper()

  return _byteOrderChar(big_endian) + format

def _byteOrderChar(big_endian):
  """ Choose the control character at the start of the format string, for
      byte order and standard alignment. """

  if (big_endian):
    return ">"
  return "<"
