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

import io

class DataBlock:
  """ A window onto binary data: a byte range of an open file, or of an
      in-memory bytes object. Positions given to read() and seek() count from
      the start of the window. A file window may have no known length, in
      which case reads run on to the end of the file. """

  def __init__(self, fp = None, offset = 0, length = None, data = None):
    if (fp is not None) and (data is not None):
      raise TypeError("A DataBlock wraps either a file or bytes, not both")

    offset = offset or 0
    if (data is not None):
      fp = io.BytesIO(bytes(data))
      if (length is None):
        length = len(data) - offset
    elif (fp is None):
      fp, length = io.BytesIO(), 0

    self.source = fp
    self.start  = offset
    self.size   = length
    self.cursor = 0

  def getDataLength(self):
    """ Window length in bytes, None when it runs to the end of the file. """
    return self.size

  def getDataOffset(self):
    """ Where the window starts in the underlying file or bytes. """
    return self.start

  def tell(self):
    return self.cursor

  def seek(self, position):
    if (position < 0) or ((self.size is not None) and (position > self.size)):
      raise IOError("Position %d lies outside a data block of %s bytes" % (position, self.size))
    self.cursor = position

  def read(self, num_bytes = None, seek = None):
    """ Read num_bytes from the current position, or first move to seek. With
        no num_bytes, read to the end of the window. Fewer bytes come back
        when the data ends early. """

    if (seek is not None):
      self.seek(seek)

    if (self.size is not None):
      remaining = self.size - self.cursor
      num_bytes = remaining if (num_bytes is None) else min(num_bytes, remaining)

    self.source.seek(self.start + self.cursor)
    data = self.source.read(-1 if (num_bytes is None) else num_bytes)
    self.cursor += len(data)
    return data

  def readExactly(self, num_bytes, seek = None):
    """ Like read, but a short read is an IOError. """

    data = self.read(num_bytes, seek)
    if (len(data) != num_bytes):
      raise IOError("Truncated data: wanted %d bytes at offset %d, got %d" % (num_bytes, self.start + self.cursor - len(data), len(data)))
    return data

  def getData(self):
    return self.read(seek = 0)

  def subBlock(self, offset, length = None):
    """ The window of length bytes at offset within this one. Without length
        it extends to the end of this window. """

    if (self.size is not None):
      if (offset > self.size):
        raise IOError("Sub-block at %d starts past the end of a %d byte block" % (offset, self.size))
      if (length is None):
        length = self.size - offset
    return DataBlock(fp = self.source, offset = self.start + offset, length = length)
