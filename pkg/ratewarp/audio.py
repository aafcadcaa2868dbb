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

""" Mono waveforms and the RIFF/WAVE files they come from and go to. """

import logging

import numpy as np

from . import byteform, datablock, datatypes

log = logging.getLogger(__name__)

# RIFF files are divided in chunks, each starting with a four character id,
# followed by four bytes specifying the length of the chunk payload. Chunks
# with an odd length are followed by one pad byte. The file itself is one
# "RIFF" chunk whose payload starts with "WAVE" and holds the other chunks.
# We need "fmt " for the sample format and "data" for the samples; anything
# else (LIST, fact, cue, ...) is skipped.
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

class AudioBuffer:
  """ A mono waveform: float32 samples with nominal range [-1, 1] and a
      sample rate in Hz. The sample array is read-only once constructed. """

  def __init__(self, samples, sample_rate_hz):
    sample_rate_hz = int(sample_rate_hz)
    if (sample_rate_hz <= 0):
      raise ValueError("Sample rate must be positive, got %d" % sample_rate_hz)

    samples = np.array(samples, dtype = np.float32).reshape(-1)
    if (not np.all(np.isfinite(samples))):
      raise ValueError("Audio samples must be finite")
    samples.setflags(write = False)

    self.samples        = samples
    self.sample_rate_hz = sample_rate_hz

  @property
  def duration_seconds(self):
    return len(self.samples) / float(self.sample_rate_hz)

  def __len__(self):
    return len(self.samples)

  def __repr__(self):
    return "AudioBuffer(%d samples @ %d Hz)" % (len(self.samples), self.sample_rate_hz)

class Chunk(datablock.DataBlock):
  """ The RIFF chunk whose 8-byte header starts at offset. The block covers
      the payload only. """

  def __init__(self, fp, offset):
    header = datablock.DataBlock(fp = fp, offset = offset).read(8)
    if (len(header) != 8):
      raise IOError("Truncated RIFF chunk header at offset %d" % offset)

    self.chunk_id = header[:4].decode("latin-1")
    datablock.DataBlock.__init__(self, fp = fp, offset = offset + 8, length = byteform.btoi(header[4:8]))

  def getId(self):
    return self.chunk_id

  def getPaddedLength(self):
    """ Return the number of bytes the payload occupies in the file. """
    return self.getDataLength() + (self.getDataLength() & 1)

class WaveFile:
  """ Parse a RIFF/WAVE file on disk. Only the chunk layout is read on
      construction; samples are decoded by getAudio(). """

  def __init__(self, path):
    self.path   = str(path)
    self.chunks = {}
    self.fmt    = None

    try:
      fp = open(self.path, "rb")
    except OSError as e:
      raise IOError("Cannot read WAVE file %s: %s" % (self.path, e)) from e

    with fp:
      self.parseFile(fp)
      self.samples = self._readSamples(fp)

  def parseFile(self, fp):
    """ Walk the chunks of the file and remember where they are. """

    riff = datablock.DataBlock(fp = fp)
    header = riff.read(12, 0)
    if (len(header) != 12) or (header[0:4] != b"RIFF") or (header[8:12] != b"WAVE"):
      raise IOError("%s is not a RIFF/WAVE file" % self.path)

    fp.seek(0, 2)
    file_size = fp.tell()

    # Read the chunks one after another. A truncated last chunk is accepted,
    # we simply get less data than announced.
    curr_offset = 12
    while (curr_offset + 8 <= file_size):
      chunk = Chunk(fp, curr_offset)
      if (chunk.getId() not in self.chunks):
        self.chunks[chunk.getId()] = chunk
      curr_offset = chunk.getDataOffset() + chunk.getPaddedLength()

    if ("fmt " not in self.chunks):
      raise IOError("%s has no fmt chunk" % self.path)
    if ("data" not in self.chunks):
      raise IOError("%s has no data chunk" % self.path)

    self.fmt = self._parseFormat(self.chunks["fmt "])
    log.debug("%s: %s, %d channel(s), %d Hz", self.path, self.fmt["type"].name, self.fmt["channels"], self.fmt["sample_rate"])

  def _parseFormat(self, chunk):
    """ Decode the fmt chunk into a dict with the sample type, channel count
        and sample rate. """

    data = chunk.getData()
    if (len(data) < 16):
      raise IOError("%s: fmt chunk too short" % self.path)

    format_tag  = byteform.btoi(data[0:2])
    channels    = byteform.btoi(data[2:4])
    sample_rate = byteform.btoi(data[4:8])
    bits        = byteform.btoi(data[14:16])

    # The extensible format keeps the real format tag in the first two bytes
    # of the sub-format GUID
    if (format_tag == WAVE_FORMAT_EXTENSIBLE):
      if (len(data) < 26):
        raise IOError("%s: extensible fmt chunk too short" % self.path)
      format_tag = byteform.btoi(data[24:26])

    sample_type = datatypes.FORMATS.get(format_tag)
    if (sample_type is None) or (bits != 8 * sample_type.word_width):
      raise IOError("%s: unsupported codec (format tag %d, %d bits)" % (self.path, format_tag, bits))
    if (channels not in (1, 2)):
      raise IOError("%s: unsupported channel count %d" % (self.path, channels))
    if (sample_rate <= 0):
      raise IOError("%s: invalid sample rate %d" % (self.path, sample_rate))

    return {"type": sample_type, "channels": channels, "sample_rate": sample_rate}

  def _readSamples(self, fp):
    """ Decode the data chunk and downmix to mono. """

    sample_type = self.fmt["type"]
    frame_width = sample_type.word_width * self.fmt["channels"]

    data = self.chunks["data"].getData()
    data = data[:len(data) - (len(data) % frame_width)]
    if (len(data) == 0):
      raise IOError("%s: data chunk holds no samples" % self.path)

    samples = sample_type.decode(data).astype(np.float64)
    if (self.fmt["channels"] == 2):
      samples = samples.reshape(-1, 2).mean(axis = 1)
    return samples

  def getAudio(self):
    return AudioBuffer(self.samples, self.fmt["sample_rate"])

def load_wav(path):
  """ Read a PCM16 or float32 WAVE file with one or two channels. Stereo is
      downmixed by averaging, PCM16 is scaled by 1/32768. """

  return WaveFile(path).getAudio()

def save_wav(buffer, path, format = "pcm16"):
  """ Write buffer as a mono little-endian WAVE file in the given sample
      format ("pcm16" or "float32"). Samples outside [-1, 1] are clipped. """

  sample_type = datatypes.NAMES.get(format)
  if (sample_type is None):
    raise ValueError("Unknown sample format %r, use one of %s" % (format, ", ".join(sorted(datatypes.NAMES))))

  payload = sample_type.encode(buffer.samples)
  block_align = sample_type.word_width

  # The fmt chunk, always the 16 byte version
  fmt_chunk  = byteform.itob(sample_type.tag, 2)
  fmt_chunk += byteform.itob(1, 2)
  fmt_chunk += byteform.itob(buffer.sample_rate_hz, 4)
  fmt_chunk += byteform.itob(buffer.sample_rate_hz * block_align, 4)
  fmt_chunk += byteform.itob(block_align, 2)
  fmt_chunk += byteform.itob(8 * sample_type.word_width, 2)

  body  = b"WAVE"
  body += b"fmt " + byteform.itob(len(fmt_chunk), 4) + fmt_chunk
  body += b"data" + byteform.itob(len(payload), 4) + payload
  if (len(payload) & 1):
    body += b"\x00"

  try:
    with open(str(path), "wb") as fp:
      fp.write(b"RIFF" + byteform.itob(len(body), 4) + body)
  except OSError as e:
    raise IOError("Cannot write WAVE file %s: %s" % (path, e)) from e

  log.debug("Wrote %s (%s, %d samples)", path, sample_type.name, len(buffer))