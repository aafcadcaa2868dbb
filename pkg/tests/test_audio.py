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

import struct

import numpy as np
import pytest

from ratewarp import audio

def _fmtChunk(tag, channels, rate, bits, extensible_tag = None):
  block_align = channels * bits // 8
  body = struct.pack("<HHIIHH", tag, channels, rate, rate * block_align, block_align, bits)
  if (extensible_tag is not None):
    guid_tail = b"\x00\x00\x00\x00\x10\x00\x80\x00\x00\xaa\x00\x38\x9b\x71"
    body += struct.pack("<HHIH", 22, bits, 0, extensible_tag) + guid_tail
  return b"fmt " + struct.pack("<I", len(body)) + body

def _writeRiff(path, *chunks):
  body = b"WAVE" + b"".join(chunks)
  path.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)

def _dataChunk(payload):
  return b"data" + struct.pack("<I", len(payload)) + payload

def test_buffer_is_read_only():
  buffer = audio.AudioBuffer([0.0, 0.5], 8000)
  assert buffer.samples.dtype == np.float32
  with pytest.raises(ValueError):
    buffer.samples[0] = 1.0

def test_buffer_validation():
  with pytest.raises(ValueError):
    audio.AudioBuffer([0.0], 0)
  with pytest.raises(ValueError):
    audio.AudioBuffer([np.nan], 8000)

def test_duration(tone):
  assert tone(seconds = 2.0, sample_rate_hz = 16000).duration_seconds == pytest.approx(2.0)

def test_pcm16_round_trip(tmp_path, tone):
  buffer = tone(seconds = 0.1)
  path = tmp_path / "tone.wav"
  audio.save_wav(buffer, path)
  loaded = audio.load_wav(path)
  assert loaded.sample_rate_hz == buffer.sample_rate_hz
  assert len(loaded) == len(buffer)
  assert np.max(np.abs(loaded.samples - buffer.samples)) <= 1.0 / 32768

def test_float32_is_lossless(tmp_path, tone):
  buffer = tone(seconds = 0.1, amplitude = 0.9)
  path = tmp_path / "tone.wav"
  audio.save_wav(buffer, path, format = "float32")
  assert np.array_equal(audio.load_wav(path).samples, buffer.samples)

def test_pcm16_scaling(tmp_path):
  path = tmp_path / "edges.wav"
  audio.save_wav(audio.AudioBuffer([-1.0, 1.0, 2.0, 0.5], 8000), path)
  assert audio.load_wav(path).samples.tolist() == [-1.0, 32767 / 32768, 32767 / 32768, 0.5]

def test_unknown_format(tmp_path):
  with pytest.raises(ValueError):
    audio.save_wav(audio.AudioBuffer([0.0], 8000), tmp_path / "x.wav", format = "mp3")

def test_stereo_is_downmixed(tmp_path):
  path = tmp_path / "stereo.wav"
  payload = struct.pack("<4h", 16384, 0, -16384, -16384)
  _writeRiff(path, _fmtChunk(1, 2, 8000, 16), _dataChunk(payload))
  loaded = audio.load_wav(path)
  assert loaded.samples.tolist() == [0.25, -0.5]

def test_unknown_chunks_are_skipped(tmp_path):
  path = tmp_path / "list.wav"
  info = b"LIST" + struct.pack("<I", 5) + b"INFOx" + b"\x00"
  _writeRiff(path, info, _fmtChunk(3, 1, 16000, 32), _dataChunk(struct.pack("<2f", 0.25, -0.75)))
  loaded = audio.load_wav(path)
  assert loaded.sample_rate_hz == 16000
  assert loaded.samples.tolist() == [0.25, -0.75]

def test_extensible_format(tmp_path):
  path = tmp_path / "ext.wav"
  _writeRiff(path, _fmtChunk(0xFFFE, 1, 8000, 16, extensible_tag = 1), _dataChunk(struct.pack("<h", -32768)))
  assert audio.load_wav(path).samples.tolist() == [-1.0]

def test_not_a_wave_file(tmp_path):
  path = tmp_path / "junk.wav"
  path.write_bytes(b"JUNKJUNKJUNK")
  with pytest.raises(IOError):
    audio.load_wav(path)

def test_missing_file(tmp_path):
  with pytest.raises(IOError):
    audio.load_wav(tmp_path / "absent.wav")

def test_unsupported_codec(tmp_path):
  path = tmp_path / "alaw.wav"
  _writeRiff(path, _fmtChunk(6, 1, 8000, 8), _dataChunk(b"\x00\x01"))
  with pytest.raises(IOError, match = "unsupported codec"):
    audio.load_wav(path)

def test_missing_data_chunk(tmp_path):
  path = tmp_path / "nodata.wav"
  _writeRiff(path, _fmtChunk(1, 1, 8000, 16))
  with pytest.raises(IOError, match = "no data chunk"):
    audio.load_wav(path)

def test_empty_data_chunk(tmp_path):
  path = tmp_path / "empty.wav"
  _writeRiff(path, _fmtChunk(1, 1, 8000, 16), _dataChunk(b""))
  with pytest.raises(IOError):
    audio.load_wav(path)

def test_truncated_data_chunk_keeps_what_is_there(tmp_path):
  path = tmp_path / "short.wav"
  chunk = b"data" + struct.pack("<I", 100) + struct.pack("<2h", 8192, 8192)
  _writeRiff(path, _fmtChunk(1, 1, 8000, 16), chunk)
  assert audio.load_wav(path).samples.tolist() == [0.25, 0.25]
