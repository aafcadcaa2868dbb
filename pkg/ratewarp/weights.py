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

""" Generator parameters, and the RWV1 file they are kept in.

    An RWV1 file is little endian and consists of:
    - the magic bytes "RWV1"
    - the length of the header in bytes, as an unsigned 32 bit integer
    - the header, UTF-8 JSON: {"config": {...}, "tensors": {name: {"shape":
      [...], "dtype": "f32", "offset": n}}}, where offset counts from the
      start of the payload
    - the payload: the raw float32 tensors in manifest order """

import hashlib
import json
import logging

import numpy as np

from . import byteform, datablock, generator, qdb

log = logging.getLogger(__name__)

MAGIC = b"RWV1"
DTYPE = "<f4"

class WeightStore:
  """ The named parameter tensors of one GeneratorConfig. Tensors are float32
      and read-only, and exactly the names of generator.parameter_shapes()
      must be present with the right shapes. """

  def __init__(self, config, tensors):
    self.config  = config
    self.tensors = {}
    self._checkManifest({name: np.shape(value) for name, value in tensors.items()})

    # The manifest records where every tensor goes in an RWV1 payload
    self.manifest = qdb.QDB()
    self.manifest.addList("name", [])
    self.manifest.addList("shape", [])
    self.manifest.addList("offset", [])

    offset = 0
    for name, shape in generator.parameter_shapes(config).items():
      value = np.array(tensors[name], dtype = np.float32)
      value.setflags(write = False)
      self.tensors[name] = value
      self.manifest.appendValue("name", name, "shape", shape, "offset", offset)
      offset += value.size * 4

  def _checkManifest(self, shapes):
    expected = generator.parameter_shapes(self.config)

    missing = [name for name in expected if (name not in shapes)]
    if (missing):
      raise ValueError("Missing tensor %s" % ", ".join(missing))
    extra = sorted(name for name in shapes if (name not in expected))
    if (extra):
      raise ValueError("Unexpected tensor %s" % ", ".join(extra))

    for name, shape in expected.items():
      if (tuple(shapes[name]) != shape):
        raise ValueError("Tensor %s has shape %s, expected %s" % (name, tuple(shapes[name]), shape))

  def getTensor(self, name):
    try:
      return self.tensors[name]
    except KeyError:
      raise ValueError("No tensor named %s" % name) from None

  def getShape(self, name):
    return self.manifest.query("name", name, "shape")

  def getOffset(self, name):
    return self.manifest.query("name", name, "offset")

  def getNames(self):
    return list(self.manifest.getList("name"))

  def getPayloadLength(self):
    return sum(value.size * 4 for value in self.tensors.values())

def _stream(seed, name):
  """ The random stream of one tensor: PCG64 seeded by the user seed, with
      the SHA-256 digest of the tensor name as spawn key, so every tensor gets
      an independent stream that does not depend on the order of the others. """

  digest = hashlib.sha256(name.encode("utf-8")).digest()
  spawn_key = tuple(int.from_bytes(digest[i:i + 4], "little") for i in range(0, len(digest), 4))
  sequence = np.random.SeedSequence(entropy = int(seed), spawn_key = spawn_key)
  return np.random.Generator(np.random.PCG64(sequence))

def init_random(config, seed):
  """ Draw every parameter i.i.d. from normal(0, 0.01). """

  if (int(seed) < 0):
    raise ValueError("Seed must be nonnegative, got %d" % seed)

  tensors = {}
  for name, shape in generator.parameter_shapes(config).items():
    tensors[name] = _stream(seed, name).normal(0.0, 0.01, size = shape).astype(np.float32)

  log.debug("Initialized %d tensors from seed %d", len(tensors), seed)
  return WeightStore(config, tensors)

def _header(store):
  """ The JSON header of an RWV1 file holding store. """

  tensors = {}
  for name in store.getNames():
    tensors[name] = {"shape": list(store.getShape(name)), "dtype": "f32", "offset": store.getOffset(name)}
  return {"config": store.config.toDict(), "tensors": tensors}

def save_weights(store, path):
  header = json.dumps(_header(store)).encode("utf-8")

  try:
    with open(str(path), "wb") as fp:
      fp.write(MAGIC + byteform.itob(len(header), 4) + header)
      for name in store.getNames():
        fp.write(byteform.atob(store.getTensor(name), DTYPE))
  except OSError as e:
    raise IOError("Cannot write weight file %s: %s" % (path, e)) from e

  log.info("Wrote %d tensors to %s", len(store.getNames()), path)

def _parseHeader(block, path):
  """ Check the magic and decode the JSON header. Returns the header dict and
      the offset of the payload. """

  if (block.read(4, 0) != MAGIC):
    raise IOError("%s is not an RWV1 weight file" % path)

  header_length = byteform.btoi(block.readExactly(4))
  raw = block.readExactly(header_length)
  try:
    header = json.loads(raw.decode("utf-8"))
  except (UnicodeDecodeError, ValueError) as e:
    raise IOError("%s: corrupt header: %s" % (path, e)) from e

  if (not isinstance(header, dict)) or (not isinstance(header.get("config"), dict)) or (not isinstance(header.get("tensors"), dict)):
    raise IOError("%s: corrupt header: need a config and a tensors object" % path)

  return header, 8 + header_length

def load_weights(path, config = None):
  """ Read an RWV1 file. If config is given, the file must have been written
      for that config; this is checked before any tensor is read. """

  try:
    fp = open(str(path), "rb")
  except OSError as e:
    raise IOError("Cannot read weight file %s: %s" % (path, e)) from e

  with fp:
    block = datablock.DataBlock(fp = fp)
    header, payload_offset = _parseHeader(block, path)

    file_config = generator.GeneratorConfig.fromDict(header["config"])
    if (config is not None) and (file_config != config):
      raise ValueError("%s was written for a different generator config" % path)

    expected = generator.parameter_shapes(file_config)
    entries = header["tensors"]
    for name in expected:
      if (name not in entries):
        raise ValueError("%s: missing tensor %s" % (path, name))
    for name, entry in entries.items():
      if (name not in expected):
        raise ValueError("%s: unexpected tensor %s" % (path, name))
      if (not isinstance(entry, dict)) or (not isinstance(entry.get("offset"), int)) or (not isinstance(entry.get("shape", []), list)):
        raise IOError("%s: corrupt header: tensor %s needs an object with an integer offset" % (path, name))
      if (entry.get("dtype") != "f32"):
        raise ValueError("%s: tensor %s has unsupported dtype %r" % (path, name, entry.get("dtype")))
      if (tuple(entry.get("shape", ())) != expected[name]):
        raise ValueError("%s: tensor %s has shape %s, expected %s" % (path, name, entry.get("shape"), expected[name]))

    payload = block.subBlock(payload_offset)
    tensors = {}
    for name, shape in expected.items():
      n_bytes = 4 * int(np.prod(shape))
      raw = payload.readExactly(n_bytes, int(entries[name]["offset"]))
      tensors[name] = byteform.btoa(raw, DTYPE).reshape(shape)

  log.info("Loaded %d tensors from %s", len(tensors), path)
  return WeightStore(file_config, tensors)
