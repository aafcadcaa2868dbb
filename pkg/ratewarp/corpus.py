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

""" Speech corpora recorded at several speaking rates, laid out as

      <root>/<speaker>/<rate>/<utterance id>.wav

    with rate one of slow, normal or fast. An optional <utterance id>.mora
    file next to the recording holds its mora count as a decimal integer. """

import itertools
import logging
import pathlib
from dataclasses import dataclass
from typing import Optional

log = logging.getLogger(__name__)

RATES = ("slow", "normal", "fast")

@dataclass(frozen = True)
class Utterance:
  speaker:    str
  rate:       str
  utt_id:     str
  path:       pathlib.Path
  mora_count: Optional[int] = None

  @property
  def key(self):
    return "%s/%s/%s" % (self.speaker, self.rate, self.utt_id)

def read_mora(path):
  """ Mora count from a sidecar file, or None if there is none. """

  path = pathlib.Path(path)
  if (not path.is_file()):
    return None

  try:
    text = path.read_text(encoding = "utf-8").strip()
  except OSError as e:
    raise IOError("Cannot read mora file %s: %s" % (path, e)) from e

  try:
    count = int(text)
  except ValueError:
    raise ValueError("%s does not hold an integer mora count: %r" % (path, text)) from None
  if (count < 1):
    raise ValueError("%s: mora count must be positive, got %d" % (path, count))
  return count

def mora_sidecar(wav_path):
  return pathlib.Path(wav_path).with_suffix(".mora")

def scan(root):
  """ All utterances under root, sorted by speaker, rate and id. Directories
      that are not a known rate are skipped. """

  root = pathlib.Path(root)
  if (not root.is_dir()):
    raise IOError("Corpus root %s is not a directory" % root)

  utterances = []
  for speaker_dir in sorted(p for p in root.iterdir() if p.is_dir()):
    for rate in RATES:
      rate_dir = speaker_dir / rate
      if (not rate_dir.is_dir()):
        continue
      for wav_path in sorted(rate_dir.glob("*.wav")):
        utterances.append(Utterance(speaker_dir.name, rate, wav_path.stem, wav_path, read_mora(mora_sidecar(wav_path))))

  log.info("Found %d utterances of %d speakers in %s", len(utterances), len(set(u.speaker for u in utterances)), root)
  return utterances

def pairs(utterances):
  """ Every ordered (source, target) pair of recordings of the same sentence
      by the same speaker at two different rates. """

  grouped = {}
  for utterance in utterances:
    grouped.setdefault((utterance.speaker, utterance.utt_id), []).append(utterance)

  result = []
  for key in sorted(grouped):
    recordings = sorted(grouped[key], key = lambda u: RATES.index(u.rate))
    result.extend(itertools.permutations(recordings, 2))
  return result

def pair_label(source, target):
  """ speaker/src->tgt/id """
  return "%s/%s->%s/%s" % (source.speaker, source.rate, target.rate, source.utt_id)
