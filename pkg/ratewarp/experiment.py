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

""" The comparisons run over the conversion methods: every method at every
    factor on one input, corpus conversions between recorded rates, real-time
    factors, and the speaking rates of a corpus. """

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import audio, corpus, evaluation, generator, interp, methods, spectral

log = logging.getLogger(__name__)

# Conversion factors evaluated by default
STANDARD_FACTORS = (0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0)

class Experiment:
  """ Runs methods against a fixed set of weights and analysis settings. All
      report producing methods return lists of evaluation.EvalReport. """

  def __init__(self, store, mel_config = None, wsola_config = None, vad_config = None,
               resample_params = None, n_coeffs = 13, repeats = 1, threads = 1):
    if (mel_config is None):
      mel_config = spectral.MelConfig()
    if (repeats < 1):
      raise ValueError("Need at least one repeat, got %d" % repeats)
    if (threads < 1):
      raise ValueError("Need at least one thread, got %d" % threads)

    self.mel_config      = mel_config
    self.wsola_config    = wsola_config
    self.vad_config      = vad_config
    self.resample_params = resample_params
    self.n_coeffs        = n_coeffs
    self.repeats         = repeats
    self.threads         = threads
    self.synth = generator.Generator(store, resample_params = resample_params)

  def prepare(self, buffer):
    """ Bring buffer to the sample rate of the mel frontend. """

    rate = self.mel_config.sample_rate_hz
    if (buffer.sample_rate_hz == rate):
      return buffer

    log.info("Resampling input from %d Hz to %d Hz", buffer.sample_rate_hz, rate)
    samples = interp.resample_bandlimited(buffer.samples, buffer.sample_rate_hz, rate, self.resample_params)
    return audio.AudioBuffer(samples, rate)

  def analyse(self, buffer):
    return spectral.mel_spectrogram(buffer, self.mel_config)

  def _map(self, function, items):
    """ Apply function to items, in parallel if allowed, keeping the order. """

    if (self.threads == 1):
      return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers = self.threads) as executor:
      return list(executor.map(function, items))

  def _speakingRate(self, mora_count, buffer):
    if (mora_count is None):
      return None
    try:
      return evaluation.speaking_rate(mora_count, buffer, self.vad_config).mora_per_second
    except ValueError as e:
      log.warning("No speaking rate: %s", e)
      return None

  def _benchmark(self, method, mel, factor, audio_seconds_out):
    return evaluation.measure_rtf(lambda: method.convert(mel, factor, self.synth, self.wsola_config),
                                  audio_seconds_out, self.repeats)

  def _timed(self, method, mel, factor):
    """ Convert and benchmark. Returns the converted buffer and its RtfReport. """

    converted, _ = method.convert(mel, factor, self.synth, self.wsola_config)
    return converted, self._benchmark(method, mel, factor, converted.duration_seconds)

  def runMatrix(self, buffer, factors = STANDARD_FACTORS, method_list = methods.ALL, mora_count = None):
    """ Every method at every factor on one input. The distortion is measured
        against the input itself. Conversions and distortions may run in
        parallel; the benchmarks run one by one after the pool is done. """

    buffer = self.prepare(buffer)
    mel = self.analyse(buffer)
    reference = spectral.mel_cepstrum(mel, self.n_coeffs)
    jobs = [(method, factor) for method in method_list for factor in factors]

    def cell(job):
      method, factor = job
      converted, _ = method.convert(mel, factor, self.synth, self.wsola_config)
      distortion = evaluation.mcd(spectral.mel_cepstrum(self.analyse(converted), self.n_coeffs), reference)
      return distortion, converted.duration_seconds, self._speakingRate(mora_count, converted)

    measured = self._map(cell, jobs)

    reports = []
    for (method, factor), (distortion, seconds, rate) in zip(jobs, measured):
      rtf = self._benchmark(method, mel, factor, seconds)
      log.info("%s f=%.2f: MCD %.2f dB, RTF %.4f", method.name, factor, distortion, rtf.rtf)
      reports.append(evaluation.EvalReport(distortion, rtf.rtf, rtf.generation_seconds, rtf.conversion_seconds,
                                           rate, float(factor), method.insertion, method.method))
    return reports

  def runCorpusMcd(self, utterances, method_list = methods.ALL):
    """ Convert every recording to every other rate of the same sentence, with
        the factor given by the two durations, and compare with the recording
        at the target rate. """

    jobs = []
    for source, target in corpus.pairs(utterances):
      for method in method_list:
        jobs.append((source, target, method))
    log.info("Corpus evaluation: %d conversions", len(jobs))

    def cell(job):
      source, target, method = job
      source_audio = self.prepare(audio.load_wav(source.path))
      target_audio = self.prepare(audio.load_wav(target.path))
      factor = evaluation.conversion_factor(source_audio.duration_seconds, target_audio.duration_seconds)

      converted, conversion = method.convert(self.analyse(source_audio), factor, self.synth, self.wsola_config)
      distortion = evaluation.mcd_between(converted, target_audio, self.mel_config, self.n_coeffs)
      return evaluation.EvalReport(distortion, None, None, conversion,
                                   self._speakingRate(source.mora_count, converted), factor,
                                   method.insertion, method.method, corpus.pair_label(source, target))

    return self._map(cell, jobs)

  def runRtf(self, named_buffers, factors = STANDARD_FACTORS, method_list = methods.ALL):
    """ Real-time factors of the plain generator and of every method at every
        factor, for each (label, buffer) input. Benchmarks never overlap. """

    reports = []
    for label, buffer in named_buffers:
      mel = self.analyse(self.prepare(buffer))
      for method, factor in [(methods.REFERENCE, 1.0)] + [(m, f) for m in method_list for f in factors]:
        converted, rtf = self._timed(method, mel, factor)
        reports.append(evaluation.EvalReport(None, rtf.rtf, rtf.generation_seconds, rtf.conversion_seconds,
                                             None, float(factor), method.insertion, method.method, label))
        log.info("%s %s f=%.2f: RTF %.4f", label, method.name, factor, rtf.rtf)
    return reports

def rate_table(utterances, vad_config = None):
  """ Speaking rate of every utterance with a mora count, and the mean per
      speaker and rate. Returns (rows, means), both lists of dicts. """

  rows = []
  for utterance in utterances:
    if (utterance.mora_count is None):
      log.warning("%s has no mora count, skipped", utterance.key)
      continue
    rate = evaluation.speaking_rate(utterance.mora_count, audio.load_wav(utterance.path), vad_config)
    rows.append({"speaker": utterance.speaker, "rate": utterance.rate, "utterance": utterance.utt_id,
                 "mora_count": rate.mora_count, "voiced_s": rate.voiced_seconds,
                 "mora_per_s": rate.mora_per_second})

  groups = {}
  for row in rows:
    groups.setdefault((row["speaker"], row["rate"]), []).append(row["mora_per_s"])

  means = []
  for speaker, rate in sorted(groups, key = lambda key: (key[0], corpus.RATES.index(key[1]))):
    values = groups[(speaker, rate)]
    means.append({"speaker": speaker, "rate": rate, "mean_mora_per_s": float(np.mean(values)), "count": len(values)})
  return rows, means
