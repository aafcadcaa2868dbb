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

import pytest

from conftest import make_tone, write_utterance
from ratewarp import corpus, evaluation, experiment, methods

SOME_METHODS = (methods.by_name("mel-linear"), methods.by_name("3-kaiser"), methods.BASELINE)

@pytest.fixture(scope = "module")
def runner(small_store):
  return experiment.Experiment(small_store)

def test_prepare_resamples(runner):
  prepared = runner.prepare(make_tone(seconds = 0.5, sample_rate_hz = 16000))
  assert prepared.sample_rate_hz == 22050
  assert len(prepared) == 11025

  same = make_tone(seconds = 0.1)
  assert runner.prepare(same) is same

def test_matrix(runner):
  reports = runner.runMatrix(make_tone(seconds = 0.1), (0.5, 2.0), SOME_METHODS, mora_count = 5)
  assert len(reports) == 6
  assert [(r.insertion, r.method, r.factor) for r in reports[:2]] == [("mel", "linear", 0.5), ("mel", "linear", 2.0)]
  assert reports[-1].method == "wsola"
  for report in reports:
    assert report.mcd_db >= 0.0
    assert report.rtf > 0.0
    assert report.generation_s >= 0.0 and report.conversion_s >= 0.0
    assert report.mora_per_s > 0.0
    assert report.utterance is None

def test_matrix_without_mora(runner):
  reports = runner.runMatrix(make_tone(seconds = 0.1), (1.5,), SOME_METHODS[:1])
  assert reports[0].mora_per_s is None

def test_threads_keep_the_order(small_store):
  buffer = make_tone(seconds = 0.1)
  serial = experiment.Experiment(small_store).runMatrix(buffer, (0.75, 1.25), SOME_METHODS)
  parallel = experiment.Experiment(small_store, threads = 3).runMatrix(buffer, (0.75, 1.25), SOME_METHODS)
  assert [r.mcd_db for r in serial] == [r.mcd_db for r in parallel]
  assert [(r.method, r.factor) for r in serial] == [(r.method, r.factor) for r in parallel]

def test_rtf_rows(runner):
  reports = runner.runRtf([("tone.wav", make_tone(seconds = 0.1))], (2.0,), (methods.BASELINE,))
  assert [(r.insertion, r.method, r.factor) for r in reports] == [("none", "hifigan", 1.0), ("waveform", "wsola", 2.0)]
  assert reports[0].conversion_s == 0.0
  assert all(r.mcd_db is None and r.utterance == "tone.wav" for r in reports)

def test_corpus_mcd(runner, tmp_path):
  write_utterance(tmp_path, "spk1", "slow", "001", seconds = 0.3)
  write_utterance(tmp_path, "spk1", "fast", "001", seconds = 0.2)
  reports = runner.runCorpusMcd(corpus.scan(tmp_path), SOME_METHODS[:1])
  assert [r.utterance for r in reports] == ["spk1/slow->fast/001", "spk1/fast->slow/001"]
  assert reports[0].factor == pytest.approx(1.5)
  assert reports[1].factor == pytest.approx(2.0 / 3.0)
  assert all(r.mcd_db >= 0.0 and r.rtf is None for r in reports)

def test_rate_table(tmp_path):
  write_utterance(tmp_path, "spk1", "slow", "001", seconds = 1.0, mora = 4)
  write_utterance(tmp_path, "spk1", "slow", "002", seconds = 0.5, mora = 4)
  write_utterance(tmp_path, "spk1", "fast", "001", seconds = 0.5, mora = 4)
  write_utterance(tmp_path, "spk1", "fast", "002", seconds = 0.5)

  rows, means = experiment.rate_table(corpus.scan(tmp_path))
  assert [(row["rate"], row["utterance"]) for row in rows] == [("slow", "001"), ("slow", "002"), ("fast", "001")]
  assert rows[0]["mora_per_s"] == pytest.approx(4.0, rel = 0.05)
  assert rows[1]["mora_per_s"] == pytest.approx(8.0, rel = 0.05)

  assert [(mean["rate"], mean["count"]) for mean in means] == [("slow", 2), ("fast", 1)]
  assert means[0]["mean_mora_per_s"] == pytest.approx(6.0, rel = 0.05)

def test_experiment_arguments(small_store):
  with pytest.raises(ValueError):
    experiment.Experiment(small_store, repeats = 0)
  with pytest.raises(ValueError):
    experiment.Experiment(small_store, threads = 0)

def test_report_fields_match_json_keys(runner):
  report = runner.runMatrix(make_tone(seconds = 0.1), (2.0,), SOME_METHODS[:1])[0]
  assert isinstance(report, evaluation.EvalReport)
  assert set(report.toDict()) == set(evaluation.EvalReport.KEYS)

def test_benchmarks_wait_for_the_pool(small_store, monkeypatch):
  events = []
  timing = []
  original_mcd = evaluation.mcd
  original_rtf = evaluation.measure_rtf

  def mcd(*args, **kwargs):
    events.append(("mcd", bool(timing)))
    result = original_mcd(*args, **kwargs)
    events.append(("mcd", bool(timing)))
    return result

  def measure_rtf(*args, **kwargs):
    timing.append(True)
    try:
      events.append(("rtf", True))
      return original_rtf(*args, **kwargs)
    finally:
      timing.pop()

  monkeypatch.setattr(evaluation, "mcd", mcd)
  monkeypatch.setattr(evaluation, "measure_rtf", measure_rtf)

  reports = experiment.Experiment(small_store, threads = 4).runMatrix(make_tone(seconds = 0.1), (0.5, 1.5), SOME_METHODS)
  assert len(reports) == 6
  kinds = [kind for kind, _ in events]
  assert kinds.count("rtf") == 6 and kinds.count("mcd") == 12
  # No distortion is computed while a benchmark runs, and all of them come first
  assert not any(during for kind, during in events if (kind == "mcd"))
  assert kinds == ["mcd"] * 12 + ["rtf"] * 6
