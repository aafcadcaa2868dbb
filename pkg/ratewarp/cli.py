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

""" The ratewarp command line. Exit codes: 0 success, 1 usage error, 2 I/O
    error, 3 data or shape error. """

import argparse
import json
import logging
import math
import os
import pathlib
import sys

import numpy as np

from . import audio, corpus, experiment, generator, interp, methods, spectral, weights, wsola

log = logging.getLogger(__name__)

EXIT_OK    = 0
EXIT_USAGE = 1
EXIT_IO    = 2
EXIT_DATA  = 3

MIN_FACTOR = 0.05
MAX_FACTOR = 20.0

class UsageError(Exception):
  pass

class ArgumentParser(argparse.ArgumentParser):
  """ Reports usage errors with our exit code instead of exiting. """

  def error(self, message):
    raise UsageError("%s: error: %s" % (self.prog, message))

def _factor(text):
  try:
    value = float(text)
  except ValueError:
    raise argparse.ArgumentTypeError("not a number: %r" % text) from None
  if not (MIN_FACTOR <= value <= MAX_FACTOR):
    raise argparse.ArgumentTypeError("factor %g outside [%g, %g]" % (value, MIN_FACTOR, MAX_FACTOR))
  return value

def _factors(text):
  factors = tuple(_factor(part) for part in text.split(",") if part.strip())
  if (not factors):
    raise argparse.ArgumentTypeError("no factors given")
  return factors

def _integer(text):
  try:
    return int(text)
  except ValueError:
    raise argparse.ArgumentTypeError("not an integer: %r" % text) from None

def _positiveInt(text):
  value = _integer(text)
  if (value < 1):
    raise argparse.ArgumentTypeError("must be positive: %d" % value)
  return value

def _nonNegativeInt(text):
  value = _integer(text)
  if (value < 0):
    raise argparse.ArgumentTypeError("must not be negative: %d" % value)
  return value

def _nonNegativeFloat(text):
  try:
    value = float(text)
  except ValueError:
    raise argparse.ArgumentTypeError("not a number: %r" % text) from None
  if not (math.isfinite(value) and value >= 0):
    raise argparse.ArgumentTypeError("must be finite and not negative: %r" % text)
  return value

def _rolloff(text):
  value = _nonNegativeFloat(text)
  if not (0.0 < value <= 1.0):
    raise argparse.ArgumentTypeError("rolloff %g outside (0, 1]" % value)
  return value

def _methodList(text):
  try:
    return tuple(methods.by_name(name.strip()) for name in text.split(",") if name.strip())
  except ValueError as e:
    raise argparse.ArgumentTypeError(str(e)) from None

def thread_count(environ = None):
  """ Worker threads allowed by RATEWARP_THREADS, 1 if unset. """

  if (environ is None):
    environ = os.environ
  value = environ.get("RATEWARP_THREADS")
  if (value is None) or (value.strip() == ""):
    return 1
  try:
    count = int(value)
  except ValueError:
    raise UsageError("RATEWARP_THREADS must be a positive integer, got %r" % value) from None
  if (count < 1):
    raise UsageError("RATEWARP_THREADS must be a positive integer, got %r" % value)
  return count

def _addWeightOptions(parser):
  parser.add_argument("--weights", help = "RWV1 weight file; seeded random weights if omitted")
  parser.add_argument("--seed", type = int, default = 0, help = "seed for random weights (default 0)")
  parser.add_argument("--base-channels", type = _positiveInt, default = generator.GeneratorConfig.base_channels,
                      help = "generator width for random weights")

def _addKaiserOptions(parser):
  defaults = interp.KaiserResampleParams()
  parser.add_argument("--zero-crossings", type = _positiveInt, default = defaults.zero_crossings)
  parser.add_argument("--beta", type = _nonNegativeFloat, default = defaults.beta)
  parser.add_argument("--rolloff", type = _rolloff, default = defaults.rolloff)

def _addWsolaOptions(parser):
  parser.add_argument("--frame-length", type = _positiveInt, default = 1024)
  parser.add_argument("--synthesis-hop", type = _positiveInt, default = None)
  parser.add_argument("--tolerance", type = _nonNegativeInt, default = 512)

def _addReportOptions(parser):
  parser.add_argument("--out", help = "JSON lines output file (default: standard output)")

def build_parser():
  parser = ArgumentParser(prog = "ratewarp", description = "Speaking rate conversion with an interpolating vocoder.")
  parser.add_argument("-v", "--verbose", action = "count", default = 0, help = "-v for progress, -vv for debugging")
  commands = parser.add_subparsers(dest = "command", metavar = "command", parser_class = ArgumentParser)
  commands.required = True

  sub = commands.add_parser("wsola", help = "change the speaking rate of a waveform with WSOLA")
  sub.add_argument("--factor", type = _factor, required = True)
  _addWsolaOptions(sub)
  sub.add_argument("--format", choices = ("pcm16", "float32"), default = "pcm16")
  sub.add_argument("input")
  sub.add_argument("output")

  sub = commands.add_parser("warp", help = "synthesize at a different speaking rate")
  sub.add_argument("--factor", type = _factor, required = True)
  sub.add_argument("--insertion", choices = [p.value for p in generator.InsertionPoint], default = "mel")
  sub.add_argument("--method", choices = [m.value for m in interp.InterpolationMethod], default = "linear")
  _addWeightOptions(sub)
  _addKaiserOptions(sub)
  sub.add_argument("--format", choices = ("pcm16", "float32"), default = "pcm16")
  sub.add_argument("input")
  sub.add_argument("output")

  sub = commands.add_parser("resample", help = "change the sample rate of a waveform")
  sub.add_argument("--rate", type = _positiveInt, required = True)
  _addKaiserOptions(sub)
  sub.add_argument("--format", choices = ("pcm16", "float32"), default = "pcm16")
  sub.add_argument("input")
  sub.add_argument("output")

  sub = commands.add_parser("mel", help = "write the log-mel spectrogram as .npy")
  sub.add_argument("input")
  sub.add_argument("output")

  sub = commands.add_parser("gen-init", help = "write seeded random generator weights")
  sub.add_argument("--seed", type = int, required = True)
  sub.add_argument("--base-channels", type = _positiveInt, default = generator.GeneratorConfig.base_channels)
  sub.add_argument("--out", required = True)

  sub = commands.add_parser("eval-mcd", help = "convert a corpus between its recorded rates and measure MCD")
  sub.add_argument("--methods", type = _methodList, default = methods.ALL)
  sub.add_argument("--n-coeffs", type = _positiveInt, default = 13)
  _addWeightOptions(sub)
  _addKaiserOptions(sub)
  _addWsolaOptions(sub)
  _addReportOptions(sub)
  sub.add_argument("corpus")

  sub = commands.add_parser("eval-rtf", help = "measure real-time factors")
  sub.add_argument("--factors", type = _factors, default = experiment.STANDARD_FACTORS)
  sub.add_argument("--methods", type = _methodList, default = methods.ALL)
  sub.add_argument("--repeats", type = _positiveInt, default = 5)
  _addWeightOptions(sub)
  _addKaiserOptions(sub)
  _addWsolaOptions(sub)
  _addReportOptions(sub)
  sub.add_argument("inputs", nargs = "+")

  sub = commands.add_parser("eval-rate", help = "measure the speaking rates of a corpus")
  _addReportOptions(sub)
  sub.add_argument("corpus")

  sub = commands.add_parser("matrix", help = "run every method at every factor on one input")
  sub.add_argument("--factors", type = _factors, default = experiment.STANDARD_FACTORS)
  sub.add_argument("--repeats", type = _positiveInt, default = 1)
  sub.add_argument("--n-coeffs", type = _positiveInt, default = 13)
  sub.add_argument("--mora", type = _positiveInt, help = "mora count of the input (default: <input>.mora if present)")
  _addWeightOptions(sub)
  _addKaiserOptions(sub)
  _addWsolaOptions(sub)
  _addReportOptions(sub)
  sub.add_argument("input")

  return parser

def _kaiserParams(args):
  return interp.KaiserResampleParams(args.zero_crossings, args.beta, args.rolloff)

def _wsolaConfig(args):
  return wsola.WsolaConfig(args.frame_length, args.synthesis_hop, args.tolerance)

def _store(args):
  if (args.weights is not None):
    return weights.load_weights(args.weights)
  config = generator.GeneratorConfig(base_channels = args.base_channels)
  return weights.init_random(config, args.seed)

def _experiment(args, **kwargs):
  return experiment.Experiment(_store(args), wsola_config = _wsolaConfig(args), resample_params = _kaiserParams(args),
                               **kwargs)

def _writeLines(lines, out):
  text = "".join(line + "\n" for line in lines)
  if (out is None):
    sys.stdout.write(text)
    return
  try:
    with open(out, "w", encoding = "utf-8") as fp:
      fp.write(text)
  except OSError as e:
    raise IOError("Cannot write %s: %s" % (out, e)) from e

def _runWsola(args):
  buffer = audio.load_wav(args.input)
  audio.save_wav(wsola.wsola(buffer, args.factor, _wsolaConfig(args)), args.output, args.format)

def _runWarp(args):
  runner = experiment.Experiment(_store(args), resample_params = _kaiserParams(args))
  mel = runner.analyse(runner.prepare(audio.load_wav(args.input)))
  spec = generator.RateConversionSpec(args.factor, args.insertion, args.method)
  audio.save_wav(runner.synth.forward(mel, spec), args.output, args.format)

def _runResample(args):
  buffer = audio.load_wav(args.input)
  samples = interp.resample_bandlimited(buffer.samples, buffer.sample_rate_hz, args.rate, _kaiserParams(args))
  audio.save_wav(audio.AudioBuffer(samples, args.rate), args.output, args.format)

def _runMel(args):
  mel_config = spectral.MelConfig()
  buffer = audio.load_wav(args.input)
  if (buffer.sample_rate_hz != mel_config.sample_rate_hz):
    samples = interp.resample_bandlimited(buffer.samples, buffer.sample_rate_hz, mel_config.sample_rate_hz)
    buffer = audio.AudioBuffer(samples, mel_config.sample_rate_hz)
  mel = spectral.mel_spectrogram(buffer, mel_config)
  try:
    with open(args.output, "wb") as fp:
      np.save(fp, mel.data)
  except OSError as e:
    raise IOError("Cannot write %s: %s" % (args.output, e)) from e

def _runGenInit(args):
  config = generator.GeneratorConfig(base_channels = args.base_channels)
  weights.save_weights(weights.init_random(config, args.seed), args.out)

def _runEvalMcd(args):
  runner = _experiment(args, n_coeffs = args.n_coeffs, threads = thread_count())
  reports = runner.runCorpusMcd(corpus.scan(args.corpus), args.methods)
  _writeLines([report.toJson() for report in reports], args.out)

def _runEvalRtf(args):
  runner = _experiment(args, repeats = args.repeats)
  named = [(pathlib.Path(path).name, audio.load_wav(path)) for path in args.inputs]
  reports = runner.runRtf(named, args.factors, args.methods)
  _writeLines([report.toJson() for report in reports], args.out)

def _runEvalRate(args):
  rows, means = experiment.rate_table(corpus.scan(args.corpus))
  lines = [json.dumps(row, ensure_ascii = False) for row in rows]
  lines += [json.dumps(mean, ensure_ascii = False) for mean in means]
  _writeLines(lines, args.out)

def _runMatrix(args):
  mora = args.mora
  if (mora is None):
    mora = corpus.read_mora(corpus.mora_sidecar(args.input))

  runner = _experiment(args, n_coeffs = args.n_coeffs, repeats = args.repeats, threads = thread_count())
  reports = runner.runMatrix(audio.load_wav(args.input), args.factors, methods.ALL, mora)
  _writeLines([report.toJson() for report in reports], args.out)

COMMANDS = {
  "wsola":     _runWsola,
  "warp":      _runWarp,
  "resample":  _runResample,
  "mel":       _runMel,
  "gen-init":  _runGenInit,
  "eval-mcd":  _runEvalMcd,
  "eval-rtf":  _runEvalRtf,
  "eval-rate": _runEvalRate,
  "matrix":    _runMatrix
}

def _configureLogging(verbosity):
  level = logging.WARNING
  if (verbosity == 1):
    level = logging.INFO
  elif (verbosity >= 2):
    level = logging.DEBUG
  logging.basicConfig(level = level, stream = sys.stderr, format = "%(levelname)s %(name)s: %(message)s")

def run(argv = None):
  """ Run the command line and return the exit code. """

  try:
    args = build_parser().parse_args(argv)
    _configureLogging(args.verbose)
    log.debug("Running %s", args.command)
    COMMANDS[args.command](args)
  except SystemExit as e:
    # --help
    return e.code if isinstance(e.code, int) else EXIT_OK
  except UsageError as e:
    sys.stderr.write("%s\n" % e)
    return EXIT_USAGE
  except OSError as e:
    sys.stderr.write("ratewarp: %s\n" % e)
    return EXIT_IO
  except (ValueError, KeyError) as e:
    sys.stderr.write("ratewarp: %s\n" % e)
    return EXIT_DATA
  return EXIT_OK

def main():
  sys.exit(run())
