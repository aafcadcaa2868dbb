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

from . import audio, generator, weights
AudioBuffer = audio.AudioBuffer
load_wav = audio.load_wav
save_wav = audio.save_wav
Generator = generator.Generator
GeneratorConfig = generator.GeneratorConfig
RateConversionSpec = generator.RateConversionSpec
load_weights = weights.load_weights
init_random = weights.init_random

__all__ = ["AudioBuffer", "load_wav", "save_wav", "Generator", "GeneratorConfig", "RateConversionSpec",
           "load_weights", "init_random"]
