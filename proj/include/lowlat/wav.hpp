// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_WAV_HPP_
#define LOWLAT_WAV_HPP_

#include <string>

#include "lowlat/core.hpp"

namespace lowlat {

enum class WavFormat {
  Pcm16,    // 16-bit PCM, samples normalized to [-1, 1) by 1/32768
  Float32,  // IEEE float32, lossless round trip for float-valued samples
};

/// Reads a mono RIFF/WAVE file (PCM16 or IEEE float32). Multichannel files,
/// other codecs, and malformed headers are rejected.
Signal wav_read(const std::string& path);

void wav_write(const std::string& path, const Signal& signal,
               WavFormat format = WavFormat::Float32);

}  // namespace lowlat

#endif  // LOWLAT_WAV_HPP_
