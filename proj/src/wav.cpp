// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace lowlat {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

template <typename T>
T read_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value = T(value | (T(bytes[i]) << (8 * i)));
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = (unsigned char)((value >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

std::string read_tag(std::istream& in) {
  char tag[4];
  in.read(tag, 4);
  return in ? std::string(tag, 4) : std::string();
}

}  // namespace

Signal wav_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);

  if (read_tag(in) != "RIFF") throw Error(path + " is not a RIFF file");
  read_le<std::uint32_t>(in);  // riff size, unchecked
  if (read_tag(in) != "WAVE") throw Error(path + " is not a WAVE file");

  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;

  Signal signal;
  while (in) {
    const std::string tag = read_tag(in);
    if (!in) break;
    const std::uint32_t size = read_le<std::uint32_t>(in);
    if (!in) throw Error(path + " has a truncated chunk header");

    if (tag == "fmt ") {
      if (size < 16) throw Error(path + " has a malformed fmt chunk");
      format_tag = read_le<std::uint16_t>(in);
      channels = read_le<std::uint16_t>(in);
      sample_rate = read_le<std::uint32_t>(in);
      read_le<std::uint32_t>(in);  // byte rate
      read_le<std::uint16_t>(in);  // block align
      bits = read_le<std::uint16_t>(in);
      in.ignore(std::streamsize(size - 16));
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw Error(path + " has data before fmt");
      if (channels != 1)
        throw Error(path + ": unsupported channel count " +
                    std::to_string(channels) + " (mono only)");
      if (format_tag == kFormatPcm && bits == 16) {
        const std::size_t count = size / 2;
        signal.samples.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
          const auto raw = std::int16_t(read_le<std::uint16_t>(in));
          signal.samples[i] = double(raw) / 32768.0;
        }
      } else if (format_tag == kFormatIeeeFloat && bits == 32) {
        const std::size_t count = size / 4;
        signal.samples.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
          const std::uint32_t raw = read_le<std::uint32_t>(in);
          float value;
          std::memcpy(&value, &raw, sizeof(value));
          if (!std::isfinite(value))
            throw Error(path + " contains a non-finite sample");
          signal.samples[i] = double(value);
        }
      } else {
        throw Error(path + ": unsupported codec (format tag " +
                    std::to_string(format_tag) + ", " + std::to_string(bits) +
                    " bits); PCM16 and IEEE float32 only");
      }
      if (!in) throw Error(path + " has a truncated data chunk");
      signal.sample_rate = int(sample_rate);
      return signal;
    } else {
      in.ignore(std::streamsize(size + (size % 2)));  // chunks are word-aligned
    }
  }
  throw Error(path + " has no data chunk");
}

void wav_write(const std::string& path, const Signal& signal, WavFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);

  const bool pcm = format == WavFormat::Pcm16;
  const std::uint32_t bytes_per_sample = pcm ? 2 : 4;
  const auto data_size = std::uint32_t(signal.size() * bytes_per_sample);

  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, pcm ? kFormatPcm : kFormatIeeeFloat);
  write_le<std::uint16_t>(out, 1);  // mono
  write_le<std::uint32_t>(out, std::uint32_t(signal.sample_rate));
  write_le<std::uint32_t>(out, std::uint32_t(signal.sample_rate) * bytes_per_sample);
  write_le<std::uint16_t>(out, std::uint16_t(bytes_per_sample));
  write_le<std::uint16_t>(out, std::uint16_t(pcm ? 16 : 32));
  out.write("data", 4);
  write_le<std::uint32_t>(out, data_size);

  if (pcm) {
    for (double v : signal.samples) {
      double scaled = std::nearbyint(v * 32768.0);
      scaled = std::min(scaled, 32767.0);
      scaled = std::max(scaled, -32768.0);
      write_le<std::uint16_t>(out, std::uint16_t(std::int16_t(scaled)));
    }
  } else {
    for (double v : signal.samples) {
      const auto value = float(v);
      std::uint32_t raw;
      std::memcpy(&raw, &value, sizeof(raw));
      write_le<std::uint32_t>(out, raw);
    }
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace lowlat
