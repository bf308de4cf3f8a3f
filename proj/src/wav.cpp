// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "phaseret/error.hpp"

namespace phaseret {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t ReadU32(const unsigned char* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
         (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

std::uint16_t ReadU16(const unsigned char* p) {
  return std::uint16_t(p[0] | (p[1] << 8));
}

void PutU32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void PutU16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

// Decodes one sample of the given encoding into [-1, 1].
double DecodeSample(const unsigned char* p, const Format& fmt) {
  if (fmt.tag == kFormatFloat) {
    std::uint32_t bits = ReadU32(p);
    float f;
    std::memcpy(&f, &bits, sizeof f);
    return static_cast<double>(f);
  }
  switch (fmt.bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
    case 24: {
      std::int32_t v = std::int32_t(p[0]) | (std::int32_t(p[1]) << 8) |
                       (std::int32_t(p[2]) << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<std::int32_t>(ReadU32(p)) / 2147483648.0;
  }
  return 0.0;
}

}  // namespace

Signal ReadWav(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::kFileNotFound, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

  auto malformed = [&](const std::string& why) {
    return Error(ErrorKind::kMalformedFile, path.string() + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw malformed("not a RIFF/WAVE file");
  }

  std::optional<Format> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::size_t size = ReadU32(chunk + 4);
    std::size_t available = bytes.size() - pos - 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) throw malformed("truncated fmt chunk");
      Format f;
      f.tag = ReadU16(chunk + 8);
      f.channels = ReadU16(chunk + 10);
      f.sample_rate = ReadU32(chunk + 12);
      f.bits = ReadU16(chunk + 22);
      if (f.tag == kFormatExtensible) {
        if (size < 40) throw malformed("truncated WAVE_FORMAT_EXTENSIBLE");
        // The sub-format GUID starts with the actual format tag.
        f.tag = ReadU16(chunk + 8 + 24);
      }
      fmt = f;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Streaming writers may leave the size unset; use what is present.
      data_size = std::min(size, available);
      break;
    }
    pos += 8 + size + (size & 1);
  }
  if (!fmt) throw malformed("missing fmt chunk");
  if (!data) throw malformed("missing data chunk");
  if (fmt->channels == 0) throw malformed("zero channels");
  if (fmt->sample_rate == 0) throw malformed("zero sample rate");

  bool supported =
      (fmt->tag == kFormatPcm &&
       (fmt->bits == 8 || fmt->bits == 16 || fmt->bits == 24 || fmt->bits == 32)) ||
      (fmt->tag == kFormatFloat && fmt->bits == 32);
  if (!supported) {
    throw Error(ErrorKind::kUnsupportedFormat,
                path.string() + ": unsupported encoding (format " +
                    std::to_string(fmt->tag) + ", " + std::to_string(fmt->bits) +
                    " bits)");
  }

  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  const std::size_t num_frames = data_size / frame_bytes;

  Signal signal;
  signal.sample_rate = static_cast<int>(fmt->sample_rate);
  signal.samples.resize(num_frames);
  for (std::size_t i = 0; i < num_frames; ++i) {
    const unsigned char* frame = data + i * frame_bytes;
    double sum = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      sum += DecodeSample(frame + c * bytes_per_sample, *fmt);
    }
    signal.samples[i] = sum / fmt->channels;
  }
  return signal;
}

void WriteWav(const Signal& signal, const std::filesystem::path& path) {
  if (signal.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot write an empty signal");
  }
  if (signal.sample_rate <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "sample rate must be positive");
  }
  for (double s : signal.samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::kNonFinite, "non-finite sample in signal");
    }
  }

  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(signal.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (double s : signal.samples) {
    double q = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    auto v = static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0));
    PutU16(out, static_cast<std::uint16_t>(v));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace phaseret
