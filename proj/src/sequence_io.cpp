#include "looming/sequence_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

namespace looming {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kLnsqHeader = 16;

std::uint8_t to_byte(double v) {
  if (!(v >= 0.0 && v <= 255.0) || std::floor(v) != v) {
    throw std::invalid_argument("frame value " + std::to_string(v) + " is not an integral byte luminance");
  }
  return static_cast<std::uint8_t>(v);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

std::string pgm_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05zu.pgm", index);
  return buf;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t offset, const std::string& message)
    : std::runtime_error(source + ": byte offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

std::vector<std::uint8_t> encode_lnsq(const FrameSequence& frames) {
  const int w = frames.empty() ? 0 : frames.front().width();
  const int h = frames.empty() ? 0 : frames.front().height();
  std::vector<std::uint8_t> out{'L', 'N', 'S', 'Q'};
  put_u32(out, static_cast<std::uint32_t>(w));
  put_u32(out, static_cast<std::uint32_t>(h));
  put_u32(out, static_cast<std::uint32_t>(frames.size()));
  out.reserve(kLnsqHeader + frames.size() * static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (const auto& f : frames) {
    if (f.width() != w || f.height() != h) throw std::invalid_argument("encode_lnsq: frame dimensions vary");
    for (double v : f.values()) out.push_back(to_byte(v));
  }
  return out;
}

FrameSequence decode_lnsq(const std::vector<std::uint8_t>& b, const std::string& source) {
  if (b.size() < 4) throw ParseError(source, b.size(), "truncated magic");
  if (!(b[0] == 'L' && b[1] == 'N' && b[2] == 'S' && b[3] == 'Q')) throw ParseError(source, 0, "bad magic, expected LNSQ");
  if (b.size() < kLnsqHeader) throw ParseError(source, b.size(), "truncated header");
  const std::uint32_t w = get_u32(b, 4);
  const std::uint32_t h = get_u32(b, 8);
  const std::uint32_t n = get_u32(b, 12);
  if ((w == 0 || h == 0) && n != 0) throw ParseError(source, 4, "zero frame dimension with nonzero frame count");
  const std::uint64_t frame_bytes = static_cast<std::uint64_t>(w) * h;
  const std::uint64_t expected = kLnsqHeader + frame_bytes * n;
  if (b.size() < expected) {
    throw ParseError(source, b.size(),
                     "truncated payload: header declares " + std::to_string(n) + " frames of " + std::to_string(w) + "x" +
                         std::to_string(h) + " (" + std::to_string(expected) + " bytes)");
  }
  if (b.size() > expected) {
    throw ParseError(source, static_cast<std::size_t>(expected),
                     "payload larger than header declares (" + std::to_string(b.size()) + " bytes)");
  }
  FrameSequence frames;
  frames.reserve(n);
  std::size_t at = kLnsqHeader;
  for (std::uint32_t k = 0; k < n; ++k) {
    Frame f(static_cast<int>(w), static_cast<int>(h));
    for (double& v : f.values()) v = b[at++];
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_lnsq(const FrameSequence& frames, const std::string& path) { write_file_bytes(path, encode_lnsq(frames)); }

FrameSequence read_lnsq(const std::string& path) { return decode_lnsq(read_file_bytes(path), path); }

std::vector<std::uint8_t> encode_pgm(const Frame& f) {
  const std::string header = "P5\n" + std::to_string(f.width()) + " " + std::to_string(f.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (double v : f.values()) out.push_back(to_byte(v));
  return out;
}

Frame decode_pgm(const std::vector<std::uint8_t>& b, const std::string& source) {
  std::size_t at = 0;
  if (b.size() < 2 || b[0] != 'P' || b[1] != '5') throw ParseError(source, 0, "not a binary PGM (P5)");
  at = 2;
  auto skip_space = [&] {
    while (at < b.size()) {
      if (b[at] == '#') {
        while (at < b.size() && b[at] != '\n') ++at;
      } else if (std::isspace(b[at])) {
        ++at;
      } else {
        break;
      }
    }
  };
  auto read_number = [&](const char* what) {
    skip_space();
    const std::size_t start = at;
    std::uint64_t v = 0;
    while (at < b.size() && std::isdigit(b[at])) {
      v = v * 10 + (b[at] - '0');
      if (v > 1u << 20) throw ParseError(source, start, std::string(what) + " too large");
      ++at;
    }
    if (at == start) throw ParseError(source, start, std::string("expected ") + what);
    return static_cast<int>(v);
  };
  const int w = read_number("width");
  const int h = read_number("height");
  const std::size_t maxval_at = at;
  const int maxval = read_number("maxval");
  if (maxval <= 0 || maxval > 255) throw ParseError(source, maxval_at, "maxval must be in [1, 255]");
  if (at >= b.size() || !std::isspace(b[at])) throw ParseError(source, at, "expected whitespace after maxval");
  ++at;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (b.size() - at < need) throw ParseError(source, b.size(), "truncated pixel data");
  Frame f(w, h);
  for (double& v : f.values()) {
    v = std::round(255.0 * b[at++] / maxval);
  }
  return f;
}

void write_pgm(const Frame& f, const std::string& path) { write_file_bytes(path, encode_pgm(f)); }

Frame read_pgm(const std::string& path) { return decode_pgm(read_file_bytes(path), path); }

void write_pgm_directory(const FrameSequence& frames, const std::string& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) write_pgm(frames[i], (fs::path(dir) / pgm_name(i)).string());
}

FrameSequence read_pgm_directory(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir + "' is not a directory");
  FrameSequence frames;
  for (std::size_t i = 0;; ++i) {
    const fs::path p = fs::path(dir) / pgm_name(i);
    if (!fs::exists(p)) break;
    frames.push_back(read_pgm(p.string()));
    if (frames.back().width() != frames.front().width() || frames.back().height() != frames.front().height()) {
      throw std::runtime_error(p.string() + ": frame dimensions differ from frame_00000.pgm");
    }
  }
  if (frames.empty()) throw std::runtime_error("'" + dir + "' contains no frame_00000.pgm");
  return frames;
}

FrameSequence read_frames(const std::string& path) {
  if (fs::is_directory(path)) return read_pgm_directory(path);
  return read_lnsq(path);
}

}  // namespace looming
