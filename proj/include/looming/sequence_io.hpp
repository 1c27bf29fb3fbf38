#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "looming/frontend.hpp"

namespace looming {

// Malformed sequence or image data. offset() is the byte offset at which
// parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

using FrameSequence = std::vector<Frame>;

// LNSQ container: "LNSQ", u32 width, u32 height, u32 frame count (all
// little-endian), then width*height bytes per frame, row-major.
// Frames must hold integral luminance in [0, 255].
std::vector<std::uint8_t> encode_lnsq(const FrameSequence& frames);
FrameSequence decode_lnsq(const std::vector<std::uint8_t>& bytes, const std::string& source = "<memory>");
void write_lnsq(const FrameSequence& frames, const std::string& path);
FrameSequence read_lnsq(const std::string& path);

// Binary PGM (P5, maxval <= 255).
std::vector<std::uint8_t> encode_pgm(const Frame& f);
Frame decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& source = "<memory>");
void write_pgm(const Frame& f, const std::string& path);
Frame read_pgm(const std::string& path);

// Directory of frame_%05d.pgm files, read from frame_00000 until the first
// missing index.
void write_pgm_directory(const FrameSequence& frames, const std::string& dir);
FrameSequence read_pgm_directory(const std::string& dir);

// Dispatches on the path: a directory is read as PGM frames, anything else
// as an LNSQ file.
FrameSequence read_frames(const std::string& path);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace looming
