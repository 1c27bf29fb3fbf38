#pragma once

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "looming/frontend.hpp"

namespace testing {

// Fresh scratch directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("looming_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline looming::Plane random_plane(int w, int h, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  looming::Plane p(w, h);
  for (double& v : p.values()) v = u(rng);
  return p;
}

// Integral luminance, as a camera would deliver.
inline looming::Frame random_frame(int w, int h, std::uint64_t seed) {
  looming::Frame f = random_plane(w, h, seed, 0.0, 255.0);
  for (double& v : f.values()) v = std::floor(v);
  return f;
}

}  // namespace testing
