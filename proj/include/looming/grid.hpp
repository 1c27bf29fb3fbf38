#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace looming {

// Row-major 2D grid. Coordinates are (x = column, y = row).
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw std::invalid_argument("grid dimensions must be nonnegative");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  // Edge-replicating access: out-of-range coordinates clamp to the border.
  const T& clamped(int x, int y) const {
    return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
  const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using Plane = Grid<double>;

template <typename A, typename B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                                std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
  }
}

// Reverses column order.
template <typename T>
Grid<T> mirror_horizontal(const Grid<T>& g) {
  Grid<T> out(g.width(), g.height());
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) out(g.width() - 1 - x, y) = g(x, y);
  }
  return out;
}

inline double plane_sum(const Plane& p) {
  double s = 0.0;
  for (double v : p.values()) s += v;
  return s;
}

inline double plane_min(const Plane& p) {
  return p.empty() ? 0.0 : *std::min_element(p.values().begin(), p.values().end());
}

inline double plane_max(const Plane& p) {
  return p.empty() ? 0.0 : *std::max_element(p.values().begin(), p.values().end());
}

// Sum whose result is bit-identical for a plane and its horizontal mirror:
// each row is accumulated from symmetric column pairs.
template <typename F>
double mirror_symmetric_sum(const Plane& p, F&& transform) {
  double total = 0.0;
  const int w = p.width();
  for (int y = 0; y < p.height(); ++y) {
    const double* r = p.row(y);
    double row_sum = 0.0;
    int lo = 0;
    int hi = w - 1;
    for (; lo < hi; ++lo, --hi) row_sum += transform(r[lo]) + transform(r[hi]);
    if (lo == hi) row_sum += transform(r[lo]);
    total += row_sum;
  }
  return total;
}

}  // namespace looming
