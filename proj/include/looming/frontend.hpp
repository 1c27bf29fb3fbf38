#pragma once

#include <optional>
#include <vector>

#include "looming/grid.hpp"

namespace looming {

constexpr int kDefaultFrameWidth = 99;
constexpr int kDefaultFrameHeight = 72;

// Luminance plane, values in [0, 255].
using Frame = Plane;
// Signed per-pixel luminance change between two frames.
using DiffImage = Plane;

// Co-registered rectified ON (increment) and OFF (decrement) planes.
struct ChannelPair {
  Plane on;
  Plane off;
};

struct LaminaState {
  std::optional<Frame> prev_frame;
  Plane adapt_on;
  Plane adapt_off;
};

struct FrontendParams {
  double inner_sigma = 1.0;
  int inner_radius = 1;  // 3x3 support
  double outer_sigma = 2.0;
  int outer_radius = 3;  // 7x7 support
  double alpha_up = 0.8;
  double alpha_down = 0.1;
};

// Throws std::invalid_argument when any value is outside [0, 255] or not finite.
void validate_frame(const Frame& f);

DiffImage differential(const Frame& prev, const Frame& curr);

// Unit-sum sampled 1D Gaussian with 2*radius+1 taps.
std::vector<double> gaussian_kernel(double sigma, int radius);

// Separable convolution with edge replication.
Plane gaussian_blur(const Plane& p, const std::vector<double>& kernel);

DiffImage dog_filter(const DiffImage& d, const FrontendParams& params = {});

ChannelPair split_on_off(const DiffImage& d);

// Fast-depolarising-slow-repolarising adaptation. Output is the input minus
// the adaptation level from the previous frame, rectified at zero; the
// adaptation grids in `state` advance in place.
ChannelPair fdsr_adapt(const ChannelPair& c, LaminaState& state, const FrontendParams& params = {});

// Retina + lamina for one stream. Owns its LaminaState.
class Frontend {
 public:
  explicit Frontend(FrontendParams params = {});

  // First frame yields zero planes. Throws std::invalid_argument if the frame
  // dimensions change mid-sequence.
  ChannelPair process_frame(const Frame& f);

  const LaminaState& state() const { return state_; }
  const FrontendParams& params() const { return params_; }
  void reset();

 private:
  FrontendParams params_;
  std::vector<double> inner_;
  std::vector<double> outer_;
  LaminaState state_;
  // Scratch planes reused across frames.
  Plane diff_, tmp_, inner_out_, outer_out_;
};

}  // namespace looming
