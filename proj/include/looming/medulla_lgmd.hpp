#pragma once

#include <array>
#include <deque>

#include "looming/frontend.hpp"

namespace looming {

// Lateral-inhibition kernel for one LGMD. spatial_weights is a 3x3 stencil
// indexed [dy + 1][dx + 1]; the centre weight is zero.
struct LgmdKernel {
  std::array<std::array<double, 3>, 3> spatial_weights{};
  int temporal_delay = 1;
  double bias_w = 0.3;
  double on_gain = 1.0;

  // Edge neighbours get `edge`, diagonals get `diag`.
  static LgmdKernel surround(double edge, double diag, int delay, double bias_w, double on_gain);
  static LgmdKernel lgmd1();
  static LgmdKernel lgmd2();

  void validate() const;
};

// Delayed-excitation history and the latest summation planes for one LGMD.
struct SummationField {
  Plane s_on;
  Plane s_off;
  // Front is the most recent excitation pair. Depth is temporal_delay.
  std::deque<ChannelPair> delay_buffer;
};

// Spatial convolution of a delayed excitation plane with the surround
// stencil (edge replication), scaled by `gain`.
Plane lateral_inhibition(const Plane& delayed_excitation, const LgmdKernel& k, double gain = 1.0);

// S = max(E - w * I, 0) per pixel.
Plane summation_competition(const Plane& e, const Plane& i, double w);

// One frame of LGMD medulla processing: per-channel inhibition and
// competition, returning S_on + S_off. Advances the field's delay buffer.
Plane lgmd_medulla(const ChannelPair& c, SummationField& field, const LgmdKernel& k);

}  // namespace looming
