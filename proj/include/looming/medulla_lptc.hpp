#pragma once

#include "looming/frontend.hpp"

namespace looming {

struct EmdParams {
  int sample_spacing = 2;
  // First-order low-pass coefficient realising the correlator delay.
  // 1.0 degenerates to a pure one-frame lag.
  double delay_coeff = 0.7;

  void validate() const;
};

struct EmdState {
  Plane delayed_on;
  Plane delayed_off;
};

// Signed horizontal motion evidence, width = frame width - sample_spacing.
// Positive values are rightward.
using DirectionField = Plane;

struct DirectionDrive {
  double right = 0.0;
  double left = 0.0;
};

// Correlation-type detector between each pixel and its neighbour
// sample_spacing columns to the right, ON and OFF channels separately then
// summed. Uses the delayed planes from before this frame, then updates them.
DirectionField emd_correlate(const ChannelPair& c, EmdState& state, const EmdParams& params = {});

// right = sum of positive values, left = sum of |negative values|.
DirectionDrive direction_pool(const DirectionField& d);

}  // namespace looming
