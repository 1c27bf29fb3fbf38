#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "looming/neurons.hpp"

namespace looming {

enum class Verdict { Collision, Suppressed, Quiet };

std::string_view verdict_name(Verdict v);

// Which neurons take part in the decision.
//   Hybrid:     LPTC veto + both LGMDs must agree.
//   LgmdsOnly:  LPTC inputs ablated; both LGMDs must agree.
//   Lgmd2Only:  LPTC inputs ablated; LGMD-2 alone decides.
enum class ModelVariant { Hybrid, LgmdsOnly, Lgmd2Only };

std::string_view variant_name(ModelVariant v);
// Accepts HYBRID / LGMDS_ONLY / LGMD2_ONLY (case-insensitive).
ModelVariant parse_variant(std::string_view s);

struct Decision {
  std::int64_t frame_index = 0;
  Verdict verdict = Verdict::Quiet;
  int lgmd1_spikes = 0;
  int lgmd2_spikes = 0;
  int lptc_r_spikes = 0;
  int lptc_l_spikes = 0;
  int effective_lgmd_spikes = 0;
};

struct ArbiterParams {
  int n_confirm = 2;
  // Frames that stay vetoed after the last LPTC spike. 0 disables.
  int suppression_window = 3;
  ModelVariant variant = ModelVariant::Hybrid;

  void validate() const;
};

struct ArbiterState {
  int consecutive_collision_frames = 0;
  int suppression_window_remaining = 0;
};

// Coordination and competition over one frame's four neuron outputs, in
// NeuronId order. Throws std::invalid_argument if the frame indices differ
// or the span is not in NeuronId order.
Decision compete(std::span<const NeuronOutput, 4> outputs, ArbiterState& state, const ArbiterParams& params);

// True once the last n_confirm decisions were all COLLISION.
bool trigger_check(const Decision& d, ArbiterState& state, const ArbiterParams& params);

}  // namespace looming
