#include "looming/arbiter.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace looming {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Collision: return "COLLISION";
    case Verdict::Suppressed: return "SUPPRESSED";
    case Verdict::Quiet: return "QUIET";
  }
  return "QUIET";
}

std::string_view variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::Hybrid: return "HYBRID";
    case ModelVariant::LgmdsOnly: return "LGMDS_ONLY";
    case ModelVariant::Lgmd2Only: return "LGMD2_ONLY";
  }
  return "HYBRID";
}

ModelVariant parse_variant(std::string_view s) {
  std::string up(s);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "HYBRID") return ModelVariant::Hybrid;
  if (up == "LGMDS_ONLY") return ModelVariant::LgmdsOnly;
  if (up == "LGMD2_ONLY") return ModelVariant::Lgmd2Only;
  throw std::invalid_argument("unknown model variant '" + std::string(s) + "'");
}

void ArbiterParams::validate() const {
  if (n_confirm < 1) throw std::invalid_argument("arbiter: n_confirm must be >= 1");
  if (suppression_window < 0) throw std::invalid_argument("arbiter: suppression_window must be >= 0");
}

Decision compete(std::span<const NeuronOutput, 4> outputs, ArbiterState& state, const ArbiterParams& params) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (outputs[i].id != kAllNeurons[i]) throw std::invalid_argument("compete: outputs must be in NeuronId order");
    if (outputs[i].frame_index != outputs[0].frame_index) {
      throw std::invalid_argument("compete: neuron outputs have mismatched frame indices");
    }
  }

  Decision d;
  d.frame_index = outputs[0].frame_index;
  d.lgmd1_spikes = outputs[0].spikes;
  d.lgmd2_spikes = outputs[1].spikes;
  d.lptc_r_spikes = outputs[2].spikes;
  d.lptc_l_spikes = outputs[3].spikes;

  const bool lptc_active =
      params.variant == ModelVariant::Hybrid && (d.lptc_r_spikes >= 1 || d.lptc_l_spikes >= 1);

  if (lptc_active) {
    state.suppression_window_remaining = params.suppression_window;
    d.verdict = Verdict::Suppressed;
  } else if (state.suppression_window_remaining > 0) {
    --state.suppression_window_remaining;
    d.verdict = Verdict::Suppressed;
  } else if (params.variant == ModelVariant::Lgmd2Only) {
    if (d.lgmd2_spikes >= 1) {
      d.verdict = Verdict::Collision;
      d.effective_lgmd_spikes = d.lgmd2_spikes;
    }
  } else if (d.lgmd1_spikes >= 1 && d.lgmd2_spikes >= 1) {
    d.verdict = Verdict::Collision;
    d.effective_lgmd_spikes = std::min(d.lgmd1_spikes, d.lgmd2_spikes);
  }
  return d;
}

bool trigger_check(const Decision& d, ArbiterState& state, const ArbiterParams& params) {
  if (d.verdict != Verdict::Collision) {
    state.consecutive_collision_frames = 0;
    return false;
  }
  state.consecutive_collision_frames = std::min(state.consecutive_collision_frames + 1, params.n_confirm);
  return state.consecutive_collision_frames >= params.n_confirm;
}

}  // namespace looming
