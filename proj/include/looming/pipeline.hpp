#pragma once

#include <array>
#include <cstdint>

#include "looming/arbiter.hpp"
#include "looming/config.hpp"
#include "looming/frontend.hpp"
#include "looming/medulla_lgmd.hpp"
#include "looming/medulla_lptc.hpp"
#include "looming/neurons.hpp"

namespace looming {

struct FrameResult {
  std::int64_t frame_index = 0;
  std::array<NeuronOutput, 4> neurons{};
  Decision decision;
  bool trigger = false;
  // Summed medulla drives before the sigmoid, NeuronId order.
  std::array<double, 4> drives{};
};

// The four-neuron model for a single frame stream: shared retina/lamina,
// LGMD and LPTC medulla branches, spiking neurons and the arbiter. Each
// instance owns all of its temporal state.
class HybridModel {
 public:
  explicit HybridModel(ModelConfig config = ModelConfig::defaults());

  FrameResult process(const Frame& f);

  const ModelConfig& config() const { return config_; }
  const ChannelPair& last_channels() const { return last_channels_; }
  const ArbiterState& arbiter_state() const { return arbiter_; }
  std::int64_t frames_processed() const { return next_index_; }

  // Clears arbiter counters without touching the sensory state.
  void reset_arbiter() { arbiter_ = ArbiterState{}; }

 private:
  ModelConfig config_;
  Frontend frontend_;
  SummationField lgmd1_field_;
  SummationField lgmd2_field_;
  EmdState emd_;
  ArbiterState arbiter_;
  ChannelPair last_channels_;
  std::int64_t next_index_ = 0;
};

}  // namespace looming
