#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace looming {

enum class NeuronId { Lgmd1 = 0, Lgmd2 = 1, LptcR = 2, LptcL = 3 };

inline constexpr std::array<NeuronId, 4> kAllNeurons = {NeuronId::Lgmd1, NeuronId::Lgmd2, NeuronId::LptcR,
                                                        NeuronId::LptcL};

std::string_view neuron_name(NeuronId id);

struct NeuronOutput {
  NeuronId id = NeuronId::Lgmd1;
  double potential = 0.0;
  int spikes = 0;
  std::int64_t frame_index = 0;
};

struct SpikeParams {
  double k_sp = 4.0;
  // Signed: positive for LGMDs and LPTC-R, negative for LPTC-L.
  double t_sp = 0.7;

  void validate() const;
};

// Sigmoid membrane potential from a summed medulla drive.
//   LGMDs:  1 / (1 + exp(-drive / (cells * scale)))          in [0.5, 1)
//   LPTC-R: 2 / (1 + exp(-drive / (cells * scale))) - 1      in [0, 1)
//   LPTC-L: the negation of the LPTC-R form                  in (-1, 0]
// Throws std::invalid_argument for cell_count == 0, negative drive, or a
// nonpositive scale.
double integrate_and_activate(NeuronId id, double drive, std::size_t cell_count, double scale);

// floor(exp(k_sp * (|u| - |t_sp|))) at or above threshold, else 0.
int spike_encode(double u, const SpikeParams& p);

}  // namespace looming
