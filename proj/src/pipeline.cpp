#include "looming/pipeline.hpp"

namespace looming {

HybridModel::HybridModel(ModelConfig config) : config_(std::move(config)), frontend_(config_.frontend) {
  config_.validate();
  config_.lgmd1.validate();
  config_.lgmd2.validate();
  config_.emd.validate();
  config_.arbiter.validate();
}

FrameResult HybridModel::process(const Frame& f) {
  FrameResult r;
  r.frame_index = next_index_++;

  last_channels_ = frontend_.process_frame(f);
  const auto identity = [](double v) { return v; };

  const Plane m1 = lgmd_medulla(last_channels_, lgmd1_field_, config_.lgmd1);
  const Plane m2 = lgmd_medulla(last_channels_, lgmd2_field_, config_.lgmd2);
  r.drives[0] = mirror_symmetric_sum(m1, identity);
  r.drives[1] = mirror_symmetric_sum(m2, identity);

  std::size_t lptc_cells = 1;
  if (config_.arbiter.variant == ModelVariant::Hybrid) {
    const DirectionField field = emd_correlate(last_channels_, emd_, config_.emd);
    const DirectionDrive dd = direction_pool(field);
    r.drives[2] = dd.right;
    r.drives[3] = dd.left;
    lptc_cells = field.size();
  }

  for (std::size_t i = 0; i < 4; ++i) {
    const NeuronId id = kAllNeurons[i];
    const std::size_t cells = i < 2 ? m1.size() : lptc_cells;
    NeuronOutput& n = r.neurons[i];
    n.id = id;
    n.frame_index = r.frame_index;
    n.potential = integrate_and_activate(id, r.drives[i], cells, config_.scale(id));
    n.spikes = spike_encode(n.potential, config_.spike_params(id));
  }

  r.decision = compete(r.neurons, arbiter_, config_.arbiter);
  r.trigger = trigger_check(r.decision, arbiter_, config_.arbiter);
  return r;
}

}  // namespace looming
