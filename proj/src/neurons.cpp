#include "looming/neurons.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace looming {

std::string_view neuron_name(NeuronId id) {
  switch (id) {
    case NeuronId::Lgmd1: return "lgmd1";
    case NeuronId::Lgmd2: return "lgmd2";
    case NeuronId::LptcR: return "lptc_r";
    case NeuronId::LptcL: return "lptc_l";
  }
  return "unknown";
}

void SpikeParams::validate() const {
  if (!(k_sp > 0.0)) throw std::invalid_argument("spike params: k_sp must be > 0");
  const double t = std::fabs(t_sp);
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("spike params: |t_sp| must be in (0, 1)");
}

double integrate_and_activate(NeuronId id, double drive, std::size_t cell_count, double scale) {
  if (cell_count == 0) throw std::invalid_argument("integrate_and_activate: cell_count must be > 0");
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_and_activate: scale must be > 0");
  if (!(drive >= 0.0)) throw std::invalid_argument("integrate_and_activate: drive must be >= 0");

  const double z = drive / (static_cast<double>(cell_count) * scale);
  const double logistic = 1.0 / (1.0 + std::exp(-z));
  double u = 0.0;
  switch (id) {
    case NeuronId::Lgmd1:
    case NeuronId::Lgmd2:
      u = logistic;
      break;
    case NeuronId::LptcR:
      u = 2.0 * logistic - 1.0;
      break;
    case NeuronId::LptcL:
      u = -(2.0 * logistic - 1.0);
      break;
  }
  // Large drives round to exactly +-1 in floating point; keep the open bound.
  const double top = std::nextafter(1.0, 0.0);
  if (u > top) u = top;
  if (u < -top) u = -top;
  return u;
}

int spike_encode(double u, const SpikeParams& p) {
  const double mag = std::fabs(u);
  const double thr = std::fabs(p.t_sp);
  if (mag < thr) return 0;
  return static_cast<int>(std::floor(std::exp(p.k_sp * (mag - thr))));
}

}  // namespace looming
