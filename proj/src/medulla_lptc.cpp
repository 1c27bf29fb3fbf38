#include "looming/medulla_lptc.hpp"

#include <stdexcept>

namespace looming {

void EmdParams::validate() const {
  if (sample_spacing < 1) throw std::invalid_argument("emd: sample_spacing must be >= 1");
  if (!(delay_coeff > 0.0 && delay_coeff <= 1.0)) throw std::invalid_argument("emd: delay_coeff must be in (0, 1]");
}

namespace {

void correlate_channel(const Plane& x, const Plane& delayed, int spacing, DirectionField& out) {
  const int w = out.width();
  for (int y = 0; y < out.height(); ++y) {
    const double* xr = x.row(y);
    const double* dr = delayed.row(y);
    double* o = out.row(y);
    for (int i = 0; i < w; ++i) {
      const int j = i + spacing;
      o[i] += dr[i] * xr[j] - xr[i] * dr[j];
    }
  }
}

void low_pass(const Plane& x, Plane& delayed, double coeff) {
  auto xv = x.values();
  auto dv = delayed.values();
  for (std::size_t n = 0; n < dv.size(); ++n) dv[n] += coeff * (xv[n] - dv[n]);
}

}  // namespace

DirectionField emd_correlate(const ChannelPair& c, EmdState& state, const EmdParams& params) {
  params.validate();
  require_same_shape(c.on, c.off, "emd_correlate");
  if (state.delayed_on.empty()) state.delayed_on = Plane(c.on.width(), c.on.height());
  if (state.delayed_off.empty()) state.delayed_off = Plane(c.on.width(), c.on.height());
  require_same_shape(c.on, state.delayed_on, "emd_correlate");

  const int out_w = c.on.width() - params.sample_spacing;
  if (out_w <= 0) throw std::invalid_argument("emd_correlate: frame narrower than sample_spacing");
  DirectionField r(out_w, c.on.height());
  correlate_channel(c.on, state.delayed_on, params.sample_spacing, r);
  correlate_channel(c.off, state.delayed_off, params.sample_spacing, r);
  low_pass(c.on, state.delayed_on, params.delay_coeff);
  low_pass(c.off, state.delayed_off, params.delay_coeff);
  return r;
}

DirectionDrive direction_pool(const DirectionField& d) {
  return {mirror_symmetric_sum(d, [](double v) { return v > 0.0 ? v : 0.0; }),
          mirror_symmetric_sum(d, [](double v) { return v < 0.0 ? -v : 0.0; })};
}

}  // namespace looming
