#include "looming/medulla_lgmd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <stdexcept>

namespace looming {

LgmdKernel LgmdKernel::surround(double edge, double diag, int delay, double bias_w, double on_gain) {
  LgmdKernel k;
  k.spatial_weights = {{{diag, edge, diag}, {edge, 0.0, edge}, {diag, edge, diag}}};
  k.temporal_delay = delay;
  k.bias_w = bias_w;
  k.on_gain = on_gain;
  return k;
}

LgmdKernel LgmdKernel::lgmd1() { return surround(0.25, 0.125, 1, 0.3, 1.0); }

LgmdKernel LgmdKernel::lgmd2() { return surround(0.25, 0.125, 1, 0.3, 2.0); }

void LgmdKernel::validate() const {
  if (spatial_weights[1][1] != 0.0) throw std::invalid_argument("lgmd kernel: centre weight must be 0");
  for (const auto& row : spatial_weights) {
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("lgmd kernel: weights must be >= 0");
    }
  }
  if (temporal_delay < 1) throw std::invalid_argument("lgmd kernel: temporal_delay must be >= 1");
  if (!(bias_w >= 0.0)) throw std::invalid_argument("lgmd kernel: bias_w must be >= 0");
  if (!(on_gain >= 1.0)) throw std::invalid_argument("lgmd kernel: on_gain must be >= 1");
}

namespace {

// Inhibition for row y into `inh` (width w). `pad` holds three padded rows.
void inhibition_row(const Plane& e, const LgmdKernel& k, double gain, int y, std::vector<double>& pad,
                    double* inh) {
  const int w = e.width();
  const int h = e.height();
  for (int slot = 0; slot < 3; ++slot) {
    double* p = pad.data() + slot * (w + 2);
    const double* r = e.row(std::clamp(y + slot - 1, 0, h - 1));
    p[0] = r[0];
    std::copy(r, r + w, p + 1);
    p[w + 1] = r[w - 1];
  }
  for (int x = 0; x < w; ++x) inh[x] = 0.0;
  for (int dy = 0; dy < 3; ++dy) {
    const double* r = pad.data() + dy * (w + 2) + 1;
    const auto& wr = k.spatial_weights[static_cast<std::size_t>(dy)];
    // Left/right taps summed as a pair keeps mirrored inputs bit-exact.
    for (int x = 0; x < w; ++x) inh[x] += wr[1] * r[x] + (wr[0] * r[x - 1] + wr[2] * r[x + 1]);
  }
  for (int x = 0; x < w; ++x) inh[x] *= gain;
}

// summation_competition(e, lateral_inhibition(delayed, k, gain), k.bias_w)
// without the intermediate plane.
void compete_into(const Plane& e, const Plane& delayed, const LgmdKernel& k, double gain, Plane& s) {
  const int w = e.width();
  if (!s.same_shape(e)) s = Plane(e.width(), e.height());
  if (e.empty()) return;
  std::vector<double> pad(static_cast<std::size_t>(3 * (w + 2)));
  std::vector<double> inh(static_cast<std::size_t>(w));
  for (int y = 0; y < e.height(); ++y) {
    inhibition_row(delayed, k, gain, y, pad, inh.data());
    const double* er = e.row(y);
    double* sr = s.row(y);
    for (int x = 0; x < w; ++x) {
      const double v = er[x] - k.bias_w * inh[static_cast<std::size_t>(x)];
      sr[x] = v > 0.0 ? v : 0.0;
    }
  }
}

}  // namespace

Plane lateral_inhibition(const Plane& e, const LgmdKernel& k, double gain) {
  Plane out(e.width(), e.height());
  if (e.empty()) return out;
  std::vector<double> pad(static_cast<std::size_t>(3 * (e.width() + 2)));
  for (int y = 0; y < e.height(); ++y) inhibition_row(e, k, gain, y, pad, out.row(y));
  return out;
}

Plane summation_competition(const Plane& e, const Plane& i, double w) {
  require_same_shape(e, i, "summation_competition");
  Plane s(e.width(), e.height());
  auto ev = e.values();
  auto iv = i.values();
  auto sv = s.values();
  for (std::size_t n = 0; n < sv.size(); ++n) {
    const double v = ev[n] - w * iv[n];
    sv[n] = v > 0.0 ? v : 0.0;
  }
  return s;
}

Plane lgmd_medulla(const ChannelPair& c, SummationField& field, const LgmdKernel& k) {
  require_same_shape(c.on, c.off, "lgmd_medulla");
  const auto depth = static_cast<std::size_t>(k.temporal_delay);
  while (field.delay_buffer.size() < depth) {
    field.delay_buffer.push_back({Plane(c.on.width(), c.on.height()), Plane(c.on.width(), c.on.height())});
  }
  const ChannelPair& delayed = field.delay_buffer.back();
  require_same_shape(c.on, delayed.on, "lgmd_medulla");

  compete_into(c.on, delayed.on, k, k.on_gain, field.s_on);
  compete_into(c.off, delayed.off, k, 1.0, field.s_off);

  // Recycle the oldest slot's storage for the newest excitation.
  ChannelPair slot = std::move(field.delay_buffer.back());
  field.delay_buffer.pop_back();
  slot.on = c.on;
  slot.off = c.off;
  field.delay_buffer.push_front(std::move(slot));

  Plane out(c.on.width(), c.on.height());
  auto o = out.values();
  auto a = field.s_on.values();
  auto b = field.s_off.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = a[n] + b[n];
  return out;
}

}  // namespace looming
