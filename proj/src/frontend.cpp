#include "looming/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace looming {

void validate_frame(const Frame& f) {
  for (double v : f.values()) {
    if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
      throw std::invalid_argument("frame luminance outside [0, 255]: " + std::to_string(v));
    }
  }
}

DiffImage differential(const Frame& prev, const Frame& curr) {
  require_same_shape(prev, curr, "differential");
  DiffImage out(curr.width(), curr.height());
  auto a = prev.values();
  auto b = curr.values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = b[i] - a[i];
  return out;
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
  if (sigma <= 0.0 || radius < 0) throw std::invalid_argument("gaussian_kernel: sigma must be > 0, radius >= 0");
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

// `tmp` and `out` must already have p's shape.
void blur_into(const Plane& p, const std::vector<double>& kernel, Plane& tmp, Plane& out) {
  const int w = p.width();
  const int h = p.height();
  const int r = static_cast<int>(kernel.size() / 2);
  if (p.empty()) return;

  std::vector<double> padded(static_cast<std::size_t>(w + 2 * r));
  const double* kc = kernel.data() + r;
  for (int y = 0; y < h; ++y) {
    const double* src = p.row(y);
    double* dst = tmp.row(y);
    for (int k = 0; k < r; ++k) {
      padded[static_cast<std::size_t>(k)] = src[0];
      padded[static_cast<std::size_t>(w + r + k)] = src[w - 1];
    }
    std::copy(src, src + w, padded.begin() + r);
    const double* c = padded.data() + r;
    // Taps are paired (left + right) so a mirrored row yields a bit-exact
    // mirrored result; the kernel is symmetric.
    for (int x = 0; x < w; ++x) {
      double acc = kc[0] * c[x];
      for (int k = 1; k <= r; ++k) acc += kc[k] * (c[x - k] + c[x + k]);
      dst[x] = acc;
    }
  }
  std::vector<const double*> rows(static_cast<std::size_t>(2 * r + 1));
  for (int y = 0; y < h; ++y) {
    for (int k = -r; k <= r; ++k) rows[static_cast<std::size_t>(k + r)] = tmp.row(std::clamp(y + k, 0, h - 1));
    double* dst = out.row(y);
    for (int x = 0; x < w; ++x) dst[x] = 0.0;
    for (int k = -r; k <= r; ++k) {
      const double* src = rows[static_cast<std::size_t>(k + r)];
      const double wk = kc[k];
      for (int x = 0; x < w; ++x) dst[x] += wk * src[x];
    }
  }
}

void reshape(Plane& p, int w, int h) {
  if (p.width() != w || p.height() != h) p = Plane(w, h);
}

}  // namespace

Plane gaussian_blur(const Plane& p, const std::vector<double>& kernel) {
  Plane tmp(p.width(), p.height());
  Plane out(p.width(), p.height());
  blur_into(p, kernel, tmp, out);
  return out;
}

DiffImage dog_filter(const DiffImage& d, const FrontendParams& params) {
  Plane inner = gaussian_blur(d, gaussian_kernel(params.inner_sigma, params.inner_radius));
  Plane outer = gaussian_blur(d, gaussian_kernel(params.outer_sigma, params.outer_radius));
  auto o = outer.values();
  auto in = inner.values();
  for (std::size_t i = 0; i < in.size(); ++i) in[i] -= o[i];
  return inner;
}

ChannelPair split_on_off(const DiffImage& d) {
  ChannelPair c{Plane(d.width(), d.height()), Plane(d.width(), d.height())};
  auto src = d.values();
  auto on = c.on.values();
  auto off = c.off.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    on[i] = src[i] > 0.0 ? src[i] : 0.0;
    off[i] = src[i] < 0.0 ? -src[i] : 0.0;
  }
  return c;
}

namespace {

void adapt_channel(const Plane& in, Plane& adapt, Plane& out, const FrontendParams& params) {
  auto x = in.values();
  auto a = adapt.values();
  auto o = out.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - a[i];
    o[i] = diff > 0.0 ? diff : 0.0;
    a[i] += (diff >= 0.0 ? params.alpha_up : params.alpha_down) * diff;
  }
}

}  // namespace

ChannelPair fdsr_adapt(const ChannelPair& c, LaminaState& state, const FrontendParams& params) {
  require_same_shape(c.on, c.off, "fdsr_adapt");
  if (state.adapt_on.empty() && state.adapt_off.empty()) {
    state.adapt_on = Plane(c.on.width(), c.on.height());
    state.adapt_off = Plane(c.on.width(), c.on.height());
  }
  require_same_shape(c.on, state.adapt_on, "fdsr_adapt");
  require_same_shape(c.off, state.adapt_off, "fdsr_adapt");
  ChannelPair out{Plane(c.on.width(), c.on.height()), Plane(c.on.width(), c.on.height())};
  adapt_channel(c.on, state.adapt_on, out.on, params);
  adapt_channel(c.off, state.adapt_off, out.off, params);
  return out;
}

Frontend::Frontend(FrontendParams params)
    : params_(params),
      inner_(gaussian_kernel(params.inner_sigma, params.inner_radius)),
      outer_(gaussian_kernel(params.outer_sigma, params.outer_radius)) {
  if (!(params.alpha_up > params.alpha_down) || params.alpha_down <= 0.0 || params.alpha_up > 1.0) {
    throw std::invalid_argument("FDSR requires 0 < alpha_down < alpha_up <= 1");
  }
}

void Frontend::reset() { state_ = LaminaState{}; }

ChannelPair Frontend::process_frame(const Frame& f) {
  if (!state_.prev_frame) {
    state_.prev_frame = f;
    state_.adapt_on = Plane(f.width(), f.height());
    state_.adapt_off = Plane(f.width(), f.height());
    return {Plane(f.width(), f.height()), Plane(f.width(), f.height())};
  }
  require_same_shape(*state_.prev_frame, f, "process_frame");

  // Same arithmetic as differential -> dog_filter -> split_on_off ->
  // fdsr_adapt, on reused scratch planes.
  const int w = f.width();
  const int h = f.height();
  reshape(diff_, w, h);
  reshape(tmp_, w, h);
  reshape(inner_out_, w, h);
  reshape(outer_out_, w, h);
  {
    auto a = state_.prev_frame->values();
    auto b = f.values();
    auto d = diff_.values();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b[i] - a[i];
  }
  blur_into(diff_, inner_, tmp_, inner_out_);
  blur_into(diff_, outer_, tmp_, outer_out_);

  ChannelPair out{Plane(w, h), Plane(w, h)};
  auto in = inner_out_.values();
  auto o = outer_out_.values();
  auto on = out.on.values();
  auto off = out.off.values();
  auto a_on = state_.adapt_on.values();
  auto a_off = state_.adapt_off.values();
  auto adapt = [this](double x, double& a) {
    const double diff = x - a;
    a += (diff >= 0.0 ? params_.alpha_up : params_.alpha_down) * diff;
    return diff > 0.0 ? diff : 0.0;
  };
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double v = in[i] - o[i];
    on[i] = adapt(v > 0.0 ? v : 0.0, a_on[i]);
    off[i] = adapt(v < 0.0 ? -v : 0.0, a_off[i]);
  }
  *state_.prev_frame = f;
  return out;
}

}  // namespace looming
