#include "looming/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "looming/pipeline.hpp"
#include "looming/stimuli.hpp"

namespace looming {

namespace {

std::vector<std::array<double, 4>> drives(const ModelConfig& c, const FrameSequence& frames) {
  HybridModel m(c);
  std::vector<std::array<double, 4>> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(m.process(f).drives);
  return out;
}

FrameSequence stimulus(StimulusKind kind, SpeedLevel speed, int seed) {
  StimulusSpec s;
  s.kind = kind;
  s.speed = speed;
  s.seed = static_cast<std::uint64_t>(seed);
  return generate(s).frames;
}

}  // namespace

CalibrationReport calibrate(const ModelConfig& base, int seeds) {
  ModelConfig c = base;
  // Any positive scale will do; drives are taken before the sigmoid.
  c.arbiter.variant = ModelVariant::Hybrid;

  const double inf = std::numeric_limits<double>::infinity();
  double l1_quiet = 0.0, l2_quiet = 0.0, r_quiet = 0.0;
  double l1_active = inf, l2_active = inf, r_active = inf;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto app = drives(c, stimulus(StimulusKind::Approach, SpeedLevel::S80, seed));
    const auto rec = drives(c, stimulus(StimulusKind::Recede, SpeedLevel::S80, seed));
    const auto trn = drives(c, stimulus(StimulusKind::TranslateR, SpeedLevel::S40, seed));
    double p1 = 0.0, p2 = 0.0, pr = 0.0;
    for (const auto& d : app) {
      p1 = std::max(p1, d[0]);
      p2 = std::max(p2, d[1]);
      r_quiet = std::max({r_quiet, d[2], d[3]});
    }
    l1_active = std::min(l1_active, p1);
    l2_active = std::min(l2_active, p2);
    for (std::size_t k = 0; k < rec.size(); ++k) {
      l2_quiet = std::max(l2_quiet, rec[k][1]);
      if (3 * k >= rec.size()) l1_quiet = std::max(l1_quiet, rec[k][0]);
    }
    for (const auto& d : trn) pr = std::max(pr, d[2]);
    r_active = std::min(r_active, pr);
  }

  const double lgmd_cells = static_cast<double>(kDefaultFrameWidth) * kDefaultFrameHeight;
  // The correlator field is narrower by the sample spacing.
  const double lptc_cells = static_cast<double>(kDefaultFrameWidth - c.emd.sample_spacing) * kDefaultFrameHeight;
  auto lgmd_z = [](double t) { return std::log(t / (1.0 - t)); };
  auto lptc_z = [](double t) { return std::log((1.0 + t) / (1.0 - t)); };

  CalibrationReport r;
  r.bands[0] = {"lgmd1", "recession after first third (S80)", "approach peak (S80)", l1_quiet, l1_active, 0, 0};
  r.bands[1] = {"lgmd2", "recession (S80)", "approach peak (S80)", l2_quiet, l2_active, 0, 0};
  r.bands[2] = {"lptc", "approach (S80)", "rightward translation peak (S40)", r_quiet, r_active, 0, 0};
  const double z[3] = {lgmd_z(std::fabs(c.spike[0].t_sp)), lgmd_z(std::fabs(c.spike[1].t_sp)),
                       lptc_z(std::fabs(c.spike[2].t_sp))};
  for (int i = 0; i < 3; ++i) {
    CalibrationBand& b = r.bands[static_cast<std::size_t>(i)];
    b.threshold_drive = std::sqrt(b.quiet * b.active);
    b.scale = b.threshold_drive / ((i < 2 ? lgmd_cells : lptc_cells) * z[i]);
  }
  r.config = base;
  r.config.sigmoid_scale = {r.bands[0].scale, r.bands[1].scale, r.bands[2].scale, r.bands[2].scale};
  r.config.validate();
  return r;
}

std::string format_calibration(const CalibrationReport& r) {
  std::string out;
  char buf[256];
  for (const auto& b : r.bands) {
    std::snprintf(buf, sizeof(buf), "%-6s quiet %10.1f  active %10.1f  margin %5.3f  threshold %10.1f  scale %.9g%s\n",
                  b.neuron.c_str(), b.quiet, b.active, b.quiet > 0.0 ? b.active / b.quiet : 0.0, b.threshold_drive,
                  b.scale, b.separable() ? "" : "  (NOT SEPARABLE)");
    out += buf;
  }
  return out;
}

}  // namespace looming
