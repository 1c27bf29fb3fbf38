#include <cmath>

#include "doctest.h"
#include "looming/medulla_lptc.hpp"
#include "looming/stimuli.hpp"
#include "support.hpp"

using namespace looming;

TEST_SUITE("medulla-lptc") {

TEST_CASE("parameter validation") {
  EmdParams p;
  CHECK(p.sample_spacing == 2);
  CHECK(p.delay_coeff == 0.7);
  CHECK_NOTHROW(p.validate());
  p.sample_spacing = 0;
  CHECK_THROWS(p.validate());
  p = {};
  p.delay_coeff = 0.0;
  CHECK_THROWS(p.validate());
  p.delay_coeff = 1.2;
  CHECK_THROWS(p.validate());
}

TEST_CASE("field is narrower by the sample spacing") {
  EmdState st;
  auto r = emd_correlate({Plane(10, 4), Plane(10, 4)}, st);
  CHECK(r.width() == 8);
  CHECK(r.height() == 4);
  CHECK_THROWS(emd_correlate({Plane(2, 4), Plane(2, 4)}, st));
}

TEST_CASE("constant equal inputs cancel") {
  EmdState st;
  for (int t = 0; t < 8; ++t) {
    auto r = emd_correlate({Plane(6, 3, 5.0), Plane(6, 3, 2.0)}, st);
    for (double v : r.values()) CHECK(v == 0.0);
  }
}

TEST_CASE("unit evaluation: delayed X1 with fresh X2 is rightward") {
  // One pixel pair: X1 at x=0, X2 at x=1 (spacing 1, pure lag).
  EmdParams p{1, 1.0};
  EmdState st;
  Plane on(2, 1);
  on(0, 0) = 1.0;
  emd_correlate({on, Plane(2, 1)}, st, p);  // delayed X1 becomes 1
  Plane next(2, 1);
  next(1, 0) = 1.0;
  auto r = emd_correlate({next, Plane(2, 1)}, st, p);
  CHECK(r(0, 0) == 1.0);
  auto d = direction_pool(r);
  CHECK(d.right == 1.0);
  CHECK(d.left == 0.0);
}

TEST_CASE("mirrored input negates the field exactly") {
  EmdState a, b;
  for (int t = 0; t < 6; ++t) {
    ChannelPair c{testing::random_plane(21, 5, 30 + static_cast<std::uint64_t>(t), 0, 3),
                  testing::random_plane(21, 5, 40 + static_cast<std::uint64_t>(t), 0, 3)};
    auto ra = emd_correlate(c, a);
    auto rb = emd_correlate({mirror_horizontal(c.on), mirror_horizontal(c.off)}, b);
    auto ma = mirror_horizontal(ra);
    for (std::size_t n = 0; n < ma.size(); ++n) CHECK(rb.values()[n] == -ma.values()[n]);
    auto da = direction_pool(ra), db = direction_pool(rb);
    CHECK(da.right == db.left);
    CHECK(da.left == db.right);
  }
}

TEST_CASE("direction pooling") {
  auto d = direction_pool(Plane(3, 3));
  CHECK(d.right == 0.0);
  CHECK(d.left == 0.0);
  Plane one(1, 1, 2.0);
  CHECK(direction_pool(one).right == 2.0);
  CHECK(direction_pool(one).left == 0.0);
  Plane two(2, 1);
  two(0, 0) = 1.0;
  two(1, 0) = -3.0;
  CHECK(direction_pool(two).right == 1.0);
  CHECK(direction_pool(two).left == 3.0);
}

// Vertical dark/light edge drifting horizontally by `v` px per frame.
static std::vector<DirectionDrive> drifting_edge(double v) {
  Frontend fe;
  EmdState st;
  std::vector<DirectionDrive> out;
  for (int t = 0; t < 25; ++t) {
    Frame f(60, 10);
    const double edge = (v > 0 ? 10.0 : 50.0) + v * t;
    for (int x = 0; x < 60; ++x) {
      const double cover = std::clamp(edge - x, 0.0, 1.0);  // fraction of pixel left of the edge
      for (int y = 0; y < 10; ++y) f(x, y) = std::round(200.0 - 160.0 * cover);
    }
    out.push_back(direction_pool(emd_correlate(fe.process_frame(f), st)));
  }
  return out;
}

TEST_CASE("drifting edge: direction follows motion once the delay settles") {
  for (double v : {0.7, 1.5}) {
    auto right = drifting_edge(v);
    auto left = drifting_edge(-v);
    for (std::size_t t = 3; t < right.size(); ++t) {
      CHECK(right[t].right > right[t].left);
      CHECK(left[t].left > left[t].right);
    }
  }
}

TEST_CASE("centred looming is roughly balanced") {
  for (auto speed : {SpeedLevel::S40, SpeedLevel::S80, SpeedLevel::S120}) {
    StimulusSpec s;
    s.speed = speed;
    Frontend fe;
    EmdState st;
    double r = 0.0, l = 0.0;
    for (const auto& f : generate(s).frames) {
      auto d = direction_pool(emd_correlate(fe.process_frame(f), st));
      r += d.right;
      l += d.left;
    }
    CHECK(r > 0.0);
    CHECK(std::fabs(r - l) <= 0.2 * (r + l));
  }
}

}
