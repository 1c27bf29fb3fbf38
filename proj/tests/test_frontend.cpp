#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "looming/frontend.hpp"
#include "looming/stimuli.hpp"
#include "support.hpp"

using namespace looming;

TEST_SUITE("frontend") {

TEST_CASE("differential is current minus previous") {
  Frame a(3, 2, 10.0), b(3, 2, 10.0);
  b(1, 1) = 25.0;
  a(2, 0) = 40.0;
  DiffImage d = differential(a, b);
  CHECK(d(1, 1) == 15.0);
  CHECK(d(2, 0) == -30.0);
  CHECK(d(0, 0) == 0.0);
  CHECK_THROWS_AS(differential(Frame(3, 2), Frame(2, 3)), std::invalid_argument);
}

TEST_CASE("gaussian kernels are unit-sum and symmetric") {
  for (auto [sigma, radius] : {std::pair{1.0, 1}, std::pair{2.0, 3}}) {
    auto k = gaussian_kernel(sigma, radius);
    REQUIRE(k.size() == static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (double v : k) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i < radius; ++i) CHECK(k[static_cast<std::size_t>(i)] == k[k.size() - 1 - static_cast<std::size_t>(i)]);
  }
  CHECK_THROWS(gaussian_kernel(0.0, 1));
}

TEST_CASE("DoG of a constant plane is zero") {
  DiffImage d(20, 15, 37.5);
  for (double v : dog_filter(d).values()) CHECK(std::fabs(v) < 1e-12);
}

TEST_CASE("DoG impulse response is centre positive, surround negative, zero sum") {
  DiffImage d(21, 21);
  d(10, 10) = 1.0;
  Plane r = dog_filter(d);
  CHECK(r(10, 10) > 0.0);
  CHECK(r(13, 10) < 0.0);
  CHECK(r(10, 13) < 0.0);
  CHECK(std::fabs(plane_sum(r)) < 1e-12);
}

// Direct 2D convolution with a full Gaussian (product of the 1D taps) and
// edge replication, written independently of the separable implementation.
static double brute_dog_at(const DiffImage& d, int x, int y) {
  auto g2 = [](double sigma, int radius, int dx, int dy) {
    double norm = 0.0;
    for (int j = -radius; j <= radius; ++j)
      for (int i = -radius; i <= radius; ++i) norm += std::exp(-(i * i + j * j) / (2 * sigma * sigma));
    return std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)) / norm;
  };
  double inner = 0.0, outer = 0.0;
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      const double v = d.clamped(x + dx, y + dy);
      if (std::abs(dx) <= 1 && std::abs(dy) <= 1) inner += g2(1.0, 1, dx, dy) * v;
      outer += g2(2.0, 3, dx, dy) * v;
    }
  }
  return inner - outer;
}

TEST_CASE("DoG on a step edge matches brute-force convolution on 9x9") {
  DiffImage d(9, 9);
  for (int y = 0; y < 9; ++y)
    for (int x = 5; x < 9; ++x) d(x, y) = 10.0;
  Plane r = dog_filter(d);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) CHECK(r(x, y) == doctest::Approx(brute_dog_at(d, x, y)).epsilon(1e-12));
  }
  // Band along the edge, nothing far from it (the 7x7 support reaches 3 px).
  CHECK(std::fabs(r(4, 4)) > 0.1);
  CHECK(std::fabs(r(5, 4)) > 0.1);
  CHECK(r(0, 4) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ON/OFF split") {
  DiffImage d(2, 1);
  d(0, 0) = 7.0;
  d(1, 0) = -7.0;
  auto c = split_on_off(d);
  CHECK(c.on(0, 0) == 7.0);
  CHECK(c.off(0, 0) == 0.0);
  CHECK(c.on(1, 0) == 0.0);
  CHECK(c.off(1, 0) == 7.0);

  auto r = testing::random_plane(17, 11, 3, -50, 50);
  auto rc = split_on_off(r);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(rc.on.values()[i] * rc.off.values()[i] == 0.0);
}

TEST_CASE("swapping frame order swaps ON and OFF") {
  Frame a = testing::random_frame(23, 17, 1), b = testing::random_frame(23, 17, 2);
  auto ab = split_on_off(differential(a, b));
  auto ba = split_on_off(differential(b, a));
  CHECK(ab.on == ba.off);
  CHECK(ab.off == ba.on);
}

TEST_CASE("FDSR single step rules") {
  FrontendParams p;
  LaminaState st;
  ChannelPair c{Plane(1, 1, 10.0), Plane(1, 1, 0.0)};
  auto out = fdsr_adapt(c, st, p);
  CHECK(out.on(0, 0) == 10.0);  // zero initial state
  CHECK(st.adapt_on(0, 0) == doctest::Approx(8.0));
  // x == a gives 0
  LaminaState eq;
  eq.adapt_on = Plane(1, 1, 4.0);
  eq.adapt_off = Plane(1, 1, 0.0);
  ChannelPair c4{Plane(1, 1, 4.0), Plane(1, 1, 0.0)};
  CHECK(fdsr_adapt(c4, eq, p).on(0, 0) == 0.0);
}

TEST_CASE("FDSR on a 0/10 flicker train") {
  FrontendParams p;  // alpha_up 0.8, alpha_down 0.1
  // Scalar oracle of the recurrence.
  std::vector<double> expect;
  double a = 0.0;
  for (int t = 0; t < 40; ++t) {
    const double x = t % 2 == 0 ? 10.0 : 0.0;
    expect.push_back(std::max(x - a, 0.0));
    a += (x >= a ? p.alpha_up : p.alpha_down) * (x - a);
  }
  LaminaState st;
  std::vector<double> got;
  for (int t = 0; t < 40; ++t) {
    const double x = t % 2 == 0 ? 10.0 : 0.0;
    got.push_back(fdsr_adapt({Plane(1, 1, x), Plane(1, 1, 0.0)}, st, p).on(0, 0));
  }
  for (int t = 0; t < 40; ++t) CHECK(got[static_cast<std::size_t>(t)] == doctest::Approx(expect[static_cast<std::size_t>(t)]));
  // Responses to the "on" frames shrink monotonically and are down to a
  // small residue within 10 frames. With subtractive adaptation the residue
  // settles at 10 - a_low where a_high = 0.2 a_low + 8 and a_low = 0.9 a_high.
  for (int t = 2; t < 40; t += 2) CHECK(got[static_cast<std::size_t>(t)] <= got[static_cast<std::size_t>(t - 2)]);
  CHECK(got[10] < 0.15 * got[0]);
  const double a_high = 8.0 / (1.0 - 0.2 * 0.9);
  CHECK(got[38] == doctest::Approx(10.0 - 0.9 * a_high).epsilon(1e-6));
}

TEST_CASE("FDSR output for a constant input converges monotonically to 0") {
  LaminaState st;
  double prev = 1e9;
  for (int t = 0; t < 30; ++t) {
    double o = fdsr_adapt({Plane(1, 1, 10.0), Plane(1, 1, 3.0)}, st).on(0, 0);
    CHECK(o <= prev);
    prev = o;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("process_frame: first frame zero, static scene zero, shape change rejected") {
  Frontend fe;
  Frame f = testing::random_frame(30, 20, 9);
  auto c0 = fe.process_frame(f);
  CHECK(plane_max(c0.on) == 0.0);
  CHECK(plane_max(c0.off) == 0.0);
  for (int k = 0; k < 5; ++k) {
    auto c = fe.process_frame(f);
    CHECK(plane_max(c.on) == 0.0);
    CHECK(plane_max(c.off) == 0.0);
  }
  CHECK_THROWS_AS(fe.process_frame(Frame(20, 30)), std::invalid_argument);
}

TEST_CASE("process_frame equals the composed operations") {
  FrontendParams p;
  Frontend fe(p);
  LaminaState st;
  st.adapt_on = Plane(40, 30);
  st.adapt_off = Plane(40, 30);
  Frame prev = testing::random_frame(40, 30, 100);
  fe.process_frame(prev);
  for (int k = 1; k < 6; ++k) {
    Frame f = testing::random_frame(40, 30, 100 + static_cast<std::uint64_t>(k));
    auto want = fdsr_adapt(split_on_off(dog_filter(differential(prev, f), p)), st, p);
    auto got = fe.process_frame(f);
    CHECK(got.on == want.on);
    CHECK(got.off == want.off);
    prev = f;
  }
}

TEST_CASE("frontend commutes with horizontal mirroring") {
  Frontend a, b;
  for (int k = 0; k < 6; ++k) {
    Frame f = testing::random_frame(33, 21, 50 + static_cast<std::uint64_t>(k));
    auto ca = a.process_frame(f);
    auto cb = b.process_frame(mirror_horizontal(f));
    CHECK(mirror_horizontal(ca.on) == cb.on);
    CHECK(mirror_horizontal(ca.off) == cb.off);
  }
}

TEST_CASE("planes stay nonnegative on random streams") {
  Frontend fe;
  for (int k = 0; k < 20; ++k) {
    auto c = fe.process_frame(testing::random_frame(25, 19, 900 + static_cast<std::uint64_t>(k)));
    CHECK(plane_min(c.on) >= 0.0);
    CHECK(plane_min(c.off) >= 0.0);
  }
}

TEST_CASE("dark expanding square: OFF energy grows frame over frame") {
  StimulusSpec s;
  s.kind = StimulusKind::Approach;
  auto seq = generate(s);
  Frontend fe;
  std::vector<double> off;
  for (const auto& f : seq.frames) off.push_back(plane_sum(fe.process_frame(f).off));
  // Compare averages over successive ten-frame blocks; single frames wobble
  // with sub-pixel edge placement.
  double prev = -1.0;
  for (std::size_t b = 1; b + 10 <= 50; b += 10) {
    double m = 0.0;
    for (std::size_t k = b; k < b + 10; ++k) m += off[k];
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("frame validation") {
  Frame f(2, 2, 100.0);
  CHECK_NOTHROW(validate_frame(f));
  f(0, 0) = 256.0;
  CHECK_THROWS_AS(validate_frame(f), std::invalid_argument);
  f(0, 0) = NAN;
  CHECK_THROWS_AS(validate_frame(f), std::invalid_argument);
}

}
