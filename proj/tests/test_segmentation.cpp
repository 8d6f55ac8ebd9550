#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "enact/clustering.hpp"
#include "enact/linear_head.hpp"
#include "enact/rng.hpp"
#include "enact/segmentation.hpp"
#include "enact/smoothing.hpp"

using namespace enact;

namespace {

// Test-side reference: same-length convolution where out-of-range indices
// clamp to the edge. The library routes through an explicit padded buffer;
// agreement means both padding treatments coincide.
std::vector<double> clamped_conv(const std::vector<double>& src,
                                 const std::vector<double>& taps) {
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(src.size());
  const std::ptrdiff_t radius = static_cast<std::ptrdiff_t>(taps.size() / 2);
  std::vector<double> out(src.size(), 0.0);
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
      std::ptrdiff_t j = i + t;
      if (j < 0) j = 0;
      if (j >= len) j = len - 1;
      acc += taps[static_cast<std::size_t>(t + radius)] * src[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

SignField field_from(const std::vector<std::int8_t>& values) {
  SignField f;
  f.batch = 1;
  f.pixels = values.size();
  f.values = values;
  return f;
}

}  // namespace

TEST_CASE("kernel width follows ceil(3 sigma)") {
  const auto k5 = build_kernel(5.0);
  CHECK(k5.taps.size() == 31);
  CHECK(k5.radius() == 15);
  const auto k3 = build_kernel(3.0);
  CHECK(k3.taps.size() == 19);
  const auto k1 = build_kernel(1.0);
  CHECK(k1.taps.size() == 7);
}

TEST_CASE("kernel taps are normalized, symmetric and peaked at the center") {
  const auto k = build_kernel(2.5);
  double sum = 0.0;
  for (double t : k.taps) sum += t;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const std::size_t r = k.radius();
  for (std::size_t i = 0; i < r; ++i) {
    CHECK(k.taps[i] == doctest::Approx(k.taps[k.taps.size() - 1 - i]).epsilon(1e-15));
    CHECK(k.taps[i] < k.taps[r]);
  }
}

TEST_CASE("non-positive sigma is rejected") {
  CHECK_THROWS_AS(build_kernel(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_kernel(-1.0), std::invalid_argument);
}

TEST_CASE("constant rows are fixed points of smoothing") {
  const auto k = build_kernel(4.0);
  const std::vector<double> src(10, 0.3);
  std::vector<double> dst(10);
  smooth_row(src, k, dst);
  for (double v : dst) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("a centered impulse reproduces the taps") {
  const auto k = build_kernel(1.0);
  std::vector<double> src(31, 0.0);
  src[15] = 1.0;
  std::vector<double> dst(31);
  smooth_row(src, k, dst);
  for (std::size_t i = 0; i < k.taps.size(); ++i) {
    CHECK(dst[15 - k.radius() + i] == doctest::Approx(k.taps[i]).epsilon(1e-15));
  }
}

TEST_CASE("smoothing agrees with the clamped-index reference") {
  const auto k = build_kernel(1.0);
  const std::vector<double> src{0.1, 0.5, 0.2, 0.8, 0.3};
  std::vector<double> dst(5);
  smooth_row(src, k, dst);
  const auto expected = clamped_conv(src, k.taps);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(dst[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("smoothing is linear") {
  const auto k = build_kernel(2.0);
  Rng rng(3);
  std::vector<double> x(12), y(12), mix(12);
  for (std::size_t i = 0; i < 12; ++i) {
    x[i] = rng.uniform(-1.0, 1.0);
    y[i] = rng.uniform(-1.0, 1.0);
    mix[i] = 2.0 * x[i] - 3.0 * y[i];
  }
  std::vector<double> sx(12), sy(12), smix(12);
  smooth_row(x, k, sx);
  smooth_row(y, k, sy);
  smooth_row(mix, k, smix);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(smix[i] == doctest::Approx(2.0 * sx[i] - 3.0 * sy[i]).epsilon(1e-10));
  }
}

TEST_CASE("adjoint satisfies the inner-product identity") {
  const auto k = build_kernel(1.5);
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t len = 3 + static_cast<std::size_t>(rng.uniform(0.0, 20.0));
    std::vector<double> x(len), u(len), sx(len), au(len);
    for (std::size_t i = 0; i < len; ++i) {
      x[i] = rng.uniform(-1.0, 1.0);
      u[i] = rng.uniform(-1.0, 1.0);
    }
    smooth_row(x, k, sx);
    smooth_row_adjoint(u, k, au);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      lhs += sx[i] * u[i];
      rhs += x[i] * au[i];
    }
    REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("gaussian_smooth keeps shape and tags the signal") {
  InfoSignal info{DenseArray({2, 9}, 0.2), SignalKind::information};
  const InfoSignal smoothed = gaussian_smooth(info, build_kernel(5.0));
  CHECK(smoothed.kind == SignalKind::smoothed_information);
  REQUIRE(smoothed.values.shape == info.values.shape);
  for (double v : smoothed.values.data) CHECK(v == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("second derivative of a ramp vanishes in the interior") {
  const auto d2 = second_derivative(DenseArray::from({1, 4}, {0.0, 1.0, 2.0, 3.0}));
  CHECK(d2(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(d2(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d2(0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d2(0, 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("second derivative is the negated second difference") {
  const auto d2 = second_derivative(DenseArray::from({1, 4}, {0.0, 1.0, 4.0, 9.0}));
  CHECK(d2(0, 1) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(d2(0, 2) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("convex signals give negative curvature output") {
  DenseArray parabola({1, 9});
  for (std::size_t i = 0; i < 9; ++i) {
    const double t = static_cast<double>(i) - 4.0;
    parabola(0, i) = t * t;
  }
  const auto d2 = second_derivative(parabola);
  for (std::size_t i = 1; i < 8; ++i) CHECK(d2(0, i) < 0.0);
}

TEST_CASE("signals shorter than three pixels cannot be differentiated") {
  CHECK_THROWS_AS(second_derivative(DenseArray({1, 2}, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(second_derivative(DenseArray({3, 1}, 1.0)), std::invalid_argument);
}

TEST_CASE("sign step maps curvature to labels") {
  const auto s = sign_step(DenseArray::from({1, 3}, {-1.0, 2.0, -3.0}));
  CHECK(s.at(0, 0) == 1);
  CHECK(s.at(0, 1) == -1);
  CHECK(s.at(0, 2) == 1);
}

TEST_CASE("exact zeros inherit the preceding label") {
  const auto s = sign_step(DenseArray::from({1, 4}, {0.0, -1.0, 0.0, 2.0}));
  CHECK(s.at(0, 0) == 1);  // sample start defaults positive
  CHECK(s.at(0, 1) == 1);
  CHECK(s.at(0, 2) == 1);
  CHECK(s.at(0, 3) == -1);
}

TEST_CASE("zero inheritance restarts at every sample") {
  DenseArray d2({2, 2});
  d2(0, 0) = 1.0;   // sample 0: -1, then zero inherits -1
  d2(1, 0) = -1.0;  // sample 1: +1
  const auto s = sign_step(d2);
  CHECK(s.at(0, 0) == -1);
  CHECK(s.at(0, 1) == -1);
  CHECK(s.at(1, 0) == 1);
  CHECK(s.at(1, 1) == 1);
}

TEST_CASE("runs are maximal sign-constant spans") {
  const auto part = partition_runs(field_from({+1, +1, -1, -1, +1}));
  REQUIRE(part.samples[0].size() == 3);
  CHECK(part.samples[0][0].begin == 0);
  CHECK(part.samples[0][0].end == 2);
  CHECK(part.samples[0][0].sign == 1);
  CHECK(part.samples[0][1].begin == 2);
  CHECK(part.samples[0][1].end == 4);
  CHECK(part.samples[0][1].sign == -1);
  CHECK(part.samples[0][2].begin == 4);
  CHECK(part.samples[0][2].end == 5);
  part.validate();
}

TEST_CASE("random sign fields match a direct scan") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t pixels = 1 + static_cast<std::size_t>(rng.uniform(0.0, 40.0));
    std::vector<std::int8_t> signs(pixels);
    for (auto& s : signs) s = rng.uniform() < 0.5 ? -1 : 1;

    const auto part = partition_runs(field_from(signs));
    part.validate();
    REQUIRE(part.samples.size() == 1);

    // Brute force: count boundaries, check each run's span is constant.
    std::size_t expected_runs = 1;
    for (std::size_t i = 1; i < pixels; ++i) {
      if (signs[i] != signs[i - 1]) ++expected_runs;
    }
    REQUIRE(part.samples[0].size() == expected_runs);
    std::size_t cursor = 0;
    for (const Run& run : part.samples[0]) {
      REQUIRE(run.begin == cursor);
      REQUIRE(run.end > run.begin);
      for (std::size_t i = run.begin; i < run.end; ++i) REQUIRE(signs[i] == run.sign);
      cursor = run.end;
    }
    REQUIRE(cursor == pixels);
  }
}

TEST_CASE("partition validation rejects malformed layouts") {
  RegionPartition gap;
  gap.pixels = 4;
  gap.samples = {{{0, 2, +1}, {3, 4, -1}}};
  CHECK_THROWS_AS(gap.validate(), std::invalid_argument);

  RegionPartition empty_run;
  empty_run.pixels = 3;
  empty_run.samples = {{{0, 0, +1}, {0, 3, -1}}};
  CHECK_THROWS_AS(empty_run.validate(), std::invalid_argument);

  RegionPartition same_sign;
  same_sign.pixels = 4;
  same_sign.samples = {{{0, 2, +1}, {2, 4, +1}}};
  CHECK_THROWS_AS(same_sign.validate(), std::invalid_argument);

  RegionPartition bad_sign;
  bad_sign.pixels = 2;
  bad_sign.samples = {{{0, 2, 0}}};
  CHECK_THROWS_AS(bad_sign.validate(), std::invalid_argument);
}

TEST_CASE("degenerate partitions") {
  const auto single = single_run_partition(3, 7);
  single.validate();
  CHECK(single.total_clusters() == 3);
  CHECK(single.cluster_counts() == std::vector<std::size_t>{1, 1, 1});

  const auto singles = singleton_partition(2, 5);
  singles.validate();
  CHECK(singles.total_clusters() == 10);
  for (const auto& runs : singles.samples) {
    for (std::size_t r = 1; r < runs.size(); ++r) {
      CHECK(runs[r].sign == -runs[r - 1].sign);
    }
  }
}

TEST_CASE("stronger smoothing never fragments more") {
  // Smoother signals flip curvature sign less often, so cluster counts at
  // sigma 5 should not exceed the sigma 1 counts on the same information maps.
  const LinearHead head = LinearHead::init(6, 19);
  Rng rng(23);
  std::size_t total_wide = 0, total_narrow = 0;
  for (int trial = 0; trial < 10; ++trial) {
    FeatureBatch keys({1, 64, 6});
    for (double& v : keys.data) v = rng.uniform(-1.0, 1.0);
    total_wide += run_pipeline(keys, head, 5.0).partition.total_clusters();
    total_narrow += run_pipeline(keys, head, 1.0).partition.total_clusters();
  }
  CHECK(total_wide <= total_narrow);
  CHECK(total_narrow > 10);  // narrow smoothing leaves genuine fragmentation
}
