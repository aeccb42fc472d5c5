#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "bosegas/accumulator.hpp"
#include "bosegas/accumulator.hpp"
#include "bosegas/definetti.hpp"
#include "bosegas/rng.hpp"

using namespace bosegas;

TEST_CASE("split streams are deterministic and independent") {
  SplitStream a(42, 7);
  SplitStream b(42, 7);
  SplitStream c(42, 8);
  bool any_differs = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) any_differs = true;
  }
  CHECK(any_differs);

  SplitStream d(43, 7);
  SplitStream e(42, 7);
  int matches = 0;
  for (int i = 0; i < 64; ++i) {
    if (d.next_u64() == e.next_u64()) ++matches;
  }
  CHECK(matches == 0);
}

TEST_CASE("stream draws stay in range") {
  SplitStream stream(1, 2);
  for (int i = 0; i < 1000; ++i) {
    const double u = stream.next_uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    const double x = stream.next_exponential();
    CHECK(x >= 0.0);
    const double phase = stream.next_phase();
    CHECK(phase >= 0.0);
    CHECK(phase < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("moment accumulator matches direct sums") {
  const int n = 1000;
  SplitStream stream(5, 0);
  MomentAccumulator acc(1, 1);
  std::vector<double> g(n), u(n);
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = stream.next_uniform();
    u[static_cast<std::size_t>(i)] = 0.5 + stream.next_uniform();
    Matrix sample(1, 1);
    sample(0, 0) = g[static_cast<std::size_t>(i)];
    acc.push(sample, u[static_cast<std::size_t>(i)]);
  }
  double mean_g = 0.0, mean_u = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_g += g[static_cast<std::size_t>(i)];
    mean_u += u[static_cast<std::size_t>(i)];
  }
  mean_g /= n;
  mean_u /= n;
  CHECK(acc.mean()(0, 0).real() == doctest::Approx(mean_g).epsilon(1e-12));
  CHECK(acc.weight_mean() == doctest::Approx(mean_u).epsilon(1e-12));

  const double ratio = mean_g / mean_u;
  CHECK(acc.ratio()(0, 0).real() == doctest::Approx(ratio).epsilon(1e-12));

  // two-pass delta-method error
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = g[static_cast<std::size_t>(i)] - ratio * u[static_cast<std::size_t>(i)];
    const double centered = r - (mean_g - ratio * mean_u);
    var += centered * centered;
  }
  var /= (n - 1);
  const double sigma = std::sqrt(var / n) / mean_u;
  CHECK(acc.ratio_std_errors()(0, 0) == doctest::Approx(sigma).epsilon(1e-10));
}

TEST_CASE("accumulator merging is order-insensitive") {
  SplitStream stream(9, 0);
  std::vector<Matrix> samples;
  std::vector<double> weights;
  for (int i = 0; i < 300; ++i) {
    Matrix m(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        m(r, c) = Complex(stream.next_uniform(), stream.next_uniform());
    samples.push_back(m);
    weights.push_back(0.1 + stream.next_uniform());
  }

  MomentAccumulator whole(2, 2);
  MomentAccumulator part_a(2, 2), part_b(2, 2), part_c(2, 2);
  for (int i = 0; i < 300; ++i) {
    whole.push(samples[static_cast<std::size_t>(i)], weights[static_cast<std::size_t>(i)]);
    (i < 100 ? part_a : i < 200 ? part_b : part_c)
        .push(samples[static_cast<std::size_t>(i)], weights[static_cast<std::size_t>(i)]);
  }

  MomentAccumulator left(2, 2);
  left.merge(part_a);
  left.merge(part_b);
  left.merge(part_c);

  MomentAccumulator right(2, 2);
  MomentAccumulator bc(2, 2);
  bc.merge(part_b);
  bc.merge(part_c);
  right.merge(part_a);
  right.merge(bc);

  CHECK((left.ratio() - whole.ratio()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((right.ratio() - whole.ratio()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((left.ratio_std_errors() - whole.ratio_std_errors()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((right.ratio_std_errors() - left.ratio_std_errors()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("uniform simplex sampling has the right first moment") {
  const int d = 2;
  ScalarAccumulator acc;
  for (std::size_t i = 0; i < 20000; ++i) {
    acc.push(sample_uniform_point(d, 77, i).p[0]);
  }
  const double expected = 1.0 / (d + 1);
  CHECK(std::abs(acc.mean() - expected) < 5.0 * acc.std_error());
}

TEST_CASE("mc moment estimate is invariant under the worker count") {
  const McMomentEstimate one = mc_estimate_moment(1, 1, DeFinettiWeight::uniform(), 50000, 11, 1);
  const McMomentEstimate four = mc_estimate_moment(1, 1, DeFinettiWeight::uniform(), 50000, 11, 4);
  CHECK(std::memcmp(one.estimate.matrix.data(), four.estimate.matrix.data(),
                    sizeof(Complex) * 4) == 0);
  CHECK(std::memcmp(one.std_errors.data(), four.std_errors.data(), sizeof(double) * 4) == 0);
  CHECK(one.z_estimate == four.z_estimate);
}

TEST_CASE("mc error bars shrink like the square root of the sample count") {
  const auto sigma_at = [](std::size_t samples) {
    const McMomentEstimate est =
        mc_estimate_moment(1, 1, DeFinettiWeight::uniform(), samples, 13);
    return est.std_errors(0, 0);
  };
  const double base = sigma_at(4000);
  const double refined = sigma_at(64000);  // 16x the samples
  CHECK(refined == doctest::Approx(base / 4.0).epsilon(0.2));
}
