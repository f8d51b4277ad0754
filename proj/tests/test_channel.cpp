#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <stdexcept>

#include "zcnoma/channel.hpp"

using namespace zcnoma;

TEST_CASE("power allocation") {
  auto [p, pq] = allocate_power(1.0, 4, 4);
  CHECK(p == doctest::Approx(0.5));
  CHECK(pq == doctest::Approx(0.5));

  std::tie(p, pq) = allocate_power(1.0, 2, 2);
  CHECK(p == doctest::Approx(0.5));
  CHECK(pq == doctest::Approx(0.5));

  std::tie(p, pq) = allocate_power(1.0, 2, 4);
  CHECK(p == doctest::Approx(3.0 / 18.0));
  CHECK(pq == doctest::Approx(15.0 / 18.0));

  // Conservation holds exactly for arbitrary budgets and orders.
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> pw(1e-3, 1e3);
  for (int it = 0; it < 200; ++it) {
    const unsigned M = 2u << (gen() % 4);
    const unsigned Mp = 2u << (gen() % 4);
    const double P = pw(gen);
    const auto [a, b] = allocate_power(P, M, Mp);
    CHECK(a + b == doctest::Approx(P).epsilon(1e-14));
    CHECK(a > 0.0);
    CHECK(b > 0.0);
  }

  CHECK_THROWS_AS(allocate_power(1.0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(allocate_power(0.0, 4, 4), std::invalid_argument);
}

TEST_CASE("decompose magnitudes and power split") {
  ComplexZcChannel ch;
  ch.h11 = {1.0, 0.0};
  ch.h21 = {0.5, 0.0};
  ch.h22 = {1.0, 0.0};
  ch.P1 = ch.P2 = 2.0;
  ch.M = ch.Mp = 4;
  auto [ii, qq] = decompose(ch);
  CHECK(ii.g11 == doctest::Approx(1.0));
  CHECK(ii.g21 == doctest::Approx(0.5));
  CHECK(ii.g22 == doctest::Approx(1.0));
  CHECK(ii.p1 == doctest::Approx(1.0));
  CHECK(ii.p2 == doctest::Approx(1.0));
  CHECK(qq.g11 == doctest::Approx(1.0));
  CHECK(qq.p1 == doctest::Approx(1.0));
  CHECK(ii.M == 4);
  CHECK(qq.M == 4);

  ch.h11 = {0.0, 1.0};
  ch.h21 = {1.0, 0.0};
  ch.h22 = {1.0, 0.0};
  std::tie(ii, qq) = decompose(ch);
  CHECK(ii.g11 == doctest::Approx(1.0));
  CHECK(ii.g21 == doctest::Approx(1.0));
  CHECK(ii.g22 == doctest::Approx(1.0));

  ch.h11 = {3.0, 4.0};
  ch.h21 = {1.0, -1.0};
  ch.h22 = {0.0, 2.0};
  std::tie(ii, qq) = decompose(ch);
  CHECK(ii.g11 == doctest::Approx(5.0));
  CHECK(ii.g21 == doctest::Approx(std::sqrt(2.0)));
  CHECK(ii.g22 == doctest::Approx(2.0));
}

TEST_CASE("decompose is phase invariant") {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> mag(0.1, 10.0), phase(0.0, 6.283185307);
  for (int it = 0; it < 100; ++it) {
    ComplexZcChannel ch;
    ch.h11 = std::polar(mag(gen), phase(gen));
    ch.h21 = std::polar(mag(gen), phase(gen));
    ch.h22 = std::polar(mag(gen), phase(gen));
    auto [a, b] = decompose(ch);

    ComplexZcChannel rotated = ch;
    rotated.h11 *= std::polar(1.0, phase(gen));
    rotated.h21 *= std::polar(1.0, phase(gen));
    rotated.h22 *= std::polar(1.0, phase(gen));
    auto [a2, b2] = decompose(rotated);

    CHECK(a.g11 == doctest::Approx(a2.g11).epsilon(1e-12));
    CHECK(a.g21 == doctest::Approx(a2.g21).epsilon(1e-12));
    CHECK(a.g22 == doctest::Approx(a2.g22).epsilon(1e-12));
    CHECK(b.p1 == doctest::Approx(b2.p1));
  }
}

TEST_CASE("degenerate channels are rejected") {
  ComplexZcChannel ch;
  ch.h11 = {0.0, 0.0};
  CHECK_THROWS_AS(decompose(ch), std::invalid_argument);
  ch.h11 = {1.0, 0.0};
  ch.h22 = {0.0, 0.0};
  CHECK_THROWS_AS(decompose(ch), std::invalid_argument);
  ch.h22 = {1.0, 0.0};
  ch.M = 3;
  CHECK_THROWS_AS(decompose(ch), std::invalid_argument);
}

TEST_CASE("pam constellation shape") {
  const PamConstellation p4 = pam_constellation(4);
  CHECK(p4.points == std::vector<double>{-3.0, -1.0, 1.0, 3.0});
  CHECK_THROWS_AS(pam_constellation(5), std::invalid_argument);

  for (unsigned M : {2u, 4u, 8u, 16u}) {
    const PamConstellation pam = pam_constellation(M);
    REQUIRE(pam.points.size() == M);
    double mean = 0.0, energy = 0.0;
    for (double x : pam.points) {
      mean += x;
      energy += x * x;
    }
    mean /= M;
    energy /= M;
    CHECK(mean == doctest::Approx(0.0));
    CHECK(energy == doctest::Approx((static_cast<double>(M) * M - 1.0) / 3.0));
  }
}

TEST_CASE("noise model") {
  const NoiseModel nm = NoiseModel::from_snr(10.0);
  CHECK(nm.sigma2 == doctest::Approx(0.05));
  CHECK(nm.rho * 2.0 * nm.sigma2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(NoiseModel::from_snr(0.0), std::invalid_argument);
}

TEST_CASE("sum constellation") {
  RealZcInstance inst{1.0, 0.25, 1.0, 1.0, 1.0, 2};
  SumConstellation sc = sum_constellation(inst, 1.0, 1.0);
  CHECK(sc.rx1 == std::vector<double>{-1.25, -0.75, 0.75, 1.25});
  CHECK(sc.rx2 == std::vector<double>{-1.0, 1.0});

  inst.g21 = 1.0;
  sc = sum_constellation(inst, 1.0, 1.0);
  CHECK(sc.rx1 == std::vector<double>{-2.0, 0.0, 0.0, 2.0});  // collision kept

  // Receiver-1 multiset always has M^2 entries.
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> g(0.1, 4.0);
  for (unsigned M : {2u, 4u, 8u}) {
    RealZcInstance r{g(gen), g(gen), g(gen), 1.0, 1.0, M};
    const SumConstellation s = sum_constellation(r, 0.7, 0.3);
    CHECK(s.rx1.size() == static_cast<std::size_t>(M) * M);
    CHECK(s.rx2.size() == M);
  }
}

TEST_CASE("receiver-1 points collide only at small rational gain ratios") {
  std::mt19937 gen(19);
  std::uniform_real_distribution<double> g(0.1, 4.0);
  for (unsigned M : {2u, 4u, 8u}) {
    const int K = static_cast<int>(M) - 1;
    for (int it = 0; it < 200; ++it) {
      const RealZcInstance r{g(gen), g(gen), g(gen), 1.0, 1.0, M};
      const double w1 = g(gen), w2 = g(gen);
      const double ratio = r.g21 * w2 / (r.g11 * w1);
      bool rational_hit = false;
      for (int m = 1; m <= K && !rational_hit; ++m) {
        for (int n = 0; n <= K; ++n) {
          if (std::fabs(ratio - static_cast<double>(n) / m) < 1e-9) rational_hit = true;
        }
      }
      std::set<double> distinct;
      for (double p : sum_constellation(r, w1, w2).rx1) distinct.insert(p);
      CHECK(distinct.size() <= static_cast<std::size_t>(M) * M);
      if (!rational_hit) {
        CHECK(distinct.size() == static_cast<std::size_t>(M) * M);
      }
    }
  }
}
