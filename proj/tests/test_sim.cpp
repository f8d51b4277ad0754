#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zcnoma/gray.hpp"
#include "zcnoma/rng.hpp"
#include "zcnoma/sim.hpp"
#include "zcnoma/solver.hpp"

using namespace zcnoma;

namespace {

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

SimConfig base_config() {
  SimConfig cfg;
  cfg.scheme = Scheme::ProposedNoma;
  cfg.M = cfg.Mp = 4;
  cfg.snr_grid = {10.0};
  cfg.trials = 100;
  cfg.symbols_per_trial = 100;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  using Block = Philox4x32::Block;
  Block out = Philox4x32::generate(0, Block{0, 0, 0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = Philox4x32::generate(0xFFFFFFFFFFFFFFFFull,
                             Block{0xFFFFFFFFu, 0xFFFFFFFFu, 0xFFFFFFFFu, 0xFFFFFFFFu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = Philox4x32::generate(0x299f31d0a4093822ull,
                             Block{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("philox streams are independent of draw interleaving") {
  PhiloxStream a(7, 0, 3);
  PhiloxStream b(7, 0, 3);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  const double g1 = a.next_gaussian();
  const double g2 = a.next_gaussian();
  CHECK(b.next_gaussian() == g1);
  CHECK(b.next_gaussian() == g2);

  PhiloxStream c(7, 0, 4);  // different stream word
  CHECK(c.next_u64() != a.next_u64());

  PhiloxStream d(8, 0, 3);  // different seed
  PhiloxStream e(7, 0, 3);
  CHECK(d.next_u64() != e.next_u64());
}

TEST_CASE("gaussian moments are sane") {
  PhiloxStream rng(1234, 0, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_gaussian();
    sum += z;
    sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.02).scale(1.0));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gray labels differ by one bit between neighbors") {
  for (unsigned M : {2u, 4u, 8u, 16u}) {
    for (unsigned i = 0; i + 1 < M; ++i) {
      CHECK(gray_bit_errors(i, i + 1) == 1);
    }
    CHECK(gray_bit_errors(M - 1, 0) == 1);  // PSK wrap-around
    CHECK(gray_bit_errors(3, 3) == 0);
  }
}

TEST_CASE("joint detection at D1") {
  const RealZcInstance weak{1.0, 0.5, 1.0, 1.0, 1.0, 4};
  const ScalingSolution sol = solve(weak);

  // Noise-free round trip for every symbol pair.
  for (int s1 = -3; s1 <= 3; s1 += 2) {
    for (int s2 = -3; s2 <= 3; s2 += 2) {
      const double y = weak.g11 * sol.w1 * s1 + weak.g21 * sol.w2 * s2;
      const auto [d1s, d2s] = ml_detect_d1(y, weak, sol.w1, sol.w2);
      CHECK(d1s == s1);
      CHECK(d2s == s2);
    }
  }

  // Stated tie: fully ambiguous channel, y = 0, M = 2.
  const RealZcInstance tie{1.0, 1.0, 1.0, 1.0, 1.0, 2};
  const auto [t1, t2] = ml_detect_d1(0.0, tie, 1.0, 1.0);
  CHECK(t1 == -1);
  CHECK(t2 == 1);

  // Nearest of the 16 sum levels for an arbitrary observation.
  const auto [n1, n2] = ml_detect_d1(4.9, weak, sol.w1, sol.w2);
  double best = 1e300;
  int b1 = 0, b2 = 0;
  for (int s1 = -3; s1 <= 3; s1 += 2) {
    for (int s2 = -3; s2 <= 3; s2 += 2) {
      const double d = std::fabs(4.9 - (weak.g11 * sol.w1 * s1 + weak.g21 * sol.w2 * s2));
      if (d < best) {
        best = d;
        b1 = s1;
        b2 = s2;
      }
    }
  }
  CHECK(n1 == b1);
  CHECK(n2 == b2);
}

TEST_CASE("detector matches exhaustive nearest neighbor on random inputs") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> yd(-6.0, 6.0), gd(0.1, 3.0);
  for (int it = 0; it < 10000; ++it) {
    const RealZcInstance inst{gd(gen), gd(gen), gd(gen), 1.0, 1.0, 4};
    const double w1 = 0.1 + 0.3 * gd(gen);
    const double w2 = 0.1 + 0.3 * gd(gen);
    const double y = yd(gen);
    const auto [s1, s2] = ml_detect_d1(y, inst, w1, w2);
    double best = 1e300;
    int b1 = 0, b2 = 0;
    for (int c1 = -3; c1 <= 3; c1 += 2) {
      for (int c2 = -3; c2 <= 3; c2 += 2) {
        const double d = std::fabs(y - (inst.g11 * w1 * c1 + inst.g21 * w2 * c2));
        if (d < best) {
          best = d;
          b1 = c1;
          b2 = c2;
        }
      }
    }
    CHECK(s1 == b1);
    CHECK(s2 == b2);
  }
}

TEST_CASE("single-user detection at D2") {
  const RealZcInstance inst{1.0, 0.5, 1.0, 1.0, 1.0, 4};
  for (int s = -3; s <= 3; s += 2) {
    CHECK(ml_detect_d2(inst.g22 * 0.3 * s, inst, 0.3) == s);
  }
  // Midpoint between levels -0.3 and 0.3 resolves to the smaller symbol.
  CHECK(ml_detect_d2(0.0, inst, 0.3) == -1);
  CHECK(ml_detect_d2(0.92, inst, 0.3) == 3);
}

TEST_CASE("noise-free limit has zero errors") {
  SimConfig cfg = base_config();
  cfg.snr_grid = {1e12};
  cfg.trials = 1;
  cfg.symbols_per_trial = 100000;
  const BerCurve curve = run_ber(cfg, FadingSpec::fixed({1.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}));
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].errors() == 0);
  CHECK(curve.points[0].ber() == 0.0);
}

TEST_CASE("same seed gives identical curves at any thread count") {
  SimConfig cfg = base_config();
  cfg.snr_grid = {2.0, 20.0};
  const FadingSpec fading = FadingSpec::rayleigh(1.0, 1.0, 1.0);

  cfg.threads = 1;
  const std::string a = run_ber(cfg, fading).to_csv();
  cfg.threads = 2;
  const std::string b = run_ber(cfg, fading).to_csv();
  cfg.threads = 7;
  const std::string c = run_ber(cfg, fading).to_csv();
  CHECK(a == b);
  CHECK(a == c);

  cfg.seed = 43;
  const std::string d = run_ber(cfg, fading).to_csv();
  CHECK(a != d);

  for (Scheme s : {Scheme::Tdma, Scheme::Fdma, Scheme::CrNoma}) {
    cfg.scheme = s;
    cfg.seed = 42;
    cfg.threads = 1;
    const std::string x = run_baseline(cfg, fading).to_csv();
    cfg.threads = 5;
    const std::string y = run_baseline(cfg, fading).to_csv();
    CHECK(x == y);
  }
}

TEST_CASE("stream bit accounting is exact") {
  SimConfig cfg = base_config();
  cfg.trials = 50;
  cfg.symbols_per_trial = 200;
  const BerCurve curve = run_ber(cfg, FadingSpec::fixed({1.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}));
  const BerPoint& pt = curve.points[0];
  const std::uint64_t per_stream = cfg.trials * cfg.symbols_per_trial * (2 + 2);
  CHECK(pt.s1_d1.bits == per_stream);
  CHECK(pt.s2_d1.bits == per_stream);
  CHECK(pt.s2_d2.bits == per_stream);
  CHECK(pt.bits() == 3 * per_stream);
}

TEST_CASE("fdma at rho equals tdma at 2*rho") {
  SimConfig fd = base_config();
  fd.scheme = Scheme::Fdma;
  fd.snr_grid = {25.0};
  SimConfig td = fd;
  td.scheme = Scheme::Tdma;
  td.snr_grid = {50.0};
  const FadingSpec fading = FadingSpec::rayleigh(1.0, 1.0, 1.0);
  const BerCurve a = run_baseline(fd, fading);
  const BerCurve b = run_baseline(td, fading);
  CHECK(a.points[0].errors() == b.points[0].errors());
  CHECK(a.points[0].s1_d1.bit_errors == b.points[0].s1_d1.bit_errors);
  CHECK(a.points[0].s2_d1.bit_errors == b.points[0].s2_d1.bit_errors);
  CHECK(a.points[0].s2_d2.bit_errors == b.points[0].s2_d2.bit_errors);
}

TEST_CASE("single-user symbol error rate matches the analytic PAM formula") {
  SimConfig cfg = base_config();
  cfg.trials = 200;
  cfg.symbols_per_trial = 500;
  cfg.snr_grid = {8.0, 20.0, 50.0};
  const FadingSpec fading = FadingSpec::fixed({1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0});
  const BerCurve curve = run_ber(cfg, fading);

  const auto [p2i, p2q] = allocate_power(cfg.P2, cfg.M, cfg.Mp);
  const RealZcInstance inst{1.0, 0.0, 1.0, p2i, p2i, cfg.M};
  const double w2 = solve(inst).w2;
  for (const BerPoint& pt : curve.points) {
    const double sigma = std::sqrt(1.0 / (2.0 * pt.rho));
    const double expected = 2.0 * (1.0 - 1.0 / cfg.M) * q_function(1.0 * w2 / sigma);
    const double ser = pt.s2_d2.ser();
    const double se = std::sqrt(std::max(expected * (1.0 - expected), 1e-12) /
                                static_cast<double>(pt.s2_d2.symbols));
    CHECK(std::fabs(ser - expected) <= 3.5 * se);
  }
}

TEST_CASE("ber declines with snr") {
  SimConfig cfg = base_config();
  cfg.trials = 400;
  cfg.symbols_per_trial = 50;
  cfg.snr_grid = {1.0, 10.0, 100.0, 1000.0};
  const BerCurve curve = run_ber(cfg, FadingSpec::rayleigh(1.0, 1.0, 1.0));
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const double se = std::sqrt(curve.points[i].ber_std_error() * curve.points[i].ber_std_error() +
                                curve.points[i + 1].ber_std_error() *
                                    curve.points[i + 1].ber_std_error());
    CHECK(curve.points[i].ber() >= curve.points[i + 1].ber() - 3.0 * se);
  }
}

TEST_CASE("csv serialization shape") {
  SimConfig cfg = base_config();
  cfg.snr_grid = {1.0, 4.0};
  const BerCurve curve = run_ber(cfg, FadingSpec::fixed({1.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}));
  const std::string csv = curve.to_csv();
  CHECK(csv.rfind("scheme,rho,snr_db,ber,bits,errors\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("noma,1,") != std::string::npos);

  const std::string streams = curve.to_stream_csv();
  CHECK(streams.rfind("scheme,stream,rho,snr_db,ber,bits,errors\n", 0) == 0);
  CHECK(std::count(streams.begin(), streams.end(), '\n') == 7);
  CHECK(streams.find("s2_d2") != std::string::npos);
}

TEST_CASE("configuration validation") {
  SimConfig cfg = base_config();
  cfg.trials = 10;
  cfg.symbols_per_trial = 10;  // too few total symbols
  CHECK_THROWS_AS(run_ber(cfg, FadingSpec::rayleigh(1, 1, 1)), std::invalid_argument);

  cfg = base_config();
  cfg.snr_grid = {10.0, 5.0};
  CHECK_THROWS_AS(run_ber(cfg, FadingSpec::rayleigh(1, 1, 1)), std::invalid_argument);

  cfg = base_config();
  cfg.M = 6;
  CHECK_THROWS_AS(run_ber(cfg, FadingSpec::rayleigh(1, 1, 1)), std::invalid_argument);

  cfg = base_config();
  cfg.scheme = Scheme::Tdma;
  CHECK_THROWS_AS(run_ber(cfg, FadingSpec::rayleigh(1, 1, 1)), std::invalid_argument);
  cfg.scheme = Scheme::ProposedNoma;
  CHECK_THROWS_AS(run_baseline(cfg, FadingSpec::rayleigh(1, 1, 1)), std::invalid_argument);

  CHECK_THROWS_AS(FadingSpec::rayleigh(0.0, 1.0, 1.0), std::invalid_argument);

  // Degenerate deterministic channels are rejected up front, for baselines
  // too (they bypass decompose).
  cfg = base_config();
  cfg.scheme = Scheme::Tdma;
  CHECK_THROWS_AS(run_baseline(cfg, FadingSpec::fixed({0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0})),
                  std::invalid_argument);
}
