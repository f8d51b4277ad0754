#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zcnoma/channel.hpp"
#include "zcnoma/solver.hpp"

namespace zcnoma {

enum class Scheme { ProposedNoma, Tdma, Fdma, CrNoma };

std::string scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Either a fixed complex channel triple or per-link Rayleigh variances
/// (h ~ CN(0, var), redrawn independently every trial).
struct FadingSpec {
  bool deterministic = true;
  std::complex<double> h11{1.0, 0.0};
  std::complex<double> h21{0.5, 0.0};
  std::complex<double> h22{1.0, 0.0};
  double var11 = 1.0;
  double var21 = 1.0;
  double var22 = 1.0;

  static FadingSpec fixed(std::complex<double> h11, std::complex<double> h21,
                          std::complex<double> h22);
  static FadingSpec rayleigh(double var11, double var21, double var22);
};

struct SimConfig {
  Scheme scheme = Scheme::ProposedNoma;
  unsigned M = 4;
  unsigned Mp = 4;
  std::vector<double> snr_grid;  // linear rho = 1/(2*sigma^2), ascending
  std::uint64_t trials = 1000;
  std::uint64_t symbols_per_trial = 100;
  std::uint64_t seed = 1;
  double P1 = 1.0;
  double P2 = 1.0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct StreamCount {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t symbols = 0;      // real PAM dimensions, or PSK symbols for CR
  std::uint64_t symbol_errors = 0;

  void operator+=(const StreamCount& o);
  double ber() const { return bits == 0 ? 0.0 : static_cast<double>(bit_errors) / bits; }
  double ser() const {
    return symbols == 0 ? 0.0 : static_cast<double>(symbol_errors) / symbols;
  }
};

/// One SNR point. Three message streams: s1 decoded at D1, s2 decoded at D1
/// (jointly), s2 decoded at D2. The aggregate BER is the bit-count-weighted
/// mean of the three, i.e. total errors over total bits.
struct BerPoint {
  double rho = 0.0;
  StreamCount s1_d1;
  StreamCount s2_d1;
  StreamCount s2_d2;

  std::uint64_t bits() const { return s1_d1.bits + s2_d1.bits + s2_d2.bits; }
  std::uint64_t errors() const {
    return s1_d1.bit_errors + s2_d1.bit_errors + s2_d2.bit_errors;
  }
  double ber() const { return bits() == 0 ? 0.0 : static_cast<double>(errors()) / bits(); }
  double ber_std_error() const;
};

struct BerCurve {
  Scheme scheme = Scheme::ProposedNoma;
  std::vector<BerPoint> points;

  /// Header "scheme,rho,snr_db,ber,bits,errors"; byte-stable formatting.
  std::string to_csv() const;
  /// Per-stream breakdown, header "scheme,stream,rho,snr_db,ber,bits,errors".
  std::string to_stream_csv() const;
};

/// Joint ML detection of (s1, s2) at D1: exhaustive argmin over the M x M
/// sum levels, ties toward smaller (s1, s2) lexicographically. Returned as
/// PAM amplitudes.
std::pair<int, int> ml_detect_d1(double y1, const RealZcInstance& inst, double w1, double w2);

/// Single-user ML at D2; midpoint ties go to the smaller symbol.
int ml_detect_d2(double y2, const RealZcInstance& inst, double w2);

/// Monte Carlo BER of the proposed design: per trial a channel is drawn (or
/// fixed), decomposed, solved per component, and Gray-labeled PAM symbols are
/// sent through both real sub-channels with noise variance 1/(2*rho).
/// Deterministic for a fixed seed at any thread count. Requires
/// scheme == ProposedNoma and power-of-two PAM orders.
BerCurve run_ber(const SimConfig& cfg, const FadingSpec& fading);

/// TDMA (each user alone, (M*Mp)^2-QAM, unchanged instantaneous power),
/// FDMA (same but noise variance halved), or CR-NOMA (both users at full
/// power with N-PSK, N = M*Mp, user 2 rotated by pi/N, joint ML at D1).
BerCurve run_baseline(const SimConfig& cfg, const FadingSpec& fading);

}  // namespace zcnoma
