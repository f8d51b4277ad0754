#include "zcnoma/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "zcnoma/gray.hpp"
#include "zcnoma/kernels.hpp"
#include "zcnoma/rng.hpp"

namespace zcnoma {

namespace {

bool is_pow2(unsigned x) { return x != 0 && (x & (x - 1)) == 0; }

unsigned log2u(unsigned x) {
  unsigned n = 0;
  while (x > 1) {
    x >>= 1;
    ++n;
  }
  return n;
}

double amp(std::uint32_t index, unsigned order) {
  return 2.0 * static_cast<double>(index) - (static_cast<double>(order) - 1.0);
}

struct TrialCounts {
  StreamCount s1_d1, s2_d1, s2_d2;

  void operator+=(const TrialCounts& o) {
    s1_d1 += o.s1_d1;
    s2_d1 += o.s2_d1;
    s2_d2 += o.s2_d2;
  }
};

// Fixed per-trial draw order (part of the reproducibility contract):
// 1. channel: h11.re, h11.im, h21.re, h21.im, h22.re, h22.im (fading only);
// 2. per symbol: one 64-bit word of index bits, then the Gaussian noise
//    samples in the order the receive equations are written.
ComplexZcChannel draw_channel(const SimConfig& cfg, const FadingSpec& fading,
                              PhiloxStream& rng) {
  ComplexZcChannel ch;
  ch.P1 = cfg.P1;
  ch.P2 = cfg.P2;
  ch.M = cfg.M;
  ch.Mp = cfg.Mp;
  if (fading.deterministic) {
    ch.h11 = fading.h11;
    ch.h21 = fading.h21;
    ch.h22 = fading.h22;
    return ch;
  }
  auto cn = [&rng](double var) {
    const double s = std::sqrt(var / 2.0);
    const double re = s * rng.next_gaussian();
    const double im = s * rng.next_gaussian();
    return std::complex<double>(re, im);
  };
  do {
    ch.h11 = cn(fading.var11);
    ch.h21 = cn(fading.var21);
    ch.h22 = cn(fading.var22);
  } while (std::abs(ch.h11) == 0.0 || std::abs(ch.h22) == 0.0);
  return ch;
}

// One real sub-channel of the proposed design, ready for batched detection.
struct NomaComponent {
  unsigned order = 0;
  unsigned bits = 0;
  double tx1 = 0.0;  // g11*w1
  double tx2 = 0.0;  // g21*w2
  double rx2 = 0.0;  // g22*w2
  std::vector<double> sum_levels;  // s1-major lexicographic
  std::vector<double> d2_levels;

  static NomaComponent make(const RealZcInstance& inst, const ScalingSolution& sol) {
    NomaComponent c;
    c.order = inst.M;
    c.bits = log2u(inst.M);
    c.tx1 = inst.g11 * sol.w1;
    c.tx2 = inst.g21 * sol.w2;
    c.rx2 = inst.g22 * sol.w2;
    c.sum_levels.reserve(static_cast<std::size_t>(inst.M) * inst.M);
    for (unsigned i = 0; i < inst.M; ++i) {
      for (unsigned j = 0; j < inst.M; ++j) {
        c.sum_levels.push_back(c.tx1 * amp(i, inst.M) + c.tx2 * amp(j, inst.M));
      }
    }
    c.d2_levels.reserve(inst.M);
    for (unsigned j = 0; j < inst.M; ++j) {
      c.d2_levels.push_back(c.rx2 * amp(j, inst.M));
    }
    return c;
  }
};

void count_pam_stream(StreamCount& sc, const std::uint32_t* tx, const std::uint32_t* rx,
                      std::size_t n, unsigned bits_per_symbol) {
  for (std::size_t i = 0; i < n; ++i) {
    sc.bit_errors += gray_bit_errors(tx[i], rx[i]);
    sc.symbol_errors += tx[i] != rx[i];
  }
  sc.bits += n * bits_per_symbol;
  sc.symbols += n;
}

TrialCounts noma_trial(const SimConfig& cfg, const FadingSpec& fading, std::uint32_t rho_idx,
                       std::uint32_t trial, double sigma) {
  PhiloxStream rng(cfg.seed, rho_idx, trial);
  const ComplexZcChannel ch = draw_channel(cfg, fading, rng);
  const auto [inst_i, inst_q] = decompose(ch);
  const ScalingSolution sol_i = solve(inst_i);
  const ScalingSolution sol_q = solve(inst_q);
  const NomaComponent ci = NomaComponent::make(inst_i, sol_i);
  const NomaComponent cq = NomaComponent::make(inst_q, sol_q);

  const std::size_t n = cfg.symbols_per_trial;
  std::vector<std::uint32_t> tx_s1_i(n), tx_s2_i(n), tx_s1_q(n), tx_s2_q(n);
  std::vector<double> y1_i(n), y1_q(n), y2_i(n), y2_q(n);

  for (std::size_t s = 0; s < n; ++s) {
    const std::uint64_t r = rng.next_u64();
    const std::uint32_t i1 = static_cast<std::uint32_t>(r & (ci.order - 1));
    const std::uint32_t i2 = static_cast<std::uint32_t>((r >> 8) & (ci.order - 1));
    const std::uint32_t q1 = static_cast<std::uint32_t>((r >> 16) & (cq.order - 1));
    const std::uint32_t q2 = static_cast<std::uint32_t>((r >> 24) & (cq.order - 1));
    tx_s1_i[s] = i1;
    tx_s2_i[s] = i2;
    tx_s1_q[s] = q1;
    tx_s2_q[s] = q2;
    const double n1_i = rng.next_gaussian();
    const double n1_q = rng.next_gaussian();
    const double n2_i = rng.next_gaussian();
    const double n2_q = rng.next_gaussian();
    y1_i[s] = ci.tx1 * amp(i1, ci.order) + ci.tx2 * amp(i2, ci.order) + sigma * n1_i;
    y1_q[s] = cq.tx1 * amp(q1, cq.order) + cq.tx2 * amp(q2, cq.order) + sigma * n1_q;
    y2_i[s] = ci.rx2 * amp(i2, ci.order) + sigma * n2_i;
    y2_q[s] = cq.rx2 * amp(q2, cq.order) + sigma * n2_q;
  }

  std::vector<std::uint32_t> det_joint(n), det_d2(n), det_s1(n), det_s2(n);
  TrialCounts tc;

  kernels::nearest_level_batch(ci.sum_levels.data(), ci.sum_levels.size(), y1_i.data(), n,
                               det_joint.data());
  for (std::size_t s = 0; s < n; ++s) {
    det_s1[s] = det_joint[s] / ci.order;
    det_s2[s] = det_joint[s] % ci.order;
  }
  count_pam_stream(tc.s1_d1, tx_s1_i.data(), det_s1.data(), n, ci.bits);
  count_pam_stream(tc.s2_d1, tx_s2_i.data(), det_s2.data(), n, ci.bits);
  kernels::nearest_level_batch(ci.d2_levels.data(), ci.d2_levels.size(), y2_i.data(), n,
                               det_d2.data());
  count_pam_stream(tc.s2_d2, tx_s2_i.data(), det_d2.data(), n, ci.bits);

  kernels::nearest_level_batch(cq.sum_levels.data(), cq.sum_levels.size(), y1_q.data(), n,
                               det_joint.data());
  for (std::size_t s = 0; s < n; ++s) {
    det_s1[s] = det_joint[s] / cq.order;
    det_s2[s] = det_joint[s] % cq.order;
  }
  count_pam_stream(tc.s1_d1, tx_s1_q.data(), det_s1.data(), n, cq.bits);
  count_pam_stream(tc.s2_d1, tx_s2_q.data(), det_s2.data(), n, cq.bits);
  kernels::nearest_level_batch(cq.d2_levels.data(), cq.d2_levels.size(), y2_q.data(), n,
                               det_d2.data());
  count_pam_stream(tc.s2_d2, tx_s2_q.data(), det_d2.data(), n, cq.bits);

  return tc;
}

// TDMA / FDMA: each user alone with a (M*Mp)^2-QAM constellation (two
// (M*Mp)-PAM dimensions) at unchanged instantaneous power; FDMA additionally
// halves the noise variance. During user 2's slots D1 also decodes the
// multicast symbol through the cross link.
TrialCounts orthogonal_trial(const SimConfig& cfg, const FadingSpec& fading,
                             std::uint32_t rho_idx, std::uint32_t trial, double sigma,
                             bool halve_noise) {
  PhiloxStream rng(cfg.seed, rho_idx, trial);
  const ComplexZcChannel ch = draw_channel(cfg, fading, rng);
  const double g11 = std::abs(ch.h11);
  const double g21 = std::abs(ch.h21);
  const double g22 = std::abs(ch.h22);

  const unsigned Npam = cfg.M * cfg.Mp;
  const unsigned bitsN = log2u(Npam);
  const double denom = static_cast<double>(Npam) * Npam - 1.0;
  const double w1 = std::sqrt(3.0 * (cfg.P1 / 2.0) / denom);
  const double w2 = std::sqrt(3.0 * (cfg.P2 / 2.0) / denom);
  const double sig = halve_noise ? sigma / std::numbers::sqrt2 : sigma;

  std::vector<double> lv_u1(Npam), lv_u2_d1(Npam), lv_u2_d2(Npam);
  for (unsigned k = 0; k < Npam; ++k) {
    const double a = amp(k, Npam);
    lv_u1[k] = g11 * w1 * a;
    lv_u2_d1[k] = g21 * w2 * a;
    lv_u2_d2[k] = g22 * w2 * a;
  }

  const std::size_t n_each = (cfg.symbols_per_trial + 1) / 2;
  std::vector<std::uint32_t> tx_i(n_each), tx_q(n_each), det_i(n_each), det_q(n_each);
  std::vector<std::uint32_t> det2_i(n_each), det2_q(n_each);
  std::vector<double> yi(n_each), yq(n_each), y2i(n_each), y2q(n_each);
  TrialCounts tc;

  // User 1 slots: heard at D1 only.
  for (std::size_t s = 0; s < n_each; ++s) {
    const std::uint64_t r = rng.next_u64();
    tx_i[s] = static_cast<std::uint32_t>(r & (Npam - 1));
    tx_q[s] = static_cast<std::uint32_t>((r >> 16) & (Npam - 1));
    yi[s] = lv_u1[tx_i[s]] + sig * rng.next_gaussian();
    yq[s] = lv_u1[tx_q[s]] + sig * rng.next_gaussian();
  }
  kernels::nearest_level_batch(lv_u1.data(), Npam, yi.data(), n_each, det_i.data());
  kernels::nearest_level_batch(lv_u1.data(), Npam, yq.data(), n_each, det_q.data());
  count_pam_stream(tc.s1_d1, tx_i.data(), det_i.data(), n_each, bitsN);
  count_pam_stream(tc.s1_d1, tx_q.data(), det_q.data(), n_each, bitsN);

  // User 2 slots: heard at D1 (cross link) and D2.
  for (std::size_t s = 0; s < n_each; ++s) {
    const std::uint64_t r = rng.next_u64();
    tx_i[s] = static_cast<std::uint32_t>(r & (Npam - 1));
    tx_q[s] = static_cast<std::uint32_t>((r >> 16) & (Npam - 1));
    yi[s] = lv_u2_d1[tx_i[s]] + sig * rng.next_gaussian();
    yq[s] = lv_u2_d1[tx_q[s]] + sig * rng.next_gaussian();
    y2i[s] = lv_u2_d2[tx_i[s]] + sig * rng.next_gaussian();
    y2q[s] = lv_u2_d2[tx_q[s]] + sig * rng.next_gaussian();
  }
  kernels::nearest_level_batch(lv_u2_d1.data(), Npam, yi.data(), n_each, det_i.data());
  kernels::nearest_level_batch(lv_u2_d1.data(), Npam, yq.data(), n_each, det_q.data());
  kernels::nearest_level_batch(lv_u2_d2.data(), Npam, y2i.data(), n_each, det2_i.data());
  kernels::nearest_level_batch(lv_u2_d2.data(), Npam, y2q.data(), n_each, det2_q.data());
  count_pam_stream(tc.s2_d1, tx_i.data(), det_i.data(), n_each, bitsN);
  count_pam_stream(tc.s2_d1, tx_q.data(), det_q.data(), n_each, bitsN);
  count_pam_stream(tc.s2_d2, tx_i.data(), det2_i.data(), n_each, bitsN);
  count_pam_stream(tc.s2_d2, tx_q.data(), det2_q.data(), n_each, bitsN);

  return tc;
}

// Constellation-rotation NOMA: both users at full power with N-PSK, user 2
// rotated by pi/N; joint complex ML over the N^2 sum points at D1.
TrialCounts crnoma_trial(const SimConfig& cfg, const FadingSpec& fading, std::uint32_t rho_idx,
                         std::uint32_t trial, double sigma) {
  PhiloxStream rng(cfg.seed, rho_idx, trial);
  const ComplexZcChannel ch = draw_channel(cfg, fading, rng);

  const unsigned N = cfg.M * cfg.Mp;
  const unsigned bitsN = log2u(N);
  const double a1 = std::sqrt(cfg.P1);
  const double a2 = std::sqrt(cfg.P2);

  std::vector<std::complex<double>> x1(N), x2(N);
  for (unsigned k = 0; k < N; ++k) {
    const double phi1 = 2.0 * std::numbers::pi * k / N;
    const double phi2 = (2.0 * std::numbers::pi * k + std::numbers::pi) / N;
    x1[k] = a1 * std::complex<double>(std::cos(phi1), std::sin(phi1));
    x2[k] = a2 * std::complex<double>(std::cos(phi2), std::sin(phi2));
  }
  std::vector<double> sum_re(static_cast<std::size_t>(N) * N), sum_im(sum_re.size());
  for (unsigned k = 0; k < N; ++k) {
    for (unsigned l = 0; l < N; ++l) {
      const std::complex<double> p = ch.h11 * x1[k] + ch.h21 * x2[l];
      sum_re[static_cast<std::size_t>(k) * N + l] = p.real();
      sum_im[static_cast<std::size_t>(k) * N + l] = p.imag();
    }
  }
  std::vector<double> d2_re(N), d2_im(N);
  for (unsigned l = 0; l < N; ++l) {
    const std::complex<double> p = ch.h22 * x2[l];
    d2_re[l] = p.real();
    d2_im[l] = p.imag();
  }

  const std::size_t n = cfg.symbols_per_trial;
  std::vector<std::uint32_t> tx_k(n), tx_l(n), det_joint(n), det_l(n);
  std::vector<double> z1r(n), z1i(n), z2r(n), z2i(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::uint64_t r = rng.next_u64();
    const std::uint32_t k = static_cast<std::uint32_t>(r & (N - 1));
    const std::uint32_t l = static_cast<std::uint32_t>((r >> 16) & (N - 1));
    tx_k[s] = k;
    tx_l[s] = l;
    const std::size_t idx = static_cast<std::size_t>(k) * N + l;
    z1r[s] = sum_re[idx] + sigma * rng.next_gaussian();
    z1i[s] = sum_im[idx] + sigma * rng.next_gaussian();
    z2r[s] = d2_re[l] + sigma * rng.next_gaussian();
    z2i[s] = d2_im[l] + sigma * rng.next_gaussian();
  }

  TrialCounts tc;
  kernels::nearest_point2_batch(sum_re.data(), sum_im.data(), sum_re.size(), z1r.data(),
                                z1i.data(), n, det_joint.data());
  std::vector<std::uint32_t> det_k(n), det_l1(n);
  for (std::size_t s = 0; s < n; ++s) {
    det_k[s] = det_joint[s] / N;
    det_l1[s] = det_joint[s] % N;
  }
  count_pam_stream(tc.s1_d1, tx_k.data(), det_k.data(), n, bitsN);
  count_pam_stream(tc.s2_d1, tx_l.data(), det_l1.data(), n, bitsN);
  kernels::nearest_point2_batch(d2_re.data(), d2_im.data(), N, z2r.data(), z2i.data(), n,
                                det_l.data());
  count_pam_stream(tc.s2_d2, tx_l.data(), det_l.data(), n, bitsN);
  return tc;
}

void validate_config(const SimConfig& cfg, const FadingSpec& fading) {
  if (fading.deterministic) {
    ComplexZcChannel ch;
    ch.h11 = fading.h11;
    ch.h21 = fading.h21;
    ch.h22 = fading.h22;
    ch.P1 = cfg.P1;
    ch.P2 = cfg.P2;
    ch.M = cfg.M;
    ch.Mp = cfg.Mp;
    validate(ch);
  }
  if (cfg.snr_grid.empty()) throw std::invalid_argument("sim: empty SNR grid");
  double prev = 0.0;
  for (double rho : cfg.snr_grid) {
    if (!(rho > 0.0)) throw std::invalid_argument("sim: rho must be > 0");
    if (rho < prev) throw std::invalid_argument("sim: SNR grid must ascend");
    prev = rho;
  }
  if (cfg.trials == 0 || cfg.symbols_per_trial == 0 ||
      cfg.trials * cfg.symbols_per_trial < 10000) {
    throw std::invalid_argument("sim: need trials*symbols_per_trial >= 1e4");
  }
  if (cfg.trials > 0xFFFFFFFFull || cfg.snr_grid.size() > 0xFFFFFFFFull) {
    throw std::invalid_argument("sim: trial/SNR counts exceed the stream index space");
  }
  if (!is_pow2(cfg.M) || !is_pow2(cfg.Mp) || cfg.M < 2 || cfg.Mp < 2 || cfg.M > 256 ||
      cfg.Mp > 256) {
    throw std::invalid_argument("sim: PAM orders must be powers of two in [2, 256]");
  }
  if (!(cfg.P1 > 0.0) || !(cfg.P2 > 0.0)) {
    throw std::invalid_argument("sim: power budgets must be > 0");
  }
}

template <typename TrialFn>
BerCurve run_grid(const SimConfig& cfg, const FadingSpec& fading, TrialFn&& trial_fn) {
  validate_config(cfg, fading);
  const unsigned nthreads =
      cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

  BerCurve curve;
  curve.scheme = cfg.scheme;
  curve.points.reserve(cfg.snr_grid.size());
  for (std::size_t ri = 0; ri < cfg.snr_grid.size(); ++ri) {
    const double rho = cfg.snr_grid[ri];
    const double sigma = std::sqrt(1.0 / (2.0 * rho));

    auto run_chunk = [&](std::uint64_t t0, std::uint64_t t1) {
      TrialCounts local;
      for (std::uint64_t t = t0; t < t1; ++t) {
        local += trial_fn(static_cast<std::uint32_t>(ri), static_cast<std::uint32_t>(t), sigma);
      }
      return local;
    };

    TrialCounts total;
    if (nthreads <= 1 || cfg.trials < 2 * nthreads) {
      total = run_chunk(0, cfg.trials);
    } else {
      const std::uint64_t chunk = (cfg.trials + nthreads - 1) / nthreads;
      std::vector<std::future<TrialCounts>> futs;
      for (unsigned t = 0; t < nthreads; ++t) {
        const std::uint64_t t0 = std::min<std::uint64_t>(t * chunk, cfg.trials);
        const std::uint64_t t1 = std::min<std::uint64_t>(t0 + chunk, cfg.trials);
        if (t0 >= t1) break;
        futs.push_back(std::async(std::launch::async, run_chunk, t0, t1));
      }
      for (auto& f : futs) total += f.get();
    }

    BerPoint pt;
    pt.rho = rho;
    pt.s1_d1 = total.s1_d1;
    pt.s2_d1 = total.s2_d1;
    pt.s2_d2 = total.s2_d2;
    curve.points.push_back(pt);
  }
  return curve;
}

void append_csv_row(std::string& out, const char* scheme, const char* stream, double rho,
                    double ber, std::uint64_t bits, std::uint64_t errors) {
  char buf[192];
  const double snr_db = 10.0 * std::log10(rho);
  if (stream == nullptr) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%llu,%llu\n", scheme, rho, snr_db,
                  ber, static_cast<unsigned long long>(bits),
                  static_cast<unsigned long long>(errors));
  } else {
    std::snprintf(buf, sizeof buf, "%s,%s,%.12g,%.12g,%.12g,%llu,%llu\n", scheme, stream, rho,
                  snr_db, ber, static_cast<unsigned long long>(bits),
                  static_cast<unsigned long long>(errors));
  }
  out += buf;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ProposedNoma:
      return "noma";
    case Scheme::Tdma:
      return "tdma";
    case Scheme::Fdma:
      return "fdma";
    case Scheme::CrNoma:
      return "crnoma";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "noma") return Scheme::ProposedNoma;
  if (name == "tdma") return Scheme::Tdma;
  if (name == "fdma") return Scheme::Fdma;
  if (name == "crnoma") return Scheme::CrNoma;
  return std::nullopt;
}

FadingSpec FadingSpec::fixed(std::complex<double> h11, std::complex<double> h21,
                             std::complex<double> h22) {
  FadingSpec f;
  f.deterministic = true;
  f.h11 = h11;
  f.h21 = h21;
  f.h22 = h22;
  return f;
}

FadingSpec FadingSpec::rayleigh(double var11, double var21, double var22) {
  if (!(var11 > 0.0) || !(var21 > 0.0) || !(var22 > 0.0)) {
    throw std::invalid_argument("FadingSpec: variances must be > 0");
  }
  FadingSpec f;
  f.deterministic = false;
  f.var11 = var11;
  f.var21 = var21;
  f.var22 = var22;
  return f;
}

void StreamCount::operator+=(const StreamCount& o) {
  bits += o.bits;
  bit_errors += o.bit_errors;
  symbols += o.symbols;
  symbol_errors += o.symbol_errors;
}

double BerPoint::ber_std_error() const {
  const std::uint64_t b = bits();
  if (b == 0) return 0.0;
  const double p = ber();
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(b));
}

std::string BerCurve::to_csv() const {
  std::string out = "scheme,rho,snr_db,ber,bits,errors\n";
  const std::string name = scheme_name(scheme);
  for (const BerPoint& pt : points) {
    append_csv_row(out, name.c_str(), nullptr, pt.rho, pt.ber(), pt.bits(), pt.errors());
  }
  return out;
}

std::string BerCurve::to_stream_csv() const {
  std::string out = "scheme,stream,rho,snr_db,ber,bits,errors\n";
  const std::string name = scheme_name(scheme);
  for (const BerPoint& pt : points) {
    append_csv_row(out, name.c_str(), "s1_d1", pt.rho, pt.s1_d1.ber(), pt.s1_d1.bits,
                   pt.s1_d1.bit_errors);
    append_csv_row(out, name.c_str(), "s2_d1", pt.rho, pt.s2_d1.ber(), pt.s2_d1.bits,
                   pt.s2_d1.bit_errors);
    append_csv_row(out, name.c_str(), "s2_d2", pt.rho, pt.s2_d2.ber(), pt.s2_d2.bits,
                   pt.s2_d2.bit_errors);
  }
  return out;
}

std::pair<int, int> ml_detect_d1(double y1, const RealZcInstance& inst, double w1, double w2) {
  validate(inst);
  const unsigned M = inst.M;
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(M) * M);
  for (unsigned i = 0; i < M; ++i) {
    for (unsigned j = 0; j < M; ++j) {
      levels.push_back(inst.g11 * w1 * amp(i, M) + inst.g21 * w2 * amp(j, M));
    }
  }
  std::uint32_t idx = 0;
  kernels::nearest_level_batch(levels.data(), levels.size(), &y1, 1, &idx);
  return {static_cast<int>(amp(idx / M, M)), static_cast<int>(amp(idx % M, M))};
}

int ml_detect_d2(double y2, const RealZcInstance& inst, double w2) {
  validate(inst);
  const unsigned M = inst.M;
  std::vector<double> levels;
  levels.reserve(M);
  for (unsigned j = 0; j < M; ++j) levels.push_back(inst.g22 * w2 * amp(j, M));
  std::uint32_t idx = 0;
  kernels::nearest_level_batch(levels.data(), levels.size(), &y2, 1, &idx);
  return static_cast<int>(amp(idx, M));
}

BerCurve run_ber(const SimConfig& cfg, const FadingSpec& fading) {
  if (cfg.scheme != Scheme::ProposedNoma) {
    throw std::invalid_argument("run_ber: scheme must be the proposed design");
  }
  return run_grid(cfg, fading, [&](std::uint32_t ri, std::uint32_t trial, double sigma) {
    return noma_trial(cfg, fading, ri, trial, sigma);
  });
}

BerCurve run_baseline(const SimConfig& cfg, const FadingSpec& fading) {
  switch (cfg.scheme) {
    case Scheme::Tdma:
      return run_grid(cfg, fading, [&](std::uint32_t ri, std::uint32_t trial, double sigma) {
        return orthogonal_trial(cfg, fading, ri, trial, sigma, false);
      });
    case Scheme::Fdma:
      return run_grid(cfg, fading, [&](std::uint32_t ri, std::uint32_t trial, double sigma) {
        return orthogonal_trial(cfg, fading, ri, trial, sigma, true);
      });
    case Scheme::CrNoma:
      return run_grid(cfg, fading, [&](std::uint32_t ri, std::uint32_t trial, double sigma) {
        return crnoma_trial(cfg, fading, ri, trial, sigma);
      });
    default:
      throw std::invalid_argument("run_baseline: unsupported scheme");
  }
}

}  // namespace zcnoma
