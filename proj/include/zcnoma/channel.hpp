#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace zcnoma {

/// Two-transmitter two-receiver complex Gaussian Z-channel. h11 and h22 are
/// the direct links, h21 the cross link from transmitter 2 to receiver 1.
/// M and Mp are the per-dimension PAM orders of the in-phase and quadrature
/// components (both users use the same order on each component).
struct ComplexZcChannel {
  std::complex<double> h11{1.0, 0.0};
  std::complex<double> h21{0.0, 0.0};
  std::complex<double> h22{1.0, 0.0};
  double P1 = 1.0;
  double P2 = 1.0;
  unsigned M = 4;
  unsigned Mp = 4;
};

/// One real scalar Z-channel: y1 = g11*w1*s1 + g21*w2*s2 + n, y2 = g22*w2*s2 + n'
/// with s drawn from the unit M-PAM grid. p1, p2 are the per-component average
/// power budgets bounding the scaling factors.
struct RealZcInstance {
  double g11 = 1.0;
  double g21 = 0.0;
  double g22 = 1.0;
  double p1 = 1.0;
  double p2 = 1.0;
  unsigned M = 4;

  double cap1() const;  // sqrt(3*p1/(M^2-1))
  double cap2() const;
};

/// Unit-scale M-PAM: the M odd integers +-1, +-3, ..., +-(M-1) in ascending
/// order. Scaling lives in the w factors, not here.
struct PamConstellation {
  unsigned order = 0;
  std::vector<double> points;
};

/// Per-real-dimension noise: variance sigma2 with SNR rho = 1/(2*sigma2).
struct NoiseModel {
  double sigma2 = 0.5;
  double rho = 1.0;

  static NoiseModel from_snr(double rho);
};

/// Noise-free received point sets for a real sub-channel at given scalings.
/// rx1 has M^2 entries enumerated s1-major (s1 ascending, then s2 ascending);
/// coincident values are kept, so it is a multiset. rx2 has M entries.
struct SumConstellation {
  std::vector<double> rx1;
  std::vector<double> rx2;
};

/// Throws std::invalid_argument when the channel violates its invariants
/// (zero direct link, odd or tiny PAM order, non-positive power).
void validate(const ComplexZcChannel& ch);
void validate(const RealZcInstance& inst);

PamConstellation pam_constellation(unsigned M);

/// Split a total power budget P between in-phase order M and quadrature order
/// Mp so both PAM components end up with the same minimum distance:
/// p = (M^2-1)P/(M^2+Mp^2-2), p' = (Mp^2-1)P/(M^2+Mp^2-2).
std::pair<double, double> allocate_power(double P, unsigned M, unsigned Mp);

/// Rotate out the channel phases and take real/imaginary parts: the complex
/// ZC becomes two parallel real ZCs (in-phase, quadrature) whose gains are
/// the channel magnitudes and whose powers follow allocate_power.
std::pair<RealZcInstance, RealZcInstance> decompose(const ComplexZcChannel& ch);

SumConstellation sum_constellation(const RealZcInstance& inst, double w1, double w2);

}  // namespace zcnoma
