#include "zcnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace zcnoma {

namespace {

bool valid_order(unsigned M) { return M >= 2 && M % 2 == 0; }

}  // namespace

double RealZcInstance::cap1() const {
  return std::sqrt(3.0 * p1 / (static_cast<double>(M) * M - 1.0));
}

double RealZcInstance::cap2() const {
  return std::sqrt(3.0 * p2 / (static_cast<double>(M) * M - 1.0));
}

NoiseModel NoiseModel::from_snr(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("NoiseModel: rho must be > 0");
  return NoiseModel{1.0 / (2.0 * rho), rho};
}

void validate(const ComplexZcChannel& ch) {
  if (std::abs(ch.h11) == 0.0 || std::abs(ch.h22) == 0.0) {
    throw std::invalid_argument("ComplexZcChannel: direct links must be nonzero");
  }
  if (!valid_order(ch.M) || !valid_order(ch.Mp)) {
    throw std::invalid_argument("ComplexZcChannel: PAM orders must be even and >= 2");
  }
  if (!(ch.P1 > 0.0) || !(ch.P2 > 0.0)) {
    throw std::invalid_argument("ComplexZcChannel: power budgets must be > 0");
  }
}

void validate(const RealZcInstance& inst) {
  if (!(inst.g11 > 0.0) || !(inst.g22 > 0.0) || inst.g21 < 0.0) {
    throw std::invalid_argument("RealZcInstance: need g11 > 0, g22 > 0, g21 >= 0");
  }
  if (!valid_order(inst.M)) {
    throw std::invalid_argument("RealZcInstance: PAM order must be even and >= 2");
  }
  if (!(inst.p1 > 0.0) || !(inst.p2 > 0.0)) {
    throw std::invalid_argument("RealZcInstance: power budgets must be > 0");
  }
}

PamConstellation pam_constellation(unsigned M) {
  if (!valid_order(M)) {
    throw std::invalid_argument("pam_constellation: order must be even and >= 2");
  }
  PamConstellation pam;
  pam.order = M;
  pam.points.reserve(M);
  for (int k = -static_cast<int>(M) + 1; k <= static_cast<int>(M) - 1; k += 2) {
    pam.points.push_back(static_cast<double>(k));
  }
  return pam;
}

std::pair<double, double> allocate_power(double P, unsigned M, unsigned Mp) {
  if (!(P > 0.0)) throw std::invalid_argument("allocate_power: P must be > 0");
  if (!valid_order(M) || !valid_order(Mp)) {
    throw std::invalid_argument("allocate_power: orders must be even and >= 2");
  }
  const double m2 = static_cast<double>(M) * M;
  const double mp2 = static_cast<double>(Mp) * Mp;
  const double denom = m2 + mp2 - 2.0;
  return {(m2 - 1.0) * P / denom, (mp2 - 1.0) * P / denom};
}

std::pair<RealZcInstance, RealZcInstance> decompose(const ComplexZcChannel& ch) {
  validate(ch);
  // std::abs(complex) is hypot-based, so extreme gains do not overflow.
  const double g11 = std::abs(ch.h11);
  const double g21 = std::abs(ch.h21);
  const double g22 = std::abs(ch.h22);
  const auto [p1, p1q] = allocate_power(ch.P1, ch.M, ch.Mp);
  const auto [p2, p2q] = allocate_power(ch.P2, ch.M, ch.Mp);
  RealZcInstance inphase{g11, g21, g22, p1, p2, ch.M};
  RealZcInstance quadrature{g11, g21, g22, p1q, p2q, ch.Mp};
  return {inphase, quadrature};
}

SumConstellation sum_constellation(const RealZcInstance& inst, double w1, double w2) {
  validate(inst);
  if (!(w1 > 0.0) || !(w2 > 0.0)) {
    throw std::invalid_argument("sum_constellation: scalings must be > 0");
  }
  const PamConstellation pam = pam_constellation(inst.M);
  SumConstellation sum;
  sum.rx1.reserve(pam.points.size() * pam.points.size());
  sum.rx2.reserve(pam.points.size());
  for (double s1 : pam.points) {
    for (double s2 : pam.points) {
      sum.rx1.push_back(inst.g11 * w1 * s1 + inst.g21 * w2 * s2);
    }
  }
  for (double s2 : pam.points) {
    sum.rx2.push_back(inst.g22 * w2 * s2);
  }
  return sum;
}

}  // namespace zcnoma
