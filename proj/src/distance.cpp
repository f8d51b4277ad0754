#include "zcnoma/distance.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace zcnoma {

namespace {

constexpr double kRatioEps = 1e-12;  // relative tolerance for r vs fraction

double pair_distance(double a, double b, int m, int n) {
  return std::fabs(a * static_cast<double>(n) - b * static_cast<double>(m));
}

// Sign of r - num/den with r = b/a given as the products (b*den vs a*num);
// within kRatioEps relative the two are declared equal.
int compare_ratio(double a, double b, const Fraction& f) {
  const double lhs = b * static_cast<double>(f.den());
  const double rhs = a * static_cast<double>(f.num());
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  if (std::fabs(lhs - rhs) <= kRatioEps * scale) return 0;
  return lhs < rhs ? -1 : 1;
}

}  // namespace

const std::vector<Fraction>& cached_extended_farey(unsigned K) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Fraction>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(K);
  if (it == cache.end()) {
    it = cache.emplace(K, extended_farey_sequence(K)).first;
  }
  return it->second;
}

double d1(const RealZcInstance& inst, double w1, double w2, const DifferencePair& pair) {
  if (pair.m == 0 && pair.n == 0) {
    throw std::invalid_argument("d1: (0,0) is not a valid difference pair");
  }
  return pair_distance(inst.g11 * w1, inst.g21 * w2, pair.m, pair.n);
}

DistanceReport min_distance_bruteforce(const RealZcInstance& inst, double w1, double w2) {
  const double a = inst.g11 * w1;
  const double b = inst.g21 * w2;
  const int K = static_cast<int>(inst.M) - 1;
  DistanceReport rep;
  rep.d1_min = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= K; ++m) {
    for (int n = 0; n <= K; ++n) {
      if (m == 0 && n == 0) continue;
      const double d = pair_distance(a, b, m, n);
      if (d < rep.d1_min) {
        rep.d1_min = d;
        rep.d1_argmin = DifferencePair{m, n};
      }
    }
  }
  rep.d2_min = inst.g22 * w2;
  rep.objective = std::min(rep.d1_min, rep.d2_min);
  return rep;
}

std::size_t locate_farey_interval(double g11w1, double g21w2,
                                  const std::vector<Fraction>& seq) {
  std::size_t lo = 0;
  std::size_t hi = seq.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (compare_ratio(g11w1, g21w2, seq[mid]) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

DistanceReport min_distance_farey(const RealZcInstance& inst, double w1, double w2) {
  const double a = inst.g11 * w1;
  const double b = inst.g21 * w2;
  const unsigned K = inst.M - 1;
  const std::vector<Fraction>& seq = cached_extended_farey(K);

  // r = 0 degenerates to the first interval where the lo pair already
  // evaluates to zero.
  const std::size_t lo = locate_farey_interval(a, b, seq);
  const std::size_t hi = lo + 1;

  const DifferencePair lo_pair{static_cast<int>(seq[lo].den()), static_cast<int>(seq[lo].num())};
  const DifferencePair hi_pair{static_cast<int>(seq[hi].den()), static_cast<int>(seq[hi].num())};
  const double d_lo = pair_distance(a, b, lo_pair.m, lo_pair.n);
  const double d_hi = pair_distance(a, b, hi_pair.m, hi_pair.n);

  DistanceReport rep;
  if (d_lo < d_hi || (d_lo == d_hi && (lo_pair.m < hi_pair.m ||
                                       (lo_pair.m == hi_pair.m && lo_pair.n <= hi_pair.n)))) {
    rep.d1_min = d_lo;
    rep.d1_argmin = lo_pair;
  } else {
    rep.d1_min = d_hi;
    rep.d1_argmin = hi_pair;
  }
  rep.d2_min = inst.g22 * w2;
  rep.objective = std::min(rep.d1_min, rep.d2_min);
  return rep;
}

std::optional<std::array<double, 3>> mediant_gap_bound(const FareyInterval& interval,
                                                       double g21, double g22) {
  const double num_sum = static_cast<double>(interval.num_sum());
  if (!(g21 >= g22 * num_sum)) return std::nullopt;

  const double b_lo = static_cast<double>(interval.lo.num());
  const double a_lo = static_cast<double>(interval.lo.den());
  const double b_hi = static_cast<double>(interval.hi.num());
  const double a_hi = static_cast<double>(interval.hi.den());

  const double lower = a_hi / b_hi + g22 / (b_hi * g21);
  const double mid = static_cast<double>(interval.den_sum()) / num_sum;
  const double upper = interval.lo.num() == 0 ? std::numeric_limits<double>::infinity()
                                              : a_lo / b_lo - g22 / (b_lo * g21);
  return std::array<double, 3>{lower, mid, upper};
}

}  // namespace zcnoma
