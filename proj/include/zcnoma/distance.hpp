#pragma once

#include <array>
#include <optional>

#include "zcnoma/channel.hpp"
#include "zcnoma/farey.hpp"

namespace zcnoma {

/// Half-difference of two PAM symbol pairs: s1 - s1~ = 2n, s2~ - s2 = 2m,
/// with |m|, |n| <= M-1. (0,0) is not a valid distance argument.
struct DifferencePair {
  int m = 0;
  int n = 0;

  friend bool operator==(const DifferencePair&, const DifferencePair&) = default;
};

/// Minimum half-distances of the received constellations: d1 over receiver
/// 1's sum constellation, d2 over receiver 2's PAM, objective = min of both.
struct DistanceReport {
  double d1_min = 0.0;
  DifferencePair d1_argmin;
  double d2_min = 0.0;
  double objective = 0.0;
};

/// |g11*w1*n - g21*w2*m|. Throws std::invalid_argument for the zero pair.
double d1(const RealZcInstance& inst, double w1, double w2, const DifferencePair& pair);

/// Exhaustive minimum of d1 over the quadrant {0..M-1}^2 \ {(0,0)} (sign
/// flips cannot shrink the distance, so the quadrant suffices). The argmin
/// tie-break is smallest m, then smallest n. d2_min is g22*w2 (m = 1).
DistanceReport min_distance_bruteforce(const RealZcInstance& inst, double w1, double w2);

/// Same report computed via the Farey interval containing
/// r = g21*w2/(g11*w1) in the extended sequence of order M-1: the global
/// minimum of d1 is attained at one of the interval's two endpoint pairs, so
/// only those are evaluated. Exact hits on a Farey fraction give d1 = 0.
DistanceReport min_distance_farey(const RealZcInstance& inst, double w1, double w2);

/// For an interval whose numerator sum does not exceed g21/g22, the three
/// values a_hi/b_hi + g22/(b_hi*g21) <= den_sum/num_sum <= a_lo/b_lo -
/// g22/(b_lo*g21) in that (nondecreasing) order; the upper bound is +inf when
/// b_lo = 0. Returns nullopt when g21/g22 < num_sum and the bound does not
/// apply.
std::optional<std::array<double, 3>> mediant_gap_bound(const FareyInterval& interval,
                                                       double g21, double g22);

/// Shared cache of extended_farey_sequence(K); the solver and the distance
/// reduction both index it heavily.
const std::vector<Fraction>& cached_extended_farey(unsigned K);

/// Index i such that seq[i] < r <= seq[i+1] for r = g21w2/g11w1, comparing
/// cross products with 1e-12 relative tolerance (a hit within tolerance
/// counts as equality and lands on the interval whose upper endpoint it is).
/// r = 0 maps to the first interval.
std::size_t locate_farey_interval(double g11w1, double g21w2, const std::vector<Fraction>& seq);

}  // namespace zcnoma
