#include "zcnoma/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "zcnoma/kernels.hpp"

namespace zcnoma {

namespace {

constexpr double kAgreementTol = 1e-9;

std::vector<FareyInterval> intervals_of_order(unsigned K) {
  const std::vector<Fraction>& seq = cached_extended_farey(K);
  std::vector<FareyInterval> out;
  out.reserve(seq.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    out.push_back(FareyInterval{seq[i], seq[i + 1]});
  }
  return out;
}

struct ClosedForm {
  double w1 = 0.0;
  double w2 = 0.0;
  std::size_t interval_index = 0;
  std::string branch;
};

// Scenario 1 closed form. Breakpoints are the descending mediant ratios
// T_k = sqrt(p2/p1) * den_sum_k / num_sum_k spanning [sp/M, sp*M]; the two
// cap-saturated families meet at the comparison of the best prefix
// denominator sum against the best suffix numerator sum.
ClosedForm theorem_weak(const RealZcInstance& inst, double p1, double p2,
                        const std::vector<FareyInterval>& ivs) {
  const double c1 = std::sqrt(3.0 * p1 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double c2 = std::sqrt(3.0 * p2 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double sp = std::sqrt(p2 / p1);
  const double x = inst.g11 / inst.g21;
  const double Md = static_cast<double>(inst.M);
  const std::size_t n = ivs.size();

  if (x <= sp / Md) {
    return {c1, Md * inst.g11 / inst.g21 * c1, n - 1, "weak-1"};
  }
  if (x >= sp * Md) {
    return {Md * inst.g21 / inst.g11 * c2, c2, 0, "weak-2"};
  }

  auto threshold = [&](std::size_t k) {
    return sp * static_cast<double>(ivs[k].den_sum()) / static_cast<double>(ivs[k].num_sum());
  };
  std::size_t l1 = 0;
  while (l1 + 2 < n && !(threshold(l1 + 1) < x)) ++l1;

  std::size_t la = 0;
  for (std::size_t k = 1; k <= l1; ++k) {
    if (ivs[k].den_sum() < ivs[la].den_sum()) la = k;
  }
  std::size_t lb = l1 + 1;
  for (std::size_t k = l1 + 2; k < n; ++k) {
    if (ivs[k].num_sum() < ivs[lb].num_sum()) lb = k;
  }

  const double asum_a = static_cast<double>(ivs[la].den_sum());
  const double bsum_a = static_cast<double>(ivs[la].num_sum());
  const double asum_b = static_cast<double>(ivs[lb].den_sum());
  const double bsum_b = static_cast<double>(ivs[lb].num_sum());
  if (x >= sp * asum_a / bsum_b) {
    return {c1, bsum_a * inst.g11 / (asum_a * inst.g21) * c1, la, "weak-3a"};
  }
  return {asum_b * inst.g21 / (bsum_b * inst.g11) * c2, c2, lb, "weak-3b"};
}

// Scenario 3 closed form. Endpoint breakpoints
// t_s = a_s/b_s + g22/(b_s*g21) decrease along the sequence (t = +inf at
// 0/1); every sub-case balances receiver 1's distance against receiver 2's.
ClosedForm theorem_very_strong(const RealZcInstance& inst, double p1, double p2,
                               const std::vector<FareyInterval>& ivs) {
  const double c1 = std::sqrt(3.0 * p1 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double c2 = std::sqrt(3.0 * p2 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const std::size_t n = ivs.size();

  if (inst.g11 / inst.g22 <= std::sqrt(p2 / p1)) {
    return {c1, inst.g11 / inst.g22 * c1, n - 1, "vstrong-1"};
  }

  const std::vector<Fraction>& seq = cached_extended_farey(inst.M - 1);
  auto breakpoint = [&](std::size_t s) {
    const double b = static_cast<double>(seq[s].num());
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    const double a = static_cast<double>(seq[s].den());
    return a / b + inst.g22 / (b * inst.g21);
  };
  const double xp = inst.g11 * std::sqrt(p1) / (inst.g21 * std::sqrt(p2));
  std::size_t s = 0;
  while (s + 1 < n && !(breakpoint(s + 1) < xp)) ++s;

  if (xp >= breakpoint(s) && s >= 1) {
    const double b = static_cast<double>(seq[s].num());
    const double a = static_cast<double>(seq[s].den());
    return {c1, b * inst.g11 / (a * inst.g21 + inst.g22) * c1, s - 1, "vstrong-2a"};
  }
  const double b = static_cast<double>(seq[s + 1].num());
  const double a = static_cast<double>(seq[s + 1].den());
  return {(a * inst.g21 + inst.g22) / (b * inst.g11) * c2, c2, s, "vstrong-2b"};
}

}  // namespace

std::string scenario_name(ScenarioTag tag) {
  switch (tag) {
    case ScenarioTag::Weak:
      return "weak";
    case ScenarioTag::Strong:
      return "strong";
    case ScenarioTag::VeryStrong:
      return "very-strong";
  }
  return "?";
}

Scenario classify(const RealZcInstance& inst) {
  validate(inst);
  Scenario sc;
  sc.ratio = inst.g21 / inst.g22;
  if (sc.ratio <= 1.0) {
    sc.tag = ScenarioTag::Weak;
  } else if (sc.ratio >= 2.0 * inst.M) {
    sc.tag = ScenarioTag::VeryStrong;
  } else {
    sc.tag = ScenarioTag::Strong;
    sc.L = static_cast<unsigned>(std::ceil(sc.ratio));
  }
  return sc;
}

ScalingSolution solve_interval(const RealZcInstance& inst, double p1, double p2,
                               const FareyInterval& interval) {
  validate(inst);
  if (!(p1 > 0.0) || !(p2 > 0.0)) {
    throw std::invalid_argument("solve_interval: powers must be > 0");
  }
  const double c1 = std::sqrt(3.0 * p1 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double c2 = std::sqrt(3.0 * p2 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double bsum = static_cast<double>(interval.num_sum());
  const double asum = static_cast<double>(interval.den_sum());
  const double b_hi = static_cast<double>(interval.hi.num());
  const double a_hi = static_cast<double>(interval.hi.den());

  ScalingSolution sol;
  sol.scenario = classify(inst);
  sol.interval = interval;

  if (inst.g21 == 0.0) {
    // No cross link: receiver 1 sees only user 1. Keep the interval's
    // objective formula but pin the unconstrained w2 at its cap.
    sol.w1 = c1;
    sol.w2 = c2;
    sol.objective = inst.g11 * c1 / asum;
    sol.branch = "1b-degenerate";
    return sol;
  }

  if (inst.g21 <= inst.g22 * bsum) {
    // Case 1: r sits at the interval's mediant, both endpoint pair distances
    // equal; receiver 2's distance is at least that value.
    const double threshold = std::sqrt(p2 / p1) * asum / bsum;
    if (inst.g11 / inst.g21 >= threshold) {
      sol.w1 = asum * inst.g21 / (bsum * inst.g11) * c2;
      sol.w2 = c2;
      sol.objective = inst.g21 / bsum * c2;
      sol.branch = "1a";
    } else {
      sol.w1 = c1;
      sol.w2 = bsum * inst.g11 / (asum * inst.g21) * c1;
      sol.objective = inst.g11 / asum * c1;
      sol.branch = "1b";
    }
  } else {
    // Case 2: the cross link is strong enough that the binding constraint is
    // receiver 2; r moves between the mediant and the upper endpoint until
    // d1 equals d2.
    const double threshold =
        std::sqrt(p2 / p1) * (a_hi / b_hi + inst.g22 / (b_hi * inst.g21));
    if (inst.g11 / inst.g21 >= threshold) {
      sol.w1 = (a_hi * inst.g21 + inst.g22) / (b_hi * inst.g11) * c2;
      sol.w2 = c2;
      sol.objective = inst.g22 * c2;
      sol.branch = "2a";
    } else {
      sol.w1 = c1;
      sol.w2 = b_hi * inst.g11 / (a_hi * inst.g21 + inst.g22) * c1;
      sol.objective = b_hi * inst.g11 * inst.g22 / (a_hi * inst.g21 + inst.g22) * c1;
      sol.branch = "2b";
    }
  }
  return sol;
}

ScalingSolution solve(const RealZcInstance& inst, double p1, double p2) {
  validate(inst);
  if (!(p1 > 0.0) || !(p2 > 0.0)) {
    throw std::invalid_argument("solve: powers must be > 0");
  }
  const double c1 = std::sqrt(3.0 * p1 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double c2 = std::sqrt(3.0 * p2 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const std::vector<FareyInterval> ivs = intervals_of_order(inst.M - 1);

  ScalingSolution sol;
  sol.scenario = classify(inst);

  if (inst.g21 == 0.0) {
    sol.w1 = c1;
    sol.w2 = c2;
    sol.objective = std::min(inst.g11 * c1, inst.g22 * c2);
    sol.interval = ivs.back();
    sol.branch = "no-cross-link";
    return sol;
  }

  sol.trace.reserve(ivs.size());
  double best_obj = -1.0;
  std::vector<ScalingSolution> per_interval;
  per_interval.reserve(ivs.size());
  for (std::size_t k = 0; k < ivs.size(); ++k) {
    per_interval.push_back(solve_interval(inst, p1, p2, ivs[k]));
    sol.trace.push_back(SolveTraceEntry{ivs[k], per_interval.back().objective});
    best_obj = std::max(best_obj, per_interval.back().objective);
  }

  ClosedForm cf;
  if (sol.scenario.tag == ScenarioTag::Weak) {
    cf = theorem_weak(inst, p1, p2, ivs);
  } else if (sol.scenario.tag == ScenarioTag::VeryStrong) {
    cf = theorem_very_strong(inst, p1, p2, ivs);
  } else {
    // Strong: best candidate over the U set (num_sum >= L, case-1 intervals)
    // vs best over the V set (case-2 intervals), compared by independently
    // recomputed objectives.
    const unsigned L = sol.scenario.L;
    std::size_t best_u = ivs.size(), best_v = ivs.size();
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const bool in_u = ivs[k].num_sum() >= L;
      std::size_t& slot = in_u ? best_u : best_v;
      if (slot == ivs.size() || per_interval[k].objective > per_interval[slot].objective) {
        slot = k;
      }
    }
    auto achieved = [&](std::size_t k) {
      return min_distance_bruteforce(inst, per_interval[k].w1, per_interval[k].w2).objective;
    };
    if (best_v == ivs.size() ||
        (best_u != ivs.size() && achieved(best_u) >= achieved(best_v))) {
      cf = {per_interval[best_u].w1, per_interval[best_u].w2, best_u,
            "strong-u/" + per_interval[best_u].branch};
    } else {
      cf = {per_interval[best_v].w1, per_interval[best_v].w2, best_v,
            "strong-v/" + per_interval[best_v].branch};
    }
  }

  sol.w1 = cf.w1;
  sol.w2 = cf.w2;
  sol.interval = ivs[cf.interval_index];
  sol.branch = cf.branch;
  sol.objective = min_distance_bruteforce(inst, sol.w1, sol.w2).objective;
  const double scale = std::max({sol.objective, best_obj, 1e-300});
  sol.closed_form_mismatch = std::fabs(sol.objective - best_obj) > kAgreementTol * scale;
  return sol;
}

ScalingSolution solve(const RealZcInstance& inst) { return solve(inst, inst.p1, inst.p2); }

std::pair<ScalingSolution, ScalingSolution> solve_complex(const ComplexZcChannel& ch) {
  const auto [inphase, quadrature] = decompose(ch);
  return {solve(inphase), solve(quadrature)};
}

ScalingSolution oracle_solve(const RealZcInstance& inst, double p1, double p2,
                             std::size_t grid_points, unsigned threads) {
  validate(inst);
  if (grid_points < 1000) {
    throw std::invalid_argument("oracle_solve: need at least 1000 grid points");
  }
  const double c1 = std::sqrt(3.0 * p1 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const double c2 = std::sqrt(3.0 * p2 / (static_cast<double>(inst.M) * inst.M - 1.0));
  const unsigned Mi = inst.M;

  // Quadrant difference pairs, (0,0) excluded; mirrors min_distance_bruteforce.
  std::vector<double> ms, ns;
  ms.reserve(Mi * Mi - 1);
  ns.reserve(Mi * Mi - 1);
  for (unsigned m = 0; m < Mi; ++m) {
    for (unsigned n = 0; n < Mi; ++n) {
      if (m == 0 && n == 0) continue;
      ms.push_back(static_cast<double>(m));
      ns.push_back(static_cast<double>(n));
    }
  }

  struct Best {
    double obj = -1.0;
    double w1 = 0.0, w2 = 0.0;
    int sweep = 2;
    std::size_t j = 0;

    bool better_than(const Best& o) const {
      if (obj != o.obj) return obj > o.obj;
      if (sweep != o.sweep) return sweep < o.sweep;
      return j < o.j;
    }
  };

  // sweep 0: w1 = cap1, w2 descending from cap2; sweep 1: roles swapped.
  auto scan_range = [&](int sweep, std::size_t j0, std::size_t j1) {
    constexpr std::size_t kBlock = 4096;
    std::vector<double> coef(kBlock), dmin(kBlock);
    Best best;
    for (std::size_t base = j0; base < j1; base += kBlock) {
      const std::size_t cnt = std::min(kBlock, j1 - base);
      for (std::size_t t = 0; t < cnt; ++t) {
        const std::size_t j = base + t;
        const double frac =
            static_cast<double>(grid_points - j) / static_cast<double>(grid_points);
        coef[t] = (sweep == 0) ? inst.g21 * (c2 * frac) : inst.g11 * (c1 * frac);
      }
      if (sweep == 0) {
        kernels::min_abs_pair_diff(inst.g11 * c1, ns.data(), ms.data(), ms.size(),
                                   coef.data(), cnt, dmin.data());
      } else {
        kernels::min_abs_pair_diff(inst.g21 * c2, ms.data(), ns.data(), ns.size(),
                                   coef.data(), cnt, dmin.data());
      }
      for (std::size_t t = 0; t < cnt; ++t) {
        const std::size_t j = base + t;
        const double frac =
            static_cast<double>(grid_points - j) / static_cast<double>(grid_points);
        const double w1 = (sweep == 0) ? c1 : c1 * frac;
        const double w2 = (sweep == 0) ? c2 * frac : c2;
        const double obj = std::min(dmin[t], inst.g22 * w2);
        const Best cand{obj, w1, w2, sweep, j};
        if (cand.better_than(best)) best = cand;
      }
    }
    return best;
  };

  unsigned nthreads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  nthreads = static_cast<unsigned>(
      std::min<std::size_t>(nthreads, std::max<std::size_t>(1, grid_points / 4096)));

  Best best;
  for (int sweep = 0; sweep < 2; ++sweep) {
    std::vector<std::future<Best>> futs;
    const std::size_t chunk = (grid_points + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const std::size_t j0 = std::min<std::size_t>(t * chunk, grid_points);
      const std::size_t j1 = std::min<std::size_t>(j0 + chunk, grid_points);
      if (j0 >= j1) break;
      futs.push_back(std::async(std::launch::async, scan_range, sweep, j0, j1));
    }
    for (auto& f : futs) {
      const Best b = f.get();
      if (b.better_than(best)) best = b;
    }
  }

  ScalingSolution sol;
  sol.scenario = classify(inst);
  sol.w1 = best.w1;
  sol.w2 = best.w2;
  sol.objective = best.obj;
  sol.branch = "grid-oracle";
  const std::vector<Fraction>& seq = cached_extended_farey(inst.M - 1);
  const std::size_t idx = locate_farey_interval(inst.g11 * sol.w1, inst.g21 * sol.w2, seq);
  sol.interval = FareyInterval{seq[idx], seq[idx + 1]};
  return sol;
}

}  // namespace zcnoma
