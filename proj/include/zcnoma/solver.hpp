#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zcnoma/channel.hpp"
#include "zcnoma/distance.hpp"
#include "zcnoma/farey.hpp"

namespace zcnoma {

enum class ScenarioTag { Weak, Strong, VeryStrong };

/// Cross-link regime by ratio = g21/g22: Weak on (0,1], Strong on (1,2M)
/// with L the unique integer satisfying L-1 < ratio <= L, VeryStrong on
/// [2M, inf).
struct Scenario {
  ScenarioTag tag = ScenarioTag::Weak;
  double ratio = 0.0;
  unsigned L = 0;  // set for Strong only
};

std::string scenario_name(ScenarioTag tag);

struct SolveTraceEntry {
  FareyInterval interval;
  double objective = 0.0;
};

/// Optimal scaling pair and bookkeeping. branch records which closed-form
/// case produced it; trace holds the per-interval candidate objectives;
/// closed_form_mismatch is raised when the closed form fails to match the
/// best per-interval candidate (never expected, reported rather than fixed).
struct ScalingSolution {
  double w1 = 0.0;
  double w2 = 0.0;
  double objective = 0.0;
  Scenario scenario;
  FareyInterval interval;
  std::string branch;
  std::vector<SolveTraceEntry> trace;
  bool closed_form_mismatch = false;
};

Scenario classify(const RealZcInstance& inst);

/// Closed-form optimum when r = g21*w2/(g11*w1) is confined to one Farey
/// interval of order M-1. Four branches: the cross/direct ratio picks the
/// mediant-anchored (case 1) or distance-balanced (case 2) family, then the
/// direct-link strength picks which transmitter saturates its cap.
ScalingSolution solve_interval(const RealZcInstance& inst, double p1, double p2,
                               const FareyInterval& interval);

/// Global closed-form optimum: dispatches on classify() to the weak /
/// strong / very-strong scenario forms. g21 == 0 degenerates to both
/// transmitters at their caps. Throws on a degenerate direct link.
ScalingSolution solve(const RealZcInstance& inst, double p1, double p2);
ScalingSolution solve(const RealZcInstance& inst);  // powers from the instance

/// Decompose a complex channel and solve the in-phase and quadrature
/// components independently.
std::pair<ScalingSolution, ScalingSolution> solve_complex(const ComplexZcChannel& ch);

/// Grid-search verification oracle. At the optimum at least one transmitter
/// runs at its cap, so two 1-D sweeps suffice: w2 over (0, cap2] with
/// w1 = cap1, and w1 over (0, cap1] with w2 = cap2, grid_points each,
/// scoring min_distance_bruteforce. Deterministic for any thread count.
/// Requires grid_points >= 1000.
ScalingSolution oracle_solve(const RealZcInstance& inst, double p1, double p2,
                             std::size_t grid_points, unsigned threads = 0);

}  // namespace zcnoma
