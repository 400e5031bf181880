// Copyright 2026 The Fogfed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGFED_SOLVER_HPP
#define FOGFED_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "fogfed/assignment.hpp"
#include "fogfed/power.hpp"
#include "fogfed/routing.hpp"
#include "fogfed/topology.hpp"
#include "fogfed/violation.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

struct solution {
  assignment assign;
  std::uint32_t blocked_count = 0;
  power_breakdown power;
  flow_state flow;
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
};

struct solver_options {
  /// Absolute tolerance for power comparisons inside the lexicographic
  /// order; objective values closer than this are ties.
  double power_tolerance_w = 1e-9;
  /// Enumeration cap for the brute-force oracle: (servers + 1)^vms.
  std::uint64_t bruteforce_cap = 10'000'000;
  power_options power;
};

/// Lexicographic comparison of (blocked, power): fewer blocked VMs wins;
/// among equal blocking, lower power wins by more than `tolerance_w`.
bool lex_less(std::uint32_t blocked_a, double power_a, std::uint32_t blocked_b,
              double power_b, double tolerance_w = 1e-9);

/// Strict upper bound on any achievable total power, used to fold the
/// blocking count into a single scalar objective: 10x the sum of every
/// device's maximum power.
double blocking_penalty_weight(const topology& topo);

/// Checks a placement against the capacity model: per-server CPU and RAM
/// sums, server ONU data rates, directional link capacities,
/// routability. Violations are returned as data; empty means feasible.
std::vector<violation> feasible(const topology& topo,
                                const std::vector<vm_request>& vms,
                                const assignment& asg);

/// Exact lexicographic optimum (fewest blocked VMs, then minimum total
/// power) by depth-first branch and bound, followed by a second pass
/// that recovers the tie-break-minimal assignment: lexicographically
/// smallest placement vector by (VM id ascending, server ordinal
/// ascending, Blocked last). Deterministic; the all-Blocked assignment
/// is always feasible so a solution always exists.
solution solve_exact(const topology& topo, const std::vector<vm_request>& vms,
                     const solver_options& opts = {});

/// Oracle: exhaustive enumeration of all (servers + 1)^|vms| placements
/// with the same tie-breaking. Throws too_large_error above the cap.
solution solve_bruteforce(const topology& topo,
                          const std::vector<vm_request>& vms,
                          const solver_options& opts = {});

}  // namespace fogfed

#endif  // FOGFED_SOLVER_HPP
