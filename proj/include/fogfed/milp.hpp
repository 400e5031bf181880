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

#ifndef FOGFED_MILP_HPP
#define FOGFED_MILP_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fogfed/power.hpp"
#include "fogfed/solver.hpp"
#include "fogfed/topology.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

struct milp_options {
  power_options power;
  /// Extra comment lines for the file header (provenance echo).
  std::vector<std::string> comments;
};

/// Writes the placement model as LP-format text. Variable naming is
/// stable across runs:
///   p_s{vm}_d{srv}        placement binaries (srv = server ordinal)
///   b_d{srv}              server activation binaries
///   b_n{node}             activation binaries for CPE ONUs and OLTs
///   l_n{node}             gathered traffic at CPE ONUs, OLTs, servers
///   d_n{node}             OLT carried-traffic linearization variables
///   f_s{vm}_d{srv}_{m}_{n} per-placement directed flow on link (m,n)
/// The objective folds the blocking count in via blocking_penalty_weight.
/// Pass `annotate` to embed a known optimum as comments.
void export_milp(const topology& topo, const std::vector<vm_request>& vms,
                 const std::filesystem::path& path,
                 const milp_options& opts = {},
                 const solution* annotate = nullptr);

/// Values for every exported variable at a given solution, suitable for
/// checking the emitted model row by row.
std::map<std::string, double> milp_witness(const topology& topo,
                                           const std::vector<vm_request>& vms,
                                           const solution& sol,
                                           const milp_options& opts = {});

/// Closed-form number of constraint rows export_milp emits.
std::size_t milp_constraint_count(const topology& topo, std::size_t vm_count);

}  // namespace fogfed

#endif  // FOGFED_MILP_HPP
