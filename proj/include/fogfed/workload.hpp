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

#ifndef FOGFED_WORKLOAD_HPP
#define FOGFED_WORKLOAD_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fogfed/topology.hpp"

namespace fogfed {

using vm_id = std::uint32_t;

/// One virtual machine demand, homed at a CPE ONU.
struct vm_request {
  vm_id id = 0;
  std::uint32_t home_cell = 0;
  std::string source;  // CPE ONU node name, e.g. "cell0/cpe0"
  double cpu_mips = 0.0;
  double ram_mb = 0.0;
  double traffic_gbps = 0.0;
};

/// How VMs are mapped to cells: deterministic rotation beginning at the
/// hot cell, or a seeded uniform draw per VM.
enum class cell_assignment_policy { round_robin, uniform };

struct workload_spec {
  std::uint32_t vm_count = 10;
  std::uint32_t hot_cell = 0;
  std::array<double, 2> hot_cpu_range_mips{160000.0, 280000.0};
  std::array<double, 2> cold_cpu_range_mips{10000.0, 56000.0};
  std::array<double, 2> ram_range_mb{100.0, 500.0};
  std::array<double, 2> traffic_range_gbps{1.0, 5.0};
  std::uint64_t seed = 1;
  cell_assignment_policy cell_policy = cell_assignment_policy::round_robin;
};

/// Generator identifier recorded in every output so runs can be
/// reproduced across machines: mt19937_64 stream, uniform doubles from
/// the top 53 bits, integers by modulo.
inline constexpr std::string_view rng_algorithm_id = "mt19937_64/u53";

/// Deterministic workload for `spec` on `topo`. One VM per iteration
/// draws (cell if uniform policy,) cpu, ram, traffic in that order.
/// Hot-cell VMs take cpu from the hot range, all others from the cold
/// range.
std::vector<vm_request> generate(const workload_spec& spec,
                                 const topology& topo);

/// Reads a workload file (JSON schema documented in the README). An
/// empty file yields an empty list.
std::vector<vm_request> load_workload(const std::filesystem::path& path);

void save_workload(const std::filesystem::path& path,
                   const std::vector<vm_request>& vms);

std::string to_string(cell_assignment_policy policy);
cell_assignment_policy cell_policy_from_string(std::string_view s);

}  // namespace fogfed

#endif  // FOGFED_WORKLOAD_HPP
