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

#ifndef FOGFED_POWER_HPP
#define FOGFED_POWER_HPP

#include <utility>
#include <vector>

#include "fogfed/assignment.hpp"
#include "fogfed/routing.hpp"
#include "fogfed/topology.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

/// The four power terms and their totals. total_w is net_total_w +
/// proc_total_w by construction.
struct power_breakdown {
  double onu_cpe_w = 0.0;      // CPE ONUs: per-bit energy plus idle when active
  double olt_w = 0.0;          // OLTs: per-bit energy plus traffic share of idle
  double servers_w = 0.0;      // servers: idle when active plus cpu-proportional
  double server_onus_w = 0.0;  // transceiver ONUs at the servers
  double net_total_w = 0.0;
  double proc_total_w = 0.0;
  double total_w = 0.0;
};

/// Power profile of the ONUs attached to servers: scale max power by
/// delivered traffic over the data rate, or draw full max power whenever
/// any traffic is delivered.
enum class server_onu_mode { proportional, on_off };

struct power_options {
  server_onu_mode onu_mode = server_onu_mode::proportional;
};

/// Incremental power per Gbps: (max - idle) / rate.
double energy_per_bit(double max_power_w, double idle_power_w,
                      double data_rate_gbps);

/// Networking-layer power: (CPE ONU watts, OLT watts). Active CPE ONUs
/// draw full idle power; OLTs draw only the traffic-proportional share
/// of theirs.
std::pair<double, double> networking_power(const topology& topo,
                                           const flow_state& flow);

/// Processing-layer power: (server watts, server ONU watts).
std::pair<double, double> processing_power(const topology& topo,
                                           const assignment& asg,
                                           const std::vector<vm_request>& vms,
                                           const flow_state& flow,
                                           const power_options& opts = {});

/// Full evaluation of a placement: routes flows, then sums the four
/// terms. Pure function of its inputs.
power_breakdown total_power(const topology& topo, const assignment& asg,
                            const std::vector<vm_request>& vms,
                            const power_options& opts = {});

}  // namespace fogfed

#endif  // FOGFED_POWER_HPP
