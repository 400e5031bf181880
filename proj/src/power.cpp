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

#include "fogfed/power.hpp"

#include "fogfed/errors.hpp"

namespace fogfed {

double energy_per_bit(double max_power_w, double idle_power_w,
                      double data_rate_gbps) {
  if (data_rate_gbps <= 0) throw config_error("data rate must be positive");
  if (idle_power_w > max_power_w)
    throw config_error("idle power must not exceed max power");
  return (max_power_w - idle_power_w) / data_rate_gbps;
}

std::pair<double, double> networking_power(const topology& topo,
                                           const flow_state& flow) {
  const onu_params& onu = topo.params().onu;
  const olt_params& olt = topo.params().olt;
  const double e_onu =
      energy_per_bit(onu.max_power_w, onu.idle_power_w, onu.data_rate_gbps);
  const double e_olt =
      energy_per_bit(olt.max_power_w, olt.idle_power_w, olt.data_rate_gbps);

  double cpe_w = 0.0;
  for (node_id m : topo.cpe_onus()) {
    const double traffic = flow.node_traffic_gbps[m];
    cpe_w += e_onu * traffic;
    if (flow.node_active[m]) cpe_w += onu.idle_power_w;
  }
  double olt_w = 0.0;
  for (node_id m : topo.olts()) {
    const double traffic = flow.node_traffic_gbps[m];
    // The carried-traffic variable equals the gathered traffic whenever
    // the OLT is active and zero otherwise, so it can be used directly.
    olt_w += e_olt * traffic + olt.idle_power_w * (traffic / olt.data_rate_gbps);
  }
  return {cpe_w, olt_w};
}

std::pair<double, double> processing_power(const topology& topo,
                                           const assignment& asg,
                                           const std::vector<vm_request>& vms,
                                           const flow_state& flow,
                                           const power_options& opts) {
  const server_params& sp = topo.params().server;
  const onu_params& onu = topo.params().onu;

  std::vector<double> cpu_load(topo.nodes().size(), 0.0);
  std::vector<char> used(topo.nodes().size(), 0);
  for (const vm_request& vm : vms) {
    auto it = asg.placement.find(vm.id);
    if (it == asg.placement.end() || !it->second) continue;
    cpu_load[*it->second] += vm.cpu_mips;
    used[*it->second] = 1;
  }

  double servers_w = 0.0;
  double sonu_w = 0.0;
  for (node_id d : topo.servers()) {
    if (!used[d]) continue;
    servers_w += sp.idle_power_w +
                 sp.proportional_power_w() * (cpu_load[d] / sp.cpu_capacity_mips);
    const double delivered = flow.node_traffic_gbps[d];
    if (opts.onu_mode == server_onu_mode::proportional)
      sonu_w += onu.max_power_w * (delivered / onu.data_rate_gbps);
    else if (delivered > 0)
      sonu_w += onu.max_power_w;
  }
  return {servers_w, sonu_w};
}

power_breakdown total_power(const topology& topo, const assignment& asg,
                            const std::vector<vm_request>& vms,
                            const power_options& opts) {
  const flow_state flow = accumulate(topo, asg, vms);
  power_breakdown pb;
  std::tie(pb.onu_cpe_w, pb.olt_w) = networking_power(topo, flow);
  std::tie(pb.servers_w, pb.server_onus_w) =
      processing_power(topo, asg, vms, flow, opts);
  pb.net_total_w = pb.onu_cpe_w + pb.olt_w;
  pb.proc_total_w = pb.servers_w + pb.server_onus_w;
  pb.total_w = pb.net_total_w + pb.proc_total_w;
  return pb;
}

}  // namespace fogfed
