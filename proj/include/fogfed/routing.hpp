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

#ifndef FOGFED_ROUTING_HPP
#define FOGFED_ROUTING_HPP

#include <vector>

#include "fogfed/assignment.hpp"
#include "fogfed/topology.hpp"
#include "fogfed/violation.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

/// Simple path on the tree: consecutive nodes adjacent, no repeats.
struct route {
  std::vector<node_id> nodes;
};

/// Per-link and per-node traffic after superposing all placed VMs.
/// Traffic on a link is kept per direction: `up` is a->b in the link's
/// normalized orientation, `down` is b->a.
struct flow_state {
  std::vector<double> node_traffic_gbps;  // aggregated traffic per node
  std::vector<double> link_flow_up_gbps;
  std::vector<double> link_flow_down_gbps;
  std::vector<char> node_active;  // networking: traffic > 0; server: has a VM
};

/// Cached tree structure (parents toward each component's OLT root).
class path_index {
 public:
  explicit path_index(const topology& topo);

  bool same_component(node_id a, node_id b) const;
  node_id component_olt(node_id n) const;

  /// Unique simple path a..b. Throws unroutable_error across components.
  route simple_path(node_id a, node_id b) const;

  /// The walk actually taken by VM traffic: up from the source to the
  /// component's OLT and down to the destination. Splitters are passive
  /// and cannot switch, so traffic turns around only at the OLT; the
  /// walk may visit a splitter twice (once per direction).
  std::vector<node_id> traffic_walk(node_id src, node_id dst) const;

 private:
  const topology* topo_;
  std::vector<node_id> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> comp_;
  std::vector<node_id> comp_olt_;
};

/// Unique tree path between two nodes.
route route_between(const topology& topo, node_id src, node_id dst);

/// Flows for all placed VMs. Node traffic counts each VM once per node
/// on its walk; link flows are directional. Throws unroutable_error if a
/// placed VM cannot reach its server.
flow_state accumulate(const topology& topo, const assignment& asg,
                      const std::vector<vm_request>& vms);

/// Data-rate and link-capacity checks: per server, aggregated traffic
/// must fit the attached ONU's rate; per link direction, flow must fit
/// the capacity. Empty result means both hold.
std::vector<violation> check_capacities(const topology& topo,
                                        const flow_state& flow);

}  // namespace fogfed

#endif  // FOGFED_ROUTING_HPP
