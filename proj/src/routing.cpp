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

#include "fogfed/routing.hpp"

#include <algorithm>
#include <deque>

#include "fogfed/errors.hpp"

namespace fogfed {

path_index::path_index(const topology& topo) : topo_(&topo) {
  const std::size_t n = topo.nodes().size();
  parent_.assign(n, 0);
  depth_.assign(n, 0);
  comp_.assign(n, 0);
  for (node_id root : topo.olts()) {
    const std::uint32_t c = static_cast<std::uint32_t>(comp_olt_.size());
    comp_olt_.push_back(root);
    parent_[root] = root;
    depth_[root] = 0;
    comp_[root] = c;
    std::deque<node_id> q{root};
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    while (!q.empty()) {
      node_id m = q.front();
      q.pop_front();
      for (node_id nb : topo.neighbors(m)) {
        if (seen[nb]) continue;
        seen[nb] = 1;
        parent_[nb] = m;
        depth_[nb] = depth_[m] + 1;
        comp_[nb] = c;
        q.push_back(nb);
      }
    }
  }
}

bool path_index::same_component(node_id a, node_id b) const {
  topo_->at(a);
  topo_->at(b);
  return comp_[a] == comp_[b];
}

node_id path_index::component_olt(node_id n) const {
  topo_->at(n);
  return comp_olt_[comp_[n]];
}

route path_index::simple_path(node_id a, node_id b) const {
  if (!same_component(a, b))
    throw unroutable_error("no path between " + topo_->at(a).name + " and " +
                           topo_->at(b).name);
  std::vector<node_id> up, down;
  node_id x = a, y = b;
  while (depth_[x] > depth_[y]) {
    up.push_back(x);
    x = parent_[x];
  }
  while (depth_[y] > depth_[x]) {
    down.push_back(y);
    y = parent_[y];
  }
  while (x != y) {
    up.push_back(x);
    down.push_back(y);
    x = parent_[x];
    y = parent_[y];
  }
  up.push_back(x);
  up.insert(up.end(), down.rbegin(), down.rend());
  return route{std::move(up)};
}

std::vector<node_id> path_index::traffic_walk(node_id src, node_id dst) const {
  const node_id olt = component_olt(src);
  if (!same_component(src, dst))
    throw unroutable_error("no path between " + topo_->at(src).name + " and " +
                           topo_->at(dst).name);
  route up = simple_path(src, olt);
  route down = simple_path(olt, dst);
  std::vector<node_id> walk = std::move(up.nodes);
  walk.insert(walk.end(), down.nodes.begin() + 1, down.nodes.end());
  return walk;
}

route route_between(const topology& topo, node_id src, node_id dst) {
  return path_index(topo).simple_path(src, dst);
}

flow_state accumulate(const topology& topo, const assignment& asg,
                      const std::vector<vm_request>& vms) {
  const std::size_t n_nodes = topo.nodes().size();
  const std::size_t n_links = topo.links().size();
  flow_state fs;
  fs.node_traffic_gbps.assign(n_nodes, 0.0);
  fs.link_flow_up_gbps.assign(n_links, 0.0);
  fs.link_flow_down_gbps.assign(n_links, 0.0);
  fs.node_active.assign(n_nodes, 0);

  path_index paths(topo);
  std::vector<node_id> touched;
  for (const vm_request& vm : vms) {
    auto it = asg.placement.find(vm.id);
    if (it == asg.placement.end() || !it->second) continue;
    const node_id src = topo.find(vm.source);
    const node_id dst = *it->second;
    topo.at(dst);
    const std::vector<node_id> walk = paths.traffic_walk(src, dst);

    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      const node_id from = walk[i], to = walk[i + 1];
      const std::size_t li = topo.link_index(from, to);
      if (from == topo.links()[li].a)
        fs.link_flow_up_gbps[li] += vm.traffic_gbps;
      else
        fs.link_flow_down_gbps[li] += vm.traffic_gbps;
    }
    // A node visited twice (splitter on a hairpin) still gathers the
    // VM's traffic once.
    touched.assign(walk.begin(), walk.end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (node_id m : touched) fs.node_traffic_gbps[m] += vm.traffic_gbps;
  }

  for (node_id m = 0; m < n_nodes; ++m) {
    if (topo.nodes()[m].kind == node_kind::server) continue;
    fs.node_active[m] = fs.node_traffic_gbps[m] > 0 ? 1 : 0;
  }
  for (const auto& [vm, srv] : asg.placement)
    if (srv) fs.node_active[*srv] = 1;
  return fs;
}

std::vector<violation> check_capacities(const topology& topo,
                                        const flow_state& flow) {
  std::vector<violation> out;
  const auto& nodes = topo.nodes();
  const double onu_rate = topo.params().onu.data_rate_gbps;

  for (node_id srv : topo.servers()) {
    const double delivered = flow.node_traffic_gbps[srv];
    if (delivered > onu_rate) {
      const node_id onu = topo.server_onu_of(srv);
      out.push_back({violation_kind::onu_rate, nodes[onu].name,
                     delivered - onu_rate,
                     "server traffic exceeds the attached ONU data rate"});
    }
  }
  for (std::size_t li = 0; li < topo.links().size(); ++li) {
    const link& l = topo.links()[li];
    const std::string name_up = nodes[l.a].name + "->" + nodes[l.b].name;
    const std::string name_down = nodes[l.b].name + "->" + nodes[l.a].name;
    if (flow.link_flow_up_gbps[li] > l.capacity_gbps)
      out.push_back({violation_kind::link_capacity, name_up,
                     flow.link_flow_up_gbps[li] - l.capacity_gbps, ""});
    if (flow.link_flow_down_gbps[li] > l.capacity_gbps)
      out.push_back({violation_kind::link_capacity, name_down,
                     flow.link_flow_down_gbps[li] - l.capacity_gbps, ""});
  }
  return out;
}

}  // namespace fogfed
