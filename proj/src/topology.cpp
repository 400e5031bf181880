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

#include "fogfed/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "fogfed/errors.hpp"

namespace fogfed {

std::string to_string(node_kind kind) {
  switch (kind) {
    case node_kind::cpe_onu: return "cpe_onu";
    case node_kind::server_onu: return "server_onu";
    case node_kind::splitter: return "splitter";
    case node_kind::olt: return "olt";
    case node_kind::server: return "server";
  }
  return "?";
}

std::string to_string(fog_mode mode) {
  return mode == fog_mode::federated ? "federated" : "non-federated";
}

std::string to_string(violation_kind kind) {
  switch (kind) {
    case violation_kind::cycle: return "cycle";
    case violation_kind::orphan_server: return "orphan_server";
    case violation_kind::bad_capacity: return "bad_capacity";
    case violation_kind::missing_olt: return "missing_olt";
    case violation_kind::asymmetric_adjacency: return "asymmetric_adjacency";
    case violation_kind::cpu_capacity: return "cpu_capacity";
    case violation_kind::ram_capacity: return "ram_capacity";
    case violation_kind::onu_rate: return "onu_rate";
    case violation_kind::link_capacity: return "link_capacity";
    case violation_kind::unroutable: return "unroutable";
    case violation_kind::invalid_placement: return "invalid_placement";
  }
  return "?";
}

std::string to_string(const violation& v) {
  std::ostringstream os;
  os << to_string(v.kind) << " at " << v.where;
  if (v.excess > 0) os << " (excess " << v.excess << ")";
  if (!v.detail.empty()) os << ": " << v.detail;
  return os.str();
}

topology::topology(fog_mode mode, device_params params,
                   std::vector<node> nodes, std::vector<link> links)
    : mode_(mode),
      params_(params),
      nodes_(std::move(nodes)),
      links_(std::move(links)) {
  adj_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const node& n = nodes_[i];
    if (n.id != i) throw config_error("node ids must be dense and ordered");
    if (!by_name_.emplace(n.name, n.id).second)
      throw config_error("duplicate node name: " + n.name);
    if (n.cell) cell_count_ = std::max(cell_count_, *n.cell + 1);
    switch (n.kind) {
      case node_kind::server: servers_.push_back(n.id); break;
      case node_kind::cpe_onu: cpe_onus_.push_back(n.id); break;
      case node_kind::olt: olts_.push_back(n.id); break;
      default: break;
    }
  }
  cell_cpe_onus_.resize(cell_count_);
  cell_servers_.resize(cell_count_);
  for (const node& n : nodes_) {
    if (!n.cell) continue;
    if (n.kind == node_kind::cpe_onu) cell_cpe_onus_[*n.cell].push_back(n.id);
    if (n.kind == node_kind::server) cell_servers_[*n.cell].push_back(n.id);
  }
  for (std::size_t li = 0; li < links_.size(); ++li) {
    link& l = links_[li];
    if (l.a == l.b) throw config_error("self-link at node " + std::to_string(l.a));
    if (l.a > l.b) std::swap(l.a, l.b);
    if (l.a >= nodes_.size() || l.b >= nodes_.size())
      throw config_error("link endpoint out of range");
    link_by_pair_.emplace(std::make_pair(l.a, l.b), li);
    adj_[l.a].push_back(l.b);
    adj_[l.b].push_back(l.a);
  }
  for (auto& lst : adj_) std::sort(lst.begin(), lst.end());
  for (node_id s : servers_) {
    if (adj_[s].size() == 1 && nodes_[adj_[s][0]].kind == node_kind::server_onu) {
      onu_of_server_[s] = adj_[s][0];
      server_of_onu_[adj_[s][0]] = s;
    }
  }
}

const std::vector<node_id>& topology::neighbors(node_id n) const {
  if (n >= nodes_.size())
    throw not_found_error("unknown node id " + std::to_string(n));
  return adj_[n];
}

node_id topology::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end())
    throw not_found_error("unknown node name: " + std::string(name));
  return it->second;
}

const node& topology::at(node_id n) const {
  if (n >= nodes_.size())
    throw not_found_error("unknown node id " + std::to_string(n));
  return nodes_[n];
}

const std::vector<node_id>& topology::cpe_onus_of_cell(std::uint32_t cell) const {
  if (cell >= cell_count_)
    throw not_found_error("unknown cell " + std::to_string(cell));
  return cell_cpe_onus_[cell];
}

const std::vector<node_id>& topology::servers_of_cell(std::uint32_t cell) const {
  if (cell >= cell_count_)
    throw not_found_error("unknown cell " + std::to_string(cell));
  return cell_servers_[cell];
}

node_id topology::server_onu_of(node_id server) const {
  auto it = onu_of_server_.find(server);
  if (it == onu_of_server_.end())
    throw not_found_error("no attached ONU for node " + std::to_string(server));
  return it->second;
}

node_id topology::server_of_onu(node_id onu) const {
  auto it = server_of_onu_.find(onu);
  if (it == server_of_onu_.end())
    throw not_found_error("no server behind ONU " + std::to_string(onu));
  return it->second;
}

std::size_t topology::link_index(node_id m, node_id n) const {
  if (m > n) std::swap(m, n);
  auto it = link_by_pair_.find(std::make_pair(m, n));
  if (it == link_by_pair_.end())
    throw not_found_error("no link between " + std::to_string(m) + " and " +
                          std::to_string(n));
  return it->second;
}

const std::vector<node_id>& neighbors(const topology& topo, node_id n) {
  return topo.neighbors(n);
}

namespace {

struct builder {
  std::vector<node> nodes;
  std::vector<link> links;

  node_id add(node_kind kind, std::optional<std::uint32_t> cell,
              std::string name) {
    node_id id = static_cast<node_id>(nodes.size());
    nodes.push_back(node{id, kind, cell, std::move(name)});
    return id;
  }
  void connect(node_id a, node_id b, double cap) {
    links.push_back(link{a, b, cap});
  }
};

void check_counts(std::uint32_t cells, std::uint32_t servers_per_cell,
                  std::uint32_t cpe_onus_per_cell) {
  if (cells < 1) throw config_error("cells must be >= 1");
  if (servers_per_cell < 1) throw config_error("servers_per_cell must be >= 1");
  if (cpe_onus_per_cell < 1)
    throw config_error("cpe_onus_per_cell must be >= 1");
}

void build_cell(builder& b, std::uint32_t c, node_id olt,
                std::uint32_t servers_per_cell, std::uint32_t cpe_onus_per_cell,
                const device_params& p) {
  const std::string prefix = "cell" + std::to_string(c) + "/";
  node_id split = b.add(node_kind::splitter, c, prefix + "split");
  b.connect(olt, split, p.link_capacity_gbps);
  for (std::uint32_t u = 0; u < cpe_onus_per_cell; ++u) {
    node_id cpe = b.add(node_kind::cpe_onu, c, prefix + "cpe" + std::to_string(u));
    b.connect(split, cpe, p.link_capacity_gbps);
  }
  for (std::uint32_t s = 0; s < servers_per_cell; ++s) {
    node_id sonu =
        b.add(node_kind::server_onu, c, prefix + "sonu" + std::to_string(s));
    node_id srv = b.add(node_kind::server, c, prefix + "srv" + std::to_string(s));
    b.connect(split, sonu, p.link_capacity_gbps);
    b.connect(sonu, srv, p.link_capacity_gbps);
  }
}

}  // namespace

topology build_federated(std::uint32_t cells, std::uint32_t servers_per_cell,
                         std::uint32_t cpe_onus_per_cell,
                         const device_params& params) {
  check_counts(cells, servers_per_cell, cpe_onus_per_cell);
  builder b;
  node_id olt = b.add(node_kind::olt, std::nullopt, "olt");
  for (std::uint32_t c = 0; c < cells; ++c)
    build_cell(b, c, olt, servers_per_cell, cpe_onus_per_cell, params);
  return topology(fog_mode::federated, params, std::move(b.nodes),
                  std::move(b.links));
}

topology build_non_federated(std::uint32_t cells,
                             std::uint32_t servers_per_cell,
                             std::uint32_t cpe_onus_per_cell,
                             const device_params& params) {
  check_counts(cells, servers_per_cell, cpe_onus_per_cell);
  builder b;
  for (std::uint32_t c = 0; c < cells; ++c) {
    node_id olt =
        b.add(node_kind::olt, c, "cell" + std::to_string(c) + "/olt");
    build_cell(b, c, olt, servers_per_cell, cpe_onus_per_cell, params);
  }
  return topology(fog_mode::non_federated, params, std::move(b.nodes),
                  std::move(b.links));
}

std::vector<violation> validate(const topology& topo) {
  std::vector<violation> out;
  const auto& nodes = topo.nodes();
  const auto& links = topo.links();

  std::set<std::pair<node_id, node_id>> seen;
  for (const link& l : links) {
    if (l.capacity_gbps <= 0)
      out.push_back({violation_kind::bad_capacity,
                     nodes[l.a].name + "--" + nodes[l.b].name, 0,
                     "link capacity must be positive"});
    if (!seen.emplace(l.a, l.b).second)
      out.push_back({violation_kind::cycle,
                     nodes[l.a].name + "--" + nodes[l.b].name, 0,
                     "duplicate link"});
  }

  // Components via BFS; a connected component with E >= V edges has a cycle.
  std::vector<int> comp(nodes.size(), -1);
  int comps = 0;
  for (node_id start = 0; start < nodes.size(); ++start) {
    if (comp[start] != -1) continue;
    int c = comps++;
    std::size_t comp_nodes = 0, comp_olts = 0;
    std::deque<node_id> q{start};
    comp[start] = c;
    while (!q.empty()) {
      node_id m = q.front();
      q.pop_front();
      ++comp_nodes;
      if (nodes[m].kind == node_kind::olt) ++comp_olts;
      for (node_id n : topo.neighbors(m)) {
        if (comp[n] == -1) {
          comp[n] = c;
          q.push_back(n);
        }
      }
    }
    std::size_t comp_links = 0;
    for (const link& l : links)
      if (comp[l.a] == c) ++comp_links;
    if (comp_links + 1 != comp_nodes)
      out.push_back({violation_kind::cycle, nodes[start].name, 0,
                     "component is not a tree"});
    if (comp_olts != 1)
      out.push_back({violation_kind::missing_olt, nodes[start].name, 0,
                     "component has " + std::to_string(comp_olts) + " OLTs"});
  }

  std::uint32_t want_comps =
      topo.mode() == fog_mode::federated ? 1u : topo.cell_count();
  if (static_cast<std::uint32_t>(comps) != want_comps)
    out.push_back({violation_kind::cycle, "*", 0,
                   "expected " + std::to_string(want_comps) +
                       " components, found " + std::to_string(comps)});

  for (node_id s : topo.servers()) {
    const auto& nb = topo.neighbors(s);
    if (nb.size() != 1 || nodes[nb[0]].kind != node_kind::server_onu)
      out.push_back({violation_kind::orphan_server, nodes[s].name, 0,
                     "server must hang off exactly one server ONU"});
  }
  return out;
}

}  // namespace fogfed
