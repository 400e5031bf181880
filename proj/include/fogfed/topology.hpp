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

#ifndef FOGFED_TOPOLOGY_HPP
#define FOGFED_TOPOLOGY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fogfed/violation.hpp"

namespace fogfed {

using node_id = std::uint32_t;

/// Optical network unit. Customer-premises ONUs have a proportional plus
/// idle power profile; the same hardware attached to a server works as a
/// transceiver.
struct onu_params {
  double max_power_w = 2.5;
  double idle_power_w = 1.5;
  double data_rate_gbps = 10.0;
};

/// Optical line terminal at the central office. The idle power is shared
/// among tenants, so only the traffic-proportional share of it is billed
/// to a workload.
struct olt_params {
  double max_power_w = 1940.0;
  double idle_power_w = 1746.0;
  double data_rate_gbps = 8600.0;
};

struct server_params {
  double max_power_w = 457.0;
  double idle_power_w = 301.0;
  double cpu_capacity_mips = 280000.0;
  double ram_capacity_mb = 16384.0;  // 16 GB at 1024 MB/GB

  double proportional_power_w() const { return max_power_w - idle_power_w; }
};

/// One parameter bundle covers every device of a kind; splitters are
/// passive and carry none.
struct device_params {
  onu_params onu;
  olt_params olt;
  server_params server;
  double link_capacity_gbps = 1280.0;  // 32 wavelengths x 40 Gbps
};

enum class node_kind { cpe_onu, server_onu, splitter, olt, server };

enum class fog_mode { federated, non_federated };

struct node {
  node_id id = 0;
  node_kind kind = node_kind::splitter;
  std::optional<std::uint32_t> cell;  // absent only for a shared OLT
  std::string name;
};

struct link {
  node_id a = 0;  // normalized a < b
  node_id b = 0;
  double capacity_gbps = 0.0;
};

/// Immutable PON fog network graph. Federated mode is a single tree
/// rooted at one shared OLT; non-federated mode is a forest with a
/// dedicated OLT per cell.
class topology {
 public:
  topology(fog_mode mode, device_params params, std::vector<node> nodes,
           std::vector<link> links);

  fog_mode mode() const { return mode_; }
  const device_params& params() const { return params_; }
  std::uint32_t cell_count() const { return cell_count_; }

  const std::vector<node>& nodes() const { return nodes_; }
  const std::vector<link>& links() const { return links_; }

  /// Sorted adjacency of `n`. Throws not_found_error for unknown ids.
  const std::vector<node_id>& neighbors(node_id n) const;

  node_id find(std::string_view name) const;  // throws not_found_error
  const node& at(node_id n) const;            // throws not_found_error
  bool contains(node_id n) const { return n < nodes_.size(); }

  const std::vector<node_id>& servers() const { return servers_; }
  const std::vector<node_id>& cpe_onus() const { return cpe_onus_; }
  const std::vector<node_id>& olts() const { return olts_; }
  const std::vector<node_id>& cpe_onus_of_cell(std::uint32_t cell) const;
  const std::vector<node_id>& servers_of_cell(std::uint32_t cell) const;

  /// The transceiver ONU wired to `server` (degree-1 attachment).
  node_id server_onu_of(node_id server) const;
  node_id server_of_onu(node_id onu) const;

  /// Index into links() for the unordered pair {m, n}.
  std::size_t link_index(node_id m, node_id n) const;

 private:
  fog_mode mode_;
  device_params params_;
  std::uint32_t cell_count_ = 0;
  std::vector<node> nodes_;
  std::vector<link> links_;
  std::vector<std::vector<node_id>> adj_;
  std::unordered_map<std::string, node_id> by_name_;
  std::map<std::pair<node_id, node_id>, std::size_t> link_by_pair_;
  std::vector<node_id> servers_, cpe_onus_, olts_;
  std::vector<std::vector<node_id>> cell_cpe_onus_, cell_servers_;
  std::unordered_map<node_id, node_id> onu_of_server_, server_of_onu_;
};

/// Single shared OLT; per cell one splitter under it carrying the cell's
/// CPE ONUs and (server ONU, server) pairs. All counts must be >= 1.
topology build_federated(std::uint32_t cells, std::uint32_t servers_per_cell,
                         std::uint32_t cpe_onus_per_cell,
                         const device_params& params = {});

/// Same per-cell subtree but with a dedicated OLT per cell and no links
/// between cells.
topology build_non_federated(std::uint32_t cells,
                             std::uint32_t servers_per_cell,
                             std::uint32_t cpe_onus_per_cell,
                             const device_params& params = {});

const std::vector<node_id>& neighbors(const topology& topo, node_id n);

/// Structural checks: tree/forest shape, one OLT per component, server
/// attachment, positive capacities. Empty result means valid.
std::vector<violation> validate(const topology& topo);

std::string to_string(node_kind kind);
std::string to_string(fog_mode mode);

}  // namespace fogfed

#endif  // FOGFED_TOPOLOGY_HPP
