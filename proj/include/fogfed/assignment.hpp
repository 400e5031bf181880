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

#ifndef FOGFED_ASSIGNMENT_HPP
#define FOGFED_ASSIGNMENT_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "fogfed/topology.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

/// Placement decision: each VM maps to a server node or to Blocked
/// (nullopt). Blocked VMs consume no resources anywhere.
struct assignment {
  std::map<vm_id, std::optional<node_id>> placement;

  bool is_blocked(vm_id vm) const {
    auto it = placement.find(vm);
    return it == placement.end() || !it->second.has_value();
  }

  std::uint32_t blocked_count() const {
    std::uint32_t n = 0;
    for (const auto& [vm, srv] : placement)
      if (!srv) ++n;
    return n;
  }

  std::uint32_t placed_count() const {
    return static_cast<std::uint32_t>(placement.size()) - blocked_count();
  }
};

}  // namespace fogfed

#endif  // FOGFED_ASSIGNMENT_HPP
