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

#ifndef FOGFED_VIOLATION_HPP
#define FOGFED_VIOLATION_HPP

#include <string>
#include <vector>

namespace fogfed {

enum class violation_kind {
  // structural (topology checks)
  cycle,
  orphan_server,
  bad_capacity,
  missing_olt,
  asymmetric_adjacency,
  // placement / flow checks
  cpu_capacity,
  ram_capacity,
  onu_rate,
  link_capacity,
  unroutable,
  invalid_placement,
};

/// One constraint breach. Violations are data, not errors: callers use
/// them as feasibility predicates.
struct violation {
  violation_kind kind;
  std::string where;   // node or link name
  double excess = 0.0; // amount over the limit, when meaningful
  std::string detail;
};

std::string to_string(violation_kind kind);
std::string to_string(const violation& v);

}  // namespace fogfed

#endif  // FOGFED_VIOLATION_HPP
