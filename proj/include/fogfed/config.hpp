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

#ifndef FOGFED_CONFIG_HPP
#define FOGFED_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "fogfed/solver.hpp"
#include "fogfed/topology.hpp"
#include "fogfed/workload.hpp"

namespace fogfed {

struct topology_config {
  std::uint32_t cells = 3;
  std::uint32_t servers_per_cell = 3;
  std::uint32_t cpe_onus_per_cell = 1;
  device_params params;
};

/// Everything a run needs: topology shape, workload distribution, solver
/// knobs. Omitted fields take the defaults above; unknown fields are
/// rejected so typos fail fast.
struct scenario_config {
  topology_config topo;
  workload_spec workload;
  solver_options solver;

  topology build(fog_mode mode) const;
};

scenario_config parse_scenario(const nlohmann::json& doc);
scenario_config load_scenario(const std::filesystem::path& path);

/// The fully resolved configuration, echoed into outputs for provenance.
nlohmann::json effective_config(const scenario_config& cfg);

fog_mode mode_from_string(std::string_view s);

}  // namespace fogfed

#endif  // FOGFED_CONFIG_HPP
