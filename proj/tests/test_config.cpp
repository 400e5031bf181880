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

#include <doctest.h>

#include "fogfed/config.hpp"
#include "fogfed/errors.hpp"

using namespace fogfed;
using nlohmann::json;

TEST_CASE("an empty scenario resolves to the default inputs") {
  const scenario_config cfg = parse_scenario(json::object());
  CHECK(cfg.topo.cells == 3);
  CHECK(cfg.topo.servers_per_cell == 3);
  CHECK(cfg.topo.cpe_onus_per_cell == 1);
  CHECK(cfg.topo.params.onu.max_power_w == 2.5);
  CHECK(cfg.topo.params.onu.idle_power_w == 1.5);
  CHECK(cfg.topo.params.onu.data_rate_gbps == 10.0);
  CHECK(cfg.topo.params.olt.max_power_w == 1940.0);
  CHECK(cfg.topo.params.olt.idle_power_w == 1746.0);
  CHECK(cfg.topo.params.olt.data_rate_gbps == 8600.0);
  CHECK(cfg.topo.params.server.max_power_w == 457.0);
  CHECK(cfg.topo.params.server.idle_power_w == 301.0);
  CHECK(cfg.topo.params.server.cpu_capacity_mips == 280000.0);
  CHECK(cfg.topo.params.server.ram_capacity_mb == 16384.0);
  CHECK(cfg.topo.params.link_capacity_gbps == 1280.0);
  CHECK(cfg.workload.vm_count == 10);
  CHECK(cfg.workload.hot_cpu_range_mips == std::array<double, 2>{160000, 280000});
  CHECK(cfg.workload.cold_cpu_range_mips == std::array<double, 2>{10000, 56000});
  CHECK(cfg.workload.ram_range_mb == std::array<double, 2>{100, 500});
  CHECK(cfg.workload.traffic_range_gbps == std::array<double, 2>{1, 5});
  CHECK(cfg.workload.cell_policy == cell_assignment_policy::round_robin);
  CHECK(cfg.solver.power_tolerance_w == 1e-9);
  CHECK(cfg.solver.bruteforce_cap == 10'000'000);
  CHECK(cfg.solver.power.onu_mode == server_onu_mode::proportional);
}

TEST_CASE("unknown fields are rejected by name") {
  const json doc{{"workload", {{"trafic_range_gbps", {1, 5}}}}};
  try {
    parse_scenario(doc);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("trafic_range_gbps") != std::string::npos);
  }
}

TEST_CASE("bad values name the offending field") {
  try {
    parse_scenario(json{{"topology", {{"cells", -1}}}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("topology.cells") != std::string::npos);
  }
  try {
    parse_scenario(json{{"workload", {{"hot_cpu_range_mips", {5, 1}}}}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("hot_cpu_range_mips") != std::string::npos);
  }
  CHECK_THROWS_AS(
      parse_scenario(json{{"solver", {{"server_onu_power_mode", "bogus"}}}}),
      config_error);
  CHECK_THROWS_AS(parse_scenario(json{{"schema_version", 2}}), config_error);
}

TEST_CASE("overrides apply and echo back") {
  json doc;
  doc["topology"]["cells"] = 2;
  doc["topology"]["server"]["cpu_capacity_mips"] = 100000.0;
  doc["workload"]["vm_count"] = 5;
  doc["workload"]["cell_assignment"] = "uniform";
  doc["solver"]["server_onu_power_mode"] = "on_off";
  const scenario_config cfg = parse_scenario(doc);
  CHECK(cfg.topo.cells == 2);
  CHECK(cfg.topo.params.server.cpu_capacity_mips == 100000.0);
  CHECK(cfg.workload.vm_count == 5);
  CHECK(cfg.workload.cell_policy == cell_assignment_policy::uniform);
  CHECK(cfg.solver.power.onu_mode == server_onu_mode::on_off);

  const json echo = effective_config(cfg);
  CHECK(echo.at("topology").at("cells") == 2);
  CHECK(echo.at("topology").at("server").at("cpu_capacity_mips") == 100000.0);
  CHECK(echo.at("workload").at("cell_assignment") == "uniform");
  CHECK(echo.at("solver").at("server_onu_power_mode") == "on_off");
  CHECK(echo.at("topology").at("olt").at("idle_power_w") == 1746.0);
}

TEST_CASE("scenario builds the requested architecture") {
  const scenario_config cfg = parse_scenario(json::object());
  CHECK(cfg.build(fog_mode::federated).mode() == fog_mode::federated);
  CHECK(cfg.build(fog_mode::non_federated).olts().size() == 3);
  CHECK(mode_from_string("federated") == fog_mode::federated);
  CHECK(mode_from_string("non-federated") == fog_mode::non_federated);
  CHECK_THROWS_AS(mode_from_string("fedfog"), config_error);
}

TEST_CASE("missing scenario files raise io_error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), io_error);
}
