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

#include "fogfed/config.hpp"

#include <fstream>
#include <set>

#include "fogfed/errors.hpp"

namespace fogfed {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& scope,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw config_error(scope + "." + it.key() + ": unknown field");
  }
}

double get_number(const json& obj, const std::string& scope, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw config_error(scope + "." + key + ": must be a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& scope,
                       const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() ||
      (v.is_number_integer() && !v.is_number_unsigned() &&
       v.get<std::int64_t>() < 0))
    throw config_error(scope + "." + key +
                       ": must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::array<double, 2> get_range(const json& obj, const std::string& scope,
                                const char* key,
                                const std::array<double, 2>& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw config_error(scope + "." + key + ": must be [low, high]");
  std::array<double, 2> r{v[0].get<double>(), v[1].get<double>()};
  if (!(r[0] <= r[1]))
    throw config_error(scope + "." + key + ": low must be <= high");
  return r;
}

void parse_device(const json& obj, const std::string& scope, double& max_w,
                  double& idle_w, double* rate) {
  std::set<std::string> allowed{"max_power_w", "idle_power_w"};
  if (rate) allowed.insert("data_rate_gbps");
  reject_unknown(obj, scope, allowed);
  max_w = get_number(obj, scope, "max_power_w", max_w);
  idle_w = get_number(obj, scope, "idle_power_w", idle_w);
  if (rate) *rate = get_number(obj, scope, "data_rate_gbps", *rate);
  if (idle_w < 0)
    throw config_error(scope + ".idle_power_w: must be >= 0");
  if (idle_w > max_w)
    throw config_error(scope + ".idle_power_w: must not exceed max_power_w");
  if (rate && *rate <= 0)
    throw config_error(scope + ".data_rate_gbps: must be positive");
}

}  // namespace

topology scenario_config::build(fog_mode mode) const {
  topology t = mode == fog_mode::federated
                   ? build_federated(topo.cells, topo.servers_per_cell,
                                     topo.cpe_onus_per_cell, topo.params)
                   : build_non_federated(topo.cells, topo.servers_per_cell,
                                         topo.cpe_onus_per_cell, topo.params);
  const std::vector<violation> violations = validate(t);
  if (!violations.empty())
    throw config_error("invalid topology: " + to_string(violations.front()));
  return t;
}

fog_mode mode_from_string(std::string_view s) {
  if (s == "federated") return fog_mode::federated;
  if (s == "non-federated" || s == "non_federated")
    return fog_mode::non_federated;
  throw config_error("unknown mode: " + std::string(s) +
                     " (expected federated | non-federated)");
}

scenario_config parse_scenario(const nlohmann::json& doc) {
  if (!doc.is_object()) throw config_error("scenario: must be a JSON object");
  reject_unknown(doc, "scenario",
                 {"schema_version", "topology", "workload", "solver"});
  if (doc.contains("schema_version") &&
      doc.at("schema_version").get<std::int64_t>() != 1)
    throw config_error("scenario.schema_version: only version 1 is supported");

  scenario_config cfg;

  if (doc.contains("topology")) {
    const json& t = doc.at("topology");
    reject_unknown(t, "topology",
                   {"cells", "servers_per_cell", "cpe_onus_per_cell", "onu",
                    "olt", "server", "link_capacity_gbps"});
    cfg.topo.cells = static_cast<std::uint32_t>(
        get_uint(t, "topology", "cells", cfg.topo.cells));
    cfg.topo.servers_per_cell = static_cast<std::uint32_t>(get_uint(
        t, "topology", "servers_per_cell", cfg.topo.servers_per_cell));
    cfg.topo.cpe_onus_per_cell = static_cast<std::uint32_t>(get_uint(
        t, "topology", "cpe_onus_per_cell", cfg.topo.cpe_onus_per_cell));
    device_params& p = cfg.topo.params;
    if (t.contains("onu"))
      parse_device(t.at("onu"), "topology.onu", p.onu.max_power_w,
                   p.onu.idle_power_w, &p.onu.data_rate_gbps);
    if (t.contains("olt"))
      parse_device(t.at("olt"), "topology.olt", p.olt.max_power_w,
                   p.olt.idle_power_w, &p.olt.data_rate_gbps);
    if (t.contains("server")) {
      const json& s = t.at("server");
      reject_unknown(s, "topology.server",
                     {"max_power_w", "idle_power_w", "cpu_capacity_mips",
                      "ram_capacity_mb"});
      p.server.max_power_w = get_number(s, "topology.server", "max_power_w",
                                        p.server.max_power_w);
      p.server.idle_power_w = get_number(s, "topology.server", "idle_power_w",
                                         p.server.idle_power_w);
      p.server.cpu_capacity_mips = get_number(
          s, "topology.server", "cpu_capacity_mips", p.server.cpu_capacity_mips);
      p.server.ram_capacity_mb = get_number(
          s, "topology.server", "ram_capacity_mb", p.server.ram_capacity_mb);
      if (p.server.idle_power_w > p.server.max_power_w)
        throw config_error(
            "topology.server.idle_power_w: must not exceed max_power_w");
      if (p.server.cpu_capacity_mips <= 0)
        throw config_error("topology.server.cpu_capacity_mips: must be positive");
      if (p.server.ram_capacity_mb <= 0)
        throw config_error("topology.server.ram_capacity_mb: must be positive");
    }
    p.link_capacity_gbps = get_number(t, "topology", "link_capacity_gbps",
                                      p.link_capacity_gbps);
    if (p.link_capacity_gbps <= 0)
      throw config_error("topology.link_capacity_gbps: must be positive");
  }

  if (doc.contains("workload")) {
    const json& w = doc.at("workload");
    reject_unknown(w, "workload",
                   {"vm_count", "hot_cell", "hot_cpu_range_mips",
                    "cold_cpu_range_mips", "ram_range_mb", "traffic_range_gbps",
                    "seed", "cell_assignment"});
    workload_spec& ws = cfg.workload;
    ws.vm_count = static_cast<std::uint32_t>(
        get_uint(w, "workload", "vm_count", ws.vm_count));
    if (ws.vm_count < 1)
      throw config_error("workload.vm_count: must be >= 1");
    ws.hot_cell = static_cast<std::uint32_t>(
        get_uint(w, "workload", "hot_cell", ws.hot_cell));
    ws.hot_cpu_range_mips =
        get_range(w, "workload", "hot_cpu_range_mips", ws.hot_cpu_range_mips);
    ws.cold_cpu_range_mips =
        get_range(w, "workload", "cold_cpu_range_mips", ws.cold_cpu_range_mips);
    ws.ram_range_mb = get_range(w, "workload", "ram_range_mb", ws.ram_range_mb);
    ws.traffic_range_gbps =
        get_range(w, "workload", "traffic_range_gbps", ws.traffic_range_gbps);
    ws.seed = get_uint(w, "workload", "seed", ws.seed);
    if (w.contains("cell_assignment")) {
      if (!w.at("cell_assignment").is_string())
        throw config_error("workload.cell_assignment: must be a string");
      try {
        ws.cell_policy =
            cell_policy_from_string(w.at("cell_assignment").get<std::string>());
      } catch (const config_error&) {
        throw config_error(
            "workload.cell_assignment: expected round_robin | uniform");
      }
    }
  }

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    reject_unknown(s, "solver",
                   {"power_tolerance_w", "bruteforce_cap",
                    "server_onu_power_mode"});
    cfg.solver.power_tolerance_w = get_number(
        s, "solver", "power_tolerance_w", cfg.solver.power_tolerance_w);
    if (cfg.solver.power_tolerance_w < 0)
      throw config_error("solver.power_tolerance_w: must be >= 0");
    cfg.solver.bruteforce_cap =
        get_uint(s, "solver", "bruteforce_cap", cfg.solver.bruteforce_cap);
    if (s.contains("server_onu_power_mode")) {
      const std::string m = s.at("server_onu_power_mode").get<std::string>();
      if (m == "proportional")
        cfg.solver.power.onu_mode = server_onu_mode::proportional;
      else if (m == "on_off")
        cfg.solver.power.onu_mode = server_onu_mode::on_off;
      else
        throw config_error(
            "solver.server_onu_power_mode: expected proportional | on_off");
    }
  }
  return cfg;
}

scenario_config load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scenario file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("scenario file " + path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json effective_config(const scenario_config& cfg) {
  const device_params& p = cfg.topo.params;
  return nlohmann::json{
      {"schema_version", 1},
      {"topology",
       {{"cells", cfg.topo.cells},
        {"servers_per_cell", cfg.topo.servers_per_cell},
        {"cpe_onus_per_cell", cfg.topo.cpe_onus_per_cell},
        {"onu",
         {{"max_power_w", p.onu.max_power_w},
          {"idle_power_w", p.onu.idle_power_w},
          {"data_rate_gbps", p.onu.data_rate_gbps}}},
        {"olt",
         {{"max_power_w", p.olt.max_power_w},
          {"idle_power_w", p.olt.idle_power_w},
          {"data_rate_gbps", p.olt.data_rate_gbps}}},
        {"server",
         {{"max_power_w", p.server.max_power_w},
          {"idle_power_w", p.server.idle_power_w},
          {"cpu_capacity_mips", p.server.cpu_capacity_mips},
          {"ram_capacity_mb", p.server.ram_capacity_mb}}},
        {"link_capacity_gbps", p.link_capacity_gbps}}},
      {"workload",
       {{"vm_count", cfg.workload.vm_count},
        {"hot_cell", cfg.workload.hot_cell},
        {"hot_cpu_range_mips", cfg.workload.hot_cpu_range_mips},
        {"cold_cpu_range_mips", cfg.workload.cold_cpu_range_mips},
        {"ram_range_mb", cfg.workload.ram_range_mb},
        {"traffic_range_gbps", cfg.workload.traffic_range_gbps},
        {"seed", cfg.workload.seed},
        {"cell_assignment", to_string(cfg.workload.cell_policy)}}},
      {"solver",
       {{"power_tolerance_w", cfg.solver.power_tolerance_w},
        {"bruteforce_cap", cfg.solver.bruteforce_cap},
        {"server_onu_power_mode",
         cfg.solver.power.onu_mode == server_onu_mode::proportional
             ? "proportional"
             : "on_off"}}},
      {"rng", std::string(rng_algorithm_id)}};
}

}  // namespace fogfed
