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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fogfed/config.hpp"
#include "fogfed/errors.hpp"
#include "fogfed/experiments.hpp"
#include "fogfed/milp.hpp"
#include "fogfed/solver.hpp"
#include "fogfed/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// "1,2,5..8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.empty()) continue;
    const std::size_t dots = tok.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoull(tok));
      } else {
        const std::uint64_t lo = std::stoull(tok.substr(0, dots));
        const std::uint64_t hi = std::stoull(tok.substr(dots + 2));
        if (hi < lo)
          throw fogfed::config_error("seed range " + tok + " is descending");
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::invalid_argument&) {
      throw fogfed::config_error("cannot parse seed token: " + tok);
    } catch (const std::out_of_range&) {
      throw fogfed::config_error("seed token out of range: " + tok);
    }
  }
  if (out.empty()) throw fogfed::config_error("empty seed list");
  return out;
}

int cmd_solve(const std::string& scenario_path, const std::string& mode_str,
              const std::string& out_path) {
  const fogfed::scenario_config cfg = fogfed::load_scenario(scenario_path);
  const fogfed::fog_mode mode = fogfed::mode_from_string(mode_str);
  const fogfed::topology topo = cfg.build(mode);
  const std::vector<fogfed::vm_request> vms = fogfed::generate(cfg.workload, topo);
  const fogfed::solution sol = fogfed::solve_exact(topo, vms, cfg.solver);

  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["rng"] = std::string(fogfed::rng_algorithm_id);
  doc["config"] = fogfed::effective_config(cfg);
  doc["mode"] = fogfed::to_string(mode);
  doc["blocked_count"] = sol.blocked_count;
  doc["placed_count"] = static_cast<std::uint32_t>(vms.size()) - sol.blocked_count;
  std::uint32_t servers_used = 0;
  for (fogfed::node_id srv : topo.servers())
    if (sol.flow.node_active[srv]) ++servers_used;
  doc["servers_used"] = servers_used;
  doc["proven_optimal"] = sol.proven_optimal;
  doc["nodes_explored"] = sol.nodes_explored;
  doc["power"] = {{"onu_cpe_w", sol.power.onu_cpe_w},
                  {"olt_w", sol.power.olt_w},
                  {"servers_w", sol.power.servers_w},
                  {"server_onus_w", sol.power.server_onus_w},
                  {"net_total_w", sol.power.net_total_w},
                  {"proc_total_w", sol.power.proc_total_w},
                  {"total_w", sol.power.total_w}};
  auto& placements = doc["placements"] = nlohmann::json::array();
  auto& blocked = doc["blocked"] = nlohmann::json::array();
  for (const fogfed::vm_request& vm : vms) {
    auto it = sol.assign.placement.find(vm.id);
    if (it != sol.assign.placement.end() && it->second) {
      placements.push_back({{"vm", vm.id}, {"server", topo.at(*it->second).name}});
    } else {
      placements.push_back({{"vm", vm.id}, {"server", nullptr}});
      blocked.push_back(vm.id);
    }
  }
  auto& wl = doc["workload"] = nlohmann::json::array();
  for (const fogfed::vm_request& vm : vms)
    wl.push_back({{"id", vm.id},
                  {"home_cell", vm.home_cell},
                  {"source", vm.source},
                  {"cpu_mips", vm.cpu_mips},
                  {"ram_mb", vm.ram_mb},
                  {"traffic_gbps", vm.traffic_gbps}});

  std::ofstream out(out_path);
  if (!out) throw fogfed::io_error("cannot write solution file: " + out_path);
  out << doc.dump(2) << "\n";
  if (!out) throw fogfed::io_error("failed writing solution file: " + out_path);
  std::cout << "solved " << fogfed::to_string(mode) << ": " << sol.blocked_count
            << " blocked, total " << sol.power.total_w << " W -> " << out_path
            << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& scenario_path,
                const std::vector<std::uint32_t>& vm_counts,
                const std::string& seeds_text, const std::string& out_dir) {
  const fogfed::scenario_config cfg = fogfed::load_scenario(scenario_path);
  const std::vector<std::uint64_t> seeds =
      seeds_text.empty() ? std::vector<std::uint64_t>{cfg.workload.seed}
                         : parse_seed_list(seeds_text);
  const fogfed::experiment_report rep =
      fogfed::run_comparison(cfg, vm_counts, seeds);
  fogfed::emit_report(rep, out_dir, fogfed::report_format::csv);
  fogfed::emit_report(rep, out_dir, fogfed::report_format::json);
  {
    std::ofstream cfg_out(std::filesystem::path(out_dir) /
                          "effective_config.json");
    if (!cfg_out)
      throw fogfed::io_error("cannot write report files under " + out_dir);
    cfg_out << rep.config_echo.dump(2) << "\n";
  }
  std::cout << "compared " << vm_counts.size() << " vm counts x "
            << seeds.size() << " seeds -> " << out_dir << "\n";
  return kExitOk;
}

int cmd_export(const std::string& scenario_path, const std::string& mode_str,
               const std::string& lp_path, bool verify) {
  const fogfed::scenario_config cfg = fogfed::load_scenario(scenario_path);
  const fogfed::fog_mode mode = fogfed::mode_from_string(mode_str);
  const fogfed::topology topo = cfg.build(mode);
  const std::vector<fogfed::vm_request> vms = fogfed::generate(cfg.workload, topo);
  fogfed::milp_options mopts;
  mopts.power = cfg.solver.power;
  mopts.comments.push_back("config: " + fogfed::effective_config(cfg).dump());
  if (verify) {
    const fogfed::solution sol = fogfed::solve_exact(topo, vms, cfg.solver);
    fogfed::export_milp(topo, vms, lp_path, mopts, &sol);
  } else {
    fogfed::export_milp(topo, vms, lp_path, mopts, nullptr);
  }
  std::cout << "exported " << fogfed::to_string(mode) << " model -> " << lp_path
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact VM placement and power evaluation for federated fog "
               "cells over a passive optical network"};
  app.require_subcommand(1);

  std::string scenario, mode = "federated", out_path, seeds_text, out_dir;
  std::string lp_path;
  std::vector<std::uint32_t> vm_counts{10, 15, 20};
  bool verify = false;

  CLI::App* solve = app.add_subcommand("solve", "Place one workload optimally");
  solve->add_option("--scenario", scenario, "Scenario config (JSON)")->required();
  solve->add_option("--mode", mode, "federated | non-federated")
      ->check(CLI::IsMember({"federated", "non-federated"}));
  solve->add_option("--out", out_path, "Solution output file (JSON)")->required();

  CLI::App* compare = app.add_subcommand(
      "compare", "Sweep federated vs non-federated over VM counts and seeds");
  compare->add_option("--scenario", scenario, "Scenario config (JSON)")->required();
  compare->add_option("--vms", vm_counts, "VM counts (default 10,15,20)")
      ->delimiter(',');
  compare->add_option("--seeds", seeds_text,
                      "Seed list, e.g. 1,2,5..8 (default: scenario seed)");
  compare->add_option("--out", out_dir, "Report output directory")->required();

  CLI::App* exp = app.add_subcommand("export", "Write the placement MILP as LP text");
  exp->add_option("--scenario", scenario, "Scenario config (JSON)")->required();
  exp->add_option("--mode", mode, "federated | non-federated")
      ->check(CLI::IsMember({"federated", "non-federated"}));
  exp->add_option("--lp", lp_path, "LP output file")->required();
  exp->add_flag("--verify", verify,
                "Solve first and embed the optimum as a comment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(scenario, mode, out_path);
    if (compare->parsed()) return cmd_compare(scenario, vm_counts, seeds_text, out_dir);
    if (exp->parsed()) return cmd_export(scenario, mode, lp_path, verify);
  } catch (const fogfed::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fogfed::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fogfed::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}
