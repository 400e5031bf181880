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

#include "fogfed/workload.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fogfed/errors.hpp"

namespace fogfed {

namespace {

// Uniform double in [lo, hi] from the generator's top 53 bits. The
// standard distributions are not bit-identical across library
// implementations, so the mapping is spelled out here.
double draw_uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

void check_range(const std::array<double, 2>& r, const char* name) {
  if (!(r[0] <= r[1]))
    throw config_error(std::string(name) + ": range low must be <= high");
  if (!(r[0] > 0))
    throw config_error(std::string(name) + ": values must be positive");
}

}  // namespace

std::string to_string(cell_assignment_policy policy) {
  return policy == cell_assignment_policy::round_robin ? "round_robin"
                                                       : "uniform";
}

cell_assignment_policy cell_policy_from_string(std::string_view s) {
  if (s == "round_robin") return cell_assignment_policy::round_robin;
  if (s == "uniform") return cell_assignment_policy::uniform;
  throw config_error("unknown cell_assignment policy: " + std::string(s));
}

std::vector<vm_request> generate(const workload_spec& spec,
                                 const topology& topo) {
  if (spec.vm_count < 1) throw config_error("vm_count must be >= 1");
  if (topo.cell_count() == 0) throw config_error("topology has no cells");
  if (spec.hot_cell >= topo.cell_count())
    throw config_error("hot_cell " + std::to_string(spec.hot_cell) +
                       " does not exist in a topology with " +
                       std::to_string(topo.cell_count()) + " cells");
  check_range(spec.hot_cpu_range_mips, "hot_cpu_range_mips");
  check_range(spec.cold_cpu_range_mips, "cold_cpu_range_mips");
  check_range(spec.ram_range_mb, "ram_range_mb");
  check_range(spec.traffic_range_gbps, "traffic_range_gbps");

  const std::uint32_t cells = topo.cell_count();
  std::mt19937_64 rng(spec.seed);
  std::vector<vm_request> out;
  out.reserve(spec.vm_count);
  std::vector<std::uint32_t> per_cell_count(cells, 0);

  for (vm_id i = 0; i < spec.vm_count; ++i) {
    std::uint32_t cell;
    if (spec.cell_policy == cell_assignment_policy::round_robin) {
      cell = (spec.hot_cell + i) % cells;
    } else {
      cell = static_cast<std::uint32_t>(draw_index(rng, cells));
    }
    const auto& cpes = topo.cpe_onus_of_cell(cell);
    if (cpes.empty())
      throw config_error("cell " + std::to_string(cell) + " has no CPE ONU");
    const node_id src = cpes[per_cell_count[cell] % cpes.size()];
    ++per_cell_count[cell];

    const auto& cpu_range = cell == spec.hot_cell ? spec.hot_cpu_range_mips
                                                  : spec.cold_cpu_range_mips;
    vm_request vm;
    vm.id = i;
    vm.home_cell = cell;
    vm.source = topo.at(src).name;
    vm.cpu_mips = draw_uniform(rng, cpu_range[0], cpu_range[1]);
    vm.ram_mb = draw_uniform(rng, spec.ram_range_mb[0], spec.ram_range_mb[1]);
    vm.traffic_gbps =
        draw_uniform(rng, spec.traffic_range_gbps[0], spec.traffic_range_gbps[1]);
    out.push_back(std::move(vm));
  }
  return out;
}

namespace {

double require_number(const nlohmann::json& rec, const char* field,
                      std::size_t index) {
  if (!rec.contains(field))
    throw parse_error("vm record " + std::to_string(index) +
                      ": missing field '" + field + "'");
  const auto& v = rec.at(field);
  if (!v.is_number())
    throw parse_error("vm record " + std::to_string(index) + ": field '" +
                      field + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::vector<vm_request> load_workload(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open workload file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error("workload file " + path.string() + ": " + e.what());
  }
  const nlohmann::json* vms = &doc;
  if (doc.is_object()) {
    if (!doc.contains("vms"))
      throw parse_error("workload file " + path.string() +
                        ": missing 'vms' array");
    vms = &doc.at("vms");
  }
  if (!vms->is_array())
    throw parse_error("workload file " + path.string() +
                      ": 'vms' must be an array");

  std::vector<vm_request> out;
  std::set<vm_id> ids;
  for (std::size_t i = 0; i < vms->size(); ++i) {
    const auto& rec = (*vms)[i];
    if (!rec.is_object())
      throw parse_error("vm record " + std::to_string(i) + ": not an object");
    vm_request vm;
    vm.id = static_cast<vm_id>(require_number(rec, "id", i));
    vm.home_cell = static_cast<std::uint32_t>(require_number(rec, "home_cell", i));
    if (!rec.contains("source") || !rec.at("source").is_string())
      throw parse_error("vm record " + std::to_string(i) +
                        ": missing string field 'source'");
    vm.source = rec.at("source").get<std::string>();
    vm.cpu_mips = require_number(rec, "cpu_mips", i);
    vm.ram_mb = require_number(rec, "ram_mb", i);
    vm.traffic_gbps = require_number(rec, "traffic_gbps", i);
    if (vm.cpu_mips <= 0 || vm.ram_mb <= 0 || vm.traffic_gbps <= 0)
      throw parse_error("vm record " + std::to_string(i) +
                        ": cpu, ram and traffic must be positive");
    if (!ids.insert(vm.id).second)
      throw parse_error("vm record " + std::to_string(i) + ": duplicate id " +
                        std::to_string(vm.id));
    out.push_back(std::move(vm));
  }
  return out;
}

void save_workload(const std::filesystem::path& path,
                   const std::vector<vm_request>& vms) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["rng"] = std::string(rng_algorithm_id);
  auto& arr = doc["vms"] = nlohmann::json::array();
  for (const vm_request& vm : vms) {
    arr.push_back({{"id", vm.id},
                   {"home_cell", vm.home_cell},
                   {"source", vm.source},
                   {"cpu_mips", vm.cpu_mips},
                   {"ram_mb", vm.ram_mb},
                   {"traffic_gbps", vm.traffic_gbps}});
  }
  std::ofstream out(path);
  if (!out) throw io_error("cannot write workload file: " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw io_error("failed writing workload file: " + path.string());
}

}  // namespace fogfed
