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

#include <filesystem>
#include <fstream>
#include <map>

#include "fogfed/errors.hpp"
#include "fogfed/workload.hpp"

using namespace fogfed;

namespace {

bool same_vms(const std::vector<vm_request>& a, const std::vector<vm_request>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id || a[i].home_cell != b[i].home_cell ||
        a[i].source != b[i].source || a[i].cpu_mips != b[i].cpu_mips ||
        a[i].ram_mb != b[i].ram_mb || a[i].traffic_gbps != b[i].traffic_gbps)
      return false;
  }
  return true;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
  const topology t = build_federated(3, 3, 1);
  workload_spec spec;
  spec.vm_count = 10;
  spec.seed = 42;
  CHECK(same_vms(generate(spec, t), generate(spec, t)));

  workload_spec other = spec;
  other.seed = 43;
  CHECK(!same_vms(generate(spec, t), generate(other, t)));
}

TEST_CASE("degenerate ranges pin the drawn values") {
  const topology t = build_federated(3, 1, 1);
  workload_spec spec;
  spec.vm_count = 9;
  spec.hot_cpu_range_mips = {280000, 280000};
  spec.cold_cpu_range_mips = {10000, 10000};
  for (const vm_request& vm : generate(spec, t)) {
    if (vm.home_cell == spec.hot_cell)
      CHECK(vm.cpu_mips == 280000);
    else
      CHECK(vm.cpu_mips == 10000);
  }
}

TEST_CASE("round robin starts at the hot cell") {
  const topology t = build_federated(3, 3, 1);
  workload_spec spec;
  spec.vm_count = 20;
  spec.hot_cell = 1;
  std::map<std::uint32_t, int> per_cell;
  for (const vm_request& vm : generate(spec, t)) ++per_cell[vm.home_cell];
  CHECK(per_cell[1] == 7);  // ceil(20 / 3) to the hot cell
  CHECK(per_cell[2] == 7);
  CHECK(per_cell[0] == 6);
}

TEST_CASE("drawn values stay inside their ranges across seeds") {
  const topology t = build_federated(3, 2, 1);
  workload_spec spec;
  spec.vm_count = 15;
  std::map<std::uint32_t, int> baseline;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    spec.seed = seed;
    const auto vms = generate(spec, t);
    REQUIRE(vms.size() == spec.vm_count);
    std::map<std::uint32_t, int> cells;
    for (const vm_request& vm : vms) {
      ++cells[vm.home_cell];
      const auto& cpu = vm.home_cell == spec.hot_cell ? spec.hot_cpu_range_mips
                                                      : spec.cold_cpu_range_mips;
      CHECK(vm.cpu_mips >= cpu[0]);
      CHECK(vm.cpu_mips <= cpu[1]);
      CHECK(vm.ram_mb >= spec.ram_range_mb[0]);
      CHECK(vm.ram_mb <= spec.ram_range_mb[1]);
      CHECK(vm.traffic_gbps >= spec.traffic_range_gbps[0]);
      CHECK(vm.traffic_gbps <= spec.traffic_range_gbps[1]);
    }
    // Round robin: the seed moves values, never the cell distribution.
    if (seed == 1)
      baseline = cells;
    else
      CHECK(cells == baseline);
  }
}

TEST_CASE("uniform cell assignment draws cells but stays deterministic") {
  const topology t = build_federated(3, 2, 1);
  workload_spec spec;
  spec.vm_count = 30;
  spec.cell_policy = cell_assignment_policy::uniform;
  spec.seed = 7;
  const auto a = generate(spec, t);
  CHECK(same_vms(a, generate(spec, t)));
  for (const vm_request& vm : a) CHECK(vm.home_cell < 3);
}

TEST_CASE("multiple CPE ONUs per cell take turns as sources") {
  const topology t = build_federated(1, 1, 2);
  workload_spec spec;
  spec.vm_count = 4;
  const auto vms = generate(spec, t);
  CHECK(vms[0].source == "cell0/cpe0");
  CHECK(vms[1].source == "cell0/cpe1");
  CHECK(vms[2].source == "cell0/cpe0");
  CHECK(vms[3].source == "cell0/cpe1");
}

TEST_CASE("hot cell must exist") {
  const topology t = build_federated(2, 1, 1);
  workload_spec spec;
  spec.hot_cell = 5;
  CHECK_THROWS_AS(generate(spec, t), config_error);
}

TEST_CASE("workload files round-trip") {
  const topology t = build_federated(3, 3, 1);
  workload_spec spec;
  spec.vm_count = 12;
  spec.seed = 9;
  const auto vms = generate(spec, t);
  const auto path = temp_file("fogfed_workload_roundtrip.json");
  save_workload(path, vms);
  CHECK(same_vms(vms, load_workload(path)));
  std::filesystem::remove(path);
}

TEST_CASE("missing fields are parse errors with record context") {
  const auto path = temp_file("fogfed_workload_bad.json");
  {
    std::ofstream out(path);
    out << R"({"vms":[{"id":0,"home_cell":0,"source":"cell0/cpe0",)"
        << R"("ram_mb":100,"traffic_gbps":1}]})";
  }
  try {
    load_workload(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cpu_mips") != std::string::npos);
    CHECK(msg.find("record 0") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("an empty file is an empty workload") {
  const auto path = temp_file("fogfed_workload_empty.json");
  { std::ofstream out(path); }
  CHECK(load_workload(path).empty());
  std::filesystem::remove(path);
}
