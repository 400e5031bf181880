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

#include <random>

#include "fogfed/errors.hpp"
#include "fogfed/power.hpp"

using namespace fogfed;

namespace {

vm_request make_vm(vm_id id, std::string source, double cpu, double ram,
                   double traffic) {
  vm_request vm;
  vm.id = id;
  vm.source = std::move(source);
  vm.cpu_mips = cpu;
  vm.ram_mb = ram;
  vm.traffic_gbps = traffic;
  return vm;
}

}  // namespace

TEST_CASE("energy per bit from the default device parameters") {
  CHECK(energy_per_bit(2.5, 1.5, 10.0) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(energy_per_bit(1940.0, 1746.0, 8600.0) ==
        doctest::Approx(194.0 / 8600.0).epsilon(1e-12));
  CHECK(energy_per_bit(7.0, 7.0, 3.0) == 0.0);
  CHECK_THROWS_AS(energy_per_bit(2.5, 1.5, 0.0), config_error);
  CHECK_THROWS_AS(energy_per_bit(2.5, 1.5, -1.0), config_error);
}

TEST_CASE("zero flows mean zero networking power") {
  const topology t = build_federated(2, 2, 1);
  const flow_state fs = accumulate(t, assignment{}, {});
  const auto [cpe_w, olt_w] = networking_power(t, fs);
  CHECK(cpe_w == 0.0);
  CHECK(olt_w == 0.0);
}

TEST_CASE("one active CPE ONU with 5 Gbps through one OLT") {
  const topology t = build_federated(1, 1, 1);
  const std::vector<vm_request> vms{make_vm(0, "cell0/cpe0", 140000, 300, 5.0)};
  assignment asg;
  asg.placement[0] = t.find("cell0/srv0");
  const flow_state fs = accumulate(t, asg, vms);
  const auto [cpe_w, olt_w] = networking_power(t, fs);
  CHECK(cpe_w == doctest::Approx(2.0).epsilon(1e-12));  // 0.1*5 + 1.5
  // (194/8600)*5 + 1746*(5/8600) = 9700/8600
  CHECK(olt_w == doctest::Approx(9700.0 / 8600.0).epsilon(1e-12));
}

TEST_CASE("the OLT term is linear in carried traffic") {
  const topology t = build_federated(2, 2, 1);
  const std::vector<vm_request> vms{make_vm(0, "cell0/cpe0", 1000, 100, 3.0),
                                    make_vm(1, "cell1/cpe0", 1000, 100, 2.0)};
  assignment asg;
  asg.placement[0] = t.find("cell0/srv0");
  asg.placement[1] = t.find("cell1/srv1");
  flow_state fs = accumulate(t, asg, vms);
  const double olt_once = networking_power(t, fs).second;
  for (double& v : fs.node_traffic_gbps) v *= 2;
  const double olt_twice = networking_power(t, fs).second;
  CHECK(olt_twice == doctest::Approx(2 * olt_once).epsilon(1e-12));
}

TEST_CASE("server power at full, half and zero load") {
  const topology t = build_federated(1, 1, 1);
  SUBCASE("full utilization reaches max power") {
    const std::vector<vm_request> vms{
        make_vm(0, "cell0/cpe0", 280000, 300, 5.0)};
    assignment asg;
    asg.placement[0] = t.find("cell0/srv0");
    const flow_state fs = accumulate(t, asg, vms);
    const auto [servers_w, sonu_w] = processing_power(t, asg, vms, fs);
    CHECK(servers_w == doctest::Approx(457.0).epsilon(1e-12));
    CHECK(sonu_w == doctest::Approx(2.5 * 5.0 / 10.0).epsilon(1e-12));
  }
  SUBCASE("half load") {
    const std::vector<vm_request> vms{
        make_vm(0, "cell0/cpe0", 140000, 300, 5.0)};
    assignment asg;
    asg.placement[0] = t.find("cell0/srv0");
    const flow_state fs = accumulate(t, asg, vms);
    CHECK(processing_power(t, asg, vms, fs).first ==
          doctest::Approx(379.0).epsilon(1e-12));  // 301 + 156 * 0.5
  }
  SUBCASE("nothing assigned") {
    const flow_state fs = accumulate(t, assignment{}, {});
    const auto [servers_w, sonu_w] = processing_power(t, assignment{}, {}, fs);
    CHECK(servers_w == 0.0);
    CHECK(sonu_w == 0.0);
  }
}

TEST_CASE("worked single-VM total on the minimal federated tree") {
  const topology t = build_federated(1, 1, 1);
  const std::vector<vm_request> vms{make_vm(0, "cell0/cpe0", 140000, 300, 5.0)};
  assignment asg;
  asg.placement[0] = t.find("cell0/srv0");
  const power_breakdown pb = total_power(t, asg, vms);
  CHECK(pb.onu_cpe_w == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pb.olt_w == doctest::Approx(9700.0 / 8600.0).epsilon(1e-12));
  CHECK(pb.servers_w == doctest::Approx(379.0).epsilon(1e-12));
  CHECK(pb.server_onus_w == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(pb.total_w ==
        doctest::Approx(383.37790697674416).epsilon(1e-12));
  // components sum to the total bit-exactly
  CHECK(pb.net_total_w == pb.onu_cpe_w + pb.olt_w);
  CHECK(pb.proc_total_w == pb.servers_w + pb.server_onus_w);
  CHECK(pb.total_w == pb.net_total_w + pb.proc_total_w);
}

TEST_CASE("empty assignment evaluates to an all-zero breakdown") {
  const topology t = build_federated(3, 3, 1);
  const power_breakdown pb = total_power(t, assignment{}, {});
  CHECK(pb.total_w == 0.0);
  CHECK(pb.net_total_w == 0.0);
  CHECK(pb.proc_total_w == 0.0);
}

TEST_CASE("strict on/off server ONUs draw full power when touched") {
  const topology t = build_federated(1, 1, 1);
  const std::vector<vm_request> vms{make_vm(0, "cell0/cpe0", 1000, 100, 1.0)};
  assignment asg;
  asg.placement[0] = t.find("cell0/srv0");
  power_options opts;
  opts.onu_mode = server_onu_mode::on_off;
  const power_breakdown pb = total_power(t, asg, vms, opts);
  CHECK(pb.server_onus_w == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("evaluation is pure: repeated calls agree bit-exactly") {
  const topology t = build_federated(3, 3, 1);
  std::vector<vm_request> vms;
  assignment asg;
  std::mt19937 rng(3);
  for (vm_id i = 0; i < 9; ++i) {
    const std::uint32_t cell = i % 3;
    vms.push_back(make_vm(i, "cell" + std::to_string(cell) + "/cpe0",
                          10000 + i * 1000, 200, 1.5));
    asg.placement[i] = t.servers()[rng() % t.servers().size()];
  }
  const power_breakdown a = total_power(t, asg, vms);
  const power_breakdown b = total_power(t, asg, vms);
  CHECK(a.total_w == b.total_w);
  CHECK(a.onu_cpe_w == b.onu_cpe_w);
  CHECK(a.olt_w == b.olt_w);
  CHECK(a.servers_w == b.servers_w);
  CHECK(a.server_onus_w == b.server_onus_w);
}

TEST_CASE("adding a placed VM never lowers total power") {
  const topology t = build_federated(3, 2, 1);
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<vm_request> vms;
    assignment small, big;
    const int n = 2 + static_cast<int>(rng() % 5);
    for (vm_id i = 0; i < static_cast<vm_id>(n); ++i) {
      const std::uint32_t cell = rng() % 3;
      vms.push_back(make_vm(i, "cell" + std::to_string(cell) + "/cpe0",
                            5000 + rng() % 40000, 100 + rng() % 400,
                            1.0 + (rng() % 30) / 10.0));
      const node_id srv = t.servers()[rng() % t.servers().size()];
      big.placement[i] = srv;
      small.placement[i] = i + 1 < static_cast<vm_id>(n)
                               ? std::optional<node_id>(srv)
                               : std::nullopt;
    }
    CHECK(total_power(t, small, vms).total_w <=
          total_power(t, big, vms).total_w + 1e-12);
  }
}

TEST_CASE("an active server draws between idle and max power") {
  const topology t = build_federated(1, 3, 1);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<vm_request> vms;
    assignment asg;
    const int n = 1 + static_cast<int>(rng() % 4);
    double load = 0;
    for (vm_id i = 0; i < static_cast<vm_id>(n); ++i) {
      const double cpu = 1000 + rng() % 60000;
      load += cpu;
      if (load > 280000) break;
      vms.push_back(make_vm(i, "cell0/cpe0", cpu, 100, 1.0));
      asg.placement[i] = t.find("cell0/srv0");
    }
    if (vms.empty()) continue;
    const flow_state fs = accumulate(t, asg, vms);
    const double w = processing_power(t, asg, vms, fs).first;
    CHECK(w >= 301.0);
    CHECK(w <= 457.0 + 1e-12);
  }
}

TEST_CASE("the OLT idle share depends only on placed traffic, not the split") {
  // Same VM set placed in-cell on both architectures: the summed OLT
  // idle shares agree because every placed VM crosses exactly one OLT.
  const topology fed = build_federated(3, 2, 1);
  const topology nonfed = build_non_federated(3, 2, 1);
  std::vector<vm_request> vms;
  for (vm_id i = 0; i < 6; ++i) {
    const std::uint32_t cell = i % 3;
    vms.push_back(make_vm(i, "cell" + std::to_string(cell) + "/cpe0", 20000,
                          200, 1.0 + i));
  }
  assignment in_cell_fed, in_cell_non;
  for (const vm_request& vm : vms) {
    const std::string srv = "cell" + std::to_string(vm.id % 3) + "/srv" +
                            std::to_string(vm.id % 2);
    in_cell_fed.placement[vm.id] = fed.find(srv);
    in_cell_non.placement[vm.id] = nonfed.find(srv);
  }
  const double total_traffic = 1 + 2 + 3 + 4 + 5 + 6;
  const double share = 1746.0 * total_traffic / 8600.0;
  const double e_olt = 194.0 / 8600.0;
  const double fed_olt =
      networking_power(fed, accumulate(fed, in_cell_fed, vms)).second;
  const double non_olt =
      networking_power(nonfed, accumulate(nonfed, in_cell_non, vms)).second;
  CHECK(fed_olt == doctest::Approx(share + e_olt * total_traffic).epsilon(1e-12));
  CHECK(non_olt == doctest::Approx(share + e_olt * total_traffic).epsilon(1e-12));
}
