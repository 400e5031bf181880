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

#include "fogfed/milp.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fogfed/errors.hpp"
#include "fogfed/routing.hpp"

namespace fogfed {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string p_var(vm_id s, std::uint32_t d) {
  return "p_s" + std::to_string(s) + "_d" + std::to_string(d);
}
std::string bd_var(std::uint32_t d) { return "b_d" + std::to_string(d); }
std::string bn_var(node_id m) { return "b_n" + std::to_string(m); }
std::string l_var(node_id m) { return "l_n" + std::to_string(m); }
std::string d_var(node_id m) { return "d_n" + std::to_string(m); }
std::string f_var(vm_id s, std::uint32_t d, node_id m, node_id n) {
  return "f_s" + std::to_string(s) + "_d" + std::to_string(d) + "_" +
         std::to_string(m) + "_" + std::to_string(n);
}

// Linear expression accumulated term by term, written as LP text.
struct expr {
  std::ostringstream os;
  bool first = true;

  void term(double coef, const std::string& var) {
    if (coef == 0) return;
    if (first) {
      if (coef < 0) os << "- ";
      first = false;
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    const double mag = coef < 0 ? -coef : coef;
    if (mag != 1.0) os << num(mag) << " ";
    os << var;
  }
  void constant(double c) {
    if (c == 0) return;
    if (first) {
      os << num(c);
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ") << num(c < 0 ? -c : c);
    }
  }
  std::string str() const { return first ? std::string("0") : os.str(); }
};

struct model_shape {
  std::vector<node_id> tracked;  // nodes with an l variable
  std::vector<std::pair<node_id, node_id>> directed_edges;
};

model_shape shape_of(const topology& topo) {
  model_shape s;
  for (node_id m : topo.cpe_onus()) s.tracked.push_back(m);
  for (node_id m : topo.olts()) s.tracked.push_back(m);
  for (node_id m : topo.servers()) s.tracked.push_back(m);
  std::sort(s.tracked.begin(), s.tracked.end());
  for (const link& l : topo.links()) {
    s.directed_edges.emplace_back(l.a, l.b);
    s.directed_edges.emplace_back(l.b, l.a);
  }
  return s;
}

}  // namespace

std::size_t milp_constraint_count(const topology& topo, std::size_t vm_count) {
  const std::size_t n = vm_count;
  const std::size_t servers = topo.servers().size();
  const std::size_t nodes = topo.nodes().size();
  const std::size_t links = topo.links().size();
  const std::size_t cpes = topo.cpe_onus().size();
  const std::size_t olts = topo.olts().size();
  return n * servers * nodes  // flow conservation
         + n                  // single placement
         + n * servers        // placement -> server activation
         + 3 * servers        // cpu, ram, onu rate
         + 2 * links          // directed link capacities
         + (cpes + olts + servers)  // gathered-traffic definitions
         + (cpes + olts)      // traffic -> activation
         + 3 * olts;          // carried-traffic linearization
}

void export_milp(const topology& topo, const std::vector<vm_request>& vms,
                 const std::filesystem::path& path, const milp_options& opts,
                 const solution* annotate) {
  std::vector<vm_request> sorted = vms;
  std::sort(sorted.begin(), sorted.end(),
            [](const vm_request& a, const vm_request& b) { return a.id < b.id; });

  const device_params& par = topo.params();
  const double w_block = blocking_penalty_weight(topo);
  const double e_onu = energy_per_bit(par.onu.max_power_w, par.onu.idle_power_w,
                                      par.onu.data_rate_gbps);
  const double e_olt = energy_per_bit(par.olt.max_power_w, par.olt.idle_power_w,
                                      par.olt.data_rate_gbps);
  const bool on_off = opts.power.onu_mode == server_onu_mode::on_off;
  const model_shape shape = shape_of(topo);
  const auto& servers = topo.servers();

  double big_m = 0;  // any gathered traffic is bounded by the offered total
  for (const vm_request& vm : sorted) big_m += vm.traffic_gbps;
  if (big_m <= 0) big_m = 1;

  std::vector<node_id> vm_src(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    vm_src[i] = topo.find(sorted[i].source);

  std::ofstream out(path);
  if (!out) throw io_error("cannot write LP file: " + path.string());

  out << "\\ " << to_string(topo.mode()) << " fog placement, " << sorted.size()
      << " VMs, " << servers.size() << " servers\n";
  out << "\\ blocking penalty weight: " << num(w_block) << "\n";
  for (const std::string& line : opts.comments) out << "\\ " << line << "\n";
  for (std::uint32_t d = 0; d < servers.size(); ++d)
    out << "\\ server d" << d << " = " << topo.at(servers[d]).name << "\n";
  if (annotate) {
    out << "\\ optimum: blocked=" << annotate->blocked_count
        << " total_power_w=" << num(annotate->power.total_w)
        << " objective=" << num(w_block * annotate->blocked_count +
                                annotate->power.total_w)
        << "\n";
  }

  // Objective: penalized blocking plus the networking and processing
  // power terms.
  expr obj;
  obj.constant(w_block * static_cast<double>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::uint32_t d = 0; d < servers.size(); ++d)
      obj.term(-w_block + par.server.proportional_power_w() *
                              sorted[i].cpu_mips / par.server.cpu_capacity_mips,
               p_var(sorted[i].id, d));
  for (node_id m : topo.cpe_onus()) {
    obj.term(e_onu, l_var(m));
    obj.term(par.onu.idle_power_w, bn_var(m));
  }
  for (node_id m : topo.olts()) {
    obj.term(e_olt, l_var(m));
    obj.term(par.olt.idle_power_w / par.olt.data_rate_gbps, d_var(m));
  }
  for (std::uint32_t d = 0; d < servers.size(); ++d) {
    double coef = par.server.idle_power_w;
    if (on_off) coef += par.onu.max_power_w;
    obj.term(coef, bd_var(d));
  }
  if (!on_off)
    for (node_id srv : servers)
      obj.term(par.onu.max_power_w / par.onu.data_rate_gbps, l_var(srv));

  out << "Minimize\n obj: " << obj.str() << "\n";
  out << "Subject To\n";

  // Flow conservation per (vm, server, node): out minus in equals the
  // placed demand at the source, its negative at the server, else zero.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const vm_request& vm = sorted[i];
    for (std::uint32_t d = 0; d < servers.size(); ++d) {
      for (const node& nd : topo.nodes()) {
        expr e;
        for (node_id nb : topo.neighbors(nd.id)) {
          e.term(1.0, f_var(vm.id, d, nd.id, nb));
          e.term(-1.0, f_var(vm.id, d, nb, nd.id));
        }
        if (nd.id == vm_src[i]) e.term(-vm.traffic_gbps, p_var(vm.id, d));
        if (nd.id == servers[d]) e.term(vm.traffic_gbps, p_var(vm.id, d));
        out << " fc_s" << vm.id << "_d" << d << "_n" << nd.id << ": " << e.str()
            << " = 0\n";
      }
    }
  }

  for (const vm_request& vm : sorted) {
    expr e;
    for (std::uint32_t d = 0; d < servers.size(); ++d)
      e.term(1.0, p_var(vm.id, d));
    out << " asg_s" << vm.id << ": " << e.str() << " <= 1\n";
  }

  for (const vm_request& vm : sorted)
    for (std::uint32_t d = 0; d < servers.size(); ++d)
      out << " act_s" << vm.id << "_d" << d << ": " << p_var(vm.id, d) << " - "
          << bd_var(d) << " <= 0\n";

  for (std::uint32_t d = 0; d < servers.size(); ++d) {
    expr cpu, ram;
    for (const vm_request& vm : sorted) {
      cpu.term(vm.cpu_mips, p_var(vm.id, d));
      ram.term(vm.ram_mb, p_var(vm.id, d));
    }
    out << " cpu_d" << d << ": " << cpu.str()
        << " <= " << num(par.server.cpu_capacity_mips) << "\n";
    out << " ram_d" << d << ": " << ram.str()
        << " <= " << num(par.server.ram_capacity_mb) << "\n";
  }

  for (std::uint32_t d = 0; d < servers.size(); ++d)
    out << " rate_d" << d << ": " << l_var(servers[d])
        << " <= " << num(par.onu.data_rate_gbps) << "\n";

  for (const auto& [m, n] : shape.directed_edges) {
    expr e;
    for (const vm_request& vm : sorted)
      for (std::uint32_t d = 0; d < servers.size(); ++d)
        e.term(1.0, f_var(vm.id, d, m, n));
    out << " cap_" << m << "_" << n << ": " << e.str()
        << " <= " << num(topo.links()[topo.link_index(m, n)].capacity_gbps)
        << "\n";
  }

  // Gathered traffic: inbound flow plus, at a CPE ONU, the demand it
  // originates.
  for (node_id m : shape.tracked) {
    expr e;
    e.term(1.0, l_var(m));
    for (std::size_t i = 0; i < sorted.size(); ++i)
      for (std::uint32_t d = 0; d < servers.size(); ++d)
        for (node_id nb : topo.neighbors(m))
          e.term(-1.0, f_var(sorted[i].id, d, nb, m));
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (vm_src[i] == m)
        for (std::uint32_t d = 0; d < servers.size(); ++d)
          e.term(-sorted[i].traffic_gbps, p_var(sorted[i].id, d));
    out << " ldef_n" << m << ": " << e.str() << " = 0\n";
  }

  for (node_id m : topo.cpe_onus())
    out << " on_n" << m << ": " << l_var(m) << " - " << num(big_m) << " "
        << bn_var(m) << " <= 0\n";
  for (node_id m : topo.olts())
    out << " on_n" << m << ": " << l_var(m) << " - " << num(big_m) << " "
        << bn_var(m) << " <= 0\n";

  const double b_olt = par.olt.data_rate_gbps;
  for (node_id m : topo.olts()) {
    out << " dlo_n" << m << ": " << d_var(m) << " - " << l_var(m) << " <= 0\n";
    out << " dhi_n" << m << ": " << d_var(m) << " - " << num(b_olt) << " "
        << bn_var(m) << " <= 0\n";
    out << " dlb_n" << m << ": " << l_var(m) << " - " << d_var(m) << " + "
        << num(b_olt) << " " << bn_var(m) << " <= " << num(b_olt) << "\n";
  }

  out << "Binary\n";
  for (const vm_request& vm : sorted)
    for (std::uint32_t d = 0; d < servers.size(); ++d)
      out << " " << p_var(vm.id, d) << "\n";
  for (std::uint32_t d = 0; d < servers.size(); ++d)
    out << " " << bd_var(d) << "\n";
  for (node_id m : topo.cpe_onus()) out << " " << bn_var(m) << "\n";
  for (node_id m : topo.olts()) out << " " << bn_var(m) << "\n";
  out << "End\n";
  if (!out) throw io_error("failed writing LP file: " + path.string());
}

std::map<std::string, double> milp_witness(const topology& topo,
                                           const std::vector<vm_request>& vms,
                                           const solution& sol,
                                           const milp_options& opts) {
  (void)opts;
  std::vector<vm_request> sorted = vms;
  std::sort(sorted.begin(), sorted.end(),
            [](const vm_request& a, const vm_request& b) { return a.id < b.id; });
  const auto& servers = topo.servers();
  const model_shape shape = shape_of(topo);

  std::map<std::string, double> w;
  for (const vm_request& vm : sorted)
    for (std::uint32_t d = 0; d < servers.size(); ++d) {
      w[p_var(vm.id, d)] = 0;
      for (const auto& [m, n] : shape.directed_edges)
        w[f_var(vm.id, d, m, n)] = 0;
    }
  for (std::uint32_t d = 0; d < servers.size(); ++d) w[bd_var(d)] = 0;
  for (node_id m : topo.cpe_onus()) w[bn_var(m)] = 0;
  for (node_id m : topo.olts()) {
    w[bn_var(m)] = 0;
    w[d_var(m)] = 0;
  }
  for (node_id m : shape.tracked) w[l_var(m)] = 0;

  std::map<node_id, std::uint32_t> ordinal_of;
  for (std::uint32_t d = 0; d < servers.size(); ++d) ordinal_of[servers[d]] = d;

  path_index paths(topo);
  for (const vm_request& vm : sorted) {
    auto it = sol.assign.placement.find(vm.id);
    if (it == sol.assign.placement.end() || !it->second) continue;
    const std::uint32_t d = ordinal_of.at(*it->second);
    w[p_var(vm.id, d)] = 1;
    w[bd_var(d)] = 1;
    const std::vector<node_id> walk =
        paths.traffic_walk(topo.find(vm.source), *it->second);
    for (std::size_t k = 0; k + 1 < walk.size(); ++k)
      w[f_var(vm.id, d, walk[k], walk[k + 1])] = vm.traffic_gbps;
  }
  for (node_id m : shape.tracked) w[l_var(m)] = sol.flow.node_traffic_gbps[m];
  for (node_id m : topo.cpe_onus())
    w[bn_var(m)] = sol.flow.node_traffic_gbps[m] > 0 ? 1 : 0;
  for (node_id m : topo.olts()) {
    const double traffic = sol.flow.node_traffic_gbps[m];
    w[bn_var(m)] = traffic > 0 ? 1 : 0;
    w[d_var(m)] = traffic;  // equals gathered traffic when active, zero else
  }
  return w;
}

}  // namespace fogfed
