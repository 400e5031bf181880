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

#include "fogfed/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "fogfed/errors.hpp"

namespace fogfed {

bool lex_less(std::uint32_t blocked_a, double power_a, std::uint32_t blocked_b,
              double power_b, double tolerance_w) {
  if (blocked_a != blocked_b) return blocked_a < blocked_b;
  return power_a < power_b - tolerance_w;
}

double blocking_penalty_weight(const topology& topo) {
  const device_params& p = topo.params();
  double sum = 0.0;
  sum += p.server.max_power_w * static_cast<double>(topo.servers().size());
  sum += p.olt.max_power_w * static_cast<double>(topo.olts().size());
  sum += p.onu.max_power_w *
         static_cast<double>(topo.cpe_onus().size() + topo.servers().size());
  return 10.0 * sum;
}

namespace {

constexpr int kBlockedChoice = -1;

struct walk_info {
  bool routable = false;
  std::vector<std::pair<std::size_t, int>> edges;  // (link index, 0 up / 1 down)
  double min_cap = std::numeric_limits<double>::infinity();
};

// Everything derivable from (topology, vms) once per solve: candidate
// servers per VM, cached traffic walks, power coefficients, symmetry
// classes among identically wired servers.
struct instance {
  const topology* topo = nullptr;
  solver_options opts;
  std::vector<vm_request> vms;  // ascending id
  double w_block = 0.0;

  std::vector<node_id> srv_nodes;           // by ordinal
  std::vector<std::uint32_t> srv_cell;      // cell per ordinal
  std::vector<std::uint32_t> srv_class;     // symmetry class per ordinal
  std::vector<node_id> cpe_nodes;           // all CPE ONUs
  std::vector<std::size_t> vm_cpe;          // per vm: index into cpe_nodes
  std::vector<std::uint32_t> vm_cell;       // cell of the vm's source
  std::vector<walk_info> walks;             // cpe_count x servers
  std::vector<std::vector<std::uint32_t>> vm_cand;  // candidate ordinals asc
  std::vector<double> vm_min_inc;  // minimal placed increment, or w_block

  double e_onu = 0, e_olt = 0, olt_idle_wpg = 0, cpu_wpm = 0;
  double i_s = 0, i_onu = 0, onu_max = 0, onu_rate = 0, c_s = 0, r_s = 0;
  bool on_off = false;
  double extra_server_cost = 0;

  std::size_t server_count() const { return srv_nodes.size(); }
  const walk_info& walk(std::size_t cpe_idx, std::uint32_t ord) const {
    return walks[cpe_idx * srv_nodes.size() + ord];
  }
};

instance build_instance(const topology& topo, const std::vector<vm_request>& in,
                        const solver_options& opts) {
  instance inst;
  inst.topo = &topo;
  inst.opts = opts;
  inst.vms = in;
  std::sort(inst.vms.begin(), inst.vms.end(),
            [](const vm_request& a, const vm_request& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < inst.vms.size(); ++i)
    if (inst.vms[i].id == inst.vms[i + 1].id)
      throw config_error("duplicate VM id " + std::to_string(inst.vms[i].id));
  for (const vm_request& vm : inst.vms)
    if (vm.cpu_mips <= 0 || vm.ram_mb <= 0 || vm.traffic_gbps <= 0)
      throw config_error("VM " + std::to_string(vm.id) +
                         ": cpu, ram and traffic must be positive");

  inst.w_block = blocking_penalty_weight(topo);
  inst.srv_nodes = topo.servers();
  inst.cpe_nodes = topo.cpe_onus();
  for (node_id s : inst.srv_nodes) {
    const auto& cell = topo.at(s).cell;
    if (!cell) throw config_error("server without a cell: " + topo.at(s).name);
    inst.srv_cell.push_back(*cell);
  }

  std::map<node_id, std::size_t> cpe_index;
  for (std::size_t i = 0; i < inst.cpe_nodes.size(); ++i)
    cpe_index[inst.cpe_nodes[i]] = i;

  path_index paths(topo);
  inst.walks.resize(inst.cpe_nodes.size() * inst.srv_nodes.size());
  for (std::size_t ci = 0; ci < inst.cpe_nodes.size(); ++ci) {
    for (std::uint32_t ord = 0; ord < inst.srv_nodes.size(); ++ord) {
      walk_info& wi = inst.walks[ci * inst.srv_nodes.size() + ord];
      const node_id src = inst.cpe_nodes[ci];
      const node_id dst = inst.srv_nodes[ord];
      if (!paths.same_component(src, dst)) continue;
      wi.routable = true;
      const std::vector<node_id> walk = paths.traffic_walk(src, dst);
      for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
        const std::size_t li = topo.link_index(walk[k], walk[k + 1]);
        const int dir = walk[k] == topo.links()[li].a ? 0 : 1;
        wi.edges.emplace_back(li, dir);
        wi.min_cap = std::min(wi.min_cap, topo.links()[li].capacity_gbps);
      }
    }
  }

  // Symmetry classes: servers that any completion may swap without
  // changing feasibility or power. Within a component, when no link can
  // ever saturate (minimum capacity at least the total offered traffic),
  // every server is interchangeable; otherwise only servers of one cell
  // with identical walk capacities from every CPE are.
  double total_traffic = 0;
  for (const vm_request& vm : inst.vms) total_traffic += vm.traffic_gbps;
  double min_link_cap = std::numeric_limits<double>::infinity();
  for (const link& l : topo.links())
    min_link_cap = std::min(min_link_cap, l.capacity_gbps);
  const bool links_never_bind = min_link_cap >= total_traffic;

  std::map<std::tuple<node_id, std::uint32_t, std::vector<double>>,
           std::uint32_t>
      classes;
  for (std::uint32_t ord = 0; ord < inst.srv_nodes.size(); ++ord) {
    std::vector<double> caps;
    std::uint32_t cell_key = 0;
    if (!links_never_bind) {
      cell_key = inst.srv_cell[ord];
      for (std::size_t ci = 0; ci < inst.cpe_nodes.size(); ++ci) {
        const walk_info& wi = inst.walk(ci, ord);
        caps.push_back(wi.routable ? wi.min_cap : -1.0);
      }
    }
    auto key = std::make_tuple(paths.component_olt(inst.srv_nodes[ord]),
                               cell_key, std::move(caps));
    auto [it, inserted] =
        classes.emplace(std::move(key), static_cast<std::uint32_t>(classes.size()));
    inst.srv_class.push_back(it->second);
  }

  const device_params& p = topo.params();
  inst.e_onu = energy_per_bit(p.onu.max_power_w, p.onu.idle_power_w,
                              p.onu.data_rate_gbps);
  inst.e_olt = energy_per_bit(p.olt.max_power_w, p.olt.idle_power_w,
                              p.olt.data_rate_gbps);
  inst.olt_idle_wpg = p.olt.idle_power_w / p.olt.data_rate_gbps;
  inst.cpu_wpm = p.server.proportional_power_w() / p.server.cpu_capacity_mips;
  inst.i_s = p.server.idle_power_w;
  inst.i_onu = p.onu.idle_power_w;
  inst.onu_max = p.onu.max_power_w;
  inst.onu_rate = p.onu.data_rate_gbps;
  inst.c_s = p.server.cpu_capacity_mips;
  inst.r_s = p.server.ram_capacity_mb;
  inst.on_off = opts.power.onu_mode == server_onu_mode::on_off;
  inst.extra_server_cost = inst.i_s + (inst.on_off ? inst.onu_max : 0.0);

  const double traffic_coef = inst.e_onu + inst.e_olt + inst.olt_idle_wpg +
                              (inst.on_off ? 0.0 : inst.onu_max / inst.onu_rate);
  inst.vm_cpe.resize(inst.vms.size());
  inst.vm_cell.resize(inst.vms.size());
  inst.vm_cand.resize(inst.vms.size());
  inst.vm_min_inc.resize(inst.vms.size());
  for (std::size_t vi = 0; vi < inst.vms.size(); ++vi) {
    const vm_request& vm = inst.vms[vi];
    const node_id src = topo.find(vm.source);
    if (topo.at(src).kind != node_kind::cpe_onu)
      throw config_error("VM " + std::to_string(vm.id) + ": source " +
                         vm.source + " is not a CPE ONU");
    inst.vm_cpe[vi] = cpe_index.at(src);
    inst.vm_cell[vi] = topo.at(src).cell.value();
    for (std::uint32_t ord = 0; ord < inst.srv_nodes.size(); ++ord) {
      const walk_info& wi = inst.walk(inst.vm_cpe[vi], ord);
      if (!wi.routable) continue;
      if (vm.cpu_mips > inst.c_s || vm.ram_mb > inst.r_s) continue;
      if (vm.traffic_gbps > inst.onu_rate || vm.traffic_gbps > wi.min_cap)
        continue;
      inst.vm_cand[vi].push_back(ord);
    }
    inst.vm_min_inc[vi] =
        inst.vm_cand[vi].empty()
            ? inst.w_block
            : inst.cpu_wpm * vm.cpu_mips + traffic_coef * vm.traffic_gbps;
  }
  return inst;
}

// Incremental placement state with exact undo (prior values are stored,
// not re-derived, so pops restore bit-identical floats).
struct engine {
  const instance& inst;
  std::vector<double> srv_cpu, srv_ram, srv_traf;
  std::vector<std::uint32_t> srv_cnt;
  std::vector<std::uint32_t> cpe_cnt;
  std::vector<double> edge_flow;  // link index * 2 + direction
  std::vector<std::uint32_t> active_per_cell;
  double power = 0.0;
  std::uint32_t blocked = 0;
  std::uint32_t active_servers = 0;

  struct frame {
    int choice = kBlockedChoice;
    double prev_power = 0;
    double prev_cpu = 0, prev_ram = 0, prev_traf = 0;
    std::uint32_t prev_cnt = 0, prev_cpe_cnt = 0;
    std::vector<std::pair<std::size_t, double>> prev_edges;
  };
  std::vector<frame> frames;
  std::vector<int> choices;  // per vm index (id order)

  explicit engine(const instance& i)
      : inst(i),
        srv_cpu(i.server_count(), 0.0),
        srv_ram(i.server_count(), 0.0),
        srv_traf(i.server_count(), 0.0),
        srv_cnt(i.server_count(), 0),
        cpe_cnt(i.cpe_nodes.size(), 0),
        edge_flow(i.topo->links().size() * 2, 0.0),
        active_per_cell(i.topo->cell_count(), 0),
        frames(i.vms.size()),
        choices(i.vms.size(), kBlockedChoice) {}

  bool fits(std::size_t vi, std::uint32_t ord) const {
    const vm_request& vm = inst.vms[vi];
    if (srv_cpu[ord] + vm.cpu_mips > inst.c_s) return false;
    if (srv_ram[ord] + vm.ram_mb > inst.r_s) return false;
    if (srv_traf[ord] + vm.traffic_gbps > inst.onu_rate) return false;
    const walk_info& wi = inst.walk(inst.vm_cpe[vi], ord);
    for (const auto& [li, dir] : wi.edges) {
      if (edge_flow[li * 2 + dir] + vm.traffic_gbps >
          inst.topo->links()[li].capacity_gbps)
        return false;
    }
    return true;
  }

  double place_delta(std::size_t vi, std::uint32_t ord) const {
    const vm_request& vm = inst.vms[vi];
    double d = inst.cpu_wpm * vm.cpu_mips +
               vm.traffic_gbps * (inst.e_onu + inst.e_olt + inst.olt_idle_wpg);
    if (srv_cnt[ord] == 0) d += inst.i_s;
    if (cpe_cnt[inst.vm_cpe[vi]] == 0) d += inst.i_onu;
    if (inst.on_off) {
      if (srv_cnt[ord] == 0) d += inst.onu_max;
    } else {
      d += inst.onu_max * (vm.traffic_gbps / inst.onu_rate);
    }
    return d;
  }

  void push_place(std::size_t depth, std::size_t vi, std::uint32_t ord) {
    const vm_request& vm = inst.vms[vi];
    frame& f = frames[depth];
    f.choice = static_cast<int>(ord);
    f.prev_power = power;
    f.prev_cpu = srv_cpu[ord];
    f.prev_ram = srv_ram[ord];
    f.prev_traf = srv_traf[ord];
    f.prev_cnt = srv_cnt[ord];
    f.prev_cpe_cnt = cpe_cnt[inst.vm_cpe[vi]];
    f.prev_edges.clear();
    const walk_info& wi = inst.walk(inst.vm_cpe[vi], ord);
    for (const auto& [li, dir] : wi.edges) {
      const std::size_t e = li * 2 + dir;
      f.prev_edges.emplace_back(e, edge_flow[e]);
      edge_flow[e] += vm.traffic_gbps;
    }
    power += place_delta(vi, ord);
    if (srv_cnt[ord] == 0) {
      ++active_servers;
      ++active_per_cell[inst.srv_cell[ord]];
    }
    srv_cpu[ord] += vm.cpu_mips;
    srv_ram[ord] += vm.ram_mb;
    srv_traf[ord] += vm.traffic_gbps;
    ++srv_cnt[ord];
    ++cpe_cnt[inst.vm_cpe[vi]];
    choices[vi] = static_cast<int>(ord);
  }

  void push_block(std::size_t depth, std::size_t vi) {
    frame& f = frames[depth];
    f.choice = kBlockedChoice;
    f.prev_power = power;
    f.prev_edges.clear();
    ++blocked;
    choices[vi] = kBlockedChoice;
  }

  void pop(std::size_t depth, std::size_t vi) {
    frame& f = frames[depth];
    if (f.choice == kBlockedChoice) {
      --blocked;
    } else {
      const std::uint32_t ord = static_cast<std::uint32_t>(f.choice);
      srv_cpu[ord] = f.prev_cpu;
      srv_ram[ord] = f.prev_ram;
      srv_traf[ord] = f.prev_traf;
      srv_cnt[ord] = f.prev_cnt;
      cpe_cnt[inst.vm_cpe[vi]] = f.prev_cpe_cnt;
      if (f.prev_cnt == 0) {
        --active_servers;
        --active_per_cell[inst.srv_cell[ord]];
      }
      for (const auto& [e, prev] : f.prev_edges) edge_flow[e] = prev;
      power = f.prev_power;
    }
    choices[vi] = kBlockedChoice;
  }

  double objective() const { return inst.w_block * blocked + power; }
};

// Per-depth aggregates over the remaining placeable VMs, for the bound.
// Demands above a half, third or quarter of a capacity pack at most 1, 2
// or 3 per server, so their counts lower-bound the server count where
// the aggregate-capacity ratio is too optimistic.
struct dim_sums {
  double total = 0;
  std::uint32_t over_half = 0, over_third = 0, over_quarter = 0;

  void add(double demand, double cap) {
    total += demand;
    if (demand > cap / 2) ++over_half;
    if (demand > cap / 3) ++over_third;
    if (demand > cap / 4) ++over_quarter;
  }
};

struct depth_sums {
  dim_sums cpu, ram, traf;

  void add(const instance& inst, const vm_request& vm) {
    cpu.add(vm.cpu_mips, inst.c_s);
    ram.add(vm.ram_mb, inst.r_s);
    traf.add(vm.traffic_gbps, inst.onu_rate);
  }
};

// Processing-order context with suffix aggregates for the bound.
struct order_ctx {
  std::vector<std::size_t> order;   // vm indices in processing order
  std::vector<double> suf_min_inc;  // size n+1
  std::vector<depth_sums> suf;      // global aggregates
  std::vector<std::vector<depth_sums>> suf_cell;          // per cell (non-fed)
  std::vector<std::vector<std::uint32_t>> suf_cpe_count;  // placeable VMs per cpe
  bool per_cell = false;
};

order_ctx build_order_ctx(const instance& inst, std::vector<std::size_t> order) {
  const std::size_t n = order.size();
  const std::uint32_t cells = inst.topo->cell_count();
  order_ctx ctx;
  ctx.order = std::move(order);
  ctx.per_cell = inst.topo->mode() == fog_mode::non_federated;
  ctx.suf_min_inc.assign(n + 1, 0.0);
  ctx.suf.assign(n + 1, {});
  ctx.suf_cpe_count.assign(n + 1,
                           std::vector<std::uint32_t>(inst.cpe_nodes.size(), 0));
  if (ctx.per_cell)
    ctx.suf_cell.assign(n + 1, std::vector<depth_sums>(cells));
  for (std::size_t d = n; d-- > 0;) {
    const std::size_t vi = ctx.order[d];
    const vm_request& vm = inst.vms[vi];
    ctx.suf_min_inc[d] = ctx.suf_min_inc[d + 1] + inst.vm_min_inc[vi];
    ctx.suf[d] = ctx.suf[d + 1];
    ctx.suf_cpe_count[d] = ctx.suf_cpe_count[d + 1];
    if (ctx.per_cell) ctx.suf_cell[d] = ctx.suf_cell[d + 1];
    if (inst.vm_cand[vi].empty()) continue;  // forced blocked; in min_inc
    ctx.suf[d].add(inst, vm);
    ++ctx.suf_cpe_count[d][inst.vm_cpe[vi]];
    if (ctx.per_cell) ctx.suf_cell[d][inst.vm_cell[vi]].add(inst, vm);
  }
  return ctx;
}

std::uint32_t needed_servers(double demand, double free_on_active, double cap) {
  const double rem = demand - free_on_active;
  if (rem <= 0 || cap <= 0) return 0;
  return static_cast<std::uint32_t>(std::ceil(rem / cap - 1e-9));
}

std::uint32_t sub_sat(std::uint32_t a, std::uint32_t b) {
  return a > b ? a - b : 0;
}

std::uint32_t ceil_div(std::uint32_t a, std::uint32_t b) {
  return a == 0 ? 0 : (a + b - 1) / b;
}

// Fewest servers any completion must newly activate for a server group.
// Active servers may absorb 1/2/3 of the over-half/third/quarter demands
// when at least that fraction of a capacity is still free; new servers
// take at most 1/2/3 of them respectively.
struct dim_state {
  double free_total = 0;
  std::uint32_t fit_half = 0, fit_third = 0, fit_quarter = 0;

  void add_active(double free_cap, double cap) {
    free_total += free_cap;
    if (free_cap > cap / 2) ++fit_half;
    if (free_cap > cap / 3) ++fit_third;
    if (free_cap > cap / 4) ++fit_quarter;
  }

  std::uint32_t needed(const dim_sums& rem, double cap) const {
    std::uint32_t k = needed_servers(rem.total, free_total, cap);
    k = std::max(k, sub_sat(rem.over_half, fit_half));
    k = std::max(k, ceil_div(sub_sat(rem.over_third, 2 * fit_third), 2));
    k = std::max(k, ceil_div(sub_sat(rem.over_quarter, 3 * fit_quarter), 3));
    return k;
  }
};

struct group_state {
  dim_state cpu, ram, traf;
  std::uint32_t idle = 0;
};

std::uint32_t extra_servers(const instance& inst, const group_state& g,
                            const depth_sums& rem) {
  const std::uint32_t k = std::max({g.cpu.needed(rem.cpu, inst.c_s),
                                    g.ram.needed(rem.ram, inst.r_s),
                                    g.traf.needed(rem.traf, inst.onu_rate)});
  return std::min(k, g.idle);
}

// Admissible lower bound on the scalarized objective over all
// completions from `depth`: current value, plus each remaining VM's
// minimal increment, plus idle power for servers that must still be
// activated and for CPE ONUs that must still wake up.
double bound(const engine& eng, const order_ctx& ctx, std::size_t depth) {
  const instance& inst = eng.inst;
  double lb = eng.objective() + ctx.suf_min_inc[depth];

  for (std::size_t ci = 0; ci < inst.cpe_nodes.size(); ++ci)
    if (eng.cpe_cnt[ci] == 0 && ctx.suf_cpe_count[depth][ci] > 0)
      lb += inst.i_onu;

  auto fold_active = [&](group_state& g, std::uint32_t o) {
    if (eng.srv_cnt[o] == 0) {
      ++g.idle;
      return;
    }
    g.cpu.add_active(inst.c_s - eng.srv_cpu[o], inst.c_s);
    g.ram.add_active(inst.r_s - eng.srv_ram[o], inst.r_s);
    g.traf.add_active(inst.onu_rate - eng.srv_traf[o], inst.onu_rate);
  };

  std::uint32_t extra = 0;
  if (!ctx.per_cell) {
    group_state g;
    for (std::uint32_t o = 0; o < inst.server_count(); ++o) fold_active(g, o);
    extra = extra_servers(inst, g, ctx.suf[depth]);
  } else {
    const std::uint32_t cells = inst.topo->cell_count();
    std::vector<group_state> groups(cells);
    for (std::uint32_t o = 0; o < inst.server_count(); ++o)
      fold_active(groups[inst.srv_cell[o]], o);
    for (std::uint32_t c = 0; c < cells; ++c)
      extra += extra_servers(inst, groups[c], ctx.suf_cell[depth][c]);
  }
  return lb + static_cast<double>(extra) * inst.extra_server_cost;
}

// Among a VM's candidate servers that are still empty, only the lowest
// ordinal of each symmetry class is worth branching on.
bool symmetric_skip(const engine& eng, const std::vector<std::uint32_t>& cand,
                    std::uint32_t ord) {
  if (eng.srv_cnt[ord] != 0) return false;
  const std::uint32_t cls = eng.inst.srv_class[ord];
  for (std::uint32_t other : cand) {
    if (other >= ord) break;
    if (eng.srv_cnt[other] == 0 && eng.inst.srv_class[other] == cls) return true;
  }
  return false;
}

struct incumbent {
  bool set = false;
  std::uint32_t blocked = 0;
  double power = 0;
  std::vector<int> choices;
};

// Phase 1: find the optimal (blocked, power) objective fast. VMs in
// decreasing-CPU order, feasible servers cheapest-first, then Blocked.
struct phase1_search {
  const instance& inst;
  engine& eng;
  const order_ctx& ctx;
  incumbent best;
  std::uint64_t nodes = 0;

  bool prunable(std::size_t depth) const {
    if (!best.set) return false;
    const double inc_j = inst.w_block * best.blocked + best.power;
    return bound(eng, ctx, depth) >= inc_j - inst.opts.power_tolerance_w;
  }

  void dfs(std::size_t depth) {
    ++nodes;
    if (depth == ctx.order.size()) {
      if (!best.set || lex_less(eng.blocked, eng.power, best.blocked,
                                best.power, inst.opts.power_tolerance_w)) {
        best.set = true;
        best.blocked = eng.blocked;
        best.power = eng.power;
        best.choices = eng.choices;
      }
      return;
    }
    const std::size_t vi = ctx.order[depth];
    const auto& cand = inst.vm_cand[vi];
    std::vector<std::pair<double, std::uint32_t>> opts_sorted;
    opts_sorted.reserve(cand.size());
    for (std::uint32_t ord : cand) {
      if (symmetric_skip(eng, cand, ord)) continue;
      if (!eng.fits(vi, ord)) continue;
      opts_sorted.emplace_back(eng.place_delta(vi, ord), ord);
    }
    std::sort(opts_sorted.begin(), opts_sorted.end());
    for (const auto& [delta, ord] : opts_sorted) {
      eng.push_place(depth, vi, ord);
      if (!prunable(depth + 1)) dfs(depth + 1);
      eng.pop(depth, vi);
    }
    eng.push_block(depth, vi);
    if (!prunable(depth + 1)) dfs(depth + 1);
    eng.pop(depth, vi);
  }
};

// Phase 2: recover the tie-break-minimal assignment achieving the proven
// optimum — lexicographically smallest placement vector under (VM id
// ascending, server ordinal ascending, Blocked last). Each VM is fixed
// in id order to its smallest option that still completes to the target;
// completion checks search the remaining VMs big-first like phase 1.
struct tiebreak_fixing {
  const instance& inst;
  engine& eng;
  double target_j;
  std::uint64_t nodes = 0;

  bool complete(const order_ctx& ctx, std::size_t pos, std::size_t depth0) {
    ++nodes;
    if (pos == ctx.order.size()) return eng.objective() <= target_j;
    const std::size_t vi = ctx.order[pos];
    const auto& cand = inst.vm_cand[vi];
    std::vector<std::pair<double, std::uint32_t>> opts;
    opts.reserve(cand.size());
    for (std::uint32_t ord : cand) {
      if (symmetric_skip(eng, cand, ord)) continue;
      if (!eng.fits(vi, ord)) continue;
      opts.emplace_back(eng.place_delta(vi, ord), ord);
    }
    std::sort(opts.begin(), opts.end());
    for (const auto& [delta, ord] : opts) {
      (void)delta;
      eng.push_place(depth0 + pos, vi, ord);
      const bool ok = bound(eng, ctx, pos + 1) <= target_j &&
                      complete(ctx, pos + 1, depth0);
      eng.pop(depth0 + pos, vi);
      if (ok) return true;
    }
    eng.push_block(depth0 + pos, vi);
    const bool ok = bound(eng, ctx, pos + 1) <= target_j &&
                    complete(ctx, pos + 1, depth0);
    eng.pop(depth0 + pos, vi);
    return ok;
  }

  std::vector<int> run() {
    const std::size_t n = inst.vms.size();
    for (std::size_t vi = 0; vi < n; ++vi) {
      std::vector<std::size_t> rem;
      for (std::size_t j = vi + 1; j < n; ++j) rem.push_back(j);
      std::sort(rem.begin(), rem.end(), [&](std::size_t a, std::size_t b) {
        if (inst.vms[a].cpu_mips != inst.vms[b].cpu_mips)
          return inst.vms[a].cpu_mips > inst.vms[b].cpu_mips;
        return inst.vms[a].id < inst.vms[b].id;
      });
      const order_ctx ctx = build_order_ctx(inst, rem);
      bool fixed = false;
      const auto& cand = inst.vm_cand[vi];
      for (std::uint32_t ord : cand) {
        if (symmetric_skip(eng, cand, ord)) continue;
        if (!eng.fits(vi, ord)) continue;
        eng.push_place(vi, vi, ord);
        ++nodes;
        if (bound(eng, ctx, 0) <= target_j && complete(ctx, 0, vi + 1)) {
          fixed = true;
          break;
        }
        eng.pop(vi, vi);
      }
      if (!fixed) {
        eng.push_block(vi, vi);
        ++nodes;
        if (!(bound(eng, ctx, 0) <= target_j && complete(ctx, 0, vi + 1)))
          throw std::logic_error("tie-break pass lost the proven optimum");
      }
    }
    return eng.choices;
  }
};

solution finish_solution(const topology& topo, const instance& inst,
                         const std::vector<int>& choices,
                         std::uint64_t nodes) {
  solution sol;
  for (std::size_t vi = 0; vi < inst.vms.size(); ++vi) {
    if (choices[vi] == kBlockedChoice)
      sol.assign.placement[inst.vms[vi].id] = std::nullopt;
    else
      sol.assign.placement[inst.vms[vi].id] =
          inst.srv_nodes[static_cast<std::uint32_t>(choices[vi])];
  }
  sol.blocked_count = sol.assign.blocked_count();
  sol.flow = accumulate(topo, sol.assign, inst.vms);
  sol.power = total_power(topo, sol.assign, inst.vms, inst.opts.power);
  sol.proven_optimal = true;
  sol.nodes_explored = nodes;
  return sol;
}

}  // namespace

solution solve_exact(const topology& topo, const std::vector<vm_request>& vms,
                     const solver_options& opts) {
  const instance inst = build_instance(topo, vms, opts);
  const std::size_t n = inst.vms.size();
  if (n == 0) return finish_solution(topo, inst, {}, 0);

  std::vector<std::size_t> order1(n);
  for (std::size_t i = 0; i < n; ++i) order1[i] = i;
  std::sort(order1.begin(), order1.end(), [&](std::size_t a, std::size_t b) {
    if (inst.vms[a].cpu_mips != inst.vms[b].cpu_mips)
      return inst.vms[a].cpu_mips > inst.vms[b].cpu_mips;
    return inst.vms[a].id < inst.vms[b].id;
  });
  const order_ctx ctx1 = build_order_ctx(inst, order1);
  engine eng(inst);
  phase1_search p1{inst, eng, ctx1, {}, 0};
  p1.dfs(0);
  if (std::getenv("FOGFED_DEBUG"))
    std::fprintf(stderr, "phase1: nodes=%llu blocked=%u power=%.6f\n",
                 (unsigned long long)p1.nodes, p1.best.blocked, p1.best.power);

  tiebreak_fixing p2{inst, eng,
                     inst.w_block * p1.best.blocked + p1.best.power +
                         opts.power_tolerance_w,
                     0};
  const std::vector<int> choices = p2.run();
  if (std::getenv("FOGFED_DEBUG"))
    std::fprintf(stderr, "phase2: nodes=%llu\n", (unsigned long long)p2.nodes);
  return finish_solution(topo, inst, choices, p1.nodes + p2.nodes);
}

solution solve_bruteforce(const topology& topo,
                          const std::vector<vm_request>& vms,
                          const solver_options& opts) {
  const instance inst = build_instance(topo, vms, opts);
  const std::size_t n = inst.vms.size();
  const std::uint64_t branching = inst.server_count() + 1;

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > opts.bruteforce_cap / branching) {
      total = opts.bruteforce_cap + 1;
      break;
    }
    total *= branching;
  }
  if (total > opts.bruteforce_cap)
    throw too_large_error("instance needs " + std::to_string(branching) + "^" +
                          std::to_string(n) + " candidates, above the cap of " +
                          std::to_string(opts.bruteforce_cap));
  if (n == 0) return finish_solution(topo, inst, {}, 1);

  // leaves_below[d] = branching^(n-d), to account skipped subtrees.
  std::vector<std::uint64_t> leaves_below(n + 1, 1);
  for (std::size_t d = n; d-- > 0;) leaves_below[d] = leaves_below[d + 1] * branching;

  engine eng(inst);
  incumbent best;
  std::uint64_t leaves = 0;

  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      ++leaves;
      if (!best.set || lex_less(eng.blocked, eng.power, best.blocked, best.power,
                                inst.opts.power_tolerance_w)) {
        best.set = true;
        best.blocked = eng.blocked;
        best.power = eng.power;
        best.choices = eng.choices;
      }
      return;
    }
    const std::size_t vi = depth;  // id order
    for (std::uint32_t ord = 0; ord < inst.server_count(); ++ord) {
      const walk_info& wi = inst.walk(inst.vm_cpe[vi], ord);
      const vm_request& vm = inst.vms[vi];
      const bool static_ok = wi.routable && vm.cpu_mips <= inst.c_s &&
                             vm.ram_mb <= inst.r_s &&
                             vm.traffic_gbps <= inst.onu_rate &&
                             vm.traffic_gbps <= wi.min_cap;
      if (!static_ok || !eng.fits(vi, ord)) {
        leaves += leaves_below[depth + 1];  // whole subtree stays infeasible
        continue;
      }
      eng.push_place(depth, vi, ord);
      self(self, depth + 1);
      eng.pop(depth, vi);
    }
    eng.push_block(depth, vi);
    self(self, depth + 1);
    eng.pop(depth, vi);
  };
  dfs(dfs, 0);

  solution sol = finish_solution(topo, inst, best.choices, leaves);
  return sol;
}

std::vector<violation> feasible(const topology& topo,
                                const std::vector<vm_request>& vms,
                                const assignment& asg) {
  std::vector<violation> out;
  std::set<vm_id> vm_ids;
  for (const vm_request& vm : vms) {
    if (!vm_ids.insert(vm.id).second)
      throw config_error("duplicate VM id " + std::to_string(vm.id));
  }
  for (const auto& [id, srv] : asg.placement) {
    if (!vm_ids.count(id)) {
      out.push_back({violation_kind::invalid_placement,
                     "vm" + std::to_string(id), 0,
                     "placement refers to an unknown VM"});
      continue;
    }
    if (srv) {
      if (!topo.contains(*srv) || topo.at(*srv).kind != node_kind::server)
        out.push_back({violation_kind::invalid_placement,
                       "vm" + std::to_string(id), 0,
                       "placement target is not a server"});
    }
  }
  for (vm_id id : vm_ids) {
    if (!asg.placement.count(id))
      out.push_back({violation_kind::invalid_placement,
                     "vm" + std::to_string(id), 0,
                     "VM missing from the placement"});
  }
  if (!out.empty()) return out;

  // Per-server CPU / RAM sums.
  std::map<node_id, double> cpu_sum, ram_sum;
  path_index paths(topo);
  assignment routable_subset;
  for (const vm_request& vm : vms) {
    auto it = asg.placement.find(vm.id);
    if (it == asg.placement.end() || !it->second) continue;
    const node_id srv = *it->second;
    cpu_sum[srv] += vm.cpu_mips;
    ram_sum[srv] += vm.ram_mb;
    const node_id src = topo.find(vm.source);
    if (!paths.same_component(src, srv)) {
      out.push_back({violation_kind::unroutable, "vm" + std::to_string(vm.id),
                     0,
                     vm.source + " cannot reach " + topo.at(srv).name});
      continue;
    }
    routable_subset.placement[vm.id] = srv;
  }
  const server_params& sp = topo.params().server;
  for (const auto& [srv, sum] : cpu_sum) {
    if (sum > sp.cpu_capacity_mips)
      out.push_back({violation_kind::cpu_capacity, topo.at(srv).name,
                     sum - sp.cpu_capacity_mips, "CPU demand exceeds capacity"});
  }
  for (const auto& [srv, sum] : ram_sum) {
    if (sum > sp.ram_capacity_mb)
      out.push_back({violation_kind::ram_capacity, topo.at(srv).name,
                     sum - sp.ram_capacity_mb, "RAM demand exceeds capacity"});
  }
  const flow_state flow = accumulate(topo, routable_subset, vms);
  const std::vector<violation> caps = check_capacities(topo, flow);
  out.insert(out.end(), caps.begin(), caps.end());
  return out;
}

}  // namespace fogfed
