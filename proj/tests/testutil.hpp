#pragma once

// Shared test helpers: a compact instance builder, random valid
// chromosomes, and an independent brute-force feasibility check used to
// cross-examine the validator.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/evolve.hpp"
#include "rmtshop/model.hpp"
#include "rmtshop/rng.hpp"

namespace rmtshop::test {

// Incremental instance builder. Machines default to one configuration and
// the full worker set, setups and moving times default to zero, energy
// rates default to `default_rate` unless overridden per (machine, worker).
class InstanceBuilder {
 public:
  InstanceBuilder(int machines, int workers) {
    inst_.num_machines = machines;
    inst_.num_workers = workers;
    inst_.machine_configs.assign(static_cast<std::size_t>(machines), 1);
    std::vector<int> all(static_cast<std::size_t>(workers));
    std::iota(all.begin(), all.end(), 0);
    inst_.machine_workers.assign(static_cast<std::size_t>(machines), all);
    inst_.moving.assign(static_cast<std::size_t>(machines),
                        std::vector<Time>(static_cast<std::size_t>(machines), 0));
    inst_.rest_factor = {1, 10};
  }

  InstanceBuilder& configs(int machine, int n) {
    inst_.machine_configs[static_cast<std::size_t>(machine)] = n;
    return *this;
  }

  InstanceBuilder& workers_on(int machine, std::vector<int> ws) {
    std::sort(ws.begin(), ws.end());
    inst_.machine_workers[static_cast<std::size_t>(machine)] = std::move(ws);
    return *this;
  }

  InstanceBuilder& setup(int machine, int c_from, int c_to, Time t) {
    setup_override_.push_back({machine, c_from, c_to, t});
    return *this;
  }

  InstanceBuilder& moving(int k1, int k2, Time t) {
    inst_.moving[static_cast<std::size_t>(k1)][static_cast<std::size_t>(k2)] = t;
    inst_.moving[static_cast<std::size_t>(k2)][static_cast<std::size_t>(k1)] = t;
    return *this;
  }

  InstanceBuilder& aux(Energy ae) {
    inst_.aux_energy = ae;
    return *this;
  }

  InstanceBuilder& rest(long long num, long long den) {
    inst_.rest_factor = {num, den};
    return *this;
  }

  InstanceBuilder& job() {
    inst_.jobs.push_back({});
    return *this;
  }

  InstanceBuilder& op(std::vector<Mode> modes, Energy default_rate = 1) {
    Operation o;
    std::sort(modes.begin(), modes.end());
    o.modes = std::move(modes);
    pending_rates_.push_back(default_rate);
    inst_.jobs.back().ops.push_back(std::move(o));
    op_refs_.push_back({static_cast<int>(inst_.jobs.size()) - 1,
                        static_cast<int>(inst_.jobs.back().ops.size()) - 1});
    return *this;
  }

  // Overrides the energy rate of the most recently added operation.
  InstanceBuilder& energy(int machine, int worker, Energy rate) {
    energy_override_.push_back(
        {static_cast<int>(op_refs_.size()) - 1, machine, worker, rate});
    return *this;
  }

  Instance build() {
    Instance inst = inst_;
    inst.num_jobs = static_cast<int>(inst.jobs.size());
    for (int k = 0; k < inst.num_machines; ++k) {
      int nc = inst.machine_configs[static_cast<std::size_t>(k)];
      inst.setup.push_back(std::vector<std::vector<Time>>(
          static_cast<std::size_t>(nc),
          std::vector<Time>(static_cast<std::size_t>(nc), 0)));
    }
    for (const auto& [k, c1, c2, t] : setup_override_)
      inst.setup[static_cast<std::size_t>(k)][static_cast<std::size_t>(c1)]
                [static_cast<std::size_t>(c2)] = t;

    for (std::size_t x = 0; x < op_refs_.size(); ++x) {
      auto [i, j] = op_refs_[x];
      Operation& o = inst.jobs[static_cast<std::size_t>(i)].ops[static_cast<std::size_t>(j)];
      std::vector<int> machines;
      for (const Mode& m : o.modes) machines.push_back(m.machine);
      std::sort(machines.begin(), machines.end());
      machines.erase(std::unique(machines.begin(), machines.end()), machines.end());
      for (int k : machines)
        for (int w : inst.machine_workers[static_cast<std::size_t>(k)]) {
          Energy rate = pending_rates_[x];
          for (const auto& [op_idx, mk, mw, r] : energy_override_)
            if (op_idx == static_cast<int>(x) && mk == k && mw == w) rate = r;
          o.energy.push_back({k, w, rate});
        }
    }
    validate_instance(inst);
    return inst;
  }

 private:
  Instance inst_;
  std::vector<std::pair<int, int>> op_refs_;
  std::vector<Energy> pending_rates_;
  std::vector<std::tuple<int, int, int, Time>> setup_override_;
  std::vector<std::tuple<int, int, int, Energy>> energy_override_;
};

inline Chromosome random_chromosome(const Instance& inst, Rng& rng) {
  Chromosome c;
  for (int i = 0; i < inst.num_jobs; ++i)
    for (std::size_t j = 0; j < inst.jobs[static_cast<std::size_t>(i)].ops.size(); ++j)
      c.os.push_back(i);
  rng.shuffle(c.os);
  for (int p = 0; p < inst.total_ops(); ++p) {
    auto triples = eligible_triples(inst, op_from_index(inst, p));
    const Triple& t = triples[static_cast<std::size_t>(rng.below(triples.size()))];
    c.cs.emplace_back(t.machine, t.config);
    c.ws.push_back(t.worker);
  }
  return c;
}

// Literal pairwise evaluation of the schedule constraints, written without
// the validator's sequence machinery: completion arithmetic, eligibility,
// job precedence, machine exclusivity with setups between start-adjacent
// pairs, worker exclusivity with move/rest gaps.
inline bool feasible_brute(const Instance& inst, const Schedule& s) {
  const int total = inst.total_ops();
  if (static_cast<int>(s.assign.size()) != total) return false;
  const auto off = job_offsets(inst);
  for (int p = 0; p < total; ++p) {
    const OpAssignment& a = s.assign[static_cast<std::size_t>(p)];
    OpId id = op_from_index(inst, p);
    if (a.machine < 0 || a.start < 0) return false;
    if (!is_eligible(inst, id, a.machine, a.config, a.worker)) return false;
    const Mode* m = find_mode(inst.op(id), a.machine, a.config);
    if (a.completion != a.start + m->proc_time) return false;
  }
  for (int i = 0; i < inst.num_jobs; ++i) {
    int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    for (int j = 1; j < ni; ++j)
      if (s.assign[static_cast<std::size_t>(off[static_cast<std::size_t>(i)] + j)].start <
          s.assign[static_cast<std::size_t>(off[static_cast<std::size_t>(i)] + j - 1)].completion)
        return false;
  }
  auto adjacent = [&](int p, int q, auto same_resource) {
    // q is the next operation after p on the shared resource
    if (s.assign[static_cast<std::size_t>(p)].start >=
        s.assign[static_cast<std::size_t>(q)].start)
      return false;
    for (int r = 0; r < total; ++r) {
      if (r == p || r == q || !same_resource(r)) continue;
      Time t = s.assign[static_cast<std::size_t>(r)].start;
      if (t > s.assign[static_cast<std::size_t>(p)].start &&
          t < s.assign[static_cast<std::size_t>(q)].start)
        return false;
    }
    return true;
  };
  for (int p = 0; p < total; ++p)
    for (int q = 0; q < total; ++q) {
      if (p == q) continue;
      const OpAssignment& ap = s.assign[static_cast<std::size_t>(p)];
      const OpAssignment& aq = s.assign[static_cast<std::size_t>(q)];
      if (ap.machine == aq.machine) {
        if (ap.start < aq.completion && aq.start < ap.completion) return false;
        auto on_k = [&](int r) {
          return s.assign[static_cast<std::size_t>(r)].machine == ap.machine;
        };
        if (adjacent(p, q, on_k)) {
          Time se = inst.setup[static_cast<std::size_t>(ap.machine)]
                              [static_cast<std::size_t>(ap.config)]
                              [static_cast<std::size_t>(aq.config)];
          if (aq.start < ap.completion + se) return false;
        }
      }
      if (ap.worker == aq.worker) {
        if (ap.start < aq.completion && aq.start < ap.completion) return false;
        auto on_l = [&](int r) {
          return s.assign[static_cast<std::size_t>(r)].worker == ap.worker;
        };
        if (adjacent(p, q, on_l)) {
          const Mode* m = find_mode(inst.op(op_from_index(inst, p)), ap.machine, ap.config);
          Time gap = ap.machine != aq.machine
                         ? inst.moving[static_cast<std::size_t>(ap.machine)]
                                      [static_cast<std::size_t>(aq.machine)]
                         : rest_time(inst.rest_factor, m->proc_time);
          if (aq.start < ap.completion + gap) return false;
        }
      }
    }
  return true;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string fixture_path(const std::string& name) {
#ifdef RMTSHOP_FIXTURE_DIR
  return std::string(RMTSHOP_FIXTURE_DIR) + "/" + name;
#else
  return "tests/fixtures/" + name;
#endif
}

}  // namespace rmtshop::test
