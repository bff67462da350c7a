#pragma once

// Domain types for the reconfigurable-machine job shop: instances, jobs,
// operations, eligible (machine, configuration) modes, per-worker energy
// rates, and the canonical job-major operation indexing used by all
// chromosome layers.
//
// All ids are 0-based in memory; the text formats are 1-based.
// Times and energies are integers throughout, so tests and the enumeration
// oracle can compare objectives exactly.

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmtshop {

using Time = long long;
using Energy = long long;

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid chromosome handed to the decoder.
struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational in [0, 1]; kept in lowest terms.
struct Ratio {
  long long num = 1;
  long long den = 10;

  Ratio normalized() const {
    long long g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
  }
  bool operator==(const Ratio&) const = default;
};

// An eligible (machine, configuration) pair with its processing time.
struct Mode {
  int machine = 0;
  int config = 0;
  Time proc_time = 1;
  auto operator<=>(const Mode&) const = default;
};

struct EnergyRate {
  int machine = 0;
  int worker = 0;
  Energy rate = 0;
  auto operator<=>(const EnergyRate&) const = default;
};

struct Operation {
  std::vector<Mode> modes;         // nonempty, sorted by (machine, config)
  std::vector<EnergyRate> energy;  // one entry per (mode machine, worker in W_k)
  bool operator==(const Operation&) const = default;
};

struct Job {
  std::vector<Operation> ops;
  bool operator==(const Job&) const = default;
};

struct OpId {
  int job = 0;
  int op = 0;
  auto operator<=>(const OpId&) const = default;
};

struct Instance {
  int num_jobs = 0;
  int num_machines = 0;
  int num_workers = 0;
  std::vector<Job> jobs;
  std::vector<int> machine_configs;               // |C_k| per machine
  std::vector<std::vector<int>> machine_workers;  // W_k, sorted ascending
  std::vector<std::vector<std::vector<Time>>> setup;  // [k][c_from][c_to]
  std::vector<std::vector<Time>> moving;              // [k][k'], symmetric
  Energy aux_energy = 0;
  Ratio rest_factor{1, 10};

  bool operator==(const Instance&) const = default;

  int total_ops() const {
    int n = 0;
    for (const auto& j : jobs) n += static_cast<int>(j.ops.size());
    return n;
  }

  const Operation& op(OpId id) const {
    return jobs.at(static_cast<std::size_t>(id.job))
        .ops.at(static_cast<std::size_t>(id.op));
  }

  bool has_worker(int machine, int worker) const {
    const auto& w = machine_workers[static_cast<std::size_t>(machine)];
    return std::binary_search(w.begin(), w.end(), worker);
  }
};

inline void check_op_id(const Instance& inst, OpId id) {
  if (id.job < 0 || id.job >= inst.num_jobs)
    throw std::out_of_range("job index out of range: " +
                            std::to_string(id.job));
  const auto& job = inst.jobs[static_cast<std::size_t>(id.job)];
  if (id.op < 0 || id.op >= static_cast<int>(job.ops.size()))
    throw std::out_of_range("operation index out of range: job " +
                            std::to_string(id.job) + ", op " +
                            std::to_string(id.op));
}

// Position of an operation in job-major order; the CS and WS chromosome
// layers are indexed by this.
inline int canonical_index(const Instance& inst, OpId id) {
  check_op_id(inst, id);
  int pos = 0;
  for (int i = 0; i < id.job; ++i)
    pos += static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
  return pos + id.op;
}

inline OpId op_from_index(const Instance& inst, int pos) {
  if (pos < 0)
    throw std::out_of_range("canonical position out of range: " +
                            std::to_string(pos));
  int p = pos;
  for (int i = 0; i < inst.num_jobs; ++i) {
    int n = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    if (p < n) return {i, p};
    p -= n;
  }
  throw std::out_of_range("canonical position out of range: " +
                          std::to_string(pos));
}

// Per-job canonical offsets; offsets[i] is the position of (i, 0).
inline std::vector<int> job_offsets(const Instance& inst) {
  std::vector<int> off(static_cast<std::size_t>(inst.num_jobs) + 1, 0);
  for (int i = 0; i < inst.num_jobs; ++i)
    off[static_cast<std::size_t>(i) + 1] =
        off[static_cast<std::size_t>(i)] +
        static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
  return off;
}

// True iff (machine, config) is a mode of the operation and the worker is
// qualified for that machine.
inline bool is_eligible(const Instance& inst, OpId id, int machine, int config,
                        int worker) {
  check_op_id(inst, id);
  if (machine < 0 || machine >= inst.num_machines || worker < 0 ||
      worker >= inst.num_workers)
    return false;
  const Operation& op = inst.op(id);
  bool mode_found = false;
  for (const Mode& m : op.modes)
    if (m.machine == machine && m.config == config) {
      mode_found = true;
      break;
    }
  return mode_found && inst.has_worker(machine, worker);
}

inline const Mode* find_mode(const Operation& op, int machine, int config) {
  for (const Mode& m : op.modes)
    if (m.machine == machine && m.config == config) return &m;
  return nullptr;
}

// Rest a worker owes after an operation: ceil(rest_factor * proc_time).
// Worker-independent; the worker dependence of the model sits in the
// energy rates, not in durations.
inline Time rest_time(const Instance& inst, OpId id, const Mode& mode) {
  check_op_id(inst, id);
  if (!find_mode(inst.op(id), mode.machine, mode.config))
    throw std::invalid_argument("mode does not belong to the operation");
  const Ratio r = inst.rest_factor;
  if (r.num == 0) return 0;
  return (r.num * mode.proc_time + r.den - 1) / r.den;
}

inline Time rest_time(const Ratio& r, Time proc_time) {
  if (r.num == 0) return 0;
  return (r.num * proc_time + r.den - 1) / r.den;
}

// Energy rate of an operation on (machine, worker); throws if the pair has
// no entry.
inline Energy energy_rate(const Instance& inst, OpId id, int machine,
                          int worker) {
  for (const EnergyRate& e : inst.op(id).energy)
    if (e.machine == machine && e.worker == worker) return e.rate;
  throw SemanticError("no energy entry for operation (" +
                      std::to_string(id.job + 1) + "," +
                      std::to_string(id.op + 1) + ") on machine " +
                      std::to_string(machine + 1) + ", worker " +
                      std::to_string(worker + 1));
}

// Full structural validation; throws SemanticError naming the violated
// invariant. Parsers and the generator funnel through this.
inline void validate_instance(const Instance& inst) {
  auto fail = [](const std::string& msg) { throw SemanticError(msg); };

  if (inst.num_jobs < 1) fail("instance must have at least one job");
  if (inst.num_machines < 1) fail("instance must have at least one machine");
  if (inst.num_workers < 1) fail("instance must have at least one worker");
  if (static_cast<int>(inst.jobs.size()) != inst.num_jobs)
    fail("job count mismatch");
  if (static_cast<int>(inst.machine_configs.size()) != inst.num_machines ||
      static_cast<int>(inst.machine_workers.size()) != inst.num_machines ||
      static_cast<int>(inst.setup.size()) != inst.num_machines)
    fail("per-machine table size mismatch");
  if (inst.aux_energy < 0) fail("auxiliary energy must be nonnegative");

  const Ratio rf = inst.rest_factor;
  if (rf.den <= 0 || rf.num < 0 || rf.num > rf.den)
    fail("rest factor must be a rational in [0, 1]");

  for (int k = 0; k < inst.num_machines; ++k) {
    const auto ks = std::to_string(k + 1);
    int nc = inst.machine_configs[static_cast<std::size_t>(k)];
    if (nc < 1) fail("machine " + ks + " has no configurations");
    const auto& workers = inst.machine_workers[static_cast<std::size_t>(k)];
    if (workers.empty()) fail("machine " + ks + " has an empty worker set");
    if (!std::is_sorted(workers.begin(), workers.end()) ||
        std::adjacent_find(workers.begin(), workers.end()) != workers.end())
      fail("machine " + ks + " worker set must be sorted and duplicate-free");
    for (int w : workers)
      if (w < 0 || w >= inst.num_workers)
        fail("machine " + ks + " references worker out of range");
    const auto& se = inst.setup[static_cast<std::size_t>(k)];
    if (static_cast<int>(se.size()) != nc)
      fail("setup matrix of machine " + ks + " has wrong dimension");
    for (int c1 = 0; c1 < nc; ++c1) {
      if (static_cast<int>(se[static_cast<std::size_t>(c1)].size()) != nc)
        fail("setup matrix of machine " + ks + " has wrong dimension");
      for (int c2 = 0; c2 < nc; ++c2) {
        Time s = se[static_cast<std::size_t>(c1)][static_cast<std::size_t>(c2)];
        if (c1 == c2 && s != 0)
          fail("setup diagonal nonzero (machine " + ks + ", config " +
               std::to_string(c1 + 1) + ")");
        if (s < 0) fail("negative setup time on machine " + ks);
      }
    }
  }

  if (static_cast<int>(inst.moving.size()) != inst.num_machines)
    fail("moving matrix has wrong dimension");
  for (int k = 0; k < inst.num_machines; ++k) {
    const auto& row = inst.moving[static_cast<std::size_t>(k)];
    if (static_cast<int>(row.size()) != inst.num_machines)
      fail("moving matrix has wrong dimension");
    for (int k2 = 0; k2 < inst.num_machines; ++k2) {
      Time mt = row[static_cast<std::size_t>(k2)];
      if (mt < 0) fail("negative moving time");
      if (k == k2 && mt != 0) fail("moving diagonal nonzero");
      if (mt != inst.moving[static_cast<std::size_t>(k2)][static_cast<std::size_t>(k)])
        fail("moving matrix not symmetric");
    }
  }

  for (int i = 0; i < inst.num_jobs; ++i) {
    const Job& job = inst.jobs[static_cast<std::size_t>(i)];
    if (job.ops.empty())
      fail("job " + std::to_string(i + 1) + " has no operations");
    for (int j = 0; j < static_cast<int>(job.ops.size()); ++j) {
      const Operation& op = job.ops[static_cast<std::size_t>(j)];
      const std::string name =
          "operation (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (op.modes.empty()) fail(name + " has no eligible mode");
      std::vector<std::pair<int, int>> seen;
      for (const Mode& m : op.modes) {
        if (m.machine < 0 || m.machine >= inst.num_machines)
          fail(name + " mode references machine out of range");
        if (m.config < 0 ||
            m.config >= inst.machine_configs[static_cast<std::size_t>(m.machine)])
          fail(name + " mode references configuration out of range");
        if (m.proc_time < 1) fail(name + " has nonpositive processing time");
        seen.emplace_back(m.machine, m.config);
      }
      if (!std::is_sorted(seen.begin(), seen.end()) ||
          std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        fail(name + " modes must be sorted by (machine, config) and unique");

      // energy must cover exactly {(k, l) : k in mode machines, l in W_k}
      std::vector<std::pair<int, int>> expected;
      for (const Mode& m : op.modes)
        for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)])
          expected.emplace_back(m.machine, w);
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()),
                     expected.end());
      std::vector<std::pair<int, int>> got;
      for (const EnergyRate& e : op.energy) {
        if (e.rate < 0) fail(name + " has negative energy rate");
        got.emplace_back(e.machine, e.worker);
      }
      if (!std::is_sorted(got.begin(), got.end()))
        fail(name + " energy entries must be sorted by (machine, worker)");
      if (got != expected)
        fail(name +
             " energy entries must cover exactly the eligible "
             "(machine, worker) pairs");
    }
  }
}

}  // namespace rmtshop
