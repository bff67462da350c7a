#pragma once

// Three-layer chromosome, schedule phenotype, and the decoder that turns
// one into the other. The decoder is the fitness function of both
// metaheuristics.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/model.hpp"

namespace rmtshop {

// Genotype. `os` is a job-repetition permutation (job i appears n_i times);
// `cs` and `ws` are indexed by canonical operation position.
struct Chromosome {
  std::vector<int> os;
  std::vector<std::pair<int, int>> cs;  // (machine, config) per operation
  std::vector<int> ws;                  // worker per operation
  bool operator==(const Chromosome&) const = default;
};

struct OpAssignment {
  int machine = -1;  // -1: unassigned
  int config = -1;
  int worker = -1;
  Time start = 0;
  Time completion = 0;
  bool operator==(const OpAssignment&) const = default;
};

struct MachineSlot {
  int op_pos = -1;  // canonical operation position
  int config = -1;
  Time start = 0;
  Time completion = 0;
  bool operator==(const MachineSlot&) const = default;
};

struct WorkerSlot {
  int op_pos = -1;
  int machine = -1;
  Time start = 0;
  Time completion = 0;
  bool operator==(const WorkerSlot&) const = default;
};

// Decoded phenotype. `assign` is indexed by canonical operation position;
// timelines are sorted by start time.
struct Schedule {
  std::vector<OpAssignment> assign;
  std::vector<std::vector<MachineSlot>> machine_timeline;
  std::vector<std::vector<WorkerSlot>> worker_timeline;
  std::vector<int> ops_per_job;
  Time makespan = 0;
  Energy total_energy = 0;
  bool operator==(const Schedule&) const = default;
};

struct DecodeOptions {
  // When true, a worker who changes machines both moves and rests after the
  // finished operation. Default: moving replaces the rest.
  bool rest_plus_move = false;
};

// Returns an explanation of the first violated chromosome invariant, or
// nullopt if the chromosome is valid for the instance.
inline std::optional<std::string> check_chromosome(const Instance& inst,
                                                   const Chromosome& c) {
  const int total = inst.total_ops();
  if (static_cast<int>(c.os.size()) != total ||
      static_cast<int>(c.cs.size()) != total ||
      static_cast<int>(c.ws.size()) != total)
    return "layer length mismatch (expected " + std::to_string(total) + ")";

  std::vector<int> counts(static_cast<std::size_t>(inst.num_jobs), 0);
  for (std::size_t p = 0; p < c.os.size(); ++p) {
    int job = c.os[p];
    if (job < 0 || job >= inst.num_jobs)
      return "os position " + std::to_string(p) + ": job id out of range";
    ++counts[static_cast<std::size_t>(job)];
  }
  for (int i = 0; i < inst.num_jobs; ++i) {
    int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    if (counts[static_cast<std::size_t>(i)] != ni)
      return "os: job " + std::to_string(i + 1) + " occurs " +
             std::to_string(counts[static_cast<std::size_t>(i)]) +
             " times, expected " + std::to_string(ni);
  }

  for (int p = 0; p < total; ++p) {
    OpId id = op_from_index(inst, p);
    auto [k, cfg] = c.cs[static_cast<std::size_t>(p)];
    int w = c.ws[static_cast<std::size_t>(p)];
    if (!is_eligible(inst, id, k, cfg, w))
      return "position " + std::to_string(p) + ": (machine " +
             std::to_string(k + 1) + ", config " + std::to_string(cfg + 1) +
             ", worker " + std::to_string(w + 1) +
             ") is not eligible for operation (" + std::to_string(id.job + 1) +
             "," + std::to_string(id.op + 1) + ")";
  }
  return std::nullopt;
}

// Greedy semi-active list scheduling in OS order. The t-th occurrence of
// job i in `os` denotes operation O_{i,t}; each operation starts at
//
//   max( completion of the job's previous operation,
//        machine ready time incl. configuration setup,
//        worker ready time incl. moving or rest )
//
// A machine keeps its configuration between operations and its first
// operation incurs no setup. A worker staying on the same machine rests
// for the rest time of the operation just finished; a worker changing
// machines spends the moving time instead (see DecodeOptions).
inline Schedule decode(const Instance& inst, const Chromosome& chrom,
                       const DecodeOptions& opt = {}) {
  if (auto err = check_chromosome(inst, chrom))
    throw EncodingError("invalid chromosome: " + *err);

  const auto offsets = job_offsets(inst);
  const int total = inst.total_ops();

  Schedule s;
  s.assign.resize(static_cast<std::size_t>(total));
  s.machine_timeline.resize(static_cast<std::size_t>(inst.num_machines));
  s.worker_timeline.resize(static_cast<std::size_t>(inst.num_workers));
  for (const auto& j : inst.jobs)
    s.ops_per_job.push_back(static_cast<int>(j.ops.size()));

  std::vector<int> next_op(static_cast<std::size_t>(inst.num_jobs), 0);
  std::vector<Time> job_done(static_cast<std::size_t>(inst.num_jobs), 0);

  struct MachineState {
    Time done = 0;
    int config = -1;  // -1: untouched
  };
  struct WorkerState {
    Time done = 0;
    int machine = -1;
    Time rest = 0;  // rest owed for the finished operation
  };
  std::vector<MachineState> machines(static_cast<std::size_t>(inst.num_machines));
  std::vector<WorkerState> workers(static_cast<std::size_t>(inst.num_workers));

  Energy op_energy = 0;
  for (int step = 0; step < total; ++step) {
    const int job = chrom.os[static_cast<std::size_t>(step)];
    const int j = next_op[static_cast<std::size_t>(job)]++;
    const OpId id{job, j};
    const int pos = offsets[static_cast<std::size_t>(job)] + j;
    const auto [k, cfg] = chrom.cs[static_cast<std::size_t>(pos)];
    const int w = chrom.ws[static_cast<std::size_t>(pos)];
    const Mode& mode = *find_mode(inst.op(id), k, cfg);

    const Time job_ready = job_done[static_cast<std::size_t>(job)];

    MachineState& mk = machines[static_cast<std::size_t>(k)];
    Time machine_ready = 0;
    if (mk.config >= 0)
      machine_ready = mk.done + inst.setup[static_cast<std::size_t>(k)]
                                          [static_cast<std::size_t>(mk.config)]
                                          [static_cast<std::size_t>(cfg)];

    WorkerState& wl = workers[static_cast<std::size_t>(w)];
    Time worker_ready = 0;
    if (wl.machine >= 0) {
      if (wl.machine == k) {
        worker_ready = wl.done + wl.rest;
      } else {
        worker_ready = wl.done +
                       inst.moving[static_cast<std::size_t>(wl.machine)]
                                  [static_cast<std::size_t>(k)] +
                       (opt.rest_plus_move ? wl.rest : 0);
      }
    }

    const Time start = std::max({job_ready, machine_ready, worker_ready});
    const Time completion = start + mode.proc_time;

    s.assign[static_cast<std::size_t>(pos)] = {k, cfg, w, start, completion};
    s.machine_timeline[static_cast<std::size_t>(k)].push_back(
        {pos, cfg, start, completion});
    s.worker_timeline[static_cast<std::size_t>(w)].push_back(
        {pos, k, start, completion});

    job_done[static_cast<std::size_t>(job)] = completion;
    mk.done = completion;
    mk.config = cfg;
    wl.done = completion;
    wl.machine = k;
    wl.rest = rest_time(inst.rest_factor, mode.proc_time);
    if (completion > s.makespan) s.makespan = completion;
    op_energy += energy_rate(inst, id, k, w) * mode.proc_time;
  }

  s.total_energy = inst.aux_energy * s.makespan + op_energy;
  return s;
}

// Completion time of the last operation across all jobs.
inline Time makespan(const Schedule& sched) {
  if (sched.assign.empty()) throw std::domain_error("empty schedule");
  Time best = 0;
  std::size_t pos = 0;
  for (int ni : sched.ops_per_job) {
    pos += static_cast<std::size_t>(ni);
    best = std::max(best, sched.assign[pos - 1].completion);
  }
  return best;
}

// Objective: aux_energy * makespan + sum of energy-rate * processing-time
// over the chosen assignments.
inline Energy total_energy(const Instance& inst, const Schedule& sched) {
  Energy sum = 0;
  for (int p = 0; p < static_cast<int>(sched.assign.size()); ++p) {
    const OpAssignment& a = sched.assign[static_cast<std::size_t>(p)];
    if (a.machine < 0) continue;
    OpId id = op_from_index(inst, p);
    const Mode* mode = find_mode(inst.op(id), a.machine, a.config);
    if (!mode)
      throw SemanticError("assignment of operation (" +
                          std::to_string(id.job + 1) + "," +
                          std::to_string(id.op + 1) +
                          ") does not name one of its modes");
    sum += energy_rate(inst, id, a.machine, a.worker) * mode->proc_time;
  }
  return inst.aux_energy * sched.makespan + sum;
}

// Rebuild the per-machine and per-worker timelines from `assign` (sorted by
// start, ties by completion then position).
inline void rebuild_timelines(const Instance& inst, Schedule& s) {
  s.machine_timeline.assign(static_cast<std::size_t>(inst.num_machines), {});
  s.worker_timeline.assign(static_cast<std::size_t>(inst.num_workers), {});
  std::vector<int> order;
  for (int p = 0; p < static_cast<int>(s.assign.size()); ++p)
    if (s.assign[static_cast<std::size_t>(p)].machine >= 0) order.push_back(p);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = s.assign[static_cast<std::size_t>(a)];
    const auto& y = s.assign[static_cast<std::size_t>(b)];
    return std::tie(x.start, x.completion, a) < std::tie(y.start, y.completion, b);
  });
  for (int p : order) {
    const auto& a = s.assign[static_cast<std::size_t>(p)];
    s.machine_timeline[static_cast<std::size_t>(a.machine)].push_back(
        {p, a.config, a.start, a.completion});
    s.worker_timeline[static_cast<std::size_t>(a.worker)].push_back(
        {p, a.machine, a.start, a.completion});
  }
}

// CSV form consumed by the CLI: one row per operation, 1-based ids.
inline std::string schedule_to_csv(const Instance& inst, const Schedule& s) {
  std::ostringstream out;
  out << "job,op,machine,config,worker,start,completion\n";
  for (int p = 0; p < static_cast<int>(s.assign.size()); ++p) {
    const OpAssignment& a = s.assign[static_cast<std::size_t>(p)];
    OpId id = op_from_index(inst, p);
    out << id.job + 1 << "," << id.op + 1 << "," << a.machine + 1 << ","
        << a.config + 1 << "," << a.worker + 1 << "," << a.start << ","
        << a.completion << "\n";
  }
  return out.str();
}

// Parse the CSV form back into a Schedule; timelines are rebuilt and the
// stored objective values recomputed from the rows.
inline Schedule schedule_from_csv(const Instance& inst, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(1, "empty schedule file");
  if (line.find("job,op,machine") != 0)
    throw ParseError(1, "expected schedule CSV header");

  Schedule s;
  s.assign.assign(static_cast<std::size_t>(inst.total_ops()), {});
  for (const auto& j : inst.jobs)
    s.ops_per_job.push_back(static_cast<int>(j.ops.size()));

  int lineno = 1;
  auto to_int = [](const std::string& cell, int at) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      return v;
    } catch (const std::exception&) {
      throw ParseError(at, "expected an integer, got '" + cell + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<long long> v;
    while (std::getline(row, cell, ','))
      v.push_back(to_int(cell, lineno));
    if (v.size() != 7)
      throw ParseError(lineno, "expected 7 comma-separated values");
    OpId id{static_cast<int>(v[0]) - 1, static_cast<int>(v[1]) - 1};
    check_op_id(inst, id);
    int pos = canonical_index(inst, id);
    s.assign[static_cast<std::size_t>(pos)] = {
        static_cast<int>(v[2]) - 1, static_cast<int>(v[3]) - 1,
        static_cast<int>(v[4]) - 1, v[5], v[6]};
  }

  rebuild_timelines(inst, s);
  for (const auto& a : s.assign)
    if (a.machine >= 0 && a.completion > s.makespan) s.makespan = a.completion;
  s.total_energy = total_energy(inst, s);
  return s;
}

}  // namespace rmtshop
