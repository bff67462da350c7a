#pragma once

// Independent schedule checker. Works from Schedule::assign alone (the
// timelines are treated as derived views) and re-derives resource sequences
// itself, so it shares no timeline logic with the decoder it polices.

#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/model.hpp"

namespace rmtshop {

enum class ViolationKind {
  CompletionArithmetic,
  JobPrecedence,
  Eligibility,
  MachineOverlap,
  SetupGap,
  WorkerOverlap,
  WorkerGap,
  AssignmentCardinality,
  ObjectiveMismatch,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::CompletionArithmetic: return "completion-arithmetic";
    case ViolationKind::JobPrecedence: return "job-precedence";
    case ViolationKind::Eligibility: return "eligibility";
    case ViolationKind::MachineOverlap: return "machine-overlap";
    case ViolationKind::SetupGap: return "setup-gap";
    case ViolationKind::WorkerOverlap: return "worker-overlap";
    case ViolationKind::WorkerGap: return "worker-gap";
    case ViolationKind::AssignmentCardinality: return "assignment-cardinality";
    case ViolationKind::ObjectiveMismatch: return "objective-mismatch";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::vector<OpId> subjects;  // at least one operation
  Time amount = 0;             // violated quantity, when meaningful
  std::string detail;
};

inline std::string to_string(const Instance&, const Violation& v) {
  std::ostringstream out;
  out << to_string(v.kind) << ":";
  for (OpId id : v.subjects)
    out << " (" << id.job + 1 << "," << id.op + 1 << ")";
  out << " " << v.detail;
  return out.str();
}

inline std::string violations_report(const Instance& inst,
                                     const std::vector<Violation>& vs) {
  std::ostringstream out;
  for (const Violation& v : vs) out << to_string(inst, v) << "\n";
  return out.str();
}

// Checks, in order: assignment cardinality, eligibility, completion
// arithmetic, job precedence, machine overlap/setup gaps, worker
// overlap/move-or-rest gaps, and stored-vs-recomputed objective values.
// Problems are returned, never thrown.
inline std::vector<Violation> validate(const Instance& inst,
                                       const Schedule& sched,
                                       const DecodeOptions& opt = {}) {
  std::vector<Violation> out;
  const int total = inst.total_ops();
  if (static_cast<int>(sched.assign.size()) != total) {
    out.push_back({ViolationKind::AssignmentCardinality,
                   {{0, 0}},
                   static_cast<Time>(sched.assign.size()),
                   "assignment table has " +
                       std::to_string(sched.assign.size()) + " rows, expected " +
                       std::to_string(total)});
    return out;
  }

  // per-op checks
  for (int p = 0; p < total; ++p) {
    const OpAssignment& a = sched.assign[static_cast<std::size_t>(p)];
    const OpId id = op_from_index(inst, p);
    if (a.machine < 0) {
      out.push_back({ViolationKind::AssignmentCardinality,
                     {id},
                     0,
                     "operation is unassigned"});
      continue;
    }
    const bool eligible = is_eligible(inst, id, a.machine, a.config, a.worker);
    if (!eligible)
      out.push_back({ViolationKind::Eligibility,
                     {id},
                     0,
                     "(machine " + std::to_string(a.machine + 1) + ", config " +
                         std::to_string(a.config + 1) + ", worker " +
                         std::to_string(a.worker + 1) + ") is not eligible"});
    const Mode* mode = (a.machine >= 0 && a.machine < inst.num_machines)
                           ? find_mode(inst.op(id), a.machine, a.config)
                           : nullptr;
    if (mode && a.completion != a.start + mode->proc_time)
      out.push_back({ViolationKind::CompletionArithmetic,
                     {id},
                     a.completion - (a.start + mode->proc_time),
                     "completion " + std::to_string(a.completion) +
                         " != start " + std::to_string(a.start) + " + " +
                         std::to_string(mode->proc_time)});
    if (a.start < 0)
      out.push_back({ViolationKind::JobPrecedence,
                     {id},
                     -a.start,
                     "starts before time zero"});
  }

  const auto offsets = job_offsets(inst);
  auto at = [&](OpId id) -> const OpAssignment& {
    return sched.assign[static_cast<std::size_t>(
        offsets[static_cast<std::size_t>(id.job)] + id.op)];
  };

  // job precedence over consecutive operations
  for (int i = 0; i < inst.num_jobs; ++i) {
    int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    for (int j = 1; j < ni; ++j) {
      const OpAssignment& prev = at({i, j - 1});
      const OpAssignment& cur = at({i, j});
      if (prev.machine < 0 || cur.machine < 0) continue;
      if (cur.start < prev.completion)
        out.push_back({ViolationKind::JobPrecedence,
                       {{i, j - 1}, {i, j}},
                       prev.completion - cur.start,
                       "starts " + std::to_string(prev.completion - cur.start) +
                           " before the previous operation completes"});
    }
  }

  // derive resource sequences from assign, sorted by (start, completion, pos)
  auto sequence_of = [&](auto member) {
    std::vector<std::vector<int>> seq;
    for (int p = 0; p < total; ++p) {
      const OpAssignment& a = sched.assign[static_cast<std::size_t>(p)];
      int r = member(a);
      if (a.machine < 0) continue;
      if (r >= static_cast<int>(seq.size())) seq.resize(static_cast<std::size_t>(r) + 1);
      seq[static_cast<std::size_t>(r)].push_back(p);
    }
    for (auto& v : seq)
      std::sort(v.begin(), v.end(), [&](int x, int y) {
        const auto& ax = sched.assign[static_cast<std::size_t>(x)];
        const auto& ay = sched.assign[static_cast<std::size_t>(y)];
        return std::tie(ax.start, ax.completion, x) <
               std::tie(ay.start, ay.completion, y);
      });
    return seq;
  };

  // machines: consecutive operations must clear the configuration setup
  for (const auto& ops : sequence_of([](const OpAssignment& a) { return a.machine; })) {
    for (std::size_t x = 1; x < ops.size(); ++x) {
      int pp = ops[x - 1], qp = ops[x];
      const OpAssignment& p = sched.assign[static_cast<std::size_t>(pp)];
      const OpAssignment& q = sched.assign[static_cast<std::size_t>(qp)];
      const OpId pid = op_from_index(inst, pp), qid = op_from_index(inst, qp);
      if (q.start < p.completion) {
        out.push_back({ViolationKind::MachineOverlap,
                       {pid, qid},
                       p.completion - q.start,
                       "overlap of " + std::to_string(p.completion - q.start) +
                           " on machine " + std::to_string(p.machine + 1)});
        continue;
      }
      const int k = p.machine;
      const int nc = inst.machine_configs[static_cast<std::size_t>(k)];
      if (p.config < 0 || p.config >= nc || q.config < 0 || q.config >= nc)
        continue;  // already reported as eligibility
      Time need = inst.setup[static_cast<std::size_t>(k)]
                            [static_cast<std::size_t>(p.config)]
                            [static_cast<std::size_t>(q.config)];
      if (q.start < p.completion + need)
        out.push_back({ViolationKind::SetupGap,
                       {pid, qid},
                       p.completion + need - q.start,
                       "setup to config " + std::to_string(q.config + 1) +
                           " on machine " + std::to_string(k + 1) + " short by " +
                           std::to_string(p.completion + need - q.start)});
    }
  }

  // workers: consecutive operations must clear the moving or rest gap
  for (const auto& ops : sequence_of([](const OpAssignment& a) { return a.worker; })) {
    for (std::size_t x = 1; x < ops.size(); ++x) {
      int pp = ops[x - 1], qp = ops[x];
      const OpAssignment& p = sched.assign[static_cast<std::size_t>(pp)];
      const OpAssignment& q = sched.assign[static_cast<std::size_t>(qp)];
      const OpId pid = op_from_index(inst, pp), qid = op_from_index(inst, qp);
      if (q.start < p.completion) {
        out.push_back({ViolationKind::WorkerOverlap,
                       {pid, qid},
                       p.completion - q.start,
                       "overlap of " + std::to_string(p.completion - q.start) +
                           " for worker " + std::to_string(p.worker + 1)});
        continue;
      }
      if (p.machine < 0 || p.machine >= inst.num_machines || q.machine < 0 ||
          q.machine >= inst.num_machines)
        continue;
      const Mode* pmode = find_mode(inst.op(pid), p.machine, p.config);
      const Time rest =
          pmode ? rest_time(inst.rest_factor, pmode->proc_time) : 0;
      Time need;
      std::string why;
      if (p.machine != q.machine) {
        need = inst.moving[static_cast<std::size_t>(p.machine)]
                          [static_cast<std::size_t>(q.machine)] +
               (opt.rest_plus_move ? rest : 0);
        why = "move";
      } else {
        need = rest;
        why = "rest";
      }
      if (q.start < p.completion + need)
        out.push_back({ViolationKind::WorkerGap,
                       {pid, qid},
                       p.completion + need - q.start,
                       why + " gap for worker " + std::to_string(p.worker + 1) +
                           " short by " +
                           std::to_string(p.completion + need - q.start)});
    }
  }

  // stored objective values: recomputable only when every operation is
  // assigned an eligible triple
  bool sound = true;
  for (int p = 0; p < total; ++p) {
    const OpAssignment& a = sched.assign[static_cast<std::size_t>(p)];
    if (a.machine < 0 ||
        !is_eligible(inst, op_from_index(inst, p), a.machine, a.config, a.worker))
      sound = false;
  }
  if (sound) {
    Time cmax = 0;
    for (int i = 0; i < inst.num_jobs; ++i) {
      int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
      cmax = std::max(cmax, at({i, ni - 1}).completion);
    }
    if (cmax != sched.makespan)
      out.push_back({ViolationKind::ObjectiveMismatch,
                     {{0, 0}},
                     sched.makespan - cmax,
                     "stored makespan " + std::to_string(sched.makespan) +
                         ", recomputed " + std::to_string(cmax)});
    Schedule tmp = sched;
    tmp.makespan = cmax;
    Energy te = total_energy(inst, tmp);
    if (te != sched.total_energy)
      out.push_back({ViolationKind::ObjectiveMismatch,
                     {{0, 0}},
                     sched.total_energy - te,
                     "stored total energy " + std::to_string(sched.total_energy) +
                         ", recomputed " + std::to_string(te)});
  }

  return out;
}

}  // namespace rmtshop
