#pragma once

// Emits the scheduling MIP as solver-agnostic LP-format text, and checks
// external solver solutions against the validator.
//
// Variables (ids 1-based):
//   x_i_j_k_l_c   binary, operation (i,j) on machine k, worker l, config c
//   st_i_j, c_i_j continuous start/completion
//   cmax, te      continuous makespan / total energy
//   y_p_q, z_p_q  binary order variables (machine resp. worker sequencing)
//                 over canonical operation positions p < q, 1 iff p first
//
// Layout notes, also emitted as comments in the file header:
//  - machine sequencing rows activate on (machine, configuration) usage
//    summed over workers, so two operations of different workers cannot
//    overlap on a machine;
//  - worker sequencing uses the explicit order binary z_p_q; whether the
//    moving time or the rest time applies between two operations is
//    resolved per (machine, configuration) choice, so no separate move
//    indicator variable is needed;
//  - sequencing rows are pairwise over all operation pairs sharing a
//    resource, with the full configuration setup (resp. move/rest gap)
//    required between every ordered pair, matching the model the decoder
//    approximates from below.

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/model.hpp"
#include "rmtshop/validator.hpp"

namespace rmtshop {

namespace lp {

inline std::string xname(OpId id, int k, int l, int c) {
  std::ostringstream s;
  s << "x_" << id.job + 1 << "_" << id.op + 1 << "_" << k + 1 << "_" << l + 1
    << "_" << c + 1;
  return s.str();
}
inline std::string stname(OpId id) {
  return "st_" + std::to_string(id.job + 1) + "_" + std::to_string(id.op + 1);
}
inline std::string cname(OpId id) {
  return "c_" + std::to_string(id.job + 1) + "_" + std::to_string(id.op + 1);
}

// Horizon bound: every operation contributes at most its longest processing
// time, one worst-case setup, and one worst-case move-or-rest gap.
inline Time big_u(const Instance& inst) {
  Time max_se = 0, max_mt = 0;
  for (const auto& m : inst.setup)
    for (const auto& row : m)
      for (Time t : row) max_se = std::max(max_se, t);
  for (const auto& row : inst.moving)
    for (Time t : row) max_mt = std::max(max_mt, t);
  Time u = 0;
  for (int i = 0; i < inst.num_jobs; ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size()); ++j) {
      Time max_pt = 0, max_rt = 0;
      for (const Mode& m : inst.op({i, j}).modes) {
        max_pt = std::max(max_pt, m.proc_time);
        max_rt = std::max(max_rt, rest_time(inst.rest_factor, m.proc_time));
      }
      u += max_pt + max_se + std::max(max_mt, max_rt);
    }
  return u + 1;
}

}  // namespace lp

inline std::string export_lp(const Instance& inst) {
  const Time u = lp::big_u(inst);
  const int total = inst.total_ops();

  std::vector<OpId> ops;
  for (int p = 0; p < total; ++p) ops.push_back(op_from_index(inst, p));

  std::ostringstream out;
  out << "\\ rmtshop-model v1\n";
  out << "\\ objective: total energy = aux-energy * makespan + sum of\n";
  out << "\\   energy-rate * processing-time over selected assignments\n";
  out << "\\ machine sequencing activates on (machine, config) usage summed\n";
  out << "\\   over workers; worker sequencing uses order binaries z_p_q with\n";
  out << "\\   the move-vs-rest gap resolved per (machine, config) choice.\n";
  out << "\\ sequencing is pairwise over all operation pairs on a shared\n";
  out << "\\   resource; p, q are canonical operation positions (job-major,\n";
  out << "\\   1-based).\n";
  out << "\\ big-U = " << u << "\n";
  out << "Minimize\n obj: te\n";
  out << "Subject To\n";

  // te definition
  out << " te_def: te - " << inst.aux_energy << " cmax";
  for (OpId id : ops)
    for (const Mode& m : inst.op(id).modes)
      for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)])
        out << " - " << energy_rate(inst, id, m.machine, w) * m.proc_time << " "
            << lp::xname(id, m.machine, w, m.config);
  out << " = 0\n";

  // completion definitions
  for (OpId id : ops) {
    out << " cdef_" << id.job + 1 << "_" << id.op + 1 << ": " << lp::cname(id)
        << " - " << lp::stname(id);
    for (const Mode& m : inst.op(id).modes)
      for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)])
        out << " - " << m.proc_time << " " << lp::xname(id, m.machine, w, m.config);
    out << " = 0\n";
  }

  // makespan
  for (int i = 0; i < inst.num_jobs; ++i) {
    int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    out << " cmax_" << i + 1 << ": cmax - "
        << lp::cname({i, ni - 1}) << " >= 0\n";
  }

  // one (machine, worker, config) per operation
  for (OpId id : ops) {
    out << " assign_" << id.job + 1 << "_" << id.op + 1 << ":";
    bool first = true;
    for (const Mode& m : inst.op(id).modes)
      for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)]) {
        out << (first ? " " : " + ") << lp::xname(id, m.machine, w, m.config);
        first = false;
      }
    out << " = 1\n";
  }

  // job precedence (previous operation completed)
  for (int i = 0; i < inst.num_jobs; ++i) {
    int ni = static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size());
    for (int j = 1; j < ni; ++j)
      out << " prec_" << i + 1 << "_" << j + 1 << ": " << lp::stname({i, j})
          << " - " << lp::cname({i, j - 1}) << " >= 0\n";
  }

  // machine sequencing
  auto emit_machine_pair = [&](int p, int q) {
    const OpId pid = ops[static_cast<std::size_t>(p)];
    const OpId qid = ops[static_cast<std::size_t>(q)];
    const std::string y = "y_" + std::to_string(p + 1) + "_" + std::to_string(q + 1);
    bool used = false;
    for (const Mode& mp : inst.op(pid).modes)
      for (const Mode& mq : inst.op(qid).modes) {
        if (mp.machine != mq.machine) continue;
        used = true;
        const int k = mp.machine;
        const auto& wk = inst.machine_workers[static_cast<std::size_t>(k)];
        auto usage = [&](OpId id, const Mode& m) {
          std::string s;
          for (int w : wk) s += " - " + std::to_string(u) + " " + lp::xname(id, k, w, m.config);
          return s;
        };
        const std::string tag = std::to_string(p + 1) + "_" + std::to_string(q + 1) +
                                "_" + std::to_string(k + 1) + "_" +
                                std::to_string(mp.config + 1) + "_" +
                                std::to_string(mq.config + 1);
        const Time se_qp = inst.setup[static_cast<std::size_t>(k)]
                                     [static_cast<std::size_t>(mq.config)]
                                     [static_cast<std::size_t>(mp.config)];
        const Time se_pq = inst.setup[static_cast<std::size_t>(k)]
                                     [static_cast<std::size_t>(mp.config)]
                                     [static_cast<std::size_t>(mq.config)];
        // q before p (y = 0): st_p >= c-of-q + setup
        out << " mach_a_" << tag << ": " << lp::stname(pid) << " - "
            << lp::stname(qid) << usage(pid, mp) << usage(qid, mq) << " + " << u
            << " " << y << " >= " << mq.proc_time + se_qp - 2 * u << "\n";
        // p before q (y = 1)
        out << " mach_b_" << tag << ": " << lp::stname(qid) << " - "
            << lp::stname(pid) << usage(pid, mp) << usage(qid, mq) << " - " << u
            << " " << y << " >= " << mp.proc_time + se_pq - 3 * u << "\n";
      }
    return used;
  };

  // worker sequencing
  auto emit_worker_pair = [&](int p, int q) {
    const OpId pid = ops[static_cast<std::size_t>(p)];
    const OpId qid = ops[static_cast<std::size_t>(q)];
    const std::string z = "z_" + std::to_string(p + 1) + "_" + std::to_string(q + 1);
    bool used = false;
    for (const Mode& mp : inst.op(pid).modes)
      for (const Mode& mq : inst.op(qid).modes)
        for (int w = 0; w < inst.num_workers; ++w) {
          if (!inst.has_worker(mp.machine, w) || !inst.has_worker(mq.machine, w))
            continue;
          used = true;
          Time gap_pq, gap_qp;  // gap after the earlier operation
          if (mp.machine == mq.machine) {
            gap_pq = rest_time(inst.rest_factor, mp.proc_time);
            gap_qp = rest_time(inst.rest_factor, mq.proc_time);
          } else {
            gap_pq = gap_qp = inst.moving[static_cast<std::size_t>(mp.machine)]
                                         [static_cast<std::size_t>(mq.machine)];
          }
          const std::string xp = lp::xname(pid, mp.machine, w, mp.config);
          const std::string xq = lp::xname(qid, mq.machine, w, mq.config);
          const std::string tag =
              std::to_string(p + 1) + "_" + std::to_string(q + 1) + "_" +
              std::to_string(w + 1) + "_" + std::to_string(mp.machine + 1) +
              "_" + std::to_string(mp.config + 1) + "_" +
              std::to_string(mq.machine + 1) + "_" + std::to_string(mq.config + 1);
          // q before p (z = 0)
          out << " work_a_" << tag << ": " << lp::stname(pid) << " - "
              << lp::stname(qid) << " - " << u << " " << xp << " - " << u << " "
              << xq << " + " << u << " " << z << " >= "
              << mq.proc_time + gap_qp - 2 * u << "\n";
          // p before q (z = 1)
          out << " work_b_" << tag << ": " << lp::stname(qid) << " - "
              << lp::stname(pid) << " - " << u << " " << xp << " - " << u << " "
              << xq << " - " << u << " " << z << " >= "
              << mp.proc_time + gap_pq - 3 * u << "\n";
        }
    return used;
  };

  std::vector<std::string> order_binaries;
  for (int p = 0; p < total; ++p)
    for (int q = p + 1; q < total; ++q) {
      if (emit_machine_pair(p, q))
        order_binaries.push_back("y_" + std::to_string(p + 1) + "_" +
                                 std::to_string(q + 1));
      if (emit_worker_pair(p, q))
        order_binaries.push_back("z_" + std::to_string(p + 1) + "_" +
                                 std::to_string(q + 1));
    }

  // eligibility: ineligible assignment variables are fixed to zero
  out << "Bounds\n";
  for (OpId id : ops) {
    for (int k = 0; k < inst.num_machines; ++k)
      for (int c = 0; c < inst.machine_configs[static_cast<std::size_t>(k)]; ++c)
        for (int w : inst.machine_workers[static_cast<std::size_t>(k)])
          if (!is_eligible(inst, id, k, c, w))
            out << " " << lp::xname(id, k, w, c) << " = 0\n";
  }

  out << "Binaries\n";
  for (OpId id : ops)
    for (int k = 0; k < inst.num_machines; ++k)
      for (int c = 0; c < inst.machine_configs[static_cast<std::size_t>(k)]; ++c)
        for (int w : inst.machine_workers[static_cast<std::size_t>(k)])
          out << " " << lp::xname(id, k, w, c) << "\n";
  for (const std::string& b : order_binaries) out << " " << b << "\n";
  out << "End\n";
  return out.str();
}

// Schedule -> `name value` assignment text (zero-valued binaries omitted).
inline std::string lp_assignment_from_schedule(const Instance& inst,
                                               const Schedule& sched) {
  std::ostringstream out;
  for (int p = 0; p < static_cast<int>(sched.assign.size()); ++p) {
    const OpAssignment& a = sched.assign[static_cast<std::size_t>(p)];
    OpId id = op_from_index(inst, p);
    if (a.machine >= 0)
      out << lp::xname(id, a.machine, a.worker, a.config) << " 1\n";
    out << lp::stname(id) << " " << a.start << "\n";
    out << lp::cname(id) << " " << a.completion << "\n";
  }
  out << "cmax " << sched.makespan << "\n";
  out << "te " << sched.total_energy << "\n";
  return out.str();
}

// Reconstructs a schedule from `name value` solver output, delegates to the
// validator, and compares the recomputed total energy with the reported
// objective (absolute tolerance 1e-6). Start variables and `te` are
// required; omitted x variables count as zero.
inline std::vector<Violation> check_lp_solution(const Instance& inst,
                                                const std::string& text) {
  std::map<std::string, double> vals;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line[0] == '\\') continue;
    std::istringstream row(line);
    std::string name;
    double value;
    if (!(row >> name >> value))
      throw ParseError(lineno, "expected 'name value', got '" + line + "'");
    vals[name] = value;
  }

  std::vector<Violation> out;
  Schedule s;
  const int total = inst.total_ops();
  s.assign.assign(static_cast<std::size_t>(total), {});
  for (const auto& j : inst.jobs)
    s.ops_per_job.push_back(static_cast<int>(j.ops.size()));

  for (int p = 0; p < total; ++p) {
    OpId id = op_from_index(inst, p);
    int chosen = 0;
    for (const Mode& m : inst.op(id).modes)
      for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)]) {
        auto it = vals.find(lp::xname(id, m.machine, w, m.config));
        if (it != vals.end() && it->second > 0.5) {
          ++chosen;
          if (chosen == 1)
            s.assign[static_cast<std::size_t>(p)] = {m.machine, m.config, w, 0, 0};
        }
      }
    if (chosen != 1)
      out.push_back({ViolationKind::AssignmentCardinality,
                     {id},
                     chosen,
                     std::to_string(chosen) + " assignment variables set"});
    auto st = vals.find(lp::stname(id));
    if (st == vals.end())
      throw ParseError(0, "missing variable " + lp::stname(id));
    OpAssignment& a = s.assign[static_cast<std::size_t>(p)];
    a.start = std::llround(st->second);
    if (a.machine >= 0) {
      const Mode* m = find_mode(inst.op(id), a.machine, a.config);
      a.completion = a.start + m->proc_time;
    }
  }

  auto te_it = vals.find("te");
  if (te_it == vals.end()) throw ParseError(0, "missing variable te");

  rebuild_timelines(inst, s);
  bool complete = true;
  for (const auto& a : s.assign)
    if (a.machine < 0) complete = false;
  if (complete) {
    Time cmax = 0;
    std::size_t pos = 0;
    for (int ni : s.ops_per_job) {
      pos += static_cast<std::size_t>(ni);
      cmax = std::max(cmax, s.assign[pos - 1].completion);
    }
    s.makespan = cmax;
    s.total_energy = total_energy(inst, s);
    if (std::abs(static_cast<double>(s.total_energy) - te_it->second) > 1e-6)
      out.push_back({ViolationKind::ObjectiveMismatch,
                     {{0, 0}},
                     0,
                     "reported objective " + std::to_string(te_it->second) +
                         ", recomputed " + std::to_string(s.total_energy)});
  }

  for (Violation& v : validate(inst, s)) out.push_back(std::move(v));
  return out;
}

}  // namespace rmtshop
