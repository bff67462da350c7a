#pragma once

// Benchmark harness: replicated MA/GA runs per instance, relative
// percentage deviation against the best known objective, and the CSV
// report files consumed by the plotting side.

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/evolve.hpp"
#include "rmtshop/instance_io.hpp"
#include "rmtshop/model.hpp"
#include "rmtshop/rng.hpp"

namespace rmtshop {

// Relative percentage deviation of an objective from the best-known
// reference: (f_alg - f_ref) / f_ref * 100.
inline double rpd(Energy f_ref, Energy f_alg) {
  if (f_ref <= 0)
    throw std::domain_error("rpd reference must be positive, got " +
                            std::to_string(f_ref));
  return static_cast<double>(f_alg - f_ref) / static_cast<double>(f_ref) * 100.0;
}

inline std::string size_string(const Instance& inst) {
  int c = 0;
  for (int nc : inst.machine_configs) c = std::max(c, nc);
  std::ostringstream s;
  s << inst.num_jobs << "x" << inst.num_machines << "x" << inst.num_workers
    << "x" << c;
  return s.str();
}

struct BenchInput {
  std::string name;
  std::string text;  // .instance format; parse failures are recorded per row
};

struct AlgoStats {
  std::string algorithm;
  Energy best_te = 0;
  double rpd_pct = 0.0;
  bool is_reference = false;
  bool external = false;  // reference objective supplied, not run here
  std::vector<Energy> rep_best;
  std::vector<double> rep_rpd;
  std::vector<double> rep_time_s;
  double mean_time_s = 0.0;
  double max_time_s = 0.0;
};

struct InstanceResult {
  std::string name;
  std::string size;
  bool ok = true;
  std::string error;
  std::vector<AlgoStats> algos;
};

struct BenchReport {
  int replications = 1;
  std::vector<InstanceResult> instances;
};

struct BenchOptions {
  int replications = 1;
  std::uint64_t master_seed = 0;
  // Externally obtained objectives (e.g. an exact solver's) per instance
  // name; they join the reference computation as a pseudo-algorithm row.
  std::map<std::string, Energy> external_refs;
  std::string external_name = "mip";
};

// Runs every config `replications` times per instance. Replication r on
// instance i uses seed derive_seed(master, i) + r for every algorithm, so
// competing configs see paired random streams. The best-known objective
// per instance is the minimum over all algorithm bests and any supplied
// external objective; RPDs are relative to it.
inline BenchReport bench(const std::vector<BenchInput>& inputs,
                         const std::vector<RunConfig>& configs,
                         const BenchOptions& opt) {
  if (opt.replications < 1)
    throw std::invalid_argument("replications must be >= 1");
  BenchReport report;
  report.replications = opt.replications;

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    InstanceResult row;
    row.name = inputs[i].name;
    Instance inst;
    try {
      inst = parse_instance(inputs[i].text);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      report.instances.push_back(std::move(row));
      continue;
    }
    row.size = size_string(inst);

    for (std::size_t a = 0; a < configs.size(); ++a) {
      AlgoStats st;
      st.algorithm = configs[a].algorithm == Algorithm::MA ? "ma" : "ga";
      const std::uint64_t base = derive_seed(opt.master_seed, i);
      for (int r = 0; r < opt.replications; ++r) {
        RunConfig cfg = configs[a];
        cfg.seed = base + static_cast<std::uint64_t>(r);
        RunResult res = run(inst, cfg);
        st.rep_best.push_back(res.best_te);
        st.rep_time_s.push_back(res.wall_time_s);
      }
      st.best_te = *std::min_element(st.rep_best.begin(), st.rep_best.end());
      double sum = 0.0;
      for (double t : st.rep_time_s) {
        sum += t;
        st.max_time_s = std::max(st.max_time_s, t);
      }
      st.mean_time_s = sum / static_cast<double>(st.rep_time_s.size());
      row.algos.push_back(std::move(st));
    }

    auto ref = opt.external_refs.find(row.name);
    if (ref != opt.external_refs.end()) {
      AlgoStats st;
      st.algorithm = opt.external_name;
      st.external = true;
      st.best_te = ref->second;
      row.algos.push_back(std::move(st));
    }

    Energy best_known = row.algos.front().best_te;
    for (const AlgoStats& st : row.algos)
      best_known = std::min(best_known, st.best_te);
    for (AlgoStats& st : row.algos) {
      st.rpd_pct = rpd(best_known, st.best_te);
      st.is_reference = st.best_te == best_known;
      for (Energy te : st.rep_best) st.rep_rpd.push_back(rpd(best_known, te));
    }
    report.instances.push_back(std::move(row));
  }
  return report;
}

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace detail

// Table-style CSV, one row per (instance, algorithm). Wall-time columns
// come last so reproducibility comparisons can strip them.
inline std::string report_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "instance,size,algorithm,best_te,rpd,is_reference,replications,"
         "status,mean_time_s,max_time_s\n";
  for (const InstanceResult& row : report.instances) {
    if (!row.ok) {
      out << row.name << ",,,,,,," << detail::csv_safe(row.error) << ",,\n";
      continue;
    }
    for (const AlgoStats& st : row.algos) {
      out << row.name << "," << row.size << "," << st.algorithm << ","
          << st.best_te << "," << detail::fixed2(st.rpd_pct) << ","
          << (st.is_reference ? 1 : 0) << ","
          << (st.external ? 0 : report.replications) << ",ok,";
      if (st.external)
        out << "-,-\n";
      else
        out << detail::fixed2(st.mean_time_s) << ","
            << detail::fixed2(st.max_time_s) << "\n";
    }
  }
  return out.str();
}

// Per-replication objectives and RPDs, the box-plot input.
inline std::string rpd_reps_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "instance,algorithm,replication,best_te,rpd\n";
  for (const InstanceResult& row : report.instances) {
    if (!row.ok) continue;
    for (const AlgoStats& st : row.algos) {
      for (std::size_t r = 0; r < st.rep_best.size(); ++r)
        out << row.name << "," << st.algorithm << "," << r + 1 << ","
            << st.rep_best[r] << "," << detail::fixed2(st.rep_rpd[r]) << "\n";
    }
  }
  return out.str();
}

// Per-algorithm RPD samples pooled across instances and replications,
// in first-seen algorithm order.
inline std::vector<std::pair<std::string, std::vector<double>>> rpd_samples(
    const BenchReport& report) {
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (const InstanceResult& row : report.instances) {
    if (!row.ok) continue;
    for (const AlgoStats& st : row.algos) {
      if (st.external) continue;
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const auto& p) { return p.first == st.algorithm; });
      if (it == out.end()) {
        out.emplace_back(st.algorithm, std::vector<double>{});
        it = out.end() - 1;
      }
      it->second.insert(it->second.end(), st.rep_rpd.begin(), st.rep_rpd.end());
    }
  }
  return out;
}

}  // namespace rmtshop
