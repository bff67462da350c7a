#pragma once

// Instance text format (parse/serialize) and the seeded random generator.
//
// Format `rmtshop-instance v1` (all ids 1-based, `#` starts a comment):
//
//   rmtshop-instance v1
//   jobs N
//   machines M
//   workers L
//   aux-energy AE
//   rest-factor NUM/DEN
//   machine K configs CK workers L1 L2 ...        (one line per machine)
//   setup K                                       (then CK rows of CK ints)
//   ...
//   moving                                        (then M rows of M ints)
//   job I ops NI                                  (one block per job)
//   op I J modes NM energies NE
//   mode K C PT                                   (NM lines)
//   energy K L RATE                               (NE lines)
//
// serialize_instance emits the canonical form: fixed section order, single
// spaces, modes sorted by (machine, config), energies by (machine, worker),
// rest factor in lowest terms. parse(serialize(x)) == x.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/model.hpp"
#include "rmtshop/rng.hpp"

namespace rmtshop {

struct IntRange {
  long long lo = 0;
  long long hi = 0;
  bool operator==(const IntRange&) const = default;
};

struct GenParams {
  int num_jobs = 0;
  int num_machines = 0;
  int num_workers = 0;
  IntRange ops_per_job{2, 5};
  IntRange modes_per_op{1, 3};  // upper bound clamped to the mode pool
  IntRange proc_time{1, 20};
  IntRange setup_time{1, 5};
  IntRange moving_time{1, 5};
  IntRange energy{3, 30};
  Energy aux_energy = 5;
  Ratio rest_factor{1, 10};
  // When set, every machine gets exactly this many configurations instead
  // of the random draw from [ceil(m/4), floor(m/2)].
  std::optional<int> configs_per_machine;
  std::uint64_t seed = 0;
};

namespace detail {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next nonempty line, comments stripped. Returns false at end of input.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t e = raw.find_last_not_of(" \t\r");
      out = raw.substr(b, e - b + 1);
      return true;
    }
    return false;
  }

  int line() const { return line_; }

 private:
  std::istringstream in_;
  int line_ = 0;
};

inline std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline long long to_int(const std::string& t, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + t + "'");
  }
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  detail::LineReader rd(text);
  std::string line;

  auto need = [&](const char* what) {
    if (!rd.next(line))
      throw ParseError(rd.line() + 1,
                       std::string("unexpected end of input, expected ") + what);
  };
  auto expect_kv = [&](const std::string& key) -> long long {
    need(key.c_str());
    auto t = detail::tokens(line);
    if (t.size() != 2 || t[0] != key)
      throw ParseError(rd.line(), "expected '" + key + " <value>', got '" +
                                      line + "'");
    return detail::to_int(t[1], rd.line());
  };

  need("header");
  if (line != "rmtshop-instance v1")
    throw ParseError(rd.line(), "expected header 'rmtshop-instance v1'");

  Instance inst;
  inst.num_jobs = static_cast<int>(expect_kv("jobs"));
  inst.num_machines = static_cast<int>(expect_kv("machines"));
  inst.num_workers = static_cast<int>(expect_kv("workers"));
  inst.aux_energy = expect_kv("aux-energy");

  need("rest-factor");
  {
    auto t = detail::tokens(line);
    if (t.size() != 2 || t[0] != "rest-factor")
      throw ParseError(rd.line(), "expected 'rest-factor NUM/DEN'");
    auto slash = t[1].find('/');
    Ratio r;
    if (slash == std::string::npos) {
      r = {detail::to_int(t[1], rd.line()), 1};
    } else {
      r = {detail::to_int(t[1].substr(0, slash), rd.line()),
           detail::to_int(t[1].substr(slash + 1), rd.line())};
    }
    if (r.den <= 0) throw ParseError(rd.line(), "rest-factor denominator must be positive");
    inst.rest_factor = r.normalized();
  }

  if (inst.num_machines < 1) throw ParseError(rd.line(), "machines must be >= 1");
  if (inst.num_jobs < 1) throw ParseError(rd.line(), "jobs must be >= 1");

  inst.machine_configs.resize(static_cast<std::size_t>(inst.num_machines));
  inst.machine_workers.resize(static_cast<std::size_t>(inst.num_machines));
  for (int k = 0; k < inst.num_machines; ++k) {
    need("machine line");
    auto t = detail::tokens(line);
    if (t.size() < 5 || t[0] != "machine" || t[2] != "configs" || t[4] != "workers")
      throw ParseError(rd.line(),
                       "expected 'machine K configs CK workers L1 ...', got '" +
                           line + "'");
    if (detail::to_int(t[1], rd.line()) != k + 1)
      throw ParseError(rd.line(), "machine lines must appear in order 1.." +
                                      std::to_string(inst.num_machines));
    inst.machine_configs[static_cast<std::size_t>(k)] =
        static_cast<int>(detail::to_int(t[3], rd.line()));
    for (std::size_t x = 5; x < t.size(); ++x)
      inst.machine_workers[static_cast<std::size_t>(k)].push_back(
          static_cast<int>(detail::to_int(t[x], rd.line())) - 1);
  }

  auto read_matrix_row = [&](int width) {
    need("matrix row");
    auto t = detail::tokens(line);
    if (static_cast<int>(t.size()) != width)
      throw ParseError(rd.line(), "expected " + std::to_string(width) +
                                      " integers, got " +
                                      std::to_string(t.size()));
    std::vector<Time> row;
    row.reserve(t.size());
    for (const auto& x : t) row.push_back(detail::to_int(x, rd.line()));
    return row;
  };

  inst.setup.resize(static_cast<std::size_t>(inst.num_machines));
  for (int k = 0; k < inst.num_machines; ++k) {
    need("setup header");
    auto t = detail::tokens(line);
    if (t.size() != 2 || t[0] != "setup" ||
        detail::to_int(t[1], rd.line()) != k + 1)
      throw ParseError(rd.line(), "expected 'setup " + std::to_string(k + 1) +
                                      "', got '" + line + "'");
    int nc = inst.machine_configs[static_cast<std::size_t>(k)];
    if (nc < 1) throw ParseError(rd.line(), "machine must have >= 1 configuration");
    for (int c = 0; c < nc; ++c)
      inst.setup[static_cast<std::size_t>(k)].push_back(read_matrix_row(nc));
  }

  need("moving header");
  if (line != "moving")
    throw ParseError(rd.line(), "expected 'moving', got '" + line + "'");
  for (int k = 0; k < inst.num_machines; ++k)
    inst.moving.push_back(read_matrix_row(inst.num_machines));

  for (int i = 0; i < inst.num_jobs; ++i) {
    need("job header");
    auto t = detail::tokens(line);
    if (t.size() != 4 || t[0] != "job" || t[2] != "ops" ||
        detail::to_int(t[1], rd.line()) != i + 1)
      throw ParseError(rd.line(), "expected 'job " + std::to_string(i + 1) +
                                      " ops NI', got '" + line + "'");
    int ni = static_cast<int>(detail::to_int(t[3], rd.line()));
    if (ni < 1) throw ParseError(rd.line(), "job must have >= 1 operation");
    Job job;
    for (int j = 0; j < ni; ++j) {
      need("op header");
      auto h = detail::tokens(line);
      if (h.size() != 7 || h[0] != "op" || h[3] != "modes" || h[5] != "energies" ||
          detail::to_int(h[1], rd.line()) != i + 1 ||
          detail::to_int(h[2], rd.line()) != j + 1)
        throw ParseError(rd.line(), "expected 'op " + std::to_string(i + 1) +
                                        " " + std::to_string(j + 1) +
                                        " modes NM energies NE', got '" + line +
                                        "'");
      int nm = static_cast<int>(detail::to_int(h[4], rd.line()));
      int ne = static_cast<int>(detail::to_int(h[6], rd.line()));
      Operation op;
      for (int x = 0; x < nm; ++x) {
        need("mode line");
        auto m = detail::tokens(line);
        if (m.size() != 4 || m[0] != "mode")
          throw ParseError(rd.line(), "expected 'mode K C PT', got '" + line + "'");
        op.modes.push_back(
            {static_cast<int>(detail::to_int(m[1], rd.line())) - 1,
             static_cast<int>(detail::to_int(m[2], rd.line())) - 1,
             detail::to_int(m[3], rd.line())});
      }
      for (int x = 0; x < ne; ++x) {
        need("energy line");
        auto e = detail::tokens(line);
        if (e.size() != 4 || e[0] != "energy")
          throw ParseError(rd.line(), "expected 'energy K L RATE', got '" + line + "'");
        op.energy.push_back(
            {static_cast<int>(detail::to_int(e[1], rd.line())) - 1,
             static_cast<int>(detail::to_int(e[2], rd.line())) - 1,
             detail::to_int(e[3], rd.line())});
      }
      job.ops.push_back(std::move(op));
    }
    inst.jobs.push_back(std::move(job));
  }

  if (rd.next(line))
    throw ParseError(rd.line(), "trailing content after instance: '" + line + "'");

  validate_instance(inst);
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "rmtshop-instance v1\n";
  out << "jobs " << inst.num_jobs << "\n";
  out << "machines " << inst.num_machines << "\n";
  out << "workers " << inst.num_workers << "\n";
  out << "aux-energy " << inst.aux_energy << "\n";
  const Ratio rf = inst.rest_factor.normalized();
  out << "rest-factor " << rf.num << "/" << rf.den << "\n";
  for (int k = 0; k < inst.num_machines; ++k) {
    out << "machine " << k + 1 << " configs "
        << inst.machine_configs[static_cast<std::size_t>(k)] << " workers";
    for (int w : inst.machine_workers[static_cast<std::size_t>(k)])
      out << " " << w + 1;
    out << "\n";
  }
  for (int k = 0; k < inst.num_machines; ++k) {
    out << "setup " << k + 1 << "\n";
    for (const auto& row : inst.setup[static_cast<std::size_t>(k)]) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? " " : "") << row[c];
      out << "\n";
    }
  }
  out << "moving\n";
  for (const auto& row : inst.moving) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
    out << "\n";
  }
  for (int i = 0; i < inst.num_jobs; ++i) {
    const Job& job = inst.jobs[static_cast<std::size_t>(i)];
    out << "job " << i + 1 << " ops " << job.ops.size() << "\n";
    for (int j = 0; j < static_cast<int>(job.ops.size()); ++j) {
      const Operation& op = job.ops[static_cast<std::size_t>(j)];
      out << "op " << i + 1 << " " << j + 1 << " modes " << op.modes.size()
          << " energies " << op.energy.size() << "\n";
      for (const Mode& m : op.modes)
        out << "mode " << m.machine + 1 << " " << m.config + 1 << " "
            << m.proc_time << "\n";
      for (const EnergyRate& e : op.energy)
        out << "energy " << e.machine + 1 << " " << e.worker + 1 << " "
            << e.rate << "\n";
    }
  }
  return out.str();
}

inline void validate_params(const GenParams& p) {
  auto bad = [](const std::string& msg) {
    throw std::invalid_argument("generator parameters: " + msg);
  };
  if (p.num_jobs < 1 || p.num_machines < 1 || p.num_workers < 1)
    bad("counts must be >= 1");
  auto check_range = [&](const IntRange& r, const char* name, long long min_lo) {
    if (r.lo > r.hi) bad(std::string(name) + " range is empty");
    if (r.hi < 1 && std::string(name) != "setup" && std::string(name) != "moving" &&
        std::string(name) != "energy")
      bad(std::string(name) + " upper bound must be positive");
    if (r.lo < min_lo) bad(std::string(name) + " lower bound too small");
  };
  check_range(p.ops_per_job, "ops-per-job", 1);
  check_range(p.modes_per_op, "modes-per-op", 1);
  check_range(p.proc_time, "proc-time", 1);
  check_range(p.setup_time, "setup", 0);
  check_range(p.moving_time, "moving", 0);
  check_range(p.energy, "energy", 0);
  if (p.aux_energy < 0) bad("aux-energy must be nonnegative");
  Ratio rf = p.rest_factor;
  if (rf.den <= 0 || rf.num < 0 || rf.num > rf.den)
    bad("rest-factor must be a rational in [0, 1]");
  if (p.configs_per_machine && *p.configs_per_machine < 1)
    bad("configs-per-machine must be >= 1");
}

// Seeded instance generator. Energy rates are drawn from params.energy
// (default [3, 30]); per-machine configuration counts from
// [max(1, ceil(m/4)), max(1, floor(m/2))] unless pinned.
inline Instance generate_instance(const GenParams& params) {
  validate_params(params);
  Rng rng(params.seed);

  Instance inst;
  inst.num_jobs = params.num_jobs;
  inst.num_machines = params.num_machines;
  inst.num_workers = params.num_workers;
  inst.aux_energy = params.aux_energy;
  inst.rest_factor = params.rest_factor.normalized();

  const int m = params.num_machines;
  int cfg_lo = std::max(1, (m + 3) / 4);
  int cfg_hi = std::max(1, m / 2);
  if (cfg_hi < cfg_lo) cfg_hi = cfg_lo;

  for (int k = 0; k < m; ++k) {
    int nc = params.configs_per_machine
                 ? *params.configs_per_machine
                 : static_cast<int>(rng.range(cfg_lo, cfg_hi));
    inst.machine_configs.push_back(nc);

    // nonempty random worker subset
    int ws = static_cast<int>(rng.range(1, params.num_workers));
    std::vector<int> pool(static_cast<std::size_t>(params.num_workers));
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool);
    std::vector<int> workers(pool.begin(), pool.begin() + ws);
    std::sort(workers.begin(), workers.end());
    inst.machine_workers.push_back(std::move(workers));

    std::vector<std::vector<Time>> se(
        static_cast<std::size_t>(nc),
        std::vector<Time>(static_cast<std::size_t>(nc), 0));
    for (int c1 = 0; c1 < nc; ++c1)
      for (int c2 = 0; c2 < nc; ++c2)
        if (c1 != c2)
          se[static_cast<std::size_t>(c1)][static_cast<std::size_t>(c2)] =
              rng.range(params.setup_time.lo, params.setup_time.hi);
    inst.setup.push_back(std::move(se));
  }

  inst.moving.assign(static_cast<std::size_t>(m),
                     std::vector<Time>(static_cast<std::size_t>(m), 0));
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = k1 + 1; k2 < m; ++k2) {
      Time mt = rng.range(params.moving_time.lo, params.moving_time.hi);
      inst.moving[static_cast<std::size_t>(k1)][static_cast<std::size_t>(k2)] = mt;
      inst.moving[static_cast<std::size_t>(k2)][static_cast<std::size_t>(k1)] = mt;
    }

  // pool of all (machine, config) pairs, in (k, c) order
  std::vector<std::pair<int, int>> pair_pool;
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < inst.machine_configs[static_cast<std::size_t>(k)]; ++c)
      pair_pool.emplace_back(k, c);

  for (int i = 0; i < params.num_jobs; ++i) {
    Job job;
    int ni = static_cast<int>(rng.range(params.ops_per_job.lo, params.ops_per_job.hi));
    for (int j = 0; j < ni; ++j) {
      Operation op;
      long long hi = std::min<long long>(params.modes_per_op.hi,
                                         static_cast<long long>(pair_pool.size()));
      long long lo = std::min<long long>(params.modes_per_op.lo, hi);
      int nm = static_cast<int>(rng.range(lo, hi));
      std::vector<std::pair<int, int>> pool = pair_pool;
      rng.shuffle(pool);
      std::vector<std::pair<int, int>> chosen(pool.begin(), pool.begin() + nm);
      std::sort(chosen.begin(), chosen.end());
      for (auto [k, c] : chosen)
        op.modes.push_back({k, c, rng.range(params.proc_time.lo, params.proc_time.hi)});

      std::vector<int> machines;
      for (auto [k, c] : chosen) machines.push_back(k);
      std::sort(machines.begin(), machines.end());
      machines.erase(std::unique(machines.begin(), machines.end()), machines.end());
      for (int k : machines)
        for (int w : inst.machine_workers[static_cast<std::size_t>(k)])
          op.energy.push_back({k, w, rng.range(params.energy.lo, params.energy.hi)});
      job.ops.push_back(std::move(op));
    }
    inst.jobs.push_back(std::move(job));
  }

  validate_instance(inst);
  return inst;
}

// Named generator presets; sizes n x m x l x c with the configuration count
// pinned. E01..E20.
inline GenParams preset(const std::string& name) {
  struct Row {
    const char* name;
    int n, m, l, c;
  };
  static constexpr Row kTable[] = {
      {"E01", 5, 6, 3, 2},   {"E02", 5, 7, 3, 2},   {"E03", 6, 7, 3, 2},
      {"E04", 7, 7, 3, 2},   {"E05", 7, 7, 3, 3},   {"E06", 8, 7, 3, 2},
      {"E07", 8, 7, 3, 3},   {"E08", 9, 8, 4, 3},   {"E09", 10, 6, 4, 2},
      {"E10", 10, 6, 4, 3},  {"E11", 11, 8, 4, 4},  {"E12", 12, 8, 4, 4},
      {"E13", 15, 4, 5, 2},  {"E14", 15, 8, 6, 2},  {"E15", 15, 8, 6, 3},
      {"E16", 10, 15, 8, 4}, {"E17", 20, 5, 4, 2},  {"E18", 20, 10, 6, 3},
      {"E19", 20, 10, 6, 4}, {"E20", 20, 15, 8, 5},
  };
  for (const Row& r : kTable) {
    if (name == r.name) {
      GenParams p;
      p.num_jobs = r.n;
      p.num_machines = r.m;
      p.num_workers = r.l;
      p.configs_per_machine = r.c;
      return p;
    }
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected E01..E20)");
}

}  // namespace rmtshop
