// Command-line front end: instance generation, MA/GA runs, benchmark
// reports, schedule checking, LP export, and SVG rendering.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmtshop/rmtshop.hpp"

namespace fs = std::filesystem;
using namespace rmtshop;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string history_csv(const RunResult& res) {
  std::ostringstream out;
  out << "generation,best_te\n";
  for (std::size_t g = 0; g < res.history.size(); ++g)
    out << g << "," << res.history[g] << "\n";
  return out.str();
}

struct GenFlags {
  std::string preset;
  int jobs = 0, machines = 0, workers = 0;
  std::vector<long long> ops{2, 5}, modes{1, 3}, proc{1, 20}, setup{1, 5},
      moving{1, 5}, energy{3, 30};
  long long aux_energy = 5;
  int configs = 0;
  std::uint64_t seed = 0;

  GenParams to_params() const {
    GenParams p;
    if (!preset.empty()) {
      p = rmtshop::preset(preset);
    } else {
      p.num_jobs = jobs;
      p.num_machines = machines;
      p.num_workers = workers;
      if (configs > 0) p.configs_per_machine = configs;
    }
    p.ops_per_job = {ops[0], ops[1]};
    p.modes_per_op = {modes[0], modes[1]};
    p.proc_time = {proc[0], proc[1]};
    p.setup_time = {setup[0], setup[1]};
    p.moving_time = {moving[0], moving[1]};
    p.energy = {energy[0], energy[1]};
    p.aux_energy = aux_energy;
    p.seed = seed;
    return p;
  }

  void add_options(CLI::App* cmd, bool sizes_come_from_presets) {
    if (!sizes_come_from_presets) {
      cmd->add_option("--preset", preset, "generator preset E01..E20");
      cmd->add_option("--jobs", jobs, "number of jobs");
      cmd->add_option("--machines", machines, "number of machines");
      cmd->add_option("--workers", workers, "number of workers");
      cmd->add_option("--configs", configs,
                      "pin configurations per machine (0 = random draw)");
    }
    cmd->add_option("--ops-per-job", ops, "ops per job range")->expected(2);
    cmd->add_option("--modes-per-op", modes, "modes per op range")->expected(2);
    cmd->add_option("--proc-time", proc, "processing time range")->expected(2);
    cmd->add_option("--setup-time", setup, "setup time range")->expected(2);
    cmd->add_option("--moving-time", moving, "moving time range")->expected(2);
    cmd->add_option("--energy", energy, "energy rate range")->expected(2);
    cmd->add_option("--aux-energy", aux_energy, "auxiliary energy rate");
  }
};

RunConfig make_config(const std::string& algorithm, int pop, double cx,
                      double mut, double ns, int generations,
                      long long budget_ms) {
  RunConfig cfg;
  cfg.algorithm = algorithm == "ga" ? Algorithm::GA : Algorithm::MA;
  cfg.pop_size = pop;
  cfg.cx_rate = cx;
  cfg.mut_rate = mut;
  cfg.ns_rate = ns;
  cfg.max_generations = generations;
  if (budget_ms > 0) cfg.time_budget_ms = budget_ms;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reconfigurable machine tool job shop solver suite"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  GenFlags gen_flags;
  gen_flags.add_options(gen, false);
  gen->add_option("--seed", gen_flags.seed, "generator seed");
  std::string gen_out;
  gen->add_option("--out", gen_out, "output .instance path (default stdout)");

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "run the MA or GA on an instance");
  std::string solve_instance, solve_algorithm = "ma", solve_out_dir;
  std::uint64_t solve_seed = 0;
  int solve_pop = 100, solve_gens = 300;
  double solve_cx = 0.8, solve_mut = 0.3, solve_ns = 0.1;
  long long solve_budget = 0;
  solve->add_option("--instance", solve_instance, ".instance file")->required();
  solve->add_option("--algorithm", solve_algorithm, "ma or ga")
      ->check(CLI::IsMember({"ma", "ga"}));
  solve->add_option("--seed", solve_seed, "run seed");
  solve->add_option("--pop", solve_pop, "population size");
  solve->add_option("--generations", solve_gens, "generation budget");
  solve->add_option("--time-budget-ms", solve_budget, "wall-clock budget");
  solve->add_option("--cx-rate", solve_cx, "crossover rate");
  solve->add_option("--mut-rate", solve_mut, "mutation rate");
  solve->add_option("--ns-rate", solve_ns, "neighborhood search rate");
  solve->add_option("--out-dir", solve_out_dir,
                    "write schedule.csv and history.csv here");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "replicated MA/GA comparison");
  GenFlags bench_gen;
  std::vector<std::string> bench_presets, bench_instances, bench_algorithms;
  int bench_reps = 20, bench_pop = 100, bench_gens = 300;
  double bench_cx = 0.8, bench_mut = 0.3, bench_ns = 0.1;
  std::uint64_t bench_seed = 0;
  std::string bench_out_dir = ".";
  bench_cmd->add_option("--preset", bench_presets,
                        "generator presets to benchmark (repeatable)");
  bench_cmd->add_option("--instance", bench_instances,
                        ".instance files to benchmark (repeatable)");
  bench_cmd
      ->add_option("--algorithm", bench_algorithms, "ma and/or ga (repeatable)")
      ->check(CLI::IsMember({"ma", "ga"}));
  bench_cmd->add_option("--replications", bench_reps, "runs per algorithm");
  bench_cmd->add_option("--seed", bench_seed, "master seed");
  bench_cmd->add_option("--pop", bench_pop, "population size");
  bench_cmd->add_option("--generations", bench_gens, "generation budget");
  bench_cmd->add_option("--cx-rate", bench_cx, "crossover rate");
  bench_cmd->add_option("--mut-rate", bench_mut, "mutation rate");
  bench_cmd->add_option("--ns-rate", bench_ns, "neighborhood search rate");
  bench_cmd->add_option("--out-dir", bench_out_dir, "report output directory");
  bench_gen.add_options(bench_cmd, true);

  // --- check ---
  auto* check = app.add_subcommand("check", "validate a schedule or LP solution");
  std::string check_instance, check_schedule, check_lp;
  check->add_option("--instance", check_instance, ".instance file")->required();
  check->add_option("--schedule", check_schedule, "schedule.csv to validate");
  check->add_option("--lp-solution", check_lp, "'name value' solver output");

  // --- export-lp ---
  auto* exp = app.add_subcommand("export-lp", "emit the MIP in LP format");
  std::string exp_instance, exp_out;
  exp->add_option("--instance", exp_instance, ".instance file")->required();
  exp->add_option("--out", exp_out, "output .lp path (default stdout)");

  // --- gantt ---
  auto* gantt = app.add_subcommand("gantt", "render a schedule as SVG");
  std::string gantt_instance, gantt_schedule, gantt_out;
  gantt->add_option("--instance", gantt_instance, ".instance file")->required();
  gantt->add_option("--schedule", gantt_schedule, "schedule.csv")->required();
  gantt->add_option("--out", gantt_out, "output .svg path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (gen_flags.preset.empty() &&
          (gen_flags.jobs < 1 || gen_flags.machines < 1 || gen_flags.workers < 1))
        throw std::invalid_argument(
            "either --preset or --jobs/--machines/--workers is required");
      GenParams p = gen_flags.to_params();
      std::string text = serialize_instance(generate_instance(p));
      if (gen_out.empty())
        std::cout << text;
      else
        write_file(gen_out, text);
      return 0;
    }

    if (*solve) {
      Instance inst = parse_instance(read_file(solve_instance));
      RunConfig cfg = make_config(solve_algorithm, solve_pop, solve_cx,
                                  solve_mut, solve_ns, solve_gens, solve_budget);
      cfg.seed = solve_seed;
      RunResult res = run(inst, cfg);
      std::cout << "algorithm " << solve_algorithm << "\n"
                << "best total energy " << res.best_te << "\n"
                << "makespan " << res.best_schedule.makespan << "\n"
                << "generations " << res.generations << "\n"
                << "wall time " << detail::fixed2(res.wall_time_s) << " s\n";
      if (!solve_out_dir.empty()) {
        write_file(fs::path(solve_out_dir) / "schedule.csv",
                   schedule_to_csv(inst, res.best_schedule));
        write_file(fs::path(solve_out_dir) / "history.csv", history_csv(res));
      }
      return 0;
    }

    if (*bench_cmd) {
      if (bench_algorithms.empty()) bench_algorithms = {"ma", "ga"};
      std::vector<BenchInput> inputs;
      for (std::size_t i = 0; i < bench_presets.size(); ++i) {
        GenFlags g = bench_gen;
        g.preset = bench_presets[i];
        GenParams p = g.to_params();
        p.seed = derive_seed(bench_seed, 1000000 + i);
        std::string text = serialize_instance(generate_instance(p));
        write_file(fs::path(bench_out_dir) / (bench_presets[i] + ".instance"),
                   text);
        inputs.push_back({bench_presets[i], std::move(text)});
      }
      for (const std::string& f : bench_instances)
        inputs.push_back({fs::path(f).stem().string(), read_file(f)});
      if (inputs.empty())
        throw std::invalid_argument("nothing to benchmark: pass --preset or --instance");

      std::vector<RunConfig> configs;
      for (const std::string& a : bench_algorithms)
        configs.push_back(make_config(a, bench_pop, bench_cx, bench_mut,
                                      bench_ns, bench_gens, 0));
      BenchOptions opt;
      opt.replications = bench_reps;
      opt.master_seed = bench_seed;
      BenchReport report = bench(inputs, configs, opt);

      write_file(fs::path(bench_out_dir) / "report.csv", report_csv(report));
      write_file(fs::path(bench_out_dir) / "rpd_reps.csv", rpd_reps_csv(report));
      auto samples = rpd_samples(report);
      if (!samples.empty())
        write_file(fs::path(bench_out_dir) / "boxplot.svg", boxplot_svg(samples));
      std::cout << report_csv(report);
      return 0;
    }

    if (*check) {
      Instance inst = parse_instance(read_file(check_instance));
      std::vector<Violation> vs;
      if (!check_schedule.empty())
        vs = validate(inst, schedule_from_csv(inst, read_file(check_schedule)));
      else if (!check_lp.empty())
        vs = check_lp_solution(inst, read_file(check_lp));
      else
        throw std::invalid_argument("pass --schedule or --lp-solution");
      if (vs.empty()) {
        std::cout << "OK\n";
        return 0;
      }
      std::cout << violations_report(inst, vs);
      return 1;
    }

    if (*exp) {
      Instance inst = parse_instance(read_file(exp_instance));
      std::string text = export_lp(inst);
      if (exp_out.empty())
        std::cout << text;
      else
        write_file(exp_out, text);
      return 0;
    }

    if (*gantt) {
      Instance inst = parse_instance(read_file(gantt_instance));
      Schedule sched = schedule_from_csv(inst, read_file(gantt_schedule));
      std::string text = gantt_svg(inst, sched);
      if (gantt_out.empty())
        std::cout << text;
      else
        write_file(gantt_out, text);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
