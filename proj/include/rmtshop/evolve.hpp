#pragma once

// Memetic algorithm and GA baseline: smallest-energy-consumption (SEC)
// population seeding, job-based crossover for the OS layer, mask crossovers
// for the CS and WS layers, per-layer mutations, and the three OS
// neighborhoods with resource re-draw at affected positions.
//
// Every operator maps valid chromosomes to valid chromosomes. A run is a
// single seeded RNG stream; identical (instance, config) pairs produce
// identical results.

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/model.hpp"
#include "rmtshop/rng.hpp"

namespace rmtshop {

enum class Algorithm { MA, GA };
enum class ParentSelection { Uniform, Tournament };

struct RunConfig {
  int pop_size = 100;
  double cx_rate = 0.8;
  double mut_rate = 0.3;
  double ns_rate = 0.1;
  // Fraction of the initial population drawing resources uniformly instead
  // of by smallest energy consumption.
  double sec_uniform_fraction = 0.5;
  std::optional<int> max_generations = 300;
  std::optional<long long> time_budget_ms;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::MA;
  ParentSelection parent_selection = ParentSelection::Uniform;
  DecodeOptions decode_options;
};

struct RunResult {
  Chromosome best;
  Schedule best_schedule;
  Energy best_te = 0;
  std::vector<Energy> history;  // best TE after init, then per generation
  double wall_time_s = 0.0;
  int generations = 0;
};

struct Triple {
  int machine = 0;
  int config = 0;
  int worker = 0;
  Time proc_time = 0;
  Energy cost = 0;  // energy rate * processing time
};

// All eligible (machine, config, worker) triples of an operation, in
// lexicographic (machine, config, worker) order.
inline std::vector<Triple> eligible_triples(const Instance& inst, OpId id) {
  std::vector<Triple> out;
  for (const Mode& m : inst.op(id).modes)
    for (int w : inst.machine_workers[static_cast<std::size_t>(m.machine)])
      out.push_back({m.machine, m.config, w, m.proc_time,
                     energy_rate(inst, id, m.machine, w) * m.proc_time});
  return out;
}

inline void validate_config(const RunConfig& cfg) {
  auto bad = [](const char* msg) {
    throw std::invalid_argument(std::string("run config: ") + msg);
  };
  if (cfg.pop_size < 2) bad("population size must be >= 2");
  for (double r : {cfg.cx_rate, cfg.mut_rate, cfg.ns_rate, cfg.sec_uniform_fraction})
    if (r < 0.0 || r > 1.0) bad("rates must lie in [0, 1]");
  if (!cfg.max_generations && !cfg.time_budget_ms)
    bad("at least one termination rule must be set");
  if (cfg.max_generations && *cfg.max_generations < 0)
    bad("max generations must be >= 0");
}

// Initial population: random OS permutations; resources chosen per
// operation by smallest energy-rate * processing-time (ties to the
// lexicographically lowest triple), except for a fraction of individuals
// that draw uniformly for diversity.
inline std::vector<Chromosome> sec_init(const Instance& inst, int pop_size,
                                        Rng& rng,
                                        double uniform_fraction = 0.5) {
  const int total = inst.total_ops();
  std::vector<int> base_os;
  base_os.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < inst.num_jobs; ++i)
    for (std::size_t j = 0; j < inst.jobs[static_cast<std::size_t>(i)].ops.size(); ++j)
      base_os.push_back(i);

  std::vector<std::vector<Triple>> triples;
  std::vector<int> sec_choice;  // index of the min-cost triple per op
  for (int p = 0; p < total; ++p) {
    triples.push_back(eligible_triples(inst, op_from_index(inst, p)));
    int best = 0;
    for (int t = 1; t < static_cast<int>(triples.back().size()); ++t)
      if (triples.back()[static_cast<std::size_t>(t)].cost <
          triples.back()[static_cast<std::size_t>(best)].cost)
        best = t;
    sec_choice.push_back(best);
  }

  const int n_uniform =
      static_cast<int>(std::llround(uniform_fraction * pop_size));
  std::vector<Chromosome> pop;
  for (int idx = 0; idx < pop_size; ++idx) {
    Chromosome c;
    c.os = base_os;
    rng.shuffle(c.os);
    const bool greedy = idx < pop_size - n_uniform;
    for (int p = 0; p < total; ++p) {
      const auto& ts = triples[static_cast<std::size_t>(p)];
      const Triple& t =
          greedy ? ts[static_cast<std::size_t>(sec_choice[static_cast<std::size_t>(p)])]
                 : ts[static_cast<std::size_t>(rng.below(ts.size()))];
      c.cs.emplace_back(t.machine, t.config);
      c.ws.push_back(t.worker);
    }
    pop.push_back(std::move(c));
  }
  return pop;
}

// Re-draw the worker at every position whose worker is not qualified for
// the machine selected there. Valid chromosomes pass through untouched
// (and consume no randomness).
inline Chromosome repair(const Instance& inst, Chromosome c, Rng& rng) {
  for (std::size_t p = 0; p < c.ws.size(); ++p) {
    int k = c.cs[p].first;
    if (!inst.has_worker(k, c.ws[p]))
      c.ws[p] = rng.pick(inst.machine_workers[static_cast<std::size_t>(k)]);
  }
  return c;
}

// Job-based crossover with an explicit job subset (in_s[i] != 0 iff job i
// is kept in place from the first parent). Child 1 keeps parent 1's genes
// of jobs in S at their exact positions and fills the rest with parent 2's
// other genes in order (child 2 symmetric). CS/WS genes follow the parent
// that contributed the job.
inline std::pair<Chromosome, Chromosome> jbx_with_jobs(
    const Instance& inst, const Chromosome& p1, const Chromosome& p2,
    const std::vector<char>& in_s) {
  auto make_child = [&](const Chromosome& keep, const Chromosome& fill) {
    Chromosome c;
    const std::size_t len = keep.os.size();
    c.os.assign(len, -1);
    for (std::size_t p = 0; p < len; ++p)
      if (in_s[static_cast<std::size_t>(keep.os[p])]) c.os[p] = keep.os[p];
    std::size_t slot = 0;
    for (std::size_t p = 0; p < len; ++p) {
      int g = fill.os[p];
      if (in_s[static_cast<std::size_t>(g)]) continue;
      while (c.os[slot] != -1) ++slot;
      c.os[slot] = g;
    }
    c.cs.resize(len);
    c.ws.resize(len);
    const auto offsets = job_offsets(inst);
    for (int i = 0; i < inst.num_jobs; ++i) {
      const Chromosome& src = in_s[static_cast<std::size_t>(i)] ? keep : fill;
      const int b = offsets[static_cast<std::size_t>(i)];
      const int e = offsets[static_cast<std::size_t>(i) + 1];
      for (int q = b; q < e; ++q) {
        c.cs[static_cast<std::size_t>(q)] = src.cs[static_cast<std::size_t>(q)];
        c.ws[static_cast<std::size_t>(q)] = src.ws[static_cast<std::size_t>(q)];
      }
    }
    return c;
  };

  return {make_child(p1, p2), make_child(p2, p1)};
}

// Job-based crossover with a random nonempty proper job subset. With a
// single job the operator degenerates to cloning.
inline std::pair<Chromosome, Chromosome> jbx(const Instance& inst,
                                             const Chromosome& p1,
                                             const Chromosome& p2, Rng& rng) {
  const int n = inst.num_jobs;
  if (n < 2) return {p1, p2};
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (;;) {
    int count = 0;
    for (int i = 0; i < n; ++i) {
      in_s[static_cast<std::size_t>(i)] = rng.below(2) ? 1 : 0;
      count += in_s[static_cast<std::size_t>(i)];
    }
    if (count > 0 && count < n) break;
  }
  return jbx_with_jobs(inst, p1, p2, in_s);
}

// Mask crossover on the CS layer: positions with mask 0 inherit straight,
// positions with mask 1 swap between the parents. Workers orphaned by a
// machine change are repaired.
inline std::pair<Chromosome, Chromosome> mcx(const Instance& inst,
                                             const Chromosome& p1,
                                             const Chromosome& p2,
                                             const std::vector<std::uint8_t>& mask,
                                             Rng& rng) {
  Chromosome f1 = p1, f2 = p2;
  for (std::size_t p = 0; p < mask.size(); ++p)
    if (mask[p]) std::swap(f1.cs[p], f2.cs[p]);
  return {repair(inst, std::move(f1), rng), repair(inst, std::move(f2), rng)};
}

// Mask crossover on the WS layer; same mask semantics as mcx.
inline std::pair<Chromosome, Chromosome> mwx(const Instance& inst,
                                             const Chromosome& p1,
                                             const Chromosome& p2,
                                             const std::vector<std::uint8_t>& mask,
                                             Rng& rng) {
  Chromosome f1 = p1, f2 = p2;
  for (std::size_t p = 0; p < mask.size(); ++p)
    if (mask[p]) std::swap(f1.ws[p], f2.ws[p]);
  return {repair(inst, std::move(f1), rng), repair(inst, std::move(f2), rng)};
}

// OS mutation: swap two random positions.
inline Chromosome mutate_os(const Instance&, Chromosome c, Rng& rng) {
  const std::size_t len = c.os.size();
  if (len < 2) return c;
  std::size_t a = static_cast<std::size_t>(rng.below(len));
  std::size_t b = static_cast<std::size_t>(rng.below(len));
  while (b == a) b = static_cast<std::size_t>(rng.below(len));
  std::swap(c.os[a], c.os[b]);
  return c;
}

namespace detail {

// Random subset of [0, len) of size uniform in [1, ceil(len/4)], ascending.
inline std::vector<int> mutation_positions(std::size_t len, Rng& rng) {
  const long long hi = static_cast<long long>((len + 3) / 4);
  const int count = static_cast<int>(rng.range(1, std::max<long long>(1, hi)));
  std::vector<int> pool(len);
  std::iota(pool.begin(), pool.end(), 0);
  rng.shuffle(pool);
  std::vector<int> chosen(pool.begin(), pool.begin() + count);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace detail

// CS mutation: a random subset of positions gets a fresh uniformly drawn
// eligible mode; orphaned workers are repaired.
inline Chromosome mutate_cs(const Instance& inst, Chromosome c, Rng& rng) {
  for (int p : detail::mutation_positions(c.cs.size(), rng)) {
    const Operation& op = inst.op(op_from_index(inst, p));
    const Mode& m = rng.pick(op.modes);
    c.cs[static_cast<std::size_t>(p)] = {m.machine, m.config};
  }
  return repair(inst, std::move(c), rng);
}

// WS mutation: a random subset of positions gets a fresh eligible worker
// for the machine currently selected there.
inline Chromosome mutate_ws(const Instance& inst, Chromosome c, Rng& rng) {
  for (int p : detail::mutation_positions(c.ws.size(), rng)) {
    int k = c.cs[static_cast<std::size_t>(p)].first;
    c.ws[static_cast<std::size_t>(p)] =
        rng.pick(inst.machine_workers[static_cast<std::size_t>(k)]);
  }
  return c;
}

namespace detail {

// Canonical position of the operation each OS slot denotes.
inline std::vector<int> os_to_canonical(const Instance& inst,
                                        const std::vector<int>& os) {
  const auto offsets = job_offsets(inst);
  std::vector<int> next(static_cast<std::size_t>(inst.num_jobs), 0);
  std::vector<int> map;
  map.reserve(os.size());
  for (int job : os)
    map.push_back(offsets[static_cast<std::size_t>(job)] +
                  next[static_cast<std::size_t>(job)]++);
  return map;
}

// Operations whose OS slot moved, then fresh eligible resources for them:
// a coin decides between the smallest energy-cost triple and a uniform
// draw, so the moves both exploit and explore resource choices.
inline void redraw_moved(const Instance& inst, const std::vector<int>& old_os,
                         Chromosome& c, Rng& rng) {
  const auto before = os_to_canonical(inst, old_os);
  const auto after = os_to_canonical(inst, c.os);
  std::vector<int> moved;
  std::vector<int> pos_before(before.size()), pos_after(after.size());
  for (std::size_t p = 0; p < before.size(); ++p) {
    pos_before[static_cast<std::size_t>(before[p])] = static_cast<int>(p);
    pos_after[static_cast<std::size_t>(after[p])] = static_cast<int>(p);
  }
  for (std::size_t q = 0; q < pos_before.size(); ++q)
    if (pos_before[q] != pos_after[q]) moved.push_back(static_cast<int>(q));
  for (int q : moved) {
    const auto triples = eligible_triples(inst, op_from_index(inst, q));
    std::size_t pick;
    if (rng.below(2) == 0) {
      pick = 0;
      for (std::size_t t = 1; t < triples.size(); ++t)
        if (triples[t].cost < triples[pick].cost) pick = t;
    } else {
      pick = static_cast<std::size_t>(rng.below(triples.size()));
    }
    c.cs[static_cast<std::size_t>(q)] = {triples[pick].machine, triples[pick].config};
    c.ws[static_cast<std::size_t>(q)] = triples[pick].worker;
  }
}

}  // namespace detail

// N1: swap two OS genes of different jobs, then re-draw resources for the
// operations whose slots moved.
inline Chromosome n1(const Instance& inst, Chromosome c, Rng& rng) {
  const std::size_t len = c.os.size();
  bool mixed = false;
  for (std::size_t p = 1; p < len; ++p)
    if (c.os[p] != c.os[0]) mixed = true;
  if (!mixed) return c;

  std::size_t a = static_cast<std::size_t>(rng.below(len));
  std::size_t b = static_cast<std::size_t>(rng.below(len));
  while (c.os[b] == c.os[a]) b = static_cast<std::size_t>(rng.below(len));
  const std::vector<int> old_os = c.os;
  std::swap(c.os[a], c.os[b]);
  detail::redraw_moved(inst, old_os, c, rng);
  return c;
}

// N2 with explicit endpoints: reverse the inclusive OS segment [a, b].
inline Chromosome n2_at(const Instance& inst, Chromosome c, std::size_t a,
                        std::size_t b, Rng& rng) {
  if (a > b) std::swap(a, b);
  const std::vector<int> old_os = c.os;
  std::reverse(c.os.begin() + static_cast<long>(a),
               c.os.begin() + static_cast<long>(b) + 1);
  detail::redraw_moved(inst, old_os, c, rng);
  return c;
}

// N2: reverse the OS segment between two random positions (inclusive).
inline Chromosome n2(const Instance& inst, Chromosome c, Rng& rng) {
  const std::size_t len = c.os.size();
  if (len < 2) return c;
  std::size_t a = static_cast<std::size_t>(rng.below(len));
  std::size_t b = static_cast<std::size_t>(rng.below(len));
  while (b == a) b = static_cast<std::size_t>(rng.below(len));
  return n2_at(inst, std::move(c), a, b, rng);
}

// N3 with explicit positions: the gene at b is re-inserted immediately
// after the gene at a, the genes in between shift over.
inline Chromosome n3_at(const Instance& inst, Chromosome c, std::size_t a,
                        std::size_t b, Rng& rng) {
  const std::vector<int> old_os = c.os;
  int gene = c.os[b];
  c.os.erase(c.os.begin() + static_cast<long>(b));
  std::size_t dest = b > a ? a + 1 : a;
  c.os.insert(c.os.begin() + static_cast<long>(dest), gene);
  detail::redraw_moved(inst, old_os, c, rng);
  return c;
}

// N3: move the second chosen gene to immediately follow the first.
inline Chromosome n3(const Instance& inst, Chromosome c, Rng& rng) {
  const std::size_t len = c.os.size();
  if (len < 2) return c;
  std::size_t a = static_cast<std::size_t>(rng.below(len));
  std::size_t b = static_cast<std::size_t>(rng.below(len));
  while (b == a) b = static_cast<std::size_t>(rng.below(len));
  return n3_at(inst, std::move(c), a, b, rng);
}

namespace detail {

struct ChromLess {
  bool operator()(const Chromosome& a, const Chromosome& b) const {
    return std::tie(a.os, a.cs, a.ws) < std::tie(b.os, b.cs, b.ws);
  }
};

struct Individual {
  Chromosome chrom;
  Energy te = 0;
};

}  // namespace detail

// Evolutionary driver. Per generation: uniform parent pairing with
// JBX + MCX + MWX at the crossover rate; per-layer mutations, each applied
// independently at the mutation rate; Q = parents + both offspring pools.
// The memetic variant additionally passes individuals of Q through N1, N2,
// N3 at the neighborhood rate, keeping each move only if it improves the
// total energy. Survivors: Q truncated to the population size by ascending
// TE with exact-genotype duplicates ranked last.
inline RunResult run(const Instance& inst, const RunConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);

  auto fitness = [&](const Chromosome& c) {
    return decode(inst, c, cfg.decode_options).total_energy;
  };
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  std::vector<detail::Individual> pop;
  for (Chromosome& c : sec_init(inst, cfg.pop_size, rng, cfg.sec_uniform_fraction)) {
    Energy te = fitness(c);
    pop.push_back({std::move(c), te});
  }

  RunResult result;
  auto best_of = [](const std::vector<detail::Individual>& v) {
    Energy best = v.front().te;
    for (const auto& ind : v) best = std::min(best, ind.te);
    return best;
  };
  result.history.push_back(best_of(pop));

  auto pick_parent = [&]() -> const detail::Individual& {
    if (cfg.parent_selection == ParentSelection::Tournament) {
      const auto& a = pop[static_cast<std::size_t>(rng.below(pop.size()))];
      const auto& b = pop[static_cast<std::size_t>(rng.below(pop.size()))];
      return a.te <= b.te ? a : b;
    }
    return pop[static_cast<std::size_t>(rng.below(pop.size()))];
  };

  int gen = 0;
  while (!(cfg.max_generations && gen >= *cfg.max_generations) &&
         !(cfg.time_budget_ms && elapsed_ms() >= *cfg.time_budget_ms)) {
    std::vector<detail::Individual> q = pop;

    // crossover offspring
    const int pairs = cfg.pop_size / 2;
    for (int x = 0; x < pairs; ++x) {
      const Chromosome p1 = pick_parent().chrom;
      const Chromosome p2 = pick_parent().chrom;
      if (!rng.chance(cfg.cx_rate)) continue;
      auto [c1, c2] = jbx(inst, p1, p2, rng);
      std::vector<std::uint8_t> mask(c1.os.size());
      for (auto& m : mask) m = static_cast<std::uint8_t>(rng.below(2));
      std::tie(c1, c2) = mcx(inst, c1, c2, mask, rng);
      for (auto& m : mask) m = static_cast<std::uint8_t>(rng.below(2));
      std::tie(c1, c2) = mwx(inst, c1, c2, mask, rng);
      Energy te1 = fitness(c1), te2 = fitness(c2);
      q.push_back({std::move(c1), te1});
      q.push_back({std::move(c2), te2});
    }

    // mutation offspring
    for (int i = 0; i < cfg.pop_size; ++i) {
      const bool m_os = rng.chance(cfg.mut_rate);
      const bool m_cs = rng.chance(cfg.mut_rate);
      const bool m_ws = rng.chance(cfg.mut_rate);
      if (!m_os && !m_cs && !m_ws) continue;
      Chromosome c = pop[static_cast<std::size_t>(i)].chrom;
      if (m_os) c = mutate_os(inst, std::move(c), rng);
      if (m_cs) c = mutate_cs(inst, std::move(c), rng);
      if (m_ws) c = mutate_ws(inst, std::move(c), rng);
      Energy te = fitness(c);
      q.push_back({std::move(c), te});
    }

    // neighborhood search (memetic variant only), first improvement
    if (cfg.algorithm == Algorithm::MA && cfg.ns_rate > 0) {
      for (auto& ind : q) {
        if (!rng.chance(cfg.ns_rate)) continue;
        for (int move = 0; move < 3; ++move) {
          Chromosome cand = move == 0   ? n1(inst, ind.chrom, rng)
                            : move == 1 ? n2(inst, ind.chrom, rng)
                                        : n3(inst, ind.chrom, rng);
          Energy te = fitness(cand);
          if (te < ind.te) {
            ind.chrom = std::move(cand);
            ind.te = te;
          }
        }
      }
    }

    // elitist truncation, exact duplicates demoted
    std::vector<char> dup(q.size(), 0);
    {
      std::set<Chromosome, detail::ChromLess> seen;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (!seen.insert(q[i].chrom).second) dup[i] = 1;
    }
    std::vector<std::size_t> order(q.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::make_pair(dup[a], q[a].te) < std::make_pair(dup[b], q[b].te);
    });
    std::vector<detail::Individual> next;
    next.reserve(static_cast<std::size_t>(cfg.pop_size));
    for (std::size_t i = 0; i < order.size() && next.size() < static_cast<std::size_t>(cfg.pop_size); ++i)
      next.push_back(std::move(q[order[i]]));
    pop = std::move(next);

    result.history.push_back(pop.front().te);
    ++gen;
  }

  result.generations = gen;
  const detail::Individual* best = &pop.front();
  for (const auto& ind : pop)
    if (ind.te < best->te) best = &ind;
  result.best = best->chrom;
  result.best_te = best->te;
  result.best_schedule = decode(inst, result.best, cfg.decode_options);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rmtshop
