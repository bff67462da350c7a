#pragma once

// Exhaustive enumeration over the decoder's chromosome space: every OS
// multiset permutation crossed with every eligible (machine, config,
// worker) triple per operation. Deliberately dumb; serves as ground truth
// for metaheuristic tests on tiny instances. The optimum is with respect
// to the semi-active decoder's schedule space.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/evolve.hpp"
#include "rmtshop/model.hpp"

namespace rmtshop {

struct OracleSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Energy optimal_te = 0;
  Chromosome best;
  Schedule best_schedule;
  std::uint64_t enumerated = 0;
};

// Number of chromosomes: multiset permutations of the OS layer times the
// product of per-operation eligible-triple counts. Saturates at UINT64_MAX
// on overflow.
inline std::uint64_t chromosome_space_size(const Instance& inst) {
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
  };
  // multinomial (sum n_i)! / prod n_i! built incrementally via C(n, k)
  std::uint64_t perms = 1;
  std::uint64_t placed = 0;
  for (const Job& job : inst.jobs) {
    const std::uint64_t ni = job.ops.size();
    for (std::uint64_t x = 1; x <= ni; ++x) {
      perms = mul(perms, placed + x);
      perms /= x;  // binomial prefix products are divisible
      if (perms == UINT64_MAX) return UINT64_MAX;
    }
    placed += ni;
  }
  std::uint64_t combos = 1;
  for (int i = 0; i < inst.num_jobs; ++i)
    for (int j = 0; j < static_cast<int>(inst.jobs[static_cast<std::size_t>(i)].ops.size()); ++j)
      combos = mul(combos, eligible_triples(inst, {i, j}).size());
  return mul(perms, combos);
}

// Decodes every valid chromosome and returns the minimum total energy with
// a witness. Ties go to the first chromosome in lexicographic enumeration
// order (OS permutations ascending, triple selections ascending with the
// first operation most significant). Refuses to start if the space exceeds
// `limit`.
inline OracleResult enumerate_optimal(const Instance& inst, std::uint64_t limit,
                                      const DecodeOptions& opt = {}) {
  const std::uint64_t space = chromosome_space_size(inst);
  if (space > limit)
    throw OracleSizeError("chromosome space has " +
                          (space == UINT64_MAX ? std::string(">= 2^64")
                                               : std::to_string(space)) +
                          " elements, limit is " + std::to_string(limit));

  const int total = inst.total_ops();
  std::vector<std::vector<Triple>> triples;
  for (int p = 0; p < total; ++p)
    triples.push_back(eligible_triples(inst, op_from_index(inst, p)));

  std::vector<int> os;
  for (int i = 0; i < inst.num_jobs; ++i)
    for (std::size_t j = 0; j < inst.jobs[static_cast<std::size_t>(i)].ops.size(); ++j)
      os.push_back(i);

  OracleResult result;
  Energy best = std::numeric_limits<Energy>::max();

  Chromosome c;
  c.cs.resize(static_cast<std::size_t>(total));
  c.ws.resize(static_cast<std::size_t>(total));
  std::vector<int> sel(static_cast<std::size_t>(total), 0);

  do {
    c.os = os;
    std::fill(sel.begin(), sel.end(), 0);
    for (;;) {
      for (int p = 0; p < total; ++p) {
        const Triple& t =
            triples[static_cast<std::size_t>(p)][static_cast<std::size_t>(sel[static_cast<std::size_t>(p)])];
        c.cs[static_cast<std::size_t>(p)] = {t.machine, t.config};
        c.ws[static_cast<std::size_t>(p)] = t.worker;
      }
      Schedule s = decode(inst, c, opt);
      ++result.enumerated;
      if (s.total_energy < best) {
        best = s.total_energy;
        result.best = c;
        result.best_schedule = std::move(s);
      }
      // odometer, last operation fastest
      int p = total - 1;
      while (p >= 0) {
        if (++sel[static_cast<std::size_t>(p)] <
            static_cast<int>(triples[static_cast<std::size_t>(p)].size()))
          break;
        sel[static_cast<std::size_t>(p)] = 0;
        --p;
      }
      if (p < 0) break;
    }
  } while (std::next_permutation(os.begin(), os.end()));

  result.optimal_te = best;
  return result;
}

}  // namespace rmtshop
