// Generates a preset-sized instance and runs a short memetic search.

#include <iostream>

#include "rmtshop/evolve.hpp"
#include "rmtshop/instance_io.hpp"

using namespace rmtshop;

int main() {
  GenParams p = preset("E01");
  p.seed = 42;
  Instance inst = generate_instance(p);

  RunConfig cfg;
  cfg.max_generations = 50;
  cfg.seed = 1;
  RunResult res = run(inst, cfg);

  std::cout << "best total energy " << res.best_te << " after "
            << res.generations << " generations\n";
  for (std::size_t g = 0; g < res.history.size(); g += 10)
    std::cout << "gen " << g << ": " << res.history[g] << "\n";
  return 0;
}
