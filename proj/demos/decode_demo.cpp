// Builds a two-job instance by hand, decodes a chromosome, and prints the
// schedule rows and objective.

#include <iostream>

#include "rmtshop/engine.hpp"
#include "rmtshop/instance_io.hpp"
#include "rmtshop/validator.hpp"

using namespace rmtshop;

int main() {
  GenParams p;
  p.num_jobs = 2;
  p.num_machines = 2;
  p.num_workers = 2;
  p.ops_per_job = {2, 2};
  p.seed = 7;
  Instance inst = generate_instance(p);

  Chromosome c;
  c.os = {0, 1, 0, 1};
  for (int pos = 0; pos < inst.total_ops(); ++pos) {
    const Mode& m = inst.op(op_from_index(inst, pos)).modes.front();
    c.cs.emplace_back(m.machine, m.config);
    c.ws.push_back(inst.machine_workers[static_cast<std::size_t>(m.machine)].front());
  }

  Schedule s = decode(inst, c);
  std::cout << schedule_to_csv(inst, s);
  std::cout << "makespan " << s.makespan << ", total energy " << s.total_energy
            << ", violations " << validate(inst, s).size() << "\n";
  return 0;
}
