#include "rmtshop/engine.hpp"

#include <gtest/gtest.h>

#include "rmtshop/instance_io.hpp"
#include "rmtshop/validator.hpp"
#include "testutil.hpp"

using namespace rmtshop;
using test::InstanceBuilder;

namespace {

Chromosome first_triple_chromosome(const Instance& inst) {
  Chromosome c;
  for (int i = 0; i < inst.num_jobs; ++i)
    for (std::size_t j = 0; j < inst.jobs[static_cast<std::size_t>(i)].ops.size(); ++j)
      c.os.push_back(i);
  for (int p = 0; p < inst.total_ops(); ++p) {
    const Mode& m = inst.op(op_from_index(inst, p)).modes.front();
    c.cs.emplace_back(m.machine, m.config);
    c.ws.push_back(inst.machine_workers[static_cast<std::size_t>(m.machine)].front());
  }
  return c;
}

}  // namespace

TEST(Decode, SingleOperationStartsAtZero) {
  InstanceBuilder b(1, 1);
  b.job().op({{0, 0, 5}});
  Instance inst = b.build();
  Schedule s = decode(inst, first_triple_chromosome(inst));
  EXPECT_EQ(s.assign[0].start, 0);
  EXPECT_EQ(s.assign[0].completion, 5);
  EXPECT_EQ(s.makespan, 5);
}

TEST(Decode, WorkerRestDelaysSecondOperation) {
  // one job, two ops on the same machine and worker, Pt 10 each,
  // rest factor 1/10: worker ready at 10 + 1 = 11
  InstanceBuilder b(1, 1);
  b.job().op({{0, 0, 10}}).op({{0, 0, 10}});
  Instance inst = b.build();
  Schedule s = decode(inst, first_triple_chromosome(inst));
  EXPECT_EQ(s.assign[0].start, 0);
  EXPECT_EQ(s.assign[1].start, 11);
  EXPECT_EQ(s.makespan, 21);
}

TEST(Decode, ConfigurationSetupDelaysMachine) {
  // two jobs, one op each on machine 1 with configs 1 then 2,
  // Se[1][2] = 3, Pt 4 each, distinct workers: starts (0, 7)
  InstanceBuilder b(1, 2);
  b.configs(0, 2).setup(0, 0, 1, 3).setup(0, 1, 0, 3);
  b.job().op({{0, 0, 4}});
  b.job().op({{0, 1, 4}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 1};
  c.cs = {{0, 0}, {0, 1}};
  c.ws = {0, 1};
  Schedule s = decode(inst, c);
  EXPECT_EQ(s.assign[0].start, 0);
  EXPECT_EQ(s.assign[1].start, 7);
}

TEST(Decode, MovingTimeAppliesOnMachineChange) {
  // same worker, two machines, moving time 2: second op waits for the move
  InstanceBuilder b(2, 1);
  b.moving(0, 1, 2);
  b.job().op({{0, 0, 4}});
  b.job().op({{1, 0, 3}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 1};
  c.cs = {{0, 0}, {1, 0}};
  c.ws = {0, 0};
  Schedule s = decode(inst, c);
  EXPECT_EQ(s.assign[0].start, 0);
  EXPECT_EQ(s.assign[1].start, 6);  // 4 + move 2, no rest on top

  DecodeOptions opt;
  opt.rest_plus_move = true;
  Schedule s2 = decode(inst, c, opt);
  EXPECT_EQ(s2.assign[1].start, 7);  // 4 + move 2 + rest ceil(0.4) = 1
}

TEST(Decode, FirstOperationOnMachineIncursNoSetup) {
  InstanceBuilder b(1, 1);
  b.configs(0, 2).setup(0, 0, 1, 5).setup(0, 1, 0, 5);
  b.job().op({{0, 1, 4}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0};
  c.cs = {{0, 1}};
  c.ws = {0};
  EXPECT_EQ(decode(inst, c).assign[0].start, 0);
}

TEST(Decode, RejectsInvalidChromosome) {
  InstanceBuilder b(2, 2);
  b.workers_on(0, {0});
  b.job().op({{0, 0, 5}}).op({{0, 0, 5}});
  Instance inst = b.build();
  Chromosome c = first_triple_chromosome(inst);
  c.ws[1] = 1;  // not in W_0
  try {
    decode(inst, c);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_NE(std::string(e.what()).find("position 1"), std::string::npos);
  }
  Chromosome bad_os = first_triple_chromosome(inst);
  bad_os.os = {0, 0, 0};
  EXPECT_THROW(decode(inst, bad_os), EncodingError);
}

TEST(Decode, DeterministicAndValid) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams p;
    p.num_jobs = 3 + static_cast<int>(seed % 3);
    p.num_machines = 3;
    p.num_workers = 2;
    p.seed = seed;
    Instance inst = generate_instance(p);
    for (int x = 0; x < 7; ++x) {
      Chromosome c = test::random_chromosome(inst, rng);
      Schedule s1 = decode(inst, c);
      Schedule s2 = decode(inst, c);
      ASSERT_EQ(s1, s2);
      ASSERT_TRUE(validate(inst, s1).empty());
      ASSERT_TRUE(test::feasible_brute(inst, s1));
    }
  }
}

TEST(TotalEnergy, DirectEvaluation) {
  {
    InstanceBuilder b(1, 1);
    b.aux(2);
    b.job().op({{0, 0, 4}}, 3);
    Instance inst = b.build();
    Schedule s = decode(inst, first_triple_chromosome(inst));
    s.makespan = 10;  // stored horizon dominates the single op
    EXPECT_EQ(total_energy(inst, s), 2 * 10 + 3 * 4);
  }
  {
    InstanceBuilder b(1, 1);
    b.aux(0);
    b.job().op({{0, 0, 4}}, 3).op({{0, 0, 5}}, 6);
    Instance inst = b.build();
    Schedule s = decode(inst, first_triple_chromosome(inst));
    EXPECT_EQ(total_energy(inst, s), 3 * 4 + 6 * 5);
  }
  {
    // two ops with energy-time products 12 and 35, AE 1, makespan 9
    InstanceBuilder b(2, 2);
    b.aux(1);
    b.job().op({{0, 0, 4}}, 3);
    b.job().op({{1, 0, 7}}, 5);
    Instance inst = b.build();
    Chromosome c;
    c.os = {0, 1};
    c.cs = {{0, 0}, {1, 0}};
    c.ws = {0, 1};
    Schedule s = decode(inst, c);
    s.makespan = 9;
    EXPECT_EQ(total_energy(inst, s), 56);
  }
}

TEST(TotalEnergy, StoredByDecodeAndIncreasingInMakespan) {
  GenParams p;
  p.num_jobs = 3;
  p.num_machines = 2;
  p.num_workers = 2;
  p.seed = 9;
  Instance inst = generate_instance(p);
  Rng rng(1);
  Chromosome c = test::random_chromosome(inst, rng);
  Schedule s = decode(inst, c);
  EXPECT_EQ(s.total_energy, total_energy(inst, s));
  Schedule longer = s;
  longer.makespan += 1;
  EXPECT_GT(total_energy(inst, longer), total_energy(inst, s));
}

TEST(Makespan, MaxOverJobLastCompletions) {
  InstanceBuilder b(3, 3);
  b.job().op({{0, 0, 5}});
  b.job().op({{1, 0, 9}});
  b.job().op({{2, 0, 7}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 1, 2};
  c.cs = {{0, 0}, {1, 0}, {2, 0}};
  c.ws = {0, 1, 2};
  Schedule s = decode(inst, c);
  EXPECT_EQ(makespan(s), 9);
  EXPECT_EQ(s.makespan, 9);

  Schedule empty;
  EXPECT_THROW(makespan(empty), std::domain_error);
}

TEST(Decode, DisjointOperationsCommute) {
  // two jobs on disjoint machines and workers: swapping their OS order
  // changes nothing about the objective
  InstanceBuilder b(2, 2);
  b.aux(3);
  b.job().op({{0, 0, 4}}, 5).op({{0, 0, 6}}, 2);
  b.job().op({{1, 0, 3}}, 7).op({{1, 0, 8}}, 4);
  Instance inst = b.build();
  Chromosome c1, c2;
  c1.os = {0, 1, 0, 1};
  c2.os = {1, 0, 1, 0};
  c1.cs = c2.cs = {{0, 0}, {0, 0}, {1, 0}, {1, 0}};
  c1.ws = c2.ws = {0, 0, 1, 1};
  EXPECT_EQ(decode(inst, c1).total_energy, decode(inst, c2).total_energy);
}

TEST(ScheduleCsv, RoundTrip) {
  GenParams p;
  p.num_jobs = 4;
  p.num_machines = 3;
  p.num_workers = 2;
  p.seed = 21;
  Instance inst = generate_instance(p);
  Rng rng(2);
  Schedule s = decode(inst, test::random_chromosome(inst, rng));
  std::string csv = schedule_to_csv(inst, s);
  Schedule back = schedule_from_csv(inst, csv);
  EXPECT_EQ(back.assign, s.assign);
  EXPECT_EQ(back.makespan, s.makespan);
  EXPECT_EQ(back.total_energy, s.total_energy);
  EXPECT_EQ(back.machine_timeline, s.machine_timeline);
  EXPECT_EQ(back.worker_timeline, s.worker_timeline);
  EXPECT_THROW(schedule_from_csv(inst, "bogus\n"), ParseError);
}
