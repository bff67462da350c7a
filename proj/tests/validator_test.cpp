#include "rmtshop/validator.hpp"

#include <gtest/gtest.h>

#include "rmtshop/instance_io.hpp"
#include "testutil.hpp"

using namespace rmtshop;
using test::InstanceBuilder;

namespace {

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  for (const Violation& v : vs)
    if (v.kind == k) return true;
  return false;
}

std::vector<Violation> constraint_violations(const Instance& inst,
                                             const Schedule& s) {
  std::vector<Violation> out;
  for (Violation& v : validate(inst, s))
    if (v.kind != ViolationKind::ObjectiveMismatch) out.push_back(std::move(v));
  return out;
}

// Restore stored objective fields after a perturbation so only constraint
// checks are compared against the brute-force evaluator.
void refresh_objective(const Instance& inst, Schedule& s) {
  s.makespan = 0;
  for (const auto& a : s.assign) s.makespan = std::max(s.makespan, a.completion);
  bool sound = true;
  for (int p = 0; p < static_cast<int>(s.assign.size()); ++p)
    if (!is_eligible(inst, op_from_index(inst, p), s.assign[p].machine,
                     s.assign[p].config, s.assign[p].worker))
      sound = false;
  if (sound) s.total_energy = total_energy(inst, s);
}

Instance medium_instance(std::uint64_t seed) {
  GenParams p;
  p.num_jobs = 3;
  p.num_machines = 3;
  p.num_workers = 2;
  p.ops_per_job = {2, 3};
  p.seed = seed;
  return generate_instance(p);
}

}  // namespace

TEST(Validate, DecoderOutputIsClean) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = medium_instance(seed);
    Schedule s = decode(inst, test::random_chromosome(inst, rng));
    EXPECT_TRUE(validate(inst, s).empty());
  }
}

TEST(Validate, IneligibleWorkerIsExactlyOneViolation) {
  InstanceBuilder b(1, 2);
  b.workers_on(0, {0});
  b.job().op({{0, 0, 5}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0};
  c.cs = {{0, 0}};
  c.ws = {0};
  Schedule s = decode(inst, c);
  s.assign[0].worker = 1;  // not in W_1
  auto vs = constraint_violations(inst, s);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::Eligibility);
  EXPECT_EQ(vs[0].subjects[0], (OpId{0, 0}));
}

TEST(Validate, DetectsEachConstraintKind) {
  InstanceBuilder b(2, 2);
  b.configs(0, 2).setup(0, 0, 1, 3).setup(0, 1, 0, 3).moving(0, 1, 2).aux(1);
  b.job().op({{0, 0, 4}}).op({{0, 1, 4}});
  b.job().op({{1, 0, 6}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 0, 1};
  c.cs = {{0, 0}, {0, 1}, {1, 0}};
  c.ws = {0, 0, 1};
  const Schedule good = decode(inst, c);
  ASSERT_TRUE(validate(inst, good).empty());

  {
    Schedule s = good;
    s.assign[0].completion += 1;  // breaks (2)
    refresh_objective(inst, s);
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::CompletionArithmetic));
  }
  {
    Schedule s = good;
    s.assign[1].start = s.assign[0].completion - 1;
    s.assign[1].completion = s.assign[1].start + 4;
    refresh_objective(inst, s);
    auto vs = validate(inst, s);
    EXPECT_TRUE(has_kind(vs, ViolationKind::JobPrecedence));
    EXPECT_TRUE(has_kind(vs, ViolationKind::MachineOverlap));
  }
  {
    Schedule s = good;  // second op on machine 0 honors precedence but not setup
    s.assign[1].start = s.assign[0].completion + 1;  // needs +3 setup
    s.assign[1].completion = s.assign[1].start + 4;
    refresh_objective(inst, s);
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::SetupGap));
  }
  {
    Schedule s = good;
    s.assign[2].worker = 0;
    s.assign[2].start = s.assign[1].completion;  // same worker, move gap unpaid
    s.assign[2].completion = s.assign[2].start + 6;
    refresh_objective(inst, s);
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::WorkerGap));
  }
  {
    Schedule s = good;
    s.assign[2].worker = 0;
    s.assign[2].start = s.assign[1].start;  // overlaps op 2 for worker 1
    s.assign[2].completion = s.assign[2].start + 6;
    refresh_objective(inst, s);
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::WorkerOverlap));
  }
  {
    Schedule s = good;
    s.assign[2].machine = -1;
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::AssignmentCardinality));
  }
  {
    Schedule s = good;
    s.makespan += 5;
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::ObjectiveMismatch));
  }
  {
    Schedule s = good;
    s.total_energy += 1;
    EXPECT_TRUE(has_kind(validate(inst, s), ViolationKind::ObjectiveMismatch));
  }
}

TEST(Validate, RestGapVersusMoveGap) {
  // worker stays on one machine: rest of the finished op must elapse
  InstanceBuilder b(1, 1);
  b.job().op({{0, 0, 10}}).op({{0, 0, 10}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 0};
  c.cs = {{0, 0}, {0, 0}};
  c.ws = {0, 0};
  Schedule s = decode(inst, c);
  ASSERT_EQ(s.assign[1].start, 11);
  s.assign[1].start = 10;
  s.assign[1].completion = 20;
  refresh_objective(inst, s);
  auto vs = validate(inst, s);
  ASSERT_TRUE(has_kind(vs, ViolationKind::WorkerGap));
  for (const Violation& v : vs)
    if (v.kind == ViolationKind::WorkerGap) {
      EXPECT_EQ(v.amount, 1);
      EXPECT_NE(v.detail.find("rest"), std::string::npos);
    }
}

TEST(Validate, AgreesWithBruteForceUnderPerturbation) {
  Rng rng(17);
  int checked = 0, disturbed = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance inst = medium_instance(seed);
    for (int x = 0; x < 8; ++x) {
      Schedule s = decode(inst, test::random_chromosome(inst, rng));
      // random perturbation: start shift, resource swap, or none
      int what = static_cast<int>(rng.below(4));
      int p = static_cast<int>(rng.below(s.assign.size()));
      if (what == 0) {
        long long delta = rng.range(-3, 3);
        s.assign[static_cast<std::size_t>(p)].start += delta;
        s.assign[static_cast<std::size_t>(p)].completion += delta;
      } else if (what == 1) {
        int q = static_cast<int>(rng.below(s.assign.size()));
        std::swap(s.assign[static_cast<std::size_t>(p)].worker,
                  s.assign[static_cast<std::size_t>(q)].worker);
      } else if (what == 2) {
        int q = static_cast<int>(rng.below(s.assign.size()));
        std::swap(s.assign[static_cast<std::size_t>(p)].machine,
                  s.assign[static_cast<std::size_t>(q)].machine);
        std::swap(s.assign[static_cast<std::size_t>(p)].config,
                  s.assign[static_cast<std::size_t>(q)].config);
        std::swap(s.assign[static_cast<std::size_t>(p)].completion,
                  s.assign[static_cast<std::size_t>(q)].completion);
        std::swap(s.assign[static_cast<std::size_t>(p)].start,
                  s.assign[static_cast<std::size_t>(q)].start);
      }
      refresh_objective(inst, s);
      bool brute_ok = test::feasible_brute(inst, s);
      bool validator_ok = constraint_violations(inst, s).empty();
      ASSERT_EQ(brute_ok, validator_ok) << "seed " << seed << " case " << x;
      ++checked;
      if (!brute_ok) ++disturbed;
    }
  }
  EXPECT_GE(checked, 100);
  EXPECT_GT(disturbed, 10);  // the perturbations actually bite
}

TEST(Validate, PureAndDeterministic) {
  Instance inst = medium_instance(1);
  Rng rng(4);
  Schedule s = decode(inst, test::random_chromosome(inst, rng));
  Schedule copy = s;
  auto v1 = validate(inst, s);
  auto v2 = validate(inst, s);
  EXPECT_EQ(s, copy);
  EXPECT_EQ(v1.size(), v2.size());
}

TEST(ViolationsReport, OneLinePerViolation) {
  InstanceBuilder b(1, 1);
  b.job().op({{0, 0, 5}}).op({{0, 0, 5}});
  Instance inst = b.build();
  Chromosome c;
  c.os = {0, 0};
  c.cs = {{0, 0}, {0, 0}};
  c.ws = {0, 0};
  Schedule s = decode(inst, c);
  s.assign[1].start -= 2;
  s.assign[1].completion -= 2;
  refresh_objective(inst, s);
  auto vs = validate(inst, s);
  ASSERT_FALSE(vs.empty());
  std::string report = violations_report(inst, vs);
  EXPECT_EQ(static_cast<std::size_t>(std::count(report.begin(), report.end(), '\n')),
            vs.size());
  EXPECT_NE(report.find("(1,2)"), std::string::npos);
}
