#include "rmtshop/model.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "rmtshop/instance_io.hpp"
#include "testutil.hpp"

using namespace rmtshop;
using test::InstanceBuilder;

namespace {

Instance three_jobs_223() {
  InstanceBuilder b(2, 2);
  b.job().op({{0, 0, 4}}).op({{0, 0, 5}});
  b.job().op({{1, 0, 3}}).op({{1, 0, 6}});
  b.job().op({{0, 0, 2}}).op({{1, 0, 4}}).op({{0, 0, 7}});
  return b.build();
}

}  // namespace

TEST(CanonicalIndex, JobMajorOrder) {
  Instance inst = three_jobs_223();
  EXPECT_EQ(canonical_index(inst, {0, 0}), 0);
  EXPECT_EQ(canonical_index(inst, {2, 2}), 6);  // seventh slot
  EXPECT_EQ(canonical_index(inst, {1, 0}), 2);
}

TEST(CanonicalIndex, BijectionWithInverse) {
  Instance inst = three_jobs_223();
  for (int p = 0; p < inst.total_ops(); ++p)
    EXPECT_EQ(canonical_index(inst, op_from_index(inst, p)), p);
  EXPECT_THROW(canonical_index(inst, {3, 0}), std::out_of_range);
  EXPECT_THROW(canonical_index(inst, {0, 2}), std::out_of_range);
  EXPECT_THROW(op_from_index(inst, 7), std::out_of_range);
  EXPECT_THROW(op_from_index(inst, -1), std::out_of_range);
}

TEST(CanonicalIndex, BijectionOnGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GenParams p;
    p.num_jobs = 4;
    p.num_machines = 3;
    p.num_workers = 2;
    p.seed = seed;
    Instance inst = generate_instance(p);
    for (int pos = 0; pos < inst.total_ops(); ++pos)
      EXPECT_EQ(canonical_index(inst, op_from_index(inst, pos)), pos);
  }
}

TEST(IsEligible, ModeAndWorkerMustMatch) {
  InstanceBuilder b(2, 2);
  b.workers_on(0, {1});
  b.job().op({{0, 0, 5}});
  Instance inst = b.build();
  EXPECT_TRUE(is_eligible(inst, {0, 0}, 0, 0, 1));
  EXPECT_FALSE(is_eligible(inst, {0, 0}, 0, 0, 0));   // worker not in W_k
  EXPECT_FALSE(is_eligible(inst, {0, 0}, 1, 0, 1));   // machine not in modes
  EXPECT_FALSE(is_eligible(inst, {0, 0}, 0, 1, 1));   // config not in modes
}

TEST(IsEligible, EveryOperationHasATriple) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenParams p;
    p.num_jobs = 3;
    p.num_machines = 4;
    p.num_workers = 3;
    p.seed = seed;
    Instance inst = generate_instance(p);
    for (int i = 0; i < inst.num_jobs; ++i)
      for (int j = 0; j < static_cast<int>(inst.jobs[i].ops.size()); ++j) {
        bool any = false;
        for (int k = 0; k < inst.num_machines && !any; ++k)
          for (int c = 0; c < inst.machine_configs[k] && !any; ++c)
            for (int w = 0; w < inst.num_workers && !any; ++w)
              any = is_eligible(inst, {i, j}, k, c, w);
        EXPECT_TRUE(any);
      }
  }
}

TEST(RestTime, CeilingRule) {
  InstanceBuilder b(1, 1);
  b.job().op({{0, 0, 10}}).op({{0, 0, 7}});
  Instance inst = b.build();
  EXPECT_EQ(rest_time(inst, {0, 0}, inst.op({0, 0}).modes[0]), 1);
  EXPECT_EQ(rest_time(inst, {0, 1}, inst.op({0, 1}).modes[0]), 1);  // ceil(0.7)

  InstanceBuilder z(1, 1);
  z.rest(0, 1);
  z.job().op({{0, 0, 10}});
  Instance zero = z.build();
  EXPECT_EQ(rest_time(zero, {0, 0}, zero.op({0, 0}).modes[0]), 0);
}

TEST(RestTime, MatchesFloatingPointCeil) {
  const Ratio factors[] = {{0, 1}, {1, 10}, {1, 3}, {1, 2}, {1, 1}};
  for (const Ratio& rf : factors)
    for (Time pt = 1; pt <= 100; ++pt) {
      Time expected = static_cast<Time>(
          std::ceil(static_cast<double>(rf.num) / static_cast<double>(rf.den) *
                    static_cast<double>(pt)));
      EXPECT_EQ(rest_time(rf, pt), expected);
    }
}

TEST(RestTime, MonotoneInProcTime) {
  Ratio rf{1, 10};
  for (Time pt = 2; pt <= 200; ++pt)
    EXPECT_GE(rest_time(rf, pt), rest_time(rf, pt - 1));
}

TEST(RestTime, ModeMustBelongToOperation) {
  Instance inst = three_jobs_223();
  Mode foreign{1, 0, 9};
  EXPECT_THROW(rest_time(inst, {0, 0}, foreign), std::invalid_argument);
}

TEST(ValidateInstance, RejectsBrokenInvariants) {
  {
    Instance inst = three_jobs_223();
    inst.setup[0][0][0] = 3;
    EXPECT_THROW(
        {
          try {
            validate_instance(inst);
          } catch (const SemanticError& e) {
            EXPECT_NE(std::string(e.what()).find("setup diagonal nonzero"),
                      std::string::npos);
            throw;
          }
        },
        SemanticError);
  }
  {
    Instance inst = three_jobs_223();
    inst.machine_workers[1].clear();
    EXPECT_THROW(validate_instance(inst), SemanticError);
  }
  {
    Instance inst = three_jobs_223();
    inst.moving[0][1] = 9;  // breaks symmetry
    EXPECT_THROW(validate_instance(inst), SemanticError);
  }
  {
    Instance inst = three_jobs_223();
    inst.jobs[0].ops[0].modes.clear();
    EXPECT_THROW(validate_instance(inst), SemanticError);
  }
  {
    Instance inst = three_jobs_223();
    inst.jobs[0].ops[0].energy.pop_back();
    EXPECT_THROW(validate_instance(inst), SemanticError);
  }
  {
    Instance inst = three_jobs_223();
    inst.jobs[1].ops[0].modes[0].proc_time = 0;
    EXPECT_THROW(validate_instance(inst), SemanticError);
  }
}

TEST(EnergyRate, LookupAndMissingPair) {
  InstanceBuilder b(2, 2);
  b.job().op({{0, 0, 5}}, 7).energy(0, 1, 9);
  Instance inst = b.build();
  EXPECT_EQ(energy_rate(inst, {0, 0}, 0, 0), 7);
  EXPECT_EQ(energy_rate(inst, {0, 0}, 0, 1), 9);
  EXPECT_THROW(energy_rate(inst, {0, 0}, 1, 0), SemanticError);
}
