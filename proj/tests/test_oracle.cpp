#include <gtest/gtest.h>

#include <random>

#include "nc11/analysis.hpp"
#include "nc11/oracle.hpp"
#include "support.hpp"

using namespace nc11;

TEST(OptimalMatching, ReferenceValues) {
  Instance mesh = generate_full_mesh(5, 20.0);
  OracleResult m = optimal_matching(mesh, route_all(mesh));
  EXPECT_TRUE(m.exact);
  EXPECT_NEAR(m.best_power, 26825.0, 1e-6);
  Instance ring = generate_ring(5, 20.0);
  EXPECT_NEAR(optimal_matching(ring, route_all(ring)).best_power, 37555.0, 1e-6);
}

TEST(OptimalMatching, NothingToCode) {
  // A 4-cycle whose two demands head to different destinations.
  Instance inst = generate_ring(4, 20.0);
  inst.demands = {{1, 3, 20.0}, {2, 4, 20.0}};
  auto r = route_all(inst);
  OracleResult m = optimal_matching(inst, r);
  EXPECT_TRUE(m.best_assignment.pairs.empty());
  EXPECT_DOUBLE_EQ(m.best_power, eval_conventional(inst, r));
}

TEST(OptimalMatching, GuardRefusesHugeClusters) {
  Instance inst = generate_full_mesh(20, 1.0);
  EXPECT_THROW(optimal_matching(inst, route_all(inst)), GuardExceeded);
}

TEST(OptimalJoint, ReferenceValues) {
  auto pct = [](const Instance& inst) {
    OracleResult r = optimal_joint(inst, 8);
    EXPECT_TRUE(r.exact);
    return 100.0 * (1.0 - r.best_power / eval_conventional(inst, r.best_routing));
  };
  EXPECT_NEAR(pct(generate_full_mesh(5, 20.0)), 16.6667, 5e-5);
  EXPECT_NEAR(pct(generate_ring(7, 20.0)), 30.9524, 5e-5);
  EXPECT_NEAR(pct(generate_ring(3, 20.0)), 16.6667, 5e-5);
}

TEST(OptimalJoint, Guards) {
  EXPECT_THROW(optimal_joint(generate_ring(8, 1.0), 8), GuardExceeded);
  EXPECT_THROW(optimal_joint(generate_ring(5, 1.0), 0), ContractError);
  // A budget smaller than the candidate count is reported as inexact.
  EXPECT_FALSE(optimal_joint(generate_full_mesh(5, 1.0), 2).exact);
}

TEST(OptimalJoint, NoWorseThanAnyHeuristic) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 15; ++i) {
    Instance inst = fixtures::random_instance(rng, 5, 0.6, 10.0, 100.0);
    OracleResult best = optimal_joint(inst, 8);
    EXPECT_NO_THROW(validate_assignment(inst, best.best_routing, best.best_assignment));
    EXPECT_NEAR(best.best_power,
                eval_with_coding(inst, best.best_routing, best.best_assignment).p_total, 1e-6);
    for (Heuristic h : {Heuristic::osh, Heuristic::pp, Heuristic::ww, Heuristic::wp,
                        Heuristic::pw, Heuristic::conventional}) {
      EXPECT_LE(best.best_power, evaluate(inst, h).report.p_total + 1e-6) << to_string(h);
    }
  }
}

TEST(OptimalJoint, Deterministic) {
  Instance inst = generate_full_mesh(6, 20.0);
  OracleResult a = optimal_joint(inst, 8);
  OracleResult b = optimal_joint(inst, 8);
  EXPECT_EQ(a.best_power, b.best_power);
  EXPECT_EQ(a.explored, b.explored);
  ASSERT_EQ(a.best_assignment.pairs.size(), b.best_assignment.pairs.size());
  for (std::size_t i = 0; i < a.best_assignment.pairs.size(); ++i) {
    EXPECT_EQ(a.best_assignment.pairs[i].d1, b.best_assignment.pairs[i].d1);
    EXPECT_EQ(a.best_assignment.pairs[i].d2, b.best_assignment.pairs[i].d2);
  }
  for (std::size_t i = 0; i < a.best_routing.size(); ++i) {
    EXPECT_EQ(a.best_routing[i].protection, b.best_routing[i].protection);
  }
}

TEST(OptimalJoint, AgreesWithOshOnRegularTopologies) {
  for (int n = 3; n <= 6; ++n) {
    for (bool ring : {false, true}) {
      Instance inst = ring ? generate_ring(n, 20.0) : generate_full_mesh(n, 20.0);
      EXPECT_NEAR(optimal_joint(inst, 8).best_power, evaluate(inst, Heuristic::osh).report.p_total,
                  1e-6)
          << (ring ? "ring " : "mesh ") << n;
    }
  }
}
