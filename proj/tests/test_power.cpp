#include <gtest/gtest.h>

#include <random>

#include "nc11/bounds.hpp"
#include "nc11/coding.hpp"
#include "nc11/power.hpp"
#include "support.hpp"

using namespace nc11;

TEST(PowerParams, DefaultSlope) {
  EXPECT_DOUBLE_EQ(PowerParams{}.slope(), 26.825);
  // The conventional mesh curve: 32190 W over 3 * 5 * 4 * 20 Gbps-hops.
  EXPECT_DOUBLE_EQ(32190.0 / (3.0 * 5 * 4 * 20), 26.825);
}

TEST(Conventional, ReferenceValues) {
  Instance mesh = generate_full_mesh(5, 20.0);
  EXPECT_DOUBLE_EQ(eval_conventional(mesh, route_all(mesh)), 32190.0);
  Instance ring = generate_ring(5, 20.0);
  EXPECT_DOUBLE_EQ(eval_conventional(ring, route_all(ring)), 53650.0);
  Instance zero = generate_ring(7, 0.0);
  EXPECT_DOUBLE_EQ(eval_conventional(zero, route_all(zero)), 0.0);
}

TEST(Conventional, RoutingMustMatchDemands) {
  Instance inst = generate_ring(4, 10.0);
  auto r = route_all(inst);
  r.pop_back();
  EXPECT_THROW(eval_conventional(inst, r), ContractError);
  auto swapped = route_all(inst);
  std::swap(swapped[0], swapped[1]);
  EXPECT_THROW(eval_conventional(inst, swapped), ContractError);
}

TEST(WithCoding, EmptyAssignment) {
  Instance inst = generate_full_mesh(4, 20.0);
  auto r = route_all(inst);
  PowerReport rep = eval_with_coding(inst, r, {});
  EXPECT_DOUBLE_EQ(rep.p_total, rep.p1_conventional);
  EXPECT_DOUBLE_EQ(rep.p2_reduction, 0.0);
  EXPECT_DOUBLE_EQ(rep.savings_fraction, 0.0);
}

TEST(WithCoding, ReferenceValues) {
  Instance mesh = generate_full_mesh(5, 20.0);
  auto plan = select_pairs_osh(mesh, route_all(mesh));
  PowerReport m = eval_with_coding(mesh, plan.routing, plan.assignment);
  EXPECT_NEAR(m.p_total, 26825.0, 1e-6);
  EXPECT_NEAR(m.savings_fraction, 1.0 / 6.0, 1e-12);

  Instance ring = generate_ring(5, 20.0);
  auto rplan = select_pairs_osh(ring, route_all(ring));
  PowerReport r = eval_with_coding(ring, rplan.routing, rplan.assignment);
  EXPECT_NEAR(r.p_total, 37555.0, 1e-6);
  EXPECT_NEAR(r.savings_fraction, 0.3, 1e-12);
}

TEST(WithCoding, RejectsAssignmentOffTheRouting) {
  Instance inst = generate_full_mesh(4, 20.0);
  auto r = route_all(inst);
  CodingAssignment a = select_pairs_fixed(inst, r, kProtProt);
  ASSERT_FALSE(a.pairs.empty());
  a.pairs[0].shared_links.push_back({4, 1});
  a.pairs[0].benefit += inst.power.slope() * 20.0;
  EXPECT_THROW(eval_with_coding(inst, r, a), ContractError);
}

TEST(WithCoding, Invariants) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    Instance inst = fixtures::random_instance(rng, 6, 0.6, 10.0, 100.0);
    auto plan = select_pairs_osh(inst, route_all(inst));
    PowerReport rep = eval_with_coding(inst, plan.routing, plan.assignment);
    EXPECT_NEAR(rep.p_total, rep.p1_conventional - rep.p2_reduction, 1e-9);
    EXPECT_GE(rep.p2_reduction, 0.0);
    EXPECT_LE(rep.p2_reduction, rep.p1_conventional);
    EXPECT_GE(rep.savings_fraction, 0.0);
    EXPECT_LE(rep.savings_fraction, 1.0);
    EXPECT_GE(rep.p1_conventional + 1e-9, bound_conventional(inst));
  }
}

TEST(WithCoding, LinearInUniformVolume) {
  for (double c : {0.5, 2.0, 7.25}) {
    Instance a = generate_ring(8, 20.0);
    Instance b = generate_ring(8, 20.0 * c);
    auto pa = select_pairs_osh(a, route_all(a));
    auto pb = select_pairs_osh(b, route_all(b));
    PowerReport ra = eval_with_coding(a, pa.routing, pa.assignment);
    PowerReport rb = eval_with_coding(b, pb.routing, pb.assignment);
    EXPECT_NEAR(rb.p_total, c * ra.p_total, 1e-6);
    EXPECT_NEAR(rb.p1_conventional, c * ra.p1_conventional, 1e-6);
    EXPECT_NEAR(rb.p2_reduction, c * ra.p2_reduction, 1e-6);
    EXPECT_NEAR(rb.savings_fraction, ra.savings_fraction, 1e-12);
  }
}
