#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "nc11/bounds.hpp"
#include "nc11/coding.hpp"
#include "support.hpp"

using namespace nc11;

TEST(Fraction, Arithmetic) {
  EXPECT_EQ(Fraction(2, 4), Fraction(1, 2));
  EXPECT_EQ(Fraction(1, -3), Fraction(-1, 3));
  EXPECT_EQ(Fraction(1, 6) - Fraction(1, 9), Fraction(1, 18));
  EXPECT_EQ(Fraction(2, 3) * Fraction(3, 4), Fraction(1, 2));
  EXPECT_LT(Fraction(1, 3), Fraction(1, 2));
  EXPECT_THROW(Fraction(1, 0), ContractError);
}

TEST(ConventionalBound, Examples) {
  EXPECT_DOUBLE_EQ(bound_conventional(generate_full_mesh(5, 20.0)), 21460.0);
  EXPECT_DOUBLE_EQ(bound_conventional(generate_ring(5, 20.0)), 32190.0);
  Instance single = generate_ring(4, 0.0);
  single.demands.resize(1);
  EXPECT_DOUBLE_EQ(bound_conventional(single), 0.0);
}

TEST(NcBound, MeshFiveOptimal) {
  Instance inst = generate_full_mesh(5, 20.0);
  auto plan = select_pairs_osh(inst, route_all(inst));
  BoundReport b = bound_nc(inst, plan.assignment);
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    EXPECT_EQ(b.h_hat[i], 1);
    EXPECT_DOUBLE_EQ(b.h_characteristic[i], 0.75);
  }
  EXPECT_DOUBLE_EQ(b.nc_lower_characteristic, 16095.0);
  EXPECT_DOUBLE_EQ(b.nc_lower_pairs, 16095.0);
  EXPECT_LE(b.nc_lower_characteristic, 26825.0);
}

TEST(NcBound, EmptyAssignmentGivesConventional) {
  Instance inst = generate_ring(6, 20.0);
  BoundReport b = bound_nc(inst, {});
  EXPECT_DOUBLE_EQ(b.nc_lower_pairs, bound_conventional(inst));
  EXPECT_DOUBLE_EQ(b.nc_lower_pairs, b.conventional_lower);
}

TEST(NcBound, UniformFormsCoincide) {
  for (int n = 3; n <= 9; ++n) {
    for (bool ring : {false, true}) {
      Instance inst = ring ? generate_ring(n, 30.0) : generate_full_mesh(n, 30.0);
      auto plan = select_pairs_osh(inst, route_all(inst));
      BoundReport b = bound_nc(inst, plan.assignment);
      EXPECT_NEAR(b.nc_lower_pairs, b.nc_lower_characteristic, 1e-6);
      EXPECT_LE(b.nc_lower_pairs, b.conventional_lower + 1e-9);
    }
  }
}

TEST(NcBound, HoldsForEveryHeuristicOnUniformInstances) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 25; ++i) {
    Instance inst = fixtures::random_instance(rng, 6, 0.5, 40.0, 40.0);
    auto r = route_all(inst);
    std::vector<std::pair<std::vector<PathPair>, CodingAssignment>> runs;
    for (Combo c : kAllCombos) runs.emplace_back(r, select_pairs_fixed(inst, r, c));
    auto plan = select_pairs_osh(inst, r);
    runs.emplace_back(plan.routing, plan.assignment);
    for (const auto& [routing, a] : runs) {
      const PowerReport rep = eval_with_coding(inst, routing, a);
      const BoundReport b = bound_nc(inst, a);
      EXPECT_GE(rep.p_total + 1e-9, b.nc_lower_pairs);
      EXPECT_GE(rep.p_total + 1e-9, b.nc_lower_characteristic);
      EXPECT_GE(rep.p1_conventional + 1e-9, b.conventional_lower);
      EXPECT_GE(b.nc_lower_characteristic, 0.0);
    }
  }
}

TEST(MeshClosedForm, Examples) {
  ClosedForm f = mesh_power(5, 20.0);
  EXPECT_DOUBLE_EQ(f.p_conventional, 32190.0);
  EXPECT_DOUBLE_EQ(f.p_nc, 26825.0);
  EXPECT_EQ(f.savings, Fraction(1, 6));
  EXPECT_NEAR(100 * mesh_power(4, 3.0).savings.value(), 11.1111, 5e-5);
  EXPECT_NEAR(100 * mesh_power(14, 3.0).savings.value(), 15.3846, 5e-5);
  EXPECT_THROW(mesh_power(2, 1.0), DomainError);
}

TEST(MeshClosedForm, PowerAgreesWithSavings) {
  for (int n = 3; n <= 40; ++n) {
    ClosedForm f = mesh_power(n, 17.0);
    EXPECT_NEAR(f.p_nc, f.p_conventional * (1.0 - f.savings.value()), 1e-6 * f.p_conventional) << n;
  }
}

TEST(MeshClosedForm, Fluctuation) {
  EXPECT_EQ(mesh_fluctuation(4), Fraction(1, 18));
  EXPECT_EQ(mesh_fluctuation(14), Fraction(1, 78));
  EXPECT_NEAR(mesh_fluctuation(14).value(), (16.6667 - 15.3846) / 100, 1e-6);
  for (int n = 4; n <= 200; n += 2) EXPECT_EQ(mesh_savings(n - 1) - mesh_savings(n), mesh_fluctuation(n));
  EXPECT_LT(mesh_fluctuation(100000).value(), 1e-5);
}

TEST(MeshClosedForm, EvenSavingsIncrease) {
  for (int n = 4; n <= 200; n += 2) EXPECT_LT(mesh_savings(n), mesh_savings(n + 2));
}

TEST(MeshClosedForm, RefusesCustomDemands) {
  Instance inst = generate_full_mesh(5, 20.0);
  inst.demands.pop_back();
  EXPECT_THROW(mesh_power(inst), DomainError);
  EXPECT_THROW(mesh_power(generate_ring(5, 20.0)), DomainError);
  EXPECT_DOUBLE_EQ(mesh_power(generate_full_mesh(5, 20.0)).p_nc, 26825.0);
}

TEST(RingClosedForm, Classification) {
  EXPECT_EQ(ring_classify(11), RingClass::odd1);
  EXPECT_EQ(ring_classify(13), RingClass::odd2);
  EXPECT_EQ(ring_classify(12), RingClass::even1);
  EXPECT_EQ(ring_classify(14), RingClass::even2);
  EXPECT_EQ(ring_classify(100), RingClass::even1);
  EXPECT_EQ(ring_classify(1001), RingClass::odd2);
  EXPECT_THROW(ring_classify(2), DomainError);
}

TEST(RingClosedForm, SharedHops) {
  EXPECT_EQ(ring_shared_hops(11), 352);
  EXPECT_EQ(ring_shared_hops(5), 30);
  EXPECT_EQ(ring_shared_hops(4), 8);
  // The even-1 form as printed: N^2/2 * (1 + 3(N-4)/4).
  for (int n : {4, 8, 12, 100}) {
    EXPECT_DOUBLE_EQ(static_cast<double>(ring_shared_hops(n)), n * n / 2.0 * (1 + 3.0 * (n - 4) / 4));
  }
}

TEST(RingClosedForm, Power) {
  ClosedForm f = ring_power(5, 20.0);
  EXPECT_DOUBLE_EQ(f.p_conventional, 53650.0);
  EXPECT_DOUBLE_EQ(f.p_nc, 37555.0);
  EXPECT_EQ(f.savings, Fraction(3, 10));
  EXPECT_NEAR(100 * ring_power(15, 1.0).savings.value(), 31.4286, 5e-5);
  EXPECT_EQ(ring_power(15, 1.0).savings, Fraction(990, 3150));
  EXPECT_EQ(ring_power(11, 1.0).savings, Fraction(352, 1210));
}

TEST(RingClosedForm, ApproachesThreeEighthsWithinEachClass) {
  for (RingClass c : {RingClass::odd1, RingClass::odd2, RingClass::even1, RingClass::even2}) {
    double prev = 1.0;
    for (int n = 3; n <= 2000; ++n) {
      if (ring_classify(n) != c) continue;
      const double gap = std::abs(ring_power(n, 1.0).savings.value() - 0.375);
      EXPECT_LE(gap, prev + 1e-15) << to_string(c) << " " << n;
      prev = gap;
    }
    EXPECT_LT(prev, 1e-3);
  }
}

TEST(RingClosedForm, ConventionalHopsIdentity) {
  for (int n = 3; n <= 15; ++n) {
    long total = 0;
    for (const auto& pp : route_all(generate_ring(n, 1.0))) total += pp.total_hops();
    EXPECT_EQ(total, ring_total_hops(n));
  }
}

TEST(ClosedForms, FastAtLargeSizes) {
  const auto t0 = std::chrono::steady_clock::now();
  const double ring = ring_power(1001, 20.0).savings.value();
  const double mesh = mesh_power(1000, 20.0).savings.value();
  const auto dt = std::chrono::steady_clock::now() - t0;
  EXPECT_LT(std::abs(100 * ring - 37.5), 0.1);
  EXPECT_LT(std::abs(100 * mesh - 100.0 / 6), 0.02);
  EXPECT_LT(std::chrono::duration<double>(dt).count(), 0.01);
}
