#include <gtest/gtest.h>

#include <random>
#include <string>

#include "nc11/instance.hpp"
#include "nc11/instance_io.hpp"
#include "support.hpp"

using namespace nc11;

namespace {

std::size_t line_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return 0;
}

}  // namespace

TEST(Generators, MeshCounts) {
  for (auto [n, demands, links] : {std::tuple{5, 20u, 20u}, {3, 6u, 6u}, {4, 12u, 12u}}) {
    Instance inst = generate_full_mesh(n, 20.0);
    EXPECT_EQ(inst.demands.size(), demands);
    EXPECT_EQ(inst.topology.link_count(), links);
    for (NodeId v = 1; v <= n; ++v) EXPECT_EQ(inst.topology.degree(v), static_cast<std::size_t>(n - 1));
  }
}

TEST(Generators, RingCounts) {
  for (auto [n, demands, links] : {std::tuple{5, 20u, 10u}, {11, 110u, 22u}, {4, 12u, 8u}}) {
    Instance inst = generate_ring(n, 1.0);
    EXPECT_EQ(inst.demands.size(), demands);
    EXPECT_EQ(inst.topology.link_count(), links);
    for (NodeId v = 1; v <= n; ++v) EXPECT_EQ(inst.topology.degree(v), 2u);
    EXPECT_TRUE(inst.topology.has_edge(n, 1));
  }
}

TEST(Generators, RejectTooSmall) {
  EXPECT_THROW(generate_full_mesh(2, 1.0), InstanceError);
  EXPECT_THROW(generate_ring(2, 1.0), InstanceError);
  try {
    generate_ring(1, 1.0);
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("at least 3 nodes"), std::string::npos);
  }
}

TEST(Generators, DemandsAreAllOrderedPairsInOrder) {
  Instance inst = generate_full_mesh(4, 7.5);
  ASSERT_EQ(inst.demands.size(), 12u);
  EXPECT_EQ(inst.demands.front(), (Demand{1, 2, 7.5}));
  EXPECT_EQ(inst.demands.back(), (Demand{4, 3, 7.5}));
  EXPECT_TRUE(is_uniform_all_pairs(inst));
  inst.demands[3].volume = 1.0;
  EXPECT_FALSE(is_uniform_all_pairs(inst));
}

TEST(Topology, LinksAreClosedUnderReversal) {
  Instance inst = generate_ring(7, 1.0);
  for (const Link& l : inst.topology.links()) EXPECT_TRUE(inst.topology.has_link(l.reversed()));
}

TEST(Topology, RejectsBadEdges) {
  Topology t(3, {});
  EXPECT_THROW(t.add_edge(1, 1), InstanceError);
  EXPECT_THROW(t.add_edge(1, 4), InstanceError);
  t.add_edge(1, 2);
  EXPECT_THROW(t.add_edge(2, 1), InstanceError);
}

TEST(InstanceFormat, MinimalFile) {
  Instance inst = parse_instance("nodes 3\nedge 1 2\nedge 2 3\nedge 3 1\ndemand 1 2 40\n");
  EXPECT_EQ(inst.topology.node_count(), 3);
  ASSERT_EQ(inst.demands.size(), 1u);
  EXPECT_EQ(inst.demands[0], (Demand{1, 2, 40.0}));
  EXPECT_EQ(inst.power, PowerParams{});
}

TEST(InstanceFormat, CommentsAndPower) {
  Instance inst = parse_instance(
      "# header\n\nnodes 3   # three\nedge 1 2\nedge 2 3\nedge 3 1\npower 500 50 100\n");
  EXPECT_EQ(inst.power, (PowerParams{500.0, 50.0, 100.0}));
  EXPECT_TRUE(inst.demands.empty());
}

TEST(InstanceFormat, ErrorsNameTheLine) {
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 9\n"), 3u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 3\ndemand 1 9 4\n"), 4u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 1\n"), 3u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nlink 2 3\n"), 3u);
  EXPECT_EQ(line_of("edge 1 2\nnodes 3\n"), 1u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 3\ndemand 1 2 4\ndemand 1 2 5\n"), 5u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 3\ndemand 1 2 -4\n"), 4u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 3\ndemand 1 2\n"), 4u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 2\nedge 2 3\npower 0 1 1\n"), 4u);
  EXPECT_EQ(line_of("nodes 3\nedge 1 x\n"), 2u);
  // Disconnected graphs are reported at the nodes line.
  EXPECT_EQ(line_of("# c\nnodes 4\nedge 1 2\nedge 3 4\n"), 2u);
}

TEST(InstanceFormat, ErrorMessageCarriesLinePrefix) {
  try {
    parse_instance("nodes 3\nedge 1 2\nedge 2 9\n");
    FAIL();
  } catch (const InstanceError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 3: ", 0), 0u) << e.what();
  }
}

TEST(InstanceFormat, FigureOneFile) {
  Instance inst = load_instance(fixtures::source_path("data/fig1.inst"));
  EXPECT_EQ(inst.topology.node_count(), 11);
  EXPECT_EQ(inst.topology.edges().size(), 12u);
  ASSERT_EQ(inst.demands.size(), 2u);
  EXPECT_EQ(inst.demands[0].dest, 11);
  EXPECT_EQ(inst.demands[1].dest, 11);
}

TEST(InstanceFormat, MissingFile) {
  EXPECT_THROW(load_instance("/nonexistent/nowhere.inst"), InstanceError);
}

TEST(InstanceFormat, RoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(3, 9);
  std::uniform_real_distribution<double> vol(0.0, 250.0);
  for (int i = 0; i < 200; ++i) {
    Instance inst;
    inst.topology = fixtures::random_protectable_graph(rng, size(rng), 0.6);
    inst.demands = all_pairs_demands(inst.topology.node_count(), 0.0);
    for (auto& d : inst.demands) d.volume = vol(rng);
    inst.power = {vol(rng) + 1.0, vol(rng) + 1.0, vol(rng) + 0.5};
    Instance back = parse_instance(format_instance(inst));
    ASSERT_EQ(back, inst) << format_instance(inst);
    EXPECT_EQ(format_instance(back), format_instance(inst));
  }
}

TEST(InstanceFormat, RoundTripKeepsFileDemandOrder) {
  Instance inst = parse_instance("nodes 3\nedge 1 2\nedge 2 3\nedge 1 3\ndemand 3 1 2\ndemand 1 2 0.1\n");
  Instance back = parse_instance(format_instance(inst));
  EXPECT_EQ(back.demands, inst.demands);
  EXPECT_EQ(back.demands.front().source, 3);
}
