#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"

#include "evprop/error.hpp"
#include "evprop/network.hpp"
#include "support.hpp"

using namespace evprop;

namespace {

HeteroNetwork parse(const std::string& edges, const std::string* params = nullptr) {
  std::istringstream in(edges);
  if (params) {
    std::istringstream p(*params);
    return read_edge_list(in, Frame::default_link_types(), &p);
  }
  return read_edge_list(in, Frame::default_link_types(), nullptr);
}

}  // namespace

TEST_CASE("load edge list") {
  const auto net = parse("source,target,link_type\n0,1,Professional\n1,2,Familial\n");
  CHECK(net.node_count() == 3);
  CHECK(net.edge_count() == 2);
  CHECK(net.out_neighbors(0, "Professional") == std::vector<NodeId>{1});

  CHECK(parse("").node_count() == 0);
  CHECK(parse("source,target,link_type\n").edge_count() == 0);

  try {
    parse("source,target,link_type\n0,1,Professional\n1,2,Work\n");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    CHECK(std::string(e.what()).find("Work") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("source,target\n0,1\n"), InputError);
  CHECK_THROWS_AS(parse("source,target,link_type\n0,x,Familial\n"), InputError);
  CHECK_THROWS_AS(parse("source,target,link_type\n0,1,Familial\n0,1,Familial\n"), InputError);
  // Same pair, different types.
  CHECK(parse("source,target,link_type\n0,1,Familial\n0,1,Friendly\n").edge_count() == 2);
}

TEST_CASE("node params file defines the node set") {
  const std::string params = "node,relay_probability,tendency\n0,1,0.5\n1,0.25,1\n2,1,1\n3,0,0\n";
  const auto net = parse("source,target,link_type\n0,1,Undefined\n", &params);
  CHECK(net.node_count() == 4);
  CHECK(net.params(1).relay_probability == 0.25);
  CHECK(net.params(0).tendency == 0.5);

  const std::string partial = "node,relay_probability,tendency\n0,1,1\n";
  CHECK_THROWS_WITH_AS(parse("source,target,link_type\n0,1,Undefined\n", &partial),
                       doctest::Contains("dangling"), InputError);
  const std::string bad = "node,relay_probability,tendency\n0,1.5,1\n";
  CHECK_THROWS_AS(parse("", &bad), InputError);
}

TEST_CASE("default node parameters are seeded draws in range") {
  const std::string edges = "source,target,link_type\n0,1,Familial\n1,2,Familial\n2,3,Friendly\n";
  const auto a = parse(edges);
  const auto b = parse(edges);
  for (NodeId id : a.node_ids()) {
    CHECK(a.params(id).relay_probability == 1.0);
    CHECK(a.params(id).tendency >= 0.5);
    CHECK(a.params(id).tendency <= 1.0);
    CHECK(a.params(id).tendency == b.params(id).tendency);
  }
}

TEST_CASE("out neighbors") {
  const Frame f = Frame::default_link_types();
  const std::size_t fam = 1;
  const std::size_t pro = 0;
  const auto net = testing::make_network(f, 10, {{3, 9, fam}, {3, 5, fam}, {3, 7, pro}});
  CHECK(net.out_neighbors(3, "Familial") == std::vector<NodeId>{5, 9});
  CHECK(net.out_neighbors(3, "Friendly").empty());
  CHECK(net.out_neighbors(0, fam).empty());
  CHECK(net.out_degree(3) == 3);
  CHECK_THROWS_AS(net.out_neighbors(42, fam), InputError);
}

TEST_CASE("edge list serialization round-trips") {
  const Frame f = Frame::default_link_types();
  const auto g = random_digraph(20, 60, 5);
  const auto net = assign_random_link_types(g, f, {1, 1, 1, 1}, 9);
  std::ostringstream edges;
  std::ostringstream params;
  write_edge_list(net, edges);
  write_node_params(net, params);

  std::istringstream ein(edges.str());
  std::istringstream pin(params.str());
  const auto back = read_edge_list(ein, f, &pin);
  std::ostringstream edges2;
  std::ostringstream params2;
  write_edge_list(back, edges2);
  write_node_params(back, params2);
  CHECK(edges.str() == edges2.str());
  CHECK(params.str() == params2.str());
}

TEST_CASE("assign random link types") {
  const Frame f = Frame::default_link_types();
  const auto g = random_digraph(97, 350, 1);
  CHECK(g.edges.size() == 350);
  CHECK(g.nodes.size() == 97);

  SUBCASE("degenerate weights") {
    const auto net = assign_random_link_types(g, f, {1, 0, 0, 0}, 3);
    for (const auto& e : net.edges()) CHECK(e.link_type == 0);
  }
  SUBCASE("partition and determinism") {
    const auto a = assign_random_link_types(g, f, {1, 1, 1, 1}, 3);
    const auto b = assign_random_link_types(g, f, {1, 1, 1, 1}, 3);
    CHECK(a.edges() == b.edges());
    std::vector<int> per(4, 0);
    for (const auto& e : a.edges()) per[e.link_type]++;
    CHECK(per[0] + per[1] + per[2] + per[3] == 350);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(assign_random_link_types(g, f, {0, 0, 0, 0}, 1), InputError);
    CHECK_THROWS_AS(assign_random_link_types(g, f, {1, -1, 1, 1}, 1), InputError);
    CHECK_THROWS_AS(assign_random_link_types(g, Frame(), {}, 1), InputError);
  }
}

TEST_CASE("uniform link types stay inside a 99.9% binomial band across seeds") {
  // Per seed and type, the count is Binomial(350, 1/4). Two-sided 99.9%
  // band: mean +- 3.2905 sd. Expect about 0.1% of the 4000 counts outside;
  // a count of more than 15 would indicate bias.
  const Frame f = Frame::default_link_types();
  const auto g = random_digraph(97, 350, 1);
  const double mean = 350.0 / 4.0;
  const double sd = std::sqrt(350.0 * 0.25 * 0.75);
  int outside = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto net = assign_random_link_types(g, f, {1, 1, 1, 1}, seed);
    std::vector<int> per(4, 0);
    for (const auto& e : net.edges()) per[e.link_type]++;
    for (int c : per) outside += std::abs(c - mean) > 3.2905 * sd ? 1 : 0;
  }
  CHECK(outside <= 15);
}

TEST_CASE("random digraph") {
  const auto g = random_digraph(5, 20, 2);
  CHECK(g.edges.size() == 20);
  for (const auto& e : g.edges) CHECK(e.source != e.target);
  CHECK_THROWS_AS(random_digraph(5, 21, 2), InputError);
}
