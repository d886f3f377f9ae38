#include <sstream>

#include "doctest.h"

#include "evprop/error.hpp"
#include "evprop/experiment.hpp"
#include "evprop/learning.hpp"
#include "support.hpp"

using namespace evprop;

namespace {

const Frame kFrame = Frame::default_link_types();

PropagationTrace star_trace() {
  std::vector<TypedEdge> edges;
  for (NodeId i = 1; i <= 10; ++i) edges.push_back({0, i, 2});
  const auto net = testing::make_network(kFrame, 11, edges);
  return simulate(net, 0, PropagationStrategy("s", kFrame, Eigen::Vector4d(0, 0, 1, 0)), 3, 1);
}

CountMatrix column_counts(std::initializer_list<std::initializer_list<std::int64_t>> per_level) {
  CountMatrix m(4, static_cast<Eigen::Index>(per_level.size()));
  Eigen::Index l = 0;
  for (const auto& level : per_level) {
    Eigen::Index t = 0;
    for (auto v : level) m(t++, l) = v;
    ++l;
  }
  return m;
}

std::vector<PropagationTrace> sample_traces(std::uint64_t seed, std::size_t count) {
  auto config = ExperimentConfig::defaults();
  config.seed = seed;
  const auto net = build_network(config);
  return generate_dataset(net, config, config.strategies[2], count, {Role::Train, 0, 0.1});
}

}  // namespace

TEST_CASE("count effectives") {
  CHECK(count_effectives({}, kFrame, 3).sum() == 0);
  const auto t = star_trace();
  const auto raw = count_effectives({t}, kFrame, 3);
  CHECK(raw(2, 0) == 10);
  CHECK(raw.sum() == 10);
  CHECK(count_effectives({t, t}, kFrame, 3) == 2 * raw);

  CHECK_THROWS_AS(count_effectives({t}, Frame({"a", "b", "c", "d"}), 3), InputError);
  auto deep = t;
  deep.events.front().level = 4;
  CHECK_THROWS_AS(count_effectives({deep}, kFrame, 3), InputError);
}

TEST_CASE("count effectives is additive over disjoint trace sets") {
  const auto a = sample_traces(1, 40);
  const auto b = sample_traces(2, 25);
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(count_effectives(both, kFrame, 3) ==
        count_effectives(a, kFrame, 3) + count_effectives(b, kFrame, 3));
}

TEST_CASE("accrue") {
  CountMatrix raw = CountMatrix::Zero(4, 3);
  raw.row(0) << 3, 2, 0;
  const auto acc = accrue(raw);
  CHECK(acc(0, 0) == 3);
  CHECK(acc(0, 1) == 5);
  CHECK(acc(0, 2) == 5);
  CHECK(accrue(CountMatrix::Zero(4, 3)).sum() == 0);
  CountMatrix single = CountMatrix::Zero(4, 1);
  single(1, 0) = 7;
  CHECK(accrue(single) == single);

  const auto raw_sample = count_effectives(sample_traces(3, 50), kFrame, 3);
  CHECK(difference(accrue(raw_sample)) == raw_sample);
}

TEST_CASE("to_profile") {
  SUBCASE("normalization") {
    const auto p = to_profile("x", kFrame, column_counts({{10, 5, 5, 0}}));
    CHECK((p.probs[0].values() - Eigen::Vector4d(0.5, 0.25, 0.25, 0)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("empty level falls back to uniform and the vacuous BBA") {
    const auto p = to_profile("x", kFrame, column_counts({{0, 0, 0, 0}}));
    CHECK((p.probs[0].values().array() - 0.25).abs().maxCoeff() < 1e-15);
    CHECK(p.bbas[0].focal_sets().size() == 1);
    CHECK(p.bbas[0].mass(0b1111) == doctest::Approx(1.0));
  }
  SUBCASE("single type gives a categorical BBA") {
    const auto p = to_profile("x", kFrame, column_counts({{0, 0, 4, 0}}));
    CHECK(p.probs[0][2] == 1.0);
    CHECK(p.bbas[0].mass(0b0100) == 1.0);
  }
  CHECK_THROWS_AS(to_profile("x", Frame({"a"}), column_counts({{1, 0, 0, 0}})), InputError);
}

TEST_CASE("learned profiles satisfy their invariants") {
  const auto profile = learn_profile("Familial", sample_traces(4, 100), kFrame, 3);
  REQUIRE(profile.levels() == 3);
  for (Eigen::Index l = 1; l < 3; ++l) {
    CHECK((profile.counts.col(l).array() >= profile.counts.col(l - 1).array()).all());
  }
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(is_consonant(profile.bbas[l]));
    CHECK((pignistic(profile.bbas[l]).values() - profile.probs[l].values()).cwiseAbs().maxCoeff() <
          kTolerance);
  }
}

TEST_CASE("profiles are permutation-equivariant") {
  const auto traces = sample_traces(5, 60);
  const auto profile = learn_profile("c", traces, kFrame, 3);
  // Reverse the frame and relabel every event accordingly.
  const Frame reversed({"Undefined", "Friendly", "Familial", "Professional"});
  auto relabeled = traces;
  for (auto& t : relabeled) {
    t.frame = reversed;
    for (auto& e : t.events) e.link_type = 3 - e.link_type;
  }
  const auto other = learn_profile("c", relabeled, reversed, 3);
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t t = 0; t < 4; ++t) CHECK(other.probs[l][3 - t] == profile.probs[l][t]);
    for (const auto& [set, mass] : profile.bbas[l].focal_sets()) {
      Subset mirrored = 0;
      for (std::size_t t = 0; t < 4; ++t) {
        if (set & singleton(t)) mirrored |= singleton(3 - t);
      }
      CHECK(std::abs(other.bbas[l].mass(mirrored) - mass) < kTolerance);
    }
  }
}

TEST_CASE("profile JSON round-trips and rejects inconsistent files") {
  const auto profile = learn_profile("Familial", sample_traces(6, 30), kFrame, 3);
  std::ostringstream out;
  write_profile(profile, out);
  std::istringstream in(out.str());
  const auto back = read_profile(in);
  CHECK(back.class_name == "Familial");
  CHECK(back.counts == profile.counts);
  std::ostringstream again;
  write_profile(back, again);
  CHECK(again.str() == out.str());

  auto tampered = out.str();
  const auto pos = tampered.find("\"probs\"");
  REQUIRE(pos != std::string::npos);
  const auto digit = tampered.find("0.", pos);
  tampered[digit + 2] = tampered[digit + 2] == '9' ? '1' : '9';
  std::istringstream bad(tampered);
  CHECK_THROWS_AS(read_profile(bad), InputError);

  std::istringstream garbage("{\"class_name\": 1}");
  CHECK_THROWS_AS(read_profile(garbage), InputError);
}
