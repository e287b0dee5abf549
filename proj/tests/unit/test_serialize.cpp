#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "floq/errors.hpp"
#include "floq/serialize.hpp"

using namespace floq;
using floq::io::json;

TEST_SUITE("serialize") {

TEST_CASE("big integers become strings") {
  CHECK(io::int_to_json(Int(42)) == json(42));
  const Int big = parse_int("18538124683538348289");
  CHECK(io::int_to_json(big) == json("18538124683538348289"));
  CHECK(io::int_from_json(io::int_to_json(big)) == big);
  CHECK(io::int_from_json(json(-7)) == Int(-7));
  CHECK_THROWS_AS(io::int_from_json(json(1.5)), InvalidInput);
}

TEST_CASE("rounding to significant digits") {
  CHECK(io::round_significant(std::numbers::pi, 4) == 3.142);
  CHECK(io::round_significant(0.0) == 0.0);
  const json j = io::round_numbers(json{{"a", 1.0 / 3.0}, {"b", {2.0 / 3.0, 5}}}, 3);
  CHECK(j["a"].get<double>() == 0.333);
  CHECK(j["b"][0].get<double>() == 0.667);
  CHECK(j["b"][1].get<int>() == 5);
}

TEST_CASE("states from the three accepted shapes") {
  const auto a = io::state_from_json(json("0110"), 4, false);
  const auto b = io::state_from_json(json{{"occupancy", "0110"}}, 4, false);
  const auto c = io::state_from_json(json{{"sites", {1, 2}}}, 4, false);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(io::to_json(a) == json("0110"));
  CHECK_THROWS_AS(io::state_from_json(json{{"sites", {4}}}, 4, false), InvalidInput);
  CHECK_THROWS_AS(io::state_from_json(json(3), 4, false), InvalidInput);
  CHECK_THROWS_AS(io::state_from_json(json("011"), 4, false), InvalidInput);
}

TEST_CASE("model round trip") {
  for (const auto& m : {lattice::build_chain(6, lattice::Boundary::Periodic),
                        lattice::build_lieb(2, 2, lattice::Boundary::Open),
                        lattice::build_square_rlbl(4, 4)}) {
    const json j = io::to_json(m);
    const lattice::Model back = io::model_from_json(json::parse(j.dump()));
    CHECK(back.kind == m.kind);
    CHECK(back.spinful == m.spinful);
    CHECK(back.lattice.edges() == m.lattice.edges());
    REQUIRE(back.schedule.steps.size() == m.schedule.steps.size());
    for (std::size_t s = 0; s < m.schedule.steps.size(); ++s) {
      CHECK(back.schedule.steps[s].pairs == m.schedule.steps[s].pairs);
    }
    CHECK(back.schedule.neighborhoods_disjoint == m.schedule.neighborhoods_disjoint);
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("rule tables and evolution results") {
  const auto m = lattice::build_lieb(2, 2, lattice::Boundary::Periodic);
  const auto t = ca::make_rule_table(m, {std::sqrt(12.0), std::numbers::pi / 2});
  const json j = io::to_json(t);
  CHECK(j["quantum_deltas"] == json({2, 3}));
  const auto inf = ca::make_rule_table(m, pairdyn::DriveParams::infinite(1.0));
  CHECK(io::to_json(inf)["V"] == json("inf"));
  lattice::FockState s(m.lattice.num_sites(), false);
  s.set(m.schedule.steps[0].pairs[0].a, true);
  const json e = io::to_json(ca::evolve_periods(s, t, m));
  CHECK(e.contains("status"));
}

TEST_CASE("tables carry a format header") {
  ed::QuasiSpectrum q;
  q.quasienergies = {-1.0, 0.5};
  q.entropy = {0.1, 0.2};
  q.frozen = {0, 1};
  q.sector = {0, 1};
  std::ostringstream os;
  io::write_eigen_table(os, q);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == std::string("# format: ") + io::kEigenTableFormat);
  std::getline(is, line);
  CHECK(line == "index,quasienergy,entropy,frozen,sector");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("fnv1a") {
  CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(io::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}  // TEST_SUITE
