#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "floq/ca.hpp"
#include "floq/errors.hpp"
#include "gen.hpp"

using namespace floq;
using namespace floq::ca;
using lattice::Boundary;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt12 = std::sqrt(12.0);

FockState chain_state(const char* bits) { return FockState::from_string(bits, false); }

FockState step_or_fail(const FockState& s, int step, const RuleTable& r, const Model& m) {
  StepOutcome out = ca_step(s, step, r, m);
  REQUIRE(std::holds_alternative<FockState>(out));
  return std::get<FockState>(out);
}

// Deterministic table for the Lieb drive: free pairs swap, any imbalance freezes.
RuleTable lieb_deterministic() {
  return rule_table_from_actions({Action::Swap, Action::Frozen, Action::Frozen, Action::Frozen});
}

}  // namespace

TEST_SUITE("ca") {

TEST_CASE("rule tables at the canonical points") {
  const Model lieb = lattice::build_lieb(2, 2, Boundary::Periodic);
  const RuleTable t = make_rule_table(lieb, {kSqrt12, kPi / 2});
  REQUIRE(t.by_delta.size() == 4);
  CHECK(t.by_delta[0].tag == Action::Swap);
  CHECK(t.by_delta[1].tag == Action::Frozen);
  CHECK(t.by_delta[2].tag == Action::Quantum);
  CHECK(t.by_delta[3].tag == Action::Quantum);
  CHECK(t.quantum_deltas() == std::vector<int>{2, 3});
  CHECK_FALSE(t.fully_deterministic());

  const Model chain = lattice::build_chain(8, Boundary::Open);
  const RuleTable c = make_rule_table(chain, {kSqrt12, kPi});
  REQUIRE(c.by_delta.size() == 2);
  CHECK(c.by_delta[0].tag == Action::Frozen);
  CHECK(c.by_delta[1].tag == Action::Frozen);
  CHECK(c.fully_deterministic());
  CHECK(c.delta_action(5) == Action::Quantum);

  const Model sq = lattice::build_square_rlbl(4, 4);
  const RuleTable h = make_rule_table(sq, {3.0, 4 * kPi});
  CHECK(h.hubbard);
  CHECK(h.fully_deterministic());
  for (const auto& a : h.by_class) CHECK(a.tag == Action::Frozen);
  CHECK_THROWS_AS(h.delta_action(0), InvalidInput);
}

TEST_CASE("chain steps at V=sqrt(12), tau=pi/2") {
  const Model m = lattice::build_chain(4, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  CHECK(step_or_fail(chain_state("1000"), 0, r, m) == chain_state("0100"));
  CHECK(step_or_fail(chain_state("1100"), 0, r, m) == chain_state("1100"));
  CHECK(step_or_fail(chain_state("1100"), 1, r, m) == chain_state("1100"));
  // A lone particle hops on each step and comes back after 3 periods.
  const auto e = evolve_periods(chain_state("1000"), r, m);
  REQUIRE(e.status == EvolveStatus::Orbit);
  CHECK(e.orbit->cls == OrbitClass::CA);
  CHECK(e.orbit->period == static_cast<int>(e.orbit->states.size()));
  CHECK(e.orbit->representative == *std::min_element(e.orbit->states.begin(), e.orbit->states.end()));
}

TEST_CASE("neighbors on a mobile pair make a step non-deterministic") {
  const Model m = lattice::build_chain(4, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi});
  StepOutcome out = ca_step(chain_state("1010"), 0, r, m);
  REQUIRE(std::holds_alternative<NonDeterministic>(out));
  CHECK(std::get<NonDeterministic>(out).reason == NonDetReason::DynamicNeighborhood);

  const Model lieb = lattice::build_lieb(2, 2, Boundary::Periodic);
  const RuleTable q = rule_table_from_actions({Action::Quantum});
  const auto& p = lieb.schedule.steps[0].pairs[0];
  FockState s(lieb.lattice.num_sites(), false);
  s.set(p.a, true);
  out = ca_step(s, 0, q, lieb);
  REQUIRE(std::holds_alternative<NonDeterministic>(out));
  CHECK(std::get<NonDeterministic>(out).reason == NonDetReason::QuantumRule);
  CHECK(std::get<NonDeterministic>(out).pair == p);
}

TEST_CASE("frozen states") {
  const Model m = lattice::build_chain(8, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  const auto frozen = enumerate_frozen(m, r, {4});
  CHECK(std::find(frozen.begin(), frozen.end(), chain_state("11110000")) != frozen.end());
  CHECK(std::find(frozen.begin(), frozen.end(), chain_state("10101010")) == frozen.end());
  for (const auto& s : frozen) CHECK(fixed_by_every_step(s, r, m));

  const auto empty = enumerate_frozen(m, r, {0});
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].particle_count() == 0);
  const auto full = evolve_periods(chain_state("11111111"), r, m);
  CHECK(full.orbit->cls == OrbitClass::Frozen);
}

TEST_CASE("square lattice: one free particle circles a plaquette in one period") {
  const Model m = lattice::build_square_rlbl(4, 4);
  const RuleTable r = make_rule_table(m, {0.0, kPi / 2});
  CHECK(r.by_class[static_cast<int>(pairdyn::HubbardClass::Single)].tag == Action::Swap);
  for (int site = 0; site < m.lattice.num_sites(); ++site) {
    FockState s(m.lattice.num_sites(), true);
    s.set_up(site, true);
    const auto e = evolve_periods(s, r, m);
    REQUIRE(e.status == EvolveStatus::Orbit);
    CHECK(e.orbit->period == 1);
    CHECK_FALSE(fixed_by_every_step(s, r, m));
  }
}

TEST_CASE("property: deterministic Lieb drive is a particle-conserving bijection") {
  const Model m = lattice::build_lieb(2, 2, Boundary::Open);
  const RuleTable r = lieb_deterministic();
  for (int k : {1, 2, 3}) {
    const auto states = enumerate_sector(m, {k});
    std::set<FockState> images;
    for (const auto& s : states) {
      StepOutcome out = ca_period(s, r, m);
      REQUIRE(std::holds_alternative<FockState>(out));
      const FockState& t = std::get<FockState>(out);
      CHECK(t.particle_count() == k);
      images.insert(t);
    }
    CHECK(images.size() == states.size());
  }
}

TEST_CASE("property: far-apart patterns evolve independently") {
  // Two clusters far enough apart that no pair ever sees both.
  const Model m = lattice::build_lieb(14, 4, Boundary::Open);
  const RuleTable r = lieb_deterministic();
  oracle::Gen g(5);
  std::vector<int> left, right;
  for (int s = 0; s < m.lattice.num_sites(); ++s) {
    const auto& c = m.lattice.coord(s);
    if (c[0] <= 4) left.push_back(s);
    if (c[0] >= 24) right.push_back(s);
  }
  for (int trial = 0; trial < 50; ++trial) {
    FockState a(m.lattice.num_sites(), false), b = a, both = a;
    for (int i = 0; i < 2; ++i) {
      const int x = left[static_cast<std::size_t>(g.integer(0, left.size() - 1))];
      const int y = right[static_cast<std::size_t>(g.integer(0, right.size() - 1))];
      a.set(x, true);
      b.set(y, true);
      both.set(x, true);
      both.set(y, true);
    }
    StepOutcome ra = ca_period(a, r, m), rb = ca_period(b, r, m), rab = ca_period(both, r, m);
    REQUIRE(std::holds_alternative<FockState>(rab));
    FockState u = std::get<FockState>(ra);
    const FockState& vb = std::get<FockState>(rb);
    for (int s : vb.occupied_sites()) u.set(s, true);
    CHECK(u == std::get<FockState>(rab));
  }
}

TEST_CASE("orbits start at the seed and conserve particles") {
  const Model m = lattice::build_chain(10, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  for (const auto& s : enumerate_sector(m, {5})) {
    const auto e = evolve_periods(s, r, m);
    if (e.status != EvolveStatus::Orbit) continue;
    for (const auto& t : e.orbit->states) CHECK(t.particle_count() == 5);
    CHECK(e.orbit->states.front() == s);
  }
}

TEST_CASE("decomposition partitions the sector") {
  const Model m = lattice::build_chain(10, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  const Decomposition d = krylov_decompose(m, r, {5});
  CHECK(d.sector_size == 252);
  std::size_t covered = d.quantum_touching_count();
  std::set<FockState> all;
  for (const auto& o : d.orbits) {
    covered += o.states.size();
    for (const auto& s : o.states) all.insert(s);
  }
  for (const auto& c : d.quantum) all.insert(c.states.begin(), c.states.end());
  CHECK(covered == d.sector_size);
  CHECK(all.size() == d.sector_size);
  for (std::size_t i = 1; i < d.quantum.size(); ++i) {
    CHECK(d.quantum[i - 1].states.size() >= d.quantum[i].states.size());
  }
}

TEST_CASE("frozen orbits of the decomposition are exactly the enumerated frozen states") {
  for (double tau : {kPi / 2, kPi}) {
    const Model m = lattice::build_chain(10, Boundary::Open);
    const RuleTable r = make_rule_table(m, {kSqrt12, tau});
    const Decomposition d = krylov_decompose(m, r, {5});
    std::vector<FockState> from_orbits;
    for (const auto& o : d.orbits) {
      if (o.cls == OrbitClass::Frozen) from_orbits.push_back(o.representative);
    }
    std::sort(from_orbits.begin(), from_orbits.end());
    CHECK(from_orbits == enumerate_frozen(m, r, {5}));
    CHECK(d.frozen_count() == from_orbits.size());
  }
  const Model m = lattice::build_chain(10, Boundary::Open);
  CHECK(krylov_decompose(m, make_rule_table(m, {kSqrt12, kPi / 2}), {5}).frozen_count() == 12);
}

TEST_CASE("fully deterministic rules on disjoint neighborhoods leave nothing quantum") {
  const Model m = lattice::build_lieb(2, 2, Boundary::Periodic);
  const Decomposition d = krylov_decompose(m, lieb_deterministic(), {3});
  CHECK(d.quantum.empty());
  CHECK(d.quantum_touching_count() == 0);
  CHECK(d.sector_size == 220);
}

TEST_CASE("one-period support contains the deterministic image") {
  const Model m = lattice::build_chain(8, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  for (const auto& s : enumerate_sector(m, {3})) {
    const auto support = period_support(s, r, m, 1u << 12);
    StepOutcome out = ca_period(s, r, m);
    if (auto* t = std::get_if<FockState>(&out)) {
      CHECK(support == std::vector<FockState>{*t});
    } else {
      CHECK(support.size() > 1);
    }
    for (const auto& t : support) CHECK(t.particle_count() == 3);
  }
}

TEST_CASE("sector enumeration") {
  const Model m = lattice::build_chain(6, Boundary::Open);
  const auto all = enumerate_sector(m, {2});
  CHECK(all.size() == 15);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(enumerate_sector(m, {2}, {0, 1, 2}).size() == 3);
  CHECK_THROWS_AS(enumerate_sector(m, {7}), InvalidInput);
  CHECK_THROWS_AS(enumerate_sector(lattice::build_chain(40, Boundary::Open), {20}), SectorTooLarge);
  const Model sq = lattice::build_square_rlbl(2, 2);
  CHECK(enumerate_sector(sq, {1, 2}).size() == 4 * 6);
}

TEST_CASE("property: random drive keeps frozen states fixed") {
  const Model m = lattice::build_chain(10, Boundary::Open);
  const RuleTable r = make_rule_table(m, {kSqrt12, kPi / 2});
  oracle::Gen g(99);
  for (const auto& s : enumerate_frozen(m, r, {5})) {
    if (!fixed_by_every_step(s, r, m)) continue;
    const Trajectory t = random_drive_evolve(s, r, m, static_cast<std::uint64_t>(g.integer(0, 1 << 30)), 40);
    CHECK_FALSE(t.failure.has_value());
    for (const auto& x : t.states) CHECK(x == s);
  }
}

TEST_CASE("random drive is reproducible from its seed") {
  const Model m = lattice::build_lieb(2, 2, Boundary::Periodic);
  const RuleTable r = lieb_deterministic();
  FockState s(m.lattice.num_sites(), false);
  s.set(0, true);
  s.set(5, true);
  const Trajectory a = random_drive_evolve(s, r, m, 42, 100);
  const Trajectory b = random_drive_evolve(s, r, m, 42, 100);
  const Trajectory c = random_drive_evolve(s, r, m, 43, 100);
  CHECK(a.states == b.states);
  CHECK(a.steps == b.steps);
  CHECK(a.steps != c.steps);
  CHECK(a.states.size() == 101);
  CHECK_THROWS_AS(random_drive_evolve(s, r, m, 1, -1), InvalidInput);
}

}  // TEST_SUITE
