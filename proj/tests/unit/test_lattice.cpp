#include <doctest.h>

#include <set>

#include "floq/errors.hpp"
#include "floq/lattice.hpp"
#include "gen.hpp"

using namespace floq;
using namespace floq::lattice;

namespace {

std::set<std::pair<int, int>> as_set(const DriveStep& step) {
  std::set<std::pair<int, int>> out;
  for (const auto& p : step.pairs) out.emplace(std::min(p.a, p.b), std::max(p.a, p.b));
  return out;
}

// Occupied neighbors of `site` other than `other`, by a scan over all edges.
int recount(const FockState& s, const Lattice& lat, int site, int other) {
  int n = 0;
  for (const auto& e : lat.edges()) {
    int nb = -1;
    if (e.a == site) nb = e.b;
    if (e.b == site) nb = e.a;
    if (nb >= 0 && nb != other && s.occupied(nb)) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("open four-site chain") {
  const Model m = build_chain(4, Boundary::Open);
  REQUIRE(m.schedule.steps.size() == 2);
  CHECK(as_set(m.schedule.steps[0]) == std::set<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(as_set(m.schedule.steps[1]) == std::set<std::pair<int, int>>{{1, 2}});
  CHECK_FALSE(m.schedule.neighborhoods_disjoint);
  CHECK(m.schedule.pairs_disjoint);
  CHECK(m.lattice.max_degree() == 2);
}

TEST_CASE("sixteen-site chain has 8 even and 7 odd pairs") {
  const Model m = build_chain(16, Boundary::Open);
  CHECK(m.schedule.steps[0].pairs.size() == 8);
  CHECK(m.schedule.steps[1].pairs.size() == 7);
}

TEST_CASE("periodic chain puts the wrap bond in the odd step") {
  const Model m = build_chain(4, Boundary::Periodic);
  CHECK(as_set(m.schedule.steps[1]) == std::set<std::pair<int, int>>{{1, 2}, {0, 3}});
  CHECK(m.schedule.steps[1].pairs.back() == SitePair{3, 0});
  CHECK(audit_covers_all_edges(m.lattice, m.schedule));
  CHECK_THROWS_AS(build_chain(5, Boundary::Periodic), InvalidInput);
  CHECK_THROWS_AS(build_chain(1, Boundary::Open), InvalidInput);
}

TEST_CASE("square schedule: every step is a perfect matching of lattice edges") {
  for (auto [lx, ly] : {std::pair{2, 2}, {4, 4}, {6, 4}, {4, 8}}) {
    const Model m = build_square_rlbl(lx, ly);
    CHECK(m.spinful);
    REQUIRE(m.schedule.steps.size() == 4);
    for (const auto& step : m.schedule.steps) {
      CHECK(step.pairs.size() == static_cast<std::size_t>(lx * ly / 2));
      std::set<int> seen;
      for (const auto& p : step.pairs) {
        CHECK(m.lattice.adjacent(p.a, p.b));
        seen.insert(p.a);
        seen.insert(p.b);
      }
      CHECK(seen.size() == static_cast<std::size_t>(lx * ly));
    }
    if (lx > 2 && ly > 2) CHECK(audit_covers_all_edges(m.lattice, m.schedule));
  }
  CHECK_THROWS_AS(build_square_rlbl(3, 4), InvalidInput);
}

TEST_CASE("lieb lattice degrees and schedule audits") {
  for (auto b : {Boundary::Open, Boundary::Periodic}) {
    const Model m = build_lieb(4, 4, b);
    REQUIRE(m.schedule.steps.size() == 8);
    CHECK(m.lattice.max_degree() == 4);
    for (int s = 0; s < m.lattice.num_sites(); ++s) {
      const auto& c = m.lattice.coord(s);
      const bool corner = c[0] % 2 == 0 && c[1] % 2 == 0;
      if (b == Boundary::Periodic) CHECK(m.lattice.degree(s) == (corner ? 4 : 2));
      if (!corner) CHECK(m.lattice.degree(s) == 2);
    }
    CHECK(m.schedule.pairs_disjoint);
    CHECK(m.schedule.neighborhoods_disjoint);
    CHECK(audit_covers_all_edges(m.lattice, m.schedule));
    for (const auto& step : m.schedule.steps) {
      for (const auto& p : step.pairs) CHECK(m.lattice.adjacent(p.a, p.b));
    }
  }
  CHECK(build_lieb(4, 4, Boundary::Periodic).lattice.num_sites() == 48);
  CHECK(build_lieb(2, 3, Boundary::Open).lattice.num_sites() == 3 * 4 + 2 * 4 + 3 * 3);
}

TEST_CASE("lieb: no site neighbors two pairs active in the same step") {
  const Model m = build_lieb(6, 6, Boundary::Periodic);
  for (const auto& step : m.schedule.steps) {
    std::vector<int> owner(static_cast<std::size_t>(m.lattice.num_sites()), -1);
    for (std::size_t i = 0; i < step.pairs.size(); ++i) {
      owner[step.pairs[i].a] = owner[step.pairs[i].b] = static_cast<int>(i);
    }
    for (int s = 0; s < m.lattice.num_sites(); ++s) {
      std::set<int> touching;
      if (owner[s] >= 0) touching.insert(owner[s]);
      for (int nb : m.lattice.neighbors(s)) {
        if (owner[nb] >= 0) touching.insert(owner[nb]);
      }
      CHECK(touching.size() <= 1);
    }
  }
}

TEST_CASE("audits catch broken schedules") {
  Model m = build_chain(6, Boundary::Open);
  DriveSchedule bad = m.schedule;
  bad.steps[0].pairs.push_back({1, 2});
  CHECK_FALSE(audit_pairs_disjoint(m.lattice, bad));
  DriveSchedule partial = m.schedule;
  partial.steps.pop_back();
  CHECK_FALSE(audit_covers_all_edges(m.lattice, partial));
}

TEST_CASE("imbalance of a corner-edge pair with two and one occupied neighbors") {
  const Model m = build_lieb(4, 4, Boundary::Periodic);
  const Lattice& lat = m.lattice;
  const int corner = lat.site_at(2, 2);
  const int edge = lat.site_at(3, 2);
  FockState s(lat.num_sites(), false);
  s.set(corner, true);
  s.set(lat.site_at(2, 1), true);
  s.set(lat.site_at(1, 2), true);
  s.set(lat.site_at(4, 2), true);
  const auto ctx = delta_of_pair(s, {corner, edge}, lat);
  CHECK(ctx.n1 == 2);
  CHECK(ctx.n2 == 1);
  CHECK(ctx.delta() == 1);
  CHECK(delta_of_pair(FockState(lat.num_sites(), false), {corner, edge}, lat).delta() == 0);
}

TEST_CASE("property: imbalance matches an edge-list recount") {
  oracle::Gen g(8);
  const Model m = build_lieb(4, 4, Boundary::Open);
  const Lattice& lat = m.lattice;
  for (int i = 0; i < 500; ++i) {
    const int k = static_cast<int>(g.integer(0, lat.num_sites()));
    const FockState s = FockState::from_sites(lat.num_sites(), g.sites(lat.num_sites(), k));
    const auto& e = lat.edges()[static_cast<std::size_t>(g.integer(0, lat.edges().size() - 1))];
    const auto ctx = delta_of_pair(s, e, lat);
    CHECK(ctx.n1 == recount(s, lat, e.a, e.b));
    CHECK(ctx.n2 == recount(s, lat, e.b, e.a));
  }
}

TEST_CASE("fock states: encoding round trips and particle number") {
  oracle::Gen g(12);
  for (int i = 0; i < 300; ++i) {
    const int n = static_cast<int>(g.integer(1, 150));
    const int k = static_cast<int>(g.integer(0, n));
    const FockState s = FockState::from_sites(n, g.sites(n, k));
    CHECK(FockState::from_string(s.to_string(), false) == s);
    CHECK(s.particle_count() == k);
    FockState t = s;
    for (int j = 0; j < 20; ++j) {
      t.swap_sites(static_cast<int>(g.integer(0, n - 1)), static_cast<int>(g.integer(0, n - 1)));
    }
    CHECK(t.particle_count() == k);
  }
  const FockState sp = FockState::from_string("0ud2u", true);
  CHECK(sp.up_count() == 3);
  CHECK(sp.down_count() == 2);
  CHECK(sp.occupancy(3) == 2);
  CHECK(sp.to_string() == "0ud2u");
  FockState sw = sp;
  sw.swap_sites(1, 3);
  CHECK(sw.to_string() == "02duu");
  CHECK(FockState::from_mask(4, 0b0011).to_string() == "1100");
  CHECK(FockState::from_mask(4, 0b0011).mask() == 0b0011);
  CHECK_THROWS_AS(FockState::from_string("01x", false), InvalidInput);
  CHECK_THROWS_AS(FockState::from_string("0u", false), InvalidInput);
}

TEST_CASE("model names round-trip") {
  for (auto k : {ModelKind::Chain, ModelKind::SquareRlbl, ModelKind::Lieb}) {
    CHECK(model_from_string(to_string(k)) == k);
  }
  for (auto b : {Boundary::Open, Boundary::Periodic}) CHECK(boundary_from_string(to_string(b)) == b);
  CHECK_THROWS_AS(model_from_string("honeycomb"), InvalidInput);
}

}  // TEST_SUITE
