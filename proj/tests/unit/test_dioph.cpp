#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "floq/dioph.hpp"
#include "floq/errors.hpp"
#include "floq/pairdyn.hpp"
#include "gen.hpp"
#include "numtheory.hpp"

using namespace floq;
using namespace floq::dioph;

namespace {

std::string s(Int v) { return floq::to_string(v); }

// Direct substitution, no library arithmetic.
oracle::i128 substitute(const QuadForm3& q, const DiophTriple& x) {
  return q.a * x.x0 * x.x0 + q.b * x.x1 * x.x1 + q.c * x.x2 * x.x2;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("dioph") {

TEST_CASE("int128 helpers") {
  CHECK(s(parse_int("-170141183460469231731687303715884105727")) ==
        "-170141183460469231731687303715884105727");
  CHECK(s(isqrt(parse_int("18538124683538348289"))) == "4305592256");
  CHECK_FALSE(exact_sqrt(1201).has_value());
  CHECK(s(*exact_sqrt(81)) == "9");
  CHECK(s(gcd(-12, 18)) == "6");
  CHECK_THROWS_AS(mul_checked(parse_int("100000000000000000000000"), parse_int("100000000000000000000")),
                  std::overflow_error);
  CHECK_THROWS_AS(parse_int("12x"), InvalidInput);
}

TEST_CASE("isqrt agrees with an independent Newton iteration") {
  oracle::Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const Int v = static_cast<Int>(g.integer(0, INT64_MAX)) * g.integer(1, 1 << 30);
    CHECK((isqrt(v) == static_cast<Int>(oracle::newton_isqrt(static_cast<oracle::u128>(v)))));
  }
}

TEST_CASE("pythagorean direction gives 3 4 5") {
  const auto x = solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {2, 1, 1});
  CHECK(s(x.x0) == "3");
  CHECK(s(x.x1) == "4");
  CHECK(s(x.x2) == "5");
}

TEST_CASE("axis direction reproduces the particular solution up to sign") {
  const auto x = solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {1, 0, 1});
  CHECK(s(x.x0) == "1");
  CHECK(s(x.x1) == "0");
  CHECK(s(x.x2) == "1");
}

TEST_CASE("solver rejects bad input") {
  CHECK_THROWS_AS(solve_quadratic_diophantine({1, 1, -1}, {1, 1, 1}, {2, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(solve_quadratic_diophantine({0, 0, 0}, {1, 1, 1}, {2, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {4, 2, 1}), InvalidInput);
  CHECK_THROWS_AS(solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {2, 1, 0}), InvalidInput);
}

TEST_CASE("normalization divides by the gcd and rescales d") {
  const auto a = solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {4, 2, 1}, Coprime::Normalize);
  const auto b = solve_quadratic_diophantine({1, 1, -1}, {-1, 0, 1}, {2, 1, 4});
  CHECK(a == b);
  const Direction n = normalized({6, -9, 2});
  CHECK(s(n.w1) == "2");
  CHECK(s(n.w2) == "-3");
  CHECK(s(n.d) == "18");
}

TEST_CASE("property: random solver outputs satisfy the form exactly") {
  oracle::Gen g(2024);
  int produced = 0;
  for (int i = 0; i < 1000; ++i) {
    // (a x2^2) x0^2 + (b x2^2) x1^2 - (a x0^2 + b x1^2) x2^2 vanishes at x0.
    const DiophTriple x0{g.nonzero(30), g.integer(-30, 30), g.nonzero(30)};
    const Int a = g.nonzero(40);
    const Int b = g.integer(-40, 40);
    const Int z = x0.x2 * x0.x2;
    const QuadForm3 q{a * z, b * z, -(a * x0.x0 * x0.x0 + b * x0.x1 * x0.x1)};
    const auto [w1, w2] = g.coprime_pair(50);
    const Direction dir{w1, w2, g.nonzero(5)};
    try {
      const auto x = solve_quadratic_diophantine(q, x0, dir);
      CHECK((substitute(q, x) == 0));
      ++produced;
    } catch (const DegenerateSolution&) {
    }
  }
  CHECK(produced > 950);
}

TEST_CASE("hubbard worked points") {
  auto check = [](Direction dir, const char* ell, const char* n, const char* m) {
    const auto t = hubbard_solution(dir);
    CHECK(s(t.ell) == ell);
    CHECK(s(t.n) == n);
    CHECK(s(t.m) == m);
  };
  check({1, 0, 1}, "1", "1", "1");
  check({3, 1, 1}, "8", "16", "10");
  check({3, -1, 1}, "8", "4", "10");

  const auto p0 = hubbard_params({1, 0, 1});
  CHECK(p0.tau == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(p0.v == 0.0);
  CHECK(p0.parity == Parity::Swap);
  const auto p1 = hubbard_params({3, 1, 1});
  CHECK(p1.tau == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(p1.v == 3.0);
  CHECK(p1.parity == Parity::Frozen);
  const auto p2 = hubbard_params({3, -1, 1});
  CHECK(p2.v == -3.0);
  CHECK(p2.parity == Parity::Frozen);
  CHECK_THROWS_AS(hubbard_params({1, 1, 1}), SingularParams);
  CHECK_THROWS_AS(hubbard_params({1, -1, 2}), SingularParams);
}

TEST_CASE("property: hubbard family invariants") {
  oracle::Gen g(7);
  for (int i = 0; i < 1000; ++i) {
    const auto [w1, w2] = g.coprime_pair(200);
    const Int d = g.nonzero(20);
    const auto t = hubbard_solution({w1, w2, d});
    CHECK((t.ell * t.ell + t.n * t.n == 2 * t.m * t.n));
    const Int gap = d * (Int(w1) * w1 - Int(w2) * w2);
    CHECK((2 * t.m * t.n - t.n * t.n == gap * gap));
    CHECK(((t.ell - t.n) % 2 == 0));
    if (Int(w1) * w1 != Int(w2) * w2) {
      const auto p = hubbard_params({w1, w2, d});
      CHECK((p.parity == Parity::Frozen) == (t.n % 2 == 0));
      CHECK(p.tau == doctest::Approx(kPi / 2 * std::abs(static_cast<double>(t.ell))));
      if (w1 * w2 != 0) CHECK(std::signbit(p.v) == (w1 * w2 < 0));
    }
  }
}

TEST_CASE("degree-3 family closed form") {
  auto check = [](Direction dir, const char* a, const char* b, const char* c) {
    const auto m = nn_dmax3_solution(dir);
    CHECK(s(m[0]) == a);
    CHECK(s(m[1]) == b);
    CHECK(s(m[2]) == c);
  };
  check({1, 1, 1}, "-32", "-19", "26");
  check({2, 1, 1}, "-64", "-28", "8");
  check({1, 1, -1}, "32", "19", "-26");
  CHECK_THROWS_AS(nn_dmax3_solution({1, 0, 1}), DegenerateSolution);
  CHECK_THROWS_AS(nn_dmax3_solution({0, 1, 1}), DegenerateSolution);
}

TEST_CASE("property: degree-3 family satisfies the tower and m0 is even") {
  oracle::Gen g(99);
  for (int i = 0; i < 1000; ++i) {
    auto [w1, w2] = g.coprime_pair(500);
    if (w1 * w2 == 0) continue;
    const Int d = g.nonzero(9);
    const auto m = nn_dmax3_solution({w1, w2, d});
    CHECK((m[0] % 2 == 0));
    CHECK((4 * m[2] * m[2] == -3 * m[0] * m[0] + 16 * m[1] * m[1]));
    const auto ext = nn_tower_extend(m[0], m[1], 2);
    REQUIRE(ext.has_value());
    CHECK((*ext == floq::abs(m[2])));
  }
}

TEST_CASE("nn parameters") {
  const auto a = nn_params(1, 1);
  CHECK(a.tau == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(a.v == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
  const auto b = nn_params(2, 2);
  CHECK(b.tau == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(b.v == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
  const auto c = nn_params(2, 1);
  CHECK(c.v == 0.0);
  CHECK(nn_params(-3, 5).tau == doctest::Approx(1.5 * kPi));
  CHECK_THROWS_AS(nn_params(0, 1), DegenerateSolution);
  CHECK_THROWS_AS(nn_params(4, 1), ImaginaryV);
}

TEST_CASE("tower extension") {
  CHECK(s(*nn_tower_extend(-32, -19, 2)) == "26");
  CHECK(s(*nn_tower_extend(2, 1, 2)) == "1");
  CHECK_FALSE(nn_tower_extend(1, 1, 2).has_value());
  CHECK(s(nn_tower_rhs(1, 1, 2)) == "13");
  CHECK_THROWS_AS(nn_tower_extend(1, 1, 1), InvalidInput);
}

TEST_CASE("degree-4 certificates") {
  const auto c11 = dmax4_certificate(1, 1);
  CHECK(s(c11.rhs) == "1201");
  CHECK_FALSE(c11.m3.has_value());

  const auto c10 = dmax4_certificate(1, 0);
  REQUIRE(c10.m3.has_value());
  CHECK(s(*c10.m3) == "9");
  CHECK(c10.degenerate);

  // The (3, 9471) point: RHS lies strictly between two consecutive squares.
  const auto c = dmax4_certificate(3, 9471);
  CHECK(s(c.rhs) == "18538124683538348289");
  CHECK_FALSE(c.m3.has_value());
  const Int claimed = parse_int("4305592257");
  CHECK(s(claimed * claimed - c.rhs) == "5760");
  CHECK((oracle::dmax4_rhs(3, 9471) == c.rhs));
}

TEST_CASE("degree-4 right-hand side is even in both arguments") {
  oracle::Gen g(5);
  for (int i = 0; i < 200; ++i) {
    const Int w1 = g.integer(-10000, 10000);
    const Int w2 = g.integer(-10000, 10000);
    CHECK((dmax4_rhs(w1, w2) == dmax4_rhs(w1, -w2)));
    CHECK((dmax4_rhs(w1, w2) == dmax4_rhs(-w1, w2)));
    CHECK((dmax4_rhs(w1, w2) == oracle::dmax4_rhs(w1, w2)));
  }
}

TEST_CASE("degree-4 search matches a brute-force scan") {
  const auto found = search_dmax4(10, 2000);
  std::vector<std::pair<long, long>> expect;
  for (long w1 = 1; w1 <= 10; ++w1) {
    for (long w2 = 1; w2 <= 2000; ++w2) {
      if (oracle::euclid(w1, w2) != 1) continue;
      if (oracle::perfect_square_root(oracle::dmax4_rhs(w1, w2))) expect.emplace_back(w1, w2);
    }
  }
  REQUIRE(found.size() == expect.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    CHECK(static_cast<long>(found[i].w1) == expect[i].first);
    CHECK(static_cast<long>(found[i].w2) == expect[i].second);
    CHECK((*found[i].m3 * *found[i].m3 == found[i].rhs));
  }
  CHECK(non_degenerate(search_dmax4(10, 10)).empty());
  CHECK_THROWS_AS(search_dmax4(0, 10), InvalidInput);
}

TEST_CASE("general imbalance solution") {
  oracle::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    auto [w1, w2] = g.coprime_pair(100);
    if (w1 * w2 == 0) continue;
    const Direction dir{w1, w2, g.nonzero(4)};
    const auto a = general_nn_solution({0, 1, 2}, dir);
    const auto b = nn_dmax3_solution(dir);
    CHECK((a == b));
  }
  const auto m = general_nn_solution({1, 2, 3}, {1, 1, 1});
  CHECK(satisfies_imbalance_identity({1, 2, 3}, m));
  // m0^2 (4 - 9) + m1^2 (9 - 1) + m2^2 (1 - 4) == 0 without any scaling.
  CHECK((m[0] * m[0] * -5 + m[1] * m[1] * 8 + m[2] * m[2] * -3 == 0));

  const auto m1 = general_nn_solution({1, 2, 3}, {3, -2, 1});
  const auto m2 = general_nn_solution({1, 2, 3}, {3, -2, 2});
  for (int k = 0; k < 3; ++k) CHECK((m2[k] == 2 * m1[k]));

  CHECK_THROWS_AS(general_nn_solution({1, 1, 3}, {1, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(general_nn_solution({-1, 1, 3}, {1, 1, 1}), InvalidInput);
}

TEST_CASE("cross-module: degree-3 points freeze imbalances 0, 1 and 2") {
  oracle::Gen g(404);
  int real_points = 0;
  for (int i = 0; i < 100; ++i) {
    auto [w1, w2] = g.coprime_pair(12);
    if (w1 * w2 == 0) continue;
    const auto m = nn_dmax3_solution({w1, w2, 1});
    if (4 * m[1] * m[1] < m[0] * m[0]) {
      CHECK_THROWS_AS(nn_params(m[0], m[1]), ImaginaryV);
      continue;
    }
    ++real_points;
    const auto p = nn_params(m[0], m[1]);
    for (int delta = 0; delta <= 2; ++delta) {
      const auto a = pairdyn::classify_nn({p.v, p.tau, false}, delta);
      CHECK(a.tag == pairdyn::Action::Frozen);
    }
  }
  CHECK(real_points > 20);
}

}  // TEST_SUITE
