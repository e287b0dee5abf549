#include "floq/dioph.hpp"

#include <cmath>
#include <numbers>

#include "floq/errors.hpp"

namespace floq::dioph {

namespace {

Int sq(Int x) { return mul_checked(x, x); }

void require_direction(const Direction& dir) {
  if (dir.d == 0) throw InvalidInput("direction scale d must be nonzero");
  if (dir.w1 == 0 && dir.w2 == 0) throw InvalidInput("direction (w1, w2) must be nonzero");
}

Direction prepared(const Direction& dir, Coprime mode) {
  require_direction(dir);
  if (gcd(dir.w1, dir.w2) == 1) return dir;
  if (mode == Coprime::Require) {
    throw InvalidInput("direction (" + to_string(dir.w1) + ", " + to_string(dir.w2) +
                       ") is not coprime");
  }
  return normalized(dir);
}

}  // namespace

Int QuadForm3::evaluate(Int x0, Int x1, Int x2) const {
  return add_checked(add_checked(mul_checked(a, sq(x0)), mul_checked(b, sq(x1))),
                     mul_checked(c, sq(x2)));
}

Direction normalized(const Direction& dir) {
  require_direction(dir);
  const Int g = gcd(dir.w1, dir.w2);
  return Direction{dir.w1 / g, dir.w2 / g, mul_checked(dir.d, sq(g))};
}

DiophTriple solve_quadratic_diophantine(const QuadForm3& q, const DiophTriple& particular,
                                        const Direction& dir_in, Coprime mode) {
  if (q.a == 0 && q.b == 0 && q.c == 0) throw InvalidInput("quadratic form is identically zero");
  if (particular.x0 == 0 && particular.x1 == 0 && particular.x2 == 0) {
    throw InvalidInput("particular solution must be nonzero");
  }
  if (q.evaluate(particular.x0, particular.x1, particular.x2) != 0) {
    throw InvalidInput("particular solution does not satisfy the form");
  }
  const Direction dir = prepared(dir_in, mode);

  const Int a_w1 = mul_checked(q.a, sq(dir.w1));
  const Int b_w2 = mul_checked(q.b, sq(dir.w2));
  const Int diff = a_w1 - b_w2;
  const Int sum = a_w1 + b_w2;
  const Int w12 = mul_checked(2, mul_checked(dir.w1, dir.w2));

  DiophTriple out;
  out.x0 = mul_checked(dir.d, -mul_checked(diff, particular.x0) - mul_checked(mul_checked(q.b, w12), particular.x1));
  out.x1 = mul_checked(dir.d, mul_checked(diff, particular.x1) - mul_checked(mul_checked(q.a, w12), particular.x0));
  out.x2 = mul_checked(dir.d, mul_checked(sum, particular.x2));

  if (out.x0 == 0 && out.x1 == 0 && out.x2 == 0) {
    throw DegenerateSolution("direction produces the zero triple for this form");
  }
  if (q.evaluate(out.x0, out.x1, out.x2) != 0) {
    throw Error("internal: generated triple fails the form");
  }
  return out;
}

HubbardTriple hubbard_solution(const Direction& dir, Coprime mode) {
  // ell^2 + n^2 = 2mn becomes ell^2 + nt^2 - m^2 = 0 with nt = n - m.
  const DiophTriple x =
      solve_quadratic_diophantine(QuadForm3{1, 1, -1}, DiophTriple{-1, 0, 1}, dir, mode);
  return HubbardTriple{x.x0, x.x1 + x.x2, x.x2};
}

HubbardPoint hubbard_params(const Direction& dir_in, Coprime mode) {
  const Direction dir = prepared(dir_in, mode);
  const Int w1sq = sq(dir.w1);
  const Int w2sq = sq(dir.w2);
  if (w1sq == w2sq) throw SingularParams("V is singular when w1^2 == w2^2");
  const HubbardTriple t = hubbard_solution(dir, Coprime::Require);

  HubbardPoint p;
  p.ell = t.ell;
  p.n = t.n;
  p.m = t.m;
  p.tau = std::numbers::pi / 2.0 * static_cast<double>(abs(t.ell));
  p.v = 8.0 * static_cast<double>(dir.w1 * dir.w2) / static_cast<double>(abs(w1sq - w2sq));
  p.parity = (t.ell % 2 == 0) ? Parity::Frozen : Parity::Swap;
  return p;
}

std::array<Int, 3> nn_dmax3_solution(const Direction& dir_in, Coprime mode) {
  const Direction dir = prepared(dir_in, mode);
  if (dir.w1 == 0 || dir.w2 == 0) throw DegenerateSolution("w1 * w2 == 0 gives m0 == 0");
  const Int w1sq = sq(dir.w1);
  const Int w2sq = sq(dir.w2);
  return {mul_checked(dir.d, -32 * mul_checked(dir.w1, dir.w2)),
          mul_checked(dir.d, -3 * w1sq - 16 * w2sq),
          mul_checked(dir.d, 2 * (-3 * w1sq + 16 * w2sq))};
}

NNPoint nn_params(Int m0, Int m1) {
  if (m0 == 0) throw DegenerateSolution("m0 == 0 gives tau == 0");
  const Int excess = 4 * sq(m1) - sq(m0);
  if (excess < 0) throw ImaginaryV("4 m1^2 < m0^2 has no real V");
  NNPoint p;
  p.m = {m0, m1};
  p.tau = std::numbers::pi / 2.0 * static_cast<double>(abs(m0));
  p.v = 2.0 * std::sqrt(static_cast<double>(excess)) / static_cast<double>(abs(m0));
  p.d_max = 2;
  return p;
}

Int nn_tower_rhs(Int m0, Int m1, Int l) {
  const Int l2 = sq(l);
  return add_checked(mul_checked(1 - l2, sq(m0)), mul_checked(4 * l2, sq(m1)));
}

std::optional<Int> nn_tower_extend(Int m0, Int m1, Int l) {
  if (l < 2) throw InvalidInput("tower index l must be >= 2");
  const Int rhs = nn_tower_rhs(m0, m1, l);
  if (rhs < 0 || rhs % 4 != 0) return std::nullopt;
  return exact_sqrt(rhs / 4);
}

Int dmax4_rhs(Int w1, Int w2) {
  const Int w1sq = sq(w1);
  const Int w2sq = sq(w2);
  return add_checked(add_checked(mul_checked(81, sq(w1sq)), mul_checked(2304, sq(w2sq))),
                     -mul_checked(1184, mul_checked(w1sq, w2sq)));
}

Dmax4Certificate dmax4_certificate(Int w1, Int w2) {
  Dmax4Certificate c;
  c.w1 = w1;
  c.w2 = w2;
  c.rhs = dmax4_rhs(w1, w2);
  c.m3 = exact_sqrt(c.rhs);
  c.degenerate = (w1 == 0 || w2 == 0);
  if (!c.degenerate) {
    // m0 = -32 w1 w2, m1 = -3 w1^2 - 16 w2^2; V = 0 iff 4 m1^2 == m0^2.
    const Int m0 = -32 * w1 * w2;
    const Int m1 = -3 * sq(w1) - 16 * sq(w2);
    c.trivial_v = 4 * sq(m1) == sq(m0);
  }
  return c;
}

std::vector<Dmax4Certificate> search_dmax4(Int w1_max, Int w2_max) {
  if (w1_max < 1 || w2_max < 1) throw InvalidInput("search bounds must be >= 1");
  std::vector<Dmax4Certificate> found;
  for (Int w1 = 1; w1 <= w1_max; ++w1) {
    for (Int w2 = 1; w2 <= w2_max; ++w2) {
      if (gcd(w1, w2) != 1) continue;
      Dmax4Certificate c = dmax4_certificate(w1, w2);
      if (!c.m3) continue;
      if (*c.m3 * *c.m3 != dmax4_rhs(w1, w2)) throw Error("internal: certificate failed re-check");
      found.push_back(c);
    }
  }
  return found;
}

std::vector<Dmax4Certificate> non_degenerate(const std::vector<Dmax4Certificate>& found) {
  std::vector<Dmax4Certificate> out;
  for (const auto& c : found) {
    if (!c.degenerate && !c.trivial_v) out.push_back(c);
  }
  return out;
}

QuadForm3 nn_imbalance_form(const std::array<Int, 3>& deltas) {
  for (Int dlt : deltas) {
    if (dlt < 0) throw InvalidInput("imbalances must be nonnegative");
  }
  if (deltas[0] == deltas[1] || deltas[1] == deltas[2] || deltas[0] == deltas[2]) {
    throw InvalidInput("imbalances must be pairwise distinct");
  }
  const Int d0 = sq(deltas[0]);
  const Int d1 = sq(deltas[1]);
  const Int d2 = sq(deltas[2]);
  const bool any_zero = deltas[0] == 0 || deltas[1] == 0 || deltas[2] == 0;
  // A zero imbalance halves its m_i, i.e. quarters its coefficient. Multiply
  // the other two by 4 instead so everything stays integral.
  auto scale = [&](Int delta) -> Int { return (any_zero && delta != 0) ? 4 : 1; };
  return QuadForm3{(d1 - d2) * scale(deltas[0]), (d2 - d0) * scale(deltas[1]),
                   (d0 - d1) * scale(deltas[2])};
}

std::array<Int, 3> general_nn_solution(const std::array<Int, 3>& deltas, const Direction& dir,
                                       Coprime mode) {
  const QuadForm3 q = nn_imbalance_form(deltas);
  // Particular solution m_i = D_i; the halving convention leaves a zero there too.
  const DiophTriple x = solve_quadratic_diophantine(
      q, DiophTriple{deltas[0], deltas[1], deltas[2]}, dir, mode);
  return {x.x0, x.x1, x.x2};
}

bool satisfies_imbalance_identity(const std::array<Int, 3>& deltas, const std::array<Int, 3>& m) {
  return nn_imbalance_form(deltas).evaluate(m[0], m[1], m[2]) == 0;
}

}  // namespace floq::dioph
