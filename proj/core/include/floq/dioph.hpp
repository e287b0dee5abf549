#pragma once

// Integer solutions of the quadratic conditions that make two-site Floquet
// evolution a permutation. All arithmetic here is exact (128-bit); the only
// floating point values are the derived physical parameters.

#include <array>
#include <optional>
#include <vector>

#include "floq/int128.hpp"

namespace floq::dioph {

// Diagonal ternary form a*x0^2 + b*x1^2 + c*x2^2.
struct QuadForm3 {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  Int evaluate(Int x0, Int x1, Int x2) const;
};

struct DiophTriple {
  Int x0 = 0;
  Int x1 = 0;
  Int x2 = 0;

  bool operator==(const DiophTriple&) const = default;
};

// Rational slope (w1 : w2) of the line through the particular solution,
// plus an overall integer scale d.
struct Direction {
  Int w1 = 0;
  Int w2 = 0;
  Int d = 1;
};

enum class Coprime { Require, Normalize };

// Divides (w1, w2) by their gcd g and multiplies d by g^2. The generated
// triples are quadratic in (w1, w2), so the result is unchanged.
Direction normalized(const Direction& dir);

DiophTriple solve_quadratic_diophantine(const QuadForm3& q, const DiophTriple& particular,
                                        const Direction& dir, Coprime mode = Coprime::Require);

enum class Parity { Frozen, Swap };

struct HubbardTriple {
  Int ell = 0;
  Int n = 0;
  Int m = 0;
};

struct HubbardPoint {
  Int ell = 0;
  Int n = 0;
  Int m = 0;
  double tau = 0.0;
  double v = 0.0;
  Parity parity = Parity::Frozen;
};

// Solutions of ell^2 + n^2 = 2 m n.
HubbardTriple hubbard_solution(const Direction& dir, Coprime mode = Coprime::Require);
HubbardPoint hubbard_params(const Direction& dir, Coprime mode = Coprime::Require);

struct NNPoint {
  std::vector<Int> m;
  double tau = 0.0;
  double v = 0.0;
  int d_max = 2;
};

// Closed-form family for maximum lattice degree 3: returns (m0, m1, m2).
std::array<Int, 3> nn_dmax3_solution(const Direction& dir, Coprime mode = Coprime::Require);

// Drive point from the first two tower entries: tau = (pi/2)|m0|,
// V = 2 sqrt(4 m1^2 / m0^2 - 1).
NNPoint nn_params(Int m0, Int m1);

// Right-hand side (1 - l^2) m0^2 + 4 l^2 m1^2 of the tower equation 4 m_l^2 = RHS.
Int nn_tower_rhs(Int m0, Int m1, Int l);

// m_l >= 0 when the tower equation has an integer solution.
std::optional<Int> nn_tower_extend(Int m0, Int m1, Int l);

// Certificate for maximum degree 4 along the degree-3 family with d = 1.
struct Dmax4Certificate {
  Int w1 = 0;
  Int w2 = 0;
  Int rhs = 0;                 // 81 w1^4 + 2304 w2^4 - 1184 w1^2 w2^2
  std::optional<Int> m3;       // integer sqrt of rhs, if a perfect square
  bool degenerate = false;     // w1 w2 == 0, so m0 == 0
  bool trivial_v = false;      // V == 0 at this point
};

Int dmax4_rhs(Int w1, Int w2);
Dmax4Certificate dmax4_certificate(Int w1, Int w2);

// Exhaustive search over 1 <= w1 <= w1_max, 1 <= w2 <= w2_max, gcd(w1, w2) = 1.
// Entries come out in ascending (w1, w2) order and are re-certified.
std::vector<Dmax4Certificate> search_dmax4(Int w1_max, Int w2_max);

// Keeps entries with m0 != 0 and V != 0.
std::vector<Dmax4Certificate> non_degenerate(const std::vector<Dmax4Certificate>& found);

// Integer form of the three-imbalance condition
//   m0^2 (D1^2 - D2^2) + m1^2 (D2^2 - D0^2) + m2^2 (D0^2 - D1^2) = 0
// with m_i halved for every D_i == 0, scaled so the coefficients are integral.
QuadForm3 nn_imbalance_form(const std::array<Int, 3>& deltas);

std::array<Int, 3> general_nn_solution(const std::array<Int, 3>& deltas, const Direction& dir,
                                       Coprime mode = Coprime::Require);

// Checks the unscaled identity above, applying the halving convention.
bool satisfies_imbalance_identity(const std::array<Int, 3>& deltas, const std::array<Int, 3>& m);

}  // namespace floq::dioph
