#pragma once

// Closed-form two-site propagators and the Frozen/Swap/Quantum classifier.
// Units: hopping amplitude 1, hbar 1.

#include <complex>
#include <cstdlib>
#include <string_view>

#include <Eigen/Dense>

namespace floq::pairdyn {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

struct DriveParams {
  double v = 0.0;
  double tau = 0.0;
  // Hard-core limit V -> infinity; only the classifiers accept it.
  bool v_infinite = false;

  static DriveParams infinite(double tau) { return DriveParams{0.0, tau, true}; }
};

enum class Action { Frozen, Swap, Quantum };

std::string_view to_string(Action a);
Action action_from_string(std::string_view s);

struct PairAction {
  Action tag = Action::Quantum;
  // Phase of the first basis state's image (Frozen) or of the swapped
  // amplitude (Swap). Unity for Quantum.
  cplx phase{1.0, 0.0};
  // Largest off-pattern magnitude for the closest permutation pattern.
  double residual = 0.0;
};

// Two-site spinful occupancy classes.
enum class HubbardClass { Empty, Single, OppositePair, SameSpinFull, Triple, Full };

std::string_view to_string(HubbardClass c);

// Class of the pair occupancy (up1, dn1, up2, dn2). SameSpinFull covers the
// two-particle states where each spin species fills both sites of its own,
// i.e. up on both sites or down on both sites.
HubbardClass hubbard_class(bool up1, bool dn1, bool up2, bool dn2);

// Occupied static neighbors of each pair site, the pair sites excluded.
struct NeighborContext {
  int n1 = 0;
  int n2 = 0;

  int signed_delta() const { return n1 - n2; }
  int delta() const { return std::abs(n1 - n2); }
};

// Two-particle opposite-spin block in the order
// {updown|-, -|updown, up|down, down|up}.
Eigen::Matrix4d hubbard_pair_hamiltonian(double v);
Eigen::Matrix4cd hubbard_pair_unitary(const DriveParams& p);

// One particle on the pair with N1, N2 occupied neighbors.
Eigen::Matrix2d nn_pair_hamiltonian(double v, const NeighborContext& ctx);
Eigen::Matrix2cd nn_pair_unitary(const DriveParams& p, const NeighborContext& ctx);

PairAction classify_nn(const DriveParams& p, int delta, double tol = kDefaultTol);
PairAction classify_hubbard(const DriveParams& p, HubbardClass cls, double tol = kDefaultTol);

// True when tau * sqrt(4 + dij^2) / (2 pi) is within tol of an integer.
bool generalized_freeze_check(double dij, double tau, double tol = kDefaultTol);

// Classifies an arbitrary unitary against the identity and the antidiagonal
// pair-exchange pattern (blocks swapped pairwise for the 4x4 case).
PairAction classify_matrix(const Eigen::MatrixXcd& u, double tol);

}  // namespace floq::pairdyn
