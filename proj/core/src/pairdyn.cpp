#include "floq/pairdyn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "floq/errors.hpp"

namespace floq::pairdyn {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx unit_phase(cplx z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : cplx{1.0, 0.0};
}

}  // namespace

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Frozen: return "Frozen";
    case Action::Swap: return "Swap";
    case Action::Quantum: return "Quantum";
  }
  return "?";
}

Action action_from_string(std::string_view s) {
  if (s == "Frozen") return Action::Frozen;
  if (s == "Swap") return Action::Swap;
  if (s == "Quantum") return Action::Quantum;
  throw InvalidInput("unknown pair action: " + std::string(s));
}

std::string_view to_string(HubbardClass c) {
  switch (c) {
    case HubbardClass::Empty: return "Empty";
    case HubbardClass::Single: return "Single";
    case HubbardClass::OppositePair: return "OppositePair";
    case HubbardClass::SameSpinFull: return "SameSpinFull";
    case HubbardClass::Triple: return "Triple";
    case HubbardClass::Full: return "Full";
  }
  return "?";
}

HubbardClass hubbard_class(bool up1, bool dn1, bool up2, bool dn2) {
  const int ups = int(up1) + int(up2);
  const int downs = int(dn1) + int(dn2);
  switch (ups + downs) {
    case 0: return HubbardClass::Empty;
    case 1: return HubbardClass::Single;
    case 2: return ups == 1 ? HubbardClass::OppositePair : HubbardClass::SameSpinFull;
    case 3: return HubbardClass::Triple;
    default: return HubbardClass::Full;
  }
}

Eigen::Matrix4d hubbard_pair_hamiltonian(double v) {
  Eigen::Matrix4d h;
  h << v, 0, -1, -1,
       0, v, -1, -1,
      -1, -1, 0, 0,
      -1, -1, 0, 0;
  return h;
}

Eigen::Matrix4cd hubbard_pair_unitary(const DriveParams& p) {
  if (p.v_infinite) throw InvalidInput("hubbard_pair_unitary needs a finite V");
  const double v = p.v;
  const double tau = p.tau;
  const double root = std::sqrt(16.0 + v * v);
  const double arg = 0.5 * tau * root;
  const cplx half_phase = std::exp(-0.5 * kI * v * tau);
  const cplx a = std::exp(0.5 * kI * v * tau) / 2.0 *
                 (std::cos(arg) - kI * (v / root) * std::sin(arg));
  const cplx b = 2.0 * kI * std::sin(arg) / root;
  const cplx ab = std::conj(a);

  Eigen::Matrix4cd u;
  u(0, 0) = half_phase * (0.5 + a);
  u(0, 1) = half_phase * (-0.5 + a);
  u(1, 0) = u(0, 1);
  u(1, 1) = u(0, 0);
  u(2, 2) = std::conj(half_phase) * (0.5 + ab);
  u(2, 3) = std::conj(half_phase) * (-0.5 + ab);
  u(3, 2) = u(2, 3);
  u(3, 3) = u(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 2; j < 4; ++j) {
      u(i, j) = b;
      u(j, i) = b;
    }
  }
  return half_phase * u;
}

Eigen::Matrix2d nn_pair_hamiltonian(double v, const NeighborContext& ctx) {
  Eigen::Matrix2d h;
  h << ctx.n1 * v, -1.0,
       -1.0, ctx.n2 * v;
  return h;
}

Eigen::Matrix2cd nn_pair_unitary(const DriveParams& p, const NeighborContext& ctx) {
  if (p.v_infinite) throw InvalidInput("nn_pair_unitary needs a finite V");
  const double v = p.v;
  const double tau = p.tau;
  const double dv = ctx.signed_delta() * v;
  const double c = std::sqrt(4.0 + dv * dv);
  const double s = std::sin(0.5 * c * tau);
  const double co = std::cos(0.5 * c * tau);
  const cplx prefactor = std::exp(-0.5 * kI * double(ctx.n1 + ctx.n2) * v * tau) / c;

  Eigen::Matrix2cd u;
  u(0, 0) = c * co - kI * dv * s;
  u(0, 1) = 2.0 * kI * s;
  u(1, 0) = u(0, 1);
  u(1, 1) = c * co + kI * dv * s;
  return prefactor * u;
}

PairAction classify_matrix(const Eigen::MatrixXcd& u, double tol) {
  const Eigen::Index dim = u.rows();
  if (dim != u.cols() || dim % 2 != 0) {
    throw InvalidInput("classify_matrix expects an even-dimensional square matrix");
  }
  double off_identity = 0.0;
  double off_swap = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double mag = std::abs(u(i, j));
      if (i != j) off_identity = std::max(off_identity, mag);
      if (j != (i ^ 1)) off_swap = std::max(off_swap, mag);
    }
  }
  PairAction out;
  if (off_identity < tol) {
    out.tag = Action::Frozen;
    out.phase = unit_phase(u(0, 0));
    out.residual = off_identity;
  } else if (off_swap < tol) {
    out.tag = Action::Swap;
    out.phase = unit_phase(u(1, 0));
    out.residual = off_swap;
  } else {
    out.tag = Action::Quantum;
    out.residual = std::min(off_identity, off_swap);
  }
  return out;
}

PairAction classify_nn(const DriveParams& p, int delta, double tol) {
  if (delta < 0) throw InvalidInput("delta must be nonnegative");
  if (p.v_infinite) {
    // Any imbalance pins the particle; a balanced pair still hops freely.
    if (delta != 0) return PairAction{Action::Frozen, {1.0, 0.0}, 0.0};
    return classify_nn(DriveParams{0.0, p.tau, false}, 0, tol);
  }
  return classify_matrix(nn_pair_unitary(p, NeighborContext{delta, 0}), tol);
}

PairAction classify_hubbard(const DriveParams& p, HubbardClass cls, double tol) {
  const cplx one{1.0, 0.0};
  switch (cls) {
    case HubbardClass::Empty:
    case HubbardClass::SameSpinFull:
      return PairAction{Action::Frozen, one, 0.0};
    case HubbardClass::Full:
      return PairAction{Action::Frozen,
                        p.v_infinite ? one : std::exp(-2.0 * kI * p.v * p.tau), 0.0};
    case HubbardClass::Single:
    case HubbardClass::Triple: {
      // One mobile particle (or hole): cos(tau) stays, i sin(tau) hops.
      const double co = std::cos(p.tau);
      const double s = std::sin(p.tau);
      const cplx shift = (cls == HubbardClass::Triple && !p.v_infinite)
                             ? std::exp(-kI * p.v * p.tau)
                             : one;
      if (std::abs(s) < tol) return PairAction{Action::Frozen, shift * unit_phase(co), std::abs(s)};
      if (std::abs(co) < tol) {
        return PairAction{Action::Swap, shift * unit_phase(kI * s), std::abs(co)};
      }
      return PairAction{Action::Quantum, one, std::min(std::abs(s), std::abs(co))};
    }
    case HubbardClass::OppositePair:
      if (p.v_infinite) return PairAction{Action::Frozen, one, 0.0};
      return classify_matrix(hubbard_pair_unitary(p), tol);
  }
  throw std::logic_error("unreachable hubbard class");
}

bool generalized_freeze_check(double dij, double tau, double tol) {
  const double cycles = tau * std::sqrt(4.0 + dij * dij) / (2.0 * std::numbers::pi);
  return std::abs(cycles - std::round(cycles)) < tol;
}

}  // namespace floq::pairdyn
