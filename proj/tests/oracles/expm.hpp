#pragma once

// Dense matrix exponentials written independently of the library: a scaled
// and squared Taylor series, and a Hermitian eigendecomposition.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// exp(A) by scaling, a degree-24 Taylor sum and repeated squaring.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// exp(-i t H) for real symmetric H via its eigendecomposition.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
  Eigen::VectorXcd phase(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phase(i) = std::polar(1.0, -t * es.eigenvalues()(i));
  return v * phase.asDiagonal() * v.adjoint();
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline double unitarity_defect(const Eigen::MatrixXcd& u) {
  return max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()));
}

}  // namespace oracle
