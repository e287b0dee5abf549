#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace floq::detail {

struct UnitaryEigen {
  std::vector<double> quasienergies;  // eigenvalue e^{-i eps}, eps in (-pi, pi]
  Eigen::MatrixXcd vectors;           // orthonormal columns
};

// Eigen-decomposition of a unitary matrix through its Cayley transform, which
// is Hermitian and so diagonalizes with an orthonormal eigenbasis even across
// degeneracies. `build` fills the matrix; it is called again if the first
// rotation angle lands too close to an eigenvalue.
UnitaryEigen unitary_eigen(const std::function<void(Eigen::MatrixXcd&)>& build, Eigen::Index dim);

// Hermitian eigen-decomposition (LAPACK zheevd), in place: `h` becomes the
// eigenvector matrix.
std::vector<double> hermitian_eigen_inplace(Eigen::MatrixXcd& h);

double wrap_phase(double x);

}  // namespace floq::detail
