#include "dense_eigen.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "floq/errors.hpp"

namespace floq::detail {

namespace {

using cplx = std::complex<double>;

constexpr double kMinRcond = 1e-7;
constexpr int kMaxRotations = 12;

}  // namespace

double wrap_phase(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x, two_pi);
  if (x <= -std::numbers::pi) x += two_pi;
  if (x > std::numbers::pi) x -= two_pi;
  return x;
}

std::vector<double> hermitian_eigen_inplace(Eigen::MatrixXcd& h) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  std::vector<double> w(static_cast<std::size_t>(n));
  if (n == 0) return w;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, h.data(), n, w.data());
  if (info != 0) {
    throw DiagonalizationFailure("zheevd failed with info " + std::to_string(info) +
                                 " at dimension " + std::to_string(n));
  }
  return w;
}

UnitaryEigen unitary_eigen(const std::function<void(Eigen::MatrixXcd&)>& build, Eigen::Index dim) {
  UnitaryEigen out;
  if (dim == 0) return out;
  const lapack_int n = static_cast<lapack_int>(dim);

  for (int attempt = 0; attempt < kMaxRotations; ++attempt) {
    // Rotation angles spread by the golden angle.
    const double phi = wrap_phase(0.5 + 2.399963229728653 * attempt);
    const cplx rot = std::polar(1.0, phi);

    Eigen::MatrixXcd a(dim, dim);
    build(a);
    if (a.rows() != dim || a.cols() != dim) throw Error("internal: block builder changed size");
    a *= rot;
    // b = I - W, a = I + W
    Eigen::MatrixXcd b = -a;
    b.diagonal().array() += 1.0;
    a.diagonal().array() += 1.0;

    double anorm = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) anorm = std::max(anorm, a.col(j).cwiseAbs().sum());

    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, a.data(), n, ipiv.data());
    if (info < 0) throw DiagonalizationFailure("zgetrf argument error " + std::to_string(info));
    if (info > 0) continue;  // exactly singular: rotate and retry
    double rcond = 0.0;
    info = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, a.data(), n, anorm, &rcond);
    if (info != 0) throw DiagonalizationFailure("zgecon failed with info " + std::to_string(info));
    if (rcond < kMinRcond) continue;
    info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, n, a.data(), n, ipiv.data(), b.data(), n);
    if (info != 0) throw DiagonalizationFailure("zgetrs failed with info " + std::to_string(info));
    a.resize(0, 0);

    // X = (I + W)^{-1} (I - W) is anti-Hermitian; H = i X has eigenvalues tan(theta / 2).
    b *= cplx{0.0, 1.0};
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const cplx avg = 0.5 * (b(i, j) + std::conj(b(j, i)));
        b(i, j) = avg;
        b(j, i) = std::conj(avg);
      }
      b(j, j) = b(j, j).real();
    }
    const std::vector<double> lam = hermitian_eigen_inplace(b);
    out.quasienergies.resize(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
      // Eigenvalue of W is e^{i theta}; of the input, e^{i (theta - phi)} = e^{-i eps}.
      out.quasienergies[i] = wrap_phase(phi - 2.0 * std::atan(lam[i]));
    }
    out.vectors = std::move(b);
    return out;
  }
  throw DiagonalizationFailure("no well-conditioned Cayley rotation found at dimension " +
                               std::to_string(dim));
}

}  // namespace floq::detail
