#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "dense_eigen.hpp"
#include "floq/ed.hpp"
#include "floq/errors.hpp"

namespace floq::ed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Independent stream per sample index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Prufer phase of the CMV recursion and its derivative in theta. The unit
// phase u = e^{i psi} is advanced algebraically. Every step adds
// theta - 2 arg(w) with Re w > 0, so the accumulated arg(w) is tracked as an
// unnormalised product plus a count of crossings of the negative real axis.
struct PruferPhase {
  const std::vector<cplx>& alpha;  // interior coefficients, |alpha| < 1

  std::pair<double, double> operator()(double theta) const {
    const cplx step = std::polar(1.0, theta);
    cplx u = step;
    cplx prod{1.0, 0.0};
    int winding = 0;
    double dpsi = 1.0;
    for (const cplx& a : alpha) {
      const cplx au = a * u;
      const cplx w = 1.0 - au;
      const double n2 = std::norm(w);
      const double re = (au.real() * w.real() + au.imag() * w.imag()) / n2;
      dpsi = 1.0 + dpsi * (1.0 + 2.0 * re);
      const cplx cw(w.real(), -w.imag());
      u *= step * (cw * cw) / n2;

      const double before = prod.imag();
      prod *= w;
      if (prod.real() < 0.0 && (before < 0.0) != (prod.imag() < 0.0)) {
        winding += before < 0.0 ? -1 : 1;
      }
      const double mag = std::abs(prod.real()) + std::abs(prod.imag());
      if (mag > 1e150 || mag < 1e-150) prod /= mag;
    }
    const double turns = std::arg(prod) + kTwoPi * winding;
    const double n = static_cast<double>(alpha.size()) + 1.0;
    return {n * theta - 2.0 * turns, dpsi};
  }
};

}  // namespace

std::string to_string(Ensemble e) { return e == Ensemble::COE ? "COE" : "Poisson"; }

std::vector<double> circular_ratios(std::vector<double> phases) {
  if (phases.size() < 3) throw TooFewLevels("need at least 3 levels, got " + std::to_string(phases.size()));
  for (double& p : phases) p = detail::wrap_phase(p);
  std::sort(phases.begin(), phases.end());
  const std::size_t m = phases.size();
  std::vector<double> gaps(m);
  for (std::size_t i = 0; i + 1 < m; ++i) gaps[i] = phases[i + 1] - phases[i];
  gaps[m - 1] = phases[0] + kTwoPi - phases[m - 1];
  std::vector<double> r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = gaps[i];
    const double b = gaps[(i + 1) % m];
    const double hi = std::max(a, b);
    r[i] = hi > 0.0 ? std::min(a, b) / hi : 1.0;
  }
  return r;
}

RatioStats spacing_ratios(const QuasiSpectrum& spec, bool mask_frozen, bool per_sector) {
  std::map<int, std::vector<double>> groups;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (mask_frozen && spec.frozen[i]) continue;
    groups[per_sector ? spec.sector[i] : 0].push_back(spec.quasienergies[i]);
  }
  RatioStats out;
  for (auto& [sector, levels] : groups) {
    if (levels.size() < 3) continue;
    const auto r = circular_ratios(levels);
    out.ratios.insert(out.ratios.end(), r.begin(), r.end());
    out.levels_used += levels.size();
    ++out.sectors_used;
  }
  if (out.ratios.empty()) throw TooFewLevels("no symmetry block has 3 or more unmasked levels");
  double sum = 0.0;
  for (double r : out.ratios) sum += r;
  out.mean = sum / static_cast<double>(out.ratios.size());
  return out;
}

RDistribution histogram_r(const std::vector<double>& ratios, int bins) {
  if (bins < 1) throw InvalidInput("histogram needs at least one bin");
  RDistribution out;
  out.bin_edges.resize(static_cast<std::size_t>(bins + 1));
  for (int i = 0; i <= bins; ++i) out.bin_edges[i] = static_cast<double>(i) / bins;
  out.mass.assign(static_cast<std::size_t>(bins), 0.0);
  double sum = 0.0;
  for (double r : ratios) {
    const int b = std::clamp(static_cast<int>(r * bins), 0, bins - 1);
    out.mass[b] += 1.0;
    sum += r;
  }
  out.count = ratios.size();
  if (!ratios.empty()) {
    for (double& m : out.mass) m /= static_cast<double>(ratios.size());
    out.mean = sum / static_cast<double>(ratios.size());
  }
  return out;
}

std::vector<double> sample_poisson_phases(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (double& p : out) p = u(rng);
  return out;
}

std::vector<double> sample_coe_phases(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Verblunsky coefficients of the orthogonal circular ensemble: alpha_k has
  // |alpha_k|^2 ~ Beta(1, (N - k - 1) / 2) and uniform phase for k < N - 1;
  // the last one lies on the unit circle.
  std::vector<cplx> alpha;
  alpha.reserve(static_cast<std::size_t>(dim - 1));
  for (int k = 0; k + 1 < dim; ++k) {
    const double b = 0.5 * (dim - k - 1);
    const double mod2 = 1.0 - std::pow(1.0 - unif(rng), 1.0 / b);
    alpha.push_back(std::polar(std::sqrt(mod2), kTwoPi * unif(rng)));
  }
  const double eta = kTwoPi * unif(rng);  // last coefficient e^{i eta}

  // Eigenangles solve psi(theta) = -eta (mod 2 pi); psi rises by 2 pi N over a turn.
  const PruferPhase psi{alpha};
  const int grid = 2 * dim + 1;
  std::vector<double> theta(static_cast<std::size_t>(grid + 1));
  std::vector<double> value(static_cast<std::size_t>(grid + 1));
  for (int g = 0; g <= grid; ++g) {
    theta[g] = kTwoPi * g / grid;
    value[g] = psi(theta[g]).first;
  }
  const double first = std::ceil((value[0] + eta) / kTwoPi);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    const double target = -eta + kTwoPi * (first + j);
    auto it = std::upper_bound(value.begin(), value.end(), target);
    std::size_t g = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - value.begin(), 1, grid)) - 1;
    double lo = theta[g], hi = theta[g + 1];
    const double flo = value[g] - target;
    const double fhi = value[g + 1] - target;
    // Safeguarded Newton. Roots sit on steep steps of psi, so bisection
    // does most of the work far from a root.
    double x = lo + (hi - lo) * (-flo) / (fhi - flo);
    for (int iter = 0; iter < 100; ++iter) {
      const auto [f, df] = psi(x);
      const double r = f - target;
      if (r < 0) {
        lo = x;
      } else {
        hi = x;
      }
      const double dx = r / df;
      if (std::abs(dx) < 1e-11) {
        x -= dx;
        break;
      }
      double next = x - dx;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      x = next;
      if (hi - lo < 1e-11) break;
    }
    out.push_back(detail::wrap_phase(x));
  }
  return out;
}

std::vector<double> sample_coe_phases_dense(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx{1.0, 0.0};
  }
  const Eigen::MatrixXcd s = q.transpose() * q;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(s, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < dim; ++i) out.push_back(std::arg(es.eigenvalues()(i)));
  return out;
}

RDistribution reference_r_distribution(Ensemble ensemble, int dim, int samples, std::uint64_t seed,
                                       int bins) {
  if (dim < 8) throw InvalidInput("reference dimension must be >= 8");
  if (samples < 1) throw InvalidInput("need at least one sample");
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sub = mix_seed(seed, static_cast<std::uint64_t>(s));
    const auto phases = ensemble == Ensemble::COE ? sample_coe_phases(dim, sub)
                                                  : sample_poisson_phases(dim, sub);
    const auto r = circular_ratios(phases);
    pooled.insert(pooled.end(), r.begin(), r.end());
  }
  return histogram_r(pooled, bins);
}

}  // namespace floq::ed
