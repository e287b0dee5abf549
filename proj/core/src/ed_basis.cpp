#include <algorithm>
#include <bit>
#include <numeric>

#include "floq/ed.hpp"
#include "floq/errors.hpp"

namespace floq::ed {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

SectorBasis::SectorBasis(int n, int k, std::uint64_t limit) : n_(n), k_(k) {
  if (n < 1 || n > 62) throw InvalidInput("chain length must be in 1..62");
  if (k < 0 || k > n) throw InvalidInput("particle number must be in 0..n");
  const std::uint64_t dim = binomial(n, k);
  if (dim > limit) throw SectorTooLarge(dim, limit);

  std::vector<std::uint64_t> masks;
  masks.reserve(dim);
  if (k == 0) {
    masks.push_back(0);
  } else {
    // Gosper's hack: next larger integer with the same popcount.
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (m < end) {
      masks.push_back(m);
      const std::uint64_t c = m & (~m + 1);
      const std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
  keyed.reserve(masks.size());
  for (auto m : masks) keyed.emplace_back(key(m), m);
  std::sort(keyed.begin(), keyed.end());
  masks_.reserve(keyed.size());
  keys_.reserve(keyed.size());
  for (const auto& [kk, m] : keyed) {
    keys_.push_back(kk);
    masks_.push_back(m);
  }
}

std::uint64_t SectorBasis::key(std::uint64_t mask) const {
  // Site 0 is the most significant character of the bitstring.
  std::uint64_t out = 0;
  for (int i = 0; i < n_; ++i) {
    if ((mask >> i) & 1u) out |= std::uint64_t{1} << (n_ - 1 - i);
  }
  return out;
}

std::size_t SectorBasis::index(std::uint64_t mask) const {
  if (std::popcount(mask) != k_ || (n_ < 64 && (mask >> n_) != 0)) return size();
  const std::uint64_t kk = key(mask);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), kk);
  if (it == keys_.end() || *it != kk) return size();
  return static_cast<std::size_t>(it - keys_.begin());
}

SectorBasis build_sector_basis(int n, int k, std::uint64_t limit) { return SectorBasis(n, k, limit); }

Eigen::SparseMatrix<double> step_hamiltonian(const SectorBasis& basis, StepParity step, double v,
                                             Boundary boundary) {
  const int n = basis.sites();
  const lattice::Model chain = lattice::build_chain(n, boundary);
  const auto& pairs = chain.schedule.steps.at(step == StepParity::Even ? 0 : 1).pairs;
  const auto& bonds = chain.lattice.edges();
  // Wrap hop passes the other k - 1 particles.
  const double wrap_sign = (basis.particles() - 1) % 2 == 0 ? 1.0 : -1.0;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(basis.size() * (pairs.size() + 1));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const std::uint64_t m = basis.mask(j);
    int occupied_bonds = 0;
    for (const auto& b : bonds) occupied_bonds += ((m >> b.a) & (m >> b.b) & 1u) ? 1 : 0;
    if (occupied_bonds != 0) trip.emplace_back(j, j, v * occupied_bonds);
    for (const auto& p : pairs) {
      const bool oa = (m >> p.a) & 1u;
      const bool ob = (m >> p.b) & 1u;
      if (oa == ob) continue;
      const std::uint64_t hopped = m ^ (std::uint64_t{1} << p.a) ^ (std::uint64_t{1} << p.b);
      const std::size_t i = basis.index(hopped);
      const bool wrap = std::abs(p.a - p.b) != 1;
      trip.emplace_back(i, j, -1.0 * (wrap ? wrap_sign : 1.0));
    }
  }
  Eigen::SparseMatrix<double> h(static_cast<Eigen::Index>(basis.size()),
                                static_cast<Eigen::Index>(basis.size()));
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

}  // namespace floq::ed
