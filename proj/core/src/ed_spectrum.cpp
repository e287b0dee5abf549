#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "dense_eigen.hpp"
#include "floq/ed.hpp"
#include "floq/errors.hpp"

namespace floq::ed {

namespace {

// Row/column position of every basis state in the Schmidt matrices of its
// left particle number.
struct EntropyPlan {
  int cut = 0;
  std::vector<int> left_count;
  std::vector<int> left_pos;
  std::vector<int> right_pos;
  std::vector<int> rows;  // per left particle number
  std::vector<int> cols;

  EntropyPlan(const SectorBasis& basis, int cut_in) : cut(cut_in) {
    const int n = basis.sites();
    const int k = basis.particles();
    rows.assign(static_cast<std::size_t>(k + 1), 0);
    cols.assign(static_cast<std::size_t>(k + 1), 0);
    std::unordered_map<std::uint64_t, int> left_ids, right_ids;
    const std::uint64_t left_mask = cut >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cut) - 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::uint64_t m = basis.mask(i);
      const std::uint64_t l = m & left_mask;
      const std::uint64_t r = m >> cut;
      const int kl = std::popcount(l);
      auto [li, lnew] = left_ids.emplace(l, rows[kl]);
      if (lnew) ++rows[kl];
      auto [ri, rnew] = right_ids.emplace(r, cols[kl]);
      if (rnew) ++cols[kl];
      left_count.push_back(kl);
      left_pos.push_back(li->second);
      right_pos.push_back(ri->second);
    }
    (void)n;
  }

  // Entropy of a vector given on a subset of basis states.
  double entropy(const std::vector<std::size_t>& states, const std::vector<cplx>& amps) const {
    std::vector<Eigen::MatrixXcd> psi(rows.size());
    for (std::size_t kl = 0; kl < rows.size(); ++kl) {
      if (rows[kl] > 0) psi[kl] = Eigen::MatrixXcd::Zero(rows[kl], cols[kl]);
    }
    for (std::size_t t = 0; t < states.size(); ++t) {
      const std::size_t s = states[t];
      psi[left_count[s]](left_pos[s], right_pos[s]) += amps[t];
    }
    double entropy = 0.0;
    for (const auto& m : psi) {
      if (m.size() == 0 || m.squaredNorm() < 1e-300) continue;
      const Eigen::MatrixXcd rho = m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint())
                                                        : Eigen::MatrixXcd(m.adjoint() * m);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-300) entropy -= p * std::log(p);
      }
    }
    return entropy;
  }
};

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Orthonormal vectors spanning one symmetry block; vector o is the sum of
// coef * e_state over the entries tagged with orbit o.
struct BlockSpec {
  std::vector<std::size_t> states;
  std::vector<int> orbit;
  std::vector<double> coef;
  int dim = 0;
};

std::uint64_t reversed(std::uint64_t m, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    if ((m >> i) & 1u) out |= std::uint64_t{1} << (n - 1 - i);
  }
  return out;
}

std::string describe(const FloquetProvenance& p) {
  return "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " V=" + std::to_string(p.v) +
         " tau=" + std::to_string(p.tau) + " boundary=" + std::string(lattice::to_string(p.boundary));
}

}  // namespace

double half_chain_entropy(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXcd>& psi,
                          int cut) {
  if (cut < 0 || cut > basis.sites()) throw InvalidInput("cut outside the chain");
  if (static_cast<std::size_t>(psi.size()) != basis.size()) throw InvalidInput("vector length mismatch");
  const EntropyPlan plan(basis, cut);
  std::vector<std::size_t> states(basis.size());
  std::iota(states.begin(), states.end(), 0);
  std::vector<cplx> amps(psi.data(), psi.data() + psi.size());
  return plan.entropy(states, amps);
}

std::vector<FockState> frozen_census(const FloquetOperator& u, double tol) {
  std::vector<FockState> out;
  std::vector<std::size_t> idx;
  std::vector<cplx> val;
  for (std::size_t j = 0; j < u.dim(); ++j) {
    u.sparse_column(j, idx, val);
    cplx diag{0.0, 0.0};
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] == j) diag += val[t];
    }
    if (std::abs(diag) > 1.0 - tol) out.push_back(u.basis().state(j));
  }
  return out;
}

QuasiSpectrum quasispectrum(const FloquetOperator& u, const QuasiOptions& opt) {
  const SectorBasis& basis = u.basis();
  const int n = basis.sites();
  const std::size_t dim = basis.size();
  const int cut = opt.cut < 0 ? n / 2 : opt.cut;
  if (cut > n) throw InvalidInput("cut outside the chain");

  // Connected components of the coupling graph |U_ij| > coupling_tol.
  DisjointSets sets(dim);
  std::vector<std::size_t> idx;
  std::vector<cplx> val;
  for (std::size_t j = 0; j < dim; ++j) {
    u.sparse_column(j, idx, val, opt.coupling_tol);
    for (std::size_t i : idx) sets.unite(i, j);
  }
  std::vector<int> comp_of(dim, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t j = 0; j < dim; ++j) {
    const std::size_t root = sets.find(j);
    if (comp_of[root] < 0) {
      comp_of[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comp_of[j] = comp_of[root];
    comps[comp_of[j]].push_back(j);
  }

  const auto& dis = u.provenance().disorder;
  const bool reflect = opt.use_reflection && (!dis || dis->strength == 0.0);
  std::vector<std::size_t> mirror;
  if (reflect) {
    mirror.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) mirror[j] = basis.index(reversed(basis.mask(j), n));
  }

  std::vector<BlockSpec> blocks;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& members = comps[c];
    bool self_mirror = false;
    if (reflect) {
      const int image = comp_of[mirror[members.front()]];
      for (std::size_t s : members) {
        if (comp_of[mirror[s]] != image) {
          throw DiagonalizationFailure("reflection does not map components onto components (" +
                                       describe(u.provenance()) + ")");
        }
      }
      self_mirror = image == static_cast<int>(c);
    }
    if (!self_mirror) {
      BlockSpec b;
      for (std::size_t s : members) {
        b.states.push_back(s);
        b.orbit.push_back(b.dim++);
        b.coef.push_back(1.0);
      }
      blocks.push_back(std::move(b));
      continue;
    }
    const double h = std::sqrt(0.5);
    BlockSpec even, odd;
    for (std::size_t s : members) {
      const std::size_t r = mirror[s];
      if (r == s) {
        even.states.push_back(s);
        even.orbit.push_back(even.dim++);
        even.coef.push_back(1.0);
      } else if (s < r) {
        even.states.insert(even.states.end(), {s, r});
        even.orbit.insert(even.orbit.end(), {even.dim, even.dim});
        even.coef.insert(even.coef.end(), {h, h});
        ++even.dim;
        odd.states.insert(odd.states.end(), {s, r});
        odd.orbit.insert(odd.orbit.end(), {odd.dim, odd.dim});
        odd.coef.insert(odd.coef.end(), {h, -h});
        ++odd.dim;
      }
    }
    blocks.push_back(std::move(even));
    if (odd.dim > 0) blocks.push_back(std::move(odd));
  }

  QuasiSpectrum out;
  out.cut = cut;
  out.provenance = u.provenance();
  if (opt.keep_vectors) out.vectors = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const EntropyPlan plan(basis, cut);

  std::vector<int> pos(dim, -1);
  std::vector<double> coef(dim, 0.0);
  std::vector<double> eps_all;
  std::vector<double> ent_all;
  std::vector<char> frozen_all;
  std::vector<int> sector_all;
  std::size_t column_out = 0;

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const BlockSpec& b = blocks[bi];
    const Eigen::Index d = b.dim;
    if (static_cast<std::size_t>(d) > opt.max_block_dim) {
      throw SectorTooLarge(static_cast<std::uint64_t>(d), opt.max_block_dim);
    }
    for (std::size_t t = 0; t < b.states.size(); ++t) {
      pos[b.states[t]] = b.orbit[t];
      coef[b.states[t]] = b.coef[t];
    }
    auto build = [&](Eigen::MatrixXcd& m) {
      m.setZero(d, d);
      std::vector<std::size_t> ci;
      std::vector<cplx> cv;
      for (std::size_t t = 0; t < b.states.size(); ++t) {
        u.sparse_column(b.states[t], ci, cv);
        for (std::size_t q = 0; q < ci.size(); ++q) {
          const int p = pos[ci[q]];
          if (p >= 0) m(p, b.orbit[t]) += coef[ci[q]] * b.coef[t] * cv[q];
        }
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        const double leak = std::abs(1.0 - m.col(c).squaredNorm());
        if (leak > 1e-9) {
          throw DiagonalizationFailure("symmetry block is not invariant (leak " + std::to_string(leak) +
                                       ", " + describe(u.provenance()) + ")");
        }
      }
    };

    detail::UnitaryEigen eig;
    cplx single{1.0, 0.0};
    if (d == 1) {
      Eigen::MatrixXcd m;
      build(m);
      single = m(0, 0);
      eig.quasienergies = {detail::wrap_phase(-std::arg(single))};
      eig.vectors = Eigen::MatrixXcd::Ones(1, 1);
    } else {
      eig = detail::unitary_eigen(build, d);
    }

    const bool check_all = d <= 2048;
    const Eigen::Index stride = check_all ? 1 : std::max<Eigen::Index>(1, d / 64);
    std::vector<cplx> amps(b.states.size());
    for (Eigen::Index e = 0; e < d; ++e) {
      for (std::size_t t = 0; t < b.states.size(); ++t) {
        amps[t] = b.coef[t] * eig.vectors(b.orbit[t], e);
      }
      const double eps = eig.quasienergies[static_cast<std::size_t>(e)];
      const bool want_vector = opt.keep_vectors || e % stride == 0;
      if (want_vector) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t t = 0; t < b.states.size(); ++t) psi(static_cast<Eigen::Index>(b.states[t])) += amps[t];
        if (e % stride == 0) {
          const double res = (u.apply(psi) - std::polar(1.0, -eps) * psi).norm();
          out.max_residual = std::max(out.max_residual, res);
          if (res > 1e-8) {
            throw DiagonalizationFailure("eigenpair residual " + std::to_string(res) + " (" +
                                         describe(u.provenance()) + ", block dim " +
                                         std::to_string(d) + ")");
          }
        }
        if (opt.keep_vectors) out.vectors.col(static_cast<Eigen::Index>(column_out)) = psi;
      }
      ++column_out;
      eps_all.push_back(eps);
      ent_all.push_back(plan.entropy(b.states, amps));
      frozen_all.push_back(b.states.size() == 1 && std::abs(single) > 1.0 - opt.frozen_tol);
      sector_all.push_back(static_cast<int>(bi));
    }
    out.block_dims.push_back(static_cast<int>(d));
    for (std::size_t s : b.states) pos[s] = -1;
  }

  std::vector<std::size_t> order(eps_all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eps_all[a] < eps_all[b]; });
  for (std::size_t i : order) {
    out.quasienergies.push_back(eps_all[i]);
    out.entropy.push_back(ent_all[i]);
    out.frozen.push_back(frozen_all[i]);
    out.sector.push_back(sector_all[i]);
  }
  if (opt.keep_vectors) {
    Eigen::MatrixXcd sorted(out.vectors.rows(), out.vectors.cols());
    for (std::size_t c = 0; c < order.size(); ++c) {
      sorted.col(static_cast<Eigen::Index>(c)) = out.vectors.col(static_cast<Eigen::Index>(order[c]));
    }
    out.vectors = std::move(sorted);
  }
  return out;
}

}  // namespace floq::ed
