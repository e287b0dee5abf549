#include <algorithm>
#include <map>
#include <random>

#include "floq/ed.hpp"
#include "floq/errors.hpp"

namespace floq::ed {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

FloquetOperator::FloquetOperator(const SectorBasis& basis, double v, double tau, Boundary boundary,
                                 std::optional<Disorder> disorder)
    : basis_(basis) {
  if (tau < 0.0) throw InvalidInput("tau must be nonnegative");
  prov_ = FloquetProvenance{basis.sites(), basis.particles(), v, tau, boundary, disorder};
  even_ = build_step(StepParity::Even, v, tau, boundary);
  odd_ = build_step(StepParity::Odd, v, tau, boundary);
  if (disorder) {
    std::mt19937_64 rng(disorder->seed);
    std::uniform_real_distribution<double> dist(-disorder->strength, disorder->strength);
    potential_.resize(static_cast<std::size_t>(basis.sites()));
    for (double& p : potential_) p = disorder->strength == 0.0 ? 0.0 : dist(rng);
    disorder_phase_.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      double theta = 0.0;
      for (int s = 0; s < basis.sites(); ++s) {
        if ((basis.mask(i) >> s) & 1u) theta += potential_[s];
      }
      disorder_phase_[i] = std::exp(-kI * theta);
    }
  }
}

FloquetOperator::Step FloquetOperator::build_step(StepParity parity, double v, double tau,
                                                  Boundary boundary) const {
  const Eigen::SparseMatrix<double> h = step_hamiltonian(basis_, parity, v, boundary);
  const lattice::Model chain = lattice::build_chain(basis_.sites(), boundary);
  const auto& pairs = chain.schedule.steps.at(parity == StepParity::Even ? 0 : 1).pairs;
  std::uint64_t active = 0;
  for (const auto& p : pairs) active |= (std::uint64_t{1} << p.a) | (std::uint64_t{1} << p.b);

  // Conserved label: occupancy off the active pairs and particle count per pair.
  // A singly occupied pair is canonicalized to its first site.
  std::map<std::uint64_t, std::uint32_t> block_of_label;
  Step step;
  step.where.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::uint64_t m = basis_.mask(i);
    std::uint64_t label = m & ~active;
    for (const auto& p : pairs) {
      const int count = int((m >> p.a) & 1u) + int((m >> p.b) & 1u);
      if (count == 2) label |= (std::uint64_t{1} << p.a) | (std::uint64_t{1} << p.b);
      if (count == 1) label |= std::uint64_t{1} << p.a;
    }
    auto [it, fresh] = block_of_label.emplace(label, static_cast<std::uint32_t>(step.blocks.size()));
    if (fresh) step.blocks.emplace_back();
    Block& b = step.blocks[it->second];
    step.where[i] = {it->second, static_cast<std::uint32_t>(b.members.size())};
    b.members.push_back(i);
  }

  for (Block& b : step.blocks) {
    const Eigen::Index d = static_cast<Eigen::Index>(b.members.size());
    const std::uint32_t self = step.where[b.members[0]].first;
    Eigen::MatrixXd hb = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(h, static_cast<Eigen::Index>(b.members[c])); it; ++it) {
        const auto [blk, slot] = step.where[static_cast<std::size_t>(it.row())];
        if (blk != self) throw Error("internal: step Hamiltonian couples distinct blocks");
        hb(slot, c) = it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hb);
    if (es.info() != Eigen::Success) throw DiagonalizationFailure("step block diagonalization failed");
    const Eigen::VectorXcd phases =
        (-kI * tau * es.eigenvalues().cast<cplx>()).array().exp().matrix();
    const Eigen::MatrixXcd vecs = es.eigenvectors().cast<cplx>();
    b.u = vecs * phases.asDiagonal() * vecs.adjoint();
  }
  return step;
}

void FloquetOperator::apply_step(const Step& step, const std::vector<std::size_t>& in_idx,
                                 const std::vector<cplx>& in_val, std::vector<std::size_t>& out_idx,
                                 std::vector<cplx>& out_val) const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>> items;
  items.reserve(in_idx.size());
  for (std::size_t t = 0; t < in_idx.size(); ++t) {
    const auto [blk, slot] = step.where[in_idx[t]];
    items.emplace_back(blk, slot, in_val[t]);
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  out_idx.clear();
  out_val.clear();
  std::size_t t = 0;
  while (t < items.size()) {
    const std::uint32_t blk = std::get<0>(items[t]);
    const Block& b = step.blocks[blk];
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.members.size()));
    for (; t < items.size() && std::get<0>(items[t]) == blk; ++t) {
      x(std::get<1>(items[t])) += std::get<2>(items[t]);
    }
    const Eigen::VectorXcd y = b.u * x;
    for (Eigen::Index s = 0; s < y.size(); ++s) {
      out_idx.push_back(b.members[static_cast<std::size_t>(s)]);
      out_val.push_back(y(s));
    }
  }
}

void FloquetOperator::sparse_column(std::size_t j, std::vector<std::size_t>& idx,
                                    std::vector<cplx>& val, double drop_tol) const {
  if (j >= dim()) throw InvalidInput("column index out of range");
  std::vector<std::size_t> mid_idx;
  std::vector<cplx> mid_val;
  apply_step(even_, {j}, {cplx{1.0, 0.0}}, mid_idx, mid_val);
  apply_step(odd_, mid_idx, mid_val, idx, val);
  if (!disorder_phase_.empty()) {
    for (std::size_t t = 0; t < idx.size(); ++t) val[t] *= disorder_phase_[idx[t]];
  }
  if (drop_tol > 0.0) {
    std::size_t w = 0;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (std::abs(val[t]) > drop_tol) {
        idx[w] = idx[t];
        val[w] = val[t];
        ++w;
      }
    }
    idx.resize(w);
    val.resize(w);
  }
}

Eigen::VectorXcd FloquetOperator::column(std::size_t j) const {
  std::vector<std::size_t> idx;
  std::vector<cplx> val;
  sparse_column(j, idx, val);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
  for (std::size_t t = 0; t < idx.size(); ++t) out(static_cast<Eigen::Index>(idx[t])) += val[t];
  return out;
}

Eigen::VectorXcd FloquetOperator::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) throw InvalidInput("vector length mismatch");
  auto run = [](const Step& step, const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out(in.size());
    for (const Block& b : step.blocks) {
      const Eigen::Index d = static_cast<Eigen::Index>(b.members.size());
      Eigen::VectorXcd xb(d);
      for (Eigen::Index s = 0; s < d; ++s) xb(s) = in(static_cast<Eigen::Index>(b.members[s]));
      const Eigen::VectorXcd yb = b.u * xb;
      for (Eigen::Index s = 0; s < d; ++s) out(static_cast<Eigen::Index>(b.members[s])) = yb(s);
    }
    return out;
  };
  Eigen::VectorXcd y = run(odd_, run(even_, x));
  if (!disorder_phase_.empty()) {
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) *= disorder_phase_[static_cast<std::size_t>(i)];
  }
  return y;
}

Eigen::MatrixXcd FloquetOperator::dense(std::size_t max_dim) const {
  if (dim() > max_dim) throw SectorTooLarge(dim(), max_dim);
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for (std::size_t j = 0; j < dim(); ++j) u.col(static_cast<Eigen::Index>(j)) = column(j);
  return u;
}

FloquetOperator floquet_operator(const SectorBasis& basis, double v, double tau, Boundary boundary,
                                 std::optional<Disorder> disorder) {
  return FloquetOperator(basis, v, tau, boundary, disorder);
}

}  // namespace floq::ed
