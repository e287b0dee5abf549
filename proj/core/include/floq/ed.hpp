#pragma once

// Exact diagonalization of the two-step nearest-neighbor chain drive in a
// fixed particle-number sector.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "floq/lattice.hpp"

namespace floq::ed {

using cplx = std::complex<double>;
using lattice::Boundary;
using lattice::FockState;

inline constexpr std::uint64_t kDefaultBasisLimit = 1u << 20;

// All n-site occupation patterns with k particles, ordered lexicographically
// on the bitstring n0 n1 ... n_{N-1}. Bit i of a mask is site i.
class SectorBasis {
 public:
  SectorBasis(int n, int k, std::uint64_t limit = kDefaultBasisLimit);

  int sites() const { return n_; }
  int particles() const { return k_; }
  std::size_t size() const { return masks_.size(); }
  std::uint64_t mask(std::size_t i) const { return masks_[i]; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }
  FockState state(std::size_t i) const { return FockState::from_mask(n_, masks_[i]); }
  // Position of the mask, or size() when absent.
  std::size_t index(std::uint64_t mask) const;
  std::size_t index(const FockState& s) const { return index(s.mask()); }

 private:
  std::uint64_t key(std::uint64_t mask) const;

  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> keys_;  // ascending
};

SectorBasis build_sector_basis(int n, int k, std::uint64_t limit = kDefaultBasisLimit);

enum class StepParity { Even, Odd };

// Hopping -1 on the step's pairs plus V on every occupied bond of the chain.
// The periodic wrap hop carries the Jordan-Wigner sign (-1)^(k-1).
Eigen::SparseMatrix<double> step_hamiltonian(const SectorBasis& basis, StepParity step, double v,
                                             Boundary boundary);

struct Disorder {
  double strength = 0.0;
  std::uint64_t seed = 0;
};

struct FloquetProvenance {
  int n = 0;
  int k = 0;
  double v = 0.0;
  double tau = 0.0;
  Boundary boundary = Boundary::Open;
  std::optional<Disorder> disorder;
};

// U = D exp(-i tau H_odd) exp(-i tau H_even), kept factored: each step
// propagator is block diagonal over the conserved occupancies of its pairs.
class FloquetOperator {
 public:
  FloquetOperator(const SectorBasis& basis, double v, double tau, Boundary boundary,
                  std::optional<Disorder> disorder = std::nullopt);

  const SectorBasis& basis() const { return basis_; }
  const FloquetProvenance& provenance() const { return prov_; }
  std::size_t dim() const { return basis_.size(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd column(std::size_t j) const;
  cplx element(std::size_t i, std::size_t j) const { return column(j)(static_cast<Eigen::Index>(i)); }
  // Dense matrix; refuses dimensions above max_dim.
  Eigen::MatrixXcd dense(std::size_t max_dim = 4096) const;
  // Site potentials of the disorder pass (empty without disorder).
  const std::vector<double>& disorder_potential() const { return potential_; }

  // Sparse column: indices and amplitudes of U e_j above drop_tol.
  void sparse_column(std::size_t j, std::vector<std::size_t>& idx, std::vector<cplx>& val,
                     double drop_tol = 0.0) const;

 private:
  struct Block {
    std::vector<std::size_t> members;
    Eigen::MatrixXcd u;
  };
  struct Step {
    std::vector<Block> blocks;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> where;  // state -> (block, slot)
  };

  Step build_step(StepParity parity, double v, double tau, Boundary boundary) const;
  void apply_step(const Step& step, const std::vector<std::size_t>& in_idx,
                  const std::vector<cplx>& in_val, std::vector<std::size_t>& out_idx,
                  std::vector<cplx>& out_val) const;

  SectorBasis basis_;
  FloquetProvenance prov_;
  Step even_;
  Step odd_;
  std::vector<double> potential_;
  std::vector<cplx> disorder_phase_;  // per basis state
};

FloquetOperator floquet_operator(const SectorBasis& basis, double v, double tau, Boundary boundary,
                                 std::optional<Disorder> disorder = std::nullopt);

struct QuasiOptions {
  int cut = -1;                  // left block is sites [0, cut); -1 means n/2
  bool keep_vectors = false;     // dense dim x dim eigenvector matrix
  bool use_reflection = true;    // split mirror-symmetric blocks by parity
  double coupling_tol = 1e-12;   // |U_ij| above this links i and j
  double frozen_tol = 1e-8;
  std::size_t max_block_dim = 16384;
};

struct QuasiSpectrum {
  std::vector<double> quasienergies;  // ascending in (-pi, pi]
  std::vector<double> entropy;        // half-chain, natural log
  std::vector<char> frozen;
  std::vector<int> sector;            // symmetry block each level came from
  std::vector<int> block_dims;        // dimension of each block
  Eigen::MatrixXcd vectors;           // columns, if kept
  double max_residual = 0.0;          // worst |U v - e^{-i eps} v| checked
  int cut = 0;
  FloquetProvenance provenance;

  std::size_t size() const { return quasienergies.size(); }
};

QuasiSpectrum quasispectrum(const FloquetOperator& u, const QuasiOptions& options = {});

// Half-chain entanglement entropy of a sector vector across [0, cut) | [cut, n).
double half_chain_entropy(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXcd>& psi,
                          int cut);

// States with |<s|U|s>| > 1 - tol, in basis order.
std::vector<FockState> frozen_census(const FloquetOperator& u, double tol = 1e-8);

struct RatioStats {
  std::vector<double> ratios;
  double mean = 0.0;
  std::size_t levels_used = 0;
  std::size_t sectors_used = 0;
};

// Consecutive-gap ratios on the circle, computed inside each symmetry block
// and pooled. Frozen levels are dropped first when mask_frozen is set.
RatioStats spacing_ratios(const QuasiSpectrum& spec, bool mask_frozen = true,
                          bool per_sector = true);

// Ratios of one circular spectrum (any order; sorted internally).
std::vector<double> circular_ratios(std::vector<double> phases);

enum class Ensemble { COE, Poisson };

std::string to_string(Ensemble e);

struct RDistribution {
  std::vector<double> bin_edges;  // bins + 1 edges on [0, 1]
  std::vector<double> mass;       // per bin, sums to 1
  double mean = 0.0;
  std::size_t count = 0;
};

RDistribution histogram_r(const std::vector<double>& ratios, int bins = 20);

RDistribution reference_r_distribution(Ensemble ensemble, int dim, int samples,
                                       std::uint64_t seed, int bins = 20);

// COE eigenphases from the CMV five-diagonal model (Verblunsky coefficients).
std::vector<double> sample_coe_phases(int dim, std::uint64_t seed);
// COE eigenphases of W^T W with W Haar unitary; dense, for small dim.
std::vector<double> sample_coe_phases_dense(int dim, std::uint64_t seed);
std::vector<double> sample_poisson_phases(int dim, std::uint64_t seed);

struct ReportOptions {
  Boundary boundary = Boundary::Open;
  int reference_samples = 0;  // COE / Poisson samples; 0 skips the references
  std::uint64_t seed = 1;
  QuasiOptions quasi;
};

struct FragmentationReport {
  int n = 0;
  int k = 0;
  double v = 0.0;
  double tau = 0.0;
  Boundary boundary = Boundary::Open;
  std::size_t dim = 0;
  std::size_t ca_frozen = 0;
  std::size_t ed_frozen = 0;
  std::vector<std::string> frozen_states;
  std::vector<std::pair<std::string, int>> ca_orbits;  // representative, period (> 1)
  std::vector<std::size_t> quantum_components;         // CA quantum-touching component sizes
  std::vector<int> block_dims;
  double mean_nonfrozen_entropy = 0.0;
  double max_frozen_entropy = 0.0;
  double half_chain_log_dim = 0.0;  // ln 2^{cut}
  std::optional<RatioStats> ratios;
  std::optional<double> coe_mean;
  std::optional<double> poisson_mean;
  QuasiSpectrum spectrum;
};

FragmentationReport fragmentation_report(int n, int k, double v, double tau,
                                         const ReportOptions& options = {});

}  // namespace floq::ed
