#include <algorithm>
#include <cmath>

#include "floq/ca.hpp"
#include "floq/ed.hpp"
#include "floq/errors.hpp"

namespace floq::ed {

FragmentationReport fragmentation_report(int n, int k, double v, double tau,
                                         const ReportOptions& options) {
  FragmentationReport rep;
  rep.n = n;
  rep.k = k;
  rep.v = v;
  rep.tau = tau;
  rep.boundary = options.boundary;

  const SectorBasis basis(n, k);
  rep.dim = basis.size();

  // Cellular-automaton side.
  const lattice::Model chain = lattice::build_chain(n, options.boundary);
  const ca::RuleTable rules = ca::make_rule_table(chain, pairdyn::DriveParams{v, tau, false});
  const ca::Decomposition dec = ca::krylov_decompose(chain, rules, ca::Sector{k, 0});
  rep.ca_frozen = dec.frozen_count();
  for (const auto& o : dec.orbits) {
    if (o.cls == ca::OrbitClass::Frozen) {
      rep.frozen_states.push_back(o.representative.to_string());
    } else {
      rep.ca_orbits.emplace_back(o.representative.to_string(), o.period);
    }
  }
  std::sort(rep.frozen_states.begin(), rep.frozen_states.end());
  for (const auto& c : dec.quantum) rep.quantum_components.push_back(c.states.size());

  // Exact diagonalization side.
  const FloquetOperator u(basis, v, tau, options.boundary);
  rep.ed_frozen = frozen_census(u, options.quasi.frozen_tol).size();
  rep.spectrum = quasispectrum(u, options.quasi);
  rep.block_dims = rep.spectrum.block_dims;
  rep.half_chain_log_dim = rep.spectrum.cut * std::log(2.0);

  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < rep.spectrum.size(); ++i) {
    if (rep.spectrum.frozen[i]) {
      rep.max_frozen_entropy = std::max(rep.max_frozen_entropy, rep.spectrum.entropy[i]);
    } else {
      sum += rep.spectrum.entropy[i];
      ++count;
    }
  }
  rep.mean_nonfrozen_entropy = count > 0 ? sum / static_cast<double>(count) : 0.0;

  try {
    rep.ratios = spacing_ratios(rep.spectrum, true, true);
  } catch (const TooFewLevels&) {
    rep.ratios.reset();
  }
  if (rep.ratios && options.reference_samples > 0) {
    const int largest = *std::max_element(rep.block_dims.begin(), rep.block_dims.end());
    const int dim = std::max(largest, 8);
    rep.coe_mean = reference_r_distribution(Ensemble::COE, dim, options.reference_samples,
                                            options.seed)
                       .mean;
    rep.poisson_mean = reference_r_distribution(Ensemble::Poisson, dim, options.reference_samples,
                                                options.seed + 1)
                           .mean;
  }
  return rep;
}

}  // namespace floq::ed
