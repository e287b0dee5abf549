#pragma once

// Deterministic evolution of Fock states when every pair the drive touches
// either stays put or swaps with certainty.

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/pairdyn.hpp"

namespace floq::ca {

using lattice::FockState;
using lattice::Model;
using pairdyn::Action;

struct RuleTable {
  bool hubbard = false;
  // Nearest-neighbor models: action per imbalance 0 .. D_max - 1.
  std::vector<pairdyn::PairAction> by_delta;
  // Hubbard models: action per occupancy class, indexed by HubbardClass.
  std::array<pairdyn::PairAction, 6> by_class{};
  pairdyn::DriveParams params;
  double tol = pairdyn::kDefaultTol;

  Action delta_action(int delta) const;
  Action class_action(pairdyn::HubbardClass cls) const;
  std::vector<int> quantum_deltas() const;
  bool fully_deterministic() const;
};

RuleTable make_rule_table(const Model& model, const pairdyn::DriveParams& p,
                          double tol = pairdyn::kDefaultTol);

// Hand-written nearest-neighbor table, e.g. every imbalance Frozen.
RuleTable rule_table_from_actions(const std::vector<Action>& by_delta);

enum class NonDetReason {
  QuantumRule,          // the pair's local class maps to Quantum
  DynamicNeighborhood,  // a neighbor sits on another active, mobile pair
};

struct NonDeterministic {
  int step = 0;          // index within the period
  lattice::SitePair pair;
  int delta = 0;
  NonDetReason reason = NonDetReason::QuantumRule;
};

using StepOutcome = std::variant<FockState, NonDeterministic>;

StepOutcome ca_step(const FockState& state, int step_index, const RuleTable& rules,
                    const Model& model);

// One full drive period.
StepOutcome ca_period(const FockState& state, const RuleTable& rules, const Model& model);

enum class OrbitClass { Frozen, CA, QuantumTouching };

struct Orbit {
  FockState representative;     // smallest state on the orbit
  int period = 0;               // in drive periods
  std::vector<FockState> states;  // visiting order, starting at the seed
  OrbitClass cls = OrbitClass::CA;
};

enum class EvolveStatus { Orbit, NonDeterministic, PeriodNotFound };

struct EvolveResult {
  EvolveStatus status = EvolveStatus::PeriodNotFound;
  std::optional<Orbit> orbit;
  std::optional<NonDeterministic> failure;
  int failure_period = 0;             // full periods completed before the failure
  std::vector<FockState> trajectory;  // states at period boundaries, seed first
};

inline constexpr int kDefaultMaxPeriods = 256;

EvolveResult evolve_periods(const FockState& state, const RuleTable& rules, const Model& model,
                            int max_periods = kDefaultMaxPeriods);

// Particle-number sector. Spinless models use only `particles`.
struct Sector {
  int particles = 0;
  int particles_down = 0;
};

inline constexpr std::uint64_t kDefaultStateLimit = 1u << 22;

// All sector states with particles only on `region` (all sites when empty),
// in ascending order.
std::vector<FockState> enumerate_sector(const Model& model, const Sector& sector,
                                        const std::vector<int>& region = {},
                                        std::uint64_t limit = kDefaultStateLimit);

// States that return to themselves after one period under deterministic rules.
std::vector<FockState> enumerate_frozen(const Model& model, const RuleTable& rules,
                                        const Sector& sector,
                                        const std::vector<int>& region = {},
                                        std::uint64_t limit = kDefaultStateLimit);

// True when no step moves the state.
bool fixed_by_every_step(const FockState& state, const RuleTable& rules, const Model& model);

struct QuantumComponent {
  std::vector<FockState> states;
};

struct Decomposition {
  std::vector<Orbit> orbits;  // Frozen and CA classes
  std::vector<QuantumComponent> quantum;
  std::size_t sector_size = 0;
  std::size_t frozen_count() const;
  std::size_t ca_count() const;
  std::size_t quantum_touching_count() const;
};

struct DecomposeOptions {
  std::vector<int> region;
  std::uint64_t limit = kDefaultStateLimit;
  // Upper bound on the one-period support of a single state.
  std::size_t max_branch = 1u << 16;
};

Decomposition krylov_decompose(const Model& model, const RuleTable& rules, const Sector& sector,
                               const DecomposeOptions& options = {});

// Fock states reached with nonzero amplitude after one period, over-approximated
// by letting every undetermined mobile particle both stay and hop.
std::vector<FockState> period_support(const FockState& state, const RuleTable& rules,
                                      const Model& model, std::size_t max_branch);

struct Trajectory {
  std::vector<FockState> states;  // seed first, then after every applied step
  std::vector<int> steps;         // schedule index chosen at each step
  std::optional<NonDeterministic> failure;
};

// Steps drawn uniformly from the schedule with a seeded generator.
Trajectory random_drive_evolve(const FockState& state, const RuleTable& rules, const Model& model,
                               std::uint64_t seed, int steps);

}  // namespace floq::ca
