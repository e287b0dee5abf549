#include "floq/ca.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "floq/errors.hpp"

namespace floq::ca {

namespace {

using lattice::SitePair;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

// Index of the active pair owning each site in a step, or -1.
std::vector<int> pair_owner(const Model& model, int step_index) {
  std::vector<int> owner(static_cast<std::size_t>(model.lattice.num_sites()), -1);
  const auto& pairs = model.schedule.steps.at(step_index).pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    owner[pairs[i].a] = owner[pairs[i].b] = static_cast<int>(i);
  }
  return owner;
}

bool pair_mobile(const FockState& s, const SitePair& p) {
  if (!s.spinful()) return s.up(p.a) != s.up(p.b);
  return s.up(p.a) != s.up(p.b) || s.down(p.a) != s.down(p.b);
}

struct PairVerdict {
  Action action = Action::Frozen;
  int delta = 0;
};

// Rule-table action for one pair, ignoring what its neighbors do.
PairVerdict judge_pair(const FockState& state, const SitePair& pair, const RuleTable& rules,
                       const Model& model) {
  PairVerdict v;
  if (rules.hubbard) {
    const auto cls = pairdyn::hubbard_class(state.up(pair.a), state.down(pair.a), state.up(pair.b),
                                            state.down(pair.b));
    v.action = rules.class_action(cls);
    return v;
  }
  if (!pair_mobile(state, pair)) return v;
  v.delta = lattice::delta_of_pair(state, pair, model.lattice).delta();
  v.action = rules.delta_action(v.delta);
  return v;
}

// A neighbor of the pair sits on another active pair that can move this step.
bool neighborhood_dynamic(const FockState& state, std::size_t pair_index,
                          const std::vector<SitePair>& pairs, const std::vector<int>& owner,
                          const Model& model) {
  const SitePair& pair = pairs[pair_index];
  for (int site : {pair.a, pair.b}) {
    for (int nb : model.lattice.neighbors(site)) {
      const int other = owner[nb];
      if (other < 0 || other == static_cast<int>(pair_index)) continue;
      if (pair_mobile(state, pairs[other])) return true;
    }
  }
  return false;
}

}  // namespace

Action RuleTable::delta_action(int delta) const {
  if (hubbard) throw InvalidInput("rule table is indexed by occupancy class");
  if (delta < 0) throw InvalidInput("negative imbalance");
  if (static_cast<std::size_t>(delta) >= by_delta.size()) return Action::Quantum;
  return by_delta[delta].tag;
}

Action RuleTable::class_action(pairdyn::HubbardClass cls) const {
  if (!hubbard) throw InvalidInput("rule table is indexed by imbalance");
  return by_class[static_cast<std::size_t>(cls)].tag;
}

std::vector<int> RuleTable::quantum_deltas() const {
  std::vector<int> out;
  for (std::size_t d = 0; d < by_delta.size(); ++d) {
    if (by_delta[d].tag == Action::Quantum) out.push_back(static_cast<int>(d));
  }
  return out;
}

bool RuleTable::fully_deterministic() const {
  if (hubbard) {
    return std::none_of(by_class.begin(), by_class.end(),
                        [](const auto& a) { return a.tag == Action::Quantum; });
  }
  return quantum_deltas().empty();
}

RuleTable make_rule_table(const Model& model, const pairdyn::DriveParams& p, double tol) {
  RuleTable t;
  t.params = p;
  t.tol = tol;
  if (model.kind == lattice::ModelKind::SquareRlbl) {
    t.hubbard = true;
    for (int c = 0; c < 6; ++c) {
      t.by_class[c] = pairdyn::classify_hubbard(p, static_cast<pairdyn::HubbardClass>(c), tol);
    }
    return t;
  }
  const int d_max = std::max(model.lattice.max_degree(), 1);
  for (int d = 0; d < d_max; ++d) t.by_delta.push_back(pairdyn::classify_nn(p, d, tol));
  return t;
}

RuleTable rule_table_from_actions(const std::vector<Action>& by_delta) {
  RuleTable t;
  for (Action a : by_delta) t.by_delta.push_back(pairdyn::PairAction{a, {1.0, 0.0}, 0.0});
  return t;
}

StepOutcome ca_step(const FockState& state, int step_index, const RuleTable& rules,
                    const Model& model) {
  const auto& pairs = model.schedule.steps.at(step_index).pairs;
  const std::vector<int> owner = pair_owner(model, step_index);
  FockState next = state;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const SitePair& pair = pairs[i];
    const PairVerdict v = judge_pair(state, pair, rules, model);
    if (v.action == Action::Quantum) {
      return NonDeterministic{step_index, pair, v.delta, NonDetReason::QuantumRule};
    }
    // The imbalance is only constant if no neighbor hops during this step.
    if (!rules.hubbard && pair_mobile(state, pair) &&
        neighborhood_dynamic(state, i, pairs, owner, model)) {
      return NonDeterministic{step_index, pair, v.delta, NonDetReason::DynamicNeighborhood};
    }
    if (v.action == Action::Swap) next.swap_sites(pair.a, pair.b);
  }
  return next;
}

StepOutcome ca_period(const FockState& state, const RuleTable& rules, const Model& model) {
  FockState cur = state;
  for (int s = 0; s < static_cast<int>(model.schedule.steps.size()); ++s) {
    StepOutcome r = ca_step(cur, s, rules, model);
    if (std::holds_alternative<NonDeterministic>(r)) return r;
    cur = std::get<FockState>(std::move(r));
  }
  return cur;
}

EvolveResult evolve_periods(const FockState& state, const RuleTable& rules, const Model& model,
                            int max_periods) {
  if (max_periods < 1) throw InvalidInput("max_periods must be >= 1");
  EvolveResult out;
  out.trajectory.push_back(state);
  FockState cur = state;
  for (int p = 1; p <= max_periods; ++p) {
    StepOutcome r = ca_period(cur, rules, model);
    if (auto* nd = std::get_if<NonDeterministic>(&r)) {
      out.status = EvolveStatus::NonDeterministic;
      out.failure = *nd;
      out.failure_period = p - 1;
      return out;
    }
    cur = std::get<FockState>(std::move(r));
    if (cur == state) {
      Orbit orbit;
      orbit.period = p;
      orbit.states = out.trajectory;
      orbit.representative = *std::min_element(orbit.states.begin(), orbit.states.end());
      orbit.cls = p == 1 ? OrbitClass::Frozen : OrbitClass::CA;
      out.status = EvolveStatus::Orbit;
      out.orbit = std::move(orbit);
      return out;
    }
    out.trajectory.push_back(cur);
  }
  out.status = EvolveStatus::PeriodNotFound;
  return out;
}

std::vector<FockState> enumerate_sector(const Model& model, const Sector& sector,
                                        const std::vector<int>& region, std::uint64_t limit) {
  const int n = model.lattice.num_sites();
  std::vector<int> sites = region;
  if (sites.empty()) {
    sites.resize(static_cast<std::size_t>(n));
    std::iota(sites.begin(), sites.end(), 0);
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  const int m = static_cast<int>(sites.size());
  const int k_up = sector.particles;
  const int k_down = model.spinful ? sector.particles_down : 0;
  if (k_up < 0 || k_down < 0 || k_up > m || k_down > m) {
    throw InvalidInput("particle number outside 0 .. number of sites");
  }
  const std::uint64_t c_up = binomial(m, k_up);
  const std::uint64_t c_down = model.spinful ? binomial(m, k_down) : 1;
  const unsigned __int128 dim = static_cast<unsigned __int128>(c_up) * c_down;
  if (dim > limit) {
    throw SectorTooLarge(dim > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(dim),
                         limit);
  }

  auto combos = [&](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<int> chosen;
      for (int i : idx) chosen.push_back(sites[i]);
      out.push_back(std::move(chosen));
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
  };

  std::vector<FockState> out;
  out.reserve(static_cast<std::size_t>(dim));
  const auto ups = combos(k_up);
  const auto downs = model.spinful ? combos(k_down) : std::vector<std::vector<int>>{{}};
  for (const auto& u : ups) {
    for (const auto& d : downs) {
      FockState s(n, model.spinful);
      for (int site : u) s.set_up(site, true);
      for (int site : d) s.set_down(site, true);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FockState> enumerate_frozen(const Model& model, const RuleTable& rules,
                                        const Sector& sector, const std::vector<int>& region,
                                        std::uint64_t limit) {
  std::vector<FockState> out;
  for (const FockState& s : enumerate_sector(model, sector, region, limit)) {
    StepOutcome r = ca_period(s, rules, model);
    if (auto* next = std::get_if<FockState>(&r); next && *next == s) out.push_back(s);
  }
  return out;
}

bool fixed_by_every_step(const FockState& state, const RuleTable& rules, const Model& model) {
  for (int s = 0; s < static_cast<int>(model.schedule.steps.size()); ++s) {
    StepOutcome r = ca_step(state, s, rules, model);
    auto* next = std::get_if<FockState>(&r);
    if (!next || !(*next == state)) return false;
  }
  return true;
}

std::size_t Decomposition::frozen_count() const {
  return static_cast<std::size_t>(std::count_if(
      orbits.begin(), orbits.end(), [](const Orbit& o) { return o.cls == OrbitClass::Frozen; }));
}

std::size_t Decomposition::ca_count() const {
  return static_cast<std::size_t>(std::count_if(
      orbits.begin(), orbits.end(), [](const Orbit& o) { return o.cls == OrbitClass::CA; }));
}

std::size_t Decomposition::quantum_touching_count() const {
  std::size_t n = 0;
  for (const auto& c : quantum) n += c.states.size();
  return n;
}

std::vector<FockState> period_support(const FockState& state, const RuleTable& rules,
                                      const Model& model, std::size_t max_branch) {
  std::vector<FockState> frontier{state};
  for (int step = 0; step < static_cast<int>(model.schedule.steps.size()); ++step) {
    const auto& pairs = model.schedule.steps[step].pairs;
    const std::vector<int> owner = pair_owner(model, step);
    std::unordered_set<FockState, lattice::FockStateHash> next_set;
    std::vector<FockState> next;
    for (const FockState& s : frontier) {
      // Deterministic pairs are applied once; the rest branch.
      FockState base = s;
      std::vector<const SitePair*> open;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const SitePair& pair = pairs[i];
        if (!pair_mobile(s, pair) && !rules.hubbard) continue;
        const PairVerdict v = judge_pair(s, pair, rules, model);
        const bool undetermined =
            v.action == Action::Quantum ||
            (!rules.hubbard && neighborhood_dynamic(s, i, pairs, owner, model));
        if (undetermined) {
          open.push_back(&pair);
        } else if (v.action == Action::Swap) {
          base.swap_sites(pair.a, pair.b);
        }
      }
      // Every local arrangement with the same spin-resolved count is reachable.
      std::vector<FockState> branches{base};
      for (const SitePair* p : open) {
        std::vector<FockState> grown;
        for (const FockState& b : branches) {
          const int ups = int(b.up(p->a)) + int(b.up(p->b));
          const int downs = int(b.down(p->a)) + int(b.down(p->b));
          for (int mask = 0; mask < 16; ++mask) {
            const bool ua = mask & 1, da = mask & 2, ub = mask & 4, db = mask & 8;
            if (int(ua) + int(ub) != ups || int(da) + int(db) != downs) continue;
            if (!b.spinful() && (da || db)) continue;
            FockState c = b;
            c.set_up(p->a, ua);
            c.set_up(p->b, ub);
            if (c.spinful()) {
              c.set_down(p->a, da);
              c.set_down(p->b, db);
            }
            grown.push_back(std::move(c));
          }
        }
        branches = std::move(grown);
        if (branches.size() > max_branch) throw Error("one-period support exceeds max_branch");
      }
      for (auto& b : branches) {
        if (next_set.insert(b).second) next.push_back(std::move(b));
      }
      if (next.size() > max_branch) throw Error("one-period support exceeds max_branch");
    }
    frontier = std::move(next);
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

Decomposition krylov_decompose(const Model& model, const RuleTable& rules, const Sector& sector,
                               const DecomposeOptions& options) {
  const std::vector<FockState> states =
      enumerate_sector(model, sector, options.region, options.limit);
  Decomposition out;
  out.sector_size = states.size();
  std::unordered_map<FockState, std::size_t, lattice::FockStateHash> index;
  index.reserve(states.size() * 2);
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);

  constexpr int kUnassigned = 0, kOrbit = 1, kQuantum = 2;
  std::vector<int> status(states.size(), kUnassigned);
  const int max_periods = static_cast<int>(std::min<std::size_t>(
      std::max<std::size_t>(states.size() + 1, kDefaultMaxPeriods), 1u << 20));

  std::unordered_set<FockState, lattice::FockStateHash> seen_reps;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (status[i] != kUnassigned) continue;
    EvolveResult r = evolve_periods(states[i], rules, model, max_periods);
    if (r.status == EvolveStatus::Orbit) {
      for (const FockState& s : r.orbit->states) {
        if (auto it = index.find(s); it != index.end()) status[it->second] = kOrbit;
      }
      if (seen_reps.insert(r.orbit->representative).second) out.orbits.push_back(std::move(*r.orbit));
    } else if (r.status == EvolveStatus::NonDeterministic) {
      // Everything on the deterministic prefix runs into the same pair.
      for (const FockState& s : r.trajectory) {
        if (auto it = index.find(s); it != index.end()) status[it->second] = kQuantum;
      }
    } else {
      throw Error("orbit search did not close within " + std::to_string(max_periods) +
                  " periods for state " + states[i].to_string());
    }
  }

  // Union-find over the one-period support graph of the quantum-touching states.
  std::vector<std::size_t> parent(states.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (status[i] != kQuantum) continue;
    for (const FockState& t : period_support(states[i], rules, model, options.max_branch)) {
      auto it = index.find(t);
      if (it == index.end() || status[it->second] != kQuantum) continue;
      const std::size_t a = find(i), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::unordered_map<std::size_t, std::size_t> component_of_root;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (status[i] != kQuantum) continue;
    const std::size_t root = find(i);
    auto [it, fresh] = component_of_root.emplace(root, out.quantum.size());
    if (fresh) out.quantum.emplace_back();
    out.quantum[it->second].states.push_back(states[i]);
  }
  std::sort(out.quantum.begin(), out.quantum.end(), [](const auto& a, const auto& b) {
    if (a.states.size() != b.states.size()) return a.states.size() > b.states.size();
    return a.states.front() < b.states.front();
  });
  return out;
}

Trajectory random_drive_evolve(const FockState& state, const RuleTable& rules, const Model& model,
                               std::uint64_t seed, int steps) {
  if (steps < 0) throw InvalidInput("step count must be nonnegative");
  const int num_steps = static_cast<int>(model.schedule.steps.size());
  if (num_steps == 0) throw InvalidInput("schedule has no steps");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, num_steps - 1);
  Trajectory t;
  t.states.push_back(state);
  FockState cur = state;
  for (int i = 0; i < steps; ++i) {
    const int s = pick(rng);
    StepOutcome r = ca_step(cur, s, rules, model);
    if (auto* nd = std::get_if<NonDeterministic>(&r)) {
      t.failure = *nd;
      break;
    }
    cur = std::get<FockState>(std::move(r));
    t.steps.push_back(s);
    t.states.push_back(cur);
  }
  return t;
}

}  // namespace floq::ca
