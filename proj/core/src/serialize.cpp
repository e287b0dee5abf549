#include "floq/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "floq/errors.hpp"

namespace floq::io {

json int_to_json(Int v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_string(v);
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw InvalidInput("expected an integer or a decimal string");
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json round_numbers(const json& j, int digits) {
  if (j.is_number_float()) return round_significant(j.get<double>(), digits);
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it, digits);
    return out;
  }
  return j;
}

json to_json(const lattice::FockState& s) { return s.to_string(); }

lattice::FockState state_from_json(const json& j, int num_sites, bool spinful) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_object() && j.contains("occupancy")) {
    text = j.at("occupancy").get<std::string>();
  } else if (j.is_object() && j.contains("sites")) {
    lattice::FockState s(num_sites, spinful);
    for (int site : j.at("sites").get<std::vector<int>>()) {
      if (site < 0 || site >= num_sites) throw InvalidInput("occupied site out of range");
      s.set_up(site, true);
    }
    return s;
  } else {
    throw InvalidInput("state must be a string or an object with 'occupancy' or 'sites'");
  }
  if (static_cast<int>(text.size()) != num_sites) {
    throw InvalidInput("state has " + std::to_string(text.size()) + " sites, lattice has " +
                       std::to_string(num_sites));
  }
  return lattice::FockState::from_string(text, spinful);
}

json to_json(const lattice::Model& m) {
  json sites = json::array();
  for (int s = 0; s < m.lattice.num_sites(); ++s) {
    const auto& c = m.lattice.coord(s);
    sites.push_back({{"index", s}, {"x", c[0]}, {"y", c[1]}, {"degree", m.lattice.degree(s)}});
  }
  json edges = json::array();
  for (const auto& e : m.lattice.edges()) edges.push_back({e.a, e.b});
  json steps = json::array();
  for (const auto& st : m.schedule.steps) {
    json pairs = json::array();
    for (const auto& p : st.pairs) pairs.push_back({p.a, p.b});
    steps.push_back(pairs);
  }
  return {{"model", std::string(lattice::to_string(m.kind))},
          {"boundary", std::string(lattice::to_string(m.boundary))},
          {"lx", m.lx},
          {"ly", m.ly},
          {"spinful", m.spinful},
          {"sites", sites},
          {"edges", edges},
          {"steps", steps},
          {"pairs_disjoint", m.schedule.pairs_disjoint},
          {"neighborhoods_disjoint", m.schedule.neighborhoods_disjoint}};
}

lattice::Model model_from_json(const json& j) {
  lattice::Model m;
  m.kind = lattice::model_from_string(j.at("model").get<std::string>());
  m.boundary = lattice::boundary_from_string(j.at("boundary").get<std::string>());
  m.lx = j.at("lx").get<int>();
  m.ly = j.at("ly").get<int>();
  m.spinful = j.at("spinful").get<bool>();
  std::vector<std::array<int, 2>> coords;
  for (const auto& s : j.at("sites")) coords.push_back({s.at("x").get<int>(), s.at("y").get<int>()});
  std::vector<lattice::SitePair> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  m.lattice = lattice::Lattice(std::move(coords), edges);
  for (const auto& st : j.at("steps")) {
    lattice::DriveStep step;
    for (const auto& p : st) step.pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    m.schedule.steps.push_back(std::move(step));
  }
  m.schedule.pairs_disjoint = lattice::audit_pairs_disjoint(m.lattice, m.schedule);
  m.schedule.neighborhoods_disjoint = lattice::audit_neighborhoods_disjoint(m.lattice, m.schedule);
  return m;
}

json to_json(const pairdyn::PairAction& a) {
  return {{"action", std::string(pairdyn::to_string(a.tag))},
          {"phase", {a.phase.real(), a.phase.imag()}},
          {"residual", a.residual}};
}

json to_json(const ca::RuleTable& t) {
  json out{{"V", t.params.v_infinite ? json("inf") : json(t.params.v)},
           {"tau", t.params.tau},
           {"tol", t.tol}};
  if (t.hubbard) {
    json classes = json::object();
    for (int c = 0; c < 6; ++c) {
      classes[std::string(pairdyn::to_string(static_cast<pairdyn::HubbardClass>(c)))] =
          to_json(t.by_class[c]);
    }
    out["classes"] = classes;
  } else {
    json deltas = json::array();
    for (std::size_t d = 0; d < t.by_delta.size(); ++d) {
      json a = to_json(t.by_delta[d]);
      a["delta"] = d;
      deltas.push_back(a);
    }
    out["deltas"] = deltas;
    out["quantum_deltas"] = t.quantum_deltas();
  }
  return out;
}

json to_json(const ca::NonDeterministic& nd) {
  return {{"step", nd.step},
          {"pair", {nd.pair.a, nd.pair.b}},
          {"delta", nd.delta},
          {"reason", nd.reason == ca::NonDetReason::QuantumRule ? "quantum_rule"
                                                                : "dynamic_neighborhood"}};
}

json to_json(const ca::Orbit& o) {
  json states = json::array();
  for (const auto& s : o.states) states.push_back(s.to_string());
  const char* cls = o.cls == ca::OrbitClass::Frozen ? "frozen"
                    : o.cls == ca::OrbitClass::CA   ? "ca"
                                                    : "quantum";
  return {{"representative", o.representative.to_string()},
          {"period", o.period},
          {"class", cls},
          {"states", states}};
}

json to_json(const ca::EvolveResult& r) {
  json out;
  json traj = json::array();
  for (const auto& s : r.trajectory) traj.push_back(s.to_string());
  switch (r.status) {
    case ca::EvolveStatus::Orbit:
      out["status"] = "orbit";
      out["orbit"] = to_json(*r.orbit);
      break;
    case ca::EvolveStatus::NonDeterministic:
      out["status"] = "non_deterministic";
      out["failure"] = to_json(*r.failure);
      out["failure_period"] = r.failure_period;
      break;
    case ca::EvolveStatus::PeriodNotFound:
      out["status"] = "period_not_found";
      break;
  }
  out["trajectory"] = traj;
  return out;
}

json to_json(const ca::Decomposition& d, bool include_states) {
  json orbits = json::array();
  for (const auto& o : d.orbits) {
    json jo = to_json(o);
    if (!include_states) jo.erase("states");
    orbits.push_back(jo);
  }
  json comps = json::array();
  for (const auto& c : d.quantum) {
    json jc{{"size", c.states.size()}};
    if (include_states) {
      json st = json::array();
      for (const auto& s : c.states) st.push_back(s.to_string());
      jc["states"] = st;
    }
    comps.push_back(jc);
  }
  return {{"sector_size", d.sector_size},
          {"frozen", d.frozen_count()},
          {"ca_orbits", d.ca_count()},
          {"quantum_touching", d.quantum_touching_count()},
          {"orbits", orbits},
          {"quantum_components", comps}};
}

json to_json(const ca::Trajectory& t) {
  json states = json::array();
  for (const auto& s : t.states) states.push_back(s.to_string());
  json out{{"states", states}, {"steps", t.steps}};
  if (t.failure) out["failure"] = to_json(*t.failure);
  return out;
}

json to_json(const dioph::HubbardPoint& p) {
  return {{"ell", int_to_json(p.ell)},
          {"n", int_to_json(p.n)},
          {"m", int_to_json(p.m)},
          {"tau", p.tau},
          {"tau_over_pi", p.tau / 3.14159265358979323846},
          {"V", p.v},
          {"parity", p.parity == dioph::Parity::Frozen ? "Frozen" : "Swap"}};
}

json to_json(const dioph::NNPoint& p) {
  json m = json::array();
  for (Int x : p.m) m.push_back(int_to_json(x));
  return {{"m", m},
          {"tau", p.tau},
          {"tau_over_pi", p.tau / 3.14159265358979323846},
          {"V", p.v},
          {"d_max", p.d_max}};
}

json to_json(const dioph::Dmax4Certificate& c) {
  return {{"w1", int_to_json(c.w1)},
          {"w2", int_to_json(c.w2)},
          {"rhs", int_to_json(c.rhs)},
          {"m3", c.m3 ? int_to_json(*c.m3) : json(nullptr)},
          {"perfect_square", c.m3.has_value()},
          {"degenerate", c.degenerate},
          {"trivial_v", c.trivial_v}};
}

json to_json(const ed::RatioStats& r) {
  return {{"mean", r.mean},
          {"count", r.ratios.size()},
          {"levels_used", r.levels_used},
          {"sectors_used", r.sectors_used}};
}

json to_json(const ed::RDistribution& d) {
  return {{"mean", d.mean}, {"count", d.count}, {"bin_edges", d.bin_edges}, {"mass", d.mass}};
}

json to_json(const ed::FragmentationReport& r) {
  json orbits = json::array();
  for (const auto& [rep, period] : r.ca_orbits) orbits.push_back({{"representative", rep}, {"period", period}});
  json out{{"n", r.n},
           {"k", r.k},
           {"V", r.v},
           {"tau", r.tau},
           {"boundary", std::string(lattice::to_string(r.boundary))},
           {"dim", r.dim},
           {"ca_frozen", r.ca_frozen},
           {"ed_frozen", r.ed_frozen},
           {"frozen_counts_agree", r.ca_frozen == r.ed_frozen},
           {"frozen_states", r.frozen_states},
           {"ca_orbits", orbits},
           {"quantum_components", r.quantum_components},
           {"block_dims", r.block_dims},
           {"mean_nonfrozen_entropy", r.mean_nonfrozen_entropy},
           {"max_frozen_entropy", r.max_frozen_entropy},
           {"half_chain_log_dim", r.half_chain_log_dim},
           {"max_residual", r.spectrum.max_residual}};
  out["ratios"] = r.ratios ? to_json(*r.ratios) : json(nullptr);
  out["coe_mean"] = r.coe_mean ? json(*r.coe_mean) : json(nullptr);
  out["poisson_mean"] = r.poisson_mean ? json(*r.poisson_mean) : json(nullptr);
  return out;
}

void write_eigen_table(std::ostream& os, const ed::QuasiSpectrum& spec) {
  os << "# format: " << kEigenTableFormat << "\n";
  os << "index,quasienergy,entropy,frozen,sector\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    os << i << ',' << round_significant(spec.quasienergies[i]) + 0.0 << ','
       << round_significant(spec.entropy[i]) + 0.0 << ',' << (spec.frozen[i] ? 1 : 0) << ','
       << spec.sector[i] << '\n';
  }
}

void write_ratio_table(std::ostream& os, const ed::RatioStats& stats) {
  os << "# format: " << kRatioTableFormat << "\n";
  os << "index,r\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < stats.ratios.size(); ++i) {
    os << i << ',' << round_significant(stats.ratios[i]) << '\n';
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace floq::io
