#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "expr.hpp"
#include "floq/ca.hpp"
#include "floq/dioph.hpp"
#include "floq/ed.hpp"
#include "floq/errors.hpp"
#include "floq/lattice.hpp"
#include "floq/serialize.hpp"

namespace {

using namespace floq;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;

const std::set<std::string> kConfigKeys = {
    "model", "boundary", "n", "k", "k_down", "lx", "ly", "V", "tau", "params",
    "w1", "w2", "d", "normalize", "m0", "m1", "l_max", "w1_max", "w2_max", "deltas",
    "claimed_m3", "state", "max_periods", "steps", "seed", "samples", "bins", "out",
    "ratios_out", "include_states", "region", "disorder", "cut", "limit", "tol"};

// Effective run configuration: config file values overridden by flags.
class Config {
 public:
  explicit Config(json j) : j_(std::move(j)) {}

  const json& raw() const { return j_; }
  bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }

  Int integer(const std::string& key) const {
    require(key);
    return io::int_from_json(j_[key].is_string() ? json(j_[key]) : j_[key]);
  }
  Int integer(const std::string& key, Int fallback) const { return has(key) ? integer(key) : fallback; }
  int small(const std::string& key, int fallback) const {
    const Int v = integer(key, fallback);
    if (v < -(Int(1) << 30) || v > (Int(1) << 30)) throw InvalidInput(key + " is out of range");
    return static_cast<int>(v);
  }
  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed", 1)); }

  double scalar(const std::string& key) const {
    require(key);
    if (j_[key].is_number()) return j_[key].get<double>();
    return cli::parse_scalar(j_[key].get<std::string>());
  }
  double scalar(const std::string& key, double fallback) const { return has(key) ? scalar(key) : fallback; }

  std::string text(const std::string& key, const std::string& fallback = "") const {
    if (!has(key)) return fallback;
    return j_[key].is_string() ? j_[key].get<std::string>() : j_[key].dump();
  }
  bool flag(const std::string& key) const { return has(key) && j_[key].get<bool>(); }

  void require(const std::string& key) const {
    if (!has(key)) throw InvalidInput("missing required setting '" + key + "' (flag --" + flag_name(key) + ")");
  }

  static std::string flag_name(std::string key) {
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    return key;
  }

 private:
  json j_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

json load_config(const std::string& path) {
  json j = read_json_file(path);
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw InvalidInput("unknown config field '" + key + "'");
  }
  return j;
}

pairdyn::DriveParams drive_params(const Config& c) {
  json merged = c.raw();
  if (c.has("params")) {
    for (const auto& [key, value] : cli::split_params(c.text("params"))) {
      if (key != "V" && key != "tau") throw InvalidInput("unknown drive parameter '" + key + "'");
      // Explicit --V / --tau win over --params.
      if (!c.has(key)) merged[key] = value;
    }
  }
  const Config m(merged);
  m.require("V");
  m.require("tau");
  const double tau = m.scalar("tau");
  const double v = m.scalar("V");
  if (std::isinf(v)) return pairdyn::DriveParams::infinite(tau);
  return {v, tau, false};
}

lattice::Model build_model(const Config& c) {
  const auto kind = lattice::model_from_string(c.text("model", "chain"));
  switch (kind) {
    case lattice::ModelKind::Chain:
      return lattice::build_chain(c.small("n", 0),
                                  lattice::boundary_from_string(c.text("boundary", "open")));
    case lattice::ModelKind::Lieb:
      return lattice::build_lieb(c.small("lx", 4), c.small("ly", 4),
                                 lattice::boundary_from_string(c.text("boundary", "periodic")));
    case lattice::ModelKind::SquareRlbl:
      if (c.has("boundary") && c.text("boundary") != "periodic") {
        throw InvalidInput("the square drive is defined on a periodic lattice only");
      }
      return lattice::build_square_rlbl(c.small("lx", 4), c.small("ly", 4));
  }
  throw InvalidInput("unknown model");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(static_cast<int>(parse_int(item.substr(item.find_first_not_of(" \t")))));
  }
  return out;
}

// Region as a site list "3,4,7" or a grid box "x0:x1,y0:y1" (inclusive).
std::vector<int> region_sites(const Config& c, const lattice::Model& m) {
  if (!c.has("region")) return {};
  const json& r = c.raw()["region"];
  std::vector<int> out;
  auto box = [&](int x0, int x1, int y0, int y1) {
    for (int s = 0; s < m.lattice.num_sites(); ++s) {
      const auto& xy = m.lattice.coord(s);
      if (xy[0] >= x0 && xy[0] <= x1 && xy[1] >= y0 && xy[1] <= y1) out.push_back(s);
    }
  };
  if (r.is_array()) return r.get<std::vector<int>>();
  if (r.is_object()) {
    box(r.at("x").at(0), r.at("x").at(1), r.at("y").at(0), r.at("y").at(1));
  } else {
    const std::string text = r.get<std::string>();
    if (text.find(':') == std::string::npos) return parse_int_list(text);
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidInput("region box must read x0:x1,y0:y1");
    auto range = [](const std::string& s) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw InvalidInput("region box must read x0:x1,y0:y1");
      return std::pair<int, int>(static_cast<int>(parse_int(s.substr(0, colon))),
                                 static_cast<int>(parse_int(s.substr(colon + 1))));
    };
    const auto [x0, x1] = range(text.substr(0, comma));
    const auto [y0, y1] = range(text.substr(comma + 1));
    box(x0, x1, y0, y1);
  }
  if (out.empty()) throw InvalidInput("region contains no sites");
  return out;
}

lattice::FockState initial_state(const Config& c, const lattice::Model& m) {
  c.require("state");
  const std::string s = c.text("state");
  if (s == "empty") return lattice::FockState(m.lattice.num_sites(), m.spinful);
  if (std::ifstream(s).good()) return io::state_from_json(read_json_file(s), m.lattice.num_sites(), m.spinful);
  const json& raw = c.raw()["state"];
  return io::state_from_json(raw.is_string() ? json(s) : raw, m.lattice.num_sites(), m.spinful);
}

class Output {
 public:
  Output(std::string command, const Config& c) : command_(std::move(command)), cfg_(c) {}

  json provenance() const {
    return {{"tool", "floq"},
            {"version", FLOQ_VERSION},
            {"command", command_},
            {"config_hash", io::fnv1a_hex(cfg_.raw().dump())},
            {"seed", cfg_.seed()}};
  }

  std::string csv_header() const {
    return "# floq " + std::string(FLOQ_VERSION) + " command=" + command_ +
           " config_hash=" + io::fnv1a_hex(cfg_.raw().dump()) + " seed=" + std::to_string(cfg_.seed()) +
           "\n";
  }

  void emit(const json& result) const {
    const json doc{{"provenance", provenance()}, {"result", io::round_numbers(result, 12)}};
    const std::string text = doc.dump(2) + "\n";
    if (cfg_.has("out")) {
      std::ofstream(cfg_.text("out")) << text;
    } else {
      std::cout << text;
    }
  }

 private:
  std::string command_;
  const Config& cfg_;
};

dioph::Direction direction(const Config& c) {
  return {c.integer("w1"), c.integer("w2"), c.integer("d", 1)};
}

dioph::Coprime coprime_mode(const Config& c) {
  return c.flag("normalize") ? dioph::Coprime::Normalize : dioph::Coprime::Require;
}

int cmd_dioph(const std::string& sub, const Config& c) {
  const Output out("dioph " + sub, c);
  if (sub == "hubbard") {
    out.emit(io::to_json(dioph::hubbard_params(direction(c), coprime_mode(c))));
    return kExitOk;
  }
  if (sub == "nn3") {
    const auto m = dioph::nn_dmax3_solution(direction(c), coprime_mode(c));
    json r{{"m", {io::int_to_json(m[0]), io::int_to_json(m[1]), io::int_to_json(m[2])}}};
    try {
      auto p = dioph::nn_params(m[0], m[1]);
      p.m = {m[0], m[1], m[2]};
      p.d_max = 3;
      r = io::to_json(p);
    } catch (const Error& e) {
      r["error"] = e.what();
      out.emit(r);
      std::cerr << "floq: " << e.what() << "\n";
      return kExitUsage;
    }
    out.emit(r);
    return kExitOk;
  }
  if (sub == "tower") {
    const Int m0 = c.integer("m0"), m1 = c.integer("m1");
    const Int l_max = c.integer("l_max", 4);
    json entries = json::array();
    for (Int l = 2; l <= l_max; ++l) {
      const auto ml = dioph::nn_tower_extend(m0, m1, l);
      entries.push_back({{"l", io::int_to_json(l)},
                         {"rhs", io::int_to_json(dioph::nn_tower_rhs(m0, m1, l))},
                         {"m", ml ? io::int_to_json(*ml) : json(nullptr)}});
    }
    out.emit({{"m0", io::int_to_json(m0)}, {"m1", io::int_to_json(m1)}, {"tower", entries}});
    return kExitOk;
  }
  if (sub == "dmax4-cert") {
    const auto cert = dioph::dmax4_certificate(c.integer("w1"), c.integer("w2"));
    json r = io::to_json(cert);
    if (c.has("claimed_m3")) {
      const Int claim = c.integer("claimed_m3");
      r["claimed_m3"] = io::int_to_json(claim);
      r["claim_holds"] = mul_checked(claim, claim) == cert.rhs;
      r["claim_square_minus_rhs"] = io::int_to_json(mul_checked(claim, claim) - cert.rhs);
    }
    out.emit(r);
    return kExitOk;
  }
  if (sub == "dmax4-search") {
    const Int w1_max = c.integer("w1_max", 10), w2_max = c.integer("w2_max", 20000);
    const auto found = dioph::search_dmax4(w1_max, w2_max);
    json all = json::array(), kept = json::array();
    for (const auto& f : found) all.push_back(io::to_json(f));
    for (const auto& f : dioph::non_degenerate(found)) kept.push_back(io::to_json(f));
    // The (3, 9471) point with m3 = 4305592257 is checked whatever the bounds.
    const Int claim = parse_int("4305592257");
    const auto spot = dioph::dmax4_certificate(3, 9471);
    json check = io::to_json(spot);
    check["claimed_m3"] = io::int_to_json(claim);
    check["claim_holds"] = claim * claim == spot.rhs;
    check["claim_square_minus_rhs"] = io::int_to_json(claim * claim - spot.rhs);
    out.emit({{"w1_max", io::int_to_json(w1_max)},
              {"w2_max", io::int_to_json(w2_max)},
              {"certified", all},
              {"non_degenerate", kept},
              {"spot_check", check}});
    return kExitOk;
  }
  if (sub == "general") {
    c.require("deltas");
    const auto d = parse_int_list(c.text("deltas"));
    if (d.size() != 3) throw InvalidInput("--deltas needs three values, e.g. 0,1,2");
    const std::array<Int, 3> deltas{d[0], d[1], d[2]};
    const auto m = dioph::general_nn_solution(deltas, direction(c), coprime_mode(c));
    const auto form = dioph::nn_imbalance_form(deltas);
    out.emit({{"deltas", d},
              {"form", {io::int_to_json(form.a), io::int_to_json(form.b), io::int_to_json(form.c)}},
              {"m", {io::int_to_json(m[0]), io::int_to_json(m[1]), io::int_to_json(m[2])}},
              {"identity_holds", dioph::satisfies_imbalance_identity(deltas, m)}});
    return kExitOk;
  }
  throw InvalidInput("unknown dioph subcommand '" + sub + "'");
}

int cmd_ca(const std::string& sub, const Config& c) {
  const Output out("ca " + sub, c);
  const lattice::Model model = build_model(c);
  if (sub == "model") {
    out.emit(io::to_json(model));
    return kExitOk;
  }
  const ca::RuleTable rules = ca::make_rule_table(model, drive_params(c), c.scalar("tol", pairdyn::kDefaultTol));
  const ca::Sector sector{c.small("k", 0), c.small("k_down", 0)};
  const auto limit = static_cast<std::uint64_t>(c.integer("limit", ca::kDefaultStateLimit));
  if (sub == "evolve") {
    const auto r = ca::evolve_periods(initial_state(c, model), rules, model,
                                      c.small("max_periods", ca::kDefaultMaxPeriods));
    out.emit({{"rules", io::to_json(rules)}, {"evolution", io::to_json(r)}});
    return kExitOk;
  }
  if (sub == "frozen") {
    const auto frozen = ca::enumerate_frozen(model, rules, sector, region_sites(c, model), limit);
    json states = json::array();
    std::vector<std::string> sorted;
    for (const auto& s : frozen) sorted.push_back(s.to_string());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& s : sorted) states.push_back(s);
    out.emit({{"rules", io::to_json(rules)}, {"count", frozen.size()}, {"frozen", states}});
    return kExitOk;
  }
  if (sub == "decompose") {
    ca::DecomposeOptions opt;
    opt.region = region_sites(c, model);
    opt.limit = limit;
    const auto d = ca::krylov_decompose(model, rules, sector, opt);
    out.emit({{"rules", io::to_json(rules)}, {"decomposition", io::to_json(d, c.flag("include_states"))}});
    return kExitOk;
  }
  if (sub == "random") {
    const auto t = ca::random_drive_evolve(initial_state(c, model), rules, model, c.seed(),
                                           c.small("steps", 100));
    out.emit({{"rules", io::to_json(rules)}, {"trajectory", io::to_json(t)}});
    return kExitOk;
  }
  throw InvalidInput("unknown ca subcommand '" + sub + "'");
}

int cmd_ed(const Config& c) {
  const Output out("ed run", c);
  const int n = c.small("n", 0), k = c.small("k", 0);
  const auto p = drive_params(Config([&] {
    json j = c.raw();
    if (!c.has("V") && !c.has("params")) j["V"] = "sqrt(12)";
    if (!c.has("tau") && !c.has("params")) j["tau"] = "pi/2";
    return j;
  }()));
  if (p.v_infinite) throw InvalidInput("exact diagonalization needs a finite V");
  const auto boundary = lattice::boundary_from_string(c.text("boundary", "open"));
  const ed::SectorBasis basis(n, k, static_cast<std::uint64_t>(c.integer("limit", ed::kDefaultBasisLimit)));
  std::optional<ed::Disorder> disorder;
  if (c.has("disorder")) disorder = ed::Disorder{c.scalar("disorder"), c.seed()};
  const ed::FloquetOperator u(basis, p.v, p.tau, boundary, disorder);
  ed::QuasiOptions opt;
  opt.cut = c.small("cut", -1);
  const ed::QuasiSpectrum spec = ed::quasispectrum(u, opt);

  std::optional<ed::RatioStats> ratios;
  try {
    ratios = ed::spacing_ratios(spec);
  } catch (const TooFewLevels&) {
  }

  if (c.has("ratios_out")) {
    std::ofstream f(c.text("ratios_out"));
    f << out.csv_header();
    if (ratios) {
      io::write_ratio_table(f, *ratios);
    } else {
      io::write_ratio_table(f, ed::RatioStats{});
    }
  }
  if (!c.has("out")) {
    std::cout << out.csv_header();
    io::write_eigen_table(std::cout, spec);
    return kExitOk;
  }
  {
    std::ofstream f(c.text("out"));
    f << out.csv_header();
    io::write_eigen_table(f, spec);
  }
  std::size_t frozen = 0;
  for (char f : spec.frozen) frozen += f ? 1 : 0;
  json summary{{"provenance", out.provenance()},
               {"result",
                io::round_numbers(json{{"n", n},
                                       {"k", k},
                                       {"V", p.v},
                                       {"tau", p.tau},
                                       {"boundary", lattice::to_string(boundary)},
                                       {"dim", basis.size()},
                                       {"frozen", frozen},
                                       {"block_dims", spec.block_dims},
                                       {"max_residual", spec.max_residual},
                                       {"ratios", ratios ? io::to_json(*ratios) : json(nullptr)},
                                       {"table", c.text("out")}})}};
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const Config& c) {
  const Output out("report", c);
  const auto p = drive_params(c);
  if (p.v_infinite) throw InvalidInput("the report needs a finite V");
  ed::ReportOptions opt;
  opt.boundary = lattice::boundary_from_string(c.text("boundary", "open"));
  opt.reference_samples = c.small("samples", 0);
  opt.seed = c.seed();
  const int n = c.small("n", 12);
  const auto r = ed::fragmentation_report(n, c.small("k", n / 2), p.v, p.tau, opt);
  out.emit(io::to_json(r));
  return kExitOk;
}

// Flag values captured as text and turned into config entries when given.
struct Bindings {
  std::vector<std::tuple<CLI::Option*, std::string, std::shared_ptr<std::string>>> values;
  std::vector<std::pair<std::string, std::shared_ptr<bool>>> flags;

  void value(CLI::App* app, const std::string& key, const std::string& help, const std::string& flag = "") {
    auto holder = std::make_shared<std::string>();
    CLI::Option* o = app->add_option(flag.empty() ? "--" + Config::flag_name(key) : flag, *holder, help);
    values.emplace_back(o, key, holder);
  }
  void toggle(CLI::App* app, const std::string& key, const std::string& help) {
    auto holder = std::make_shared<bool>(false);
    app->add_flag("--" + Config::flag_name(key), *holder, help);
    flags.emplace_back(key, holder);
  }
  void apply(json& j) const {
    for (const auto& [opt, key, holder] : values) {
      if (opt->count() > 0) j[key] = *holder;
    }
    for (const auto& [key, holder] : flags) {
      if (*holder) j[key] = true;
    }
  }
};

void drive_options(Bindings& b, CLI::App* app) {
  b.value(app, "params", "drive point, e.g. \"V=sqrt(12),tau=pi/2\"");
  b.value(app, "V", "interaction strength (symbolic allowed, or inf)", "--V");
  b.value(app, "tau", "step duration (symbolic allowed)", "--tau");
}

void model_options(Bindings& b, CLI::App* app) {
  b.value(app, "model", "chain, lieb or square");
  b.value(app, "n", "chain length");
  b.value(app, "lx", "cells along x (lieb, square)");
  b.value(app, "ly", "cells along y (lieb, square)");
  b.value(app, "boundary", "open or periodic");
  b.value(app, "tol", "classifier tolerance");
}

void sector_options(Bindings& b, CLI::App* app) {
  b.value(app, "k", "particles (spin up for the square model)");
  b.value(app, "k_down", "spin-down particles (square model)");
  b.value(app, "region", "sites \"1,2,5\" or grid box \"x0:x1,y0:y1\"");
  b.value(app, "limit", "largest sector to enumerate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exactly solvable Floquet points, cellular-automaton dynamics and fragmentation diagnostics"};
  app.set_version_flag("--version", FLOQ_VERSION);
  app.require_subcommand(1);
  std::string config_path;
  Bindings b;
  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "JSON run configuration; flags override its fields");
    b.value(s, "seed", "random seed");
    b.value(s, "out", "output path (JSON, or CSV for ed run)");
  };

  CLI::App* dioph = app.add_subcommand("dioph", "integer solutions and the drive points they give");
  dioph->require_subcommand(1);
  std::string dioph_sub;
  for (const char* name : {"hubbard", "nn3", "tower", "dmax4-search", "dmax4-cert", "general"}) {
    CLI::App* s = dioph->add_subcommand(name);
    common(s);
    s->callback([&dioph_sub, name] { dioph_sub = name; });
  }
  auto* hub = dioph->get_subcommand("hubbard");
  auto* nn3 = dioph->get_subcommand("nn3");
  auto* gen = dioph->get_subcommand("general");
  for (CLI::App* s : {hub, nn3, gen}) {
    b.value(s, "w1", "direction numerator");
    b.value(s, "w2", "direction denominator");
    b.value(s, "d", "overall scale (default 1)");
    b.toggle(s, "normalize", "divide out gcd(w1, w2) instead of rejecting");
  }
  hub->description("Hubbard two-site family");
  nn3->description("nearest-neighbor family for lattice degree up to 3");
  gen->description("nearest-neighbor solution for three chosen imbalances");
  b.value(gen, "deltas", "three imbalances, e.g. 0,1,3");
  auto* tower = dioph->get_subcommand("tower");
  tower->description("extend (m0, m1) to higher imbalances");
  b.value(tower, "m0", "first tower entry");
  b.value(tower, "m1", "second tower entry");
  b.value(tower, "l_max", "largest imbalance (default 4)");
  auto* search = dioph->get_subcommand("dmax4-search");
  search->description("exhaustive search for degree-4 points");
  b.value(search, "w1_max", "largest w1 (default 10)");
  b.value(search, "w2_max", "largest w2 (default 20000)");
  auto* cert = dioph->get_subcommand("dmax4-cert");
  cert->description("certificate for one (w1, w2)");
  b.value(cert, "w1", "direction numerator");
  b.value(cert, "w2", "direction denominator");
  b.value(cert, "claimed_m3", "value to check against the exact square root");

  CLI::App* ca_cmd = app.add_subcommand("ca", "deterministic cellular-automaton evolution");
  ca_cmd->require_subcommand(1);
  std::string ca_sub;
  for (const char* name : {"evolve", "frozen", "decompose", "random", "model"}) {
    CLI::App* s = ca_cmd->add_subcommand(name);
    common(s);
    s->callback([&ca_sub, name] { ca_sub = name; });
    model_options(b, s);
    if (std::string(name) != "model") drive_options(b, s);
  }
  ca_cmd->get_subcommand("evolve")->description("evolve a Fock state to its orbit");
  ca_cmd->get_subcommand("frozen")->description("list frozen states of a sector");
  ca_cmd->get_subcommand("decompose")->description("split a sector into orbits and quantum components");
  ca_cmd->get_subcommand("random")->description("apply randomly chosen drive steps");
  ca_cmd->get_subcommand("model")->description("print the lattice and drive schedule");
  for (const char* name : {"evolve", "random"}) {
    b.value(ca_cmd->get_subcommand(name), "state", "bitstring, 'empty', or a JSON file");
  }
  b.value(ca_cmd->get_subcommand("evolve"), "max_periods", "orbit search horizon");
  b.value(ca_cmd->get_subcommand("random"), "steps", "number of random steps");
  sector_options(b, ca_cmd->get_subcommand("frozen"));
  sector_options(b, ca_cmd->get_subcommand("decompose"));
  b.toggle(ca_cmd->get_subcommand("decompose"), "include_states", "list every state of every orbit");

  CLI::App* ed_cmd = app.add_subcommand("ed", "exact diagonalization of the driven chain");
  ed_cmd->require_subcommand(1);
  CLI::App* ed_run = ed_cmd->add_subcommand("run", "eigenstate table and spacing ratios");
  common(ed_run);
  b.value(ed_run, "n", "chain length");
  b.value(ed_run, "k", "particles");
  b.value(ed_run, "boundary", "open or periodic");
  drive_options(b, ed_run);
  b.value(ed_run, "ratios_out", "CSV path for the spacing ratios");
  b.value(ed_run, "disorder", "on-site disorder strength");
  b.value(ed_run, "cut", "entanglement cut (default n/2)");
  b.value(ed_run, "limit", "largest sector to build");

  CLI::App* report = app.add_subcommand("report", "frozen census, entropies and level statistics");
  common(report);
  b.value(report, "n", "chain length (default 12)");
  b.value(report, "k", "particles (default n/2)");
  b.value(report, "boundary", "open or periodic");
  b.value(report, "samples", "reference ensemble samples (0 skips them)");
  drive_options(b, report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    json j = config_path.empty() ? json::object() : load_config(config_path);
    b.apply(j);
    const Config cfg(j);
    if (dioph->parsed()) return cmd_dioph(dioph_sub, cfg);
    if (ca_cmd->parsed()) return cmd_ca(ca_sub, cfg);
    if (ed_cmd->parsed()) return cmd_ed(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const SectorTooLarge& e) {
    std::cerr << "floq: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    std::cerr << "floq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "floq: bad setting: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "floq: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
