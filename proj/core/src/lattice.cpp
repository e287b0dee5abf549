#include "floq/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "floq/errors.hpp"

namespace floq::lattice {

std::string_view to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Chain: return "chain";
    case ModelKind::SquareRlbl: return "square";
    case ModelKind::Lieb: return "lieb";
  }
  return "?";
}

Boundary boundary_from_string(std::string_view s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw InvalidInput("unknown boundary '" + std::string(s) + "' (expected open or periodic)");
}

ModelKind model_from_string(std::string_view s) {
  if (s == "chain") return ModelKind::Chain;
  if (s == "square" || s == "hubbard") return ModelKind::SquareRlbl;
  if (s == "lieb") return ModelKind::Lieb;
  throw InvalidInput("unknown model '" + std::string(s) + "' (expected chain, square or lieb)");
}

Lattice::Lattice(std::vector<std::array<int, 2>> coords, const std::vector<SitePair>& edges)
    : adjacency_(coords.size()), coords_(std::move(coords)) {
  std::set<std::pair<int, int>> seen;
  for (const SitePair& e : edges) {
    if (e.a == e.b || e.a < 0 || e.b < 0 || e.a >= num_sites() || e.b >= num_sites()) {
      throw InvalidInput("invalid lattice edge");
    }
    const auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second) continue;
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
    edges_.push_back(SitePair{key.first, key.second});
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int Lattice::max_degree() const {
  int d = 0;
  for (const auto& nbrs : adjacency_) d = std::max(d, static_cast<int>(nbrs.size()));
  return d;
}

bool Lattice::adjacent(int a, int b) const {
  const auto& nbrs = adjacency_.at(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

int Lattice::site_at(int x, int y) const {
  for (int s = 0; s < num_sites(); ++s) {
    if (coords_[s][0] == x && coords_[s][1] == y) return s;
  }
  return -1;
}

namespace {

void finish(Model& m) {
  m.schedule.pairs_disjoint = audit_pairs_disjoint(m.lattice, m.schedule);
  m.schedule.neighborhoods_disjoint = audit_neighborhoods_disjoint(m.lattice, m.schedule);
  if (!m.schedule.pairs_disjoint) throw Error("internal: drive step reuses a site");
  for (const auto& step : m.schedule.steps) {
    for (const auto& p : step.pairs) {
      if (!m.lattice.adjacent(p.a, p.b)) throw Error("internal: activated pair is not an edge");
    }
  }
}

}  // namespace

Model build_chain(int n, Boundary boundary) {
  if (n < 2) throw InvalidInput("chain needs at least 2 sites");
  if (boundary == Boundary::Periodic && (n % 2 != 0 || n < 4)) {
    throw InvalidInput("periodic chain needs an even number of sites >= 4");
  }
  Model m;
  m.kind = ModelKind::Chain;
  m.boundary = boundary;
  m.lx = n;
  m.ly = 1;
  std::vector<std::array<int, 2>> coords;
  std::vector<SitePair> edges;
  for (int i = 0; i < n; ++i) coords.push_back({i, 0});
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  if (boundary == Boundary::Periodic) edges.push_back({n - 1, 0});
  m.lattice = Lattice(std::move(coords), edges);

  DriveStep even, odd;
  for (int i = 0; i + 1 < n; i += 2) even.pairs.push_back({i, i + 1});
  for (int i = 1; i + 1 < n; i += 2) odd.pairs.push_back({i, i + 1});
  if (boundary == Boundary::Periodic) odd.pairs.push_back({n - 1, 0});
  m.schedule.steps = {even, odd};
  finish(m);
  return m;
}

Model build_square_rlbl(int lx, int ly) {
  if (lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0) {
    throw InvalidInput("square lattice dimensions must be even and >= 2");
  }
  Model m;
  m.kind = ModelKind::SquareRlbl;
  m.boundary = Boundary::Periodic;
  m.lx = lx;
  m.ly = ly;
  m.spinful = true;
  auto idx = [&](int x, int y) { return ((y + ly) % ly) * lx + ((x + lx) % lx); };
  std::vector<std::array<int, 2>> coords;
  std::vector<SitePair> edges;
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      coords.push_back({x, y});
      edges.push_back({idx(x, y), idx(x + 1, y)});
      edges.push_back({idx(x, y), idx(x, y + 1)});
    }
  }
  m.lattice = Lattice(std::move(coords), edges);

  const std::array<std::array<int, 2>, 4> moves{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  for (const auto& mv : moves) {
    DriveStep step;
    for (int y = 0; y < ly; ++y) {
      for (int x = 0; x < lx; ++x) {
        if ((x + y) % 2 != 0) continue;
        step.pairs.push_back({idx(x, y), idx(x + mv[0], y + mv[1])});
      }
    }
    m.schedule.steps.push_back(std::move(step));
  }
  finish(m);
  return m;
}

Model build_lieb(int lx, int ly, Boundary boundary) {
  if (lx < 1 || ly < 1) throw InvalidInput("Lieb lattice needs at least one cell per direction");
  const bool periodic = boundary == Boundary::Periodic;
  if (periodic && (lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0)) {
    throw InvalidInput("periodic Lieb lattice needs even cell counts >= 2");
  }
  Model m;
  m.kind = ModelKind::Lieb;
  m.boundary = boundary;
  m.lx = lx;
  m.ly = ly;

  const int gw = periodic ? 2 * lx : 2 * lx + 1;
  const int gh = periodic ? 2 * ly : 2 * ly + 1;
  std::vector<int> grid(static_cast<std::size_t>(gw * gh), -1);
  std::vector<std::array<int, 2>> coords;
  for (int gy = 0; gy < gh; ++gy) {
    for (int gx = 0; gx < gw; ++gx) {
      if (gx % 2 == 1 && gy % 2 == 1) continue;
      grid[gy * gw + gx] = static_cast<int>(coords.size());
      coords.push_back({gx, gy});
    }
  }
  auto site = [&](int gx, int gy) -> int {
    if (periodic) {
      gx = ((gx % gw) + gw) % gw;
      gy = ((gy % gh) + gh) % gh;
    } else if (gx < 0 || gy < 0 || gx >= gw || gy >= gh) {
      return -1;
    }
    return grid[gy * gw + gx];
  };

  std::vector<SitePair> edges;
  for (const auto& c : coords) {
    const int s = site(c[0], c[1]);
    for (const auto& [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
      const int t = site(c[0] + dx, c[1] + dy);
      if (t >= 0) edges.push_back({s, t});
    }
  }
  m.lattice = Lattice(std::move(coords), edges);

  // Counterclockwise boundary walk of plaquette (x, y) in grid units, starting
  // at its lower-left corner.
  const std::array<std::array<int, 4>, 8> walk{{
      {0, 0, 1, 0}, {1, 0, 2, 0}, {2, 0, 2, 1}, {2, 1, 2, 2},
      {2, 2, 1, 2}, {1, 2, 0, 2}, {0, 2, 0, 1}, {0, 1, 0, 0},
  }};
  const int px_lo = periodic ? 0 : -1;
  const int px_hi = periodic ? lx - 1 : lx;
  const int py_lo = periodic ? 0 : -1;
  const int py_hi = periodic ? ly - 1 : ly;
  for (const auto& w : walk) {
    DriveStep step;
    for (int py = py_lo; py <= py_hi; ++py) {
      for (int px = px_lo; px <= px_hi; ++px) {
        if (((px + py) % 2 + 2) % 2 != 0) continue;
        const int a = site(2 * px + w[0], 2 * py + w[1]);
        const int b = site(2 * px + w[2], 2 * py + w[3]);
        if (a >= 0 && b >= 0) step.pairs.push_back({a, b});
      }
    }
    m.schedule.steps.push_back(std::move(step));
  }
  finish(m);
  return m;
}

bool audit_pairs_disjoint(const Lattice& lattice, const DriveSchedule& schedule) {
  for (const auto& step : schedule.steps) {
    std::vector<char> used(static_cast<std::size_t>(lattice.num_sites()), 0);
    for (const auto& p : step.pairs) {
      if (used[p.a] || used[p.b] || p.a == p.b) return false;
      used[p.a] = used[p.b] = 1;
    }
  }
  return true;
}

bool audit_neighborhoods_disjoint(const Lattice& lattice, const DriveSchedule& schedule) {
  for (const auto& step : schedule.steps) {
    std::vector<int> owner(static_cast<std::size_t>(lattice.num_sites()), -1);
    for (std::size_t i = 0; i < step.pairs.size(); ++i) {
      owner[step.pairs[i].a] = owner[step.pairs[i].b] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < step.pairs.size(); ++i) {
      for (int s : {step.pairs[i].a, step.pairs[i].b}) {
        for (int nb : lattice.neighbors(s)) {
          if (owner[nb] >= 0 && owner[nb] != static_cast<int>(i)) return false;
        }
      }
    }
  }
  return true;
}

bool audit_covers_all_edges(const Lattice& lattice, const DriveSchedule& schedule) {
  std::set<std::pair<int, int>> active;
  for (const auto& step : schedule.steps) {
    for (const auto& p : step.pairs) active.insert(std::minmax(p.a, p.b));
  }
  for (const auto& e : lattice.edges()) {
    if (!active.count(std::minmax(e.a, e.b))) return false;
  }
  return true;
}

FockState::FockState(int num_sites, bool spinful)
    : num_sites_(num_sites),
      spinful_(spinful),
      up_(static_cast<std::size_t>((num_sites + 63) / 64), 0),
      down_(spinful ? static_cast<std::size_t>((num_sites + 63) / 64) : 0, 0) {
  if (num_sites < 0) throw InvalidInput("negative site count");
}

FockState FockState::from_string(std::string_view text, bool spinful) {
  FockState s(static_cast<int>(text.size()), spinful);
  for (int i = 0; i < s.num_sites_; ++i) {
    const char c = text[i];
    if (!spinful) {
      if (c != '0' && c != '1') throw InvalidInput("spinless state uses only '0' and '1'");
      s.set_up(i, c == '1');
    } else {
      if (c != '0' && c != 'u' && c != 'd' && c != '2') {
        throw InvalidInput("spinful state uses only '0', 'u', 'd', '2'");
      }
      s.set_up(i, c == 'u' || c == '2');
      s.set_down(i, c == 'd' || c == '2');
    }
  }
  return s;
}

FockState FockState::from_sites(int num_sites, const std::vector<int>& sites) {
  FockState s(num_sites, false);
  for (int site : sites) s.set_up(site, true);
  return s;
}

FockState FockState::from_mask(int num_sites, std::uint64_t mask) {
  if (num_sites > 64) throw InvalidInput("mask form holds at most 64 sites");
  FockState s(num_sites, false);
  if (num_sites > 0) s.up_[0] = mask;
  return s;
}

void FockState::check_site(int site) const {
  if (site < 0 || site >= num_sites_) throw InvalidInput("site index out of range");
}

void FockState::set_up(int site, bool value) {
  check_site(site);
  const std::uint64_t bit = std::uint64_t{1} << (site & 63);
  auto& w = up_[static_cast<std::size_t>(site) >> 6];
  w = value ? (w | bit) : (w & ~bit);
}

void FockState::set_down(int site, bool value) {
  check_site(site);
  if (!spinful_) throw InvalidInput("spinless state has no down channel");
  const std::uint64_t bit = std::uint64_t{1} << (site & 63);
  auto& w = down_[static_cast<std::size_t>(site) >> 6];
  w = value ? (w | bit) : (w & ~bit);
}

int FockState::up_count() const {
  int n = 0;
  for (auto w : up_) n += std::popcount(w);
  return n;
}

int FockState::down_count() const {
  int n = 0;
  for (auto w : down_) n += std::popcount(w);
  return n;
}

int FockState::particle_count() const { return up_count() + down_count(); }

std::vector<int> FockState::occupied_sites() const {
  std::vector<int> out;
  for (int i = 0; i < num_sites_; ++i) {
    if (occupied(i)) out.push_back(i);
  }
  return out;
}

void FockState::swap_sites(int a, int b) {
  const bool ua = up(a), ub = up(b);
  set_up(a, ub);
  set_up(b, ua);
  if (spinful_) {
    const bool da = down(a), db = down(b);
    set_down(a, db);
    set_down(b, da);
  }
}

std::string FockState::to_string() const {
  std::string out(static_cast<std::size_t>(num_sites_), '0');
  for (int i = 0; i < num_sites_; ++i) {
    if (!spinful_) {
      out[i] = up(i) ? '1' : '0';
    } else {
      const bool u = up(i), d = down(i);
      out[i] = u && d ? '2' : u ? 'u' : d ? 'd' : '0';
    }
  }
  return out;
}

std::uint64_t FockState::mask() const {
  if (num_sites_ > 64 || spinful_) throw InvalidInput("mask form needs a spinless state of <= 64 sites");
  return num_sites_ == 0 ? 0 : up_[0];
}

std::size_t FockState::hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t w) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (auto w : up_) mix(w);
  for (auto w : down_) mix(w);
  return static_cast<std::size_t>(h);
}

pairdyn::NeighborContext delta_of_pair(const FockState& state, const SitePair& pair,
                                       const Lattice& lattice) {
  if (pair.a == pair.b) throw InvalidInput("pair sites must differ");
  auto count = [&](int site) {
    int n = 0;
    for (int nb : lattice.neighbors(site)) {
      if (nb == pair.a || nb == pair.b) continue;
      n += state.occupancy(nb);
    }
    return n;
  };
  return pairdyn::NeighborContext{count(pair.a), count(pair.b)};
}

}  // namespace floq::lattice
