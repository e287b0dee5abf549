#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "floq/pairdyn.hpp"

namespace floq::lattice {

enum class Boundary { Open, Periodic };
enum class ModelKind { Chain, SquareRlbl, Lieb };

std::string_view to_string(Boundary b);
std::string_view to_string(ModelKind k);
Boundary boundary_from_string(std::string_view s);
ModelKind model_from_string(std::string_view s);

struct SitePair {
  int a = 0;
  int b = 0;

  bool operator==(const SitePair&) const = default;
};

class Lattice {
 public:
  Lattice() = default;
  Lattice(std::vector<std::array<int, 2>> coords, const std::vector<SitePair>& edges);

  int num_sites() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int site) const { return adjacency_.at(site); }
  int degree(int site) const { return static_cast<int>(adjacency_.at(site).size()); }
  int max_degree() const;
  bool adjacent(int a, int b) const;
  const std::vector<SitePair>& edges() const { return edges_; }
  // Grid coordinates used for reporting and for locating sites.
  const std::array<int, 2>& coord(int site) const { return coords_.at(site); }
  // Site at grid coordinate (x, y), or -1.
  int site_at(int x, int y) const;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<SitePair> edges_;
  std::vector<std::array<int, 2>> coords_;
};

struct DriveStep {
  std::vector<SitePair> pairs;
};

struct DriveSchedule {
  std::vector<DriveStep> steps;
  // No site appears twice within a step.
  bool pairs_disjoint = false;
  // No site of an active pair is adjacent to a site of another pair active in
  // the same step, so every pair sees static neighbors during its step.
  bool neighborhoods_disjoint = false;
};

struct Model {
  ModelKind kind = ModelKind::Chain;
  Boundary boundary = Boundary::Open;
  int lx = 0;
  int ly = 0;
  bool spinful = false;
  Lattice lattice;
  DriveSchedule schedule;
};

// Even bonds (0,1),(2,3),... then odd bonds (1,2),(3,4),...; the periodic
// wrap bond (n-1, 0) joins whichever step leaves both ends free.
Model build_chain(int n, Boundary boundary);

// Square lattice, periodic, lx and ly even. Sites of the A sublattice
// (x + y even) pair with their +x, +y, -x, -y neighbor in steps 1 to 4.
Model build_square_rlbl(int lx, int ly);

// Lieb lattice of lx by ly cells. Corners sit at even grid points, edge
// centers at (odd, even) and (even, odd). The 8 steps walk counterclockwise
// around every plaquette (x, y) with x + y even.
Model build_lieb(int lx, int ly, Boundary boundary);

bool audit_pairs_disjoint(const Lattice& lattice, const DriveSchedule& schedule);
bool audit_neighborhoods_disjoint(const Lattice& lattice, const DriveSchedule& schedule);
// Every lattice edge shows up as an active pair in some step.
bool audit_covers_all_edges(const Lattice& lattice, const DriveSchedule& schedule);

// Occupancy of every site. Spinless states use only the up-channel bitset.
class FockState {
 public:
  FockState() = default;
  FockState(int num_sites, bool spinful);

  static FockState from_string(std::string_view text, bool spinful);
  // Spinless state with the given sites occupied.
  static FockState from_sites(int num_sites, const std::vector<int>& sites);
  static FockState from_mask(int num_sites, std::uint64_t mask);

  int num_sites() const { return num_sites_; }
  bool spinful() const { return spinful_; }

  bool up(int site) const { return test(up_, site); }
  bool down(int site) const { return spinful_ && test(down_, site); }
  // Spinless occupancy; for spinful states, any particle on the site.
  bool occupied(int site) const { return up(site) || down(site); }
  int occupancy(int site) const { return int(up(site)) + int(down(site)); }

  void set_up(int site, bool value);
  void set_down(int site, bool value);
  void set(int site, bool value) { set_up(site, value); }

  int particle_count() const;
  int up_count() const;
  int down_count() const;
  std::vector<int> occupied_sites() const;

  // Exchange everything on sites a and b.
  void swap_sites(int a, int b);

  // Spinless: '0'/'1' per site. Spinful: '0', 'u', 'd', '2'. Site 0 first.
  std::string to_string() const;
  std::uint64_t mask() const;  // spinless states up to 64 sites

  bool operator==(const FockState&) const = default;
  auto operator<=>(const FockState& o) const {
    if (auto c = up_ <=> o.up_; c != 0) return c;
    return down_ <=> o.down_;
  }

  std::size_t hash() const;

 private:
  static bool test(const std::vector<std::uint64_t>& w, int site) {
    return (w[static_cast<std::size_t>(site) >> 6] >> (site & 63)) & 1u;
  }
  void check_site(int site) const;

  int num_sites_ = 0;
  bool spinful_ = false;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
};

struct FockStateHash {
  std::size_t operator()(const FockState& s) const { return s.hash(); }
};

// Occupied neighbors of each pair site, the pair itself excluded.
pairdyn::NeighborContext delta_of_pair(const FockState& state, const SitePair& pair,
                                       const Lattice& lattice);

}  // namespace floq::lattice
