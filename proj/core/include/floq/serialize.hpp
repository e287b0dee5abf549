#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "floq/ca.hpp"
#include "floq/dioph.hpp"
#include "floq/ed.hpp"
#include "floq/lattice.hpp"

namespace floq::io {

using nlohmann::json;

// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
json int_to_json(Int v);
Int int_from_json(const json& j);

// Round every floating-point value to `digits` significant digits.
json round_numbers(const json& j, int digits = 12);
double round_significant(double x, int digits = 12);

json to_json(const lattice::FockState& s);
lattice::FockState state_from_json(const json& j, int num_sites, bool spinful);

json to_json(const lattice::Model& m);
lattice::Model model_from_json(const json& j);

json to_json(const pairdyn::PairAction& a);
json to_json(const ca::RuleTable& t);
json to_json(const ca::NonDeterministic& nd);
json to_json(const ca::Orbit& o);
json to_json(const ca::EvolveResult& r);
json to_json(const ca::Decomposition& d, bool include_states = false);
json to_json(const ca::Trajectory& t);

json to_json(const dioph::HubbardPoint& p);
json to_json(const dioph::NNPoint& p);
json to_json(const dioph::Dmax4Certificate& c);

json to_json(const ed::RatioStats& r);
json to_json(const ed::RDistribution& d);
json to_json(const ed::FragmentationReport& r);

inline constexpr const char* kEigenTableFormat = "floq.eigenstates/1";
inline constexpr const char* kRatioTableFormat = "floq.ratios/1";

// index,quasienergy,entropy,frozen,sector
void write_eigen_table(std::ostream& os, const ed::QuasiSpectrum& spec);
// index,r
void write_ratio_table(std::ostream& os, const ed::RatioStats& stats);

// FNV-1a 64-bit of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace floq::io
