#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gwlc/exact_laws.hpp"
#include "gwlc/monte_carlo.hpp"
#include "gwlc/offspring.hpp"
#include "gwlc/power_series.hpp"
#include "gwlc/rational.hpp"

namespace gwlc {

/// Resolves a built-in name ("binary", "p1demo") or loads a JSON
/// descriptor file: {"probs": [["3","10"], ["4","10"], ["3","10"]]} —
/// index = out-degree, entries are [numerator, denominator] strings
/// (plain "3/10" or "0.3" strings are also accepted; decimals convert to
/// exact rationals of the literal). Criticality is not enforced here;
/// operations that need it check for themselves.
OffspringDistribution load_distribution(const std::string& name_or_path);

std::string numerator_string(const Rational& value);
std::string denominator_string(const Rational& value);
/// Round-trip-exact decimal rendering ("%.17g"), locale-independent.
std::string format_double(double value);

// Row assemblies shared by the CSV and JSON writers.

struct LeafTableRow {
  std::size_t ell = 0;
  Rational exact;
  double exact_f64 = 0.0;
  double df_form = 0.0;     // gamma_series (2ell-3)!!/(2^ell ell!)
  double power_form = 0.0;  // gamma_leaf / ell^(3/2)
  double df_ratio = 0.0;    // exact / df_form
  double power_ratio = 0.0;
};

struct VMomentRow {
  std::size_t ell = 0;
  Rational mean;
  Rational variance;
  double mean_gap_scaled = 0.0;  // |mean - ell/p0| / sqrt(ell)
  double variance_scaled = 0.0;  // variance / ell^(3/2)
};

struct TailRow {
  std::size_t ell = 0;
  double tau = 0.0;
  std::size_t cutoff = 0;
  double deficit = 0.0;
};

std::vector<LeafTableRow> build_leaf_table(LawContext& ctx, std::size_t max_ell);
VMomentRow build_vmoment_row(LawContext& ctx, std::size_t ell);
std::vector<TailRow> build_tail_rows(LawContext& ctx, const std::vector<std::size_t>& grid);

// CSV writers. Fixed headers; exact rationals fill the *_num/*_den
// columns, empty for float-only data.
std::string csv_conditional_law(const ConditionalLaw& law);
std::string csv_estimates(const McResult& result);
std::string csv_leaf_table(const std::vector<LeafTableRow>& rows);
std::string csv_vmoments(const std::vector<VMomentRow>& rows);
std::string csv_tail(const std::vector<TailRow>& rows, double limit);

// JSON mirrors of the CSV payloads.
std::string json_conditional_law(const ConditionalLaw& law);
std::string json_estimates(const McResult& result);
std::string json_leaf_table(const std::vector<LeafTableRow>& rows);
std::string json_vmoments(const std::vector<VMomentRow>& rows);
std::string json_tail(const std::vector<TailRow>& rows, double limit);

/// Series dump as a JSON array of [numerator, denominator] strings
/// (golden-file format).
std::string json_series(const PowerSeries& series);

}  // namespace gwlc
