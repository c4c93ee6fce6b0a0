#include "gwlc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwlc/errors.hpp"

namespace gwlc {

namespace {

Rational parse_prob_entry(const nlohmann::json& entry) {
  if (entry.is_array()) {
    if (entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string()) {
      raise(errc::invalid_argument,
            "probability entries must be [\"numerator\", \"denominator\"] string pairs");
    }
    return parse_rational(entry[0].get<std::string>() + "/" + entry[1].get<std::string>());
  }
  if (entry.is_string()) return parse_rational(entry.get<std::string>());
  if (entry.is_number_integer()) return Rational(entry.get<long long>());
  raise(errc::invalid_argument,
        "probability entries must be exact strings or [num, den] pairs, not floats");
}

}  // namespace

OffspringDistribution load_distribution(const std::string& name_or_path) {
  if (name_or_path == "binary") return OffspringDistribution::binary();
  if (name_or_path == "p1demo") return OffspringDistribution::p1demo();

  std::ifstream in(name_or_path);
  if (!in) {
    raise(errc::invalid_argument, "cannot open distribution file: " + name_or_path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::invalid_argument, "bad JSON in " + name_or_path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("probs") || !doc["probs"].is_array()) {
    raise(errc::invalid_argument, "distribution file needs a \"probs\" array");
  }
  std::vector<Rational> probs;
  for (const auto& entry : doc["probs"]) probs.push_back(parse_prob_entry(entry));
  return validate_offspring(probs, /*require_critical=*/false);
}

std::string numerator_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str();
}

std::string denominator_string(const Rational& value) {
  return boost::multiprecision::denominator(value).str();
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<LeafTableRow> build_leaf_table(LawContext& ctx, std::size_t max_ell) {
  std::vector<LeafTableRow> rows;
  rows.reserve(max_ell);
  for (std::size_t ell = 1; ell <= max_ell; ++ell) {
    LeafTableRow row;
    row.ell = ell;
    row.exact = ctx.leaf_law(ell);
    row.exact_f64 = to_double(row.exact);
    auto [df, pl] = ctx.leaf_law_asymptotic(ell);
    row.df_form = df;
    row.power_form = pl;
    row.df_ratio = df > 0.0 ? row.exact_f64 / df : 0.0;
    row.power_ratio = pl > 0.0 ? row.exact_f64 / pl : 0.0;
    rows.push_back(row);
  }
  return rows;
}

VMomentRow build_vmoment_row(LawContext& ctx, std::size_t ell) {
  VMoments m = ctx.v_conditional_moments(ell);
  VMomentRow row;
  row.ell = ell;
  row.mean = m.mean;
  row.variance = m.variance;
  Rational gap = m.mean - Rational(ell) / ctx.dist().prob(0);
  if (gap < 0) gap = -gap;
  double l = static_cast<double>(ell);
  row.mean_gap_scaled = to_double(gap) / std::sqrt(l);
  row.variance_scaled = to_double(m.variance) / std::pow(l, 1.5);
  return row;
}

std::vector<TailRow> build_tail_rows(LawContext& ctx, const std::vector<std::size_t>& grid) {
  std::vector<TailRow> rows;
  rows.reserve(grid.size());
  for (std::size_t ell : grid) {
    TailRow row;
    row.ell = ell;
    double ln = std::log(static_cast<double>(ell));
    row.tau = std::sqrt(static_cast<double>(ell)) / (ln * ln);
    row.cutoff = row.tau < 1.0 ? 0 : static_cast<std::size_t>(row.tau);
    row.deficit = ctx.tail_deficit(ell);
    rows.push_back(row);
  }
  return rows;
}

std::string csv_conditional_law(const ConditionalLaw& law) {
  std::ostringstream out;
  out << "ell,t,mass_num,mass_den,mass_float\n";
  for (std::size_t t = 1; t <= law.ell; ++t) {
    out << law.ell << ',' << t << ',';
    if (law.exact) {
      out << numerator_string(law.mass(t)) << ',' << denominator_string(law.mass(t));
    } else {
      out << ',';
    }
    out << ',' << format_double(law.mass_f64(t)) << '\n';
  }
  return out.str();
}

std::string csv_estimates(const McResult& result) {
  std::ostringstream out;
  out << "ell,t,point,stderr,accepted,trials,overflowed,seed\n";
  for (const ConditionalEstimate& e : result.estimates) {
    out << e.ell << ',' << e.t << ',' << format_double(e.point) << ','
        << format_double(e.std_err) << ',' << e.accepted << ',' << e.trials << ','
        << e.overflowed << ',' << e.seed << '\n';
  }
  return out.str();
}

std::string csv_leaf_table(const std::vector<LeafTableRow>& rows) {
  std::ostringstream out;
  out << "ell,mass_num,mass_den,mass_float,df_form,power_form,df_ratio,power_ratio\n";
  for (const LeafTableRow& r : rows) {
    out << r.ell << ',' << numerator_string(r.exact) << ',' << denominator_string(r.exact)
        << ',' << format_double(r.exact_f64) << ',' << format_double(r.df_form) << ','
        << format_double(r.power_form) << ',' << format_double(r.df_ratio) << ','
        << format_double(r.power_ratio) << '\n';
  }
  return out.str();
}

std::string csv_vmoments(const std::vector<VMomentRow>& rows) {
  std::ostringstream out;
  out << "ell,mean_num,mean_den,mean_float,variance_num,variance_den,variance_float,"
         "mean_gap_scaled,variance_scaled\n";
  for (const VMomentRow& r : rows) {
    out << r.ell << ',' << numerator_string(r.mean) << ',' << denominator_string(r.mean)
        << ',' << format_double(to_double(r.mean)) << ',' << numerator_string(r.variance)
        << ',' << denominator_string(r.variance) << ','
        << format_double(to_double(r.variance)) << ',' << format_double(r.mean_gap_scaled)
        << ',' << format_double(r.variance_scaled) << '\n';
  }
  return out.str();
}

std::string csv_tail(const std::vector<TailRow>& rows, double limit) {
  std::ostringstream out;
  out << "ell,tau,cutoff,deficit,limit\n";
  for (const TailRow& r : rows) {
    out << r.ell << ',' << format_double(r.tau) << ',' << r.cutoff << ','
        << format_double(r.deficit) << ',' << format_double(limit) << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json law_entry_json(const ConditionalLaw& law, std::size_t t) {
  nlohmann::json entry;
  entry["t"] = t;
  if (law.exact) {
    entry["num"] = numerator_string(law.mass(t));
    entry["den"] = denominator_string(law.mass(t));
  }
  entry["float"] = law.mass_f64(t);
  return entry;
}

}  // namespace

std::string json_conditional_law(const ConditionalLaw& law) {
  nlohmann::json doc;
  doc["ell"] = law.ell;
  doc["kind"] = law_kind_name(law.kind);
  doc["exact"] = law.exact;
  doc["masses"] = nlohmann::json::array();
  for (std::size_t t = 1; t <= law.ell; ++t) doc["masses"].push_back(law_entry_json(law, t));
  if (law.exact) {
    doc["residual_num"] = numerator_string(law.residual);
    doc["residual_den"] = denominator_string(law.residual);
  }
  doc["residual_float"] = law.residual_f64;
  if (law.residual_flagged) doc["residual_flagged"] = true;
  return doc.dump(2) + "\n";
}

std::string json_estimates(const McResult& result) {
  nlohmann::json doc;
  doc["ell"] = result.ell;
  doc["kind"] = law_kind_name(LawKind::monte_carlo);
  doc["seed"] = result.seed;
  doc["accepted"] = result.accepted;
  doc["trials"] = result.trials;
  doc["overflowed"] = result.overflowed;
  doc["estimates"] = nlohmann::json::array();
  for (const ConditionalEstimate& e : result.estimates) {
    doc["estimates"].push_back({{"t", e.t}, {"point", e.point}, {"stderr", e.std_err}});
  }
  return doc.dump(2) + "\n";
}

std::string json_leaf_table(const std::vector<LeafTableRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const LeafTableRow& r : rows) {
    doc.push_back({{"ell", r.ell},
                   {"num", numerator_string(r.exact)},
                   {"den", denominator_string(r.exact)},
                   {"float", r.exact_f64},
                   {"df_form", r.df_form},
                   {"power_form", r.power_form},
                   {"df_ratio", r.df_ratio},
                   {"power_ratio", r.power_ratio}});
  }
  return doc.dump(2) + "\n";
}

std::string json_vmoments(const std::vector<VMomentRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const VMomentRow& r : rows) {
    doc.push_back({{"ell", r.ell},
                   {"mean_num", numerator_string(r.mean)},
                   {"mean_den", denominator_string(r.mean)},
                   {"mean_float", to_double(r.mean)},
                   {"variance_num", numerator_string(r.variance)},
                   {"variance_den", denominator_string(r.variance)},
                   {"variance_float", to_double(r.variance)},
                   {"mean_gap_scaled", r.mean_gap_scaled},
                   {"variance_scaled", r.variance_scaled}});
  }
  return doc.dump(2) + "\n";
}

std::string json_tail(const std::vector<TailRow>& rows, double limit) {
  nlohmann::json doc;
  doc["limit"] = limit;
  doc["rows"] = nlohmann::json::array();
  for (const TailRow& r : rows) {
    doc["rows"].push_back(
        {{"ell", r.ell}, {"tau", r.tau}, {"cutoff", r.cutoff}, {"deficit", r.deficit}});
  }
  return doc.dump(2) + "\n";
}

std::string json_series(const PowerSeries& series) {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i <= series.order(); ++i) {
    doc.push_back({numerator_string(series[i]), denominator_string(series[i])});
  }
  return doc.dump() + "\n";
}

}  // namespace gwlc
