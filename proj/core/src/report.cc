#include "primeshape/report.h"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "primeshape/error.h"

namespace primeshape {

namespace {

using nlohmann::json;

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid "-0.000".
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

json provenance_json(const Provenance& p) {
  json params = json::object();
  for (const auto& [k, v] : p.parameters) params[k] = v;
  json tols = json::object();
  for (const auto& [k, v] : p.tolerances) tols[k] = v;
  return {{"tool", "primeshape"},
          {"version", PRIMESHAPE_VERSION},
          {"command", p.command},
          {"parameters", params},
          {"tolerances", tols}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json comparison_json(const PmfComparison& c) {
  return {{"samples", c.samples},
          {"empirical", c.empirical},
          {"expected", c.expected},
          {"max_abs_deviation", c.max_abs_deviation},
          {"chi_square", c.chi_square},
          {"degrees_of_freedom", c.degrees_of_freedom},
          {"chi_square_q99", c.chi_square_q99}};
}

}  // namespace

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw InvalidArgument("unknown output format '" + std::string(s) + "'");
}

void write_provenance_csv(std::ostream& os, const Provenance& p) {
  os << "# tool=primeshape version=" << PRIMESHAPE_VERSION << '\n';
  os << "# command=" << p.command << '\n';
  for (const auto& [k, v] : p.parameters) os << "# param " << k << '=' << v << '\n';
  for (const auto& [k, v] : p.tolerances) os << "# tolerance " << k << '=' << v << '\n';
}

void write_table(std::ostream& os, std::span<const ShapingSolution> rows,
                 const Provenance& provenance, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    json out;
    out["provenance"] = provenance_json(provenance);
    out["columns"] = kTableColumns;
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"p", r.p},
                     {"Rc", r.rc.to_string()},
                     {"target_rate", r.target_rate},
                     {"potential_gain_db", number_or_null(r.potential_gain_db)},
                     {"gap_db", number_or_null(r.gap_db)},
                     {"effective_gain_db", number_or_null(r.effective_gain_db)},
                     {"nu_star", number_or_null(r.nu_star)},
                     {"gamma_A_db", number_or_null(r.gamma_A_db)},
                     {"gamma_cap_db", number_or_null(r.gamma_cap_db)},
                     {"gamma_unif_db", number_or_null(r.gamma_unif_db)},
                     {"scheme", to_string(r.scheme)},
                     {"convention", r.convention ? json(to_string(*r.convention)) : json(nullptr)},
                     {"status", r.reachable ? "ok" : "unreachable"},
                     {"warnings", r.warnings}});
    }
    out["rows"] = std::move(arr);
    os << out.dump(2) << '\n';
    return;
  }
  write_provenance_csv(os, provenance);
  bool first = true;
  for (const char* c : kTableColumns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    os << r.p << ',' << r.rc.to_string() << ',' << fixed(r.target_rate, 6) << ','
       << fixed(r.potential_gain_db, 3) << ',' << fixed(r.gap_db, 3) << ','
       << fixed(r.effective_gain_db, 3) << ',' << fixed(r.nu_star, 6) << ','
       << fixed(r.gamma_A_db, 3) << ',' << to_string(r.scheme) << ','
       << (r.convention ? to_string(*r.convention) : "") << ','
       << (r.reachable ? "ok" : "unreachable") << '\n';
  }
}

void write_sum_distribution(std::ostream& os, const SymbolDistribution& d,
                            const Provenance& provenance, OutputFormat format) {
  const double gap = uniformity_gap(d);
  if (format == OutputFormat::kJson) {
    json out;
    out["provenance"] = provenance_json(provenance);
    out["p"] = d.field().value();
    out["probabilities"] = d.probs();
    out["uniformity_gap"] = gap;
    os << out.dump(2) << '\n';
    return;
  }
  write_provenance_csv(os, provenance);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", gap);
  os << "# uniformity_gap=" << buf << '\n';
  os << "k,probability\n";
  for (std::size_t k = 0; k < d.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", d[k]);
    os << k << ',' << buf << '\n';
  }
}

void write_pas_report(std::ostream& os, const EmpiricalReport& report,
                      const Provenance& provenance) {
  json out;
  out["provenance"] = provenance_json(provenance);
  out["frames"] = report.frames;
  out["code_is_dense"] = report.code_is_dense;
  out["parity"] = comparison_json(report.parity);
  out["parity_uniformity_gap"] = report.parity_uniformity_gap;
  out["shells"] = comparison_json(report.shells);
  out["points"] = comparison_json(report.points);
  os << out.dump(2) << '\n';
}

}  // namespace primeshape
