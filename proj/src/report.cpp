#include "constell/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace constell {

json density_report_to_json(const DensityReport& r) {
  // timing stays out of the data payload: identical configs must produce
  // byte-identical data sections
  json j{{"experiment", r.experiment}, {"field", r.field},        {"L_or_M", r.scale},
         {"count", r.raw_count},       {"reference", r.reference}, {"ratio", r.ratio}};
  for (const auto& [k, v] : r.extra) j[k] = v;
  return j;
}

json domain_to_json(const DomainSpec& d) {
  json units = json::array();
  for (const auto& u : d.units.fundamental_units) units.push_back(u);
  return json{{"field", d.F->describe()},
              {"d", d.F->is_quadratic ? json(d.F->quad_d) : json()},
              {"unit_coordinates", units},
              {"torsion_order", d.units.torsion_order},
              {"torsion_generator", d.units.torsion_generator},
              {"sigma_index", d.sigma_index},
              {"theta", d.theta},
              {"xi", d.xi}};
}

json constellation_to_json(const Constellation& c) {
  return json{{"base", c.base}, {"k", c.k}, {"points", c.points}};
}

json qf_constellation_to_json(const QFConstellation& c) {
  json j = constellation_to_json(c.pattern);
  j["values"] = c.values;
  j["closeness"] = c.closeness;
  return j;
}

json gy_result_to_json(const GYResult& r) {
  return json{{"empirical", r.empirical},   {"main_term", r.main_term},
              {"ratio", r.ratio},           {"box_points", r.box_points},
              {"kappa_used", r.kappa_used}, {"warnings", r.warnings}};
}

json nl_witness_to_json(const NLWitness& w) {
  return json{{"c_min", w.c_min}, {"c_max", w.c_max}, {"samples", w.samples}};
}

json RunReport::to_json() const { return json{{"meta", meta}, {"data", data}}; }

std::vector<std::pair<std::string, std::string>> flatten_json_row(const json& row) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!row.is_object()) {
    out.push_back({"value", row.dump()});
    return out;
  }
  for (auto it = row.begin(); it != row.end(); ++it) {
    const json& v = it.value();
    if (v.is_string())
      out.push_back({it.key(), v.get<std::string>()});
    else
      out.push_back({it.key(), v.dump()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string RunReport::to_csv() const {
  // rows: data if it is an array, else the single object
  std::vector<json> rows;
  if (data.is_array())
    for (const auto& r : data) rows.push_back(r);
  else
    rows.push_back(data);
  // header: union of keys in first-seen-then-sorted order
  std::vector<std::string> header;
  for (const auto& r : rows)
    for (const auto& [k, v] : flatten_json_row(r)) {
      (void)v;
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
  std::sort(header.begin(), header.end());
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    auto flat = flatten_json_row(r);
    for (size_t i = 0; i < header.size(); ++i) {
      std::string cell;
      for (auto& [k, v] : flat)
        if (k == header[i]) cell = v;
      // quote cells containing separators
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : cell) {
          if (ch == '"') quoted += "\"\"";
          else quoted += ch;
        }
        quoted += "\"";
        cell = quoted;
      }
      os << (i ? "," : "") << cell;
    }
    os << "\n";
  }
  return os.str();
}

void RunReport::write(const std::string& path, const std::string& format) const {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write report to '" + path + "'");
  if (format == "json")
    out << to_json().dump(2) << "\n";
  else if (format == "csv")
    out << to_csv();
  else
    throw domain_error("unknown report format '" + format + "'");
  if (!out) throw domain_error("write failed for '" + path + "'");
}

}  // namespace constell
