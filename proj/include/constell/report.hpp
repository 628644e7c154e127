#ifndef CONSTELL_REPORT_HPP
#define CONSTELL_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "constell/constellation.hpp"
#include "constell/lattice.hpp"
#include "constell/primes.hpp"
#include "constell/quadform.hpp"
#include "constell/sieve.hpp"

namespace constell {

using json = nlohmann::json;

json density_report_to_json(const DensityReport& r);
json domain_to_json(const DomainSpec& d);
json constellation_to_json(const Constellation& c);
json qf_constellation_to_json(const QFConstellation& c);
json gy_result_to_json(const GYResult& r);
json nl_witness_to_json(const NLWitness& w);

/// One experiment run: `meta` echoes the exact configuration (with version
/// and timing), `data` carries the payload rows.  The data section is a
/// deterministic function of the configuration.
struct RunReport {
  json meta;
  json data;

  json to_json() const;
  /// CSV with a header row; nested values are flattened into columns.
  std::string to_csv() const;
  void write(const std::string& path, const std::string& format) const;
};

/// Stable row representation used by the CSV writer.
std::vector<std::pair<std::string, std::string>> flatten_json_row(const json& row);

}  // namespace constell

#endif  // CONSTELL_REPORT_HPP
