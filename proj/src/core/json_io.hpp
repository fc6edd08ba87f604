#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/braid.hpp"
#include "core/twisted_double.hpp"

namespace zestlab {

// Float-backed view of modular data (S entries and twists as complex doubles).
struct ModularDataF {
  int p = 0, q = 0, n = 0, u = 0;
  std::vector<SimpleLabel> labels;
  std::vector<std::vector<std::complex<double>>> S;
  std::vector<std::complex<double>> T;
};

ModularDataF to_float(const ModularData& md);

// Exact cyclotomic value <-> {"N": conductor, "terms": [[exp, num, den], ...]}.
// Writing rejects coefficients outside +/-2^53 so files stay portable to
// readers that funnel JSON numbers through doubles.
nlohmann::json cyc_to_json(const CycNum& v);
CycNum cyc_from_json(const nlohmann::json& j);

// Modular data files carry {"p","q","n","u","backend","rank","labels","S","T"}
// with backend "exact" (cyclotomic entries) or "float" ([re, im] entries).
// Labels are validated against the canonical enumeration for (p, q, n).
nlohmann::json modular_data_to_json(const ModularData& md);
nlohmann::json modular_data_to_json(const ModularDataF& md);  // float backend
nlohmann::json modular_data_to_json_float(const ModularData& md);
ModularData modular_data_from_json(const nlohmann::json& j);  // exact files only
ModularDataF modular_data_float_from_json(const nlohmann::json& j);  // either backend

bool modular_data_json_is_exact(const nlohmann::json& j);

// Invariant-battery documents share the modular-data header (labels are
// validated the same way) and add {"sample","seed","W","five2","borromean"};
// borromean entries are {"x","y","z","value"}. Exact backend only.
struct InvariantSuiteDoc {
  int p = 0, q = 0, n = 0, u = 0;
  int sample = 0;
  std::uint64_t seed = 0;
  std::vector<SimpleLabel> labels;
  InvariantSuite suite;
};

nlohmann::json invariant_suite_to_json(const GroupSpec& G, int u, int sample,
                                       std::uint64_t seed, const InvariantSuite& suite);
InvariantSuiteDoc invariant_suite_from_json(const nlohmann::json& j);

// Whole-file helpers; throw std::runtime_error with the path on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace zestlab
