#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/braid.hpp"
#include "core/group.hpp"
#include "core/twisted_double.hpp"

namespace zestlab {

// Cache-aware computation of the exact modular data / invariant battery for
// one twisting. With use_cache the content cache under $ZESTLAB_CACHE is
// consulted and populated; progress notes go to `log` when non-null.
ModularData cached_modular_data(const GroupSpec& G, int u, bool use_cache,
                                std::ostream* log);
InvariantSuite cached_invariant_suite(const GroupSpec& G, int u, int sample,
                                      std::uint64_t seed, bool use_cache,
                                      std::ostream* log);

struct ExperimentOptions {
  int sample = 500;           // borromean sample size per twisting
  std::uint64_t seed = 2026;  // sample seed
  int limit = 1;              // witnesses requested per comparison
  bool use_cache = true;
};

struct ExperimentOutcome {
  nlohmann::json report;
  // True when some pair of twistings was verified inequivalent under some
  // constraint set (an exhausted search with no witness).
  bool distinguishable = false;
};

// The full pairwise study at (p, q): exact modular data for every twisting,
// the zest-reconstruction identity against the canonical parameters, and
// relabeling searches under (S,T), (W,T) and (B,T) for every pair of
// twistings. The report contains only deterministic fields (effort counts,
// no wall-clock); timings and stage progress are written to `log`.
// Throws std::runtime_error naming the failing stage.
ExperimentOutcome run_isotope_experiment(int p, int q, const ExperimentOptions& opts,
                                         std::ostream* log);

// File-level comparison driver shared by the CLI and the C API. `left_md`
// and `right_md` are modular-data documents; `*_w` optionally attach
// invariant-suite documents (their W tables) and `*_b` borromean-sample
// documents. Runs one search per available constraint set: (S,T) always,
// (W,T) when W is attached, (B,T) when B is attached (right-hand values are
// recomputed on demand, with escalation on near-misses). Float inputs are
// compared at 1e-7; comparisons falling in the ambiguous band trigger exact
// recomputation from the document headers.
struct CompareRequest {
  nlohmann::json left_md, right_md;
  std::optional<nlohmann::json> left_w, right_w;
  std::optional<nlohmann::json> left_b, right_b;
  int limit = 1;
  bool use_cache = true;
};

struct CompareOutcome {
  nlohmann::json report;
  bool witness_found = false;          // under every attached constraint set
  bool verified_inequivalence = false; // some constraint set exhausted empty
};

CompareOutcome run_compare(const CompareRequest& req, std::ostream* log);

}  // namespace zestlab
