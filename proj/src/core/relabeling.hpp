#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/cyclotomic.hpp"
#include "core/twisted_double.hpp"

namespace zestlab {

// A value participating in a relabeling comparison. A whole comparison runs
// either in exact mode (cyclotomic equality) or float mode (equal within
// 1e-7; distances in (1e-7, 1e-5] are refused as ambiguous rather than
// silently resolved).
struct CompValue {
  CycNum ev;                       // exact mode only
  std::complex<double> fv{0, 0};   // always populated
};

CompValue comp_value(const CycNum& v);
CompValue comp_value(std::complex<double> v);

// One side of a comparison. T is required; S, W and five2 are attached when
// the corresponding invariant participates as a constraint. Tables must be
// rank-sized (S, W square).
struct RelabelSide {
  std::vector<SimpleLabel> labels;
  std::vector<CompValue> T;
  std::vector<std::vector<CompValue>> S;
  std::vector<std::vector<CompValue>> W;
  std::vector<CompValue> five2;
};

// Lazily evaluated three-point constraint (the borromean battery): a fixed
// list of triples, checked for every completed assignment via the two
// providers. Never used for pruning fingerprints.
struct TripleConstraint {
  std::vector<std::array<int, 3>> triples;
  std::function<CompValue(int, int, int)> left;
  std::function<CompValue(int, int, int)> right;
};

struct RelabelProblem {
  bool exact = true;
  RelabelSide left, right;
  std::optional<TripleConstraint> triple;
};

// Search outcome with an effort certificate. `witnesses` holds up to `limit`
// valid bijections in deterministic search order (`mapping` repeats the
// first). `exhausted` means the whole space was explored, i.e. the witness
// list is complete; it is always true when nothing was found and no
// exception interrupted the search.
struct RelabelResult {
  bool found = false;
  std::vector<int> mapping;
  std::vector<std::vector<int>> witnesses;
  bool exhausted = false;
  long long nodes = 0;       // assignments attempted
  long long prunes = 0;      // candidates rejected
  long long b_evals = 0;     // triple-provider calls
};

// Finds label bijections fixing the unit (index 0) under which all attached
// tables agree, by fingerprint-pruned backtracking in a deterministic order,
// stopping after `limit` witnesses. Throws std::runtime_error on malformed
// input or ambiguous float comparisons.
RelabelResult find_relabeling(const RelabelProblem& problem, int limit = 1);

// Escalating variant for problems with a lazy triple constraint: a candidate
// that survives the seeded sample is hunted with targeted exact entries
// (triples touching the labels it moves, fewest-moved rings first). A
// refuting entry is appended to the constraint and the search restarts;
// repeat until the space is exhausted or a candidate survives the hunt.
struct EscalatedResult {
  RelabelResult result;
  int rounds = 0;                 // restarts triggered by refuted candidates
  long long targeted_checks = 0;  // hunted entry pairs evaluated
  bool hunt_capped = false;       // a survivor outlived the hunt budget
  bool rounds_capped = false;     // the round limit stopped the escalation
};
EscalatedResult find_relabeling_escalated(const RelabelProblem& problem,
                                          int max_rounds = 64,
                                          long long hunt_budget = 2'000'000);

// Convenience: the brute-force reference (all unit-fixing bijections),
// usable for small ranks in tests. Returns all valid mappings.
std::vector<std::vector<int>> all_relabelings_brute_force(
    const RelabelProblem& problem, int max_rank = 9);

}  // namespace zestlab
