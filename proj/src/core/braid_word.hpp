#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zestlab {

// A word in the braid group B_n: letters (i, sign) mean sigma_i^sign with
// generators numbered 1..n-1, applied left to right (bottom to top).
struct BraidWord {
  int strands = 0;
  std::vector<std::pair<int, int>> letters;
};

// Grammar: whitespace-separated tokens `s<i>` or `s<i>^-1`.
BraidWord parse_braid_word(const std::string& text, int strands);

// Combinatorics of the braid closure: components (cycles of the closure
// permutation, numbered by smallest starting strand), per-component
// self-writhes, and pairwise signed crossing sums (twice the linking number).
struct ClosureInfo {
  int num_components = 0;
  std::vector<int> permutation;        // start position -> end position
  std::vector<int> component_of;       // starting strand -> component id
  std::vector<long long> self_writhe;  // per component
  std::vector<std::vector<long long>> cross_sum;  // symmetric, zero diagonal
  long long total_writhe = 0;
};
ClosureInfo analyze_closure(const BraidWord& w);

// How the closure value is corrected per component: not at all, by the
// component self-writhes, or by explicit per-component twist exponents.
enum class FramingMode { AsDrawn, ZeroFramed, Explicit };

struct LinkDescriptor {
  BraidWord word;
  FramingMode framing = FramingMode::AsDrawn;
  std::vector<long long> exponents;  // Explicit mode: per component
};

// Resolved per-component twist-correction exponents: AsDrawn -> all zero,
// ZeroFramed -> minus the self-writhes, Explicit -> the stored exponents.
std::vector<long long> framing_exponents(const LinkDescriptor& d,
                                         const ClosureInfo& ci);

// JSON shape: {"strands": n, "word": "s1 s2^-1 ...",
//              "framing": {"mode": "as_drawn"|"zero_framed"|"explicit",
//                          "exponents": [..]}}  (exponents only for explicit)
LinkDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json descriptor_to_json(const LinkDescriptor& d);

// The three curated closures used throughout: "whitehead" (components X, Y
// with the Y strand corrected by one negative twist), "borromean", "five2".
// data/braid_words.json mirrors this table verbatim.
const std::map<std::string, LinkDescriptor>& canonical_links();
nlohmann::json canonical_links_json();

}  // namespace zestlab
