#include "core/braid_word.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zestlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

}  // namespace

BraidWord parse_braid_word(const std::string& text, int strands) {
  if (strands < 2) fail("braid word: need at least 2 strands");
  BraidWord w;
  w.strands = strands;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    std::string base = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      if (tok.substr(caret) != "^-1") {
        fail("braid word: bad token \"" + tok + "\" (expected s<i> or s<i>^-1)");
      }
      sign = -1;
      base = tok.substr(0, caret);
    }
    if (base.size() < 2 || base[0] != 's' ||
        base.find_first_not_of("0123456789", 1) != std::string::npos) {
      fail("braid word: bad token \"" + tok + "\" (expected s<i> or s<i>^-1)");
    }
    int idx = 0;
    try {
      idx = std::stoi(base.substr(1));
    } catch (const std::exception&) {
      fail("braid word: bad generator index in \"" + tok + "\"");
    }
    if (idx < 1 || idx >= strands) {
      fail("braid word: generator s" + std::to_string(idx) +
           " out of range for " + std::to_string(strands) + " strands");
    }
    w.letters.emplace_back(idx, sign);
  }
  return w;
}

ClosureInfo analyze_closure(const BraidWord& w) {
  const int n = w.strands;
  ClosureInfo ci;
  // occupant[pos] = starting strand currently at this position.
  std::vector<int> occupant(n);
  std::iota(occupant.begin(), occupant.end(), 0);

  // First pass: the closure permutation, then components as its cycles.
  for (auto [i, sign] : w.letters) std::swap(occupant[i - 1], occupant[i]);
  ci.permutation.assign(n, -1);
  for (int pos = 0; pos < n; ++pos) ci.permutation[occupant[pos]] = pos;
  ci.component_of.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (ci.component_of[s] >= 0) continue;
    int id = ci.num_components++;
    for (int t = s; ci.component_of[t] < 0; t = ci.permutation[t]) {
      ci.component_of[t] = id;
    }
  }
  ci.self_writhe.assign(ci.num_components, 0);
  ci.cross_sum.assign(ci.num_components,
                      std::vector<long long>(ci.num_components, 0));

  // Second pass: attribute each crossing to the component pair involved.
  std::iota(occupant.begin(), occupant.end(), 0);
  for (auto [i, sign] : w.letters) {
    int c1 = ci.component_of[occupant[i - 1]];
    int c2 = ci.component_of[occupant[i]];
    if (c1 == c2) {
      ci.self_writhe[c1] += sign;
    } else {
      ci.cross_sum[c1][c2] += sign;
      ci.cross_sum[c2][c1] += sign;
    }
    ci.total_writhe += sign;
    std::swap(occupant[i - 1], occupant[i]);
  }
  return ci;
}

std::vector<long long> framing_exponents(const LinkDescriptor& d,
                                         const ClosureInfo& ci) {
  switch (d.framing) {
    case FramingMode::AsDrawn:
      return std::vector<long long>(ci.num_components, 0);
    case FramingMode::ZeroFramed: {
      std::vector<long long> e(ci.num_components);
      for (int c = 0; c < ci.num_components; ++c) e[c] = -ci.self_writhe[c];
      return e;
    }
    case FramingMode::Explicit:
      if (static_cast<int>(d.exponents.size()) != ci.num_components) {
        fail("framing exponents: expected one per component (" +
             std::to_string(ci.num_components) + ")");
      }
      return d.exponents;
  }
  fail("framing exponents: bad mode");
}

LinkDescriptor descriptor_from_json(const json& j) {
  LinkDescriptor d;
  if (!j.contains("strands") || !j["strands"].is_number_integer()) {
    fail("link descriptor: missing integer \"strands\"");
  }
  if (!j.contains("word") || !j["word"].is_string()) {
    fail("link descriptor: missing string \"word\"");
  }
  d.word = parse_braid_word(j["word"].get<std::string>(),
                            j["strands"].get<int>());
  if (j.contains("framing")) {
    const json& f = j["framing"];
    std::string mode = f.value("mode", "");
    if (mode == "as_drawn") {
      d.framing = FramingMode::AsDrawn;
    } else if (mode == "zero_framed") {
      d.framing = FramingMode::ZeroFramed;
    } else if (mode == "explicit") {
      d.framing = FramingMode::Explicit;
      if (!f.contains("exponents") || !f["exponents"].is_array()) {
        fail("link descriptor: explicit framing needs \"exponents\"");
      }
      for (const auto& e : f["exponents"]) {
        if (!e.is_number_integer()) fail("link descriptor: bad exponent");
        d.exponents.push_back(e.get<long long>());
      }
    } else {
      fail("link descriptor: bad framing mode \"" + mode + "\"");
    }
  }
  return d;
}

json descriptor_to_json(const LinkDescriptor& d) {
  std::string word;
  for (auto [i, sign] : d.word.letters) {
    if (!word.empty()) word += ' ';
    word += 's' + std::to_string(i) + (sign < 0 ? "^-1" : "");
  }
  json f{{"mode", d.framing == FramingMode::AsDrawn      ? "as_drawn"
                  : d.framing == FramingMode::ZeroFramed ? "zero_framed"
                                                         : "explicit"}};
  if (d.framing == FramingMode::Explicit) f["exponents"] = d.exponents;
  return json{{"strands", d.word.strands}, {"word", word}, {"framing", f}};
}

const std::map<std::string, LinkDescriptor>& canonical_links() {
  static const std::map<std::string, LinkDescriptor> table = [] {
    std::map<std::string, LinkDescriptor> m;
    LinkDescriptor wh;
    wh.word = parse_braid_word("s1^-1 s1^-1 s2 s1^-1 s2", 3);
    wh.framing = FramingMode::Explicit;
    wh.exponents = {0, -1};  // components ordered by smallest strand: X, Y
    m["whitehead"] = std::move(wh);

    LinkDescriptor bo;
    bo.word = parse_braid_word("s1^-1 s2 s1^-1 s2 s1^-1 s2", 3);
    bo.framing = FramingMode::AsDrawn;
    m["borromean"] = std::move(bo);

    LinkDescriptor f2;
    f2.word = parse_braid_word("s1^-1 s1^-1 s1^-1 s2^-1 s1 s2^-1", 3);
    f2.framing = FramingMode::AsDrawn;
    m["five2"] = std::move(f2);
    return m;
  }();
  return table;
}

json canonical_links_json() {
  json j;
  for (const auto& [name, d] : canonical_links()) {
    j[name] = descriptor_to_json(d);
  }
  return j;
}

}  // namespace zestlab
