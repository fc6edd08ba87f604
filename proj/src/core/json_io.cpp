#include "core/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zestlab {

namespace {

constexpr long long kJsonIntLimit = 1ll << 53;

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

long long get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected integer");
  return j.get<long long>();
}

const json& get_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

json label_to_json(const SimpleLabel& lab) {
  return json{{"name", lab.name},
              {"class", lab.class_idx},
              {"irrep", lab.irrep_idx},
              {"qdim", lab.qdim},
              {"grading", lab.grading}};
}

// Shared header + label parsing/validation for both backends. Labels are
// recomputed from (p, q, n) and must agree with the file.
struct Header {
  GroupSpec G;
  int u = 0;
  std::vector<SimpleLabel> labels;
};

Header parse_header(const json& j) {
  Header h;
  int p = static_cast<int>(get_int(get_field(j, "p"), "p"));
  int q = static_cast<int>(get_int(get_field(j, "q"), "q"));
  int n = static_cast<int>(get_int(get_field(j, "n"), "n"));
  try {
    h.G = make_group(p, q, n);
  } catch (const std::domain_error& e) {
    fail(e.what());
  }
  h.u = static_cast<int>(get_int(get_field(j, "u"), "u"));
  if (h.u < 0 || h.u >= p) fail("u out of range [0, p)");
  h.labels = enumerate_simples(h.G, h.u);
  long long rank = get_int(get_field(j, "rank"), "rank");
  if (rank != static_cast<long long>(h.labels.size())) {
    fail("rank does not match (p, q)");
  }
  const json& labels = get_field(j, "labels");
  if (!labels.is_array() || labels.size() != h.labels.size()) {
    fail("labels: expected array of length rank");
  }
  for (size_t i = 0; i < h.labels.size(); ++i) {
    const json& L = labels[i];
    const SimpleLabel& want = h.labels[i];
    if (get_field(L, "name").get<std::string>() != want.name ||
        get_int(get_field(L, "class"), "class") != want.class_idx ||
        get_int(get_field(L, "irrep"), "irrep") != want.irrep_idx ||
        get_int(get_field(L, "qdim"), "qdim") != want.qdim ||
        get_int(get_field(L, "grading"), "grading") != want.grading) {
      fail("label " + std::to_string(i) + " does not match the canonical "
           "enumeration for this group");
    }
  }
  return h;
}

json base_json(int p, int q, int n, int u, const char* backend,
               const std::vector<SimpleLabel>& labels) {
  json j;
  j["p"] = p;
  j["q"] = q;
  j["n"] = n;
  j["u"] = u;
  j["backend"] = backend;
  j["rank"] = labels.size();
  json jl = json::array();
  for (const auto& lab : labels) jl.push_back(label_to_json(lab));
  j["labels"] = std::move(jl);
  return j;
}

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail("float entry: expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ModularDataF to_float(const ModularData& md) {
  ModularDataF f;
  f.p = md.p;
  f.q = md.q;
  f.n = md.n;
  f.u = md.u;
  f.labels = md.labels;
  f.S.resize(md.S.size());
  for (size_t i = 0; i < md.S.size(); ++i) {
    f.S[i].reserve(md.S[i].size());
    for (const auto& v : md.S[i]) {
      auto z = v.to_complex();
      f.S[i].push_back({static_cast<double>(z.real()),
                        static_cast<double>(z.imag())});
    }
  }
  f.T.reserve(md.T.size());
  for (const auto& v : md.T) {
    auto z = v.to_complex();
    f.T.push_back({static_cast<double>(z.real()),
                   static_cast<double>(z.imag())});
  }
  return f;
}

json cyc_to_json(const CycNum& v) {
  json terms = json::array();
  for (const auto& [e, c] : v.terms()) {
    if (c.num() >= kJsonIntLimit || c.num() <= -kJsonIntLimit ||
        c.den() >= kJsonIntLimit) {
      fail("cyclotomic coefficient exceeds the 2^53 JSON-safe range");
    }
    terms.push_back(json::array({e, c.num(), c.den()}));
  }
  return json{{"N", v.conductor()}, {"terms", std::move(terms)}};
}

CycNum cyc_from_json(const json& j) {
  long long N = get_int(get_field(j, "N"), "N");
  if (N < 1) fail("cyclotomic conductor must be positive");
  const json& terms = get_field(j, "terms");
  if (!terms.is_array()) fail("terms: expected array");
  std::vector<std::pair<long long, Rational>> parsed;
  parsed.reserve(terms.size());
  for (const json& t : terms) {
    if (!t.is_array() || t.size() != 3) fail("term: expected [exp, num, den]");
    long long e = get_int(t[0], "term exponent");
    long long num = get_int(t[1], "term numerator");
    long long den = get_int(t[2], "term denominator");
    if (den == 0) fail("term denominator must be nonzero");
    parsed.emplace_back(e, Rational(num, den));
  }
  return CycNum::from_terms(N, parsed);
}

json modular_data_to_json(const ModularData& md) {
  json j = base_json(md.p, md.q, md.n, md.u, "exact", md.labels);
  json S = json::array();
  for (const auto& row : md.S) {
    json r = json::array();
    for (const auto& v : row) r.push_back(cyc_to_json(v));
    S.push_back(std::move(r));
  }
  json T = json::array();
  for (const auto& v : md.T) T.push_back(cyc_to_json(v));
  j["S"] = std::move(S);
  j["T"] = std::move(T);
  return j;
}

json modular_data_to_json(const ModularDataF& f) {
  json j = base_json(f.p, f.q, f.n, f.u, "float", f.labels);
  json S = json::array();
  for (const auto& row : f.S) {
    json r = json::array();
    for (const auto& v : row) r.push_back(json::array({v.real(), v.imag()}));
    S.push_back(std::move(r));
  }
  json T = json::array();
  for (const auto& v : f.T) T.push_back(json::array({v.real(), v.imag()}));
  j["S"] = std::move(S);
  j["T"] = std::move(T);
  return j;
}

json modular_data_to_json_float(const ModularData& md) {
  return modular_data_to_json(to_float(md));
}

bool modular_data_json_is_exact(const json& j) {
  std::string backend = get_field(j, "backend").get<std::string>();
  if (backend == "exact") return true;
  if (backend == "float") return false;
  fail("backend must be \"exact\" or \"float\"");
}

ModularData modular_data_from_json(const json& j) {
  if (!modular_data_json_is_exact(j)) {
    fail("expected an exact-backend modular data file");
  }
  Header h = parse_header(j);
  ModularData md;
  md.p = h.G.p;
  md.q = h.G.q;
  md.n = h.G.n;
  md.u = h.u;
  md.labels = std::move(h.labels);
  size_t rank = md.labels.size();
  const json& S = get_field(j, "S");
  const json& T = get_field(j, "T");
  if (!S.is_array() || S.size() != rank) fail("S: expected rank rows");
  if (!T.is_array() || T.size() != rank) fail("T: expected rank entries");
  md.S.resize(rank);
  for (size_t i = 0; i < rank; ++i) {
    if (!S[i].is_array() || S[i].size() != rank) fail("S: ragged row");
    md.S[i].reserve(rank);
    for (size_t k = 0; k < rank; ++k) md.S[i].push_back(cyc_from_json(S[i][k]));
  }
  md.T.reserve(rank);
  for (size_t i = 0; i < rank; ++i) md.T.push_back(cyc_from_json(T[i]));
  return md;
}

ModularDataF modular_data_float_from_json(const json& j) {
  if (modular_data_json_is_exact(j)) return to_float(modular_data_from_json(j));
  Header h = parse_header(j);
  ModularDataF md;
  md.p = h.G.p;
  md.q = h.G.q;
  md.n = h.G.n;
  md.u = h.u;
  md.labels = std::move(h.labels);
  size_t rank = md.labels.size();
  const json& S = get_field(j, "S");
  const json& T = get_field(j, "T");
  if (!S.is_array() || S.size() != rank) fail("S: expected rank rows");
  if (!T.is_array() || T.size() != rank) fail("T: expected rank entries");
  md.S.resize(rank);
  for (size_t i = 0; i < rank; ++i) {
    if (!S[i].is_array() || S[i].size() != rank) fail("S: ragged row");
    md.S[i].reserve(rank);
    for (size_t k = 0; k < rank; ++k) {
      md.S[i].push_back(complex_from_json(S[i][k]));
    }
  }
  md.T.reserve(rank);
  for (size_t i = 0; i < rank; ++i) md.T.push_back(complex_from_json(T[i]));
  return md;
}

json invariant_suite_to_json(const GroupSpec& G, int u, int sample,
                             std::uint64_t seed, const InvariantSuite& suite) {
  std::vector<SimpleLabel> labels = enumerate_simples(G, u);
  json j = base_json(G.p, G.q, G.n, u, "exact", labels);
  j["sample"] = sample;
  j["seed"] = seed;
  const size_t rank = labels.size();
  if (suite.W.size() != rank || suite.five2.size() != rank) {
    fail("invariant suite tables do not match the rank");
  }
  json W = json::array();
  for (const auto& row : suite.W) {
    if (row.size() != rank) fail("invariant suite W is ragged");
    json r = json::array();
    for (const auto& v : row) r.push_back(cyc_to_json(v));
    W.push_back(std::move(r));
  }
  json five2 = json::array();
  for (const auto& v : suite.five2) five2.push_back(cyc_to_json(v));
  json bo = json::array();
  for (const auto& s : suite.borromean) {
    bo.push_back(json{{"x", s.X}, {"y", s.Y}, {"z", s.Z}, {"value", cyc_to_json(s.value)}});
  }
  j["W"] = std::move(W);
  j["five2"] = std::move(five2);
  j["borromean"] = std::move(bo);
  return j;
}

InvariantSuiteDoc invariant_suite_from_json(const json& j) {
  if (!modular_data_json_is_exact(j)) {
    fail("expected an exact-backend invariant suite file");
  }
  Header h = parse_header(j);
  InvariantSuiteDoc doc;
  doc.p = h.G.p;
  doc.q = h.G.q;
  doc.n = h.G.n;
  doc.u = h.u;
  doc.sample = static_cast<int>(get_int(get_field(j, "sample"), "sample"));
  if (doc.sample < 0) fail("sample must be nonnegative");
  const json& seed = get_field(j, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    fail("seed: expected integer");
  }
  doc.seed = seed.get<std::uint64_t>();
  doc.labels = std::move(h.labels);
  const size_t rank = doc.labels.size();
  const json& W = get_field(j, "W");
  const json& five2 = get_field(j, "five2");
  const json& bo = get_field(j, "borromean");
  if (!W.is_array() || W.size() != rank) fail("W: expected rank rows");
  if (!five2.is_array() || five2.size() != rank) fail("five2: expected rank entries");
  if (!bo.is_array()) fail("borromean: expected array");
  doc.suite.W.resize(rank);
  for (size_t i = 0; i < rank; ++i) {
    if (!W[i].is_array() || W[i].size() != rank) fail("W: ragged row");
    doc.suite.W[i].reserve(rank);
    for (size_t k = 0; k < rank; ++k) doc.suite.W[i].push_back(cyc_from_json(W[i][k]));
  }
  doc.suite.five2.reserve(rank);
  for (size_t i = 0; i < rank; ++i) doc.suite.five2.push_back(cyc_from_json(five2[i]));
  doc.suite.borromean.reserve(bo.size());
  for (const json& e : bo) {
    BorromeanSample s;
    s.X = static_cast<int>(get_int(get_field(e, "x"), "borromean x"));
    s.Y = static_cast<int>(get_int(get_field(e, "y"), "borromean y"));
    s.Z = static_cast<int>(get_int(get_field(e, "z"), "borromean z"));
    if (s.X < 0 || s.Y < 0 || s.Z < 0 || s.X >= static_cast<int>(rank) ||
        s.Y >= static_cast<int>(rank) || s.Z >= static_cast<int>(rank)) {
      fail("borromean triple out of range");
    }
    s.value = cyc_from_json(get_field(e, "value"));
    doc.suite.borromean.push_back(std::move(s));
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) fail("read error: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot open for writing: " + path);
  out << contents;
  out.flush();
  if (!out.good()) fail("write error: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(1) + "\n");
}

}  // namespace zestlab
