#include "core/experiment.hpp"

#include <array>
#include <chrono>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core/braid_word.hpp"
#include "core/cache.hpp"
#include "core/json_io.hpp"
#include "core/relabeling.hpp"
#include "core/zesting.hpp"

namespace zestlab {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void note(std::ostream* log, const std::string& line) {
  if (log) *log << line << std::endl;
}

template <typename F>
auto stage(const char* name, std::ostream* log, F&& fn) -> decltype(fn()) {
  auto t0 = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      note(log, std::string("[zestlab] stage=") + name +
                    " wall_ms=" + std::to_string(ms_since(t0)));
    } else {
      auto r = fn();
      note(log, std::string("[zestlab] stage=") + name +
                    " wall_ms=" + std::to_string(ms_since(t0)));
      return r;
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("experiment stage '") + name + "': " + e.what());
  }
}

std::string md_cache_key(const GroupSpec& G, int u) {
  std::ostringstream k;
  k << "zestlab:md:v1:p=" << G.p << ",q=" << G.q << ",n=" << G.n << ",u=" << u
    << ",backend=exact";
  return k.str();
}

std::string suite_cache_key(const GroupSpec& G, int u, int sample, std::uint64_t seed) {
  std::ostringstream k;
  k << "zestlab:invariants:v1:p=" << G.p << ",q=" << G.q << ",n=" << G.n << ",u=" << u
    << ",sample=" << sample << ",seed=" << seed << ",backend=exact";
  return k.str();
}

bool md_tables_equal(const ModularData& a, const ModularData& b) {
  const size_t rank = a.labels.size();
  if (b.labels.size() != rank || a.S.size() != rank || b.S.size() != rank) return false;
  for (size_t i = 0; i < rank; ++i) {
    if (!(a.T[i] == b.T[i])) return false;
    for (size_t j = 0; j < rank; ++j) {
      if (!(a.S[i][j] == b.S[i][j])) return false;
    }
  }
  return true;
}

RelabelSide side_from_md(const ModularData& md, bool with_S) {
  RelabelSide s;
  s.labels = md.labels;
  const size_t rank = md.labels.size();
  s.T.reserve(rank);
  for (const auto& v : md.T) s.T.push_back(comp_value(v));
  if (with_S) {
    s.S.assign(rank, std::vector<CompValue>(rank));
    for (size_t i = 0; i < rank; ++i) {
      for (size_t j = 0; j < rank; ++j) s.S[i][j] = comp_value(md.S[i][j]);
    }
  }
  return s;
}

RelabelSide side_from_md_float(const ModularDataF& md, bool with_S) {
  RelabelSide s;
  s.labels = md.labels;
  const size_t rank = md.labels.size();
  s.T.reserve(rank);
  for (const auto& v : md.T) s.T.push_back(comp_value(v));
  if (with_S) {
    s.S.assign(rank, std::vector<CompValue>(rank));
    for (size_t i = 0; i < rank; ++i) {
      for (size_t j = 0; j < rank; ++j) s.S[i][j] = comp_value(md.S[i][j]);
    }
  }
  return s;
}

void attach_w(RelabelSide& s, const std::vector<std::vector<CycNum>>& W) {
  const size_t rank = s.labels.size();
  s.W.assign(rank, std::vector<CompValue>(rank));
  for (size_t i = 0; i < rank; ++i) {
    for (size_t j = 0; j < rank; ++j) s.W[i][j] = comp_value(W[i][j]);
  }
}

json pair_json(int a, int b) { return json::array({a, b}); }

json constraints_json(const char* set) {
  if (std::string(set) == "S,T") return json::array({"S", "T", "qdim"});
  if (std::string(set) == "W,T") return json::array({"T", "W", "qdim"});
  return json::array({"B-sample", "T", "qdim"});
}

json witnesses_json(const std::vector<std::vector<int>>& ws, const char* set) {
  json out = json::array();
  for (const auto& w : ws) {
    out.push_back(json{{"permutation", w},
                       {"verified", true},
                       {"checked_constraints", constraints_json(set)}});
  }
  return out;
}

json certificate_json(const RelabelResult& r, const EscalatedResult* esc) {
  json c;
  c["exhausted"] = r.exhausted;
  c["nodes"] = r.nodes;
  c["prunes"] = r.prunes;
  c["b_evals"] = r.b_evals;
  c["escalation_rounds"] = esc ? esc->rounds : 0;
  c["targeted_checks"] = esc ? esc->targeted_checks : 0;
  c["hunt_capped"] = esc ? esc->hunt_capped : false;
  c["rounds_capped"] = esc ? esc->rounds_capped : false;
  return c;
}

json comparison_json(const char* set, int u1, int u2, const RelabelResult& r,
                     const EscalatedResult* esc) {
  json c;
  c["constraints"] = constraints_json(set);
  c["pair"] = pair_json(u1, u2);
  c["witness_found"] = r.found;
  c["witnesses"] = witnesses_json(r.witnesses, set);
  c["certificate"] = certificate_json(r, esc);
  return c;
}

// Triple providers: consult a precomputed sample table first, then fall back
// to a lazily constructed evaluator for the same twisting.
class BProvider {
 public:
  BProvider(const GroupSpec& G, int u, const InvariantSuite* suite, const LinkDescriptor& bo)
      : G_(G), u_(u), bo_(bo) {
    if (suite) {
      for (const auto& s : suite->borromean) table_[{s.X, s.Y, s.Z}] = s.value;
    }
  }

  CompValue operator()(int x, int y, int z) {
    auto it = table_.find({x, y, z});
    if (it != table_.end()) return comp_value(it->second);
    if (!sys_) sys_ = std::make_unique<AnyonSystem>(G_, u_);
    CycNum v = link_invariant(*sys_, bo_, {x, y, z});
    table_.emplace(std::array<int, 3>{x, y, z}, v);
    return comp_value(v);
  }

 private:
  const GroupSpec& G_;
  int u_;
  LinkDescriptor bo_;
  std::map<std::array<int, 3>, CycNum> table_;
  std::unique_ptr<AnyonSystem> sys_;
};

}  // namespace

ModularData cached_modular_data(const GroupSpec& G, int u, bool use_cache,
                                std::ostream* log) {
  const std::string key = md_cache_key(G, u);
  if (use_cache) {
    if (auto hit = cache_get(key)) {
      try {
        return modular_data_from_json(json::parse(*hit));
      } catch (const std::exception& e) {
        note(log, "[zestlab] cache entry ignored (" + std::string(e.what()) + "); recomputing");
      }
    }
  }
  ModularData md = twisted_double_modular_data(G, u);
  if (use_cache) cache_put(key, modular_data_to_json(md).dump());
  return md;
}

InvariantSuite cached_invariant_suite(const GroupSpec& G, int u, int sample,
                                      std::uint64_t seed, bool use_cache,
                                      std::ostream* log) {
  const std::string key = suite_cache_key(G, u, sample, seed);
  if (use_cache) {
    if (auto hit = cache_get(key)) {
      try {
        InvariantSuiteDoc doc = invariant_suite_from_json(json::parse(*hit));
        if (doc.p == G.p && doc.q == G.q && doc.n == G.n && doc.u == u &&
            doc.sample == sample && doc.seed == seed) {
          return doc.suite;
        }
        note(log, "[zestlab] cache entry ignored (metadata mismatch); recomputing");
      } catch (const std::exception& e) {
        note(log, "[zestlab] cache entry ignored (" + std::string(e.what()) + "); recomputing");
      }
    }
  }
  AnyonSystem sys(G, u);
  InvariantSuite suite = compute_invariant_suite(sys, sample, seed);
  if (use_cache) {
    cache_put(key, invariant_suite_to_json(G, u, sample, seed, suite).dump());
  }
  return suite;
}

ExperimentOutcome run_isotope_experiment(int p, int q, const ExperimentOptions& opts,
                                         std::ostream* log) {
  ExperimentOutcome out;
  GroupSpec G = stage("group", log, [&] { return make_group(p, q); });
  const int P = G.p;
  const auto bo_descriptor = canonical_links().at("borromean");

  std::vector<ModularData> md = stage("modular-data", log, [&] {
    std::vector<ModularData> v;
    v.reserve(P);
    for (int u = 0; u < P; ++u) v.push_back(cached_modular_data(G, u, opts.use_cache, log));
    return v;
  });
  const int rank = static_cast<int>(md[0].labels.size());

  std::vector<InvariantSuite> suites = stage("invariant-battery", log, [&] {
    std::vector<InvariantSuite> v;
    v.reserve(P);
    for (int u = 0; u < P; ++u) {
      v.push_back(cached_invariant_suite(G, u, opts.sample, opts.seed, opts.use_cache, log));
      note(log, "[zestlab] invariant battery ready for u=" + std::to_string(u));
    }
    return v;
  });

  json zest_rec = stage("zest-reconstruction", log, [&] {
    json arr = json::array();
    for (int u = 0; u < P; ++u) {
      ModularData zested = zest_modular_data(md[0], canonical_zest_params(P, u));
      arr.push_back(json{{"u", u}, {"holds", md_tables_equal(zested, md[u])}});
    }
    return arr;
  });

  const auto triples =
      borromean_sample_triples(rank, md[0].labels, opts.sample, opts.seed);

  json comparisons = json::array();
  json st_pairs = json::array(), wt_pairs = json::array(), bt_pairs = json::array();
  json refuted_pairs = json::array();
  std::map<std::pair<int, int>, bool> refuted;

  stage("compare-ST", log, [&] {
    for (int u1 = 0; u1 < P; ++u1) {
      for (int u2 = u1 + 1; u2 < P; ++u2) {
        RelabelProblem pb;
        pb.exact = true;
        pb.left = side_from_md(md[u1], true);
        pb.right = side_from_md(md[u2], true);
        RelabelResult r = find_relabeling(pb, opts.limit);
        comparisons.push_back(comparison_json("S,T", u1, u2, r, nullptr));
        if (r.found) st_pairs.push_back(pair_json(u1, u2));
        if (!r.found && r.exhausted) refuted[{u1, u2}] = true;
        note(log, "[zestlab] compare set=S,T pair=(" + std::to_string(u1) + "," +
                      std::to_string(u2) + ") found=" + std::to_string(r.found) +
                      " nodes=" + std::to_string(r.nodes));
      }
    }
  });

  stage("compare-WT", log, [&] {
    for (int u1 = 0; u1 < P; ++u1) {
      for (int u2 = u1 + 1; u2 < P; ++u2) {
        RelabelProblem pb;
        pb.exact = true;
        pb.left = side_from_md(md[u1], false);
        pb.right = side_from_md(md[u2], false);
        attach_w(pb.left, suites[u1].W);
        attach_w(pb.right, suites[u2].W);
        RelabelResult r = find_relabeling(pb, opts.limit);
        comparisons.push_back(comparison_json("W,T", u1, u2, r, nullptr));
        if (r.found) wt_pairs.push_back(pair_json(u1, u2));
        if (!r.found && r.exhausted) refuted[{u1, u2}] = true;
        note(log, "[zestlab] compare set=W,T pair=(" + std::to_string(u1) + "," +
                      std::to_string(u2) + ") found=" + std::to_string(r.found) +
                      " nodes=" + std::to_string(r.nodes));
      }
    }
  });

  stage("compare-BT", log, [&] {
    for (int u1 = 0; u1 < P; ++u1) {
      for (int u2 = u1 + 1; u2 < P; ++u2) {
        RelabelProblem pb;
        pb.exact = true;
        pb.left = side_from_md(md[u1], false);
        pb.right = side_from_md(md[u2], false);
        TripleConstraint tc;
        tc.triples = triples;
        auto left = std::make_shared<BProvider>(G, u1, &suites[u1], bo_descriptor);
        auto right = std::make_shared<BProvider>(G, u2, &suites[u2], bo_descriptor);
        tc.left = [left](int x, int y, int z) { return (*left)(x, y, z); };
        tc.right = [right](int x, int y, int z) { return (*right)(x, y, z); };
        pb.triple = std::move(tc);
        EscalatedResult er = find_relabeling_escalated(pb);
        comparisons.push_back(comparison_json("B,T", u1, u2, er.result, &er));
        if (er.result.found) bt_pairs.push_back(pair_json(u1, u2));
        if (!er.result.found && er.result.exhausted) refuted[{u1, u2}] = true;
        note(log, "[zestlab] compare set=B,T pair=(" + std::to_string(u1) + "," +
                      std::to_string(u2) + ") found=" + std::to_string(er.result.found) +
                      " nodes=" + std::to_string(er.result.nodes) +
                      " escalation_rounds=" + std::to_string(er.rounds) +
                      " targeted_checks=" + std::to_string(er.targeted_checks));
      }
    }
  });

  for (const auto& [pr, flag] : refuted) {
    if (flag) refuted_pairs.push_back(pair_json(pr.first, pr.second));
  }
  out.distinguishable = !refuted_pairs.empty();

  json u_values = json::array();
  for (int u = 0; u < P; ++u) u_values.push_back(u);

  out.report = json{
      {"schema", "zestlab/experiment-report/v1"},
      {"group", json{{"p", G.p}, {"q", G.q}, {"n", G.n}, {"order", G.order()}}},
      {"rank", rank},
      {"backend", "exact"},
      {"options",
       json{{"sample", opts.sample}, {"seed", opts.seed}, {"limit", opts.limit}}},
      {"u_values", std::move(u_values)},
      {"zest_reconstruction", std::move(zest_rec)},
      {"comparisons", std::move(comparisons)},
      {"summary",
       json{{"distinguishable", out.distinguishable},
            {"st_witness_pairs", std::move(st_pairs)},
            {"wt_witness_pairs", std::move(wt_pairs)},
            {"bt_witness_pairs", std::move(bt_pairs)},
            {"verified_inequivalent_pairs", std::move(refuted_pairs)}}}};
  return out;
}

namespace {

struct CompareHeader {
  int p = 0, q = 0, n = 0, u = 0;
  long long rank = 0;
};

CompareHeader compare_header(const json& j, const char* what) {
  CompareHeader h;
  auto geti = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
      throw std::runtime_error(std::string(what) + ": missing integer field \"" + key + "\"");
    }
    return it->get<long long>();
  };
  h.p = static_cast<int>(geti("p"));
  h.q = static_cast<int>(geti("q"));
  h.n = static_cast<int>(geti("n"));
  h.u = static_cast<int>(geti("u"));
  h.rank = geti("rank");
  return h;
}

}  // namespace

CompareOutcome run_compare(const CompareRequest& req, std::ostream* log) {
  CompareOutcome out;
  CompareHeader hl = compare_header(req.left_md, "left modular data");
  CompareHeader hr = compare_header(req.right_md, "right modular data");

  json comparisons = json::array();
  json header = json{
      {"left", json{{"p", hl.p}, {"q", hl.q}, {"n", hl.n}, {"u", hl.u}}},
      {"right", json{{"p", hr.p}, {"q", hr.q}, {"n", hr.n}, {"u", hr.u}}}};

  // Rank mismatch is an immediate verified inequivalence, not an error.
  if (hl.rank != hr.rank) {
    out.verified_inequivalence = true;
    out.report = json{{"schema", "zestlab/compare-report/v1"},
                      {"header", std::move(header)},
                      {"backend", "none"},
                      {"escalated", false},
                      {"rank_mismatch", json::array({hl.rank, hr.rank})},
                      {"comparisons", json::array()},
                      {"witness_found", false},
                      {"verified_inequivalence", true}};
    return out;
  }

  if ((req.left_w.has_value()) != (req.right_w.has_value()) && !req.left_w.has_value()) {
    throw std::runtime_error("compare: --with-w requires a left-side W document");
  }
  if (req.left_b && !req.left_b->is_object()) {
    throw std::runtime_error("compare: malformed B document");
  }

  bool exact = modular_data_json_is_exact(req.left_md) &&
               modular_data_json_is_exact(req.right_md);

  // One attempt at the requested precision; on an ambiguous float
  // comparison, recompute everything exactly from the document headers.
  for (int attempt = 0;; ++attempt) {
    const bool escalated = attempt > 0;
    try {
      RelabelSide left_st, right_st;   // S,T sides
      RelabelSide left_t, right_t;     // T-only sides for W/B sets
      if (exact || escalated) {
        GroupSpec GL = make_group(hl.p, hl.q, hl.n);
        GroupSpec GR = make_group(hr.p, hr.q, hr.n);
        ModularData ml = escalated && !modular_data_json_is_exact(req.left_md)
                             ? cached_modular_data(GL, hl.u, req.use_cache, log)
                             : modular_data_from_json(req.left_md);
        ModularData mr = escalated && !modular_data_json_is_exact(req.right_md)
                             ? cached_modular_data(GR, hr.u, req.use_cache, log)
                             : modular_data_from_json(req.right_md);
        left_st = side_from_md(ml, true);
        right_st = side_from_md(mr, true);
        left_t = side_from_md(ml, false);
        right_t = side_from_md(mr, false);
      } else {
        ModularDataF ml = modular_data_float_from_json(req.left_md);
        ModularDataF mr = modular_data_float_from_json(req.right_md);
        left_st = side_from_md_float(ml, true);
        right_st = side_from_md_float(mr, true);
        left_t = side_from_md_float(ml, false);
        right_t = side_from_md_float(mr, false);
      }
      const bool mode_exact = exact || escalated;

      comparisons = json::array();
      bool all_found = true;
      bool any_refuted = false;

      {
        RelabelProblem pb;
        pb.exact = mode_exact;
        pb.left = left_st;
        pb.right = right_st;
        RelabelResult r = find_relabeling(pb, req.limit);
        comparisons.push_back(comparison_json("S,T", hl.u, hr.u, r, nullptr));
        all_found = all_found && r.found;
        any_refuted = any_refuted || (!r.found && r.exhausted);
      }

      if (req.left_w) {
        InvariantSuiteDoc wl = invariant_suite_from_json(*req.left_w);
        if (wl.p != hl.p || wl.q != hl.q || wl.n != hl.n || wl.u != hl.u) {
          throw std::runtime_error("compare: left W document header does not match");
        }
        InvariantSuite wr_suite;
        if (req.right_w) {
          InvariantSuiteDoc wr = invariant_suite_from_json(*req.right_w);
          if (wr.p != hr.p || wr.q != hr.q || wr.n != hr.n || wr.u != hr.u) {
            throw std::runtime_error("compare: right W document header does not match");
          }
          wr_suite = std::move(wr.suite);
        } else {
          GroupSpec GR = make_group(hr.p, hr.q, hr.n);
          wr_suite = cached_invariant_suite(GR, hr.u, wl.sample, wl.seed, req.use_cache, log);
        }
        RelabelProblem pb;
        pb.exact = mode_exact;
        pb.left = left_t;
        pb.right = right_t;
        attach_w(pb.left, wl.suite.W);
        attach_w(pb.right, wr_suite.W);
        RelabelResult r = find_relabeling(pb, req.limit);
        comparisons.push_back(comparison_json("W,T", hl.u, hr.u, r, nullptr));
        all_found = all_found && r.found;
        any_refuted = any_refuted || (!r.found && r.exhausted);
      }

      if (req.left_b) {
        InvariantSuiteDoc bl = invariant_suite_from_json(*req.left_b);
        if (bl.p != hl.p || bl.q != hl.q || bl.n != hl.n || bl.u != hl.u) {
          throw std::runtime_error("compare: left B document header does not match");
        }
        GroupSpec GL = make_group(hl.p, hl.q, hl.n);
        GroupSpec GR = make_group(hr.p, hr.q, hr.n);
        const auto bo_descriptor = canonical_links().at("borromean");
        auto left = std::make_shared<BProvider>(GL, hl.u, &bl.suite, bo_descriptor);
        const InvariantSuite* right_tbl = nullptr;
        InvariantSuiteDoc br_doc;
        if (req.right_b) {
          br_doc = invariant_suite_from_json(*req.right_b);
          if (br_doc.p != hr.p || br_doc.q != hr.q || br_doc.n != hr.n || br_doc.u != hr.u) {
            throw std::runtime_error("compare: right B document header does not match");
          }
          right_tbl = &br_doc.suite;
        }
        auto right = std::make_shared<BProvider>(GR, hr.u, right_tbl, bo_descriptor);
        RelabelProblem pb;
        pb.exact = mode_exact;
        pb.left = left_t;
        pb.right = right_t;
        TripleConstraint tc;
        tc.triples.reserve(bl.suite.borromean.size());
        for (const auto& s : bl.suite.borromean) tc.triples.push_back({s.X, s.Y, s.Z});
        tc.left = [left](int x, int y, int z) { return (*left)(x, y, z); };
        tc.right = [right](int x, int y, int z) { return (*right)(x, y, z); };
        pb.triple = std::move(tc);
        EscalatedResult er = find_relabeling_escalated(pb);
        comparisons.push_back(comparison_json("B,T", hl.u, hr.u, er.result, &er));
        all_found = all_found && er.result.found;
        any_refuted = any_refuted || (!er.result.found && er.result.exhausted);
      }

      out.witness_found = all_found;
      out.verified_inequivalence = any_refuted;
      out.report = json{{"schema", "zestlab/compare-report/v1"},
                        {"header", std::move(header)},
                        {"backend", mode_exact ? "exact" : "float"},
                        {"escalated", escalated},
                        {"comparisons", std::move(comparisons)},
                        {"witness_found", out.witness_found},
                        {"verified_inequivalence", out.verified_inequivalence}};
      return out;
    } catch (const std::runtime_error& e) {
      if (attempt == 0 && !exact &&
          std::string(e.what()).find("ambiguous float comparison") != std::string::npos) {
        note(log, "[zestlab] ambiguous float comparison; recomputing exactly");
        continue;
      }
      throw;
    }
  }
}

}  // namespace zestlab
