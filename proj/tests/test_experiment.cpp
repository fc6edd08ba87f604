#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "core/cache.hpp"
#include "core/experiment.hpp"
#include "core/group.hpp"
#include "core/json_io.hpp"
#include "core/twisted_double.hpp"

using namespace zestlab;
using nlohmann::json;

namespace {

struct TempCacheDir {
  std::filesystem::path dir;
  TempCacheDir() {
    dir = std::filesystem::temp_directory_path() /
          ("zestlab-cache-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter()++));
    setenv("ZESTLAB_CACHE", dir.c_str(), 1);
  }
  ~TempCacheDir() {
    unsetenv("ZESTLAB_CACHE");
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

const json* find_comparison(const json& report, const std::string& lead_constraint,
                            int u1, int u2) {
  for (const auto& c : report.at("comparisons")) {
    if (c.at("constraints")[0] == lead_constraint && c.at("pair")[0] == u1 &&
        c.at("pair")[1] == u2) {
      return &c;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("fnv1a and cache round trips") {
  // Reference FNV-1a 64-bit values.
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);

  TempCacheDir tmp;
  CHECK(cache_root() == tmp.dir.string());
  CHECK(!cache_get("missing").has_value());
  cache_put("key-1", "payload-1");
  auto hit = cache_get("key-1");
  REQUIRE(hit.has_value());
  CHECK(*hit == "payload-1");
  cache_put("key-1", "payload-2");
  CHECK(*cache_get("key-1") == "payload-2");
  // A damaged entry reads as a miss.
  cache_put("key-2", "x");
  bool damaged = false;
  for (const auto& e : std::filesystem::directory_iterator(tmp.dir)) {
    std::ifstream in(e.path());
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str().find("key-2") != std::string::npos) {
      std::ofstream out(e.path(), std::ios::trunc);
      out << "not json";
      damaged = true;
    }
  }
  CHECK(damaged);
  CHECK(!cache_get("key-2").has_value());
  CHECK(*cache_get("key-1") == "payload-2");
}

TEST_CASE("cached computations hit the store and round-trip exactly") {
  TempCacheDir tmp;
  GroupSpec G = make_group(3, 7);
  ModularData cold = cached_modular_data(G, 1, true, nullptr);
  ModularData warm = cached_modular_data(G, 1, true, nullptr);
  REQUIRE(cold.labels.size() == warm.labels.size());
  for (size_t i = 0; i < cold.T.size(); ++i) CHECK(cold.T[i] == warm.T[i]);
  for (size_t i = 0; i < cold.S.size(); ++i) {
    for (size_t j = 0; j < cold.S.size(); ++j) CHECK(cold.S[i][j] == warm.S[i][j]);
  }
  InvariantSuite s_cold = cached_invariant_suite(G, 1, 40, 9, true, nullptr);
  InvariantSuite s_warm = cached_invariant_suite(G, 1, 40, 9, true, nullptr);
  REQUIRE(s_cold.borromean.size() == s_warm.borromean.size());
  for (size_t i = 0; i < s_cold.W.size(); ++i) {
    for (size_t j = 0; j < s_cold.W.size(); ++j) CHECK(s_cold.W[i][j] == s_warm.W[i][j]);
  }
  for (size_t i = 0; i < s_cold.borromean.size(); ++i) {
    CHECK(s_cold.borromean[i].value == s_warm.borromean[i].value);
    CHECK(s_cold.borromean[i].X == s_warm.borromean[i].X);
  }
}

TEST_CASE("small group experiment: everything distinct, reconstruction holds, reports deterministic") {
  TempCacheDir tmp;
  ExperimentOptions opts;
  opts.sample = 150;
  opts.seed = 11;
  std::ostringstream log;
  ExperimentOutcome a = run_isotope_experiment(3, 7, opts, &log);
  ExperimentOutcome b = run_isotope_experiment(3, 7, opts, nullptr);  // warm cache
  CHECK(a.report.dump(1) == b.report.dump(1));
  CHECK(log.str().find("stage=compare-BT") != std::string::npos);

  const json& rep = a.report;
  CHECK(rep.at("schema") == "zestlab/experiment-report/v1");
  CHECK(rep.at("group").at("p") == 3);
  CHECK(rep.at("group").at("q") == 7);
  CHECK(rep.at("rank") == 25);
  CHECK(rep.at("u_values").size() == 3);

  for (const auto& z : rep.at("zest_reconstruction")) CHECK(z.at("holds") == true);

  // 3 pairs x 3 constraint sets; every comparison exhausted with no witness.
  CHECK(rep.at("comparisons").size() == 9);
  for (const auto& c : rep.at("comparisons")) {
    CHECK(c.at("witness_found") == false);
    CHECK(c.at("witnesses").empty());
    CHECK(c.at("certificate").at("exhausted") == true);
  }
  CHECK(a.distinguishable);
  CHECK(rep.at("summary").at("distinguishable") == true);
  CHECK(rep.at("summary").at("st_witness_pairs").empty());
  CHECK(rep.at("summary").at("wt_witness_pairs").empty());
  CHECK(rep.at("summary").at("bt_witness_pairs").empty());
  CHECK(rep.at("summary").at("verified_inequivalent_pairs").size() == 3);
}

TEST_CASE("large group experiment: raw data pairs up, link invariants tell the pairs apart") {
  TempCacheDir tmp;
  ExperimentOptions opts;  // defaults: sample 500, seed 2026
  std::ostringstream log;
  ExperimentOutcome out = run_isotope_experiment(5, 11, opts, &log);
  const json& rep = out.report;

  CHECK(rep.at("rank") == 49);
  for (const auto& z : rep.at("zest_reconstruction")) CHECK(z.at("holds") == true);

  // Raw modular data: witnesses exactly at the Galois pairs.
  std::set<std::pair<int, int>> st_found;
  for (const auto& pr : rep.at("summary").at("st_witness_pairs")) {
    st_found.insert({pr[0].get<int>(), pr[1].get<int>()});
  }
  CHECK(st_found == std::set<std::pair<int, int>>{{1, 4}, {2, 3}});

  // W+T and B+T leave nothing equivalent.
  CHECK(rep.at("summary").at("wt_witness_pairs").empty());
  CHECK(rep.at("summary").at("bt_witness_pairs").empty());
  CHECK(out.distinguishable);
  // Every pair of distinct twistings is refuted by some constraint set.
  CHECK(rep.at("summary").at("verified_inequivalent_pairs").size() == 10);

  // The Galois pairs need escalation: the seeded sample admits a near-miss.
  const json* bt14 = find_comparison(rep, "B-sample", 1, 4);
  REQUIRE(bt14 != nullptr);
  CHECK(bt14->at("certificate").at("escalation_rounds").get<int>() >= 1);
  CHECK(bt14->at("certificate").at("exhausted") == true);
  const json* st14 = find_comparison(rep, "S", 1, 4);
  REQUIRE(st14 != nullptr);
  CHECK(st14->at("witness_found") == true);
  REQUIRE(st14->at("witnesses").size() == 1);
  CHECK(st14->at("witnesses")[0].at("verified") == true);
  CHECK(st14->at("witnesses")[0].at("permutation").size() == 49);
}

TEST_CASE("file-level compare: self, cross, rank mismatch, and W attachment") {
  TempCacheDir tmp;
  GroupSpec G = make_group(3, 7);
  ModularData md1 = cached_modular_data(G, 1, true, nullptr);
  ModularData md2 = cached_modular_data(G, 2, true, nullptr);
  json j1 = modular_data_to_json(md1);
  json j2 = modular_data_to_json(md2);

  CompareRequest self;
  self.left_md = j1;
  self.right_md = j1;
  CompareOutcome so = run_compare(self, nullptr);
  CHECK(so.witness_found);
  CHECK(!so.verified_inequivalence);
  CHECK(so.report.at("comparisons").size() == 1);

  CompareRequest cross;
  cross.left_md = j1;
  cross.right_md = j2;
  CompareOutcome co = run_compare(cross, nullptr);
  CHECK(!co.witness_found);
  CHECK(co.verified_inequivalence);

  // Float documents compare cleanly through the 1e-7 gate.
  CompareRequest fl;
  fl.left_md = modular_data_to_json_float(md1);
  fl.right_md = modular_data_to_json_float(md1);
  CompareOutcome fo = run_compare(fl, nullptr);
  CHECK(fo.witness_found);
  CHECK(fo.report.at("backend") == "float");

  // Rank mismatch is a verdict, not an error.
  GroupSpec G2 = make_group(5, 11);
  CompareRequest rm;
  rm.left_md = j1;
  rm.right_md = modular_data_to_json(cached_modular_data(G2, 1, true, nullptr));
  CompareOutcome ro = run_compare(rm, nullptr);
  CHECK(ro.verified_inequivalence);
  CHECK(!ro.witness_found);
  CHECK(ro.report.contains("rank_mismatch"));

  // W attached on the left only: the right side is recomputed and the
  // comparison still rules the pair out.
  InvariantSuite s1 = cached_invariant_suite(G, 1, 60, 5, true, nullptr);
  CompareRequest ww;
  ww.left_md = j1;
  ww.right_md = j2;
  ww.left_w = invariant_suite_to_json(G, 1, 60, 5, s1);
  CompareOutcome wo = run_compare(ww, nullptr);
  CHECK(wo.verified_inequivalence);
  CHECK(wo.report.at("comparisons").size() == 2);

  // B attached on the left only.
  CompareRequest bb;
  bb.left_md = j1;
  bb.right_md = j2;
  bb.left_b = invariant_suite_to_json(G, 1, 60, 5, s1);
  CompareOutcome bo = run_compare(bb, nullptr);
  CHECK(bo.verified_inequivalence);
  CHECK(bo.report.at("comparisons").size() == 2);

  // Self-compare with W and B: witnesses under every set.
  CompareRequest full;
  full.left_md = j1;
  full.right_md = j1;
  full.left_w = ww.left_w;
  full.right_w = ww.left_w;
  full.left_b = bb.left_b;
  full.right_b = bb.left_b;
  CompareOutcome fu = run_compare(full, nullptr);
  CHECK(fu.witness_found);
  CHECK(!fu.verified_inequivalence);
  CHECK(fu.report.at("comparisons").size() == 3);
}
