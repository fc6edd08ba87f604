// Round trips through the shared-library C surface: handles, JSON
// serialization, zesting, link invariants, comparisons, and the error
// contract. Everything here goes through zestlab.h only — no core headers —
// so the test doubles as a check that the exported API is self-sufficient.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include <json.hpp>

#include "zestlab/zestlab.h"

using nlohmann::json;

namespace {

// Wraps a `char*` result so every exit path frees it.
struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { zl_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct OwnedData {
  zl_modular_data* h = nullptr;
  ~OwnedData() { zl_modular_data_free(h); }
};

json parse(const OwnedString& s) { return json::parse(s.str()); }

}  // namespace

TEST_CASE("version and error baseline") {
  REQUIRE(zl_version() != nullptr);
  CHECK(std::string(zl_version()) == "1.0.0");
  CHECK(std::string(zl_last_error()).empty());
  zl_string_free(nullptr);        // explicit no-ops
  zl_modular_data_free(nullptr);
  CHECK(zl_modular_data_rank(nullptr) == -1);
  CHECK(zl_modular_data_is_exact(nullptr) == 0);
}

TEST_CASE("modular data: compute, serialize, round trip") {
  OwnedData md;
  REQUIRE(zl_modular_data_compute(3, 7, 0, 1, &md.h) == ZL_OK);
  REQUIRE(md.h != nullptr);
  CHECK(zl_modular_data_rank(md.h) == 25);
  CHECK(zl_modular_data_is_exact(md.h) == 1);

  OwnedString exact_doc;
  REQUIRE(zl_modular_data_to_json(md.h, 0, &exact_doc.s) == ZL_OK);
  json j = parse(exact_doc);
  CHECK(j["p"] == 3);
  CHECK(j["q"] == 7);
  CHECK(j["u"] == 1);
  CHECK(j["backend"] == "exact");
  CHECK(j["rank"] == 25);

  // Exact documents survive a parse/serialize cycle byte for byte.
  OwnedData back;
  REQUIRE(zl_modular_data_from_json(exact_doc.s, &back.h) == ZL_OK);
  CHECK(zl_modular_data_is_exact(back.h) == 1);
  OwnedString again;
  REQUIRE(zl_modular_data_to_json(back.h, 0, &again.s) == ZL_OK);
  CHECK(again.str() == exact_doc.str());

  // Float documents parse to float-backed handles that refuse exact output.
  OwnedString float_doc;
  REQUIRE(zl_modular_data_to_json(md.h, 1, &float_doc.s) == ZL_OK);
  CHECK(parse(float_doc)["backend"] == "float");
  OwnedData fh;
  REQUIRE(zl_modular_data_from_json(float_doc.s, &fh.h) == ZL_OK);
  CHECK(zl_modular_data_is_exact(fh.h) == 0);
  CHECK(zl_modular_data_rank(fh.h) == 25);
  OwnedString refused;
  CHECK(zl_modular_data_to_json(fh.h, 0, &refused.s) == ZL_ERROR);
  CHECK(std::string(zl_last_error()).find("float-backed") != std::string::npos);
  OwnedString float_again;
  REQUIRE(zl_modular_data_to_json(fh.h, 1, &float_again.s) == ZL_OK);
  CHECK(float_again.str() == float_doc.str());
}

TEST_CASE("error contract") {
  zl_modular_data* h = nullptr;
  CHECK(zl_modular_data_compute(4, 7, 0, 0, &h) == ZL_ERROR);
  CHECK(h == nullptr);
  CHECK(!std::string(zl_last_error()).empty());

  CHECK(zl_modular_data_from_json("this is not json", &h) == ZL_ERROR);
  CHECK(h == nullptr);

  CHECK(zl_modular_data_compute(3, 7, 0, 0, nullptr) == ZL_ERROR);
  CHECK(std::string(zl_last_error()).find("NULL") != std::string::npos);

  // A successful call clears the sticky message.
  OwnedData ok;
  REQUIRE(zl_modular_data_compute(3, 7, 0, 0, &ok.h) == ZL_OK);
  CHECK(std::string(zl_last_error()).empty());
}

TEST_CASE("zesting through the C surface") {
  OwnedData md0;
  REQUIRE(zl_modular_data_compute(3, 7, 0, 0, &md0.h) == ZL_OK);
  OwnedString base;
  REQUIRE(zl_modular_data_to_json(md0.h, 0, &base.s) == ZL_OK);

  // u = 0 is the identity zesting.
  OwnedData zid;
  REQUIRE(zl_zest_u(md0.h, 0, &zid.h) == ZL_OK);
  OwnedString zid_doc;
  REQUIRE(zl_modular_data_to_json(zid.h, 0, &zid_doc.s) == ZL_OK);
  CHECK(zid_doc.str() == base.str());

  // The u shorthand agrees with the explicit (a, b, s) triple.
  OwnedData zu, zabs;
  REQUIRE(zl_zest_u(md0.h, 1, &zu.h) == ZL_OK);
  REQUIRE(zl_zest_abs(md0.h, 2, 1, 9, -1, &zabs.h) == ZL_OK);
  OwnedString zu_doc, zabs_doc;
  REQUIRE(zl_modular_data_to_json(zu.h, 0, &zu_doc.s) == ZL_OK);
  REQUIRE(zl_modular_data_to_json(zabs.h, 0, &zabs_doc.s) == ZL_OK);
  CHECK(zu_doc.str() == zabs_doc.str());
  CHECK(zu_doc.str() != base.str());

  // Invalid triples are rejected with a message.
  zl_modular_data* bad = nullptr;
  CHECK(zl_zest_abs(md0.h, 1, 1, 9, -1, &bad) == ZL_ERROR);
  CHECK(bad == nullptr);
  CHECK(!std::string(zl_last_error()).empty());

  // Float-backed handles zest too, consistently with the exact path.
  OwnedString float_doc;
  REQUIRE(zl_modular_data_to_json(md0.h, 1, &float_doc.s) == ZL_OK);
  OwnedData fh;
  REQUIRE(zl_modular_data_from_json(float_doc.s, &fh.h) == ZL_OK);
  OwnedData fz;
  REQUIRE(zl_zest_u(fh.h, 1, &fz.h) == ZL_OK);
  CHECK(zl_modular_data_is_exact(fz.h) == 0);
  OwnedString fz_doc, zu_float_doc;
  REQUIRE(zl_modular_data_to_json(fz.h, 1, &fz_doc.s) == ZL_OK);
  REQUIRE(zl_modular_data_to_json(zu.h, 1, &zu_float_doc.s) == ZL_OK);
  json a = parse(fz_doc), b = parse(zu_float_doc);
  REQUIRE(a["S"].size() == b["S"].size());
  for (size_t i = 0; i < a["T"].size(); ++i) {
    for (int part = 0; part < 2; ++part) {
      CHECK(std::abs(a["T"][i][part].get<double>() -
                     b["T"][i][part].get<double>()) < 1e-12);
    }
  }
}

TEST_CASE("link invariants and the battery document") {
  OwnedString hopf;
  int colors[2] = {0, 0};
  REQUIRE(zl_link_invariant_json(3, 7, 0, 1, "s1 s1", colors, 2, 0,
                                 &hopf.s) == ZL_OK);
  json j = parse(hopf);
  CHECK(j["schema"] == "zestlab/link-invariant/v1");
  CHECK(j["components"] == 2);
  CHECK(j["framing"] == "as_drawn");
  CHECK(j["colors"] == json::array({0, 0}));
  // Unit-colored Hopf closure: quantum trace 1.
  CHECK(j["value_float"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["value_float"][1].get<double>() == doctest::Approx(0.0));

  OwnedString framed;
  REQUIRE(zl_link_invariant_json(3, 7, 0, 1, "s1 s1", colors, 2, 1,
                                 &framed.s) == ZL_OK);
  CHECK(parse(framed)["framing"] == "zero_framed");

  OwnedString bad;
  CHECK(zl_link_invariant_json(3, 7, 0, 1, "s9", colors, 2, 0, &bad.s) ==
        ZL_ERROR);
  int out_of_range[2] = {99, 99};
  CHECK(zl_link_invariant_json(3, 7, 0, 1, "s1 s1", out_of_range, 2, 0,
                               &bad.s) == ZL_ERROR);

  OwnedString suite;
  REQUIRE(zl_invariants_json(3, 7, 0, 1, "w", 12, 5, 0, &suite.s) == ZL_OK);
  json sj = parse(suite);
  CHECK(sj["which"] == "w");
  CHECK(sj["sample"] == 12);
  CHECK(sj["seed"] == 5);
  CHECK(sj["W"].size() == 25);
  CHECK(sj["five2"].size() == 25);
  CHECK(sj["borromean"].size() == 12);

  OwnedString rejected;
  CHECK(zl_invariants_json(3, 7, 0, 1, "x", 12, 5, 0, &rejected.s) ==
        ZL_ERROR);
  CHECK(std::string(zl_last_error()).find("which") != std::string::npos);
}

TEST_CASE("compare and experiment status codes") {
  OwnedData md1, md2;
  REQUIRE(zl_modular_data_compute(3, 7, 0, 1, &md1.h) == ZL_OK);
  REQUIRE(zl_modular_data_compute(3, 7, 0, 2, &md2.h) == ZL_OK);
  OwnedString d1, d2;
  REQUIRE(zl_modular_data_to_json(md1.h, 0, &d1.s) == ZL_OK);
  REQUIRE(zl_modular_data_to_json(md2.h, 0, &d2.s) == ZL_OK);

  OwnedString self_report;
  REQUIRE(zl_compare_json(d1.s, d1.s, nullptr, nullptr, nullptr, nullptr, 1,
                          0, &self_report.s) == ZL_OK);
  json sr = parse(self_report);
  CHECK(sr["witness_found"] == true);
  CHECK(sr["verified_inequivalence"] == false);

  OwnedString cross_report;
  REQUIRE(zl_compare_json(d1.s, d2.s, nullptr, nullptr, nullptr, nullptr, 1,
                          0, &cross_report.s) == ZL_DISTINGUISHABLE);
  json cr = parse(cross_report);
  CHECK(cr["witness_found"] == false);
  CHECK(cr["verified_inequivalence"] == true);

  OwnedString report;
  REQUIRE(zl_experiment_json(3, 7, 60, 7, 1, 0, 0, &report.s) ==
          ZL_DISTINGUISHABLE);
  json er = parse(report);
  CHECK(er["schema"] == "zestlab/experiment-report/v1");
  CHECK(er["summary"]["distinguishable"] == true);
  CHECK(er["options"]["sample"] == 60);

  OwnedString err;
  CHECK(zl_compare_json(d1.s, d2.s, nullptr, nullptr, nullptr, nullptr, 0, 0,
                        &err.s) == ZL_ERROR);
  CHECK(zl_experiment_json(4, 6, 60, 7, 1, 0, 0, &err.s) == ZL_ERROR);
}
