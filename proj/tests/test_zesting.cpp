#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "core/json_io.hpp"
#include "core/zesting.hpp"

using namespace zestlab;
using nlohmann::json;

TEST_CASE("braid word parsing accepts the grammar and rejects junk") {
  BraidWord w = parse_braid_word("s1 s2^-1  s1^-1\ts2", 3);
  REQUIRE(w.letters.size() == 4);
  CHECK(w.letters[0] == std::pair{1, 1});
  CHECK(w.letters[1] == std::pair{2, -1});
  CHECK(w.letters[2] == std::pair{1, -1});
  CHECK(w.letters[3] == std::pair{2, 1});
  CHECK(parse_braid_word("", 3).letters.empty());
  CHECK_THROWS_AS(parse_braid_word("s3", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s0", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s1^2", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s1^1", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("t1", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s1x", 3), std::runtime_error);
  CHECK_THROWS_AS(parse_braid_word("s1", 1), std::runtime_error);
}

TEST_CASE("closure combinatorics of the curated words") {
  const auto& links = canonical_links();

  // Two components; the strand-2 component is a single unknotted circle,
  // the two outer strands close into one component of self-writhe -1, and
  // the linking number between the two components vanishes.
  ClosureInfo wh = analyze_closure(links.at("whitehead").word);
  CHECK(wh.num_components == 2);
  CHECK(wh.component_of == std::vector<int>{0, 1, 0});
  CHECK(wh.self_writhe == std::vector<long long>{-1, 0});
  CHECK(wh.cross_sum[0][1] == 0);
  CHECK(wh.total_writhe == -1);

  // Three components, pairwise unlinked, zero self-writhes.
  ClosureInfo bo = analyze_closure(links.at("borromean").word);
  CHECK(bo.num_components == 3);
  CHECK(bo.component_of == std::vector<int>{0, 1, 2});
  for (int c = 0; c < 3; ++c) CHECK(bo.self_writhe[c] == 0);
  CHECK(bo.cross_sum[0][1] == 0);
  CHECK(bo.cross_sum[0][2] == 0);
  CHECK(bo.cross_sum[1][2] == 0);
  CHECK(bo.total_writhe == 0);

  // A knot: one component of writhe -4.
  ClosureInfo f2 = analyze_closure(links.at("five2").word);
  CHECK(f2.num_components == 1);
  CHECK(f2.self_writhe == std::vector<long long>{-4});
  CHECK(f2.total_writhe == -4);
}

TEST_CASE("framing exponents per mode") {
  LinkDescriptor d = canonical_links().at("whitehead");
  ClosureInfo ci = analyze_closure(d.word);
  CHECK(framing_exponents(d, ci) == std::vector<long long>{0, -1});
  d.framing = FramingMode::AsDrawn;
  CHECK(framing_exponents(d, ci) == std::vector<long long>{0, 0});
  d.framing = FramingMode::ZeroFramed;
  CHECK(framing_exponents(d, ci) == std::vector<long long>{1, 0});
  d.framing = FramingMode::Explicit;
  d.exponents = {1, 2, 3};
  CHECK_THROWS_AS(framing_exponents(d, ci), std::runtime_error);
}

TEST_CASE("link descriptors round-trip through JSON and match the data file") {
  for (const auto& [name, d] : canonical_links()) {
    LinkDescriptor back = descriptor_from_json(descriptor_to_json(d));
    CHECK(back.word.strands == d.word.strands);
    CHECK(back.word.letters == d.word.letters);
    CHECK(back.framing == d.framing);
    CHECK(back.exponents == d.exponents);
  }
  json on_disk = read_json_file(std::string(ZESTLAB_SOURCE_DIR) +
                                "/data/braid_words.json");
  CHECK(on_disk == canonical_links_json());
  CHECK_THROWS_AS(descriptor_from_json(json{{"strands", 3}}),
                  std::runtime_error);
  CHECK_THROWS_AS(
      descriptor_from_json(json{{"strands", 3},
                                {"word", "s1"},
                                {"framing", {{"mode", "nonsense"}}}}),
      std::runtime_error);
}

TEST_CASE("canonical zesting parameters and their numeric values") {
  for (int p : {3, 5}) {
    auto all = enumerate_zestings(p);
    REQUIRE(static_cast<int>(all.size()) == p);
    for (int u = 0; u < p; ++u) {
      const ZestParams& zp = all[u];
      CHECK(zp.N == p);
      CHECK(zp.a == 2 * u % p);
      CHECK(zp.b == u);
      CHECK(zp.s == CycNum::root_of_unity(p * p, -u));
      // s = exp(-2 pi i u / p^2) numerically.
      std::complex<double> expect =
          std::exp(std::complex<double>(0, -2 * std::numbers::pi * u / (p * p)));
      CHECK(std::abs(zp.s.to_complex() - expect) < 1e-12);
    }
  }
  // The p = 5 family pairs (a, b) with s = e^{-2 pi i b / 25}:
  // (2,1), (4,2), (1,3), (3,4).
  auto z5 = enumerate_zestings(5);
  CHECK(z5[1].a == 2);
  CHECK(z5[2].a == 4);
  CHECK(z5[3].a == 1);
  CHECK(z5[4].a == 3);
}

TEST_CASE("zesting parameter validation") {
  ZestParams zp = canonical_zest_params(5, 2);
  validate_zest_params(zp);
  ZestParams bad = zp;
  bad.a = 3;  // breaks a = 2b
  CHECK_THROWS_AS(validate_zest_params(bad), std::runtime_error);
  bad = zp;
  bad.s = CycNum::root_of_unity(25, -1);  // wrong s for b = 2
  CHECK_THROWS_AS(validate_zest_params(bad), std::runtime_error);
  bad = zp;
  bad.s = CycNum();
  CHECK_THROWS_AS(validate_zest_params(bad), std::runtime_error);
  bad = zp;
  bad.b = 7;
  CHECK_THROWS_AS(validate_zest_params(bad), std::runtime_error);
  // A non-canonical but valid triple: s twisted by an N-th root of unity.
  ZestParams alt = zp;
  alt.s = zp.s * CycNum::root_of_unity(5, 3);
  validate_zest_params(alt);
  // JSON round trip.
  ZestParams back = zest_params_from_json(zest_params_to_json(alt));
  CHECK(zest_params_equal(back, alt));
}

TEST_CASE("lambda_b is a 3-cocycle on the grading group") {
  for (int p : {3, 5}) {
    for (int u = 0; u < p; ++u) {
      ZestParams zp = canonical_zest_params(p, u);
      auto lam = [&](int i, int j, int k) {
        return zest_data(zp, i, j, k % p).lambda_b;
      };
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
          for (int k = 0; k < p; ++k) {
            for (int m = 0; m < p; ++m) {
              CycNum lhs = lam(j, k, m) * lam(i, (j + k) % p, m) * lam(i, j, k);
              CycNum rhs = lam((i + j) % p, k, m) * lam(i, j, (k + m) % p);
              CHECK(lhs == rhs);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("zest data: twist over self-braiding is neutral") {
  for (int p : {3, 5}) {
    for (int u = 0; u < p; ++u) {
      ZestParams zp = canonical_zest_params(p, u);
      for (int i = 0; i < p; ++i) {
        ZestData zd = zest_data(zp, i, i, 0);
        CHECK(zd.f / zd.t == CycNum(1));
        CHECK(zd.f == zp.s.pow(-static_cast<long long>(i) * i));
      }
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
          CHECK(zest_data(zp, i, j, 0).lambda_a ==
                (i + j >= p ? zp.a : 0));
        }
      }
    }
  }
}

TEST_CASE("zesting the untwisted double reproduces every twisted double") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    ModularData base = twisted_double_modular_data(G, 0);
    for (int u = 0; u < p; ++u) {
      ModularData target = twisted_double_modular_data(G, u);
      ModularData zested = zest_modular_data(base, canonical_zest_params(p, u));
      const size_t rank = base.labels.size();
      for (size_t i = 0; i < rank; ++i) {
        CHECK(zested.T[i] == target.T[i]);
        for (size_t j = 0; j < rank; ++j) {
          CHECK(zested.S[i][j] == target.S[i][j]);
        }
      }
    }
  }
}

TEST_CASE("zesting parameters form a group acting on modular data") {
  GroupSpec G = make_group(3, 7);
  ModularData md = twisted_double_modular_data(G, 1);
  auto same = [](const ModularData& x, const ModularData& y) {
    for (size_t i = 0; i < x.labels.size(); ++i) {
      if (!(x.T[i] == y.T[i])) return false;
      for (size_t j = 0; j < x.labels.size(); ++j) {
        if (!(x.S[i][j] == y.S[i][j])) return false;
      }
    }
    return true;
  };
  auto zs = enumerate_zestings(3);
  for (const auto& P1 : zs) {
    // Identity and inverses.
    CHECK(zest_params_equal(compose(P1, invert(P1)), canonical_zest_params(3, 0)));
    CHECK(same(zest_modular_data(zest_modular_data(md, P1), invert(P1)), md));
    for (const auto& P2 : zs) {
      // Action compatibility with composition.
      CHECK(same(zest_modular_data(zest_modular_data(md, P1), P2),
                 zest_modular_data(md, compose(P1, P2))));
      // Commutativity of the parameter group.
      CHECK(zest_params_equal(compose(P1, P2), compose(P2, P1)));
    }
  }
  // Float view transforms compatibly.
  ModularDataF mf = to_float(md);
  ModularDataF zf = zest_modular_data(mf, zs[2]);
  ModularDataF ze = to_float(zest_modular_data(md, zs[2]));
  for (size_t i = 0; i < mf.labels.size(); ++i) {
    CHECK(std::abs(zf.T[i] - ze.T[i]) < 1e-12);
    for (size_t j = 0; j < mf.labels.size(); ++j) {
      CHECK(std::abs(zf.S[i][j] - ze.S[i][j]) < 1e-12);
    }
  }
}

TEST_CASE("zest link scalars: closed forms for the curated closures") {
  const auto& links = canonical_links();
  for (int p : {3, 5}) {
    for (int u = 0; u < p; ++u) {
      ZestParams zp = canonical_zest_params(p, u);
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
          CycNum got = zest_link_scalar(links.at("whitehead"), zp, {i, j, i});
          CHECK(got == zp.s.pow(static_cast<long long>(i) * i +
                                static_cast<long long>(j) * j));
          for (int k = 0; k < p; ++k) {
            CHECK(zest_link_scalar(links.at("borromean"), zp, {i, j, k}) ==
                  CycNum(1));
          }
        }
        CHECK(zest_link_scalar(links.at("five2"), zp, {i, i, i}) ==
              zp.s.pow(4ll * i * i));
      }
    }
  }
  // Inconsistent gradings on a component are rejected.
  ZestParams zp = canonical_zest_params(5, 1);
  CHECK_THROWS_AS(zest_link_scalar(links.at("whitehead"), zp, {1, 2, 3}),
                  std::runtime_error);
  CHECK_THROWS_AS(zest_link_scalar(links.at("five2"), zp, {1, 1, 2}),
                  std::runtime_error);
  CHECK_THROWS_AS(zest_link_scalar(links.at("five2"), zp, {1, 1}),
                  std::runtime_error);
  CHECK_THROWS_AS(zest_link_scalar(links.at("five2"), zp, {1, 1, 7}),
                  std::runtime_error);
}

TEST_CASE("zest link scalar is constant on conjugated and stabilized words") {
  // The scalar must not depend on where sigma_2 letters sit when all three
  // gradings agree (single-color knots through any 3-strand word).
  for (int u = 0; u < 5; ++u) {
    ZestParams zp = canonical_zest_params(5, u);
    LinkDescriptor d;
    d.framing = FramingMode::AsDrawn;
    d.word = parse_braid_word("s1 s2 s1 s2 s1 s2", 3);
    CycNum a = zest_link_scalar(d, zp, {2, 2, 2});
    d.word = parse_braid_word("s2 s1 s2 s1 s2 s1", 3);
    CycNum b = zest_link_scalar(d, zp, {2, 2, 2});
    CHECK(a == b);
    CHECK(a == zp.s.pow(-6ll * 4));
  }
}
