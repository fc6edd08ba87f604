#include "core/zesting.hpp"

#include <stdexcept>

namespace zestlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

int carry(int N, int i, int j) { return i + j >= N ? 1 : 0; }

int norm_mod(long long v, int N) {
  long long r = v % N;
  return static_cast<int>(r < 0 ? r + N : r);
}

}  // namespace

void validate_zest_params(const ZestParams& zp) {
  if (zp.N < 1) fail("zesting: N must be positive");
  if (zp.a < 0 || zp.a >= zp.N || zp.b < 0 || zp.b >= zp.N) {
    fail("zesting: a and b must be residues mod N");
  }
  if ((zp.a - 2 * zp.b) % zp.N != 0) fail("zesting: need a = 2b (mod N)");
  if (zp.s.is_zero()) fail("zesting: s must be nonzero");
  CycNum lhs = zp.s.pow(zp.N) * CycNum::root_of_unity(2ll * zp.N, 2ll * zp.b);
  if (!(lhs == CycNum(1))) {
    fail("zesting: need s^N * zeta_{2N}^{2b} = 1");
  }
}

ZestParams canonical_zest_params(int N, int u) {
  if (N < 1) fail("zesting: N must be positive");
  ZestParams zp;
  zp.N = N;
  zp.b = norm_mod(u, N);
  zp.a = norm_mod(2ll * u, N);
  zp.s = CycNum::root_of_unity(static_cast<long long>(N) * N, -zp.b);
  validate_zest_params(zp);
  return zp;
}

std::vector<ZestParams> enumerate_zestings(int N) {
  std::vector<ZestParams> out;
  out.reserve(N);
  for (int u = 0; u < N; ++u) out.push_back(canonical_zest_params(N, u));
  return out;
}

ZestParams compose(const ZestParams& x, const ZestParams& y) {
  if (x.N != y.N) fail("zesting: cannot compose different grading groups");
  ZestParams zp;
  zp.N = x.N;
  zp.a = norm_mod(static_cast<long long>(x.a) + y.a, x.N);
  zp.b = norm_mod(static_cast<long long>(x.b) + y.b, x.N);
  zp.s = x.s * y.s;
  validate_zest_params(zp);
  return zp;
}

ZestParams invert(const ZestParams& x) {
  ZestParams zp;
  zp.N = x.N;
  zp.a = norm_mod(-static_cast<long long>(x.a), x.N);
  zp.b = norm_mod(-static_cast<long long>(x.b), x.N);
  zp.s = x.s.inverse();
  validate_zest_params(zp);
  return zp;
}

bool zest_params_equal(const ZestParams& x, const ZestParams& y) {
  return x.N == y.N && x.a == y.a && x.b == y.b && x.s == y.s;
}

json zest_params_to_json(const ZestParams& zp) {
  return json{
      {"N", zp.N}, {"a", zp.a}, {"b", zp.b}, {"s", cyc_to_json(zp.s)}};
}

ZestParams zest_params_from_json(const json& j) {
  for (const char* key : {"N", "a", "b"}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      fail(std::string("zesting params: missing integer \"") + key + "\"");
    }
  }
  if (!j.contains("s")) fail("zesting params: missing \"s\"");
  ZestParams zp;
  zp.N = j["N"].get<int>();
  zp.a = j["a"].get<int>();
  zp.b = j["b"].get<int>();
  zp.s = cyc_from_json(j["s"]);
  validate_zest_params(zp);
  return zp;
}

ZestData zest_data(const ZestParams& zp, int i, int j, int k) {
  if (i < 0 || i >= zp.N || j < 0 || j >= zp.N || k < 0 || k >= zp.N) {
    fail("zest_data: gradings must be residues mod N");
  }
  ZestData zd;
  int c = carry(zp.N, i, j);
  zd.lambda_a = c ? zp.a : 0;
  zd.lambda_b = CycNum::root_of_unity(2ll * zp.N,
                                      2ll * zp.b * k % (2 * zp.N) * c);
  zd.t = zp.s.pow(-static_cast<long long>(i) * j);
  zd.f = zp.s.pow(-static_cast<long long>(i) * i);
  return zd;
}

ModularData zest_modular_data(const ModularData& md, const ZestParams& zp) {
  if (zp.N != md.p) fail("zesting: grading group does not match the data");
  ModularData out = md;
  const size_t rank = md.labels.size();
  for (size_t i = 0; i < rank; ++i) {
    long long gi = md.labels[i].grading;
    for (size_t j = 0; j < rank; ++j) {
      long long gj = md.labels[j].grading;
      if (gi * gj != 0) out.S[i][j] = zp.s.pow(2 * gi * gj) * md.S[i][j];
    }
    if (gi != 0) out.T[i] = zp.s.pow(-gi * gi) * md.T[i];
  }
  return out;
}

ModularDataF zest_modular_data(const ModularDataF& md, const ZestParams& zp) {
  if (zp.N != md.p) fail("zesting: grading group does not match the data");
  ModularDataF out = md;
  const size_t rank = md.labels.size();
  for (size_t i = 0; i < rank; ++i) {
    long long gi = md.labels[i].grading;
    for (size_t j = 0; j < rank; ++j) {
      long long gj = md.labels[j].grading;
      if (gi * gj != 0) {
        out.S[i][j] = zp.s.pow(2 * gi * gj).to_complex() * md.S[i][j];
      }
    }
    if (gi != 0) out.T[i] = zp.s.pow(-gi * gi).to_complex() * md.T[i];
  }
  return out;
}

CycNum zest_link_scalar(const LinkDescriptor& d, const ZestParams& zp,
                        const std::vector<int>& gradings) {
  const BraidWord& w = d.word;
  if (w.strands != 3) fail("zest_link_scalar: 3-strand layout only");
  if (gradings.size() != 3) fail("zest_link_scalar: need 3 strand gradings");
  for (int g : gradings) {
    if (g < 0 || g >= zp.N) fail("zest_link_scalar: bad grading residue");
  }
  ClosureInfo ci = analyze_closure(w);
  for (int s = 0; s < 3; ++s) {
    for (int t = s + 1; t < 3; ++t) {
      if (ci.component_of[s] == ci.component_of[t] &&
          gradings[s] != gradings[t]) {
        fail("zest_link_scalar: gradings must be constant on components");
      }
    }
  }

  auto lambda = [&zp](int i, int j, int k) {
    return CycNum::root_of_unity(
        2ll * zp.N, 2ll * zp.b * k % (2 * zp.N) * carry(zp.N, i, j));
  };
  std::vector<int> g = gradings;  // slot gradings, updated along the word
  CycNum factor(1);
  for (auto [i, sign] : w.letters) {
    if (i == 2) factor = factor / lambda(g[0], g[1], g[2]);
    factor = factor * zp.s.pow(-static_cast<long long>(sign) * g[i - 1] * g[i]);
    std::swap(g[i - 1], g[i]);
    if (i == 2) factor = factor * lambda(g[0], g[1], g[2]);
  }
  // Closure caps contribute f/t ratios that are identically 1 for valid
  // parameters; the framing correction contributes f(g_c)^{c_\text{exp}}.
  std::vector<long long> exps = framing_exponents(d, ci);
  for (int strand = 0; strand < 3; ++strand) {
    int comp = ci.component_of[strand];
    bool first_in_comp = true;
    for (int earlier = 0; earlier < strand; ++earlier) {
      if (ci.component_of[earlier] == comp) first_in_comp = false;
    }
    if (!first_in_comp) continue;
    long long gc = gradings[strand];
    factor = factor * zp.s.pow(-gc * gc * exps[comp]);
  }
  return factor;
}

}  // namespace zestlab
