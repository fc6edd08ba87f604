#include "zestlab/zestlab.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/braid.hpp"
#include "core/braid_word.hpp"
#include "core/experiment.hpp"
#include "core/group.hpp"
#include "core/json_io.hpp"
#include "core/twisted_double.hpp"
#include "core/zesting.hpp"

using nlohmann::json;

// Exactly one of the two backends is engaged.
struct zl_modular_data {
  std::optional<zestlab::ModularData> exact;
  std::optional<zestlab::ModularDataF> flt;
};

namespace {

thread_local std::string tl_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Serializes with a trailing newline so documents written to files or
// terminals end cleanly.
zl_status emit(const json& j, char** out_json) {
  if (out_json == nullptr) throw std::runtime_error("output pointer is NULL");
  char* s = dup_string(j.dump(1) + "\n");
  if (s == nullptr) throw std::runtime_error("out of memory");
  *out_json = s;
  return ZL_OK;
}

template <typename F>
zl_status wrap(F&& f) {
  tl_error.clear();
  try {
    return f();
  } catch (const std::exception& e) {
    tl_error = e.what();
    return ZL_ERROR;
  } catch (...) {
    tl_error = "unknown error";
    return ZL_ERROR;
  }
}

const zl_modular_data& deref(const zl_modular_data* md) {
  if (md == nullptr) throw std::runtime_error("modular-data handle is NULL");
  return *md;
}

const char* require_text(const char* s, const char* what) {
  if (s == nullptr) throw std::runtime_error(std::string(what) + " is NULL");
  return s;
}

int handle_p(const zl_modular_data& h) {
  return h.exact ? h.exact->p : h.flt->p;
}

zl_status zest_with(const zl_modular_data* in, const zestlab::ZestParams& zp,
                    zl_modular_data** out) {
  const zl_modular_data& h = deref(in);
  if (out == nullptr) throw std::runtime_error("output pointer is NULL");
  auto result = std::make_unique<zl_modular_data>();
  if (h.exact) {
    result->exact = zestlab::zest_modular_data(*h.exact, zp);
  } else {
    result->flt = zestlab::zest_modular_data(*h.flt, zp);
  }
  *out = result.release();
  return ZL_OK;
}

}  // namespace

extern "C" {

const char* zl_version(void) { return "1.0.0"; }

const char* zl_last_error(void) { return tl_error.c_str(); }

void zl_string_free(char* s) { std::free(s); }

zl_status zl_modular_data_compute(int p, int q, int n, int u,
                                  zl_modular_data** out) {
  return wrap([&]() {
    if (out == nullptr) throw std::runtime_error("output pointer is NULL");
    zestlab::GroupSpec G = zestlab::make_group(p, q, n);
    auto h = std::make_unique<zl_modular_data>();
    h->exact = zestlab::twisted_double_modular_data(G, u);
    *out = h.release();
    return ZL_OK;
  });
}

zl_status zl_modular_data_from_json(const char* json_text,
                                    zl_modular_data** out) {
  return wrap([&]() {
    if (out == nullptr) throw std::runtime_error("output pointer is NULL");
    json j = json::parse(require_text(json_text, "json_text"));
    auto h = std::make_unique<zl_modular_data>();
    if (zestlab::modular_data_json_is_exact(j)) {
      h->exact = zestlab::modular_data_from_json(j);
    } else {
      h->flt = zestlab::modular_data_float_from_json(j);
    }
    *out = h.release();
    return ZL_OK;
  });
}

zl_status zl_modular_data_to_json(const zl_modular_data* md, int float_backend,
                                  char** out_json) {
  return wrap([&]() {
    const zl_modular_data& h = deref(md);
    if (h.exact) {
      return emit(float_backend ? zestlab::modular_data_to_json_float(*h.exact)
                                : zestlab::modular_data_to_json(*h.exact),
                  out_json);
    }
    if (!float_backend) {
      throw std::runtime_error(
          "float-backed modular data cannot be written with the exact backend");
    }
    return emit(zestlab::modular_data_to_json(*h.flt), out_json);
  });
}

int zl_modular_data_rank(const zl_modular_data* md) {
  if (md == nullptr) return -1;
  return static_cast<int>(md->exact ? md->exact->labels.size()
                                    : md->flt->labels.size());
}

int zl_modular_data_is_exact(const zl_modular_data* md) {
  return md != nullptr && md->exact.has_value() ? 1 : 0;
}

void zl_modular_data_free(zl_modular_data* md) { delete md; }

zl_status zl_zest_u(const zl_modular_data* in, int u, zl_modular_data** out) {
  return wrap([&]() {
    zestlab::ZestParams zp =
        zestlab::canonical_zest_params(handle_p(deref(in)), u);
    return zest_with(in, zp, out);
  });
}

zl_status zl_zest_abs(const zl_modular_data* in, int a, int b,
                      long long s_conductor, long long s_exponent,
                      zl_modular_data** out) {
  return wrap([&]() {
    const int N = handle_p(deref(in));
    zestlab::ZestParams zp;
    zp.N = N;
    zp.a = ((a % N) + N) % N;
    zp.b = ((b % N) + N) % N;
    if (s_conductor < 1) throw std::runtime_error("s conductor must be >= 1");
    zp.s = zestlab::CycNum::root_of_unity(s_conductor, s_exponent);
    zestlab::validate_zest_params(zp);
    return zest_with(in, zp, out);
  });
}

zl_status zl_link_invariant_json(int p, int q, int n, int u,
                                 const char* braid_word, const int* colors,
                                 int num_colors, int zero_framed,
                                 char** out_json) {
  return wrap([&]() {
    require_text(braid_word, "braid_word");
    if (colors == nullptr) throw std::runtime_error("colors is NULL");
    if (num_colors < 1) {
      throw std::runtime_error("need at least one strand color");
    }
    zestlab::GroupSpec G = zestlab::make_group(p, q, n);
    zestlab::AnyonSystem A(G, u);
    zestlab::LinkDescriptor d;
    d.word = zestlab::parse_braid_word(braid_word, num_colors);
    d.framing = zero_framed ? zestlab::FramingMode::ZeroFramed
                            : zestlab::FramingMode::AsDrawn;
    std::vector<int> cols(colors, colors + num_colors);
    for (int c : cols) {
      if (c < 0 || c >= A.rank()) {
        throw std::runtime_error("color index out of range: " +
                                 std::to_string(c));
      }
    }
    auto ci = zestlab::analyze_closure(d.word);
    auto counts = zestlab::link_invariant_counts(A, d, cols);
    zestlab::CycNum value = zestlab::counts_to_cyc(A, counts);
    std::complex<double> zf = zestlab::counts_to_complex(A, counts);
    json j{{"schema", "zestlab/link-invariant/v1"},
           {"p", G.p},
           {"q", G.q},
           {"n", G.n},
           {"u", u},
           {"backend", "exact"},
           {"braid", json{{"strands", d.word.strands},
                          {"word", braid_word}}},
           {"framing", zero_framed ? "zero_framed" : "as_drawn"},
           {"colors", cols},
           {"components", ci.num_components},
           {"value", zestlab::cyc_to_json(value)},
           {"value_float", json::array({zf.real(), zf.imag()})}};
    return emit(j, out_json);
  });
}

zl_status zl_invariants_json(int p, int q, int n, int u, const char* which,
                             int sample, uint64_t seed, int use_cache,
                             char** out_json) {
  return wrap([&]() {
    std::string w = require_text(which, "which");
    if (w != "w" && w != "b" && w != "five2") {
      throw std::runtime_error(
          "which must be \"w\", \"b\", or \"five2\" (got \"" + w + "\")");
    }
    if (sample < 0) throw std::runtime_error("sample must be >= 0");
    zestlab::GroupSpec G = zestlab::make_group(p, q, n);
    zestlab::InvariantSuite suite =
        zestlab::cached_invariant_suite(G, u, sample, seed, use_cache != 0,
                                        nullptr);
    json j = zestlab::invariant_suite_to_json(G, u, sample, seed, suite);
    j["which"] = w;
    return emit(j, out_json);
  });
}

zl_status zl_compare_json(const char* left_md_json, const char* right_md_json,
                          const char* with_w_left, const char* with_w_right,
                          const char* with_b_left, const char* with_b_right,
                          int limit, int use_cache, char** out_report) {
  return wrap([&]() {
    if (limit < 1) throw std::runtime_error("limit must be >= 1");
    zestlab::CompareRequest req;
    req.left_md = json::parse(require_text(left_md_json, "left modular data"));
    req.right_md =
        json::parse(require_text(right_md_json, "right modular data"));
    if (with_w_left != nullptr) req.left_w = json::parse(with_w_left);
    if (with_w_right != nullptr) req.right_w = json::parse(with_w_right);
    if (with_b_left != nullptr) req.left_b = json::parse(with_b_left);
    if (with_b_right != nullptr) req.right_b = json::parse(with_b_right);
    if (req.right_w && !req.left_w) {
      throw std::runtime_error("a right W document requires a left one");
    }
    if (req.right_b && !req.left_b) {
      throw std::runtime_error("a right B document requires a left one");
    }
    req.limit = limit;
    req.use_cache = use_cache != 0;
    zestlab::CompareOutcome outcome = zestlab::run_compare(req, nullptr);
    zl_status st = emit(outcome.report, out_report);
    if (st != ZL_OK) return st;
    return outcome.verified_inequivalence ? ZL_DISTINGUISHABLE : ZL_OK;
  });
}

zl_status zl_experiment_json(int p, int q, int sample, uint64_t seed,
                             int limit, int use_cache, int verbose,
                             char** out_report) {
  return wrap([&]() {
    if (sample < 0) throw std::runtime_error("sample must be >= 0");
    if (limit < 1) throw std::runtime_error("limit must be >= 1");
    zestlab::ExperimentOptions opts;
    opts.sample = sample;
    opts.seed = seed;
    opts.limit = limit;
    opts.use_cache = use_cache != 0;
    zestlab::ExperimentOutcome outcome = zestlab::run_isotope_experiment(
        p, q, opts, verbose ? &std::cerr : nullptr);
    zl_status st = emit(outcome.report, out_report);
    if (st != ZL_OK) return st;
    return outcome.distinguishable ? ZL_DISTINGUISHABLE : ZL_OK;
  });
}

}  // extern "C"
