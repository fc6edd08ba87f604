// zestlab command-line tool.
//
// Thin shell over the C API in zestlab/zestlab.h: argument parsing, file
// I/O, and exit-code mapping live here; all mathematics lives behind the
// shared library. Reports and documents are printed as JSON (stdout or
// --out); human-facing diagnostics go to stderr.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zestlab/zestlab.h"

namespace {

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { zl_string_free(s); }
};

struct OwnedData {
  zl_modular_data* h = nullptr;
  ~OwnedData() { zl_modular_data_free(h); }
};

int fail(const std::string& message) {
  std::cerr << "zestlab: error: " << message << "\n";
  return 1;
}

int fail_api() { return fail(zl_last_error()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw std::runtime_error("read failed on \"" + path + "\"");
  }
  return ss.str();
}

void write_output(const std::string& out_path, const char* text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + out_path + "\"");
  out << text;
  if (!out.good()) throw std::runtime_error("write failed on \"" + out_path + "\"");
}

std::vector<int> parse_colors(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::runtime_error("bad color \"" + tok + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("empty color list");
  return out;
}

// Root-of-unity grammar: "N:k" denotes the primitive-N-th-root power
// zeta_N^k, e.g. "9:-1".
void parse_root(const std::string& text, long long& cond, long long& expo) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("expected \"conductor:exponent\", got \"" + text + "\"");
  }
  size_t pos = 0;
  cond = std::stoll(text.substr(0, colon), &pos);
  if (pos != colon) throw std::runtime_error("bad conductor in \"" + text + "\"");
  std::string rest = text.substr(colon + 1);
  expo = std::stoll(rest, &pos);
  if (pos != rest.size()) throw std::runtime_error("bad exponent in \"" + text + "\"");
}

int emit_status(zl_status st, const std::string& out_path, const char* text) {
  if (st == ZL_ERROR) return fail_api();
  write_output(out_path, text);
  return st == ZL_DISTINGUISHABLE ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zestlab — modular data of twisted doubles of Z_q x| Z_p, cyclic "
      "ribbon zesting, colored link invariants, and relabeling-equivalence "
      "experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("zestlab ") + zl_version());
  app.footer(
      "Exit codes:\n"
      "  0  success (including comparisons that found a relabeling witness)\n"
      "  2  verified inequivalence: a compare/experiment search was\n"
      "     exhausted without a witness (the report is still written)\n"
      "  1  errors (malformed flags, unreadable files, schema mismatches)\n"
      "\n"
      "Expensive computations are cached under the directory named by the\n"
      "ZESTLAB_CACHE environment variable (default \".zestlab-cache\");\n"
      "--no-cache disables the cache for one invocation.");

  // ---- modular-data ------------------------------------------------
  auto* cmd_md = app.add_subcommand(
      "modular-data", "Compute twisted-double modular data (S, T, labels)");
  int md_p = 0, md_q = 0, md_u = 0, md_n = 0;
  bool md_exact = false, md_float = false;
  std::string md_out;
  cmd_md->add_option("--p", md_p, "Prime p (grading order)")->required();
  cmd_md->add_option("--q", md_q, "Prime q with p | q-1")->required();
  cmd_md->add_option("--u", md_u, "Cocycle parameter u in [0, p)")->required();
  cmd_md->add_option("--n", md_n, "Multiplier n of order p mod q (0 = canonical)");
  auto* fe = cmd_md->add_flag("--exact", md_exact, "Exact cyclotomic entries (default)");
  cmd_md->add_flag("--float", md_float, "Float [re, im] entries")->excludes(fe);
  cmd_md->add_option("--out", md_out, "Output file (default stdout)");

  // ---- zest --------------------------------------------------------
  auto* cmd_zest = app.add_subcommand(
      "zest", "Apply a cyclic ribbon zesting to a modular-data file");
  std::string zest_in, zest_s, zest_out;
  int zest_u = -1, zest_a = -1, zest_b = -1;
  cmd_zest->add_option("--in", zest_in, "Input modular-data file")->required();
  cmd_zest->add_option("--u", zest_u,
                       "Canonical zesting index: (a,b,s) = (2u, u, zeta_{N^2}^{-u})");
  cmd_zest->add_option("--a", zest_a, "Zesting residue a (requires --b and --s)");
  cmd_zest->add_option("--b", zest_b, "Zesting residue b");
  cmd_zest->add_option("--s", zest_s, "Zesting root \"conductor:exponent\", e.g. 9:-1");
  cmd_zest->add_option("--out", zest_out, "Output file (default stdout)");

  // ---- link --------------------------------------------------------
  auto* cmd_link = app.add_subcommand(
      "link", "Evaluate a colored braid-closure invariant");
  std::string link_word, link_colors;
  int link_p = 0, link_q = 0, link_u = 0, link_n = 0;
  bool link_zero = false;
  std::string link_out;
  cmd_link->add_option("--braid", link_word,
                       "Braid word, e.g. \"s1 s2^-1\" (letters s<i>, s<i>^k)")
      ->required();
  cmd_link->add_option("--colors", link_colors,
                       "Comma-separated label index per strand, e.g. 0,3,3")
      ->required();
  cmd_link->add_option("--p", link_p, "Prime p")->required();
  cmd_link->add_option("--q", link_q, "Prime q with p | q-1")->required();
  cmd_link->add_option("--u", link_u, "Cocycle parameter u")->required();
  cmd_link->add_option("--n", link_n, "Multiplier n (0 = canonical)");
  cmd_link->add_flag("--zero-framed", link_zero,
                     "Correct each closure component to zero framing");
  cmd_link->add_option("--out", link_out, "Output file (default stdout)");

  // ---- invariants ----------------------------------------------------
  auto* cmd_inv = app.add_subcommand(
      "invariants",
      "Compute the invariant battery (Whitehead matrix, Borromean sample, "
      "5_2 vector)");
  std::string inv_which, inv_out;
  int inv_p = 0, inv_q = 0, inv_u = 0, inv_n = 0, inv_sample = 500;
  std::uint64_t inv_seed = 2026;
  bool inv_nocache = false;
  cmd_inv->add_option("--which", inv_which, "One of: w, b, five2")
      ->required()
      ->check(CLI::IsMember({"w", "b", "five2"}));
  cmd_inv->add_option("--p", inv_p, "Prime p")->required();
  cmd_inv->add_option("--q", inv_q, "Prime q with p | q-1")->required();
  cmd_inv->add_option("--u", inv_u, "Cocycle parameter u")->required();
  cmd_inv->add_option("--n", inv_n, "Multiplier n (0 = canonical)");
  cmd_inv->add_option("--sample", inv_sample, "Borromean sample size (default 500)");
  cmd_inv->add_option("--seed", inv_seed, "Borromean sample seed (default 2026)");
  cmd_inv->add_flag("--no-cache", inv_nocache, "Do not read or write the cache");
  cmd_inv->add_option("--out", inv_out, "Output file (default stdout)");

  // ---- compare -------------------------------------------------------
  auto* cmd_cmp = app.add_subcommand(
      "compare", "Search for a relabeling between two modular-data files");
  std::string cmp_left, cmp_right, cmp_out;
  std::vector<std::string> cmp_w, cmp_b;
  int cmp_limit = 1;
  bool cmp_nocache = false;
  cmd_cmp->add_option("--left", cmp_left, "Left modular-data file")->required();
  cmd_cmp->add_option("--right", cmp_right, "Right modular-data file")->required();
  cmd_cmp->add_option("--with-w", cmp_w,
                      "Attach the {W,T} search: left battery file, "
                      "optionally followed by the right one")
      ->expected(1, 2);
  cmd_cmp->add_option("--with-b", cmp_b,
                      "Attach the {B-sample,T} search: left battery file, "
                      "optionally followed by the right one")
      ->expected(1, 2);
  cmd_cmp->add_option("--limit", cmp_limit, "Witness cap per search (default 1)");
  cmd_cmp->add_flag("--no-cache", cmp_nocache, "Do not read or write the cache");
  cmd_cmp->add_option("--out", cmp_out, "Output file (default stdout)");

  // ---- experiment ------------------------------------------------------
  auto* cmd_exp = app.add_subcommand(
      "experiment",
      "Run the full isotope experiment for (p, q): modular data for all u, "
      "zesting reconstruction, and pairwise (S,T)/{W,T}/{B,T} searches");
  int exp_p = 0, exp_q = 0, exp_sample = 500, exp_limit = 1;
  std::uint64_t exp_seed = 2026;
  bool exp_nocache = false, exp_verbose = false;
  std::string exp_out;
  cmd_exp->add_option("--p", exp_p, "Prime p")->required();
  cmd_exp->add_option("--q", exp_q, "Prime q with p | q-1")->required();
  cmd_exp->add_option("--sample", exp_sample, "Borromean sample size (default 500)");
  cmd_exp->add_option("--seed", exp_seed, "Borromean sample seed (default 2026)");
  cmd_exp->add_option("--limit", exp_limit, "Witness cap per search (default 1)");
  cmd_exp->add_flag("--no-cache", exp_nocache, "Do not read or write the cache");
  cmd_exp->add_flag("--verbose", exp_verbose, "Stage progress notes on stderr");
  cmd_exp->add_option("--out", exp_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(cmd_md)) {
      OwnedData md;
      if (zl_modular_data_compute(md_p, md_q, md_n, md_u, &md.h) != ZL_OK) {
        return fail_api();
      }
      OwnedString doc;
      if (zl_modular_data_to_json(md.h, md_float ? 1 : 0, &doc.s) != ZL_OK) {
        return fail_api();
      }
      return emit_status(ZL_OK, md_out, doc.s);
    }

    if (app.got_subcommand(cmd_zest)) {
      const bool have_u = cmd_zest->count("--u") > 0;
      const bool have_abs = cmd_zest->count("--a") > 0 ||
                            cmd_zest->count("--b") > 0 ||
                            cmd_zest->count("--s") > 0;
      if (have_u == have_abs) {
        return fail("zest requires either --u or the triple --a --b --s");
      }
      if (have_abs && (cmd_zest->count("--a") == 0 ||
                       cmd_zest->count("--b") == 0 ||
                       cmd_zest->count("--s") == 0)) {
        return fail("--a, --b, and --s must be given together");
      }
      std::string text = read_file(zest_in);
      OwnedData in;
      if (zl_modular_data_from_json(text.c_str(), &in.h) != ZL_OK) {
        return fail_api();
      }
      OwnedData out;
      if (have_u) {
        if (zl_zest_u(in.h, zest_u, &out.h) != ZL_OK) return fail_api();
      } else {
        long long cond = 0, expo = 0;
        parse_root(zest_s, cond, expo);
        if (zl_zest_abs(in.h, zest_a, zest_b, cond, expo, &out.h) != ZL_OK) {
          return fail_api();
        }
      }
      OwnedString doc;
      int as_float = zl_modular_data_is_exact(out.h) ? 0 : 1;
      if (zl_modular_data_to_json(out.h, as_float, &doc.s) != ZL_OK) {
        return fail_api();
      }
      return emit_status(ZL_OK, zest_out, doc.s);
    }

    if (app.got_subcommand(cmd_link)) {
      std::vector<int> colors = parse_colors(link_colors);
      OwnedString doc;
      zl_status st = zl_link_invariant_json(
          link_p, link_q, link_n, link_u, link_word.c_str(), colors.data(),
          static_cast<int>(colors.size()), link_zero ? 1 : 0, &doc.s);
      return emit_status(st, link_out, doc.s);
    }

    if (app.got_subcommand(cmd_inv)) {
      OwnedString doc;
      zl_status st = zl_invariants_json(inv_p, inv_q, inv_n, inv_u,
                                        inv_which.c_str(), inv_sample,
                                        inv_seed, inv_nocache ? 0 : 1, &doc.s);
      return emit_status(st, inv_out, doc.s);
    }

    if (app.got_subcommand(cmd_cmp)) {
      std::string left = read_file(cmp_left);
      std::string right = read_file(cmp_right);
      std::vector<std::string> w_docs, b_docs;
      for (const auto& f : cmp_w) w_docs.push_back(read_file(f));
      for (const auto& f : cmp_b) b_docs.push_back(read_file(f));
      OwnedString report;
      zl_status st = zl_compare_json(
          left.c_str(), right.c_str(),
          w_docs.size() > 0 ? w_docs[0].c_str() : nullptr,
          w_docs.size() > 1 ? w_docs[1].c_str() : nullptr,
          b_docs.size() > 0 ? b_docs[0].c_str() : nullptr,
          b_docs.size() > 1 ? b_docs[1].c_str() : nullptr, cmp_limit,
          cmp_nocache ? 0 : 1, &report.s);
      return emit_status(st, cmp_out, report.s);
    }

    if (app.got_subcommand(cmd_exp)) {
      OwnedString report;
      zl_status st = zl_experiment_json(exp_p, exp_q, exp_sample, exp_seed,
                                        exp_limit, exp_nocache ? 0 : 1,
                                        exp_verbose ? 1 : 0, &report.s);
      return emit_status(st, exp_out, report.s);
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return fail("no subcommand dispatched");
}
