#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "core/braid_word.hpp"
#include "core/twisted_double.hpp"

namespace zestlab {

// The simple modules of the twisted double realized concretely: each simple
// X has dim(X) basis states, each state carries an attached group element
// (its degree), and every group element acts monomially — it sends a state
// to a state scaled by a root of unity zeta_L^e with L = p^2 q. All braid
// evaluation therefore reduces to integer exponent bookkeeping mod L.
class AnyonSystem {
 public:
  AnyonSystem(const GroupSpec& G, int u);

  const GroupSpec& group() const { return G_; }
  int u() const { return u_; }
  long long L() const { return L_; }  // zeta_L is the common value group
  const std::vector<SimpleLabel>& labels() const { return labels_; }
  int rank() const { return static_cast<int>(labels_.size()); }

  int dim(int X) const { return labels_[X].qdim; }
  Elem state_deg(int X, int s) const;

  // Monomial action of group element x on state s of simple X:
  // x |s> = zeta_L^expo |state>.
  struct Mono {
    int state = 0;
    long long expo = 0;
  };
  Mono act(int X, Elem x, int s) const;

  // theta_X as an exponent of zeta_L, and the associator / transgression
  // cocycles in the same currency.
  long long twist_expo(int X) const;
  long long omega_expo(Elem g, Elem h, Elem k) const;
  long long theta_expo(Elem t, Elem x, Elem y) const;

  CycNum zeta_pow(long long e) const;  // zeta_L^e
  std::complex<double> zeta_pow_f(long long e) const;

 private:
  GroupSpec G_;
  int u_ = 0;
  long long L_ = 0;
  std::vector<ConjClass> classes_;
  std::vector<SimpleLabel> labels_;
  // Per simple: flattened [element_index * dim + state] action table.
  std::vector<std::vector<Mono>> table_;
  std::vector<std::vector<Elem>> degs_;  // per simple, per state
  std::vector<long long> twist_expo_;
  std::vector<std::complex<double>> unit_roots_;  // zeta_L^e, e = 0..L-1
};

// A walk position: the color and state at each strand slot plus the
// accumulated scalar exponent. Letters update it in place.
struct WalkState {
  std::vector<int> colors;
  std::vector<int> states;
  long long expo = 0;
};

// Applies sigma_gen^sign (gen is 1-based) with the associator bookkeeping
// for left-parenthesized tensor words.
void apply_letter(const AnyonSystem& A, WalkState& ws, int gen, int sign);

// Exact closure trace as exponent counts: the value is
// sum_e counts[e] zeta_L^e over basis tuples returning to themselves.
// Colors must be constant on the closure components.
std::vector<long long> closure_trace_counts(const AnyonSystem& A,
                                            const BraidWord& w,
                                            const std::vector<int>& colors);

CycNum counts_to_cyc(const AnyonSystem& A,
                     const std::vector<long long>& counts);
std::complex<double> counts_to_complex(const AnyonSystem& A,
                                       const std::vector<long long>& counts);

// Closure trace with the descriptor's framing correction: the trace times
// theta_{color(c)}^{e_c} per component. Exact and float assemblies.
std::vector<long long> link_invariant_counts(const AnyonSystem& A,
                                             const LinkDescriptor& d,
                                             const std::vector<int>& colors);
CycNum link_invariant(const AnyonSystem& A, const LinkDescriptor& d,
                      const std::vector<int>& colors);
std::complex<double> link_invariant_f(const AnyonSystem& A,
                                      const LinkDescriptor& d,
                                      const std::vector<int>& colors);

// The curated invariant battery for one twisting: the full whitehead matrix
// W[X][Y] (colors (X, Y, X), outer component corrected as in the
// descriptor), the five2 vector (single color), and a deterministic sample
// of borromean values: all triples of nontrivially graded labels in
// lexicographic order first, then seeded random triples, `sample` total.
struct BorromeanSample {
  int X = 0, Y = 0, Z = 0;
  CycNum value;
};
struct InvariantSuite {
  std::vector<std::vector<CycNum>> W;
  std::vector<CycNum> five2;
  std::vector<BorromeanSample> borromean;
};
InvariantSuite compute_invariant_suite(const AnyonSystem& A, int sample,
                                       std::uint64_t seed);

// The deterministic triple list used by the borromean sample (exposed so
// comparisons can re-evaluate the same triples on both sides).
std::vector<std::array<int, 3>> borromean_sample_triples(int rank,
                                                         const std::vector<SimpleLabel>& labels,
                                                         int sample,
                                                         std::uint64_t seed);

}  // namespace zestlab
