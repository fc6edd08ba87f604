#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/group.hpp"

namespace zestlab {

// Normalized 3-cocycle on G = Z_q x| Z_p valued in roots of unity, supported
// on b-parts: omega_u(g, h, k) = zeta_{p^2}^{u * [k_k] * ([k_g] + [k_h] - [k_g + k_h mod p])}.
CycNum omega_u(const GroupSpec& G, int u, Elem g, Elem h, Elem k);

// Transgression theta_t(x, y) = omega(t, x, y) omega(x, y, (xy)^{-1} t (xy)) /
// omega(x, x^{-1} t x, y); closed form zeta_{p^2}^{u * [k_t] * carry(k_x, k_y)}.
CycNum theta_u(const GroupSpec& G, int u, Elem t, Elem x, Elem y);

// The transversal correction ratio appearing in the S-matrix sum for a
// commuting pair (g, h) with transversals x (for g) and y (for h) and class
// representatives tA, tB. Identically 1 for the canonical transversals; the
// S-matrix computation multiplies it in anyway and tests assert its value.
CycNum s_matrix_theta_ratio(const GroupSpec& G, int u, Elem tA, Elem g, Elem x,
                            Elem tB, Elem h, Elem y);

struct SimpleLabel {
  int class_idx = 0;  // into conjugacy_classes(G) ordering
  int irrep_idx = 0;  // within-class enumeration index
  ClassKind kind = ClassKind::Unit;
  // Unit: index into irreps_of_G(G); AOrbit: character exponent s mod q;
  // BSector: character exponent s mod p.
  int par = 0;
  int dim = 1;  // dimension of the centralizer irrep
  int qdim = 1;
  int grading = 0;
  std::string name;
};

// Label order: unit class (linear m = 0..p-1, then induced per orbit rep),
// then each a-orbit class (s = 0..q-1), then each b-sector k = 1..p-1
// (s = 0..p-1). The first label is the tensor unit.
std::vector<SimpleLabel> enumerate_simples(const GroupSpec& G, int u);

// Character of the centralizer irrep attached to `lab`, evaluated at a
// centralizer element z of the class representative (for b-sectors this is
// the projective character with the integer-lift convention z.k in [0, p)).
CycNum centralizer_character(const GroupSpec& G,
                             const std::vector<ConjClass>& classes,
                             const SimpleLabel& lab, int u, Elem z);

struct ModularData {
  int p = 0, q = 0, n = 0, u = 0;
  std::vector<SimpleLabel> labels;
  std::vector<std::vector<CycNum>> S;  // unitary normalization
  std::vector<CycNum> T;
};

ModularData twisted_double_modular_data(const GroupSpec& G, int u);

// Fusion coefficients from the Verlinde formula; throws std::logic_error if
// any coefficient fails to be a nonnegative integer.
std::vector<std::vector<std::vector<long long>>> verlinde_fusion(
    const ModularData& md);

// Unnormalized Gauss sums (sum of qdim^2 T^{+1}, qdim^2 T^{-1}).
std::pair<CycNum, CycNum> gauss_sums(const ModularData& md);

// The charge conjugation permutation C = S^2; throws std::logic_error if S^2
// is not a permutation matrix.
std::vector<int> dual_permutation(const ModularData& md);

}  // namespace zestlab
