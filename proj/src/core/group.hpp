#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/cyclotomic.hpp"

namespace zestlab {

// Element a^l b^k of the semidirect product Z_q x| Z_p with b a b^{-1} = a^n.
struct Elem {
  int l = 0;
  int k = 0;
  friend bool operator==(const Elem&, const Elem&) = default;
};

int mod_inverse(int a, int m);

struct GroupSpec {
  int p = 0;
  int q = 0;
  int n = 0;
  std::vector<int> pow_n;      // n^k mod q, k in [0, p)
  std::vector<int> inv_pow_n;  // n^{-k} mod q, k in [0, p)

  int order() const { return p * q; }

  Elem mul(Elem x, Elem y) const {
    long long l = (x.l + static_cast<long long>(pow_n[x.k]) * y.l) % q;
    return {static_cast<int>(l), (x.k + y.k) % p};
  }
  Elem inv(Elem x) const {
    long long l = (-static_cast<long long>(inv_pow_n[x.k]) * x.l) % q;
    if (l < 0) l += q;
    return {static_cast<int>(l), (p - x.k) % p};
  }
  // x g x^{-1}
  Elem conj(Elem x, Elem g) const { return mul(mul(x, g), inv(x)); }

  int index_of(Elem e) const { return e.l * p + e.k; }
  Elem elem_at(int idx) const { return {idx / p, idx % p}; }
  std::vector<Elem> elements() const;
};

// n = 0 selects the canonical choice: the smallest residue of multiplicative
// order exactly p mod q. A provided n is validated to have order p.
GroupSpec make_group(int p, int q, int n = 0);

enum class ClassKind { Unit, AOrbit, BSector };

struct ConjClass {
  ClassKind kind = ClassKind::Unit;
  Elem rep;
  int grading = 0;                // b-part of the representative
  std::vector<Elem> members;      // fixed ordering, see conjugacy_classes()
  std::vector<Elem> transversal;  // a_g with member = a_g * rep * a_g^{-1}
};

// Ordering: the unit class; one class per <n>-orbit on Z_q^* (by smallest
// member, members listed as a^{n^j l0} for j = 0..p-1); one class per
// k = 1..p-1 (members a^l b^k for l = 0..q-1).
std::vector<ConjClass> conjugacy_classes(const GroupSpec& G);

struct ClassLookup {
  // loc[index_of(g)] = {class index, member index}
  std::vector<std::pair<int, int>> loc;
};
ClassLookup build_class_lookup(const GroupSpec& G,
                               const std::vector<ConjClass>& classes);

// Orbits of multiplication by n on Z_q^*, each listed cyclically starting
// from its smallest element; orbits sorted by that representative.
std::vector<std::vector<int>> multiplier_orbits(const GroupSpec& G);

// Irreducible characters of G itself: p linear ones (m = 0 first), then one
// p-dimensional induced character per <n>-orbit representative s0.
struct GIrrep {
  bool linear = true;
  int dim = 1;
  int m = 0;   // linear: (l, k) -> zeta_p^{m k}
  int s0 = 0;  // induced: (l, 0) -> sum_j zeta_q^{s0 n^j l}; 0 off <a>
  CycNum character(const GroupSpec& G, Elem g) const;
};
std::vector<GIrrep> irreps_of_G(const GroupSpec& G);

// Projective character of the b-sector centralizer <b> at twisting u:
// l -> zeta_p^{s l} * zeta_{p^2}^{u k l}.
std::function<CycNum(int)> projective_irrep(const GroupSpec& G, int u, int k,
                                            int s);

}  // namespace zestlab
