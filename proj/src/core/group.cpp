#include "core/group.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zestlab {

namespace {

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

int pow_mod(long long base, long long e, long long m) {
  long long r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<int>(r);
}

int mult_order(int a, int m) {
  int v = a % m;
  int ord = 1;
  while (v != 1) {
    v = static_cast<int>(static_cast<long long>(v) * a % m);
    ++ord;
    if (ord > m) throw std::logic_error("mult_order: not invertible");
  }
  return ord;
}

}  // namespace

int mod_inverse(int a, int m) {
  int t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    int quo = r / nr;
    int tmp = t - quo * nt;
    t = nt;
    nt = tmp;
    tmp = r - quo * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((t % m) + m) % m;
}

std::vector<Elem> GroupSpec::elements() const {
  std::vector<Elem> out;
  out.reserve(order());
  for (int l = 0; l < q; ++l) {
    for (int k = 0; k < p; ++k) out.push_back({l, k});
  }
  return out;
}

GroupSpec make_group(int p, int q, int n) {
  if (!is_prime(p) || !is_prime(q)) {
    throw std::domain_error("make_group: p and q must be prime");
  }
  if (p == q || (q - 1) % p != 0) {
    throw std::domain_error("make_group: p must divide q - 1");
  }
  if (n == 0) {
    for (int c = 2; c < q; ++c) {
      if (mult_order(c, q) == p) {
        n = c;
        break;
      }
    }
    if (n == 0) throw std::logic_error("make_group: no residue of order p");
  } else {
    int nn = ((n % q) + q) % q;
    if (nn <= 1 || mult_order(nn, q) != p) {
      throw std::domain_error(
          "make_group: n must have multiplicative order exactly p mod q");
    }
    n = nn;
  }
  GroupSpec G;
  G.p = p;
  G.q = q;
  G.n = n;
  G.pow_n.resize(p);
  G.inv_pow_n.resize(p);
  for (int k = 0; k < p; ++k) {
    G.pow_n[k] = pow_mod(n, k, q);
    G.inv_pow_n[k] = mod_inverse(G.pow_n[k], q);
  }
  return G;
}

std::vector<std::vector<int>> multiplier_orbits(const GroupSpec& G) {
  std::vector<bool> seen(G.q, false);
  std::vector<std::vector<int>> orbits;
  for (int l0 = 1; l0 < G.q; ++l0) {
    if (seen[l0]) continue;
    std::vector<int> orbit;
    int v = l0;
    do {
      orbit.push_back(v);
      seen[v] = true;
      v = static_cast<int>(static_cast<long long>(v) * G.n % G.q);
    } while (v != l0);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<ConjClass> conjugacy_classes(const GroupSpec& G) {
  std::vector<ConjClass> classes;

  ConjClass unit;
  unit.kind = ClassKind::Unit;
  unit.rep = {0, 0};
  unit.grading = 0;
  unit.members = {{0, 0}};
  unit.transversal = {{0, 0}};
  classes.push_back(std::move(unit));

  for (const auto& orbit : multiplier_orbits(G)) {
    ConjClass c;
    c.kind = ClassKind::AOrbit;
    c.rep = {orbit[0], 0};
    c.grading = 0;
    for (int j = 0; j < G.p; ++j) {
      c.members.push_back({orbit[j], 0});
      c.transversal.push_back({0, j});  // b^j * a^{l0} * b^{-j} = a^{n^j l0}
    }
    classes.push_back(std::move(c));
  }

  for (int k = 1; k < G.p; ++k) {
    ConjClass c;
    c.kind = ClassKind::BSector;
    c.rep = {0, k};
    c.grading = k;
    // a^m * b^k * a^{-m} = a^{m(1 - n^k)} b^k, so the transversal power for
    // member a^l b^k is m = l / (1 - n^k) mod q (nonzero since ord(n) = p).
    int denom = ((1 - G.pow_n[k]) % G.q + G.q) % G.q;
    int denom_inv = mod_inverse(denom, G.q);
    for (int l = 0; l < G.q; ++l) {
      int m = static_cast<int>(static_cast<long long>(l) * denom_inv % G.q);
      c.members.push_back({l, k});
      c.transversal.push_back({m, 0});
    }
    classes.push_back(std::move(c));
  }
  return classes;
}

ClassLookup build_class_lookup(const GroupSpec& G,
                               const std::vector<ConjClass>& classes) {
  ClassLookup lk;
  lk.loc.assign(G.order(), {-1, -1});
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    for (size_t mi = 0; mi < classes[ci].members.size(); ++mi) {
      lk.loc[G.index_of(classes[ci].members[mi])] = {static_cast<int>(ci),
                                                     static_cast<int>(mi)};
    }
  }
  for (const auto& entry : lk.loc) {
    if (entry.first < 0) throw std::logic_error("class lookup: uncovered element");
  }
  return lk;
}

CycNum GIrrep::character(const GroupSpec& G, Elem g) const {
  if (linear) {
    return CycNum::root_of_unity(G.p, static_cast<long long>(m) * g.k);
  }
  if (g.k != 0) return CycNum();
  CycNum sum;
  for (int j = 0; j < G.p; ++j) {
    sum += CycNum::root_of_unity(
        G.q, static_cast<long long>(s0) * G.pow_n[j] % G.q * g.l);
  }
  return sum;
}

std::vector<GIrrep> irreps_of_G(const GroupSpec& G) {
  std::vector<GIrrep> irreps;
  for (int m = 0; m < G.p; ++m) {
    GIrrep r;
    r.linear = true;
    r.dim = 1;
    r.m = m;
    irreps.push_back(r);
  }
  for (const auto& orbit : multiplier_orbits(G)) {
    GIrrep r;
    r.linear = false;
    r.dim = G.p;
    r.s0 = orbit[0];
    irreps.push_back(r);
  }
  return irreps;
}

std::function<CycNum(int)> projective_irrep(const GroupSpec& G, int u, int k,
                                            int s) {
  int p = G.p;
  long long p2 = static_cast<long long>(p) * p;
  return [p, p2, u, k, s](int l) {
    return CycNum::root_of_unity(p, static_cast<long long>(s) * l) *
           CycNum::root_of_unity(p2, static_cast<long long>(u) * k % p2 * l);
  };
}

}  // namespace zestlab
