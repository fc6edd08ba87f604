#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "core/twisted_double.hpp"

using namespace zestlab;

namespace {

using Matrix = std::vector<std::vector<CycNum>>;

Matrix mat_mul(const Matrix& A, const Matrix& B) {
  size_t n = A.size();
  Matrix C(n, std::vector<CycNum>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      CycNum s;
      for (size_t k = 0; k < n; ++k) s += A[i][k] * B[k][j];
      C[i][j] = std::move(s);
    }
  }
  return C;
}

bool is_identity(const Matrix& A) {
  for (size_t i = 0; i < A.size(); ++i) {
    for (size_t j = 0; j < A.size(); ++j) {
      if (!(A[i][j] == (i == j ? CycNum(1) : CycNum()))) return false;
    }
  }
  return true;
}

// Independent closed-form oracle for every S entry, derived block by block
// from the commuting-pair character sum.
CycNum s_entry_oracle(const GroupSpec& G, int u, const SimpleLabel& A,
                      const SimpleLabel& B,
                      const std::vector<ConjClass>& classes) {
  const int p = G.p, q = G.q;
  long long p2 = static_cast<long long>(p) * p;
  auto girreps = irreps_of_G(G);
  auto kind_pair = [&](ClassKind a, ClassKind b) {
    return A.kind == a && B.kind == b;
  };
  if (kind_pair(ClassKind::Unit, ClassKind::Unit)) {
    const GIrrep &ra = girreps[A.par], &rb = girreps[B.par];
    return CycNum(Rational(ra.dim * rb.dim, p * q));
  }
  if (kind_pair(ClassKind::Unit, ClassKind::AOrbit) ||
      kind_pair(ClassKind::AOrbit, ClassKind::Unit)) {
    const SimpleLabel& e = A.kind == ClassKind::Unit ? A : B;
    const SimpleLabel& a = A.kind == ClassKind::Unit ? B : A;
    const GIrrep& re = girreps[e.par];
    int l0 = classes[a.class_idx].rep.l;
    if (re.linear) return CycNum(Rational(1, q));
    // (1/q) sum_d zeta_q^{-s0 n^d l0}
    CycNum sum;
    for (int d = 0; d < p; ++d) {
      sum += CycNum::root_of_unity(
          q, -static_cast<long long>(re.s0) * G.pow_n[d] % q * l0);
    }
    return sum * CycNum(Rational(1, q));
  }
  if (kind_pair(ClassKind::Unit, ClassKind::BSector) ||
      kind_pair(ClassKind::BSector, ClassKind::Unit)) {
    const SimpleLabel& e = A.kind == ClassKind::Unit ? A : B;
    const SimpleLabel& b = A.kind == ClassKind::Unit ? B : A;
    const GIrrep& re = girreps[e.par];
    if (!re.linear) return CycNum();
    int k = b.grading;
    return CycNum::root_of_unity(p, -static_cast<long long>(re.m) * k) *
           CycNum(Rational(1, p));
  }
  if (kind_pair(ClassKind::AOrbit, ClassKind::AOrbit)) {
    int l1 = classes[A.class_idx].rep.l, l2 = classes[B.class_idx].rep.l;
    int s1 = A.par, s2 = B.par;
    CycNum sum;
    for (int d = 0; d < p; ++d) {
      long long e1 = static_cast<long long>(s1) * G.pow_n[d] % q * l2;
      long long e2 = static_cast<long long>(s2) * G.inv_pow_n[d] % q * l1;
      sum += CycNum::root_of_unity(q, -(e1 + e2));
    }
    return sum * CycNum(Rational(1, q));
  }
  if (kind_pair(ClassKind::AOrbit, ClassKind::BSector) ||
      kind_pair(ClassKind::BSector, ClassKind::AOrbit)) {
    return CycNum();
  }
  // BSector x BSector.
  int k1 = A.grading, k2 = B.grading;
  int s1 = A.par, s2 = B.par;
  CycNum phase =
      CycNum::root_of_unity(
          p, -(static_cast<long long>(s1) * k2 + static_cast<long long>(s2) * k1)) *
      CycNum::root_of_unity(p2, -2ll * u * k1 % p2 * k2);
  return phase * CycNum(Rational(1, p));
}

}  // namespace

TEST_CASE("omega is a normalized 3-cocycle") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    for (int u = 0; u < p; ++u) {
      // Exhaustive over b-parts (omega only sees them); fixed nonzero a-parts.
      for (int kg = 0; kg < p; ++kg) {
        for (int kh = 0; kh < p; ++kh) {
          for (int kk = 0; kk < p; ++kk) {
            for (int kl = 0; kl < p; ++kl) {
              Elem g{1, kg}, h{2, kh}, k{3, kk}, l{1, kl};
              CycNum lhs = omega_u(G, u, h, k, l) *
                           omega_u(G, u, g, G.mul(h, k), l) *
                           omega_u(G, u, g, h, k);
              CycNum rhs = omega_u(G, u, G.mul(g, h), k, l) *
                           omega_u(G, u, g, h, G.mul(k, l));
              CHECK(lhs == rhs);
            }
          }
        }
      }
      // Normalization.
      Elem e{0, 0};
      for (Elem g : G.elements()) {
        for (Elem h : G.elements()) {
          CHECK(omega_u(G, u, e, g, h) == CycNum(1));
          CHECK(omega_u(G, u, g, e, h) == CycNum(1));
          CHECK(omega_u(G, u, g, h, e) == CycNum(1));
        }
      }
    }
  }
  // Random full-element cocycle quadruples.
  GroupSpec G = make_group(5, 11);
  std::mt19937_64 rng(7);
  auto rnd = [&rng, &G]() {
    return Elem{static_cast<int>(rng() % 11), static_cast<int>(rng() % 5)};
  };
  for (int u = 0; u < 5; ++u) {
    for (int iter = 0; iter < 500; ++iter) {
      Elem g = rnd(), h = rnd(), k = rnd(), l = rnd();
      CycNum lhs = omega_u(G, u, h, k, l) * omega_u(G, u, g, G.mul(h, k), l) *
                   omega_u(G, u, g, h, k);
      CycNum rhs = omega_u(G, u, G.mul(g, h), k, l) *
                   omega_u(G, u, g, h, G.mul(k, l));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("theta matches the transgression of omega and is a 2-cocycle") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    std::mt19937_64 rng(11);
    auto rnd = [&rng, &G]() {
      return Elem{static_cast<int>(rng() % static_cast<uint64_t>(G.q)),
                  static_cast<int>(rng() % static_cast<uint64_t>(G.p))};
    };
    for (int u = 0; u < p; ++u) {
      for (int iter = 0; iter < 800; ++iter) {
        Elem t = rnd(), x = rnd(), y = rnd();
        Elem xy = G.mul(x, y);
        CycNum trans = omega_u(G, u, t, x, y) *
                       omega_u(G, u, x, y, G.conj(G.inv(xy), t)) /
                       omega_u(G, u, x, G.conj(G.inv(x), t), y);
        CHECK(theta_u(G, u, t, x, y) == trans);
      }
      // 2-cocycle condition on the centralizer of b^k (t central there).
      for (int kt = 0; kt < p; ++kt) {
        Elem t{0, kt};
        for (int i = 0; i < p; ++i) {
          for (int j = 0; j < p; ++j) {
            for (int m = 0; m < p; ++m) {
              Elem x{0, i}, y{0, j}, z{0, m};
              CHECK(theta_u(G, u, t, x, y) * theta_u(G, u, t, G.mul(x, y), z) ==
                    theta_u(G, u, t, x, G.mul(y, z)) * theta_u(G, u, t, y, z));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("projective b-sector characters satisfy the theta relation") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    for (int u = 0; u < p; ++u) {
      for (int k = 1; k < p; ++k) {
        Elem t{0, k};
        for (int s = 0; s < p; ++s) {
          auto pi = projective_irrep(G, u, k, s);
          for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
              Elem bi{0, i}, bj{0, j};
              CHECK(pi(i) * pi(j) ==
                    theta_u(G, u, t, bi, bj) * pi((i + j) % p));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("simple labels: rank, unit, global dimension, invertibles") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    auto labels = enumerate_simples(G, 1);
    int expected_rank = (q * q - 1) / p + p * p;
    CHECK(static_cast<int>(labels.size()) == expected_rank);

    // Unit first; exactly p invertibles, all with trivial grading.
    CHECK(labels[0].qdim == 1);
    CHECK(labels[0].kind == ClassKind::Unit);
    CHECK(labels[0].name == "e:lin0");
    int invertibles = 0;
    long long dim2 = 0;
    std::set<std::string> names;
    for (const auto& lab : labels) {
      dim2 += static_cast<long long>(lab.qdim) * lab.qdim;
      if (lab.qdim == 1) {
        ++invertibles;
        CHECK(lab.grading == 0);
      }
      names.insert(lab.name);
    }
    CHECK(invertibles == p);
    CHECK(dim2 == static_cast<long long>(p) * q * p * q);
    CHECK(names.size() == labels.size());
  }
}

TEST_CASE("S matches the closed-form oracle on every entry") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    auto classes = conjugacy_classes(G);
    for (int u = 0; u < p; ++u) {
      ModularData md = twisted_double_modular_data(G, u);
      const int rank = static_cast<int>(md.labels.size());
      for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
          CycNum expected =
              s_entry_oracle(G, u, md.labels[i], md.labels[j], classes);
          CHECK(md.S[i][j] == expected);
        }
      }
    }
  }
}

TEST_CASE("T: unit sector trivial, phases of the right joint order") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    for (int u = 0; u < p; ++u) {
      ModularData md = twisted_double_modular_data(G, u);
      // Unit-class labels twist trivially.
      for (size_t i = 0; i < md.labels.size(); ++i) {
        if (md.labels[i].kind == ClassKind::Unit) CHECK(md.T[i] == CycNum(1));
        CHECK(md.T[i] * md.T[i].conj() == CycNum(1));
      }
      // Joint order of all twists: pq untwisted, p^2 q twisted.
      long long expect = u == 0 ? static_cast<long long>(p) * q
                                : static_cast<long long>(p) * p * q;
      auto all_one_at = [&](long long m) {
        for (const auto& t : md.T) {
          if (!(t.pow(m) == CycNum(1))) return false;
        }
        return true;
      };
      CHECK(all_one_at(expect));
      for (long long d = 1; d < expect; ++d) {
        if (expect % d == 0) CHECK(!all_one_at(d));
      }
    }
  }
}

TEST_CASE("theta ratio in the S sum is identically 1 for canonical transversals") {
  for (auto [p, q] : {std::pair{3, 7}, std::pair{5, 11}}) {
    GroupSpec G = make_group(p, q);
    auto classes = conjugacy_classes(G);
    for (int u = 0; u < p; ++u) {
      for (const auto& CA : classes) {
        for (const auto& CB : classes) {
          for (size_t ig = 0; ig < CA.members.size(); ++ig) {
            for (size_t ih = 0; ih < CB.members.size(); ++ih) {
              Elem g = CA.members[ig], h = CB.members[ih];
              if (!(G.mul(g, h) == G.mul(h, g))) continue;
              CHECK(s_matrix_theta_ratio(G, u, CA.rep, g, CA.transversal[ig],
                                         CB.rep, h, CB.transversal[ih]) ==
                    CycNum(1));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("modularity at p=3 q=7 for all twistings") {
  GroupSpec G = make_group(3, 7);
  for (int u = 0; u < 3; ++u) {
    CAPTURE(u);
    ModularData md = twisted_double_modular_data(G, u);
    const int rank = static_cast<int>(md.labels.size());
    REQUIRE(rank == 25);

    // Symmetric and unitary.
    Matrix Sbar(rank, std::vector<CycNum>(rank));
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        CHECK(md.S[i][j] == md.S[j][i]);
        Sbar[i][j] = md.S[j][i].conj();
      }
    }
    CHECK(is_identity(mat_mul(md.S, Sbar)));

    // First S row lists quantum dimensions over the total dimension.
    for (int j = 0; j < rank; ++j) {
      CHECK(md.S[0][j] == CycNum(Rational(md.labels[j].qdim, 21)));
    }

    // C = S^2 is an involutive permutation fixing the unit.
    auto dual = dual_permutation(md);
    CHECK(dual[0] == 0);
    for (int i = 0; i < rank; ++i) {
      CHECK(dual[dual[i]] == i);
      CHECK(md.labels[dual[i]].qdim == md.labels[i].qdim);
      CHECK(md.T[dual[i]] == md.T[i]);
    }

    // Gauss sums and the modular relation.
    auto [gp, gm] = gauss_sums(md);
    CHECK(gp * gm == CycNum(21 * 21));
    CHECK(gp == CycNum(21));  // anomaly-free: p+ = D
    CHECK(gm == CycNum(21));
    Matrix ST(rank, std::vector<CycNum>(rank));
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) ST[i][j] = md.S[i][j] * md.T[j];
    }
    Matrix ST3 = mat_mul(mat_mul(ST, ST), ST);
    Matrix S2 = mat_mul(md.S, md.S);
    CycNum anomaly = gp / CycNum(21);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        CHECK(ST3[i][j] == anomaly * S2[i][j]);
      }
    }

    // Verlinde: nonnegative integers with the expected unit column/row and
    // dimension homomorphism.
    auto N = verlinde_fusion(md);
    for (int x = 0; x < rank; ++x) {
      for (int z = 0; z < rank; ++z) {
        CHECK(N[x][0][z] == (x == z ? 1 : 0));
        CHECK(N[0][x][z] == (x == z ? 1 : 0));
      }
      for (int y = 0; y < rank; ++y) {
        long long lhs = 0;
        for (int z = 0; z < rank; ++z) lhs += N[x][y][z] * md.labels[z].qdim;
        CHECK(lhs == static_cast<long long>(md.labels[x].qdim) *
                         md.labels[y].qdim);
        // N_{xy}^0 = [y = dual(x)].
        CHECK(N[x][y][0] == (dual[x] == y ? 1 : 0));
      }
    }
  }
}

TEST_CASE("modularity essentials at p=5 q=11") {
  GroupSpec G = make_group(5, 11);
  for (int u : {0, 1, 3}) {
    CAPTURE(u);
    ModularData md = twisted_double_modular_data(G, u);
    const int rank = static_cast<int>(md.labels.size());
    REQUIRE(rank == 49);
    Matrix Sbar(rank, std::vector<CycNum>(rank));
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        CHECK(md.S[i][j] == md.S[j][i]);
        Sbar[i][j] = md.S[j][i].conj();
      }
    }
    CHECK(is_identity(mat_mul(md.S, Sbar)));
    auto [gp, gm] = gauss_sums(md);
    CHECK(gp == CycNum(55));
    CHECK(gm == CycNum(55));
    auto dual = dual_permutation(md);
    CHECK(dual[0] == 0);
    for (int i = 0; i < rank; ++i) CHECK(dual[dual[i]] == i);
  }
}
