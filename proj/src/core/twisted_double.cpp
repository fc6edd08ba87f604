#include "core/twisted_double.hpp"

#include <stdexcept>

namespace zestlab {

namespace {

// carry(i, j) in {0, 1} for integer lifts i, j in [0, p).
int carry(const GroupSpec& G, int i, int j) { return i + j >= G.p ? 1 : 0; }

}  // namespace

CycNum omega_u(const GroupSpec& G, int u, Elem g, Elem h, Elem k) {
  // zeta_{p^2}^{u * k_k * p * carry(k_g, k_h)} = zeta_p^{u * k_k * carry}.
  int c = carry(G, g.k, h.k);
  if (c == 0 || u == 0) return CycNum(1);
  return CycNum::root_of_unity(G.p, static_cast<long long>(u) * k.k);
}

CycNum theta_u(const GroupSpec& G, int u, Elem t, Elem x, Elem y) {
  int c = carry(G, x.k, y.k);
  if (c == 0 || u == 0) return CycNum(1);
  return CycNum::root_of_unity(G.p, static_cast<long long>(u) * t.k);
}

CycNum s_matrix_theta_ratio(const GroupSpec& G, int u, Elem tA, Elem g, Elem x,
                            Elem tB, Elem h, Elem y) {
  Elem xi = G.inv(x), yi = G.inv(y);
  CycNum num = theta_u(G, u, tA, xi, h) * theta_u(G, u, tA, G.mul(xi, h), x) *
               theta_u(G, u, tB, yi, g) * theta_u(G, u, tB, G.mul(yi, g), y);
  CycNum den = theta_u(G, u, g, x, xi) * theta_u(G, u, h, y, yi);
  return num / den;
}

std::vector<SimpleLabel> enumerate_simples(const GroupSpec& G, int u) {
  (void)u;  // the label set does not depend on the twisting
  auto classes = conjugacy_classes(G);
  auto girreps = irreps_of_G(G);
  std::vector<SimpleLabel> labels;

  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const ConjClass& c = classes[ci];
    int csize = static_cast<int>(c.members.size());
    if (c.kind == ClassKind::Unit) {
      for (size_t ri = 0; ri < girreps.size(); ++ri) {
        SimpleLabel lab;
        lab.class_idx = static_cast<int>(ci);
        lab.irrep_idx = static_cast<int>(ri);
        lab.kind = ClassKind::Unit;
        lab.par = static_cast<int>(ri);
        lab.dim = girreps[ri].dim;
        lab.qdim = csize * lab.dim;
        lab.grading = 0;
        lab.name = girreps[ri].linear
                       ? "e:lin" + std::to_string(girreps[ri].m)
                       : "e:ind" + std::to_string(girreps[ri].s0);
        labels.push_back(std::move(lab));
      }
    } else if (c.kind == ClassKind::AOrbit) {
      for (int s = 0; s < G.q; ++s) {
        SimpleLabel lab;
        lab.class_idx = static_cast<int>(ci);
        lab.irrep_idx = s;
        lab.kind = ClassKind::AOrbit;
        lab.par = s;
        lab.dim = 1;
        lab.qdim = csize;
        lab.grading = 0;
        lab.name = "a" + std::to_string(c.rep.l) + ":s" + std::to_string(s);
        labels.push_back(std::move(lab));
      }
    } else {
      for (int s = 0; s < G.p; ++s) {
        SimpleLabel lab;
        lab.class_idx = static_cast<int>(ci);
        lab.irrep_idx = s;
        lab.kind = ClassKind::BSector;
        lab.par = s;
        lab.dim = 1;
        lab.qdim = csize;
        lab.grading = c.grading;
        lab.name = "b" + std::to_string(c.grading) + ":s" + std::to_string(s);
        labels.push_back(std::move(lab));
      }
    }
  }
  return labels;
}

CycNum centralizer_character(const GroupSpec& G,
                             const std::vector<ConjClass>& classes,
                             const SimpleLabel& lab, int u, Elem z) {
  const ConjClass& c = classes[lab.class_idx];
  switch (lab.kind) {
    case ClassKind::Unit: {
      auto girreps = irreps_of_G(G);
      return girreps[lab.par].character(G, z);
    }
    case ClassKind::AOrbit: {
      if (z.k != 0) {
        throw std::logic_error("centralizer_character: element not in <a>");
      }
      return CycNum::root_of_unity(G.q, static_cast<long long>(lab.par) * z.l);
    }
    case ClassKind::BSector: {
      if (z.l != 0) {
        throw std::logic_error("centralizer_character: element not in <b>");
      }
      long long p2 = static_cast<long long>(G.p) * G.p;
      return CycNum::root_of_unity(G.p, static_cast<long long>(lab.par) * z.k) *
             CycNum::root_of_unity(
                 p2, static_cast<long long>(u) * c.grading % p2 * z.k);
    }
  }
  throw std::logic_error("centralizer_character: unknown kind");
}

ModularData twisted_double_modular_data(const GroupSpec& G, int u) {
  ModularData md;
  md.p = G.p;
  md.q = G.q;
  md.n = G.n;
  md.u = u;
  auto classes = conjugacy_classes(G);
  md.labels = enumerate_simples(G, u);
  const int rank = static_cast<int>(md.labels.size());

  // T: normalized character of the class representative.
  md.T.reserve(rank);
  for (const auto& lab : md.labels) {
    const ConjClass& c = classes[lab.class_idx];
    CycNum chi = centralizer_character(G, classes, lab, u, c.rep);
    md.T.push_back(chi / CycNum(lab.dim));
  }

  // S via the twisted-double character sum over commuting pairs.
  Rational inv_order(1, G.order());
  md.S.assign(rank, std::vector<CycNum>(rank));
  for (int ia = 0; ia < rank; ++ia) {
    const SimpleLabel& A = md.labels[ia];
    const ConjClass& CA = classes[A.class_idx];
    for (int ib = ia; ib < rank; ++ib) {
      const SimpleLabel& B = md.labels[ib];
      const ConjClass& CB = classes[B.class_idx];
      CycNum sum;
      for (size_t ig = 0; ig < CA.members.size(); ++ig) {
        Elem g = CA.members[ig];
        Elem x = CA.transversal[ig];
        Elem xi = G.inv(x);
        for (size_t ih = 0; ih < CB.members.size(); ++ih) {
          Elem h = CB.members[ih];
          if (!(G.mul(g, h) == G.mul(h, g))) continue;
          Elem y = CB.transversal[ih];
          CycNum ratio =
              s_matrix_theta_ratio(G, u, CA.rep, g, x, CB.rep, h, y);
          CycNum chiA =
              centralizer_character(G, classes, A, u, G.mul(G.mul(xi, h), x));
          CycNum chiB = centralizer_character(G, classes, B, u,
                                              G.mul(G.mul(G.inv(y), g), y));
          sum += (ratio * chiA * chiB).conj();
        }
      }
      sum *= CycNum(inv_order);
      md.S[ia][ib] = sum;
      md.S[ib][ia] = std::move(sum);  // the sum is symmetric in (A, B)
    }
  }
  return md;
}

std::vector<std::vector<std::vector<long long>>> verlinde_fusion(
    const ModularData& md) {
  const int rank = static_cast<int>(md.labels.size());
  std::vector<std::vector<std::vector<long long>>> N(
      rank, std::vector<std::vector<long long>>(rank,
                                                std::vector<long long>(rank)));
  for (int x = 0; x < rank; ++x) {
    for (int y = x; y < rank; ++y) {
      for (int z = 0; z < rank; ++z) {
        CycNum sum;
        for (int w = 0; w < rank; ++w) {
          sum += md.S[x][w] * md.S[y][w] * md.S[z][w].conj() / md.S[0][w];
        }
        if (!sum.is_rational()) {
          throw std::logic_error("verlinde_fusion: non-rational coefficient");
        }
        Rational r = sum.as_rational();
        if (!r.is_integer() || r.num() < 0) {
          throw std::logic_error(
              "verlinde_fusion: coefficient not a nonnegative integer");
        }
        N[x][y][z] = r.num();
        N[y][x][z] = r.num();
      }
    }
  }
  return N;
}

std::pair<CycNum, CycNum> gauss_sums(const ModularData& md) {
  CycNum plus, minus;
  for (size_t i = 0; i < md.labels.size(); ++i) {
    CycNum d2(static_cast<long long>(md.labels[i].qdim) * md.labels[i].qdim);
    plus += d2 * md.T[i];
    minus += d2 * md.T[i].conj();  // T entries are unit phases
  }
  return {plus, minus};
}

std::vector<int> dual_permutation(const ModularData& md) {
  const int rank = static_cast<int>(md.labels.size());
  std::vector<int> dual(rank, -1);
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      CycNum c;
      for (int k = 0; k < rank; ++k) c += md.S[i][k] * md.S[k][j];
      if (c.is_zero()) continue;
      if (!c.is_one() || dual[i] != -1) {
        throw std::logic_error("dual_permutation: S^2 is not a permutation");
      }
      dual[i] = j;
    }
    if (dual[i] == -1) {
      throw std::logic_error("dual_permutation: missing dual");
    }
  }
  return dual;
}

}  // namespace zestlab
