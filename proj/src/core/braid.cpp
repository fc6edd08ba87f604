#include "core/braid.hpp"

#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace zestlab {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

long long norm_mod(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

AnyonSystem::AnyonSystem(const GroupSpec& G, int u)
    : G_(G),
      u_(norm_mod(u, G.p)),
      L_(static_cast<long long>(G.p) * G.p * G.q),
      classes_(conjugacy_classes(G)),
      labels_(enumerate_simples(G, u_)) {
  const int p = G_.p, q = G_.q;
  const long long Lp = L_ / p;    // zeta_p = zeta_L^{Lp}
  const long long Lq = L_ / q;    // zeta_q = zeta_L^{Lq}
  const long long Lp2 = L_ / (static_cast<long long>(p) * p);

  auto girreps = irreps_of_G(G_);
  const auto elems = G_.elements();
  table_.resize(labels_.size());
  degs_.resize(labels_.size());
  twist_expo_.resize(labels_.size());
  for (size_t X = 0; X < labels_.size(); ++X) {
    const SimpleLabel& lab = labels_[X];
    const ConjClass& cls = classes_[lab.class_idx];
    const int d = lab.qdim;
    degs_[X].resize(d);
    if (lab.kind == ClassKind::Unit) {
      for (int s = 0; s < d; ++s) degs_[X][s] = Elem{0, 0};
    } else {
      for (int s = 0; s < d; ++s) degs_[X][s] = cls.members[s];
    }
    table_[X].assign(elems.size() * d, Mono{});
    for (size_t xi = 0; xi < elems.size(); ++xi) {
      Elem x = elems[xi];
      for (int s = 0; s < d; ++s) {
        Mono m;
        switch (lab.kind) {
          case ClassKind::Unit: {
            const GIrrep& rep = girreps[lab.par];
            if (rep.linear) {
              m.state = 0;
              m.expo = norm_mod(static_cast<long long>(rep.m) * x.k, p) * Lp;
            } else {
              int j2 = (x.k + s) % p;
              long long e =
                  static_cast<long long>(rep.s0) * G_.inv_pow_n[j2] % q * x.l;
              m.state = j2;
              m.expo = norm_mod(e, q) * Lq;
            }
            break;
          }
          case ClassKind::AOrbit: {
            int j2 = (s + x.k) % p;
            long long e =
                static_cast<long long>(lab.par) * G_.inv_pow_n[j2] % q * x.l;
            m.state = j2;
            m.expo = norm_mod(e, q) * Lq;
            break;
          }
          case ClassKind::BSector: {
            Elem moved = G_.conj(x, cls.members[s]);
            m.state = moved.l;  // members are a^l b^k in order l = 0..q-1
            long long e = norm_mod(static_cast<long long>(lab.par) * x.k, p) * Lp +
                          norm_mod(static_cast<long long>(u_) * lab.grading % (p * p) * x.k,
                                   static_cast<long long>(p) * p) *
                              Lp2;
            m.expo = norm_mod(e, L_);
            break;
          }
        }
        table_[X][xi * d + s] = m;
      }
    }
    // Twist: ratio character(rep evaluated at class representative) / dim.
    switch (lab.kind) {
      case ClassKind::Unit:
        twist_expo_[X] = 0;
        break;
      case ClassKind::AOrbit:
        twist_expo_[X] =
            norm_mod(static_cast<long long>(lab.par) * cls.rep.l, q) * Lq;
        break;
      case ClassKind::BSector:
        twist_expo_[X] = norm_mod(
            norm_mod(static_cast<long long>(lab.par) * lab.grading, p) * Lp +
                norm_mod(static_cast<long long>(u_) * lab.grading % (p * p) *
                             lab.grading,
                         static_cast<long long>(p) * p) *
                    Lp2,
            L_);
        break;
    }
  }
  unit_roots_.resize(L_);
  for (long long e = 0; e < L_; ++e) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(e) /
                 static_cast<double>(L_);
    unit_roots_[e] = {std::cos(ang), std::sin(ang)};
  }
}

Elem AnyonSystem::state_deg(int X, int s) const { return degs_[X][s]; }

AnyonSystem::Mono AnyonSystem::act(int X, Elem x, int s) const {
  return table_[X][static_cast<size_t>(G_.index_of(x)) * dim(X) + s];
}

long long AnyonSystem::twist_expo(int X) const { return twist_expo_[X]; }

long long AnyonSystem::omega_expo(Elem g, Elem h, Elem k) const {
  if (u_ == 0 || g.k + h.k < G_.p) return 0;
  return norm_mod(static_cast<long long>(u_) * k.k, G_.p) * (L_ / G_.p);
}

long long AnyonSystem::theta_expo(Elem t, Elem x, Elem y) const {
  if (u_ == 0 || x.k + y.k < G_.p) return 0;
  return norm_mod(static_cast<long long>(u_) * t.k, G_.p) * (L_ / G_.p);
}

CycNum AnyonSystem::zeta_pow(long long e) const {
  return CycNum::root_of_unity(L_, e);
}

std::complex<double> AnyonSystem::zeta_pow_f(long long e) const {
  return unit_roots_[norm_mod(e, L_)];
}

void apply_letter(const AnyonSystem& A, WalkState& ws, int gen, int sign) {
  const int i = gen - 1;
  const GroupSpec& G = A.group();
  Elem P{0, 0};
  for (int s = 0; s < i; ++s) {
    P = G.mul(P, A.state_deg(ws.colors[s], ws.states[s]));
  }
  if (sign > 0) {
    Elem x = A.state_deg(ws.colors[i], ws.states[i]);
    Elem y = A.state_deg(ws.colors[i + 1], ws.states[i + 1]);
    auto m = A.act(ws.colors[i + 1], x, ws.states[i + 1]);
    ws.expo += m.expo + A.omega_expo(P, x, y) -
               A.omega_expo(P, G.conj(x, y), x);
    int vcol = ws.colors[i], vst = ws.states[i];
    ws.colors[i] = ws.colors[i + 1];
    ws.states[i] = m.state;
    ws.colors[i + 1] = vcol;
    ws.states[i + 1] = vst;
  } else {
    // Inverse crossing: slot i holds x.w, slot i+1 holds v; recover v, w.
    Elem ag = A.state_deg(ws.colors[i], ws.states[i]);
    Elem x = A.state_deg(ws.colors[i + 1], ws.states[i + 1]);
    Elem xinv = G.inv(x);
    auto m = A.act(ws.colors[i], xinv, ws.states[i]);
    ws.expo += m.expo - A.theta_expo(ag, x, xinv) -
               A.omega_expo(P, x, G.conj(xinv, ag)) + A.omega_expo(P, ag, x);
    int vcol = ws.colors[i + 1], vst = ws.states[i + 1];
    ws.colors[i + 1] = ws.colors[i];
    ws.states[i + 1] = m.state;
    ws.colors[i] = vcol;
    ws.states[i] = vst;
  }
}

std::vector<long long> closure_trace_counts(const AnyonSystem& A,
                                            const BraidWord& w,
                                            const std::vector<int>& colors) {
  const int n = w.strands;
  if (static_cast<int>(colors.size()) != n) {
    fail("closure trace: need one color per strand");
  }
  for (int c : colors) {
    if (c < 0 || c >= A.rank()) fail("closure trace: color out of range");
  }
  ClosureInfo ci = analyze_closure(w);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (ci.component_of[s] == ci.component_of[t] && colors[s] != colors[t]) {
        fail("closure trace: colors must be constant on components");
      }
    }
  }

  std::vector<long long> counts(A.L(), 0);
  std::vector<int> st(n, 0);
  WalkState ws;
  for (;;) {
    ws.colors = colors;
    ws.states = st;
    ws.expo = 0;
    for (auto [gen, sign] : w.letters) apply_letter(A, ws, gen, sign);
    if (ws.states == st) counts[norm_mod(ws.expo, A.L())] += 1;
    // Next basis tuple (mixed radix increment).
    int pos = n - 1;
    while (pos >= 0) {
      if (++st[pos] < A.dim(colors[pos])) break;
      st[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return counts;
}

CycNum counts_to_cyc(const AnyonSystem& A,
                     const std::vector<long long>& counts) {
  std::vector<std::pair<long long, Rational>> terms;
  for (long long e = 0; e < static_cast<long long>(counts.size()); ++e) {
    if (counts[e] != 0) terms.emplace_back(e, Rational(counts[e]));
  }
  return CycNum::from_terms(A.L(), terms);
}

std::complex<double> counts_to_complex(const AnyonSystem& A,
                                       const std::vector<long long>& counts) {
  std::complex<double> sum = 0;
  for (long long e = 0; e < static_cast<long long>(counts.size()); ++e) {
    if (counts[e] != 0) {
      sum += static_cast<double>(counts[e]) * A.zeta_pow_f(e);
    }
  }
  return sum;
}

std::vector<long long> link_invariant_counts(const AnyonSystem& A,
                                             const LinkDescriptor& d,
                                             const std::vector<int>& colors) {
  std::vector<long long> counts = closure_trace_counts(A, d.word, colors);
  ClosureInfo ci = analyze_closure(d.word);
  std::vector<long long> exps = framing_exponents(d, ci);
  long long shift = 0;
  std::vector<bool> seen(ci.num_components, false);
  for (int s = 0; s < d.word.strands; ++s) {
    int c = ci.component_of[s];
    if (seen[c]) continue;
    seen[c] = true;
    shift += norm_mod(exps[c], A.L()) * A.twist_expo(colors[s]) % A.L();
  }
  shift = norm_mod(shift, A.L());
  if (shift == 0) return counts;
  std::vector<long long> out(A.L(), 0);
  for (long long e = 0; e < A.L(); ++e) {
    if (counts[e] != 0) out[(e + shift) % A.L()] = counts[e];
  }
  return out;
}

CycNum link_invariant(const AnyonSystem& A, const LinkDescriptor& d,
                      const std::vector<int>& colors) {
  return counts_to_cyc(A, link_invariant_counts(A, d, colors));
}

std::complex<double> link_invariant_f(const AnyonSystem& A,
                                      const LinkDescriptor& d,
                                      const std::vector<int>& colors) {
  return counts_to_complex(A, link_invariant_counts(A, d, colors));
}

std::vector<std::array<int, 3>> borromean_sample_triples(
    int rank, const std::vector<SimpleLabel>& labels, int sample,
    std::uint64_t seed) {
  std::vector<std::array<int, 3>> out;
  std::vector<int> graded;
  for (int i = 0; i < rank; ++i) {
    if (labels[i].grading != 0) graded.push_back(i);
  }
  for (int a : graded) {
    for (int b : graded) {
      for (int c : graded) {
        if (static_cast<int>(out.size()) >= sample) return out;
        out.push_back({a, b, c});
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::set<std::array<int, 3>> used(out.begin(), out.end());
  while (static_cast<int>(out.size()) < sample &&
         static_cast<int>(used.size()) <
             rank * rank * rank) {
    std::array<int, 3> t = {static_cast<int>(rng() % rank),
                            static_cast<int>(rng() % rank),
                            static_cast<int>(rng() % rank)};
    if (used.insert(t).second) out.push_back(t);
  }
  return out;
}

InvariantSuite compute_invariant_suite(const AnyonSystem& A, int sample,
                                       std::uint64_t seed) {
  const auto& links = canonical_links();
  const LinkDescriptor& wh = links.at("whitehead");
  const LinkDescriptor& bo = links.at("borromean");
  const LinkDescriptor& f2 = links.at("five2");
  InvariantSuite suite;
  const int rank = A.rank();
  suite.W.assign(rank, std::vector<CycNum>(rank));
  suite.five2.resize(rank);
  for (int X = 0; X < rank; ++X) {
    for (int Y = 0; Y < rank; ++Y) {
      suite.W[X][Y] = link_invariant(A, wh, {X, Y, X});
    }
    suite.five2[X] = link_invariant(A, f2, {X, X, X});
  }
  for (const auto& t : borromean_sample_triples(rank, A.labels(), sample, seed)) {
    BorromeanSample s;
    s.X = t[0];
    s.Y = t[1];
    s.Z = t[2];
    s.value = link_invariant(A, bo, {t[0], t[1], t[2]});
    suite.borromean.push_back(std::move(s));
  }
  return suite;
}

}  // namespace zestlab
