#include "core/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zestlab {

namespace {

constexpr long long kMaxConductor = 1000000;

// Exact division of integer polynomials (constant term first); requires the
// division to be exact with a monic divisor at its top degree.
std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                         const std::vector<long long>& den) {
  long long dn = static_cast<long long>(num.size()) - 1;
  long long dd = static_cast<long long>(den.size()) - 1;
  if (dd < 0 || den[dd] == 0) throw std::logic_error("poly_divide: bad divisor");
  std::vector<long long> quo(dn - dd + 1, 0);
  for (long long k = dn - dd; k >= 0; --k) {
    long long c = num[k + dd];
    if (c % den[dd] != 0) throw std::logic_error("poly_divide: not exact");
    long long q = c / den[dd];
    quo[k] = q;
    if (q != 0) {
      for (long long j = 0; j <= dd; ++j) num[k + j] -= q * den[j];
    }
  }
  for (long long v : num) {
    if (v != 0) throw std::logic_error("poly_divide: nonzero remainder");
  }
  return quo;
}

struct FieldTable {
  long long N = 1;
  long long deg = 1;                        // phi(N)
  std::vector<long long> phi_coeffs;        // size deg+1, monic
  // rows[i] = coefficients of x^{deg+i} reduced mod Phi_N, i in [0, N-deg)
  std::vector<std::vector<long long>> rows;
};

std::mutex g_tables_mu;
std::map<long long, std::vector<long long>>& poly_memo() {
  static auto* m = new std::map<long long, std::vector<long long>>();
  return *m;
}
std::map<long long, std::unique_ptr<FieldTable>>& table_memo() {
  static auto* m = new std::map<long long, std::unique_ptr<FieldTable>>();
  return *m;
}

// Unlocked recursive computation; caller holds g_tables_mu.
const std::vector<long long>& poly_coeffs_locked(long long N) {
  auto& memo = poly_memo();
  auto it = memo.find(N);
  if (it != memo.end()) return it->second;
  std::vector<long long> result;
  if (N == 1) {
    result = {-1, 1};  // x - 1
  } else {
    std::vector<long long> num(N + 1, 0);  // x^N - 1
    num[0] = -1;
    num[N] = 1;
    for (long long d = 1; d < N; ++d) {
      if (N % d == 0) num = poly_divide_exact(num, poly_coeffs_locked(d));
    }
    result = std::move(num);
  }
  return memo.emplace(N, std::move(result)).first->second;
}

const FieldTable& field_table(long long N) {
  std::lock_guard<std::mutex> lock(g_tables_mu);
  auto& memo = table_memo();
  auto it = memo.find(N);
  if (it != memo.end()) return *it->second;

  auto ft = std::make_unique<FieldTable>();
  ft->N = N;
  ft->phi_coeffs = poly_coeffs_locked(N);
  ft->deg = static_cast<long long>(ft->phi_coeffs.size()) - 1;
  long long deg = ft->deg;
  ft->rows.reserve(N - deg);
  // x^deg = -sum_{j<deg} phi[j] x^j
  std::vector<long long> row(deg);
  for (long long j = 0; j < deg; ++j) row[j] = -ft->phi_coeffs[j];
  ft->rows.push_back(row);
  for (long long e = deg + 1; e < N; ++e) {
    std::vector<long long> next(deg, 0);
    long long top = row[deg - 1];
    for (long long j = deg - 1; j >= 1; --j) next[j] = row[j - 1];
    if (top != 0) {
      const auto& r0 = ft->rows[0];
      for (long long j = 0; j < deg; ++j) next[j] += top * r0[j];
    }
    ft->rows.push_back(next);
    row = std::move(next);
  }
  return *memo.emplace(N, std::move(ft)).first->second;
}

long long positive_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly_coeffs(long long N) {
  if (N < 1) throw std::domain_error("cyclotomic_poly_coeffs: N must be >= 1");
  std::lock_guard<std::mutex> lock(g_tables_mu);
  return poly_coeffs_locked(N);
}

long long euler_phi(long long N) {
  if (N < 1) throw std::domain_error("euler_phi: N must be >= 1");
  long long result = N;
  long long n = N;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      result -= result / d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

CycNum::CycNum(const Rational& r) : cond_(1) {
  if (!r.is_zero()) terms_.push_back({0, r});
}

CycNum CycNum::root_of_unity(long long N, long long k) {
  if (N < 1) throw std::domain_error("root_of_unity: N must be >= 1");
  if (N > kMaxConductor) throw std::domain_error("root_of_unity: conductor too large");
  CycNum x;
  x.canonicalize({{positive_mod(k, N), Rational(1)}}, N);
  return x;
}

CycNum CycNum::from_terms(
    long long N, const std::vector<std::pair<long long, Rational>>& terms) {
  if (N < 1) throw std::domain_error("from_terms: N must be >= 1");
  if (N > kMaxConductor) throw std::domain_error("from_terms: conductor too large");
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(terms.size());
  for (const auto& t : terms) raw.push_back({positive_mod(t.first, N), t.second});
  CycNum x;
  x.canonicalize(std::move(raw), N);
  return x;
}

// Invariant on return: terms_ is the (unique) reduced basis representation at
// cond_, where cond_ has been shrunk by the 2-mod-4 rewrite and by common
// exponent factors whenever possible.
void CycNum::canonicalize(std::vector<std::pair<long long, Rational>>&& raw,
                          long long N) {
  while (true) {
    // Fold duplicate exponents.
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<long long, Rational>> acc;
    acc.reserve(raw.size());
    for (auto& t : raw) {
      if (!acc.empty() && acc.back().first == t.first) {
        acc.back().second += t.second;
      } else {
        acc.push_back(std::move(t));
      }
    }
    acc.erase(std::remove_if(acc.begin(), acc.end(),
                             [](const auto& t) { return t.second.is_zero(); }),
              acc.end());
    if (acc.empty()) {
      cond_ = 1;
      terms_.clear();
      return;
    }

    // Conductor 2 mod 4 is never minimal: zeta_{2m}^e = (-1)^e zeta_m^{e(m+1)/2}.
    if (N % 2 == 0 && (N / 2) % 2 == 1) {
      long long m = N / 2;
      std::vector<std::pair<long long, Rational>> next;
      next.reserve(acc.size());
      for (const auto& t : acc) {
        Rational c = (t.first % 2 == 0) ? t.second : -t.second;
        long long e = m == 1 ? 0 : (t.first % m) * ((m + 1) / 2) % m;
        next.push_back({e, c});
      }
      raw = std::move(next);
      N = m;
      continue;
    }

    // Collapse common exponent factors into a smaller conductor.
    long long g = N;
    for (const auto& t : acc) g = std::gcd(g, t.first);
    if (g > 1) {
      for (auto& t : acc) t.first /= g;
      raw = std::move(acc);
      N /= g;
      continue;
    }

    const FieldTable& ft = field_table(N);
    bool in_basis = true;
    for (const auto& t : acc) {
      if (t.first >= ft.deg) {
        in_basis = false;
        break;
      }
    }
    if (!in_basis) {
      // Reduce modulo Phi_N, then re-run (the result may collapse further).
      std::vector<Rational> dense(ft.deg, Rational(0));
      for (const auto& t : acc) {
        if (t.first < ft.deg) {
          dense[t.first] += t.second;
        } else {
          const auto& row = ft.rows[t.first - ft.deg];
          for (long long j = 0; j < ft.deg; ++j) {
            if (row[j] != 0) dense[j] += t.second * Rational(row[j]);
          }
        }
      }
      raw.clear();
      for (long long j = 0; j < ft.deg; ++j) {
        if (!dense[j].is_zero()) raw.push_back({j, dense[j]});
      }
      continue;
    }

    cond_ = N;
    terms_.clear();
    terms_.reserve(acc.size());
    for (const auto& t : acc) {
      terms_.push_back({static_cast<int>(t.first), t.second});
    }
    return;
  }
}

Rational CycNum::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) throw std::domain_error("as_rational: value not rational");
  return terms_[0].second;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long long L = std::lcm(a.cond_, b.cond_);
  if (L > kMaxConductor) throw std::domain_error("CycNum: conductor overflow");
  long long fa = L / a.cond_, fb = L / b.cond_;
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(a.terms_.size() + b.terms_.size());
  for (const auto& t : a.terms_) raw.push_back({t.first * fa, t.second});
  for (const auto& t : b.terms_) raw.push_back({t.first * fb, t.second});
  CycNum x;
  x.canonicalize(std::move(raw), L);
  return x;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.is_zero() || b.is_zero()) return CycNum();
  long long L = std::lcm(a.cond_, b.cond_);
  if (L > kMaxConductor) throw std::domain_error("CycNum: conductor overflow");
  long long fa = L / a.cond_, fb = L / b.cond_;
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    long long ea = ta.first * fa;
    for (const auto& tb : b.terms_) {
      raw.push_back({(ea + tb.first * fb) % L, ta.second * tb.second});
    }
  }
  CycNum x;
  x.canonicalize(std::move(raw), L);
  return x;
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.cond_ == b.cond_) return a.terms_ == b.terms_;
  // Reduced basis representations can legitimately live at different stored
  // conductors; the difference has the unique representation 0 iff equal.
  return (a - b).is_zero();
}

CycNum CycNum::conj() const {
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) {
    raw.push_back({t.first == 0 ? 0 : cond_ - t.first, t.second});
  }
  CycNum x;
  x.canonicalize(std::move(raw), cond_);
  return x;
}

CycNum CycNum::galois_apply(long long k) const {
  k = positive_mod(k, cond_);
  if (std::gcd(k, cond_) != 1) {
    throw std::domain_error("galois_apply: k not coprime to conductor");
  }
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) raw.push_back({t.first * k % cond_, t.second});
  CycNum x;
  x.canonicalize(std::move(raw), cond_);
  return x;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("CycNum: inverse of zero");
  if (is_rational()) return CycNum(as_rational().inverse());
  if (terms_.size() == 1) {
    // c * zeta^e  ->  c^{-1} * zeta^{-e}
    const auto& t = terms_[0];
    return CycNum(t.second.inverse()) * root_of_unity(cond_, cond_ - t.first);
  }
  // General case via the field norm: 1/v = (prod_{k != 1} sigma_k(v)) / N(v).
  // The running product is content-normalized to delay overflow; the content
  // cancels between numerator and norm.
  CycNum prod(Rational(1));
  auto normalize_content = [](CycNum& x) {
    if (x.terms_.empty()) return;
    long long g = 0;
    for (const auto& t : x.terms_) g = std::gcd(g, std::abs(t.second.num()));
    if (g > 1) {
      Rational inv_g(1, g);
      for (auto& t : x.terms_) t.second *= inv_g;
    }
  };
  for (long long k = 2; k < cond_; ++k) {
    if (std::gcd(k, cond_) != 1) continue;
    prod *= galois_apply(k);
    normalize_content(prod);
  }
  CycNum norm = prod * (*this);
  if (!norm.is_rational() || norm.is_zero()) {
    throw std::logic_error("CycNum::inverse: norm computation failed");
  }
  return prod * CycNum(norm.as_rational().inverse());
}

CycNum CycNum::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum base = *this;
  CycNum acc(Rational(1));
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

CycNum CycNum::lift_to(long long M) const {
  if (M == cond_) return *this;
  if (M < 1 || M % cond_ != 0) {
    throw std::domain_error("lift_to: target not a multiple of conductor");
  }
  if (M > kMaxConductor) throw std::domain_error("lift_to: conductor too large");
  long long f = M / cond_;
  std::vector<std::pair<long long, Rational>> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) raw.push_back({t.first * f, t.second});
  CycNum x;
  x.canonicalize(std::move(raw), M);
  return x;
}

std::complex<double> CycNum::to_complex() const {
  long double re = 0, im = 0;
  const long double tau = 2.0L * std::numbers::pi_v<long double>;
  for (const auto& t : terms_) {
    long double c = t.second.to_long_double();
    long double ang = tau * static_cast<long double>(t.first) /
                      static_cast<long double>(cond_);
    re += c * std::cos(ang);
    im += c * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycNum::canonical_string_at(long long L) const {
  if (L < 1 || L % cond_ != 0) {
    throw std::domain_error("canonical_string_at: L not a multiple of conductor");
  }
  if (L > kMaxConductor) throw std::domain_error("canonical_string_at: too large");
  const FieldTable& ft = field_table(L);
  std::vector<Rational> dense(ft.deg, Rational(0));
  long long f = L / cond_;
  for (const auto& t : terms_) {
    long long e = t.first * f;
    if (e < ft.deg) {
      dense[e] += t.second;
    } else {
      const auto& row = ft.rows[e - ft.deg];
      for (long long j = 0; j < ft.deg; ++j) {
        if (row[j] != 0) dense[j] += t.second * Rational(row[j]);
      }
    }
  }
  std::ostringstream os;
  os << "C" << L;
  for (long long j = 0; j < ft.deg; ++j) {
    if (!dense[j].is_zero()) {
      os << "|" << j << ":" << dense[j].num() << "/" << dense[j].den();
    }
  }
  return os.str();
}

std::string CycNum::repr() const {
  std::ostringstream os;
  os << "C" << cond_;
  for (const auto& t : terms_) {
    os << "|" << t.first << ":" << t.second.num() << "/" << t.second.den();
  }
  return os.str();
}

}  // namespace zestlab
