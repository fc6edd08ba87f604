#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/rational.hpp"

namespace zestlab {

// Element of a cyclotomic field Q(zeta_N), stored as a sparse vector of
// (exponent, coefficient) pairs in the power basis {zeta_N^e : 0 <= e < phi(N)}
// after reduction modulo the N-th cyclotomic polynomial. The stored conductor
// is kept small opportunistically (even conductors 2 mod 4 are rewritten at
// N/2; exponents sharing a factor with N are rewritten at the smaller
// conductor), but is not guaranteed minimal: a value may admit basis
// representations at two different conductors. Correctness never depends on
// the stored conductor:
//   - equality subtracts and tests for zero (zero has a unique representation);
//   - cross-value fingerprints must use canonical_string_at(L) with one common
//     conductor L for all values involved.
class CycNum {
 public:
  CycNum() : cond_(1) {}                        // zero
  CycNum(const Rational& r);                    // NOLINT: implicit by design
  CycNum(long long n) : CycNum(Rational(n)) {}  // NOLINT

  // zeta_N^k (k may be negative or >= N).
  static CycNum root_of_unity(long long N, long long k);

  // Builds from raw (exponent, coefficient) terms at conductor N; exponents
  // arbitrary integers.
  static CycNum from_terms(long long N,
                           const std::vector<std::pair<long long, Rational>>& terms);

  long long conductor() const { return cond_; }
  const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 &&
           terms_[0].second == Rational(1);
  }
  // Requires is_rational().
  Rational as_rational() const;

  CycNum operator-() const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum& operator/=(const CycNum& o) { return *this = *this / o; }

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  // Complex conjugate (zeta^e -> zeta^{N-e}).
  CycNum conj() const;

  // Galois action zeta_N^e -> zeta_N^{ke}; requires gcd(k, conductor) == 1.
  CycNum galois_apply(long long k) const;

  // Multiplicative inverse; throws std::domain_error on zero.
  CycNum inverse() const;

  // Integer power (negative allowed for nonzero values).
  CycNum pow(long long e) const;

  // Rewrites the value at a conductor multiple; the result is value-equal and
  // its *stored* conductor may still be smaller than M.
  CycNum lift_to(long long M) const;

  std::complex<double> to_complex() const;

  // Unique string per mathematical value among all values serialized at the
  // same forced conductor L (any common multiple of the conductors involved).
  std::string canonical_string_at(long long L) const;

  // Debug representation of the stored form (not canonical across values).
  std::string repr() const;

 private:
  void canonicalize(std::vector<std::pair<long long, Rational>>&& raw,
                    long long N);

  long long cond_;
  std::vector<std::pair<int, Rational>> terms_;  // sorted by exponent
};

// Coefficients of the N-th cyclotomic polynomial, constant term first,
// including the leading 1 (size phi(N)+1). Exposed for direct testing.
const std::vector<long long>& cyclotomic_poly_coeffs(long long N);

long long euler_phi(long long N);

}  // namespace zestlab
