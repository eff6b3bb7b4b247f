#pragma once

// Exact elements of Q(zeta_p). A value is (sum_k c_k zeta^k) / den with the
// canonical choice c_0 = 0, so the coefficients live on {zeta, ..., zeta^{p-1}},
// which is a Q-basis. Together with gcd(c, den) = 1 and den > 0 this makes the
// representation unique and equality syntactic.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace orbitlab::cyclotomic {

class CyclotomicValue {
 public:
  explicit CyclotomicValue(std::uint32_t p = 2);
  static CyclotomicValue integer(std::uint32_t p, const mpz_class& n);
  /// zeta^k
  static CyclotomicValue root_power(std::uint32_t p, std::uint64_t k);
  /// (sum_k counts[k] zeta^k) / den, counts indexed by exponent 0..p-1.
  static CyclotomicValue from_counts(std::uint32_t p, std::vector<mpz_class> counts, const mpz_class& den = 1);

  std::uint32_t p() const { return p_; }
  /// Coefficients on zeta^1..zeta^{p-1} (length p - 1).
  std::vector<mpz_class> coefficients() const { return {c_.begin() + 1, c_.end()}; }
  const mpz_class& denominator() const { return den_; }

  CyclotomicValue operator+(const CyclotomicValue& o) const;
  CyclotomicValue operator-(const CyclotomicValue& o) const;
  CyclotomicValue operator*(const CyclotomicValue& o) const;
  CyclotomicValue divided_by(const mpz_class& n) const;
  /// Complex conjugation, zeta -> zeta^{-1}.
  CyclotomicValue conj() const;

  bool is_zero() const;
  /// True when the value is rational; then `out` receives it.
  bool is_rational(mpq_class* out = nullptr) const;
  bool is_integer(const mpz_class& n) const;

  bool operator==(const CyclotomicValue& o) const { return p_ == o.p_ && c_ == o.c_ && den_ == o.den_; }

  /// e.g. "3", "(2z + z^2)/3"
  std::string to_string() const;

 private:
  void normalize();
  void same_field(const CyclotomicValue& o) const;

  std::uint32_t p_;
  std::vector<mpz_class> c_;  // length p, c_[0] == 0 after normalize()
  mpz_class den_ = 1;
};

}  // namespace orbitlab::cyclotomic
