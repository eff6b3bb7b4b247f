#include "orbitlab/cyclotomic.hpp"

#include "orbitlab/errors.hpp"

namespace orbitlab::cyclotomic {

CyclotomicValue::CyclotomicValue(std::uint32_t p) : p_(p), c_(p) {
  if (p < 2) throw DomainError("cyclotomic values need a prime p >= 2");
}

CyclotomicValue CyclotomicValue::integer(std::uint32_t p, const mpz_class& n) {
  CyclotomicValue v(p);
  v.c_[0] = n;
  v.normalize();
  return v;
}

CyclotomicValue CyclotomicValue::root_power(std::uint32_t p, std::uint64_t k) {
  CyclotomicValue v(p);
  v.c_[k % p] = 1;
  v.normalize();
  return v;
}

CyclotomicValue CyclotomicValue::from_counts(std::uint32_t p, std::vector<mpz_class> counts, const mpz_class& den) {
  if (counts.size() != p) throw DomainError("cyclotomic counts must have length p");
  if (den == 0) throw DomainError("cyclotomic denominator is zero");
  CyclotomicValue v(p);
  v.c_ = std::move(counts);
  v.den_ = den;
  v.normalize();
  return v;
}

void CyclotomicValue::normalize() {
  // sum_{k<p} zeta^k = 0, so subtracting c_0 from every coefficient is free.
  if (c_[0] != 0) {
    mpz_class c0 = c_[0];
    for (auto& x : c_) x -= c0;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : c_) x = -x;
  }
  mpz_class g = den_;
  for (const auto& x : c_) g = gcd(g, x);
  if (g > 1) {
    den_ /= g;
    for (auto& x : c_) x /= g;
  }
  bool zero = true;
  for (const auto& x : c_) zero = zero && x == 0;
  if (zero) den_ = 1;
}

void CyclotomicValue::same_field(const CyclotomicValue& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic values over different roots of unity");
}

CyclotomicValue CyclotomicValue::operator+(const CyclotomicValue& o) const {
  same_field(o);
  CyclotomicValue r(p_);
  r.den_ = den_ * o.den_;
  for (std::uint32_t k = 0; k < p_; ++k) r.c_[k] = c_[k] * o.den_ + o.c_[k] * den_;
  r.normalize();
  return r;
}

CyclotomicValue CyclotomicValue::operator-(const CyclotomicValue& o) const {
  same_field(o);
  CyclotomicValue r(p_);
  r.den_ = den_ * o.den_;
  for (std::uint32_t k = 0; k < p_; ++k) r.c_[k] = c_[k] * o.den_ - o.c_[k] * den_;
  r.normalize();
  return r;
}

CyclotomicValue CyclotomicValue::operator*(const CyclotomicValue& o) const {
  same_field(o);
  CyclotomicValue r(p_);
  for (std::uint32_t a = 1; a < p_; ++a) {
    if (c_[a] == 0) continue;
    for (std::uint32_t b = 1; b < p_; ++b) r.c_[(a + b) % p_] += c_[a] * o.c_[b];
  }
  r.den_ = den_ * o.den_;
  r.normalize();
  return r;
}

CyclotomicValue CyclotomicValue::divided_by(const mpz_class& n) const {
  if (n == 0) throw DomainError("division of a cyclotomic value by zero");
  CyclotomicValue r = *this;
  r.den_ *= n;
  r.normalize();
  return r;
}

CyclotomicValue CyclotomicValue::conj() const {
  CyclotomicValue r(p_);
  for (std::uint32_t k = 1; k < p_; ++k) r.c_[p_ - k] = c_[k];
  r.den_ = den_;
  return r;
}

bool CyclotomicValue::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CyclotomicValue::is_rational(mpq_class* out) const {
  for (std::uint32_t k = 2; k < p_; ++k)
    if (c_[k] != c_[1]) return false;
  // c (zeta + ... + zeta^{p-1}) = -c
  if (out) {
    *out = mpq_class(-c_[1], den_);
    out->canonicalize();
  }
  return true;
}

bool CyclotomicValue::is_integer(const mpz_class& n) const {
  mpq_class v;
  return is_rational(&v) && v == mpq_class(n);
}

std::string CyclotomicValue::to_string() const {
  mpq_class v;
  if (is_rational(&v)) return v.get_str();
  std::string s;
  for (std::uint32_t k = 1; k < p_; ++k) {
    if (c_[k] == 0) continue;
    mpz_class a = abs(c_[k]);
    if (s.empty())
      s += c_[k] < 0 ? "-" : "";
    else
      s += c_[k] < 0 ? " - " : " + ";
    if (a != 1) s += a.get_str();
    s += k == 1 ? "z" : "z^" + std::to_string(k);
  }
  return den_ == 1 ? s : "(" + s + ")/" + den_.get_str();
}

}  // namespace orbitlab::cyclotomic
