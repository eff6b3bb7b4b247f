#include "orbitlab/ffield.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "orbitlab/errors.hpp"

namespace orbitlab::ffield {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  }
  trim(out);
  return out;
}

Poly rem(const Poly& a, const Poly& m, std::uint32_t p) {
  Poly r = a;
  trim(r);
  Poly mm = m;
  trim(mm);
  if (mm.empty()) throw DomainError("polynomial remainder by zero");
  // Inverse of the leading coefficient by Fermat.
  std::uint64_t lead = mm.back(), inv = 1, base = lead, ex = p - 2;
  while (ex) {
    if (ex & 1) inv = inv * base % p;
    base = base * base % p;
    ex >>= 1;
  }
  while (r.size() >= mm.size()) {
    std::uint64_t c = r.back() * inv % p;
    std::size_t shift = r.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i)
      r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + (p - c) * mm[i]) % p);
    trim(r);
  }
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      std::uint64_t x = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[k] = 1;
      if (rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t e) {
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  // c_0 is the most significant position of the search order.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    poly::Poly f(e + 1, 0);
    std::uint64_t x = idx;
    for (std::uint32_t i = e; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    f[e] = 1;
    if (f[0] == 0) continue;
    if (poly::is_irreducible(f, p)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

}  // namespace

FieldHandle make_field(std::uint32_t p, std::uint32_t e, const Budgets& budgets) {
  if (!is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw ValidationError("field extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > budgets.field_order)
      throw BudgetError("field_order", "field of order " + std::to_string(p) + "^" +
                                           std::to_string(e));
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldHandle> registry;
  std::lock_guard lock(mu);
  auto key = std::make_pair(p, e);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  auto field = std::make_shared<const Field>(p, e, least_irreducible(p, e));
  registry.emplace(key, field);
  return field;
}

FieldHandle parse_field(const std::string& record, const Budgets& budgets) {
  std::istringstream in(record);
  std::uint32_t p = 0, e = 0;
  if (!(in >> p >> e)) throw ValidationError("field record: expected 'p e c_0 ... c_e'");
  auto f = make_field(p, e, budgets);
  std::vector<std::uint32_t> mod;
  std::uint32_t c;
  while (in >> c) mod.push_back(c);
  if (mod != f->modulus())
    throw ValidationError("field record: modulus differs from the canonical modulus " + f->serialize());
  return f;
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  pow_p_.resize(e + 1);
  for (std::uint32_t i = 0; i <= e; ++i) {
    pow_p_[i] = q_;
    if (i < e) q_ *= p;
  }
  if (p != 2 && q_ <= 1024) {
    add_table_.resize(std::size_t(q_) * q_);
    for (Elt a = 0; a < q_; ++a)
      for (Elt b = 0; b < q_; ++b) {
        Elt s = 0;
        for (std::uint32_t i = 0; i < e_; ++i)
          s += ((coeff(a, i) + coeff(b, i)) % p_) * pow_p_[i];
        add_table_[std::size_t(a) * q_ + b] = s;
      }
  }
  // Primitive element: least a with a^((q-1)/r) != 1 for all primes r | q-1.
  const auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](Elt a, std::uint64_t n) {
    Elt r = 1;
    while (n) {
      if (n & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      n >>= 1;
    }
    return r;
  };
  for (Elt a = 1; a < q_; ++a) {
    bool ok = true;
    for (auto r : factors)
      if (slow_pow(a, (q_ - 1) / r) == 1) ok = false;
    if (ok) {
      primitive_ = a;
      break;
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t(q_ - 1) + 1, 0);
  Elt x = 1;
  for (std::uint32_t k = 0; k < q_ - 1; ++k) {
    exp_[k] = exp_[k + q_ - 1] = x;
    log_[x] = k;
    x = slow_mul(x, primitive_);
  }
  check_internal(x == 1, "primitive element search failed for " + name());
}

Elt Field::slow_mul(Elt a, Elt b) const {
  // The prime field's modulus t would send everything to 0.
  if (e_ == 1) return static_cast<Elt>(std::uint64_t(a) * b % p_);
  poly::Poly pa(e_), pb(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    pa[i] = coeff(a, i);
    pb[i] = coeff(b, i);
  }
  poly::trim(pa);
  poly::trim(pb);
  auto r = poly::rem(poly::mul(pa, pb, p_), modulus_, p_);
  Elt out = 0;
  for (std::size_t i = 0; i < r.size(); ++i) out += r[i] * pow_p_[i];
  return out;
}

std::uint32_t Field::coeff(Elt a, std::uint32_t i) const { return (a / pow_p_[i]) % p_; }

Elt Field::add(Elt a, Elt b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) {
    Elt s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
  Elt s = 0;
  for (std::uint32_t i = 0; i < e_; ++i) s += ((coeff(a, i) + coeff(b, i)) % p_) * pow_p_[i];
  return s;
}

Elt Field::neg(Elt a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  Elt s = 0;
  for (std::uint32_t i = 0; i < e_; ++i) s += ((p_ - coeff(a, i)) % p_) * pow_p_[i];
  return s;
}

Elt Field::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Elt Field::mul(Elt a, Elt b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw DomainError("inverse of zero in " + name());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elt Field::pow(Elt a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  return exp_[(std::uint64_t(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t Field::trace(Elt a) const {
  Elt s = 0, x = a;
  for (std::uint32_t i = 0; i < e_; ++i) {
    s = add(s, x);
    x = frobenius(x);
  }
  check_internal(s < p_, "trace left the prime field");
  return s;
}

Elt Field::from_int(std::int64_t n) const {
  std::int64_t r = n % std::int64_t(p_);
  if (r < 0) r += p_;
  return static_cast<Elt>(r);
}

std::vector<std::uint32_t> Field::coeffs(Elt a) const {
  std::vector<std::uint32_t> out(e_);
  for (std::uint32_t i = 0; i < e_; ++i) out[i] = coeff(a, i);
  return out;
}

Elt Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != e_) throw ValidationError("coefficient vector length differs from field degree");
  Elt out = 0;
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (c[i] >= p_) throw ValidationError("coefficient out of range for " + name());
    out += c[i] * pow_p_[i];
  }
  return out;
}

std::uint64_t Field::multiplicative_order(Elt a) const {
  if (a == 0) throw DomainError("zero has no multiplicative order");
  std::uint64_t n = q_ - 1;
  std::uint64_t ord = n;
  for (auto r : prime_factors(n))
    while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
  return ord;
}

std::string Field::serialize() const {
  std::ostringstream out;
  out << p_ << ' ' << e_;
  for (auto c : modulus_) out << ' ' << c;
  return out.str();
}

std::string Field::name() const {
  return e_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(e_);
}

FieldElement::FieldElement(FieldHandle f, Elt v) : field_(std::move(f)), value_(v) {
  if (!field_ || !field_->contains(v)) throw ValidationError("field element out of range");
}

const Field& FieldElement::same(const FieldElement& o) const {
  if (field_ != o.field_) throw DomainError("field elements from different fields");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, same(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, same(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, same(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, same(o).div(value_, o.value_)};
}
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {field_, field_->pow(value_, n)}; }
FieldElement FieldElement::frobenius() const { return {field_, field_->frobenius(value_)}; }
std::uint32_t FieldElement::trace() const { return field_->trace(value_); }

}  // namespace orbitlab::ffield
