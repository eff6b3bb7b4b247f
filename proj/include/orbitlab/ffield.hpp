#pragma once

// Exact arithmetic in F_{p^e}.
//
// Elements are packed integers: the residue c_0 + c_1 t + ... + c_{e-1} t^{e-1}
// is stored as c_0 + c_1 p + ... + c_{e-1} p^{e-1}. Prime-field elements are
// therefore the values 0..p-1 in every field. Fields are interned per (p, e),
// so a FieldHandle is a cheap parent tag and pointer equality means equal fields.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "orbitlab/budget.hpp"

namespace orbitlab::ffield {

using Elt = std::uint32_t;

bool is_prime(std::uint64_t n);

class Field;
using FieldHandle = std::shared_ptr<const Field>;

/// Returns the interned field F_{p^e} with the lexicographically least monic
/// irreducible modulus of degree e (t when e = 1).
FieldHandle make_field(std::uint32_t p, std::uint32_t e, const Budgets& budgets = {});

/// Field from its serialized record `p e c_0 ... c_e`. The modulus must be the
/// canonical one so that handles stay interned.
FieldHandle parse_field(const std::string& record, const Budgets& budgets = {});

class Field {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  /// Modulus coefficients, constant term first, length e + 1, leading 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  /// The residue class of t (equals 0 in a prime field, where the modulus is t).
  Elt t() const { return e_ == 1 ? 0 : p_; }

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const;
  /// Throws DomainError on zero.
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t n) const;
  Elt frobenius(Elt a) const { return pow(a, p_); }
  /// Tr_{F_q/F_p}(a), a value in 0..p-1.
  std::uint32_t trace(Elt a) const;
  /// Image of an integer in the prime field.
  Elt from_int(std::int64_t n) const;

  std::vector<std::uint32_t> coeffs(Elt a) const;
  Elt from_coeffs(std::span<const std::uint32_t> c) const;
  std::uint32_t coeff(Elt a, std::uint32_t i) const;
  /// The prime-field basis {1, t, ..., t^{e-1}} as elements.
  Elt basis(std::uint32_t i) const { return pow_p_[i]; }

  /// Generator of the multiplicative group (order q - 1).
  Elt primitive() const { return primitive_; }
  std::uint64_t multiplicative_order(Elt a) const;
  bool contains(Elt a) const { return a < q_; }

  /// `p e c_0 c_1 ... c_e`.
  std::string serialize() const;
  std::string name() const;

  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

 private:
  Elt slow_mul(Elt a, Elt b) const;

  std::uint32_t p_, e_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= e
  Elt primitive_ = 1;
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
  std::vector<Elt> exp_;            // exp_[k] = primitive^k, 2(q-1) entries
  std::vector<Elt> add_table_;      // q*q when q is small and p odd
};

/// Value-semantic element carrying its parent field.
class FieldElement {
 public:
  FieldElement(FieldHandle f, Elt v);
  static FieldElement zero(FieldHandle f) { return {std::move(f), 0}; }
  static FieldElement one(FieldHandle f) { return {std::move(f), 1}; }

  const FieldHandle& field() const { return field_; }
  Elt value() const { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t n) const;
  FieldElement frobenius() const;
  std::uint32_t trace() const;

  bool operator==(const FieldElement& o) const {
    return field_ == o.field_ && value_ == o.value_;
  }

 private:
  const Field& same(const FieldElement& o) const;
  FieldHandle field_;
  Elt value_;
};

/// Dense polynomials over Z/p, constant term first; shared with bogomod.
namespace poly {
using Poly = std::vector<std::uint32_t>;
void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly rem(const Poly& a, const Poly& m, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);
}  // namespace poly

}  // namespace orbitlab::ffield
