#pragma once

// Coadjoint orbits of 1+J on Irr(J) and the orbit-method characters.
//
// J is viewed as an F_p-space of dimension D = e d with basis u_{i e + c} = t^c b_i.
// A dual functional is a row vector over Z/p; the additive character attached
// to it is x -> zeta_p^{lambda(x)}. The action is lambda^g(a) = lambda(g a g^{-1}).
// A DualSpace keeps a reference to its algebra, which must outlive it.

#include <cstdint>
#include <map>
#include <vector>

#include "orbitlab/algroup.hpp"
#include "orbitlab/budget.hpp"
#include "orbitlab/cyclotomic.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/linalg.hpp"
#include "orbitlab/nilalg.hpp"

namespace orbitlab::coadjoint {

using algroup::GroupElementVec;
using cyclotomic::CyclotomicValue;
using linalg::Subspace;
using linalg::Vec;
using nilalg::AlgVector;
using nilalg::NilAlgebra;

struct DualFunctional {
  Vec coeffs;  // length D over Z/p
  bool operator==(const DualFunctional&) const = default;
};

class DualSpace {
 public:
  explicit DualSpace(const NilAlgebra& j);

  const NilAlgebra& algebra() const { return *j_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::size_t prime_dim() const { return dim_; }
  const ffield::FieldHandle& prime_field() const { return fp_; }
  /// p^D, saturating at UINT64_MAX.
  std::uint64_t dual_size() const { return size_; }

  Vec to_prime(const AlgVector& x) const;
  AlgVector from_prime(const Vec& v) const;
  /// F_p-span of an F_q-subspace, as an F_p subspace of dimension e * dim.
  Subspace prime_span(const Subspace& s) const;
  /// F_q-span of F_p vectors.
  Subspace fq_span(const std::vector<Vec>& prime_vectors) const;

  DualFunctional zero_functional() const { return {Vec(dim_, 0)}; }
  /// The functional reading prime coordinate k.
  DualFunctional coordinate_functional(std::size_t k) const;
  std::uint32_t eval(const DualFunctional& l, const Vec& prime_x) const;
  std::uint32_t eval_alg(const DualFunctional& l, const AlgVector& x) const { return eval(l, to_prime(x)); }
  /// lambda([a, b]) for prime vectors a, b.
  std::uint32_t form(const DualFunctional& l, const Vec& a, const Vec& b) const;
  /// lambda([u_a, u_b]) for prime basis indices.
  std::uint32_t form_basis(const DualFunctional& l, std::size_t a, std::size_t b) const { return eval(l, bracket(a, b)); }

  /// Odometer packing sum_k lambda_k p^k.
  std::uint64_t pack(const DualFunctional& l) const;
  DualFunctional unpack(std::uint64_t idx) const;

  /// Columns of the matrix A_g with (lambda^g)_l = sum_k lambda_k A_g[k][l].
  std::vector<Vec> action_columns(const GroupElementVec& g) const;
  DualFunctional apply(const std::vector<Vec>& columns, const DualFunctional& l) const;

 private:
  Vec bracket(std::size_t a, std::size_t b) const;

  const NilAlgebra* j_;
  ffield::FieldHandle fp_;
  std::uint32_t p_, e_;
  std::size_t dim_;
  std::uint64_t size_;
  std::vector<Vec> brackets_;  // [u_a, u_b] in prime coordinates, cached for small D
};

/// lambda^g
DualFunctional coadjoint_act(const DualSpace& ds, const DualFunctional& l, const GroupElementVec& g);

/// Rad B_lambda as an F_p subspace. InternalError unless it is F_q-linear.
Subspace radical(const DualSpace& ds, const DualFunctional& l);
/// |J / Rad B_lambda|
std::uint64_t orbit_size(const DualSpace& ds, const DualFunctional& l);
/// Exact square root of the orbit size; InternalError unless it is a q-power.
std::uint64_t fake_degree(const DualSpace& ds, const DualFunctional& l);

struct OrbitRecord {
  std::uint64_t rep = 0;  // least packed functional in the orbit
  DualFunctional functional;
  std::uint64_t size = 0;
  std::uint64_t fake_degree = 0;
  std::size_t radical_prime_dim = 0;
};

struct Census {
  std::vector<OrbitRecord> orbits;
  std::vector<std::uint32_t> orbit_of;  // packed functional -> orbit id
  std::size_t count() const { return orbits.size(); }
  std::vector<std::uint64_t> members(std::size_t orbit) const;
};

/// All orbits on Irr(J), by odometer sweep and generator expansion. Each orbit's
/// size is cross-checked against |J / Rad B_lambda| of its representative.
Census orbit_census(const DualSpace& ds, const Budgets& budgets = {});

/// fake degree -> multiplicity
std::map<std::uint64_t, std::uint64_t> fake_degree_multiset(const Census& c);

/// Orbits of size 1, compared with |J / [J,J]_L|; InternalError if they differ.
std::uint64_t fixed_point_count(const DualSpace& ds, const Census& c);

struct ProbeReport {
  std::uint64_t lie_index = 0;            // |J / [J,J]_L|
  std::uint64_t group_abelianization = 0; // |(1+J)_ab|
  bool equal() const { return lie_index == group_abelianization; }
};
ProbeReport conjecture_probe(const NilAlgebra& j, const Budgets& budgets = {});

/// An F_q-subalgebra that is a maximal isotropic subspace for B_lambda, built by
/// descending through first isotropic flag terms and their orthogonals.
Subspace max_isotropic_subalgebra(const DualSpace& ds, const DualFunctional& l);

/// Classes of 1+J together with the prime coordinates of log of every element.
struct GroupClasses {
  grouptab::ClassData data;
  std::vector<std::vector<Vec>> member_logs;  // per class, log of each member
  std::uint64_t order = 0;
};
GroupClasses group_classes_with_logs(const DualSpace& ds, const Budgets& budgets = {});

/// chi_Omega(exp j) = |Omega|^{-1/2} sum_{mu in Omega} zeta^{mu(j)}, one value per class.
/// Needs J^p = 0. Constancy on classes is checked on several members per class.
std::vector<CyclotomicValue> orbit_method_character(const DualSpace& ds, const Census& c, std::size_t orbit,
                                                    const GroupClasses& classes);

/// (1/|G|) sum_g chi1(g) conj(chi2(g))
CyclotomicValue inner_product(const GroupClasses& classes, const std::vector<CyclotomicValue>& chi1,
                              const std::vector<CyclotomicValue>& chi2);

struct CharacterTable {
  std::vector<std::vector<CyclotomicValue>> values;  // [orbit][class]
  std::vector<std::uint64_t> degrees;
};
CharacterTable orbit_method_characters(const DualSpace& ds, const Census& c, const GroupClasses& classes);

/// Pairwise <chi_i, chi_j> = delta_ij, chi(1) = |Omega|^{1/2}, and count = k(1+J).
bool orthonormality_check(const CharacterTable& table, const Census& c, const GroupClasses& classes);

/// Induces psi(exp h) = zeta^{lambda(h)} from 1+H_lambda and compares with chi.
bool verify_induced(const DualSpace& ds, const Census& c, std::size_t orbit, const GroupClasses& classes,
                    const std::vector<CyclotomicValue>& chi);

/// {phi : phi = lambda on H_lambda} is exactly the (1+H_lambda)-orbit of lambda,
/// of size |J / H_lambda|.
bool transitivity_check(const DualSpace& ds, const DualFunctional& l, const Budgets& budgets = {});

}  // namespace orbitlab::coadjoint
