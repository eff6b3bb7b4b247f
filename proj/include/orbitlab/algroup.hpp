#pragma once

// The algebra group 1+J, elements stored as the coordinates x of 1+x.

#include <cstdint>
#include <functional>
#include <vector>

#include "orbitlab/budget.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"

namespace orbitlab::algroup {

using nilalg::AlgVector;
using nilalg::NilAlgebra;
using ffield::Elt;

struct GroupElementVec {
  AlgVector x;  // the element 1 + x
  bool operator==(const GroupElementVec&) const = default;
};

GroupElementVec identity(const NilAlgebra& j);
/// (1+x)(1+y) = 1 + x + y + xy
GroupElementVec gmul(const NilAlgebra& j, const GroupElementVec& g, const GroupElementVec& h);
/// (1+x)^{-1} = sum_k (-x)^k
GroupElementVec ginv(const NilAlgebra& j, const GroupElementVec& g);
/// g^{-1} (1+x) g
GroupElementVec gconj(const NilAlgebra& j, const GroupElementVec& x, const GroupElementVec& g);
/// a^{-1} b^{-1} a b
GroupElementVec gcomm(const NilAlgebra& j, const GroupElementVec& a, const GroupElementVec& b);

/// Truncated exponential and logarithm; DomainError unless J^p = 0.
GroupElementVec gexp(const NilAlgebra& j, const AlgVector& x);
AlgVector glog(const NilAlgebra& j, const GroupElementVec& g);

/// {1 + w v : w in {1, t, ..., t^{e-1}}, v in a basis adapted to the powers of J}.
/// Their images span every J^m/J^{m+1} over F_p, so they generate 1+J. (The
/// plain basis is not enough: for an augmentation ideal {1 + (g-1)} is just pi.)
std::vector<GroupElementVec> prime_generators(const NilAlgebra& j);
/// The same construction for the subgroup 1+K of a subalgebra K.
std::vector<GroupElementVec> subgroup_generators(const NilAlgebra& j, const linalg::Subspace& sub);

/// Packs coordinates as sum_i x_i q^i (coordinate 0 varies fastest).
class ElementCodec {
 public:
  explicit ElementCodec(const NilAlgebra& j);
  std::uint64_t size() const { return size_; }
  std::uint64_t pack(const AlgVector& x) const;
  AlgVector unpack(std::uint64_t idx) const;

 private:
  std::size_t dim_;
  std::uint64_t q_;
  std::uint64_t size_;
};

/// Calls f(index, element) for all q^d elements in odometer order.
void enumerate_elements(const NilAlgebra& j, const std::function<void(std::uint64_t, const GroupElementVec&)>& f,
                        const Budgets& budgets = {});

/// Classes of 1+J by brute-force conjugation (orbit closure under the
/// generators). Element ids are ElementCodec indices.
grouptab::ClassData group_conjugacy_classes(const NilAlgebra& j, const Budgets& budgets = {});
std::uint64_t k_of_group(const NilAlgebra& j, const Budgets& budgets = {});

/// Normal closure of the commutators of the generators, as packed indices (sorted).
std::vector<std::uint64_t> group_commutator_subgroup(const NilAlgebra& j, const Budgets& budgets = {});
std::uint64_t group_abelianization_order(const NilAlgebra& j, const Budgets& budgets = {});

/// q^d, throwing BudgetError(name) if it exceeds limit.
std::uint64_t group_order_within(const NilAlgebra& j, const char* name, std::uint64_t limit);

}  // namespace orbitlab::algroup
