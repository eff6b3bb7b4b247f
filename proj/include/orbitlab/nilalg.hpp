#pragma once

// Finite-dimensional nilpotent associative F_q-algebras given by structure
// constants b_i b_j = sum_k c[i][j][k] b_k.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbitlab/budget.hpp"
#include "orbitlab/ffield.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/linalg.hpp"

namespace orbitlab::nilalg {

using ffield::Elt;
using ffield::FieldHandle;
using linalg::Subspace;
using AlgVector = linalg::Vec;

struct StructureTerm {
  std::uint32_t i, j, k;
  Elt c;
};

/// Entry of a basis product: coefficient c on basis vector k.
struct ProductEntry {
  std::uint32_t k;
  Elt c;
};

class NilAlgebra {
 public:
  /// Sums repeated (i,j,k) terms, then checks associativity (all basis triples
  /// for d <= 64, a fixed random sample above) and nilpotency.
  static NilAlgebra from_structure_constants(FieldHandle field, std::size_t dim,
                                             const std::vector<StructureTerm>& terms,
                                             const Budgets& budgets = {});

  const FieldHandle& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  /// Least n with J^n = 0.
  unsigned nilpotency_class() const { return static_cast<unsigned>(chain_.size()); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::span<const ProductEntry> product(std::size_t i, std::size_t j) const {
    return {entries_.data() + offsets_[i * dim_ + j], entries_.data() + offsets_[i * dim_ + j + 1]};
  }

  AlgVector zero() const { return AlgVector(dim_, 0); }
  AlgVector basis_vector(std::size_t i) const;
  AlgVector add(const AlgVector& a, const AlgVector& b) const;
  AlgVector sub(const AlgVector& a, const AlgVector& b) const;
  AlgVector scale(Elt c, const AlgVector& a) const;
  AlgVector multiply(const AlgVector& a, const AlgVector& b) const;
  /// ab - ba
  AlgVector lie_bracket(const AlgVector& a, const AlgVector& b) const;

  Subspace full() const { return Subspace::full(field_, dim_); }

  /// J = J^1 > J^2 > ... > J^n = 0.
  const std::vector<Subspace>& power_ideal_chain() const { return chain_; }
  /// Same chain for a subalgebra K (powers K^m computed inside K).
  std::vector<Subspace> power_chain(const Subspace& sub) const;

  /// J = J_1 > J_2 > ... > J_{k+1} = 0 with codimension-1 steps, refining the
  /// power chain by adding echelon basis vectors of J^m to J^{m+1} in order.
  std::vector<Subspace> refine_to_flag() const { return flag(full()); }
  std::vector<Subspace> flag(const Subspace& sub) const;

  /// [J, J]_L as an echelon subspace.
  Subspace derived_lie_subspace() const;

  /// J^p = 0 for p = char F_q.
  bool is_p_nilpotent() const { return nilpotency_class() <= field_->p(); }

  bool is_subalgebra(const Subspace& s) const;
  /// span{xy, yx : x in A, y in B}
  Subspace product_span(const Subspace& a, const Subspace& b) const;

  std::vector<StructureTerm> terms() const;

 private:
  void check_dim(const AlgVector& v) const;

  FieldHandle field_;
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> offsets_;
  std::vector<ProductEntry> entries_;
  std::vector<Subspace> chain_;
  std::string name_;
};

/// Strictly upper triangular n x n matrices; basis e_{ij}, i < j, ordered by (j - i, i).
NilAlgebra make_unitriangular(unsigned n, FieldHandle field, const Budgets& budgets = {});

/// Basis {g - 1 : g != 1} in the group's element order, for a p-group with p = char.
NilAlgebra make_augmentation_ideal(const grouptab::FiniteGroup& group, FieldHandle field,
                                   const Budgets& budgets = {});

/// J with J^2 = 0.
NilAlgebra make_zero_product(FieldHandle field, std::size_t dim, const Budgets& budgets = {});

/// Index of e_{ij} (1-based i < j) in make_unitriangular's basis.
std::size_t unitriangular_index(unsigned n, unsigned i, unsigned j);

// `alg p e d` followed by `i j k coeff` lines (0-based indices, coeff packed).
std::string to_text(const NilAlgebra& alg);
NilAlgebra parse_algebra(const std::string& text, const Budgets& budgets = {});
NilAlgebra load_algebra_file(const std::string& path, const Budgets& budgets = {});

}  // namespace orbitlab::nilalg
