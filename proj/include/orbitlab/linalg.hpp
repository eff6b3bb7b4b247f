#pragma once

// Subspaces of F_q^n in reduced row-echelon form. Two subspaces are equal
// exactly when their RREF bases are equal, so equality is syntactic.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitlab/ffield.hpp"

namespace orbitlab::linalg {

using ffield::Elt;
using ffield::Field;
using ffield::FieldHandle;
using Vec = std::vector<Elt>;

bool is_zero(const Vec& v);

class Subspace {
 public:
  Subspace(FieldHandle field, std::size_t ambient);
  static Subspace span(FieldHandle field, std::size_t ambient, const std::vector<Vec>& gens);
  static Subspace full(FieldHandle field, std::size_t ambient);

  const FieldHandle& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the basis; zero iff v is a member.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Adds v to the span. Returns false when v was already a member.
  bool insert(const Vec& v);

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && rows_ == other.rows_;
  }

 private:
  FieldHandle field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// An F_p-linear map on vectors of (Z/p)^n packed as sum_k v_k p^k.
/// images[k] is the image of the k-th unit vector. Used by the hot loops that
/// walk packed indices (class sweeps, the coadjoint census).
class PackedLinearMap {
 public:
  PackedLinearMap(std::uint32_t p, std::size_t n, const std::vector<Vec>& images);
  std::uint64_t apply(std::uint64_t idx) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<std::uint64_t> masks_;       // p = 2: images as bitmasks
  std::vector<std::uint32_t> images_;      // odd p: n x n row-major
  std::vector<std::uint64_t> pow_;         // p^k
};

/// Basis of {x : sum_j m[i][j] x_j = 0 for all i}, one vector per free column.
std::vector<Vec> nullspace(const Field& field, const std::vector<Vec>& m, std::size_t cols);

}  // namespace orbitlab::linalg
