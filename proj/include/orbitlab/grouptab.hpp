#pragma once

// Finite groups by multiplication oracle: dense Cayley table when the order is
// within the table budget, otherwise a collector (pc groups) or a permutation
// lookup. Element numbering is deterministic for every constructor.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/budget.hpp"

namespace orbitlab::grouptab {

using Index = std::uint32_t;

/// Power-commutator presentation of a p-group of order p^n on g_1..g_n.
/// Words are exponent vectors of length n (collected normal forms).
/// Internally generators are 0-based; text formats are 1-based.
struct PcPresentation {
  std::uint32_t p = 2;
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> power;  // power[i] = g_i^p
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> comm;  // (j,i), j > i: [g_j, g_i]

  PcPresentation() = default;
  PcPresentation(std::uint32_t p, std::uint32_t n);

  /// 1-based convenience setters taking (generator, exponent) pairs.
  PcPresentation& set_power(std::uint32_t i, std::vector<std::pair<std::uint32_t, std::uint32_t>> word);
  PcPresentation& set_comm(std::uint32_t j, std::uint32_t i,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> word);

  std::string to_text() const;
};

class MulOracle {
 public:
  virtual ~MulOracle() = default;
  virtual Index mul(Index a, Index b) const = 0;
};

class FiniteGroup {
 public:
  /// table[a][b] = a*b. Verifies the group axioms; associativity exhaustively
  /// for order <= 256, else on 10*order random triples.
  static FiniteGroup from_cayley_table(const std::vector<std::vector<Index>>& table,
                                       const Budgets& budgets = {});
  /// Closure of permutations of {0..N-1} (images lists). Composition applies the
  /// left factor first. BFS numbering, each BFS layer sorted by image vector.
  static FiniteGroup from_permutation_generators(const std::vector<std::vector<std::uint32_t>>& gens,
                                                 const Budgets& budgets = {});
  /// Elements are exponent vectors, numbered lexicographically with g_1 most
  /// significant; multiplication is collection from the left.
  static FiniteGroup from_power_commutator(const PcPresentation& pres, const Budgets& budgets = {});

  Index order() const { return order_; }
  Index identity() const { return identity_; }
  Index mul(Index a, Index b) const {
    return table_.empty() ? oracle_->mul(a, b) : table_[std::size_t(a) * order_ + b];
  }
  Index inv(Index a) const { return inverse_[a]; }
  Index pow(Index a, std::uint64_t n) const;
  /// g^{-1} x g
  Index conj(Index x, Index g) const { return mul(mul(inv(g), x), g); }
  /// a^{-1} b^{-1} a b
  Index commutator(Index a, Index b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::uint64_t element_order(Index a) const;
  std::uint64_t exponent() const;

  const std::vector<Index>& generators() const { return generators_; }
  bool has_table() const { return !table_.empty(); }

  /// Prime p when the order is a power of p (p = 0 for the trivial group and non-p-groups).
  std::uint32_t prime() const { return prime_; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Set only for pc groups.
  const PcPresentation* presentation() const { return pc_ ? pc_.get() : nullptr; }

  /// Raw constructor for derived groups (products, quotients); validates like a Cayley table.
  static FiniteGroup from_oracle(Index order, Index identity, std::shared_ptr<const MulOracle> oracle,
                                 const Budgets& budgets);

 private:
  void finish(const Budgets& budgets, bool verify);
  void verify_axioms() const;

  Index order_ = 1;
  Index identity_ = 0;
  std::vector<Index> table_;
  std::shared_ptr<const MulOracle> oracle_;
  std::vector<Index> inverse_;
  std::vector<Index> generators_;
  std::uint32_t prime_ = 0;
  std::string name_;
  std::shared_ptr<const PcPresentation> pc_;
};

struct ClassData {
  std::vector<std::uint32_t> class_of;       // element index -> class id
  std::vector<Index> representatives;        // least element index of each class
  std::vector<std::uint64_t> sizes;
  std::size_t count() const { return representatives.size(); }
};

/// Orbits under conjugation by the generators; classes numbered by representative.
ClassData conjugacy_classes(const FiniteGroup& g, const Budgets& budgets = {});

/// class id of r -> class id of r^p. Representative independence is checked
/// exhaustively for groups of order <= 2^12 (InternalError on failure).
std::vector<std::uint32_t> class_power_map(const FiniteGroup& g, const ClassData& classes,
                                           std::uint32_t p);

/// Sorted element indices of [G, G].
std::vector<Index> commutator_subgroup(const FiniteGroup& g, const Budgets& budgets = {});
std::uint64_t abelianization_order(const FiniteGroup& g, const Budgets& budgets = {});

std::vector<Index> center(const FiniteGroup& g);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const Budgets& budgets = {});

/// G / <z> for a central element z. Cosets numbered by least member.
FiniteGroup central_quotient(const FiniteGroup& g, Index z, const Budgets& budgets = {});

/// Cyclic group of order n as a Cayley table.
FiniteGroup cyclic(Index n, const Budgets& budgets = {});

/// Exponent vector of a pc-group element (pc groups only).
std::vector<std::uint32_t> exponent_vector(const FiniteGroup& g, Index a);
Index element_from_exponents(const FiniteGroup& g, const std::vector<std::uint32_t>& exps);

// --- text formats ----------------------------------------------------------

/// `cayley m` + m rows, `pc p n` + `pow i: word` / `comm j i: word` lines, or
/// `perm N k` + k lines of N images. '#' starts a comment.
FiniteGroup parse_group(const std::string& text, const Budgets& budgets = {});
FiniteGroup load_group_file(const std::string& path, const Budgets& budgets = {});
PcPresentation parse_pc_presentation(const std::string& text);
std::string cayley_text(const FiniteGroup& g);

}  // namespace orbitlab::grouptab
