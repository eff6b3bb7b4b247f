#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace orbitlab {

/// Resource limits. Every BudgetError names one of these keys.
struct Budgets {
  std::uint64_t field_order = 1u << 16;     // field_order: largest q accepted by make_field
  std::uint64_t table = 1u << 12;           // table: dense Cayley tables up to this order
  std::uint64_t group = 1u << 20;           // group: permutation closures and class computations
  std::uint64_t pc_steps = 10'000'000;      // pc_steps: collection rewrite steps per product
  std::uint64_t pc_length = 24;             // pc_length: generators in a pc presentation
  std::uint64_t algebra_dim = 4096;         // algebra_dim: dimension of a NilAlgebra
  std::uint64_t enumeration = 1u << 22;     // enumeration: q^d for enumerating 1+J
  std::uint64_t dual = 1u << 24;            // dual: p^(e d) for the coadjoint census
  std::uint64_t closure = 1u << 22;         // closure: commutator closures inside 1+J
  std::uint64_t series_cutoff = 1'000'000;  // series_cutoff: Dirichlet truncation N
  std::uint64_t threads = 0;                // 0 means hardware concurrency

  /// Flat view in a fixed key order.
  std::map<std::string, std::uint64_t> as_map() const;

  /// Sets one key; throws ValidationError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Parses `key = value` lines ('#' starts a comment) on top of the current values.
  void load_config_text(const std::string& text);
  void load_config_file(const std::string& path);

  std::uint64_t effective_threads() const;
};

/// Throws BudgetError(name, ...) when value > limit.
void require_budget(const char* name, std::uint64_t value, std::uint64_t limit);

}  // namespace orbitlab
