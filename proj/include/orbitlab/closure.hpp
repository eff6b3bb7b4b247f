#pragma once

// Normal closure of a set of elements in a finite group given by packed
// element indices. Shared by the table groups and the algebra groups.

#include <cstdint>
#include <vector>

#include "orbitlab/budget.hpp"

namespace orbitlab {

/// Elements of the normal closure of `seeds` in the group generated by
/// `num_generators` generators, in discovery order.
///   mul(a, b)              -> a*b
///   conj_by_generator(x,i) -> g_i^{-1} x g_i
/// The returned subgroup N satisfies N^{g_i} = N for every generator, which is
/// sufficient for normality in a finite group.
template <class Mul, class ConjByGenerator>
std::vector<std::uint64_t> normal_closure(std::uint64_t group_order, std::uint64_t identity,
                                          const std::vector<std::uint64_t>& seeds,
                                          std::size_t num_generators, Mul mul,
                                          ConjByGenerator conj_by_generator,
                                          const char* budget_name, std::uint64_t budget) {
  require_budget(budget_name, group_order, budget);
  std::vector<bool> member(group_order, false);
  std::vector<std::uint64_t> elems{identity};
  member[identity] = true;
  std::vector<std::uint64_t> gens;
  for (auto s : seeds)
    if (s != identity) gens.push_back(s);

  bool changed = true;
  while (changed) {
    changed = false;
    // Close under right multiplication by the current generators.
    for (std::size_t idx = 0; idx < elems.size(); ++idx) {
      for (auto t : gens) {
        auto y = mul(elems[idx], t);
        if (!member[y]) {
          member[y] = true;
          elems.push_back(y);
        }
      }
    }
    // Add conjugates that escaped; restart the closure when one does.
    const std::size_t ngens = gens.size();
    for (std::size_t k = 0; k < ngens; ++k) {
      for (std::size_t i = 0; i < num_generators; ++i) {
        auto c = conj_by_generator(gens[k], i);
        if (!member[c]) {
          gens.push_back(c);
          changed = true;
        }
      }
    }
  }
  return elems;
}

}  // namespace orbitlab
