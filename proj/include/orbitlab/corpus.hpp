#pragma once

// Bundled named groups, algebras and zeta specs used by `verify` and the tests.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitlab/budget.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"
#include "orbitlab/zetalab.hpp"

namespace orbitlab::corpus {

struct GroupEntry {
  std::string name;
  std::uint32_t p = 2;
  std::uint64_t order = 1;
  std::uint64_t b0 = 1;  // |B_0|, tabulated (not computed)
};

/// Every bundled p-group, ascending by (p, order, name).
const std::vector<GroupEntry>& group_catalog();
const GroupEntry& group_entry(const std::string& name);
std::vector<std::string> group_names(std::uint64_t max_order, std::uint32_t p = 0);

grouptab::PcPresentation group_presentation(const std::string& name);
grouptab::FiniteGroup make_group(const std::string& name, const Budgets& budgets = {});

/// <x_1..x_4 | x_i^p, [x_j, x_k, x_l]>, order p^10, with g_5..g_10 the commutators
/// [x_j, x_i] for (i, j) = (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
grouptab::PcPresentation free_class2_exponent_p(std::uint32_t p);
/// [x_1, x_2][x_3, x_4], central in the group above.
grouptab::Index free_class2_central_element(const grouptab::FiniteGroup& g);

/// Names: "u<n>_F<q>", "zero<d>_F<q>", "I_F<q>[<group>]".
nilalg::NilAlgebra make_algebra(const std::string& name, const Budgets& budgets = {});
/// The bundled algebra list.
const std::vector<std::string>& algebra_names();

struct ZetaEntry {
  std::string name;
  zetalab::FactorSpec spec;
  zetalab::SeriesMode mode = zetalab::SeriesMode::kExactSl2;
};
const std::vector<ZetaEntry>& zeta_specs();

}  // namespace orbitlab::corpus
