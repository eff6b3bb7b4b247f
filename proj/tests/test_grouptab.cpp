#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"

using namespace orbitlab;
using namespace orbitlab::grouptab;

namespace {

std::vector<std::vector<Index>> s3_table() {
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<Index>> t(6, std::vector<Index>(6));
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) {
      std::vector<std::uint32_t> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[b][perms[a][i]];
      t[a][b] = Index(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

// commuting pairs / |G|
std::uint64_t k_oracle(const FiniteGroup& g) {
  std::uint64_t pairs = 0;
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) pairs += g.mul(a, b) == g.mul(b, a);
  return pairs / g.order();
}

PcPresentation d8_pc() {
  PcPresentation pc(2, 3);
  pc.set_power(2, {{3, 1}});
  pc.set_comm(2, 1, {{3, 1}});
  return pc;
}

}  // namespace

TEST_CASE("Cayley tables") {
  auto c2 = FiniteGroup::from_cayley_table({{0, 1}, {1, 0}});
  CHECK(c2.order() == 2);
  auto s3 = FiniteGroup::from_cayley_table(s3_table());
  CHECK(s3.order() == 6);
  CHECK(conjugacy_classes(s3).count() == 3);
  CHECK(commutator_subgroup(s3).size() == 3);
  CHECK(s3.prime() == 0);
}

TEST_CASE("broken tables are rejected") {
  // Latin square with identity 0 that is not associative.
  std::vector<std::vector<Index>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                                    {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table(t), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table({{0, 1}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table({{0, 1}, {1}}), ValidationError);
}

TEST_CASE("pc presentations") {
  auto d8 = FiniteGroup::from_power_commutator(d8_pc());
  CHECK(d8.order() == 8);
  CHECK(conjugacy_classes(d8).count() == 5);
  CHECK(k_oracle(d8) == 5);
  for (Index a = 0; a < 8; ++a) CHECK(element_from_exponents(d8, exponent_vector(d8, a)) == a);

  PcPresentation elem(3, 3);
  auto c3cube = FiniteGroup::from_power_commutator(elem);
  CHECK(c3cube.order() == 27);
  CHECK(conjugacy_classes(c3cube).count() == 27);

  auto free2 = FiniteGroup::from_power_commutator(corpus::free_class2_exponent_p(2));
  CHECK(free2.order() == 1024);
  CHECK(free2.exponent() == 4);

  PcPresentation bad(2, 2);
  CHECK_THROWS_AS(bad.set_comm(1, 2, {}), PresentationError);
  // g2^2 = g1 with [g2, g1] = g2 is inconsistent.
  PcPresentation inconsistent(2, 2);
  inconsistent.set_power(1, {{2, 1}});
  inconsistent.set_comm(2, 1, {{1, 1}});
  CHECK_THROWS_AS(FiniteGroup::from_power_commutator(inconsistent), PresentationError);
}

TEST_CASE("text round trip") {
  auto d8 = parse_group(d8_pc().to_text());
  CHECK(d8.order() == 8);
  auto again = parse_group(cayley_text(d8));
  CHECK(conjugacy_classes(again).count() == 5);
  auto perm = parse_group("perm 4 2\n1 2 3 0\n1 0 2 3\n");
  CHECK(perm.order() == 24);
  CHECK(conjugacy_classes(perm).count() == 5);
  CHECK_THROWS_AS(parse_group("cayley 2\n0 1\n1 1\n"), ValidationError);
}

TEST_CASE("power maps") {
  auto c4 = cyclic(4);
  auto cl = conjugacy_classes(c4);
  auto pm = class_power_map(c4, cl, 2);
  CHECK(pm[cl.class_of[1]] == cl.class_of[2]);
  CHECK(pm[cl.class_of[2]] == cl.class_of[0]);

  auto q8 = corpus::make_group("Q8");
  auto qc = conjugacy_classes(q8);
  auto qp = class_power_map(q8, qc, 2);
  Index minus_one = 0;
  for (Index a = 0; a < 8; ++a)
    if (a != q8.identity() && q8.element_order(a) == 2) minus_one = a;
  for (Index a = 0; a < 8; ++a)
    if (q8.element_order(a) == 4) CHECK(qp[qc.class_of[a]] == qc.class_of[minus_one]);
  CHECK(commutator_subgroup(q8).size() == 2);
  CHECK(abelianization_order(q8) == 4);
}

TEST_CASE("class equation and k oracle across the catalog") {
  for (const auto& name : corpus::group_names(32)) {
    CAPTURE(name);
    auto g = corpus::make_group(name);
    auto cl = conjugacy_classes(g);
    CHECK(std::accumulate(cl.sizes.begin(), cl.sizes.end(), std::uint64_t(0)) == g.order());
    for (auto s : cl.sizes) CHECK(g.order() % s == 0);
    CHECK(cl.count() == k_oracle(g));
  }
}

TEST_CASE("direct products multiply k") {
  auto d8 = corpus::make_group("D8");
  auto q8 = corpus::make_group("Q8");
  auto c3 = cyclic(3);
  CHECK(conjugacy_classes(direct_product(d8, q8)).count() == 25);
  CHECK(conjugacy_classes(direct_product(d8, c3)).count() == 15);
  CHECK(conjugacy_classes(direct_product(cyclic(2), cyclic(2))).count() == 4);
}

TEST_CASE("central quotient of the free class-2 group") {
  auto g = FiniteGroup::from_power_commutator(corpus::free_class2_exponent_p(2));
  Index z = corpus::free_class2_central_element(g);
  auto quo = central_quotient(g, z);
  CHECK(quo.order() == 512);
  CHECK(conjugacy_classes(g).count() == 2 * conjugacy_classes(quo).count());
  CHECK_THROWS_AS(central_quotient(g, g.generators().front()), DomainError);
}

TEST_CASE("abelian groups have trivial derived subgroup") {
  auto g = direct_product(cyclic(4), cyclic(2));
  CHECK(commutator_subgroup(g).size() == 1);
  CHECK(center(g).size() == 8);
}
