#include <doctest.h>

#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"

using namespace orbitlab;
using namespace orbitlab::nilalg;

namespace {

std::vector<std::size_t> dims(const std::vector<Subspace>& chain) {
  std::vector<std::size_t> out;
  for (const auto& s : chain) out.push_back(s.dim());
  return out;
}

bool is_ideal(const NilAlgebra& j, const Subspace& s) {
  for (const auto& v : s.basis())
    for (std::size_t i = 0; i < j.dim(); ++i) {
      auto b = j.basis_vector(i);
      if (!s.contains(j.multiply(v, b)) || !s.contains(j.multiply(b, v))) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("unitriangular algebras") {
  auto f2 = ffield::make_field(2, 1);
  auto u3 = make_unitriangular(3, f2);
  CHECK(u3.dim() == 3);
  CHECK(u3.nilpotency_class() == 3);
  auto e12 = u3.basis_vector(unitriangular_index(3, 1, 2));
  auto e23 = u3.basis_vector(unitriangular_index(3, 2, 3));
  auto e13 = u3.basis_vector(unitriangular_index(3, 1, 3));
  CHECK(u3.multiply(e12, e23) == e13);
  CHECK(u3.multiply(e23, e12) == u3.zero());
  CHECK(u3.lie_bracket(e12, e23) == e13);
  CHECK(u3.lie_bracket(e12, e12) == u3.zero());
  CHECK(dims(u3.power_ideal_chain()) == std::vector<std::size_t>{3, 1, 0});
  CHECK(dims(u3.refine_to_flag()) == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(u3.refine_to_flag()[1].contains(u3.power_ideal_chain()[1]));
  CHECK(u3.derived_lie_subspace().dim() == 1);
  CHECK_FALSE(u3.is_p_nilpotent());

  auto u4 = make_unitriangular(4, ffield::make_field(3, 1));
  CHECK(u4.dim() == 6);
  CHECK(u4.nilpotency_class() == 4);
  auto u2 = make_unitriangular(2, ffield::make_field(2, 2));
  CHECK(u2.dim() == 1);
  CHECK(u2.nilpotency_class() == 2);
  CHECK(make_unitriangular(3, ffield::make_field(5, 1)).is_p_nilpotent());
  CHECK(dims(make_unitriangular(2, f2).refine_to_flag()) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("augmentation ideals") {
  auto f2 = ffield::make_field(2, 1);
  auto c2 = make_augmentation_ideal(grouptab::cyclic(2), f2);
  CHECK(c2.dim() == 1);
  CHECK(c2.multiply(c2.basis_vector(0), c2.basis_vector(0)) == c2.zero());

  auto c3 = make_augmentation_ideal(grouptab::cyclic(3), ffield::make_field(3, 1));
  CHECK(c3.dim() == 2);
  CHECK(c3.nilpotency_class() == 3);
  CHECK(dims(c3.power_ideal_chain()) == std::vector<std::size_t>{2, 1, 0});

  auto d8 = make_augmentation_ideal(corpus::make_group("D8"), f2);
  CHECK(d8.dim() == 7);
  CHECK(d8.derived_lie_subspace().dim() == 3);

  auto v4 = corpus::make_algebra("I_F2[C2xC2]");
  CHECK(dims(v4.refine_to_flag()) == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(v4.derived_lie_subspace().dim() == 0);

  CHECK_THROWS_AS(make_augmentation_ideal(grouptab::cyclic(3), f2), DomainError);
}

TEST_CASE("flags consist of ideals and chains descend") {
  for (const auto& name : corpus::algebra_names()) {
    auto j = corpus::make_algebra(name);
    if (j.dim() > 16) continue;
    CAPTURE(name);
    auto flag = j.refine_to_flag();
    CHECK(flag.size() == j.dim() + 1);
    for (std::size_t i = 0; i < flag.size(); ++i) {
      CHECK(flag[i].dim() == j.dim() - i);
      CHECK(is_ideal(j, flag[i]));
    }
    const auto& chain = j.power_ideal_chain();
    for (std::size_t i = 1; i < chain.size(); ++i) CHECK(chain[i].dim() < chain[i - 1].dim());
  }
}

TEST_CASE("Jacobi identity and nilpotency") {
  auto j = corpus::make_algebra("I_F2[Q8]");
  std::size_t d = j.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        auto x = j.basis_vector(a), y = j.basis_vector(b), z = j.basis_vector(c);
        auto s = j.add(j.add(j.lie_bracket(x, j.lie_bracket(y, z)), j.lie_bracket(y, j.lie_bracket(z, x))),
                       j.lie_bracket(z, j.lie_bracket(x, y)));
        CHECK(s == j.zero());
      }
  auto prod = j.basis_vector(0);
  for (unsigned k = 1; k < j.nilpotency_class(); ++k) prod = j.multiply(prod, j.basis_vector(k % d));
  CHECK(prod == j.zero());
}

TEST_CASE("zero-product algebras") {
  auto z = make_zero_product(ffield::make_field(3, 1), 4);
  CHECK(z.nilpotency_class() == 2);
  CHECK(z.power_ideal_chain().size() == 2);
  CHECK(z.power_ideal_chain().back().dim() == 0);
  CHECK(z.is_p_nilpotent());
  CHECK(z.derived_lie_subspace().dim() == 0);
}

TEST_CASE("bad structure constants") {
  auto f2 = ffield::make_field(2, 1);
  // b0 b0 = b0 is not nilpotent.
  CHECK_THROWS_AS(NilAlgebra::from_structure_constants(f2, 1, {{0, 0, 0, 1}}), ValidationError);
  // b0 b0 = b1, b0 b1 = b2 but b1 b0 = 0: (b0 b0) b0 != b0 (b0 b0).
  CHECK_THROWS_AS(NilAlgebra::from_structure_constants(f2, 3, {{0, 0, 1, 1}, {0, 1, 2, 1}}), ValidationError);
  CHECK_THROWS_AS(NilAlgebra::from_structure_constants(f2, 2, {{0, 2, 1, 1}}), ValidationError);
}

TEST_CASE("text round trip") {
  auto u = make_unitriangular(3, ffield::make_field(2, 2));
  auto back = parse_algebra(to_text(u));
  CHECK(back.dim() == 3);
  CHECK(back.terms().size() == u.terms().size());
  CHECK(back.field() == u.field());
}
