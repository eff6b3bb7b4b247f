#include <doctest.h>

#include <numeric>
#include <set>

#include "orbitlab/algroup.hpp"
#include "orbitlab/coadjoint.hpp"
#include "orbitlab/corpus.hpp"
#include "orbitlab/nilalg.hpp"

using namespace orbitlab;
using namespace orbitlab::coadjoint;

namespace {

std::size_t idx(unsigned i, unsigned j) { return nilalg::unitriangular_index(3, i, j); }

}  // namespace

TEST_CASE("action basics") {
  auto j = corpus::make_algebra("u3_F2");
  DualSpace ds(j);
  CHECK(ds.dual_size() == 8);
  algroup::ElementCodec codec(j);
  // Functionals vanishing on [J,J] = span{e13} are fixed; e13* itself moves.
  auto l = ds.coordinate_functional(idx(1, 2));
  auto c = ds.coordinate_functional(idx(1, 3));
  CHECK(coadjoint_act(ds, c, algroup::identity(j)) == c);
  std::set<std::uint64_t> orbit;
  for (std::uint64_t g = 0; g < 8; ++g) {
    CHECK(coadjoint_act(ds, l, {codec.unpack(g)}) == l);
    auto moved = coadjoint_act(ds, c, {codec.unpack(g)});
    CHECK(moved.coeffs[idx(1, 3)] == 1);
    orbit.insert(ds.pack(moved));
  }
  CHECK(orbit.size() == 4);
  auto z = corpus::make_algebra("zero2_F3");
  DualSpace dz(z);
  auto m = dz.coordinate_functional(1);
  CHECK(coadjoint_act(dz, m, {AlgVector{1, 2}}) == m);
  CHECK(radical(dz, m).dim() == 2);
}

TEST_CASE("linearity of functionals") {
  auto j = corpus::make_algebra("u3_F4");
  DualSpace ds(j);
  auto l = ds.unpack(37);
  const auto& f = *j.field();
  for (ffield::Elt a = 0; a < 4; ++a)
    for (ffield::Elt b = 0; b < 4; ++b) {
      AlgVector x{a, 0, b}, y{b, a, 1};
      CHECK(ds.eval_alg(l, j.add(x, y)) == (ds.eval_alg(l, x) + ds.eval_alg(l, y)) % f.p());
    }
}

TEST_CASE("radicals and orbit sizes in u3") {
  for (const char* name : {"u3_F2", "u3_F3", "u3_F4"}) {
    auto j = corpus::make_algebra(name);
    std::uint64_t q = j.field()->q();
    DualSpace ds(j);
    auto central = ds.coordinate_functional(ds.e() * idx(1, 3));
    auto rad = radical(ds, central);
    CHECK(rad.dim() == ds.e());
    CHECK(rad.contains(ds.to_prime(j.basis_vector(idx(1, 3)))));
    CHECK(orbit_size(ds, central) == q * q);
    CHECK(fake_degree(ds, central) == q);
    CHECK(radical(ds, ds.zero_functional()).dim() == ds.prime_dim());
    CHECK(fake_degree(ds, ds.zero_functional()) == 1);
    auto h = max_isotropic_subalgebra(ds, central);
    CHECK(h.dim() == 2);
    CHECK(h.contains(j.basis_vector(idx(1, 3))));
    CHECK(j.is_subalgebra(h));
    auto f = max_isotropic_subalgebra(ds, ds.zero_functional());
    CHECK(f.dim() == 3);
  }
}

TEST_CASE("census of u3") {
  {
    auto j = corpus::make_algebra("u3_F2");
    DualSpace ds(j);
    auto c = orbit_census(ds);
    CHECK(c.count() == 5);
    CHECK(fake_degree_multiset(c) == std::map<std::uint64_t, std::uint64_t>{{1, 4}, {2, 1}});
    CHECK(fixed_point_count(ds, c) == 4);
  }
  {
    auto j = corpus::make_algebra("u3_F3");
    DualSpace ds(j);
    auto c = orbit_census(ds);
    CHECK(c.count() == 11);
    CHECK(fake_degree_multiset(c) == std::map<std::uint64_t, std::uint64_t>{{1, 9}, {3, 2}});
  }
  {
    auto j = corpus::make_algebra("zero2_F4");
    DualSpace ds(j);
    CHECK(orbit_census(ds).count() == 16);
  }
}

TEST_CASE("census against brute-force classes") {
  for (const char* name : {"u4_F2", "I_F2[D8]", "I_F2[Q8]", "I_F3[C3]", "u3_F9", "I_F4[C2]"}) {
    CAPTURE(name);
    auto j = corpus::make_algebra(name);
    DualSpace ds(j);
    auto c = orbit_census(ds);
    CHECK(c.count() == algroup::k_of_group(j));
    std::uint64_t total = 0;
    for (const auto& o : c.orbits) {
      total += o.fake_degree * o.fake_degree;
      CHECK(o.size == orbit_size(ds, o.functional));
      CHECK(c.members(c.orbit_of[o.rep]).size() == o.size);
    }
    CHECK(total == algroup::ElementCodec(j).size());
  }
}

TEST_CASE("probe") {
  CHECK(conjecture_probe(corpus::make_algebra("u3_F2")).lie_index == 4);
  CHECK(conjecture_probe(corpus::make_algebra("u3_F2")).equal());
  auto v4 = conjecture_probe(corpus::make_algebra("I_F2[C2xC2]"));
  CHECK(v4.lie_index == 8);
  CHECK(v4.equal());
  auto d8 = conjecture_probe(corpus::make_algebra("I_F2[D8]"));
  CHECK(d8.lie_index == 16);
  CHECK(d8.group_abelianization == 16);
}

TEST_CASE("Heisenberg characters over F3") {
  auto j = corpus::make_algebra("u3_F3");
  DualSpace ds(j);
  auto c = orbit_census(ds);
  auto classes = group_classes_with_logs(ds);
  auto table = orbit_method_characters(ds, c, classes);
  CHECK(orthonormality_check(table, c, classes));
  algroup::ElementCodec codec(j);
  std::size_t z_pos = idx(1, 3);
  for (std::size_t o = 0; o < c.count(); ++o) {
    const auto& chi = table.values[o];
    if (c.orbits[o].size == 1) {
      for (std::size_t k = 0; k < classes.data.count(); ++k) {
        auto g = algroup::GroupElementVec{codec.unpack(classes.data.representatives[k])};
        auto lam = ds.eval_alg(c.orbits[o].functional, algroup::glog(j, g));
        CHECK(chi[k] == cyclotomic::CyclotomicValue::root_power(3, lam));
      }
      continue;
    }
    CHECK(table.degrees[o] == 3);
    for (std::size_t k = 0; k < classes.data.count(); ++k) {
      auto x = algroup::glog(j, {codec.unpack(classes.data.representatives[k])});
      bool central = true;
      for (std::size_t i = 0; i < 3; ++i)
        if (i != z_pos && x[i] != 0) central = false;
      if (!central) {
        CHECK(chi[k].is_zero());
      } else {
        auto lam = ds.eval_alg(c.orbits[o].functional, x);
        CHECK(chi[k] == cyclotomic::CyclotomicValue::root_power(3, lam) * cyclotomic::CyclotomicValue::integer(3, 3));
      }
    }
    CHECK(verify_induced(ds, c, o, classes, chi));
    CHECK(transitivity_check(ds, c.orbits[o].functional));
  }
  // the zero orbit gives the trivial character
  auto zero = c.orbit_of[0];
  for (const auto& v : table.values[zero]) CHECK(v.is_integer(1));
}

TEST_CASE("orthonormality on a square-zero algebra and I_F3[C3]") {
  for (const char* name : {"zero2_F5", "I_F3[C3]", "u3_F5"}) {
    CAPTURE(name);
    auto j = corpus::make_algebra(name);
    DualSpace ds(j);
    auto c = orbit_census(ds);
    auto classes = group_classes_with_logs(ds);
    auto table = orbit_method_characters(ds, c, classes);
    CHECK(table.values.size() == classes.data.count());
    CHECK(orthonormality_check(table, c, classes));
  }
}

TEST_CASE("exp requires J^p = 0") {
  auto j = corpus::make_algebra("u3_F2");
  DualSpace ds(j);
  auto c = orbit_census(ds);
  CHECK_THROWS(group_classes_with_logs(ds));
}
